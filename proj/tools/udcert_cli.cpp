// udcert: build unit-distance witnesses, certify their chromatic numbers,
// verify slab colorings, and export or draw the results.
//
// Exit codes: 0 success / Sat, 1 Unsat or failed check, 2 Timeout, 3 usage or
// input error.

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "udcert/chromatic.hpp"
#include "udcert/colorings.hpp"
#include "udcert/constructions.hpp"
#include "udcert/svg.hpp"
#include "udcert/udgraph.hpp"
#include "udcert/version.hpp"

using namespace udcert;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailed = 1;
constexpr int kExitTimeout = 2;
constexpr int kExitError = 3;

constexpr const char* kBudgetEnv = "UDCERT_BUDGET_SECONDS";

class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

double default_budget() {
  if (const char* env = std::getenv(kBudgetEnv); env && *env) {
    char* end = nullptr;
    const double v = std::strtod(env, &end);
    if (end && *end == '\0' && v > 0.0) return v;
    throw UsageError(std::string(kBudgetEnv) + " must be a positive number of seconds");
  }
  return 600.0;
}

// Everything that determines a run. Printed with every report and stored in
// every artifact the run writes.
struct RunConfig {
  std::string command;
  std::vector<std::pair<std::string, std::string>> params;
  std::string mode = "real";
  double tol = kDefaultTol;
  double budget = 600.0;
  std::uint64_t seed = 0;
  int threads = 1;
  std::vector<std::pair<std::string, std::string>> outputs;

  void set(const std::string& key, const std::string& value) { params.emplace_back(key, value); }
  void output(const std::string& key, const std::string& path) {
    if (!path.empty()) outputs.emplace_back(key, path);
  }

  void validate() const {
    if (!(tol > 0.0)) throw UsageError("--tol must be positive");
    if (!(budget > 0.0)) throw UsageError("--budget must be positive");
    if (threads < 1) throw UsageError("--threads must be at least 1");
  }

  nlohmann::ordered_json json() const {
    nlohmann::ordered_json j;
    j["command"] = command;
    auto& p = j["params"] = nlohmann::ordered_json::object();
    for (const auto& [k, v] : params) p[k] = v;
    j["mode"] = mode;
    j["tol"] = format_double(tol);
    j["budget_seconds"] = format_double(budget);
    j["seed"] = seed;
    j["threads"] = threads;
    auto& o = j["outputs"] = nlohmann::ordered_json::object();
    for (const auto& [k, v] : outputs) o[k] = v;
    return j;
  }

  std::string line() const { return json().dump(); }

  std::map<std::string, std::string> metadata() const {
    return {{"run_config", line()}, {"tool_version", std::string(kVersion)}};
  }

  void print_header(std::ostream& out) const {
    out << "udcert " << kVersion << "\n";
    out << "config " << line() << "\n";
  }
};

void stamp(UnitDistanceGraph& g, const RunConfig& cfg) {
  for (const auto& [k, v] : cfg.metadata()) g.metadata()[k] = v;
}

std::vector<std::string> dimacs_comments(const RunConfig& cfg) {
  return {std::string("udcert ") + kVersion, "config " + cfg.line()};
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
  if (!out) throw std::runtime_error("write failed: " + path);
}

UnitDistanceGraph read_graph(const std::string& path) {
  if (path.empty()) throw UsageError("--graph is required");
  if (!std::filesystem::exists(path)) throw std::runtime_error("no such file: " + path);
  return load_graph(path);
}

std::vector<Point> parse_polyline(const std::string& text) {
  std::vector<Point> pts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ';')) {
    const auto comma = item.find(',');
    if (comma == std::string::npos) throw UsageError("polyline points are 'x,y' separated by ';'");
    pts.push_back(Point{Scalar::parse(item.substr(0, comma)).to_double(), Scalar::parse(item.substr(comma + 1)).to_double()});
  }
  return pts;
}

// ---------------------------------------------------------------------------
// radii

struct RadiiArgs {
  double lo = 0.0;
  double hi = 0.0;
  long max_denom = 101;
};

int run_radii(const RadiiArgs& a, RunConfig cfg) {
  cfg.set("min", format_double(a.lo));
  cfg.set("max", format_double(a.hi));
  cfg.set("max_denom", std::to_string(a.max_denom));
  cfg.validate();
  if (!(a.lo > 0.5)) throw UsageError("--min must exceed 1/2 (every forbidden radius is > 1/2)");
  if (!(a.hi > a.lo)) throw UsageError("--max must exceed --min");
  if (a.max_denom < 3) throw UsageError("--max-denom must be at least 3");
  const auto radii = enumerate_forbidden_radii(a.lo, a.hi, a.max_denom);
  cfg.print_header(std::cout);
  std::cout << "count " << radii.size() << "\n";
  std::cout << "l/m\tq\tr\n";
  char buf[64];
  for (const auto& fr : radii) {
    std::snprintf(buf, sizeof buf, "%.12Lf", fr.r);
    std::cout << fr.l << "/" << fr.m << "\t" << format_double(static_cast<double>(fr.l) / fr.m) << "\t" << buf << "\n";
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------
// witness

struct WitnessArgs {
  std::string kind;
  std::string eps;
  std::string delta = "1/12";
  std::string eps1;
  double h = 0.9;
  int m = 0;
  int steps = 4;
  long l = 0;
  long q_l = 3;
  long q_m = 17;
  bool search = false;
  std::string polyline = "0,0;2.5,0";
  std::string out;
  std::string dimacs;
};

UnitDistanceGraph build_witness(const WitnessArgs& a, RunConfig& cfg) {
  if (a.kind == "strip3") {
    const std::string eps = a.eps.empty() ? "0.3" : a.eps;
    cfg.set("eps", eps);
    cfg.set("delta", a.delta);
    std::optional<double> eps1;
    if (!a.eps1.empty()) {
      eps1 = Scalar::parse(a.eps1).to_double();
      cfg.set("eps1", a.eps1);
    }
    return strip_chi3_witness(Scalar::parse(eps).to_double(), Scalar::parse(a.delta), eps1);
  }
  if (a.kind == "strip4") {
    cfg.set("h", format_double(a.h));
    std::optional<int> m;
    if (a.m > 0) {
      m = a.m;
      cfg.set("m", std::to_string(a.m));
    }
    return strip_chi4_witness(a.h, m);
  }
  if (a.kind == "slab5") {
    const double eps = Scalar::parse(a.eps.empty() ? "0.65" : a.eps).to_double();
    cfg.set("eps", format_double(eps));
    SpindleParams p;
    if (a.search) {
      cfg.set("search", "true");
      auto found = search_spindle_params(eps);
      if (!found) throw std::invalid_argument("no spindle parameters found for eps=" + format_double(eps));
      p = *found;
    } else {
      cfg.set("steps", std::to_string(a.steps));
      cfg.set("q", std::to_string(a.q_l) + "/" + std::to_string(a.q_m));
      p = make_spindle_params(eps, a.steps, a.q_l, a.q_m);
    }
    return slab_chi5_witness(p);
  }
  if (a.kind == "rational") {
    cfg.mode = "exact";
    const long l = a.l > 0 ? a.l : 1;
    const std::string eps = a.eps.empty() ? "2/5" : a.eps;
    const Scalar e = Scalar::parse(eps);
    if (!e.is_exact()) throw UsageError("rational witness needs an exact --eps such as 2/5");
    cfg.set("l", std::to_string(l));
    cfg.set("eps", eps);
    return rational_odd_cycle(l, e.exact());
  }
  if (a.kind == "curve") {
    const std::string eps = a.eps.empty() ? "0.2" : a.eps;
    cfg.set("eps", eps);
    cfg.set("polyline", a.polyline);
    return curve_odd_cycle(parse_polyline(a.polyline), Scalar::parse(eps).to_double());
  }
  throw UsageError("unknown witness kind '" + a.kind + "' (strip3, strip4, slab5, rational, curve)");
}

int run_witness(const WitnessArgs& a, RunConfig cfg) {
  cfg.set("kind", a.kind);
  cfg.output("graph", a.out);
  cfg.output("dimacs", a.dimacs);
  cfg.validate();
  UnitDistanceGraph g = build_witness(a, cfg);
  g.set_tol(cfg.tol);
  // outputs and params are final only after the build
  stamp(g, cfg);
  const ValidationReport rep = validate_geometry(g);

  cfg.print_header(std::cout);
  std::cout << "witness " << a.kind << " vertices " << g.vertex_count() << " edges " << g.edge_count() << "\n";
  std::cout << rep.to_text();
  if (!a.out.empty()) save_graph(g, a.out);
  if (!a.dimacs.empty()) export_dimacs(g, a.dimacs, dimacs_comments(cfg));
  return rep.pass ? kExitOk : kExitFailed;
}

// ---------------------------------------------------------------------------
// solve

struct SolveArgs {
  std::string graph;
  int k = 0;
  bool chromatic = false;
  std::string coloring_out;
};

void print_stats(const SolveStats& s) {
  std::cout << "decisions " << s.decisions << " backtracks " << s.backtracks << " nodes " << s.nodes << " cache_hits "
            << s.cache_hits << " elapsed " << format_double(s.elapsed_seconds) << "\n";
}

int run_solve(const SolveArgs& a, RunConfig cfg) {
  cfg.set("graph", a.graph);
  if (a.chromatic) cfg.set("chromatic", "true");
  else cfg.set("k", std::to_string(a.k));
  cfg.output("coloring", a.coloring_out);
  cfg.validate();
  if (a.chromatic == (a.k > 0)) throw UsageError("give exactly one of --k and --chromatic");

  const UnitDistanceGraph g = read_graph(a.graph);
  const AdjacencyGraph adj(g);
  SolveOptions opts;
  opts.budget.seconds = cfg.budget;
  opts.threads = cfg.threads;

  cfg.print_header(std::cout);
  std::cout << "graph vertices " << g.vertex_count() << " edges " << g.edge_count() << "\n";

  auto write_coloring = [&](const Coloring& c) {
    if (a.coloring_out.empty()) return;
    if (!validate_coloring(g, c)) throw std::logic_error("solver returned an improper coloring");
    save_coloring(c, a.coloring_out, cfg.metadata());
    std::cout << "coloring written " << a.coloring_out << "\n";
  };

  if (a.chromatic) {
    const ChromaticResult r = chromatic_number(adj, opts);
    std::cout << "clique_lower_bound " << r.clique.size() << "\n";
    for (const auto& run : r.runs) {
      std::cout << "k " << run.k << " " << to_string(run.status) << " ";
      print_stats(run.stats);
    }
    if (r.status != SolveStatus::Sat) {
      std::cout << "verdict Timeout bracket [" << r.lower_bound << ", " << r.upper_bound << "]\n";
      return kExitTimeout;
    }
    std::cout << "bounds [" << r.lower_bound << ", " << r.upper_bound << "]\n";
    std::cout << "chromatic_number " << r.chromatic_number << "\n";
    write_coloring(r.coloring);
    return kExitOk;
  }

  const SolveOutcome out = is_k_colorable(adj, a.k, opts);
  std::cout << "verdict " << to_string(out.status) << " k " << a.k << "\n";
  print_stats(out.stats);
  switch (out.status) {
    case SolveStatus::Sat: write_coloring(out.coloring); return kExitOk;
    case SolveStatus::Unsat: return kExitFailed;
    case SolveStatus::Timeout: return kExitTimeout;
  }
  return kExitError;
}

// ---------------------------------------------------------------------------
// coloring verify

struct VerifyArgs {
  std::string scheme;
  std::uint64_t samples = 100000;
  int workers = 1;
  int k = -1;
  std::string eps;
  std::string h;
  bool h_max = false;
  double side = 0.0;
  bool exact = false;
  std::string out;
};

ColoringScheme build_scheme(const VerifyArgs& a, RunConfig& cfg) {
  ColoringScheme s;
  s.kind = scheme_kind_from_string(a.scheme);
  s.exact = a.exact;
  if (a.exact) cfg.mode = "exact";
  cfg.set("scheme", a.scheme);
  switch (s.kind) {
    case SchemeKind::Hex7:
    case SchemeKind::Slab7: {
      const int k = a.k < 0 ? (s.kind == SchemeKind::Hex7 ? 0 : 1) : a.k;
      const std::string eps = a.eps.empty() ? "0.3" : a.eps;
      s.slab = SlabSpec{2, k, k > 0 ? Scalar::parse(eps) : Scalar(1.0)};
      if (k > 0) cfg.set("eps", eps);
      cfg.set("k", std::to_string(k));
      if (a.side > 0.0) {
        s.hex_side = a.side;
        cfg.set("side", format_double(a.side));
      }
      break;
    }
    case SchemeKind::Stripe3:
    case SchemeKind::Stripe4:
    case SchemeKind::Qmod3: {
      const int k = a.k < 0 ? 1 : a.k;
      if (k < 1) throw UsageError("linear schemes need --k >= 1");
      if (a.h_max == !a.h.empty()) throw UsageError("give exactly one of --h and --h-max");
      if (a.h_max) {
        const Rational w = s.kind == SchemeKind::Stripe3 ? Rational(1, 2)
                         : s.kind == SchemeKind::Stripe4 ? Rational(1, 3)
                                                         : Rational(2, 3);
        s.h_squared = (1 - w * w) / k;
        cfg.set("h_max", "true");
      } else {
        const Scalar h = Scalar::parse(a.h);
        s.h_squared = h.is_exact() ? Rational(h.exact() * h.exact()) : Rational(h.to_double() * h.to_double());
        cfg.set("h", a.h);
      }
      cfg.set("k", std::to_string(k));
      cfg.set("h_squared", format_rational(s.h_squared));
      s.slab = SlabSpec{1, k, Scalar(std::sqrt(s.h_squared.get_d()))};
      break;
    }
  }
  s.validate();
  return s;
}

int run_verify(const VerifyArgs& a, RunConfig cfg) {
  cfg.threads = a.workers;
  cfg.output("report", a.out);
  cfg.validate();
  if (a.samples == 0) throw UsageError("--samples must be positive");
  const ColoringScheme scheme = build_scheme(a, cfg);
  cfg.set("samples", std::to_string(a.samples));

  const VerifyReport rep = verify_scheme(scheme, a.samples, cfg.seed, a.workers);
  nlohmann::ordered_json doc;
  doc["tool_version"] = kVersion;
  doc["run_config"] = cfg.json();
  doc["report"] = nlohmann::ordered_json::parse(rep.to_json());

  cfg.print_header(std::cout);
  std::cout << "scheme " << scheme.describe() << "\n";
  std::cout << "samples " << rep.samples << " monochromatic " << rep.monochromatic << " boundary_pairs "
            << rep.boundary_pairs << " max_unit_residual " << format_double(rep.max_unit_residual) << "\n";
  for (const auto& b : rep.histogram)
    std::cout << "hist [" << format_double(b.lo) << ", " << format_double(b.hi) << ") pairs " << b.pairs << " same "
              << b.same_color << "\n";
  for (const auto& v : rep.violations) {
    std::cout << "violation color " << v.color << " p";
    for (const auto& x : v.p) std::cout << " " << x;
    std::cout << " q";
    for (const auto& x : v.q) std::cout << " " << x;
    std::cout << "\n";
  }
  std::cout << (rep.pass() ? "PASS" : "FAIL") << "\n";
  if (!a.out.empty()) write_text(a.out, doc.dump(2) + "\n");
  return rep.pass() ? kExitOk : kExitFailed;
}

// ---------------------------------------------------------------------------
// export / plot

int run_export(const std::string& graph, const std::string& out, RunConfig cfg) {
  cfg.set("graph", graph);
  cfg.output("dimacs", out);
  cfg.validate();
  if (out.empty()) throw UsageError("--out is required");
  const UnitDistanceGraph g = read_graph(graph);
  export_dimacs(g, out, dimacs_comments(cfg));
  cfg.print_header(std::cout);
  std::cout << "p edge " << g.vertex_count() << " " << g.edge_count() << "\n";
  return kExitOk;
}

int run_plot(const std::string& graph, const std::string& coloring, const std::string& out, RunConfig cfg) {
  cfg.set("graph", graph);
  if (!coloring.empty()) cfg.set("coloring", coloring);
  cfg.output("svg", out);
  cfg.validate();
  if (out.empty()) throw UsageError("--out is required");
  const UnitDistanceGraph g = read_graph(graph);
  Coloring c;
  if (!coloring.empty()) {
    if (!std::filesystem::exists(coloring)) throw std::runtime_error("no such file: " + coloring);
    c = load_coloring(coloring);
    if (static_cast<int>(c.size()) != g.vertex_count())
      throw std::invalid_argument("coloring has " + std::to_string(c.size()) + " entries, graph has " +
                                  std::to_string(g.vertex_count()) + " vertices");
  }
  write_text(out, render_svg(g, c, cfg.metadata()));
  cfg.print_header(std::cout);
  std::cout << "svg vertices " << g.vertex_count() << " edges " << g.edge_count() << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Unit-distance witness construction and certification"};
  app.set_version_flag("--version", std::string(kVersion));
  app.set_help_flag("--help", "Print this help message and exit");
  app.require_subcommand(1);

  RunConfig cfg;
  try {
    cfg.budget = default_budget();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }

  RadiiArgs radii;
  auto* radii_cmd = app.add_subcommand("radii", "List forbidden radii in an interval");
  radii_cmd->add_option("--min", radii.lo)->required();
  radii_cmd->add_option("--max", radii.hi)->required();
  radii_cmd->add_option("--max-denom", radii.max_denom)->capture_default_str();

  WitnessArgs wit;
  auto* wit_cmd = app.add_subcommand("witness", "Build a witness graph and validate it");
  wit_cmd->add_option("kind", wit.kind, "strip3 | strip4 | slab5 | rational | curve")->required();
  wit_cmd->add_option("--eps", wit.eps, "Slab width (p/q for exact)");
  wit_cmd->add_option("--delta", wit.delta, "strip3 chain spacing")->capture_default_str();
  wit_cmd->add_option("--eps1", wit.eps1, "strip3 apex leg length");
  wit_cmd->add_option("--h", wit.h, "strip4 strip width")->capture_default_str();
  wit_cmd->add_option("--m", wit.m, "strip4 step count (default: minimal)");
  wit_cmd->add_option("--steps", wit.steps, "slab5 chain steps 1/delta")->capture_default_str();
  wit_cmd->add_option("--q-l", wit.q_l, "slab5 forbidden rotation numerator")->capture_default_str();
  wit_cmd->add_option("--q-m", wit.q_m, "slab5 forbidden rotation denominator")->capture_default_str();
  wit_cmd->add_flag("--search", wit.search, "slab5: search parameters from --eps");
  wit_cmd->add_option("--l", wit.l, "rational cycle parameter");
  wit_cmd->add_option("--polyline", wit.polyline, "curve: 'x,y;x,y;...'")->capture_default_str();
  wit_cmd->add_option("--out", wit.out, "Graph file");
  wit_cmd->add_option("--dimacs", wit.dimacs, "Also write DIMACS");
  wit_cmd->add_option("--tol", cfg.tol, "Edge-length tolerance")->capture_default_str();

  SolveArgs solve;
  auto* solve_cmd = app.add_subcommand("solve", "Decide k-colorability or compute the chromatic number");
  solve_cmd->add_option("graph", solve.graph)->required();
  solve_cmd->add_option("--k", solve.k);
  solve_cmd->add_flag("--chromatic", solve.chromatic);
  solve_cmd->add_option("--threads", cfg.threads)->capture_default_str();
  solve_cmd->add_option("--budget", cfg.budget,
                        std::string("Wall-clock seconds (default from ") + kBudgetEnv + ", else 600)");
  solve_cmd->add_option("--coloring-out", solve.coloring_out, "Coloring file written on Sat");

  VerifyArgs ver;
  auto* col_cmd = app.add_subcommand("coloring", "Coloring schemes");
  col_cmd->require_subcommand(1);
  auto* ver_cmd = col_cmd->add_subcommand("verify", "Sample unit pairs and count monochromatic ones");
  ver_cmd->add_option("--scheme", ver.scheme, "hex7 | slab7 | stripe3 | stripe4 | qmod3")->required();
  ver_cmd->add_option("--samples", ver.samples)->capture_default_str();
  ver_cmd->add_option("--seed", cfg.seed)->capture_default_str();
  ver_cmd->add_option("--workers", ver.workers)->capture_default_str();
  ver_cmd->add_option("--k", ver.k, "Bounded dimensions");
  ver_cmd->add_option("--eps", ver.eps, "Slab width (hex7/slab7)");
  ver_cmd->add_option("--h", ver.h, "Strip width (linear schemes)");
  ver_cmd->add_flag("--h-max", ver.h_max, "Largest width at which the scheme is proper");
  ver_cmd->add_option("--side", ver.side, "Hexagon side (default 1/sqrt 7)");
  ver_cmd->add_flag("--exact", ver.exact, "Exact rational unit pairs (linear schemes)");
  ver_cmd->add_option("--out", ver.out, "JSON report");

  std::string exp_graph, exp_out;
  auto* exp_cmd = app.add_subcommand("export", "Write a graph as DIMACS");
  exp_cmd->add_option("graph", exp_graph)->required();
  exp_cmd->add_option("--out", exp_out)->required();

  std::string plot_graph, plot_coloring, plot_out;
  auto* plot_cmd = app.add_subcommand("plot", "Draw a graph as SVG");
  plot_cmd->add_option("graph", plot_graph)->required();
  plot_cmd->add_option("--coloring", plot_coloring);
  plot_cmd->add_option("--out", plot_out)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitError;
  }

  try {
    if (*radii_cmd) return run_radii(radii, (cfg.command = "radii", cfg));
    if (*wit_cmd) return run_witness(wit, (cfg.command = "witness", cfg));
    if (*solve_cmd) return run_solve(solve, (cfg.command = "solve", cfg));
    if (*ver_cmd) return run_verify(ver, (cfg.command = "coloring verify", cfg));
    if (*exp_cmd) return run_export(exp_graph, exp_out, (cfg.command = "export", cfg));
    if (*plot_cmd) return run_plot(plot_graph, plot_coloring, plot_out, (cfg.command = "plot", cfg));
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}
