#include "udcert/rational.hpp"

#include <charconv>
#include <cmath>
#include <stdexcept>
#include <system_error>

namespace udcert {

namespace {

bool is_integer_literal(std::string_view s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i)
    if (s[i] < '0' || s[i] > '9') return false;
  return true;
}

mpz_class parse_integer(std::string_view s) {
  if (!is_integer_literal(s)) throw std::invalid_argument("not an integer: '" + std::string(s) + "'");
  std::string digits(s[0] == '+' ? s.substr(1) : s);
  return mpz_class(digits, 10);
}

}  // namespace

Rational parse_rational(std::string_view text) {
  if (text.empty()) throw std::invalid_argument("empty rational literal");
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    mpz_class num = parse_integer(text.substr(0, slash));
    mpz_class den = parse_integer(text.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
    Rational q(num, den);
    q.canonicalize();
    return q;
  }
  if (is_integer_literal(text)) return Rational(parse_integer(text));

  // finite decimal: [-]int.frac
  auto dot = text.find('.');
  if (dot == std::string_view::npos || text.find_first_of("eE") != std::string_view::npos)
    throw std::invalid_argument("malformed rational literal '" + std::string(text) + "'");
  std::string_view whole = text.substr(0, dot);
  std::string_view frac = text.substr(dot + 1);
  bool negative = !whole.empty() && whole[0] == '-';
  if (!whole.empty() && (whole[0] == '-' || whole[0] == '+')) whole.remove_prefix(1);
  if (whole.empty() && frac.empty()) throw std::invalid_argument("malformed rational literal");
  std::string digits = std::string(whole) + std::string(frac);
  if (!is_integer_literal(digits)) throw std::invalid_argument("malformed rational literal '" + std::string(text) + "'");
  mpz_class num(digits, 10);
  mpz_class den;
  mpz_ui_pow_ui(den.get_mpz_t(), 10, frac.size());
  Rational q(negative ? mpz_class(-num) : num, den);
  q.canonicalize();
  return q;
}

std::string format_rational(const Rational& value) { return value.get_str(10); }

std::optional<Rational> rational_sqrt(const Rational& value) {
  if (sgn(value) < 0) return std::nullopt;
  const mpz_class& num = value.get_num();
  const mpz_class& den = value.get_den();
  if (!mpz_perfect_square_p(num.get_mpz_t()) || !mpz_perfect_square_p(den.get_mpz_t())) return std::nullopt;
  Rational root(sqrt(num), sqrt(den));
  root.canonicalize();
  return root;
}

mpz_class floor(const Rational& value) {
  mpz_class out;
  mpz_fdiv_q(out.get_mpz_t(), value.get_num_mpz_t(), value.get_den_mpz_t());
  return out;
}

mpz_class ceil(const Rational& value) {
  mpz_class out;
  mpz_cdiv_q(out.get_mpz_t(), value.get_num_mpz_t(), value.get_den_mpz_t());
  return out;
}

long positive_mod(const mpz_class& value, long m) {
  mpz_class r;
  mpz_fdiv_r_ui(r.get_mpz_t(), value.get_mpz_t(), static_cast<unsigned long>(m));
  return r.get_si();
}

long positive_mod(long long value, long m) {
  long long r = value % m;
  return static_cast<long>(r < 0 ? r + m : r);
}

Scalar Scalar::parse(std::string_view text) {
  if (text.find('/') != std::string_view::npos || is_integer_literal(text)) return Scalar(parse_rational(text));
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(v))
    throw std::invalid_argument("malformed number '" + std::string(text) + "'");
  return Scalar(v);
}

const Rational& Scalar::exact() const {
  if (!is_exact()) throw std::logic_error("scalar is not exact");
  return std::get<Rational>(value_);
}

double Scalar::to_double() const {
  if (is_exact()) return std::get<Rational>(value_).get_d();
  return std::get<double>(value_);
}

std::string Scalar::to_string() const {
  if (is_exact()) return format_rational(std::get<Rational>(value_));
  return format_double(std::get<double>(value_));
}

std::string format_double(double value) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  if (ec != std::errc()) throw std::runtime_error("failed to format double");
  return std::string(buf, ptr);
}

}  // namespace udcert
