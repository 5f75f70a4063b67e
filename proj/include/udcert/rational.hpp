#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <string_view>
#include <variant>

namespace udcert {

/// Arbitrary-precision rational, always kept in canonical (reduced) form.
using Rational = mpq_class;

/// Parses "p/q", "p" or a finite decimal such as "-0.125" into an exact rational.
Rational parse_rational(std::string_view text);

/// Renders "p/q", or "p" when the denominator is one.
std::string format_rational(const Rational& value);

/// Exact square root when `value` is the square of a rational.
std::optional<Rational> rational_sqrt(const Rational& value);

/// Largest integer <= value.
mpz_class floor(const Rational& value);
/// Smallest integer >= value.
mpz_class ceil(const Rational& value);

/// Non-negative remainder of `value` modulo `m` (m > 0).
long positive_mod(const mpz_class& value, long m);
long positive_mod(long long value, long m);

/// A coordinate or parameter that is either an exact rational or a double.
class Scalar {
 public:
  Scalar() : value_(0.0) {}
  Scalar(double v) : value_(v) {}  // NOLINT(google-explicit-constructor)
  Scalar(Rational v) : value_(std::move(v)) {}  // NOLINT(google-explicit-constructor)

  /// "p/q" and plain integers become exact; anything with a decimal point or
  /// exponent becomes real.
  static Scalar parse(std::string_view text);

  bool is_exact() const { return std::holds_alternative<Rational>(value_); }
  const Rational& exact() const;
  double to_double() const;
  std::string to_string() const;

  friend bool operator==(const Scalar& a, const Scalar& b) { return a.value_ == b.value_; }

 private:
  std::variant<Rational, double> value_;
};

/// Shortest decimal string that round-trips to the same double.
std::string format_double(double value);

}  // namespace udcert
