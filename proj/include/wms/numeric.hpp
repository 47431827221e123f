#ifndef WMS_NUMERIC_HPP
#define WMS_NUMERIC_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace wms {

// All arithmetic in this library is exact: arbitrary-precision integers and
// rationals, never floating point.
using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

enum class errc {
  not_latin_square,
  not_associative,
  no_identity,
  bound_exceeded,
  budget_exceeded,
  width_not_above_dimension,
  fractional_power,
  unsupported_level,
  unsupported_order,
  dimension_too_small,
  zero_total_multiplicity,
  insufficient_precision,
  division_by_zero,
  non_rational_value,
  parse_error,
  not_found,
};

inline const char* errc_name(errc c) noexcept {
  switch (c) {
    case errc::not_latin_square: return "NotLatinSquare";
    case errc::not_associative: return "NotAssociative";
    case errc::no_identity: return "NoIdentity";
    case errc::bound_exceeded: return "BoundExceeded";
    case errc::budget_exceeded: return "BudgetExceeded";
    case errc::width_not_above_dimension: return "WidthNotAboveDimension";
    case errc::fractional_power: return "FractionalPower";
    case errc::unsupported_level: return "UnsupportedLevel";
    case errc::unsupported_order: return "UnsupportedOrder";
    case errc::dimension_too_small: return "DimensionTooSmall";
    case errc::zero_total_multiplicity: return "ZeroTotalMultiplicity";
    case errc::insufficient_precision: return "InsufficientPrecision";
    case errc::division_by_zero: return "DivisionByZero";
    case errc::non_rational_value: return "NonRationalValue";
    case errc::parse_error: return "ParseError";
    case errc::not_found: return "NotFound";
  }
  return "UnknownError";
}

/// Library error: a stable code plus a message naming the offending input
/// (row, triple, tuple, class, ...).
class error : public std::runtime_error {
 public:
  error(errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}
  errc code() const noexcept { return code_; }

 private:
  errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& what) { throw error(code, what); }

inline Int int_pow(Int base, unsigned long e) {
  Int result = 1;
  while (e > 0) {
    if (e & 1u) result *= base;
    base *= base;
    e >>= 1u;
  }
  return result;
}

inline Rational rat_pow(const Rational& base, long e) {
  if (e < 0) {
    if (base == 0) fail(errc::division_by_zero, "0 raised to a negative power");
    return Rational(1) / rat_pow(base, -e);
  }
  Rational result = 1;
  Rational b = base;
  auto k = static_cast<unsigned long>(e);
  while (k > 0) {
    if (k & 1u) result *= b;
    b *= b;
    k >>= 1u;
  }
  return result;
}

inline Int factorial(unsigned n) {
  Int result = 1;
  for (unsigned k = 2; k <= n; ++k) result *= k;
  return result;
}

inline bool is_integer(const Rational& r) { return denominator(r) == 1; }

inline Int to_integer(const Rational& r) {
  if (!is_integer(r)) fail(errc::non_rational_value, "not an integer: " + r.str());
  return numerator(r);
}

/// "p" when integral, "p/q" otherwise.
inline std::string format_rational(const Rational& r) {
  if (is_integer(r)) return numerator(r).str();
  return numerator(r).str() + "/" + denominator(r).str();
}

inline Rational parse_rational(std::string_view text) {
  auto parse_int = [](std::string_view s) -> Int {
    if (s.empty()) fail(errc::parse_error, "empty integer literal");
    std::size_t start = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (start == s.size()) fail(errc::parse_error, "bare sign: " + std::string(s));
    for (std::size_t k = start; k < s.size(); ++k)
      if (s[k] < '0' || s[k] > '9')
        fail(errc::parse_error, "bad integer literal: " + std::string(s));
    return Int(std::string(s));
  };
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_int(text));
  Int num = parse_int(text.substr(0, slash));
  Int den = parse_int(text.substr(slash + 1));
  if (den == 0) fail(errc::parse_error, "zero denominator: " + std::string(text));
  return Rational(num, den);
}

/// Exact leading decimal digits of r, truncated toward zero.  The result is
/// the prefix of the decimal expansion, matching how slowly converging
/// quantities are usually quoted ("0.16678...").
inline std::string truncated_decimals(const Rational& r, unsigned digits) {
  const bool negative = r < 0;
  const Int scale = int_pow(10, digits);
  const Int scaled = Int(abs(numerator(r)) * scale / denominator(r));
  const Int whole = Int(scaled / scale);
  std::string frac = Int(scaled % scale).str();
  frac.insert(frac.begin(), digits - frac.size(), '0');
  return (negative ? "-" : "") + whole.str() + "." + frac;
}

/// Hard cap on exhaustive tuple enumeration (|G|^r), overridable per call.
inline constexpr std::uint64_t default_enumeration_budget = 10'000'000;

inline void check_budget(const Int& count, std::uint64_t budget, const std::string& what) {
  if (count > budget)
    fail(errc::budget_exceeded,
         what + " needs " + count.str() + " evaluations, budget is " + std::to_string(budget));
}

}  // namespace wms

#endif  // WMS_NUMERIC_HPP
