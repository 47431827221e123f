#ifndef WMS_QSERIES_HPP
#define WMS_QSERIES_HPP

#include <string>
#include <utility>
#include <vector>

#include "wms/laurent.hpp"
#include "wms/numeric.hpp"

namespace wms {

/// prod_{n>=1} (1 - q^n) modulo O(q^prec).  This is eta(tau) with the q^{1/24}
/// prefactor removed, so every exponent is an integer.
inline RationalSeries euler_product(long prec) {
  if (prec < 1) fail(errc::insufficient_precision, "precision must be at least 1");
  std::vector<Rational> c(static_cast<std::size_t>(prec));
  c[0] = 1;
  for (long n = 1; n < prec; ++n)
    for (long e = prec - 1; e >= n; --e)
      c[static_cast<std::size_t>(e)] -= c[static_cast<std::size_t>(e - n)];
  return RationalSeries(0, std::move(c));
}

/// One factor eta(M tau)^E of an eta quotient.
struct EtaFactor {
  unsigned multiplier;  // M in eta(M tau)
  int exponent;         // E, may be negative
};

/// prod eta(M tau)^E as a Laurent series in integer powers of q.  The
/// fractional prefactor q^{sum M*E/24} must collapse to an integer power.
inline RationalSeries eta_quotient(const std::vector<EtaFactor>& factors, long prec) {
  long weighted = 0;
  for (const auto& f : factors) {
    if (f.multiplier == 0) fail(errc::fractional_power, "eta multiplier must be positive");
    weighted += static_cast<long>(f.multiplier) * f.exponent;
  }
  if (weighted % 24 != 0)
    fail(errc::fractional_power, "total q-exponent " + std::to_string(weighted) +
                                     "/24 is not an integer");
  const long prefactor = weighted / 24;
  const long unit_prec = prec - prefactor;
  if (unit_prec < 1)
    fail(errc::insufficient_precision, "precision " + std::to_string(prec) +
                                           " leaves no window past the prefactor q^" +
                                           std::to_string(prefactor));
  RationalSeries result = RationalSeries::zero(unit_prec).plus_constant(Rational(1));
  for (const auto& f : factors) {
    const long M = f.multiplier;
    const long base_prec = (unit_prec + M - 1) / M;
    const RationalSeries factor = euler_product(base_prec).dilated(M).truncated(unit_prec);
    result = result * factor.pow(f.exponent);
  }
  return result.shifted(prefactor);
}

/// Eisenstein series E4 = 1 + 240 sum sigma_3(n) q^n.
inline RationalSeries eisenstein_e4(long prec) {
  if (prec < 1) fail(errc::insufficient_precision, "precision must be at least 1");
  std::vector<Rational> c(static_cast<std::size_t>(prec));
  c[0] = 1;
  for (long n = 1; n < prec; ++n) {
    Int sigma = 0;
    for (long d = 1; d <= n; ++d)
      if (n % d == 0) sigma += Int(d) * d * d;
    c[static_cast<std::size_t>(n)] = Rational(240 * sigma);
  }
  return RationalSeries(0, std::move(c));
}

inline bool hauptmodul_available(unsigned level) {
  return level == 1 || level == 2 || level == 4;
}

/// The genus-zero Hauptmoduln used by the bundled moonshine assignments:
///   level 1: J = E4^3 / Delta - 744
///   level 2: (eta(tau)/eta(2 tau))^24 + 24
///   level 4: (eta(tau)/eta(4 tau))^8 + 8
/// All three have integer coefficients and leading term q^{-1}.
inline RationalSeries hauptmodul(unsigned level, long prec) {
  switch (level) {
    case 1: {
      // Give the quotient two orders of headroom: Delta has leading exponent
      // 1, so inverting it costs two orders of precision.
      const long work = prec + 2;
      const RationalSeries delta = euler_product(work).pow(24).shifted(1);
      const RationalSeries j = eisenstein_e4(work).pow(3) * delta.inverse();
      return j.truncated(prec).plus_constant(Rational(-744));
    }
    case 2:
      return eta_quotient({{1, 24}, {2, -24}}, prec).plus_constant(Rational(24));
    case 4:
      return eta_quotient({{1, 8}, {4, -8}}, prec).plus_constant(Rational(8));
    default:
      fail(errc::unsupported_level,
           "no Hauptmodul catalog entry for level " + std::to_string(level));
  }
}

/// Parse an eta-quotient specification "1:24,2:-24".
inline std::vector<EtaFactor> parse_eta_quotient_spec(const std::string& spec) {
  std::vector<EtaFactor> out;
  std::size_t pos = 0;
  while (pos < spec.size()) {
    const std::size_t comma = std::min(spec.find(',', pos), spec.size());
    const std::string item = spec.substr(pos, comma - pos);
    const std::size_t colon = item.find(':');
    if (colon == std::string::npos)
      fail(errc::parse_error, "eta factor '" + item + "' is not of the form M:E");
    const Rational m = parse_rational(item.substr(0, colon));
    const Rational e = parse_rational(item.substr(colon + 1));
    if (!is_integer(m) || !is_integer(e) || m <= 0)
      fail(errc::parse_error, "eta factor '" + item + "' needs a positive integer multiplier");
    out.push_back({static_cast<unsigned>(to_integer(m)), static_cast<int>(to_integer(e))});
    pos = comma + 1;
  }
  if (out.empty()) fail(errc::parse_error, "empty eta-quotient specification");
  return out;
}

}  // namespace wms

#endif  // WMS_QSERIES_HPP
