#ifndef WMS_CYCLOTOMIC_HPP
#define WMS_CYCLOTOMIC_HPP

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <string>
#include <vector>

#include "wms/numeric.hpp"

namespace wms {

namespace detail {

// x^m - 1 = prod_{d | m} Phi_d(x); Phi_m is obtained by exact division.
// Coefficients ascending, monic, degree phi(m).
inline std::vector<Int> compute_cyclotomic_polynomial(unsigned m,
                                                      const std::map<unsigned, std::vector<Int>>& lower) {
  std::vector<Int> num(m + 1);
  num[0] = -1;
  num[m] = 1;
  for (const auto& [d, phi_d] : lower) {
    if (d == m || m % d != 0) continue;
    // num /= phi_d (exact; phi_d monic)
    std::vector<Int> quot(num.size() - phi_d.size() + 1);
    for (std::size_t k = quot.size(); k-- > 0;) {
      quot[k] = num[k + phi_d.size() - 1];
      if (quot[k] == 0) continue;
      for (std::size_t j = 0; j < phi_d.size(); ++j) num[k + j] -= quot[k] * phi_d[j];
    }
    num = std::move(quot);
  }
  return num;
}

}  // namespace detail

/// Phi_m, the m-th cyclotomic polynomial (ascending coefficients, monic).
inline const std::vector<Int>& cyclotomic_polynomial(unsigned m) {
  static std::mutex mu;
  static std::map<unsigned, std::vector<Int>> cache;
  std::scoped_lock lock(mu);
  auto it = cache.find(m);
  if (it != cache.end()) return it->second;
  for (unsigned d = 1; d <= m; ++d)
    if (m % d == 0 && !cache.count(d))
      cache.emplace(d, detail::compute_cyclotomic_polynomial(d, cache));
  return cache.at(m);
}

inline unsigned euler_phi(unsigned m) {
  return static_cast<unsigned>(cyclotomic_polynomial(m).size() - 1);
}

/// Exact element of the cyclotomic field Q(zeta_m), stored in the power basis
/// 1, zeta, ..., zeta^{phi(m)-1} with the canonical reduction modulo Phi_m.
/// Equality of two values with the same modulus is coefficientwise; values
/// whose moduli differ may be mixed only when one of them is rational.
class Cyclotomic {
 public:
  Cyclotomic() : m_(1), c_(1) {}

  explicit Cyclotomic(unsigned m) : m_(m), c_(euler_phi(m)) {
    if (m == 0) fail(errc::parse_error, "cyclotomic modulus must be positive");
  }

  static Cyclotomic from_rational(unsigned m, const Rational& v) {
    Cyclotomic x(m);
    x.c_[0] = v;
    return x;
  }

  /// zeta_m^k (k may be negative).
  static Cyclotomic root_power(unsigned m, long k) {
    long e = k % static_cast<long>(m);
    if (e < 0) e += m;
    std::vector<Rational> raw(static_cast<std::size_t>(e) + 1);
    raw.back() = 1;
    return reduced(m, std::move(raw));
  }

  unsigned modulus() const { return m_; }
  const std::vector<Rational>& coefficients() const { return c_; }

  bool is_zero() const {
    return std::all_of(c_.begin(), c_.end(), [](const Rational& v) { return v == 0; });
  }

  bool is_rational() const {
    return std::all_of(c_.begin() + 1, c_.end(), [](const Rational& v) { return v == 0; });
  }

  Rational rational_value() const {
    if (!is_rational()) fail(errc::non_rational_value, "not rational: " + str());
    return c_[0];
  }

  bool is_integer() const { return is_rational() && wms::is_integer(c_[0]); }

  /// Complex conjugation, zeta -> zeta^{-1}.
  Cyclotomic conj() const {
    std::vector<Rational> raw(m_);
    for (std::size_t j = 0; j < c_.size(); ++j) raw[(m_ - j) % m_] += c_[j];
    return reduced(m_, std::move(raw));
  }

  /// Embed into Q(zeta_M) via zeta_m -> zeta_M^{M/m}; requires m | M.
  Cyclotomic promoted(unsigned target) const {
    if (target == m_) return *this;
    if (target % m_ != 0)
      fail(errc::parse_error, "cannot embed Q(zeta_" + std::to_string(m_) + ") into Q(zeta_" +
                                  std::to_string(target) + ")");
    const unsigned stride = target / m_;
    std::vector<Rational> raw(static_cast<std::size_t>(c_.size() - 1) * stride + 1);
    for (std::size_t j = 0; j < c_.size(); ++j) raw[j * stride] = c_[j];
    return reduced(target, std::move(raw));
  }

  /// Equality after embedding both values into Q(zeta_lcm).
  friend bool equal_embedded(const Cyclotomic& a, const Cyclotomic& b) {
    if (a.m_ == b.m_) return a == b;
    const unsigned l = std::lcm(a.m_, b.m_);
    return a.promoted(l) == b.promoted(l);
  }

  Cyclotomic operator-() const {
    Cyclotomic r = *this;
    for (auto& v : r.c_) v = -v;
    return r;
  }

  friend Cyclotomic operator+(const Cyclotomic& a, const Cyclotomic& b) {
    auto [x, y] = unify(a, b);
    for (std::size_t k = 0; k < y.c_.size(); ++k) x.c_[k] += y.c_[k];
    return x;
  }

  friend Cyclotomic operator-(const Cyclotomic& a, const Cyclotomic& b) {
    auto [x, y] = unify(a, b);
    for (std::size_t k = 0; k < y.c_.size(); ++k) x.c_[k] -= y.c_[k];
    return x;
  }

  friend Cyclotomic operator*(const Cyclotomic& a, const Cyclotomic& b) {
    auto [x, y] = unify(a, b);
    std::vector<Rational> raw(x.c_.size() + y.c_.size() - 1);
    for (std::size_t i = 0; i < x.c_.size(); ++i) {
      if (x.c_[i] == 0) continue;
      for (std::size_t j = 0; j < y.c_.size(); ++j) {
        if (y.c_[j] == 0) continue;
        raw[i + j] += x.c_[i] * y.c_[j];
      }
    }
    return reduced(x.m_, std::move(raw));
  }

  friend Cyclotomic operator*(const Cyclotomic& a, const Rational& s) {
    Cyclotomic r = a;
    for (auto& v : r.c_) v *= s;
    return r;
  }

  friend Cyclotomic operator*(const Rational& s, const Cyclotomic& a) { return a * s; }

  Cyclotomic& operator+=(const Cyclotomic& b) { return *this = *this + b; }
  Cyclotomic& operator-=(const Cyclotomic& b) { return *this = *this - b; }
  Cyclotomic& operator*=(const Cyclotomic& b) { return *this = *this * b; }

  friend bool operator==(const Cyclotomic& a, const Cyclotomic& b) {
    if (a.m_ == b.m_) return a.c_ == b.c_;
    if (a.is_rational() && b.is_rational()) return a.c_[0] == b.c_[0];
    if (a.is_rational() || b.is_rational()) return false;
    fail(errc::parse_error, "comparing cyclotomics with incompatible moduli " +
                                std::to_string(a.m_) + " and " + std::to_string(b.m_));
  }

  friend bool operator!=(const Cyclotomic& a, const Cyclotomic& b) { return !(a == b); }

  /// Total order used for canonical row sorting: lexicographic on the reduced
  /// coefficient vector.  Requires equal moduli.
  static int compare(const Cyclotomic& a, const Cyclotomic& b) {
    auto [x, y] = unify(a, b);
    for (std::size_t k = 0; k < x.c_.size(); ++k) {
      if (x.c_[k] < y.c_[k]) return -1;
      if (x.c_[k] > y.c_[k]) return 1;
    }
    return 0;
  }

  /// Render as a polynomial in z = zeta_m, e.g. "2", "-1/2", "z^3 - z".
  std::string str() const {
    if (is_rational()) return format_rational(c_[0]);
    std::string out;
    for (std::size_t k = 0; k < c_.size(); ++k) {
      const Rational& v = c_[k];
      if (v == 0) continue;
      const Rational mag = v < 0 ? Rational(-v) : v;
      if (out.empty()) {
        if (v < 0) out += "-";
      } else {
        out += v < 0 ? " - " : " + ";
      }
      std::string term = k == 0 ? "" : (k == 1 ? "z" : "z^" + std::to_string(k));
      if (k == 0 || mag != 1) {
        out += format_rational(mag);
        if (!term.empty()) out += "*";
      }
      out += term;
    }
    return out.empty() ? "0" : out;
  }

 private:
  static Cyclotomic reduced(unsigned m, std::vector<Rational> raw) {
    const auto& phi = cyclotomic_polynomial(m);
    const std::size_t deg = phi.size() - 1;
    for (std::size_t k = raw.size(); k-- > deg;) {
      if (raw[k] == 0) continue;
      Rational lead = raw[k];
      raw[k] = 0;
      for (std::size_t j = 0; j < deg; ++j) raw[k - deg + j] -= lead * Rational(phi[j]);
    }
    Cyclotomic x(m);
    for (std::size_t k = 0; k < std::min(raw.size(), x.c_.size()); ++k) x.c_[k] = raw[k];
    return x;
  }

  // Bring two values into one field; only rationals cross moduli.
  static std::pair<Cyclotomic, Cyclotomic> unify(const Cyclotomic& a, const Cyclotomic& b) {
    if (a.m_ == b.m_) return {a, b};
    if (a.is_rational()) return {from_rational(b.m_, a.c_[0]), b};
    if (b.is_rational()) return {a, from_rational(a.m_, b.c_[0])};
    fail(errc::parse_error, "mixing cyclotomics with incompatible moduli " +
                                std::to_string(a.m_) + " and " + std::to_string(b.m_));
  }

  unsigned m_;
  std::vector<Rational> c_;
};

}  // namespace wms

#endif  // WMS_CYCLOTOMIC_HPP
