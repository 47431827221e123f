#ifndef WMS_LAURENT_HPP
#define WMS_LAURENT_HPP

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "wms/numeric.hpp"

namespace wms {

/// Truncated Laurent series over an exact coefficient ring R.
///
/// A series stores coefficients for the exponent window [lead, precision) and
/// represents a value known modulo O(q^precision).  Exponents below lead are
/// identically zero; exponents at or above precision are unknown and reading
/// them is an error.  Arithmetic tracks the precision of the result exactly:
///   sum:      min of the precisions
///   product:  min(lead_a + prec_b, lead_b + prec_a)
///   inverse:  prec - 2 * order   (order = exponent of the first nonzero term)
template <class R>
class laurent {
 public:
  laurent() : lead_(0) {}

  laurent(long lead, std::vector<R> coeffs) : lead_(lead), c_(std::move(coeffs)) {}

  /// The zero series known modulo O(q^precision).
  static laurent zero(long precision) { return laurent(precision, {}); }

  static laurent monomial(R value, long exponent, long precision) {
    if (exponent >= precision)
      fail(errc::insufficient_precision, "monomial exponent " + std::to_string(exponent) +
                                             " not below precision " + std::to_string(precision));
    laurent s(exponent, std::vector<R>(static_cast<std::size_t>(precision - exponent)));
    s.c_[0] = std::move(value);
    return s;
  }

  long lead() const { return lead_; }
  long precision() const { return lead_ + static_cast<long>(c_.size()); }
  bool empty_window() const { return c_.empty(); }

  /// Coefficient of q^e; zero below the window, error at or above precision.
  const R& coeff(long e) const {
    static const R zero_value{};
    if (e >= precision())
      fail(errc::insufficient_precision, "coefficient q^" + std::to_string(e) +
                                             " requested, series known modulo O(q^" +
                                             std::to_string(precision()) + ")");
    if (e < lead_) return zero_value;
    return c_[static_cast<std::size_t>(e - lead_)];
  }

  /// Exponent of the first nonzero stored coefficient, if any.
  std::optional<long> order() const {
    for (std::size_t k = 0; k < c_.size(); ++k)
      if (!(c_[k] == R{})) return lead_ + static_cast<long>(k);
    return std::nullopt;
  }

  bool is_zero_in_window() const { return !order().has_value(); }

  /// Multiply by q^k.
  laurent shifted(long k) const { return laurent(lead_ + k, c_); }

  /// Forget coefficients at exponents >= new_precision.
  laurent truncated(long new_precision) const {
    if (new_precision > precision())
      fail(errc::insufficient_precision,
           "cannot extend precision " + std::to_string(precision()) + " to " +
               std::to_string(new_precision));
    if (new_precision <= lead_) return laurent(new_precision, {});
    laurent s(lead_, std::vector<R>(c_.begin(), c_.begin() + (new_precision - lead_)));
    return s;
  }

  friend laurent operator-(const laurent& a) {
    laurent r = a;
    for (auto& v : r.c_) v = -v;
    return r;
  }

  friend laurent operator+(const laurent& a, const laurent& b) { return combined(a, b, false); }
  friend laurent operator-(const laurent& a, const laurent& b) { return combined(a, b, true); }

  friend laurent operator*(const laurent& a, const laurent& b) {
    const long lead = a.lead_ + b.lead_;
    const long prec = std::min(a.lead_ + b.precision(), b.lead_ + a.precision());
    laurent r(lead, std::vector<R>(static_cast<std::size_t>(std::max(0L, prec - lead))));
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (a.c_[i] == R{}) continue;
      const long ea = a.lead_ + static_cast<long>(i);
      for (std::size_t j = 0; j < b.c_.size(); ++j) {
        const long e = ea + b.lead_ + static_cast<long>(j);
        if (e >= prec) break;
        if (b.c_[j] == R{}) continue;
        r.c_[static_cast<std::size_t>(e - lead)] += a.c_[i] * b.c_[j];
      }
    }
    return r;
  }

  friend laurent operator*(const laurent& a, const R& s) {
    laurent r = a;
    for (auto& v : r.c_) v = v * s;
    return r;
  }

  friend laurent operator*(const R& s, const laurent& a) { return a * s; }

  laurent& operator+=(const laurent& b) { return *this = *this + b; }
  laurent& operator-=(const laurent& b) { return *this = *this - b; }
  laurent& operator*=(const laurent& b) { return *this = *this * b; }

  /// Add a constant (exponent-0) term; a no-op when the window ends at or
  /// below exponent 0, where a constant is invisible modulo O(q^precision).
  laurent plus_constant(const R& v) const {
    if (precision() <= 0) return *this;
    laurent r = *this;
    if (lead_ > 0) {
      r.c_.insert(r.c_.begin(), static_cast<std::size_t>(lead_), R{});
      r.lead_ = 0;
    }
    r.c_[static_cast<std::size_t>(-r.lead_)] += v;
    return r;
  }

  /// Substitute q -> q^n (n >= 1).  Knowledge modulo O(q^P) becomes knowledge
  /// modulo O(q^{nP}): the in-between exponents are identically zero.
  laurent dilated(long n) const {
    laurent r(lead_ * n, std::vector<R>(c_.size() * static_cast<std::size_t>(n)));
    for (std::size_t k = 0; k < c_.size(); ++k) r.c_[k * static_cast<std::size_t>(n)] = c_[k];
    return r;
  }

  /// Multiplicative inverse; requires a nonzero coefficient in the window and
  /// an invertible coefficient ring.
  laurent inverse() const {
    auto ord = order();
    if (!ord) fail(errc::division_by_zero, "inverting a series that is zero in its window");
    const long o = *ord;
    const long unit_prec = precision() - o;  // unit part is known modulo O(q^unit_prec)
    // u = q^{-o} * series has u[0] != 0; solve u * v = 1 coefficient by coefficient.
    std::vector<R> u(c_.begin() + (o - lead_), c_.end());
    std::vector<R> v(static_cast<std::size_t>(unit_prec));
    v[0] = R{1} / u[0];
    for (std::size_t n = 1; n < v.size(); ++n) {
      R acc{};
      for (std::size_t k = 1; k <= n && k < u.size(); ++k) acc += u[k] * v[n - k];
      v[n] = -acc / u[0];
    }
    // series^{-1} = q^{-o} * v, known modulo O(q^{prec - 2o}).
    return laurent(-o, std::move(v));
  }

  friend laurent operator/(const laurent& a, const laurent& b) { return a * b.inverse(); }

  /// Integer power; negative exponents go through the inverse.
  laurent pow(long e) const {
    if (e < 0) return inverse().pow(-e);
    // One is known to the precision a self-product of this series would have.
    laurent base = *this;
    laurent result = laurent(base.precision() - base.lead_, {}).plus_constant(R{1});
    bool any = false;
    auto k = static_cast<unsigned long>(e);
    while (k > 0) {
      if (k & 1u) {
        result = any ? result * base : base;
        any = true;
      }
      k >>= 1u;
      if (k > 0) base = base * base;
    }
    return result;
  }

  /// Equality on the overlap of the known windows.
  friend bool operator==(const laurent& a, const laurent& b) {
    const long hi = std::min(a.precision(), b.precision());
    for (long e = std::min(a.lead_, b.lead_); e < hi; ++e)
      if (!(a.coeff(e) == b.coeff(e))) return false;
    return true;
  }

  friend bool operator!=(const laurent& a, const laurent& b) { return !(a == b); }

  /// Coefficientwise equality for all exponents below hi; errors out instead
  /// of silently comparing less than was asked for.
  friend bool agree_modulo(const laurent& a, const laurent& b, long hi) {
    if (a.precision() < hi || b.precision() < hi)
      fail(errc::insufficient_precision,
           "comparison modulo O(q^" + std::to_string(hi) + ") needs precisions " +
               std::to_string(a.precision()) + " and " + std::to_string(b.precision()));
    for (long e = std::min(a.lead_, b.lead_); e < hi; ++e)
      if (!(a.coeff(e) == b.coeff(e))) return false;
    return true;
  }

 private:
  static laurent combined(const laurent& a, const laurent& b, bool subtract) {
    const long lead = std::min(a.lead_, b.lead_);
    const long prec = std::min(a.precision(), b.precision());
    laurent r(std::min(lead, prec), std::vector<R>(static_cast<std::size_t>(std::max(0L, prec - std::min(lead, prec)))));
    for (long e = r.lead_; e < prec; ++e) {
      const R& va = a.coeff(e);
      const R& vb = b.coeff(e);
      r.c_[static_cast<std::size_t>(e - r.lead_)] = subtract ? R(va - vb) : R(va + vb);
    }
    return r;
  }

  long lead_;
  std::vector<R> c_;
};

using RationalSeries = laurent<Rational>;

/// "q^k: coefficient" rendering helpers live with the CLI; this one-line form
/// is shared by reports and tests.
inline std::string series_polynomial_string(const RationalSeries& s) {
  std::string out;
  for (long e = s.lead(); e < s.precision(); ++e) {
    const Rational& v = s.coeff(e);
    if (v == 0) continue;
    const Rational mag = v < 0 ? Rational(-v) : v;
    if (out.empty()) {
      if (v < 0) out += "-";
    } else {
      out += v < 0 ? " - " : " + ";
    }
    std::string term = e == 0 ? "" : (e == 1 ? "q" : "q^" + std::to_string(e));
    if (e == 0 || mag != 1) out += format_rational(mag);
    out += term;
  }
  if (out.empty()) out = "0";
  return out + " + O(q^" + std::to_string(s.precision()) + ")";
}

}  // namespace wms

#endif  // WMS_LAURENT_HPP
