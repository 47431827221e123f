#ifndef WMS_RCHAR_HPP
#define WMS_RCHAR_HPP

#include <algorithm>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "wms/chartab.hpp"
#include "wms/cyclotomic.hpp"
#include "wms/numeric.hpp"

namespace wms {

/// An r-tuple of group elements, by index.
using Tuple = std::vector<int>;

inline std::string tuple_label(const FiniteGroup& G, const Tuple& t) {
  std::string out = "(";
  for (std::size_t k = 0; k < t.size(); ++k) {
    if (k) out += ",";
    out += G.label(t[k]);
  }
  return out + ")";
}

namespace detail {

// Frobenius r-character by the defining recursion:
//   chi^(1)(g) = chi(g)
//   chi^(r)(g_1,...,g_r) = chi(g_1) chi^(r-1)(g_2,...,g_r)
//                          - sum_{j=2..r} chi^(r-1)(g_2,...,g_1 g_j,...,g_r)
// Shifted tuples recur heavily, so values are memoized per evaluation.
class RCharEvaluator {
 public:
  RCharEvaluator(const CharacterTable& T, int i) : T_(T), i_(i) {}

  Cyclotomic eval(const Tuple& t) {
    if (t.empty()) fail(errc::parse_error, "r-character of an empty tuple");
    if (t.size() == 1) return T_.char_value(i_, t[0]);
    if (auto it = memo_.find(t); it != memo_.end()) return it->second;
    const FiniteGroup& G = T_.group();
    Tuple rest(t.begin() + 1, t.end());
    Cyclotomic value = T_.char_value(i_, t[0]) * eval(rest);
    for (std::size_t j = 0; j < rest.size(); ++j) {
      Tuple shifted = rest;
      shifted[j] = G.mul(t[0], rest[j]);
      value -= eval(shifted);
    }
    memo_.emplace(t, value);
    return value;
  }

 private:
  const CharacterTable& T_;
  int i_;
  std::map<Tuple, Cyclotomic> memo_;
};

inline void decode_tuple(std::uint64_t rank, int n, int r, Tuple& out) {
  out.resize(static_cast<std::size_t>(r));
  for (int k = r - 1; k >= 0; --k) {
    out[static_cast<std::size_t>(k)] = static_cast<int>(rank % static_cast<std::uint64_t>(n));
    rank /= static_cast<std::uint64_t>(n);
  }
}

}  // namespace detail

inline Cyclotomic r_character(const CharacterTable& T, int i, const Tuple& t) {
  detail::RCharEvaluator ev(T, i);
  return ev.eval(t);
}

/// chi_i^(r) for every tuple in G^(r), indexed by the base-|G| rank of the
/// tuple with g_1 as the most significant digit (lexicographic order).
inline std::vector<Cyclotomic> r_character_layer(const CharacterTable& T, int i, int r,
                                                 std::uint64_t budget = default_enumeration_budget) {
  const int n = T.group().order();
  check_budget(int_pow(n, static_cast<unsigned long>(r)), budget,
               "r-character table over G^(" + std::to_string(r) + ")");
  const FiniteGroup& G = T.group();
  std::vector<Cyclotomic> layer(static_cast<std::size_t>(n));
  for (int g = 0; g < n; ++g) layer[static_cast<std::size_t>(g)] = T.char_value(i, g);
  std::uint64_t size = static_cast<std::uint64_t>(n);
  for (int width = 2; width <= r; ++width) {
    std::vector<Cyclotomic> next(size * static_cast<std::uint64_t>(n));
    std::vector<std::uint64_t> stride(static_cast<std::size_t>(width - 1));
    stride.back() = 1;
    for (int k = static_cast<int>(stride.size()) - 2; k >= 0; --k)
      stride[static_cast<std::size_t>(k)] = stride[static_cast<std::size_t>(k + 1)] * n;
    Tuple rest;
    for (int g1 = 0; g1 < n; ++g1) {
      for (std::uint64_t rest_rank = 0; rest_rank < size; ++rest_rank) {
        detail::decode_tuple(rest_rank, n, width - 1, rest);
        Cyclotomic value = T.char_value(i, g1) * layer[rest_rank];
        for (std::size_t j = 0; j < rest.size(); ++j) {
          const int merged = G.mul(g1, rest[j]);
          const std::int64_t shifted_rank =
              static_cast<std::int64_t>(rest_rank) +
              static_cast<std::int64_t>(merged - rest[j]) * static_cast<std::int64_t>(stride[j]);
          value -= layer[static_cast<std::size_t>(shifted_rank)];
        }
        next[static_cast<std::uint64_t>(g1) * size + rest_rank] = std::move(value);
      }
    }
    layer = std::move(next);
    size *= static_cast<std::uint64_t>(n);
  }
  return layer;
}

/// The same r-character as a sum over S_r: sgn(sigma) times the product, over
/// the disjoint cycles of sigma, of chi at the product of the tuple entries
/// along each cycle (each cycle read from its smallest element, following
/// sigma).  Must agree with the recursion; the recursion is authoritative.
inline Cyclotomic r_character_cycle_sum(const CharacterTable& T, int i, const Tuple& t,
                                        int width_bound = 6) {
  const int r = static_cast<int>(t.size());
  if (r < 1) fail(errc::parse_error, "r-character of an empty tuple");
  if (r > width_bound)
    fail(errc::bound_exceeded, "cycle expansion over S_" + std::to_string(r) +
                                   " exceeds the width bound " + std::to_string(width_bound));
  const FiniteGroup& G = T.group();
  std::vector<int> perm(static_cast<std::size_t>(r));
  std::iota(perm.begin(), perm.end(), 0);
  Cyclotomic total(T.modulus());
  do {
    std::vector<bool> seen(static_cast<std::size_t>(r), false);
    Cyclotomic term = Cyclotomic::from_rational(T.modulus(), 1);
    int cycles = 0;
    for (int start = 0; start < r; ++start) {
      if (seen[static_cast<std::size_t>(start)]) continue;
      ++cycles;
      int product = G.identity();
      int at = start;
      do {
        seen[static_cast<std::size_t>(at)] = true;
        product = G.mul(product, t[static_cast<std::size_t>(at)]);
        at = perm[static_cast<std::size_t>(at)];
      } while (at != start);
      term *= T.char_value(i, product);
    }
    if ((r - cycles) % 2 != 0) term = -term;
    total += term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

struct vanish_report {
  int character = 0;
  int width = 0;
  std::uint64_t checks = 0;
  std::vector<std::string> violations;  // offending tuples with their values
  bool ok() const { return violations.empty(); }
};

/// chi^(r) vanishes identically once r exceeds dim chi.
inline vanish_report verify_vanishing(const CharacterTable& T, int i, int r,
                                      std::uint64_t budget = default_enumeration_budget) {
  if (r <= T.dim(i))
    fail(errc::width_not_above_dimension,
         "width " + std::to_string(r) + " does not exceed dim chi_" + std::to_string(i + 1) +
             " = " + std::to_string(T.dim(i)));
  const auto layer = r_character_layer(T, i, r, budget);
  vanish_report rep{i, r, layer.size(), {}};
  Tuple t;
  for (std::uint64_t rank = 0; rank < layer.size(); ++rank) {
    if (layer[rank].is_zero()) continue;
    detail::decode_tuple(rank, T.group().order(), r, t);
    rep.violations.push_back(tuple_label(T.group(), t) + " -> " + layer[rank].str());
    if (rep.violations.size() >= 16) break;
  }
  return rep;
}

/// sum over G^(r) of chi_i^(r); zero for every nontrivial character.
inline Cyclotomic r_character_total(const CharacterTable& T, int i, int r,
                                    std::uint64_t budget = default_enumeration_budget) {
  Cyclotomic total(T.modulus());
  for (const auto& v : r_character_layer(T, i, r, budget)) total += v;
  return total;
}

/// sum over G^(r) of chi_i^(r) * conj(chi_j^(r)), exactly.
inline Cyclotomic orthogonality_sum(const CharacterTable& T, int i, int j, int r,
                                    std::uint64_t budget = default_enumeration_budget) {
  const auto layer_i = r_character_layer(T, i, r, budget);
  Cyclotomic total(T.modulus());
  if (i == j) {
    for (const auto& v : layer_i) total += v * v.conj();
    return total;
  }
  const auto layer_j = r_character_layer(T, j, r, budget);
  for (std::uint64_t rank = 0; rank < layer_i.size(); ++rank)
    total += layer_i[rank] * layer_j[rank].conj();
  return total;
}

/// Closed form for the width-r orthogonality sum:
///   r! |G|^r delta_ij (dim-1)(dim-2)...(dim-(r-1)) / dim^{r-1},
/// with the empty product equal to 1 at r = 1.
inline Rational orthogonality_target(const Int& order, long dim, int r, bool same) {
  if (dim < 1) fail(errc::dimension_too_small, "dimension must be positive");
  if (r < 1) fail(errc::parse_error, "width must be positive");
  if (!same) return Rational(0);
  Rational value = Rational(factorial(static_cast<unsigned>(r)) *
                            int_pow(order, static_cast<unsigned long>(r)));
  for (long k = 1; k <= r - 1; ++k) value *= Rational(dim - k);
  value /= rat_pow(Rational(dim), r - 1);
  return value;
}

struct IdentityPair {
  Cyclotomic lhs;
  Cyclotomic rhs;
  bool holds() const { return lhs == rhs; }
};

/// sum_g chi_i(g h1 g^{-1} h2^{-1})  =  chi_i(h1) conj(chi_i(h2)) |G| / dim chi_i.
inline IdentityPair conjugation_average_identity(const CharacterTable& T, int i, int h1, int h2) {
  const FiniteGroup& G = T.group();
  Cyclotomic lhs(T.modulus());
  const int h2_inv = G.inverse(h2);
  for (int g = 0; g < G.order(); ++g)
    lhs += T.char_value(i, G.mul(G.mul(G.mul(g, h1), G.inverse(g)), h2_inv));
  Cyclotomic rhs = T.char_value(i, h1) * T.char_value(i, h2).conj() *
                   Rational(G.order(), T.dim(i));
  return {lhs, rhs};
}

/// sum_g chi_i(h1 g) conj(chi_j(g h2))  =  chi_i(h1 h2^{-1}) |G| delta_ij / dim chi_i.
inline IdentityPair translation_average_identity(const CharacterTable& T, int i, int j, int h1,
                                                 int h2) {
  const FiniteGroup& G = T.group();
  Cyclotomic lhs(T.modulus());
  for (int g = 0; g < G.order(); ++g)
    lhs += T.char_value(i, G.mul(h1, g)) * T.char_value(j, G.mul(g, h2)).conj();
  Cyclotomic rhs(T.modulus());
  if (i == j)
    rhs = T.char_value(i, G.mul(h1, G.inverse(h2))) * Rational(G.order(), T.dim(i));
  return {lhs, rhs};
}

/// The signed double sum over S_r x S_r that the orthogonality closed form
/// collapses:  sum sgn(sigma) sgn(tau) |G|^r / dim^{m(sigma,tau)}  where
/// m counts (cycle length - 1) over the cycles of sigma tau^{-1}.
inline Rational permutation_cycle_statistic(const Int& order, long dim, int r,
                                            int width_bound = 6) {
  if (dim < 1) fail(errc::dimension_too_small, "dimension must be positive");
  if (r < 1) fail(errc::parse_error, "width must be positive");
  if (r > width_bound)
    fail(errc::bound_exceeded, "double sum over S_" + std::to_string(r) +
                                   " exceeds the width bound " + std::to_string(width_bound));
  std::vector<std::vector<int>> perms;
  {
    std::vector<int> p(static_cast<std::size_t>(r));
    std::iota(p.begin(), p.end(), 0);
    do {
      perms.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));
  }
  auto sign_of = [r](const std::vector<int>& p) {
    std::vector<bool> seen(static_cast<std::size_t>(r), false);
    int cycles = 0;
    for (int s = 0; s < r; ++s) {
      if (seen[static_cast<std::size_t>(s)]) continue;
      ++cycles;
      for (int at = s; !seen[static_cast<std::size_t>(at)]; at = p[static_cast<std::size_t>(at)])
        seen[static_cast<std::size_t>(at)] = true;
    }
    return std::pair(cycles, (r - cycles) % 2 == 0 ? 1 : -1);
  };
  const Rational order_pow = Rational(int_pow(order, static_cast<unsigned long>(r)));
  Rational total = 0;
  std::vector<int> tau_inv(static_cast<std::size_t>(r)), prod(static_cast<std::size_t>(r));
  for (const auto& sigma : perms)
    for (const auto& tau : perms) {
      for (int k = 0; k < r; ++k) tau_inv[static_cast<std::size_t>(tau[static_cast<std::size_t>(k)])] = k;
      for (int k = 0; k < r; ++k)
        prod[static_cast<std::size_t>(k)] = sigma[static_cast<std::size_t>(tau_inv[static_cast<std::size_t>(k)])];
      const auto [cycles_prod, sign_prod] = sign_of(prod);
      (void)sign_prod;
      const int m = r - cycles_prod;
      const int joint_sign = sign_of(sigma).second * sign_of(tau).second;
      total += Rational(joint_sign) * order_pow / rat_pow(Rational(dim), m);
    }
  return total;
}

}  // namespace wms

#endif  // WMS_RCHAR_HPP
