#ifndef WMS_GROUP_HPP
#define WMS_GROUP_HPP

#include <algorithm>
#include <numeric>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "wms/numeric.hpp"

namespace wms {

/// A finite group given by its full Cayley table.  Construction validates the
/// table (Latin square, identity, associativity) so that a value of this type
/// is always a genuine group.  Immutable after construction.
class FiniteGroup {
 public:
  static FiniteGroup from_table(std::string name, std::vector<std::string> labels,
                                std::vector<std::vector<int>> rows) {
    const int n = static_cast<int>(rows.size());
    if (n == 0) fail(errc::not_latin_square, "empty table");
    if (static_cast<int>(labels.size()) != n)
      fail(errc::not_latin_square, "expected " + std::to_string(n) + " labels, got " +
                                       std::to_string(labels.size()));
    for (int a = 0; a < n; ++a) {
      if (static_cast<int>(rows[a].size()) != n)
        fail(errc::not_latin_square, "row " + std::to_string(a) + " has " +
                                         std::to_string(rows[a].size()) + " entries, expected " +
                                         std::to_string(n));
      std::vector<bool> in_row(n, false);
      for (int b = 0; b < n; ++b) {
        const int v = rows[a][b];
        if (v < 0 || v >= n)
          fail(errc::not_latin_square,
               "entry out of range at (" + std::to_string(a) + "," + std::to_string(b) + ")");
        if (in_row[v])
          fail(errc::not_latin_square, "row " + std::to_string(a) + " repeats entry " +
                                           std::to_string(v));
        in_row[v] = true;
      }
    }
    for (int b = 0; b < n; ++b) {
      std::vector<bool> in_col(n, false);
      for (int a = 0; a < n; ++a) {
        const int v = rows[a][b];
        if (in_col[v])
          fail(errc::not_latin_square, "column " + std::to_string(b) + " repeats entry " +
                                           std::to_string(v));
        in_col[v] = true;
      }
    }
    int identity = -1;
    for (int e = 0; e < n; ++e) {
      bool ok = true;
      for (int g = 0; g < n && ok; ++g) ok = rows[e][g] == g && rows[g][e] == g;
      if (ok) {
        identity = e;
        break;
      }
    }
    if (identity < 0) fail(errc::no_identity, "no two-sided identity element");
    if (n <= 64) {
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
          for (int c = 0; c < n; ++c)
            if (rows[rows[a][b]][c] != rows[a][rows[b][c]])
              fail(errc::not_associative, "triple (" + std::to_string(a) + "," +
                                              std::to_string(b) + "," + std::to_string(c) + ")");
    }
    FiniteGroup g;
    g.name_ = std::move(name);
    g.labels_ = std::move(labels);
    g.table_ = std::move(rows);
    g.identity_ = identity;
    return g;
  }

  const std::string& name() const { return name_; }
  int order() const { return static_cast<int>(table_.size()); }
  int identity() const { return identity_; }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::string& label(int g) const { return labels_[static_cast<std::size_t>(g)]; }
  const std::vector<std::vector<int>>& table() const { return table_; }

  int mul(int a, int b) const { return table_[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)]; }

  int inverse(int a) const {
    for (int b = 0; b < order(); ++b)
      if (mul(a, b) == identity_) return b;
    fail(errc::no_identity, "no inverse for element " + std::to_string(a));
  }

  /// g^k for k >= 0.
  int power(int g, long k) const {
    int acc = identity_;
    for (long i = 0; i < k; ++i) acc = mul(acc, g);
    return acc;
  }

  int element(const std::string& label) const {
    for (int g = 0; g < order(); ++g)
      if (labels_[static_cast<std::size_t>(g)] == label) return g;
    fail(errc::not_found, "no element labelled '" + label + "' in " + name_);
  }

 private:
  FiniteGroup() = default;
  std::string name_;
  std::vector<std::string> labels_;
  std::vector<std::vector<int>> table_;
  int identity_ = 0;
};

inline int element_order(const FiniteGroup& G, int g) {
  int acc = g;
  int k = 1;
  while (acc != G.identity()) {
    acc = G.mul(acc, g);
    ++k;
  }
  return k;
}

/// Conjugacy classes in the canonical order (element order, class size,
/// smallest member index); the identity class sorts first.
struct ConjugacyClassPartition {
  std::vector<std::vector<int>> classes;  // members, ascending
  std::vector<int> representatives;      // smallest member of each class
  std::vector<int> sizes;
  std::vector<int> orders;               // common element order per class
  std::vector<int> class_of;             // element index -> class index

  int count() const { return static_cast<int>(classes.size()); }
};

inline ConjugacyClassPartition conjugacy_classes(const FiniteGroup& G) {
  const int n = G.order();
  std::vector<int> cls(n, -1);
  std::vector<std::vector<int>> raw;
  for (int g = 0; g < n; ++g) {
    if (cls[g] >= 0) continue;
    std::set<int> members;
    for (int h = 0; h < n; ++h) members.insert(G.mul(G.mul(h, g), G.inverse(h)));
    const int idx = static_cast<int>(raw.size());
    raw.emplace_back(members.begin(), members.end());
    for (int m : raw.back()) cls[m] = idx;
  }
  std::vector<int> order_of(raw.size());
  for (std::size_t c = 0; c < raw.size(); ++c) order_of[c] = element_order(G, raw[c][0]);
  std::vector<int> perm(raw.size());
  std::iota(perm.begin(), perm.end(), 0);
  std::sort(perm.begin(), perm.end(), [&](int a, int b) {
    return std::tuple(order_of[a], raw[a].size(), raw[a][0]) <
           std::tuple(order_of[b], raw[b].size(), raw[b][0]);
  });
  ConjugacyClassPartition p;
  p.class_of.assign(n, -1);
  for (int c : perm) {
    const int idx = static_cast<int>(p.classes.size());
    p.classes.push_back(raw[static_cast<std::size_t>(c)]);
    p.representatives.push_back(p.classes.back().front());
    p.sizes.push_back(static_cast<int>(p.classes.back().size()));
    p.orders.push_back(order_of[static_cast<std::size_t>(c)]);
    for (int m : p.classes.back()) p.class_of[static_cast<std::size_t>(m)] = idx;
  }
  return p;
}

/// Class-level k-th power map: image class of {g^k : g in C_j}.  Power maps
/// respect conjugacy, which is re-checked here rather than assumed.
inline std::vector<int> power_map(const FiniteGroup& G, const ConjugacyClassPartition& P, long k) {
  if (k < 0) fail(errc::parse_error, "power map exponent must be nonnegative");
  std::vector<int> image(P.classes.size());
  for (std::size_t c = 0; c < P.classes.size(); ++c) {
    int target = -1;
    for (int g : P.classes[c]) {
      const int t = P.class_of[static_cast<std::size_t>(G.power(g, k))];
      if (target < 0) target = t;
      if (t != target)
        throw std::logic_error("power map not class-constant on class " + std::to_string(c));
    }
    image[c] = target;
  }
  return image;
}

inline int group_exponent(const FiniteGroup& G) {
  long m = 1;
  for (int g = 0; g < G.order(); ++g) m = std::lcm(m, static_cast<long>(element_order(G, g)));
  return static_cast<int>(m);
}

// ---------------------------------------------------------------------------
// Bundled groups: every group used by the demo flows and the test matrix.
// ---------------------------------------------------------------------------

namespace detail {

inline FiniteGroup make_cyclic(const std::string& name, int n, const std::string& gen) {
  std::vector<std::string> labels;
  for (int k = 0; k < n; ++k)
    labels.push_back(k == 0 ? "1" : (k == 1 ? gen : gen + std::to_string(k)));
  std::vector<std::vector<int>> rows(n, std::vector<int>(n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) rows[a][b] = (a + b) % n;
  return FiniteGroup::from_table(name, std::move(labels), std::move(rows));
}

inline FiniteGroup make_product(const std::string& name, const FiniteGroup& A,
                                const FiniteGroup& B) {
  const int na = A.order(), nb = B.order();
  std::vector<std::string> labels;
  std::vector<std::vector<int>> rows(static_cast<std::size_t>(na * nb),
                                     std::vector<int>(static_cast<std::size_t>(na * nb)));
  auto idx = [&](int a, int b) { return a * nb + b; };
  for (int a = 0; a < na; ++a)
    for (int b = 0; b < nb; ++b) {
      std::string la = A.label(a), lb = B.label(b);
      labels.push_back(la == "1" ? lb : (lb == "1" ? la : la + lb));
    }
  for (int a1 = 0; a1 < na; ++a1)
    for (int b1 = 0; b1 < nb; ++b1)
      for (int a2 = 0; a2 < na; ++a2)
        for (int b2 = 0; b2 < nb; ++b2)
          rows[idx(a1, b1)][idx(a2, b2)] = idx(A.mul(a1, a2), B.mul(b1, b2));
  return FiniteGroup::from_table(name, std::move(labels), std::move(rows));
}

/// Dihedral group of order 2n: elements r^a s^b with s r = r^{-1} s.
inline FiniteGroup make_dihedral(const std::string& name, int n) {
  std::vector<std::string> labels;
  for (int a = 0; a < n; ++a)
    labels.push_back(a == 0 ? "1" : (a == 1 ? "r" : "r" + std::to_string(a)));
  for (int a = 0; a < n; ++a)
    labels.push_back(a == 0 ? "s" : (a == 1 ? "rs" : "r" + std::to_string(a) + "s"));
  auto idx = [&](int a, int b) { return b * n + ((a % n) + n) % n; };
  const int order = 2 * n;
  std::vector<std::vector<int>> rows(order, std::vector<int>(order));
  for (int a1 = 0; a1 < n; ++a1)
    for (int b1 = 0; b1 < 2; ++b1)
      for (int a2 = 0; a2 < n; ++a2)
        for (int b2 = 0; b2 < 2; ++b2)
          rows[idx(a1, b1)][idx(a2, b2)] = idx(b1 == 0 ? a1 + a2 : a1 - a2, b1 ^ b2);
  return FiniteGroup::from_table(name, std::move(labels), std::move(rows));
}

inline FiniteGroup make_quaternion() {
  // 1, -1, i, -i, j, -j, k, -k encoded as (axis, sign).
  const std::vector<std::string> labels = {"1", "-1", "i", "-i", "j", "-j", "k", "-k"};
  auto axis = [](int g) { return g / 2; };  // 0:1, 1:i, 2:j, 3:k
  auto sign = [](int g) { return g % 2 == 0 ? 1 : -1; };
  auto pack = [](int ax, int sg) { return ax * 2 + (sg > 0 ? 0 : 1); };
  // unit multiplication: (axis, axis) -> (axis, sign)
  static const int ax_mul[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
  static const int sg_mul[4][4] = {{1, 1, 1, 1}, {1, -1, 1, -1}, {1, -1, -1, 1}, {1, 1, -1, -1}};
  std::vector<std::vector<int>> rows(8, std::vector<int>(8));
  for (int a = 0; a < 8; ++a)
    for (int b = 0; b < 8; ++b)
      rows[a][b] = pack(ax_mul[axis(a)][axis(b)],
                        sign(a) * sign(b) * sg_mul[axis(a)][axis(b)]);
  return FiniteGroup::from_table("Q8", labels, std::move(rows));
}

}  // namespace detail

inline const std::vector<std::string>& bundled_group_names() {
  static const std::vector<std::string> names = {"trivial", "Z2",     "Z4", "Z2xZ2", "S3",
                                                 "D4",      "Q8",     "Z8", "Z2xZ4", "Z2xZ2xZ2"};
  return names;
}

inline FiniteGroup bundled_group(const std::string& name) {
  using detail::make_cyclic;
  using detail::make_dihedral;
  using detail::make_product;
  if (name == "trivial") return make_cyclic("trivial", 1, "g");
  if (name == "Z2") return make_cyclic("Z2", 2, "g");
  if (name == "Z4") return make_cyclic("Z4", 4, "g");
  if (name == "Z8") return make_cyclic("Z8", 8, "g");
  if (name == "Z2xZ2") return make_product("Z2xZ2", make_cyclic("", 2, "a"), make_cyclic("", 2, "b"));
  if (name == "Z2xZ4") return make_product("Z2xZ4", make_cyclic("", 2, "a"), make_cyclic("", 4, "g"));
  if (name == "Z2xZ2xZ2")
    return make_product("Z2xZ2xZ2", make_cyclic("", 2, "a"),
                        make_product("", make_cyclic("", 2, "b"), make_cyclic("", 2, "c")));
  if (name == "S3") return make_dihedral("S3", 3);
  if (name == "D4") return make_dihedral("D4", 4);
  if (name == "Q8") return detail::make_quaternion();
  fail(errc::not_found, "no bundled group named '" + name + "'");
}

}  // namespace wms

#endif  // WMS_GROUP_HPP
