#ifndef WMS_DISTINGUISH_HPP
#define WMS_DISTINGUISH_HPP

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "wms/chartab.hpp"
#include "wms/rchar.hpp"

namespace wms {

/// A class bijection between two groups under which the character-table value
/// matrices coincide, together with the (unique) row pairing that makes them
/// coincide.  Element-order and power-map preservation are recorded as
/// diagnostics: a matching carrying both is a Brauer-pair witness, but a
/// width-s comparison is meaningful for any table-compatible matching.
struct ClassMatching {
  std::vector<int> class_map;  // class index in A -> class index in B
  std::vector<int> row_map;    // character row in A -> character row in B
  bool preserves_orders = false;
  bool preserves_power_maps = false;
};

/// All size- and character-table-compatible class bijections, in canonical
/// (lexicographic) order.  An empty list means the groups are already
/// distinguished by 1-characters.
inline std::vector<ClassMatching> compatible_class_matchings(const CharacterTable& A,
                                                             const CharacterTable& B) {
  std::vector<ClassMatching> out;
  const int t = A.count();
  if (t != B.count() || A.group().order() != B.group().order()) return out;

  std::vector<int> class_map(static_cast<std::size_t>(t), -1);
  std::vector<bool> used(static_cast<std::size_t>(t), false);
  // row_candidates[i][k]: row i of A can still pair with row k of B
  std::vector<std::vector<bool>> row_candidates(static_cast<std::size_t>(t),
                                                std::vector<bool>(static_cast<std::size_t>(t)));
  for (int i = 0; i < t; ++i)
    for (int k = 0; k < t; ++k)
      row_candidates[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] =
          A.dim(i) == B.dim(k);

  auto emit = [&]() {
    ClassMatching m;
    m.class_map = class_map;
    m.row_map.assign(static_cast<std::size_t>(t), -1);
    std::vector<bool> taken(static_cast<std::size_t>(t), false);
    for (int i = 0; i < t; ++i) {
      int hit = -1;
      for (int k = 0; k < t; ++k) {
        if (taken[static_cast<std::size_t>(k)] ||
            !row_candidates[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)])
          continue;
        if (hit >= 0) return;  // ambiguous row pairing cannot happen for distinct rows
        hit = k;
      }
      if (hit < 0) return;
      taken[static_cast<std::size_t>(hit)] = true;
      m.row_map[static_cast<std::size_t>(i)] = hit;
    }
    // verify the full value identity chi_i(C_j) = chi'_{row(i)}(class(C_j))
    for (int i = 0; i < t; ++i)
      for (int j = 0; j < t; ++j)
        if (!equal_embedded(A.value(i, j),
                            B.value(m.row_map[static_cast<std::size_t>(i)],
                                    class_map[static_cast<std::size_t>(j)])))
          return;
    m.preserves_orders = true;
    for (int j = 0; j < t; ++j)
      if (A.classes().orders[static_cast<std::size_t>(j)] !=
          B.classes().orders[static_cast<std::size_t>(class_map[static_cast<std::size_t>(j)])])
        m.preserves_orders = false;
    m.preserves_power_maps = true;
    const int exponent = std::max(group_exponent(A.group()), group_exponent(B.group()));
    for (long k = 0; k <= exponent && m.preserves_power_maps; ++k) {
      const auto pa = power_map(A.group(), A.classes(), k);
      const auto pb = power_map(B.group(), B.classes(), k);
      for (int j = 0; j < t; ++j)
        if (class_map[static_cast<std::size_t>(pa[static_cast<std::size_t>(j)])] !=
            pb[static_cast<std::size_t>(class_map[static_cast<std::size_t>(j)])]) {
          m.preserves_power_maps = false;
          break;
        }
    }
    out.push_back(std::move(m));
  };

  auto backtrack = [&](auto&& self, int j) -> void {
    if (j == t) {
      emit();
      return;
    }
    for (int cand = 0; cand < t; ++cand) {
      if (used[static_cast<std::size_t>(cand)]) continue;
      if (A.classes().sizes[static_cast<std::size_t>(j)] !=
          B.classes().sizes[static_cast<std::size_t>(cand)])
        continue;
      // bind column j -> cand and narrow the row candidates
      std::vector<std::vector<bool>> saved = row_candidates;
      bool feasible = true;
      for (int i = 0; i < t && feasible; ++i) {
        bool any = false;
        for (int k = 0; k < t; ++k) {
          auto cell = row_candidates[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)];
          if (cell && !equal_embedded(A.value(i, j), B.value(k, cand))) cell = false;
          any = any || cell;
        }
        feasible = any;
      }
      if (feasible) {
        used[static_cast<std::size_t>(cand)] = true;
        class_map[static_cast<std::size_t>(j)] = cand;
        self(self, j + 1);
        used[static_cast<std::size_t>(cand)] = false;
        class_map[static_cast<std::size_t>(j)] = -1;
      }
      row_candidates = std::move(saved);
    }
  };
  backtrack(backtrack, 0);
  return out;
}

/// A concrete width-r disagreement: a tuple, its image under the canonical
/// class-respecting bijection of a matching, and the full r-character value
/// vectors on both sides (ordered by the first group's characters).
struct SeparationWitness {
  int width = 0;
  Tuple tuple_a;
  Tuple tuple_b;
  std::vector<Cyclotomic> values_a;
  std::vector<Cyclotomic> values_b;
  ClassMatching matching;
};

struct Verdict {
  bool equivalent = false;
  std::string reason;
  std::optional<SeparationWitness> witness;
  int matchings = 0;
  std::uint64_t bijections_tried = 0;
};

namespace detail {

// chi^(r) tables for r = 1..s, per character.
using LayerStack = std::vector<std::vector<std::vector<Cyclotomic>>>;  // [r-1][char][rank]

inline LayerStack build_layers(const CharacterTable& T, int s, std::uint64_t budget) {
  LayerStack stack;
  for (int r = 1; r <= s; ++r) {
    std::vector<std::vector<Cyclotomic>> per_char;
    for (int i = 0; i < T.count(); ++i) per_char.push_back(r_character_layer(T, i, r, budget));
    stack.push_back(std::move(per_char));
  }
  return stack;
}

inline std::uint64_t tuple_rank(const Tuple& t, int n) {
  std::uint64_t rank = 0;
  for (int g : t) rank = rank * static_cast<std::uint64_t>(n) + static_cast<std::uint64_t>(g);
  return rank;
}

}  // namespace detail

/// Search for an element bijection theta refining some table-compatible class
/// matching with chi_i^(r)(g_) = chi'_{row(i)}^(r)(theta g_) for all r <= s
/// and all tuples.  Backtracking assigns one element at a time and prunes on
/// the first violated tuple.
inline Verdict equivalent_up_to_width(const CharacterTable& A, const CharacterTable& B, int s,
                                      std::uint64_t bijection_cap = 1'000'000,
                                      std::uint64_t budget = default_enumeration_budget) {
  if (s < 1 || s > 3)
    fail(errc::bound_exceeded, "width " + std::to_string(s) + " outside the searchable range 1..3");
  if (A.group().order() > 16 || B.group().order() > 16)
    fail(errc::bound_exceeded, "group order beyond the search bound 16");

  Verdict verdict;
  if (A.group().order() != B.group().order() || A.count() != B.count()) {
    verdict.reason = "group orders or class counts differ";
    return verdict;
  }
  const auto matchings = compatible_class_matchings(A, B);
  verdict.matchings = static_cast<int>(matchings.size());
  if (matchings.empty()) {
    verdict.reason = "no class bijection makes the character tables coincide";
    return verdict;
  }

  const int n = A.group().order();
  const int t = A.count();
  const auto layers_a = detail::build_layers(A, s, budget);
  const auto layers_b = detail::build_layers(B, s, budget);

  // elements of A in class-concatenated canonical order
  std::vector<int> schedule;
  for (const auto& cls : A.classes().classes) schedule.insert(schedule.end(), cls.begin(), cls.end());

  std::vector<int> theta(static_cast<std::size_t>(n), -1);
  std::vector<bool> image_used(static_cast<std::size_t>(n), false);
  std::vector<int> assigned;  // prefix of schedule already mapped

  const ClassMatching* current = nullptr;
  std::uint64_t nodes = 0;

  auto consistent_with_new = [&](int g) {
    // every tuple over the assigned prefix that contains g, widths 2..s
    for (int r = 2; r <= s; ++r) {
      Tuple ta(static_cast<std::size_t>(r)), tb(static_cast<std::size_t>(r));
      const std::uint64_t combos = int_pow(assigned.size(), static_cast<unsigned long>(r)).convert_to<std::uint64_t>();
      for (std::uint64_t c = 0; c < combos; ++c) {
        std::uint64_t rest = c;
        bool contains_g = false;
        for (int k = r - 1; k >= 0; --k) {
          const int idx = static_cast<int>(rest % assigned.size());
          rest /= assigned.size();
          const int elem = assigned[static_cast<std::size_t>(idx)];
          ta[static_cast<std::size_t>(k)] = elem;
          tb[static_cast<std::size_t>(k)] = theta[static_cast<std::size_t>(elem)];
          contains_g = contains_g || elem == g;
        }
        if (!contains_g) continue;
        const std::uint64_t rank_a = detail::tuple_rank(ta, n);
        const std::uint64_t rank_b = detail::tuple_rank(tb, n);
        for (int i = 0; i < t; ++i) {
          const int ib = current->row_map[static_cast<std::size_t>(i)];
          if (!equal_embedded(
                  layers_a[static_cast<std::size_t>(r - 1)][static_cast<std::size_t>(i)][rank_a],
                  layers_b[static_cast<std::size_t>(r - 1)][static_cast<std::size_t>(ib)][rank_b]))
            return false;
        }
      }
    }
    return true;
  };

  auto search = [&](auto&& self, std::size_t pos) -> bool {
    if (pos == schedule.size()) return true;
    const int g = schedule[pos];
    const int cls = A.classes().class_of[static_cast<std::size_t>(g)];
    const int target = current->class_map[static_cast<std::size_t>(cls)];
    for (int h : B.classes().classes[static_cast<std::size_t>(target)]) {
      if (image_used[static_cast<std::size_t>(h)]) continue;
      if (++nodes > bijection_cap)
        fail(errc::bound_exceeded, "bijection search exceeded the cap of " +
                                       std::to_string(bijection_cap) + " assignments");
      theta[static_cast<std::size_t>(g)] = h;
      image_used[static_cast<std::size_t>(h)] = true;
      assigned.push_back(g);
      const bool ok = consistent_with_new(g) && self(self, pos + 1);
      assigned.pop_back();
      image_used[static_cast<std::size_t>(h)] = false;
      theta[static_cast<std::size_t>(g)] = -1;
      if (ok) return true;
    }
    return false;
  };

  for (const auto& matching : matchings) {
    current = &matching;
    if (search(search, 0)) {
      verdict.equivalent = true;
      verdict.reason = "a class-compatible element bijection matches all r-characters for r <= " +
                       std::to_string(s);
      verdict.bijections_tried = nodes;
      return verdict;
    }
  }
  verdict.bijections_tried = nodes;
  verdict.reason = "no element bijection over " + std::to_string(matchings.size()) +
                   " class matching(s) preserves all r-characters";

  // Canonical witness: first matching, order-preserving per-class bijection,
  // first tuple in lexicographic order whose value vectors differ.
  const ClassMatching& m0 = matchings.front();
  std::vector<int> theta0(static_cast<std::size_t>(n), -1);
  for (int j = 0; j < t; ++j) {
    const auto& ca = A.classes().classes[static_cast<std::size_t>(j)];
    const auto& cb = B.classes().classes[static_cast<std::size_t>(m0.class_map[static_cast<std::size_t>(j)])];
    for (std::size_t k = 0; k < ca.size(); ++k)
      theta0[static_cast<std::size_t>(ca[k])] = cb[k];
  }
  Tuple ta, tb;
  for (int r = 2; r <= s; ++r) {
    const std::uint64_t tuples = layers_a[static_cast<std::size_t>(r - 1)].front().size();
    for (std::uint64_t rank = 0; rank < tuples; ++rank) {
      detail::decode_tuple(rank, n, r, ta);
      tb.resize(ta.size());
      for (std::size_t k = 0; k < ta.size(); ++k)
        tb[k] = theta0[static_cast<std::size_t>(ta[k])];
      const std::uint64_t rank_b = detail::tuple_rank(tb, n);
      bool differ = false;
      for (int i = 0; i < t && !differ; ++i)
        differ = !equal_embedded(
            layers_a[static_cast<std::size_t>(r - 1)][static_cast<std::size_t>(i)][rank],
            layers_b[static_cast<std::size_t>(r - 1)][static_cast<std::size_t>(
                m0.row_map[static_cast<std::size_t>(i)])][rank_b]);
      if (!differ) continue;
      SeparationWitness w;
      w.width = r;
      w.tuple_a = ta;
      w.tuple_b = tb;
      for (int i = 0; i < t; ++i) {
        w.values_a.push_back(
            layers_a[static_cast<std::size_t>(r - 1)][static_cast<std::size_t>(i)][rank]);
        w.values_b.push_back(layers_b[static_cast<std::size_t>(r - 1)][static_cast<std::size_t>(
            m0.row_map[static_cast<std::size_t>(i)])][rank_b]);
      }
      w.matching = m0;
      verdict.witness = std::move(w);
      return verdict;
    }
  }
  return verdict;
}

}  // namespace wms

#endif  // WMS_DISTINGUISH_HPP
