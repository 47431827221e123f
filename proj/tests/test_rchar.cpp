#include "wms/rchar.hpp"

#include <catch2/catch_amalgamated.hpp>

using wms::bundled_character_table;
using wms::bundled_group;
using wms::CharacterTable;
using wms::Cyclotomic;
using wms::FiniteGroup;
using wms::Int;
using wms::Rational;
using wms::Tuple;

namespace {

Cyclotomic rat(const CharacterTable& T, long v) {
  return Cyclotomic::from_rational(T.modulus(), v);
}

}  // namespace

TEST_CASE("2-character values of the dihedral and quaternion groups", "[rchar]") {
  const CharacterTable D4 = bundled_character_table("D4");
  const FiniteGroup& G = D4.group();
  const int s = G.element("s"), r2s = G.element("r2s");
  CHECK(wms::r_character(D4, 4, {s, r2s}) == rat(D4, 2));
  CHECK(wms::r_character(D4, 4, {s, s}) == rat(D4, -2));
  CHECK(wms::r_character(D4, 4, {G.element("r3s"), G.element("rs")}) == rat(D4, 2));
  CHECK(wms::r_character(D4, 4, {s}) == rat(D4, 0));

  const CharacterTable Q8 = bundled_character_table("Q8");
  const FiniteGroup& H = Q8.group();
  CHECK(wms::r_character(Q8, 4, {H.element("j"), H.element("j")}) == rat(Q8, 2));
  CHECK(wms::r_character(Q8, 4, {H.element("j"), H.element("-j")}) == rat(Q8, -2));
  CHECK(wms::r_character(Q8, 4, {H.element("-k"), H.element("k")}) == rat(Q8, -2));

  // linear characters kill every 2-character
  for (int i = 0; i < 4; ++i)
    for (int g1 = 0; g1 < 8; ++g1)
      for (int g2 = 0; g2 < 8; ++g2) CHECK(wms::r_character(D4, i, {g1, g2}).is_zero());
}

TEST_CASE("2-characters are symmetric", "[rchar]") {
  for (const char* name : {"D4", "Q8", "S3"}) {
    const CharacterTable T = wms::character_table_for(bundled_group(name));
    const int n = T.group().order();
    for (int i = 0; i < T.count(); ++i)
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
          CHECK(wms::r_character(T, i, {a, b}) == wms::r_character(T, i, {b, a}));
  }
}

TEST_CASE("recursion and cycle expansion agree on every bundled group", "[rchar]") {
  for (const auto& name : wms::bundled_group_names()) {
    const CharacterTable T = wms::character_table_for(bundled_group(name));
    const int n = T.group().order();
    for (int i = 0; i < T.count(); ++i) {
      for (int r = 1; r <= 3; ++r) {
        const auto layer = wms::r_character_layer(T, i, r);
        Tuple t;
        for (std::uint64_t rank = 0; rank < layer.size(); ++rank) {
          wms::detail::decode_tuple(rank, n, r, t);
          CHECK(layer[rank] == wms::r_character_cycle_sum(T, i, t));
          if (r <= 2) CHECK(layer[rank] == wms::r_character(T, i, t));
        }
      }
    }
  }
  // a width-4 spot check on S3
  const CharacterTable S3 = wms::character_table_for(bundled_group("S3"));
  for (int i = 0; i < S3.count(); ++i) {
    const auto layer = wms::r_character_layer(S3, i, 4);
    Tuple t;
    for (std::uint64_t rank = 0; rank < layer.size(); ++rank) {
      wms::detail::decode_tuple(rank, 6, 4, t);
      CHECK(layer[rank] == wms::r_character_cycle_sum(S3, i, t));
    }
  }
  CHECK_THROWS_AS(wms::r_character_cycle_sum(bundled_character_table("D4"), 4, {0, 0, 0, 0, 0, 0, 0}),
                  wms::error);
}

TEST_CASE("vanishing above the dimension", "[rchar]") {
  const CharacterTable D4 = bundled_character_table("D4");
  for (int i = 0; i < 4; ++i) {
    const auto rep = wms::verify_vanishing(D4, i, 2);
    CHECK(rep.checks == 64);
    CHECK(rep.ok());
  }
  CHECK(wms::verify_vanishing(D4, 4, 3).ok());
  CHECK(wms::verify_vanishing(bundled_character_table("Q8"), 4, 3).ok());
  CHECK_THROWS_WITH(wms::verify_vanishing(D4, 4, 2),
                    Catch::Matchers::ContainsSubstring("WidthNotAboveDimension"));
}

TEST_CASE("nontrivial r-characters sum to zero over G^(r)", "[rchar]") {
  for (const auto& name : wms::bundled_group_names()) {
    const CharacterTable T = wms::character_table_for(bundled_group(name));
    for (int i = 1; i < T.count(); ++i)
      for (int r = 1; r <= 3; ++r) CHECK(wms::r_character_total(T, i, r).is_zero());
  }
  // the trivial character instead sums to |G|^r
  const CharacterTable D4 = bundled_character_table("D4");
  CHECK(wms::r_character_total(D4, 0, 1) == rat(D4, 8));
}

TEST_CASE("orthogonality closed form", "[rchar]") {
  CHECK(wms::orthogonality_target(8, 1, 1, true) == 8);
  CHECK(wms::orthogonality_target(8, 2, 2, true) == 64);
  CHECK(wms::orthogonality_target(8, 2, 3, true) == 0);  // the dim-2 factor vanishes
  CHECK(wms::orthogonality_target(6, 2, 2, true) == 36);
  CHECK(wms::orthogonality_target(8, 2, 2, false) == 0);
  CHECK(wms::orthogonality_target(24, 3, 2, true) == Rational(2 * 24 * 24 * 2, 3));
}

TEST_CASE("orthogonality sums match the closed form exhaustively", "[rchar]") {
  for (const auto& name : wms::bundled_group_names()) {
    const CharacterTable T = wms::character_table_for(bundled_group(name));
    for (int i = 0; i < T.count(); ++i)
      for (int j = 0; j < T.count(); ++j)
        for (int r = 1; r <= 3; ++r) {
          const Cyclotomic sum = wms::orthogonality_sum(T, i, j, r);
          const Rational target = wms::orthogonality_target(T.group().order(), T.dim(i), r, i == j);
          CHECK(sum == Cyclotomic::from_rational(T.modulus(), target));
        }
  }
}

TEST_CASE("conjugation-average identity", "[rchar]") {
  for (const char* name : {"D4", "Q8"}) {
    const CharacterTable T = bundled_character_table(name);
    const FiniteGroup& G = T.group();
    for (int i = 0; i < T.count(); ++i)
      for (int h1 = 0; h1 < G.order(); ++h1)
        for (int h2 = 0; h2 < G.order(); ++h2) CHECK(wms::conjugation_average_identity(T, i, h1, h2).holds());
  }
  const CharacterTable D4 = bundled_character_table("D4");
  const FiniteGroup& G = D4.group();
  // identity at h1 = h2 = e: both sides |G| * dim
  const auto at_identity = wms::conjugation_average_identity(D4, 4, G.identity(), G.identity());
  CHECK(at_identity.lhs == rat(D4, 16));
  // h1 = h2 = r: chi5(r) = 0 so both sides are 0
  CHECK(wms::conjugation_average_identity(D4, 4, G.element("r"), G.element("r")).lhs == rat(D4, 0));
  // h1 = h2 = r2: (-2)(-2) * 8 / 2 = 16
  CHECK(wms::conjugation_average_identity(D4, 4, G.element("r2"), G.element("r2")).rhs == rat(D4, 16));
}

TEST_CASE("translation-average identity", "[rchar]") {
  for (const char* name : {"D4", "Q8"}) {
    const CharacterTable T = bundled_character_table(name);
    const FiniteGroup& G = T.group();
    for (int i = 0; i < T.count(); ++i)
      for (int j = 0; j < T.count(); ++j)
        for (int h1 = 0; h1 < G.order(); ++h1)
          for (int h2 = 0; h2 < G.order(); ++h2)
            CHECK(wms::translation_average_identity(T, i, j, h1, h2).holds());
  }
  const CharacterTable D4 = bundled_character_table("D4");
  const FiniteGroup& G = D4.group();
  const auto recovers_order = wms::translation_average_identity(D4, 2, 2, G.identity(), G.identity());
  CHECK(recovers_order.lhs == rat(D4, 8));
  CHECK(wms::translation_average_identity(D4, 4, 4, G.element("r"), G.identity()).rhs == rat(D4, 0));
  CHECK(wms::translation_average_identity(D4, 0, 1, G.element("r"), G.element("s")).rhs == rat(D4, 0));
}

TEST_CASE("permutation cycle statistic collapses to the closed form", "[rchar]") {
  for (int dim = 1; dim <= 6; ++dim)
    for (int r = 1; r <= 4; ++r) {
      const Rational lhs = wms::permutation_cycle_statistic(Int(8), dim, r);
      CHECK(lhs == wms::orthogonality_target(Int(8), dim, r, true));
      const Rational lhs6 = wms::permutation_cycle_statistic(Int(6), dim, r);
      CHECK(lhs6 == wms::orthogonality_target(Int(6), dim, r, true));
    }
  CHECK(wms::permutation_cycle_statistic(Int(8), 1, 1) == 8);
  CHECK(wms::permutation_cycle_statistic(Int(8), 2, 2) == 64);
  CHECK(wms::permutation_cycle_statistic(Int(8), 2, 3) == 0);
  CHECK_THROWS_AS(wms::permutation_cycle_statistic(Int(8), 2, 7), wms::error);
}

TEST_CASE("enumeration budget is enforced", "[rchar]") {
  const CharacterTable D4 = bundled_character_table("D4");
  CHECK_THROWS_WITH(wms::r_character_layer(D4, 4, 3, 100),
                    Catch::Matchers::ContainsSubstring("BudgetExceeded"));
}
