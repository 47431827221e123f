#include "wms/moonshine.hpp"

#include <catch2/catch_amalgamated.hpp>

using wms::AssignmentRule;
using wms::bundled_character_table;
using wms::bundled_group;
using wms::CharacterTable;
using wms::Int;
using wms::ModuleSpec;
using wms::MultiplicityTable;
using wms::Rational;
using wms::RationalSeries;
using wms::Tuple;

namespace {

constexpr long kPrec = 8;

ModuleSpec d4_spec(long prec = kPrec) {
  return wms::default_assignment(bundled_character_table("D4"), prec);
}

ModuleSpec q8_spec(long prec = kPrec) {
  return wms::default_assignment(bundled_character_table("Q8"), prec);
}

}  // namespace

TEST_CASE("default assignments", "[moonshine]") {
  const ModuleSpec d4 = d4_spec();
  // canonical D4 classes {1},{r2},{s,r2s},{rs,r3s},{r,r3} -> levels 1,2,2,2,4
  CHECK(d4.levels() == std::vector<unsigned>{1, 2, 2, 2, 4});
  const ModuleSpec q8 = q8_spec();
  // canonical Q8 classes {1},{-1},{i,-i},{j,-j},{k,-k} inherit the D4 series
  // through the shared table
  CHECK(q8.levels() == std::vector<unsigned>{1, 2, 4, 2, 2});
  // the ord(g) rule instead gives level 4 to all three 2-element classes
  const ModuleSpec q8_ord =
      wms::default_assignment(bundled_character_table("Q8"), kPrec, AssignmentRule::by_element_order);
  CHECK(q8_ord.levels() == std::vector<unsigned>{1, 2, 4, 4, 4});

  const ModuleSpec trivial =
      wms::default_assignment(wms::character_table_for(bundled_group("trivial")), kPrec);
  CHECK(trivial.levels() == std::vector<unsigned>{1});
  CHECK(trivial.pole_depth() == 1);

  // S3 has a class of order 3: no catalog entry
  CHECK_THROWS_WITH(
      wms::default_assignment(wms::character_table_for(bundled_group("S3")), kPrec),
      Catch::Matchers::ContainsSubstring("UnsupportedOrder"));
}

TEST_CASE("multiplicity generating functions of D4 and Q8", "[moonshine]") {
  for (const ModuleSpec& spec : {d4_spec(), q8_spec()}) {
    const MultiplicityTable mult = wms::multiplicities(spec);
    REQUIRE(mult.count() == 5);
    CHECK(mult.lead() == -1);

    CHECK(mult.value(0, -1) == 1);
    for (int i = 1; i < 5; ++i) CHECK(mult.value(i, -1) == 0);
    for (int i = 0; i < 5; ++i) CHECK(mult.value(i, 0) == 0);

    CHECK(mult.value(0, 1) == 24788);
    CHECK(mult.value(0, 2) == 2685440);
    CHECK(mult.value(0, 3) == 108044482);

    CHECK(mult.value(1, 1) == 24640);
    CHECK(mult.value(1, 2) == 2686464);
    CHECK(mult.value(1, 3) == 108038912);

    CHECK(mult.value(3, 1) == 24512);
    CHECK(mult.value(3, 2) == 2687488);
    CHECK(mult.value(3, 3) == 108033280);

    CHECK(mult.value(4, 1) == 49152);
    CHECK(mult.value(4, 2) == 5373952);
    CHECK(mult.value(4, 3) == 216072192);
    CHECK(mult.value(4, 4) == Rational(Int("5061476352")));

    // M_2 = M_3 coefficientwise
    CHECK(mult.series(1) == mult.series(2));

    CHECK(mult.all_rational());
    CHECK(mult.all_integral());
    CHECK(mult.all_nonnegative());
    CHECK(mult.complete());
  }
}

TEST_CASE("D4 and Q8 share one multiplicity table", "[moonshine]") {
  const MultiplicityTable a = wms::multiplicities(d4_spec());
  const MultiplicityTable b = wms::multiplicities(q8_spec());
  for (int i = 0; i < 5; ++i) CHECK(a.series(i) == b.series(i));
}

TEST_CASE("graded dimensions: sum of dim * M_i rebuilds the identity series", "[moonshine]") {
  for (const ModuleSpec& spec : {d4_spec(), q8_spec()}) {
    const MultiplicityTable mult = wms::multiplicities(spec);
    RationalSeries total = RationalSeries::zero(mult.precision());
    for (int i = 0; i < 5; ++i)
      total += mult.series(i) * Rational(spec.table().dim(i));
    CHECK(total == spec.series_for_class(0));
  }
}

TEST_CASE("width-1 series reproduce the assignment on every class", "[moonshine]") {
  for (const ModuleSpec& spec : {d4_spec(), q8_spec()}) {
    const MultiplicityTable mult = wms::multiplicities(spec);
    for (int j = 0; j < 5; ++j)
      for (int g : spec.table().classes().classes[static_cast<std::size_t>(j)])
        CHECK(wms::frob_series(spec, mult, 1, {g}) == spec.series_for_class(j));
  }
}

TEST_CASE("width-2 McKay-Thompson series distinguish the pair", "[moonshine]") {
  const ModuleSpec d4 = d4_spec();
  const MultiplicityTable md4 = wms::multiplicities(d4);
  const Tuple d4_tuple{d4.group().element("r3s"), d4.group().element("rs")};
  const RationalSeries t_d4 = wms::frob_series(d4, md4, 2, d4_tuple);
  CHECK(t_d4.coeff(-1) == 0);
  CHECK(t_d4.coeff(0) == 0);
  CHECK(t_d4.coeff(1) == 98304);
  CHECK(t_d4.coeff(2) == 10747904);
  CHECK(t_d4.coeff(3) == 432144384);
  CHECK(t_d4.coeff(4) == Rational(Int("10122952704")));

  const ModuleSpec q8 = q8_spec();
  const MultiplicityTable mq8 = wms::multiplicities(q8);
  const Tuple q8_tuple{q8.group().element("-k"), q8.group().element("k")};
  const RationalSeries t_q8 = wms::frob_series(q8, mq8, 2, q8_tuple);
  CHECK(t_q8 == -t_d4);
  CHECK(t_q8.coeff(1) == -98304);
  CHECK(t_q8.coeff(2) == -10747904);
  CHECK(t_q8.coeff(3) == -432144384);
}

TEST_CASE("abelian width-2 series vanish", "[moonshine]") {
  const ModuleSpec z4 =
      wms::default_assignment(wms::character_table_for(bundled_group("Z4")), kPrec);
  const MultiplicityTable mult = wms::multiplicities(z4);
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      CHECK(wms::frob_series(z4, mult, 2, {a, b}).is_zero_in_window());
}

TEST_CASE("width-2 frobenius series are class-invariant", "[moonshine]") {
  const ModuleSpec spec = d4_spec(4);
  const MultiplicityTable mult = wms::multiplicities(spec);
  const auto& G = spec.group();
  for (int g1 = 0; g1 < 8; ++g1)
    for (int g2 = 0; g2 < 8; ++g2) {
      const RationalSeries base = wms::frob_series(spec, mult, 2, {g1, g2});
      for (int h = 0; h < 8; ++h) {
        const Tuple conj{G.mul(G.mul(h, g1), G.inverse(h)), G.mul(G.mul(h, g2), G.inverse(h))};
        CHECK(wms::frob_series(spec, mult, 2, conj) == base);
      }
    }
}

TEST_CASE("multiplicity recovery round trip", "[moonshine]") {
  for (const ModuleSpec& spec : {d4_spec(), q8_spec()}) {
    const MultiplicityTable mult = wms::multiplicities(spec);
    // width 1 reduces to the defining formula: every character recovers
    for (int i = 0; i < 5; ++i)
      CHECK(wms::recover_multiplicities(spec, mult, 1, i) == mult.series(i));
    // width 2 works exactly for the 2-dimensional character
    CHECK(wms::recover_multiplicities(spec, mult, 2, 4) == mult.series(4));
    CHECK_THROWS_WITH(wms::recover_multiplicities(spec, mult, 2, 0),
                      Catch::Matchers::ContainsSubstring("DimensionTooSmall"));
  }
}

TEST_CASE("recovery works on every group that has a default assignment", "[moonshine]") {
  for (const auto& name : wms::bundled_group_names()) {
    const CharacterTable T = wms::character_table_for(bundled_group(name));
    bool supported = true;
    for (int ord : T.classes().orders) supported = supported && wms::hauptmodul_available(static_cast<unsigned>(ord));
    const bool q8 = name == "Q8";
    if (!supported && !q8) {
      CHECK_THROWS_AS(wms::default_assignment(T, 4), wms::error);
      continue;
    }
    const ModuleSpec spec = wms::default_assignment(T, 4);
    const MultiplicityTable mult = wms::multiplicities(spec);
    for (int i = 0; i < T.count(); ++i) {
      CHECK(wms::recover_multiplicities(spec, mult, 1, i) == mult.series(i));
      for (int r = 2; r <= std::min(3L, T.dim(i)); ++r)
        CHECK(wms::recover_multiplicities(spec, mult, r, i) == mult.series(i));
    }
  }
}

TEST_CASE("asymptotic deltas and their limits", "[moonshine]") {
  const MultiplicityTable mult = wms::multiplicities(d4_spec());
  const CharacterTable T = bundled_character_table("D4");
  const auto limits = wms::delta_limits(T);
  CHECK(limits == std::vector<Rational>{Rational(1, 6), Rational(1, 6), Rational(1, 6),
                                        Rational(1, 6), Rational(1, 3)});
  const auto row1 = wms::asymptotic_deltas(mult, 1);
  CHECK(row1.delta[0] == Rational(24788, 147732));
  CHECK(row1.delta[4] == Rational(49152, 147732));
  CHECK(wms::truncated_decimals(row1.delta[0], 5) == "0.16779");
  CHECK(wms::truncated_decimals(row1.delta[1], 5) == "0.16678");
  CHECK(wms::truncated_decimals(row1.delta[3], 5) == "0.16592");
  CHECK(wms::truncated_decimals(row1.delta[4], 5) == "0.33271");
  const auto row4 = wms::asymptotic_deltas(mult, 4);
  for (int i = 0; i < 4; ++i) {
    CHECK(wms::truncated_decimals(row4.delta[static_cast<std::size_t>(i)], 5) == "0.16666");
    const Rational gap = row4.delta[static_cast<std::size_t>(i)] - Rational(1, 6);
    CHECK((gap < Rational(1, 100000) && gap > Rational(-1, 100000)));
  }
  CHECK(wms::truncated_decimals(row4.delta[4], 5) == "0.33333");
  // a grade with zero total is rejected
  CHECK_THROWS_WITH(wms::asymptotic_deltas(mult, 0),
                    Catch::Matchers::ContainsSubstring("ZeroTotalMultiplicity"));
  // trivial group: delta_1 = 1 wherever the coefficient is nonzero
  const ModuleSpec trivial =
      wms::default_assignment(wms::character_table_for(bundled_group("trivial")), kPrec);
  const MultiplicityTable mt = wms::multiplicities(trivial);
  CHECK(wms::asymptotic_deltas(mt, 1).delta[0] == 1);
}

TEST_CASE("certificates for the bundled pair", "[moonshine]") {
  for (const ModuleSpec& spec : {d4_spec(), q8_spec()}) {
    const wms::Certificate cert = wms::certify(spec, 2);
    CHECK(cert.passed());
    CHECK(cert.complete);
    CHECK(cert.deltas.size() == 4);
    REQUIRE(!cert.entries.empty());
  }
}

TEST_CASE("the order-based Q8 assignment also certifies", "[moonshine]") {
  const ModuleSpec spec =
      wms::default_assignment(bundled_character_table("Q8"), kPrec, AssignmentRule::by_element_order);
  const MultiplicityTable mult = wms::multiplicities(spec);
  // chi_5 vanishes on the three reassigned classes, so M_5 is unchanged...
  CHECK(mult.series(4) == wms::multiplicities(q8_spec()).series(4));
  // ...and so is every width-2 series, since the linear characters contribute
  // nothing there
  const wms::RationalSeries t = wms::frob_series(
      spec, mult, 2, {spec.group().element("-k"), spec.group().element("k")});
  CHECK(t.coeff(1) == -98304);
  // the linear-character multiplicities do move: M_1 = (f1 + f2 + 6 f4)/8
  CHECK(mult.value(0, 1) == Rational(196884 + 276 + 6 * 20, 8));
  CHECK(mult.value(0, 1) == 24660);
  CHECK(wms::certify(spec, 2).passed());
}

TEST_CASE("a bad assignment is certified false with a witness", "[moonshine]") {
  // level 2 on the identity class of D4 forces negative multiplicities
  CharacterTable T = bundled_character_table("D4");
  std::vector<RationalSeries> assignment = {
      wms::hauptmodul(2, kPrec), wms::hauptmodul(2, kPrec), wms::hauptmodul(2, kPrec),
      wms::hauptmodul(2, kPrec), wms::hauptmodul(4, kPrec)};
  const ModuleSpec bad = ModuleSpec::make(T, assignment, {2, 2, 2, 2, 4});
  const MultiplicityTable mult = wms::multiplicities(bad);
  CHECK(!mult.all_nonnegative());
  CHECK(mult.value(3, 1) == -64);
  const wms::Certificate cert = wms::certify(bad, 2);
  CHECK(!cert.passed());
  bool found = false;
  for (const auto& e : cert.entries)
    if (e.name == "multiplicities are nonnegative") {
      CHECK(!e.passed);
      CHECK(e.detail.find("negative") != std::string::npos);
      found = true;
    }
  CHECK(found);
}

TEST_CASE("non-rational multiplicities are detected, not silently dropped", "[moonshine]") {
  // a Galois-unstable assignment on Z4: the two order-4 classes get different
  // series, so some M_i picks up a zeta_4 contribution
  CharacterTable T = wms::character_table_for(bundled_group("Z4"));
  std::vector<RationalSeries> assignment = {wms::hauptmodul(1, 4), wms::hauptmodul(2, 4),
                                            wms::hauptmodul(4, 4), wms::hauptmodul(2, 4)};
  const ModuleSpec odd = ModuleSpec::make(T, assignment, {1, 2, 4, 2});
  const MultiplicityTable mult = wms::multiplicities(odd);
  CHECK(!mult.all_rational());
  // the two rows with values in Q(zeta_4) pick up the instability
  CHECK_THROWS_AS(mult.series(2), wms::error);
  CHECK_THROWS_AS(mult.series(3), wms::error);
  CHECK(mult.series(0).coeff(1) == Rational(196884 + 276 + 20 + 276, 4));
  const wms::Certificate cert = wms::certify(odd, 1);
  CHECK(!cert.passed());
}

TEST_CASE("identity-class dominance note", "[moonshine]") {
  const wms::Certificate good = wms::certify(d4_spec(), 1);
  REQUIRE(!good.notes.empty());
  CHECK(good.notes.front().find("dominate") != std::string::npos);
}
