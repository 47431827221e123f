// Acceptance suite: end-to-end checks of the library against its golden
// values, run as one binary with one PASS/FAIL line per criterion.  Every
// comparison is exact (integer/rational equality); runtime limits are part of
// the criteria and are enforced.

#include "wms/distinguish.hpp"
#include "wms/io.hpp"
#include "wms/moonshine.hpp"

#include <chrono>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

namespace {

using wms::bundled_character_table;
using wms::bundled_group;
using wms::CharacterTable;
using wms::Cyclotomic;
using wms::Int;
using wms::ModuleSpec;
using wms::MultiplicityTable;
using wms::Rational;
using wms::RationalSeries;
using wms::Tuple;

int failures = 0;

struct Check {
  bool ok = true;
  std::string first_problem;

  void require(bool condition, const std::string& what) {
    if (!condition && ok) {
      ok = false;
      first_problem = what;
    }
  }
};

void criterion(int number, const std::string& name, double seconds_budget,
               const std::function<void(Check&)>& body) {
  Check check;
  const auto start = std::chrono::steady_clock::now();
  try {
    body(check);
  } catch (const std::exception& e) {
    check.require(false, std::string("exception: ") + e.what());
  }
  const double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  check.require(elapsed < seconds_budget,
                "took " + std::to_string(elapsed) + "s, budget " + std::to_string(seconds_budget) +
                    "s");
  std::ostringstream line;
  line << (check.ok ? "PASS" : "FAIL") << " criterion " << number << ": " << name << " ("
       << std::fixed << elapsed << "s)";
  if (!check.ok) line << " -- " << check.first_problem;
  std::cout << line.str() << "\n";
  if (!check.ok) ++failures;
}

void expect_coeffs(Check& check, const RationalSeries& s, long from,
                   const std::vector<Int>& values, const std::string& what) {
  for (std::size_t k = 0; k < values.size(); ++k) {
    const long e = from + static_cast<long>(k);
    check.require(s.coeff(e) == Rational(values[k]),
                  what + " coefficient of q^" + std::to_string(e) + " is " +
                      wms::format_rational(s.coeff(e)) + ", expected " + values[k].str());
  }
}

std::vector<std::string> truncations(const wms::DeltaRow& row) {
  std::vector<std::string> out;
  for (const auto& d : row.delta) out.push_back(wms::truncated_decimals(d, 5));
  return out;
}

}  // namespace

int main() {
  // 1. Hauptmodul golden values, exact integer equality.
  criterion(1, "Hauptmodul q-expansions (levels 1, 2, 4)", 1.0, [](Check& check) {
    const RationalSeries f1 = wms::hauptmodul(1, 16);
    expect_coeffs(check, f1, -1,
                  {1, 0, 196884, 21493760, 864299970, Int("20245856256")}, "f1");
    const RationalSeries f2 = wms::hauptmodul(2, 16);
    expect_coeffs(check, f2, -1, {1, 0, 276, -2048, 11202, -49152, 184024}, "f2");
    const RationalSeries f4 = wms::hauptmodul(4, 16);
    expect_coeffs(check, f4, -1, {1, 0, 20, 0, -62, 0, 216, 0, -641, 0, 1636, 0, -3778}, "f4");
    for (unsigned level : {1u, 2u, 4u})
      for (long e = -1; e < 16; ++e)
        check.require(wms::is_integer(wms::hauptmodul(level, 16).coeff(e)),
                      "non-integral coefficient at level " + std::to_string(level));
  });

  // 2. Multiplicity generating functions through q^3, identical for D4 and Q8.
  criterion(2, "multiplicity series M_1..M_5 through q^3", 1.0, [](Check& check) {
    for (const char* name : {"D4", "Q8"}) {
      const ModuleSpec spec = wms::default_assignment(bundled_character_table(name), 8);
      const MultiplicityTable mult = wms::multiplicities(spec);
      expect_coeffs(check, mult.series(0), -1, {1, 0, 24788, 2685440, 108044482},
                    std::string(name) + " M_1");
      expect_coeffs(check, mult.series(1), -1, {0, 0, 24640, 2686464, 108038912},
                    std::string(name) + " M_2");
      expect_coeffs(check, mult.series(2), -1, {0, 0, 24640, 2686464, 108038912},
                    std::string(name) + " M_3");
      expect_coeffs(check, mult.series(3), -1, {0, 0, 24512, 2687488, 108033280},
                    std::string(name) + " M_4");
      expect_coeffs(check, mult.series(4), -1, {0, 0, 49152, 5373952, 216072192},
                    std::string(name) + " M_5");
      check.require(mult.series(1) == mult.series(2), std::string(name) + ": M_2 != M_3");
      check.require(mult.all_integral() && mult.all_nonnegative() && mult.complete(),
                    std::string(name) + ": quality flags");
    }
  });

  // 3. Width-2 McKay-Thompson series and their sign flip.
  criterion(3, "width-2 series T(2,(r3s,rs)) and T(2,(-k,k))", 1.0, [](Check& check) {
    const ModuleSpec d4 = wms::default_assignment(bundled_character_table("D4"), 8);
    const MultiplicityTable md4 = wms::multiplicities(d4);
    const RationalSeries td4 = wms::frob_series(
        d4, md4, 2, {d4.group().element("r3s"), d4.group().element("rs")});
    expect_coeffs(check, td4, -1, {0, 0, 98304, 10747904, 432144384}, "D4 T(2,(r3s,rs))");

    const ModuleSpec q8 = wms::default_assignment(bundled_character_table("Q8"), 8);
    const MultiplicityTable mq8 = wms::multiplicities(q8);
    const RationalSeries tq8 = wms::frob_series(
        q8, mq8, 2, {q8.group().element("-k"), q8.group().element("k")});
    expect_coeffs(check, tq8, -1, {0, 0, -98304, -10747904, -432144384}, "Q8 T(2,(-k,k))");
    check.require(tq8 == -td4, "Q8 series is not the negation of the D4 series");
  });

  // 4. Asymptotic distribution table, 5 leading decimals of the exact
  //    rationals (truncated toward zero, so the digits shown are exact).
  //    delta_1(3) = 54022241/324113889 = 0.1666769..., truncating to 0.16667.
  criterion(4, "asymptotic distribution for n = 1..4", 1.0, [](Check& check) {
    const ModuleSpec spec = wms::default_assignment(bundled_character_table("D4"), 8);
    const MultiplicityTable mult = wms::multiplicities(spec);
    const CharacterTable& T = spec.table();
    using Row = std::vector<std::string>;
    const auto n1 = truncations(wms::asymptotic_deltas(mult, 1));
    check.require(n1 == Row{"0.16779", "0.16678", "0.16678", "0.16592", "0.33271"},
                  "n=1 row mismatch");
    const auto n2 = truncations(wms::asymptotic_deltas(mult, 2));
    check.require(n2 == Row{"0.16659", "0.16665", "0.16665", "0.16671", "0.33337"},
                  "n=2 row mismatch");
    const auto row3 = wms::asymptotic_deltas(mult, 3);
    check.require(row3.delta[0] == Rational(Int(108044482), Int(648227778)),
                  "delta_1(3) exact value mismatch");
    const auto n3 = truncations(row3);
    check.require(n3 == Row{"0.16667", "0.16666", "0.16666", "0.16665", "0.33332"},
                  "n=3 row mismatch");
    const auto row4 = wms::asymptotic_deltas(mult, 4);
    const auto n4 = truncations(row4);
    check.require(n4 == Row{"0.16666", "0.16666", "0.16666", "0.16666", "0.33333"},
                  "n=4 row mismatch");
    const auto limits = wms::delta_limits(T);
    for (std::size_t i = 0; i < 5; ++i) {
      const Rational gap = row4.delta[i] - limits[i];
      check.require(gap < Rational(1, 100000) && gap > Rational(-1, 100000),
                    "n=4 delta_" + std::to_string(i + 1) + " not within 1e-5 of its limit");
    }
  });

  // 5. Width-r orthogonality sweep against the closed form, every bundled
  //    group, every character pair, r <= 3.
  criterion(5, "orthogonality sums equal the closed form (all groups, r <= 3)", 60.0,
            [](Check& check) {
              for (const auto& name : wms::bundled_group_names()) {
                const CharacterTable T = wms::character_table_for(bundled_group(name));
                for (int i = 0; i < T.count(); ++i)
                  for (int j = 0; j < T.count(); ++j)
                    for (int r = 1; r <= 3; ++r) {
                      const Cyclotomic sum = wms::orthogonality_sum(T, i, j, r);
                      const Rational target =
                          wms::orthogonality_target(T.group().order(), T.dim(i), r, i == j);
                      check.require(sum == Cyclotomic::from_rational(T.modulus(), target),
                                    name + " (" + std::to_string(i + 1) + "," +
                                        std::to_string(j + 1) + ") width " + std::to_string(r));
                    }
              }
            });

  // 6. Averaging identities on D4 and Q8 for every (i, j, h1, h2), plus the
  //    zero sums of all nontrivial characters at r <= 3.
  criterion(6, "averaging identities and zero sums", 30.0, [](Check& check) {
    for (const char* name : {"D4", "Q8"}) {
      const CharacterTable T = bundled_character_table(name);
      const auto& G = T.group();
      for (int i = 0; i < T.count(); ++i)
        for (int h1 = 0; h1 < G.order(); ++h1)
          for (int h2 = 0; h2 < G.order(); ++h2)
            check.require(wms::conjugation_average_identity(T, i, h1, h2).holds(),
                          std::string(name) + " conjugation identity chi_" +
                              std::to_string(i + 1) + " (" + G.label(h1) + "," + G.label(h2) + ")");
      for (int i = 0; i < T.count(); ++i)
        for (int j = 0; j < T.count(); ++j)
          for (int h1 = 0; h1 < G.order(); ++h1)
            for (int h2 = 0; h2 < G.order(); ++h2)
              check.require(wms::translation_average_identity(T, i, j, h1, h2).holds(),
                            std::string(name) + " translation identity (" +
                                std::to_string(i + 1) + "," + std::to_string(j + 1) + ")");
    }
    for (const auto& name : wms::bundled_group_names()) {
      const CharacterTable T = wms::character_table_for(bundled_group(name));
      for (int i = 1; i < T.count(); ++i)
        for (int r = 1; r <= 3; ++r)
          check.require(wms::r_character_total(T, i, r).is_zero(),
                        name + " zero sum chi_" + std::to_string(i + 1) + " width " +
                            std::to_string(r));
    }
  });

  // 7. Multiplicity recovery from the width-2 McKay-Thompson family.
  criterion(7, "width-2 recovery of M_5 (64-tuple sum)", 5.0, [](Check& check) {
    for (const char* name : {"D4", "Q8"}) {
      const ModuleSpec spec = wms::default_assignment(bundled_character_table(name), 8);
      const MultiplicityTable mult = wms::multiplicities(spec);
      const RationalSeries recovered = wms::recover_multiplicities(spec, mult, 2, 4);
      check.require(agree_modulo(recovered, mult.series(4), 4),
                    std::string(name) + ": recovered M_5 differs through q^3");
      check.require(recovered == mult.series(4),
                    std::string(name) + ": recovered M_5 differs in the window");
    }
  });

  // 8. The distinguishing procedure and its witness.
  criterion(8, "width-2 separation of D4 and Q8 with a verifiable witness", 10.0,
            [](Check& check) {
              const CharacterTable D4 = bundled_character_table("D4");
              const CharacterTable Q8 = bundled_character_table("Q8");
              check.require(wms::equivalent_up_to_width(D4, Q8, 1).equivalent,
                            "width 1 should not separate the pair");
              const auto verdict = wms::equivalent_up_to_width(D4, Q8, 2);
              check.require(!verdict.equivalent, "width 2 must separate the pair");
              check.require(verdict.witness.has_value(), "missing separation witness");
              if (verdict.witness) {
                const auto& w = *verdict.witness;
                check.require(w.width == 2, "witness width");
                const auto& G = D4.group();
                const std::vector<Tuple> listed = {
                    {G.element("s"), G.element("r2s")},   {G.element("s"), G.element("s")},
                    {G.element("r2s"), G.element("s")},   {G.element("r2s"), G.element("r2s")},
                    {G.element("rs"), G.element("r3s")},  {G.element("rs"), G.element("rs")},
                    {G.element("r3s"), G.element("rs")},  {G.element("r3s"), G.element("r3s")}};
                bool in_list = false;
                for (const auto& t : listed) in_list = in_list || t == w.tuple_a;
                check.require(in_list, "witness tuple not among the eight differing pairs");
                const Cyclotomic two = Cyclotomic::from_rational(4, 2);
                check.require((w.values_a[4] == two && w.values_b[4] == -two) ||
                                  (w.values_a[4] == -two && w.values_b[4] == two),
                              "witness values are not -2 vs 2 on the 2-dimensional character");
                for (int i = 0; i < 5; ++i) {
                  check.require(wms::r_character(D4, i, w.tuple_a) ==
                                    w.values_a[static_cast<std::size_t>(i)],
                                "witness fails re-verification on the first group");
                  check.require(
                      wms::r_character(Q8, w.matching.row_map[static_cast<std::size_t>(i)],
                                       w.tuple_b) == w.values_b[static_cast<std::size_t>(i)],
                      "witness fails re-verification on the second group");
                }
              }
              // regression: the value multisets over G^(2) coincide, so a
              // multiset comparison could never separate the pair
              std::map<std::string, int> counts_a, counts_b;
              for (const auto& v : wms::r_character_layer(D4, 4, 2)) ++counts_a[v.str()];
              for (const auto& v : wms::r_character_layer(Q8, 4, 2)) ++counts_b[v.str()];
              check.require(counts_a == counts_b, "2-character value multisets differ");
            });

  // 9. Cross-formula agreement: the defining recursion versus the symmetric-
  //    group cycle expansion, and the permutation statistic versus the closed
  //    form.
  criterion(9, "recursion/cycle-expansion and cycle-statistic agreement", 60.0, [](Check& check) {
    for (const auto& name : wms::bundled_group_names()) {
      const CharacterTable T = wms::character_table_for(bundled_group(name));
      const int n = T.group().order();
      for (int i = 0; i < T.count(); ++i)
        for (int r = 1; r <= 3; ++r) {
          const auto layer = wms::r_character_layer(T, i, r);
          Tuple t;
          for (std::uint64_t rank = 0; rank < layer.size(); ++rank) {
            wms::detail::decode_tuple(rank, n, r, t);
            check.require(layer[rank] == wms::r_character_cycle_sum(T, i, t),
                          name + " chi_" + std::to_string(i + 1) + " at " +
                              wms::tuple_label(T.group(), t));
          }
        }
    }
    for (int dim = 1; dim <= 6; ++dim)
      for (int r = 1; r <= 4; ++r)
        for (int order : {6, 8})
          check.require(wms::permutation_cycle_statistic(Int(order), dim, r) ==
                            wms::orthogonality_target(Int(order), dim, r, true),
                        "cycle statistic at dim " + std::to_string(dim) + ", width " +
                            std::to_string(r));
  });

  std::cout << (failures == 0 ? "acceptance: all criteria passed"
                              : "acceptance: " + std::to_string(failures) + " criterion(s) failed")
            << "\n";
  return failures == 0 ? 0 : 1;
}
