// wms: exact computations for width-s weak moonshine.
//
// Subcommands: group, chartab, rchar, series, moonshine, distinguish, verify.
// All arithmetic is exact; JSON output renders big integers as decimal
// strings.  Exit codes: 0 success (including "verified"), 1 usage or I/O
// error, 2 a verification sweep found a violated identity.

#include "CLI11.hpp"

#include "wms/distinguish.hpp"
#include "wms/io.hpp"
#include "wms/moonshine.hpp"

#include <cstdlib>
#include <functional>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>

namespace {

using wms::CharacterTable;
using wms::Cyclotomic;
using wms::FiniteGroup;
using wms::json;
using wms::ModuleSpec;
using wms::MultiplicityTable;
using wms::Rational;
using wms::RationalSeries;
using wms::Tuple;

std::uint64_t budget_from_env() {
  if (const char* v = std::getenv("MOONSHINE_BUDGET")) {
    char* end = nullptr;
    const unsigned long long parsed = std::strtoull(v, &end, 10);
    if (end && *end == '\0' && parsed > 0) return parsed;
    std::cerr << "warning: ignoring malformed MOONSHINE_BUDGET='" << v << "'\n";
  }
  return wms::default_enumeration_budget;
}

Tuple parse_tuple(const FiniteGroup& G, const std::string& csv) {
  Tuple t;
  std::size_t pos = 0;
  while (pos <= csv.size()) {
    const std::size_t comma = std::min(csv.find(',', pos), csv.size());
    t.push_back(G.element(csv.substr(pos, comma - pos)));
    pos = comma + 1;
  }
  return t;
}

void print_series_terms(std::ostream& os, const RationalSeries& s) {
  for (long e = s.lead(); e < s.precision(); ++e)
    os << "q^" << e << ": " << wms::format_rational(s.coeff(e)) << "\n";
}

void print_character_table(std::ostream& os, const CharacterTable& T) {
  const auto& P = T.classes();
  os << "group " << T.group().name() << ", " << T.count() << " conjugacy classes";
  if (T.modulus() > 2) os << ", values in Q(z) with z a primitive " << T.modulus() << "th root of unity";
  os << "\n";
  std::vector<std::size_t> width(static_cast<std::size_t>(T.count()), 0);
  std::vector<std::vector<std::string>> cells;
  for (int i = 0; i < T.count(); ++i) {
    std::vector<std::string> row;
    for (int c = 0; c < T.count(); ++c) {
      row.push_back(T.value(i, c).str());
      width[static_cast<std::size_t>(c)] = std::max(width[static_cast<std::size_t>(c)], row.back().size());
    }
    cells.push_back(std::move(row));
  }
  os << std::setw(8) << "class";
  for (int c = 0; c < T.count(); ++c)
    os << "  " << std::setw(static_cast<int>(std::max<std::size_t>(
                       width[static_cast<std::size_t>(c)],
                       T.group().label(P.representatives[static_cast<std::size_t>(c)]).size())))
       << T.group().label(P.representatives[static_cast<std::size_t>(c)]);
  os << "\n" << std::setw(8) << "size";
  for (int c = 0; c < T.count(); ++c)
    os << "  " << std::setw(static_cast<int>(std::max<std::size_t>(
                       width[static_cast<std::size_t>(c)],
                       T.group().label(P.representatives[static_cast<std::size_t>(c)]).size())))
       << P.sizes[static_cast<std::size_t>(c)];
  os << "\n";
  for (int i = 0; i < T.count(); ++i) {
    os << std::setw(8) << ("chi_" + std::to_string(i + 1));
    for (int c = 0; c < T.count(); ++c)
      os << "  " << std::setw(static_cast<int>(std::max<std::size_t>(
                         width[static_cast<std::size_t>(c)],
                         T.group().label(P.representatives[static_cast<std::size_t>(c)]).size())))
         << cells[static_cast<std::size_t>(i)][static_cast<std::size_t>(c)];
    os << "\n";
  }
}

CharacterTable table_for_argument(const std::string& name_or_file) {
  return wms::character_table_for(wms::resolve_group(name_or_file));
}

int report_outcome(const std::vector<std::string>& violations, std::uint64_t checks,
                   const std::string& what, bool as_json) {
  if (as_json) {
    json j{{"subject", what},
           {"checks", checks},
           {"violations", violations},
           {"passed", violations.empty()}};
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << what << ": " << checks << " identities checked, " << violations.size()
              << " violation(s)\n";
    for (const auto& v : violations) std::cout << "  VIOLATION " << v << "\n";
  }
  return violations.empty() ? 0 : 2;
}

struct SweepCounter {
  std::uint64_t checks = 0;
  std::vector<std::string> violations;

  void check(bool ok, const std::function<std::string()>& describe) {
    ++checks;
    if (!ok) violations.push_back(describe());
  }
};

// Shared by `rchar verify-orthogonality` and `verify all`.
void sweep_orthogonality(SweepCounter& counter, const CharacterTable& T, int max_width,
                         std::uint64_t budget) {
  for (int r = 1; r <= max_width; ++r)
    for (int i = 0; i < T.count(); ++i)
      for (int j = 0; j < T.count(); ++j) {
        const Cyclotomic sum = wms::orthogonality_sum(T, i, j, r, budget);
        const Rational target = wms::orthogonality_target(T.group().order(), T.dim(i), r, i == j);
        counter.check(sum == Cyclotomic::from_rational(T.modulus(), target), [&] {
          return T.group().name() + ": width-" + std::to_string(r) + " orthogonality sum (" +
                 std::to_string(i + 1) + "," + std::to_string(j + 1) + ") = " + sum.str() +
                 ", closed form " + wms::format_rational(target);
        });
      }
}

void sweep_lemmas(SweepCounter& counter, const CharacterTable& T, int max_width,
                  std::uint64_t budget) {
  const FiniteGroup& G = T.group();
  for (int i = 0; i < T.count(); ++i)
    for (int h1 = 0; h1 < G.order(); ++h1)
      for (int h2 = 0; h2 < G.order(); ++h2) {
        const auto pair = wms::conjugation_average_identity(T, i, h1, h2);
        counter.check(pair.holds(), [&] {
          return G.name() + ": conjugation-average identity chi_" + std::to_string(i + 1) + " (" +
                 G.label(h1) + "," + G.label(h2) + "): " + pair.lhs.str() + " vs " + pair.rhs.str();
        });
      }
  for (int i = 0; i < T.count(); ++i)
    for (int j = 0; j < T.count(); ++j)
      for (int h1 = 0; h1 < G.order(); ++h1)
        for (int h2 = 0; h2 < G.order(); ++h2) {
          const auto pair = wms::translation_average_identity(T, i, j, h1, h2);
          counter.check(pair.holds(), [&] {
            return G.name() + ": translation-average identity (" + std::to_string(i + 1) + "," +
                   std::to_string(j + 1) + ") at (" + G.label(h1) + "," + G.label(h2) +
                   "): " + pair.lhs.str() + " vs " + pair.rhs.str();
          });
        }
  for (int i = 0; i < T.count(); ++i) {
    if (T.is_trivial_row(i)) continue;
    for (int r = 1; r <= max_width; ++r) {
      const Cyclotomic total = wms::r_character_total(T, i, r, budget);
      counter.check(total.is_zero(), [&] {
        return G.name() + ": width-" + std::to_string(r) + " zero sum of chi_" +
               std::to_string(i + 1) + " = " + total.str();
      });
    }
  }
  for (int i = 0; i < T.count(); ++i) {
    const int r = static_cast<int>(T.dim(i)) + 1;
    if (wms::int_pow(G.order(), static_cast<unsigned long>(r)) > budget) continue;
    const auto rep = wms::verify_vanishing(T, i, r, budget);
    counter.check(rep.ok(), [&] {
      return G.name() + ": chi_" + std::to_string(i + 1) + " fails to vanish at width " +
             std::to_string(r) + " (" + rep.violations.front() + ")";
    });
  }
}

void sweep_cross_formula(SweepCounter& counter, const CharacterTable& T, int max_width,
                         std::uint64_t budget) {
  const int n = T.group().order();
  for (int i = 0; i < T.count(); ++i)
    for (int r = 1; r <= max_width; ++r) {
      const auto layer = wms::r_character_layer(T, i, r, budget);
      Tuple t;
      for (std::uint64_t rank = 0; rank < layer.size(); ++rank) {
        wms::detail::decode_tuple(rank, n, r, t);
        const Cyclotomic via_cycles = wms::r_character_cycle_sum(T, i, t);
        counter.check(layer[rank] == via_cycles, [&] {
          return T.group().name() + ": chi_" + std::to_string(i + 1) + " recursion " +
                 layer[rank].str() + " vs cycle expansion " + via_cycles.str() + " at " +
                 wms::tuple_label(T.group(), t);
        });
      }
    }
}

std::string delta_cell(const Rational& v) {
  return wms::truncated_decimals(v, 5) + " (" + wms::format_rational(v) + ")";
}

void print_certificate(std::ostream& os, const wms::Certificate& cert) {
  for (const auto& e : cert.entries)
    os << (e.passed ? "PASS " : "FAIL ") << e.name << (e.detail.empty() ? "" : ": " + e.detail)
       << "\n";
  for (const auto& note : cert.notes) os << "note: " << note << "\n";
  if (!cert.deltas.empty()) {
    os << "asymptotic distribution (5 leading decimals, exact fraction):\n";
    for (const auto& row : cert.deltas) {
      os << "  n=" << row.grade << ":";
      for (const auto& d : row.delta) os << "  " << delta_cell(d);
      os << "\n";
    }
    os << "  limit:";
    for (const auto& l : cert.limits) os << "  " << wms::format_rational(l);
    os << "\n";
  }
  os << (cert.passed() ? "certificate PASSED" : "certificate FAILED")
     << " (complete: " << (cert.complete ? "yes" : "no") << ")\n";
}

json certificate_to_json(const wms::Certificate& cert) {
  json entries = json::array();
  for (const auto& e : cert.entries)
    entries.push_back(json{{"name", e.name}, {"passed", e.passed}, {"detail", e.detail}});
  json deltas = json::array();
  for (const auto& row : cert.deltas) {
    json exact = json::array(), decimals = json::array();
    for (const auto& d : row.delta) {
      exact.push_back(wms::format_rational(d));
      decimals.push_back(wms::truncated_decimals(d, 5));
    }
    deltas.push_back(json{{"grade", row.grade}, {"exact", exact}, {"decimals", decimals}});
  }
  json limits = json::array();
  for (const auto& l : cert.limits) limits.push_back(wms::format_rational(l));
  return json{{"entries", entries},
              {"complete", cert.complete},
              {"notes", cert.notes},
              {"deltas", deltas},
              {"limits", limits},
              {"passed", cert.passed()}};
}

struct MoonshineArgs {
  std::string group = "D4";
  std::string spec_file;
  long prec = 8;
  bool by_order = false;

  ModuleSpec build() const {
    if (!spec_file.empty()) return wms::module_spec_from_json(wms::load_json_file(spec_file), prec);
    return wms::default_assignment(table_for_argument(group), prec,
                                   by_order ? wms::AssignmentRule::by_element_order
                                            : wms::AssignmentRule::table_matched);
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact width-s weak moonshine: r-characters, q-series, certificates"};
  app.require_subcommand(1);
  bool as_json = false;
  app.add_flag("--json", as_json, "emit JSON (integers as decimal strings)")->configurable(false);
  bool unsafe_width = false;
  app.add_flag("--unsafe-width", unsafe_width, "lift the width cap of 3 where supported");
  const std::uint64_t budget = budget_from_env();

  std::function<int()> action;

  // ---- group ----
  auto* group_cmd = app.add_subcommand("group", "finite groups given by Cayley tables");
  group_cmd->require_subcommand(1);
  group_cmd->add_subcommand("list", "list the bundled groups")->callback([&] {
    action = [&]() {
      if (as_json) {
        std::cout << json(wms::bundled_group_names()).dump(2) << "\n";
      } else {
        for (const auto& name : wms::bundled_group_names()) {
          const FiniteGroup G = wms::bundled_group(name);
          std::cout << name << " (order " << G.order() << ")\n";
        }
      }
      return 0;
    };
  });
  {
    auto* show = group_cmd->add_subcommand("show", "print a group and its Cayley table");
    auto arg = std::make_shared<std::string>();
    show->add_option("group", *arg, "bundled name or group file")->required();
    show->callback([&, arg] {
      action = [&, arg]() {
        const FiniteGroup G = wms::resolve_group(*arg);
        if (as_json) {
          std::cout << wms::group_to_json(G).dump(2) << "\n";
          return 0;
        }
        std::cout << G.name() << ": order " << G.order() << ", identity " << G.label(G.identity())
                  << "\n";
        std::size_t w = 1;
        for (const auto& l : G.labels()) w = std::max(w, l.size());
        const int width = static_cast<int>(w);
        std::cout << std::setw(width) << "*";
        for (int b = 0; b < G.order(); ++b) std::cout << " " << std::setw(width) << G.label(b);
        std::cout << "\n";
        for (int a = 0; a < G.order(); ++a) {
          std::cout << std::setw(width) << G.label(a);
          for (int b = 0; b < G.order(); ++b)
            std::cout << " " << std::setw(width) << G.label(G.mul(a, b));
          std::cout << "\n";
        }
        return 0;
      };
    });
  }
  {
    auto* classes = group_cmd->add_subcommand("classes", "print the conjugacy-class partition");
    auto arg = std::make_shared<std::string>();
    classes->add_option("group", *arg, "bundled name or group file")->required();
    classes->callback([&, arg] {
      action = [&, arg]() {
        const FiniteGroup G = wms::resolve_group(*arg);
        const auto P = wms::conjugacy_classes(G);
        if (as_json) {
          json out = json::array();
          for (int c = 0; c < P.count(); ++c) {
            json members = json::array();
            for (int g : P.classes[static_cast<std::size_t>(c)]) members.push_back(G.label(g));
            out.push_back(json{{"representative",
                                G.label(P.representatives[static_cast<std::size_t>(c)])},
                               {"size", P.sizes[static_cast<std::size_t>(c)]},
                               {"order", P.orders[static_cast<std::size_t>(c)]},
                               {"members", members}});
          }
          std::cout << json{{"group", G.name()}, {"classes", out}}.dump(2) << "\n";
          return 0;
        }
        std::cout << G.name() << ": " << P.count() << " conjugacy classes\n";
        for (int c = 0; c < P.count(); ++c) {
          std::cout << "  C" << c + 1 << " (size " << P.sizes[static_cast<std::size_t>(c)]
                    << ", element order " << P.orders[static_cast<std::size_t>(c)] << "): {";
          bool first = true;
          for (int g : P.classes[static_cast<std::size_t>(c)]) {
            std::cout << (first ? "" : ", ") << G.label(g);
            first = false;
          }
          std::cout << "}\n";
        }
        return 0;
      };
    });
  }

  // ---- chartab ----
  auto* chartab_cmd = app.add_subcommand("chartab", "exact character tables");
  chartab_cmd->require_subcommand(1);
  {
    auto* show = chartab_cmd->add_subcommand("show", "print the character table of a group");
    auto arg = std::make_shared<std::string>();
    show->add_option("group", *arg, "bundled name or group file")->required();
    show->callback([&, arg] {
      action = [&, arg]() {
        const CharacterTable T = table_for_argument(*arg);
        if (as_json)
          std::cout << wms::character_table_to_json(T).dump(2) << "\n";
        else
          print_character_table(std::cout, T);
        return 0;
      };
    });
  }
  {
    auto* verify = chartab_cmd->add_subcommand(
        "verify", "check row orthogonality and nontrivial character sums");
    auto arg = std::make_shared<std::string>();
    verify->add_option("group", *arg, "bundled name, group file, or character-table file")
        ->required();
    verify->callback([&, arg] {
      action = [&, arg]() {
        CharacterTable T = [&] {
          const auto& names = wms::bundled_group_names();
          if (std::find(names.begin(), names.end(), *arg) == names.end()) {
            const json j = wms::load_json_file(*arg);
            if (j.contains("values")) return wms::character_table_from_json(j);
            return wms::character_table_for(wms::group_from_json(j));
          }
          return table_for_argument(*arg);
        }();
        const auto rows = wms::verify_row_orthogonality(T);
        const auto cols = wms::verify_column_sums(T);
        std::vector<std::string> violations = rows.violations;
        violations.insert(violations.end(), cols.violations.begin(), cols.violations.end());
        return report_outcome(violations, rows.checks + cols.checks,
                              "character table of " + T.group().name(), as_json);
      };
    });
  }
  {
    auto* compute = chartab_cmd->add_subcommand("compute", "compute the table from the class algebra");
    auto arg = std::make_shared<std::string>();
    auto bound = std::make_shared<int>(32);
    compute->add_option("group", *arg, "bundled name or group file")->required();
    compute->add_option("--bound", *bound, "largest allowed group order")->capture_default_str();
    compute->callback([&, arg, bound] {
      action = [&, arg, bound]() {
        const CharacterTable T = wms::compute_character_table(wms::resolve_group(*arg), *bound);
        if (as_json)
          std::cout << wms::character_table_to_json(T).dump(2) << "\n";
        else
          print_character_table(std::cout, T);
        return 0;
      };
    });
  }

  // ---- rchar ----
  auto* rchar_cmd = app.add_subcommand("rchar", "Frobenius r-characters and their identities");
  rchar_cmd->require_subcommand(1);
  {
    auto* eval = rchar_cmd->add_subcommand("eval", "evaluate chi_i^(r) on a tuple");
    auto group = std::make_shared<std::string>();
    auto chr = std::make_shared<int>(1);
    auto tuple_csv = std::make_shared<std::string>();
    auto route = std::make_shared<std::string>("recursive");
    eval->add_option("--group", *group, "bundled name or group file")->required();
    eval->add_option("--char", *chr, "character row, 1-based")->required();
    eval->add_option("--tuple", *tuple_csv, "comma-separated element labels")->required();
    eval->add_option("--route", *route, "recursive or cycles")
        ->check(CLI::IsMember({"recursive", "cycles"}))
        ->capture_default_str();
    eval->callback([&, group, chr, tuple_csv, route] {
      action = [&, group, chr, tuple_csv, route]() {
        const CharacterTable T = table_for_argument(*group);
        if (*chr < 1 || *chr > T.count())
          wms::fail(wms::errc::not_found, "character index out of range 1.." +
                                              std::to_string(T.count()));
        const Tuple t = parse_tuple(T.group(), *tuple_csv);
        if (t.size() > 3 && !unsafe_width)
          wms::fail(wms::errc::bound_exceeded, "tuple width above 3 needs --unsafe-width");
        const Cyclotomic value = *route == "cycles"
                                     ? wms::r_character_cycle_sum(T, *chr - 1, t)
                                     : wms::r_character(T, *chr - 1, t);
        if (as_json) {
          std::cout << json{{"group", T.group().name()},
                            {"char", *chr},
                            {"tuple", *tuple_csv},
                            {"width", t.size()},
                            {"value", wms::cyclotomic_to_json(value)}}
                           .dump(2)
                    << "\n";
        } else {
          std::cout << value.str() << "\n";
        }
        return 0;
      };
    });
  }
  {
    auto* vo = rchar_cmd->add_subcommand("verify-orthogonality",
                                         "sweep the width-r orthogonality relations");
    auto group = std::make_shared<std::string>();
    auto max_width = std::make_shared<int>(3);
    vo->add_option("--group", *group, "bundled name or group file")->required();
    vo->add_option("--max-width", *max_width, "largest width r")->capture_default_str();
    vo->callback([&, group, max_width] {
      action = [&, group, max_width]() {
        if (*max_width > 3 && !unsafe_width)
          wms::fail(wms::errc::bound_exceeded, "width above 3 needs --unsafe-width");
        const CharacterTable T = table_for_argument(*group);
        SweepCounter counter;
        sweep_orthogonality(counter, T, *max_width, budget);
        return report_outcome(counter.violations, counter.checks,
                              "r-character orthogonality on " + T.group().name(), as_json);
      };
    });
  }
  {
    auto* vl = rchar_cmd->add_subcommand(
        "verify-lemmas", "sweep the averaging identities, zero sums and vanishing");
    auto group = std::make_shared<std::string>();
    vl->add_option("--group", *group, "bundled name or group file")->required();
    vl->callback([&, group] {
      action = [&, group]() {
        const CharacterTable T = table_for_argument(*group);
        SweepCounter counter;
        sweep_lemmas(counter, T, 3, budget);
        return report_outcome(counter.violations, counter.checks,
                              "character identities on " + T.group().name(), as_json);
      };
    });
  }

  // ---- series ----
  auto* series_cmd = app.add_subcommand("series", "exact q-series");
  series_cmd->require_subcommand(1);
  {
    auto* hm = series_cmd->add_subcommand("hauptmodul", "catalog Hauptmodul of a given level");
    auto level = std::make_shared<unsigned>(1);
    auto prec = std::make_shared<long>(16);
    hm->add_option("--level", *level, "1, 2 or 4")->required();
    hm->add_option("--prec", *prec, "series known modulo O(q^prec)")
        ->check(CLI::Range(2L, 1000000L))
        ->capture_default_str();
    hm->callback([&, level, prec] {
      action = [&, level, prec]() {
        const RationalSeries f = wms::hauptmodul(*level, *prec);
        if (as_json)
          std::cout << wms::series_to_json(f).dump(2) << "\n";
        else
          print_series_terms(std::cout, f);
        return 0;
      };
    });
  }
  {
    auto* eq = series_cmd->add_subcommand("eta-quotient", "product of eta(M tau)^E factors");
    auto spec = std::make_shared<std::string>();
    auto prec = std::make_shared<long>(16);
    eq->add_option("--spec", *spec, "factors 'M:E,M:E', e.g. '1:24,2:-24'")->required();
    eq->add_option("--prec", *prec, "series known modulo O(q^prec)")
        ->check(CLI::Range(2L, 1000000L))
        ->capture_default_str();
    eq->callback([&, spec, prec] {
      action = [&, spec, prec]() {
        const RationalSeries f = wms::eta_quotient(wms::parse_eta_quotient_spec(*spec), *prec);
        if (as_json)
          std::cout << wms::series_to_json(f).dump(2) << "\n";
        else
          print_series_terms(std::cout, f);
        return 0;
      };
    });
  }

  // ---- moonshine ----
  auto* moon_cmd = app.add_subcommand("moonshine", "moonshine assembly and certification");
  moon_cmd->require_subcommand(1);
  auto moon_args = std::make_shared<MoonshineArgs>();
  auto add_moon_options = [&](CLI::App* sub) {
    sub->add_option("--group", moon_args->group, "bundled name or group file")
        ->capture_default_str();
    sub->add_option("--spec-file", moon_args->spec_file,
                    "JSON module-spec file overriding the default assignment");
    sub->add_option("--prec", moon_args->prec, "series known modulo O(q^prec)")
        ->check(CLI::Range(2L, 100000L))
        ->capture_default_str();
    sub->add_flag("--assign-by-order", moon_args->by_order,
                  "assign Hauptmoduln strictly by element order (also on Q8)");
  };
  {
    auto* mults = moon_cmd->add_subcommand("multiplicities",
                                           "multiplicity generating functions M_i");
    add_moon_options(mults);
    mults->callback([&] {
      action = [&]() {
        const ModuleSpec spec = moon_args->build();
        const MultiplicityTable mult = wms::multiplicities(spec);
        if (as_json) {
          json series = json::array();
          for (int i = 0; i < mult.count(); ++i)
            series.push_back(mult.all_rational() ? wms::series_to_json(mult.series(i))
                                                 : json(nullptr));
          std::cout << json{{"group", spec.group().name()},
                            {"precision", mult.precision()},
                            {"multiplicities", series},
                            {"rational", mult.all_rational()},
                            {"integral", mult.all_integral()},
                            {"nonnegative", mult.all_nonnegative()},
                            {"complete", mult.complete()},
                            {"witnesses", mult.witnesses()}}
                           .dump(2)
                    << "\n";
          return 0;
        }
        for (int i = 0; i < mult.count(); ++i) {
          std::cout << "M_" << i + 1 << " = ";
          if (mult.all_rational())
            std::cout << wms::series_polynomial_string(mult.series(i)) << "\n";
          else
            std::cout << "(non-rational coefficients)\n";
        }
        std::cout << "integral: " << (mult.all_integral() ? "yes" : "no")
                  << ", nonnegative: " << (mult.all_nonnegative() ? "yes" : "no")
                  << ", complete: " << (mult.complete() ? "yes" : "no") << "\n";
        for (const auto& w : mult.witnesses()) std::cout << "  witness: " << w << "\n";
        return 0;
      };
    });
  }
  {
    auto* mt = moon_cmd->add_subcommand("mt", "width-r McKay-Thompson series of a tuple");
    add_moon_options(mt);
    auto width = std::make_shared<int>(1);
    auto tuple_csv = std::make_shared<std::string>();
    mt->add_option("--width", *width, "tuple width r")->required();
    mt->add_option("--tuple", *tuple_csv, "comma-separated element labels")->required();
    mt->callback([&, width, tuple_csv] {
      action = [&, width, tuple_csv]() {
        if ((*width < 1 || *width > 3) && !unsafe_width)
          wms::fail(wms::errc::bound_exceeded, "width outside 1..3 needs --unsafe-width");
        const ModuleSpec spec = moon_args->build();
        const Tuple t = parse_tuple(spec.group(), *tuple_csv);
        const MultiplicityTable mult = wms::multiplicities(spec);
        const RationalSeries T = wms::frob_series(spec, mult, *width, t);
        if (as_json) {
          json j = wms::series_to_json(T);
          j["group"] = spec.group().name();
          j["width"] = *width;
          j["tuple"] = *tuple_csv;
          std::cout << j.dump(2) << "\n";
        } else {
          std::cout << wms::series_polynomial_string(T) << "\n";
        }
        return 0;
      };
    });
  }
  {
    auto* cert = moon_cmd->add_subcommand("certify", "certify width-s weak moonshine");
    add_moon_options(cert);
    auto width = std::make_shared<int>(2);
    cert->add_option("--width", *width, "certify widths 1..s")->capture_default_str();
    cert->callback([&, width] {
      action = [&, width]() {
        if ((*width < 1 || *width > 3) && !unsafe_width)
          wms::fail(wms::errc::bound_exceeded, "width outside 1..3 needs --unsafe-width");
        const ModuleSpec spec = moon_args->build();
        const wms::Certificate certificate = wms::certify(spec, *width, budget);
        if (as_json) {
          json j = certificate_to_json(certificate);
          j["group"] = spec.group().name();
          j["width"] = *width;
          std::cout << j.dump(2) << "\n";
        } else {
          std::cout << "width-" << *width << " certificate for " << spec.group().name() << ":\n";
          print_certificate(std::cout, certificate);
        }
        return certificate.passed() ? 0 : 2;
      };
    });
  }
  {
    auto* deltas = moon_cmd->add_subcommand("deltas", "asymptotic distribution by grade");
    add_moon_options(deltas);
    auto grades = std::make_shared<std::string>("1..4");
    deltas->add_option("--grades", *grades, "grade range a..b")->capture_default_str();
    deltas->callback([&, grades] {
      action = [&, grades]() {
        const std::size_t dots = grades->find("..");
        if (dots == std::string::npos)
          wms::fail(wms::errc::parse_error, "grade range must look like 1..4");
        const long lo = std::stol(grades->substr(0, dots));
        const long hi = std::stol(grades->substr(dots + 2));
        const ModuleSpec spec = moon_args->build();
        const MultiplicityTable mult = wms::multiplicities(spec);
        const auto limits = wms::delta_limits(spec.table());
        json rows = json::array();
        if (!as_json) std::cout << "delta_i(n) = m_i(n) / sum_j m_j(n)\n";
        for (long n = lo; n <= hi; ++n) {
          const auto row = wms::asymptotic_deltas(mult, n);
          if (as_json) {
            json exact = json::array(), decimals = json::array();
            for (const auto& d : row.delta) {
              exact.push_back(wms::format_rational(d));
              decimals.push_back(wms::truncated_decimals(d, 5));
            }
            rows.push_back(json{{"grade", n}, {"exact", exact}, {"decimals", decimals}});
          } else {
            std::cout << "  n=" << n << ":";
            for (const auto& d : row.delta) std::cout << "  " << delta_cell(d);
            std::cout << "\n";
          }
        }
        if (as_json) {
          json jl = json::array();
          for (const auto& l : limits) jl.push_back(wms::format_rational(l));
          std::cout << json{{"group", spec.group().name()}, {"rows", rows}, {"limits", jl}}.dump(2)
                    << "\n";
        } else {
          std::cout << "  limit:";
          for (const auto& l : limits) std::cout << "  " << wms::format_rational(l);
          std::cout << "\n";
        }
        return 0;
      };
    });
  }

  // ---- distinguish ----
  {
    auto* dist = app.add_subcommand("distinguish",
                                    "search for a width-s r-character-preserving bijection");
    auto ga = std::make_shared<std::string>();
    auto gb = std::make_shared<std::string>();
    auto width = std::make_shared<int>(2);
    dist->add_option("groupA", *ga, "bundled name or group file")->required();
    dist->add_option("groupB", *gb, "bundled name or group file")->required();
    dist->add_option("--width", *width, "compare r-characters for r <= width")
        ->check(CLI::Range(1, 3))
        ->capture_default_str();
    dist->callback([&, ga, gb, width] {
      action = [&, ga, gb, width]() {
        const CharacterTable A = table_for_argument(*ga);
        const CharacterTable B = table_for_argument(*gb);
        const wms::Verdict verdict = wms::equivalent_up_to_width(A, B, *width, 1'000'000, budget);
        if (as_json) {
          json j{{"groupA", A.group().name()},
                 {"groupB", B.group().name()},
                 {"width", *width},
                 {"equivalent", verdict.equivalent},
                 {"reason", verdict.reason},
                 {"class_matchings", verdict.matchings},
                 {"witness", nullptr}};
          if (verdict.witness) {
            const auto& w = *verdict.witness;
            json va = json::array(), vb = json::array(), cmap = json::array();
            for (const auto& v : w.values_a) va.push_back(wms::cyclotomic_to_json(v));
            for (const auto& v : w.values_b) vb.push_back(wms::cyclotomic_to_json(v));
            for (int c : w.matching.class_map) cmap.push_back(c + 1);
            j["witness"] = json{{"width", w.width},
                                {"tupleA", wms::tuple_label(A.group(), w.tuple_a)},
                                {"tupleB", wms::tuple_label(B.group(), w.tuple_b)},
                                {"valuesA", va},
                                {"valuesB", vb},
                                {"class_matching", cmap}};
          }
          std::cout << j.dump(2) << "\n";
          return 0;
        }
        std::cout << "comparing element bijections that refine character-table-compatible class "
                     "matchings (element-level reading); order/power-map preservation reported "
                     "per matching\n";
        std::cout << A.group().name() << " vs " << B.group().name() << " at width " << *width
                  << ": " << (verdict.equivalent ? "equivalent" : "separated") << "\n";
        std::cout << "  " << verdict.reason << "\n";
        if (*width < 3)
          std::cout << "  (a bounded-width statement; only complete width-3 moonshine pins the "
                       "isomorphism class)\n";
        else if (verdict.equivalent)
          std::cout << "  (complete width-3 weak moonshine determines a group up to "
                       "isomorphism)\n";
        if (verdict.witness) {
          const auto& w = *verdict.witness;
          std::cout << "  witness at width " << w.width << ": "
                    << wms::tuple_label(A.group(), w.tuple_a) << " vs "
                    << wms::tuple_label(B.group(), w.tuple_b) << "\n";
          for (std::size_t i = 0; i < w.values_a.size(); ++i)
            if (!(w.values_a[i] == w.values_b[i]))
              std::cout << "    chi_" << i + 1 << ": " << w.values_a[i].str() << " vs "
                        << w.values_b[i].str() << "\n";
        }
        return 0;
      };
    });
  }

  // ---- verify ----
  {
    auto* verify_cmd = app.add_subcommand("verify", "verification sweeps");
    auto* all = verify_cmd->add_subcommand("all", "sweep every identity on the bundled groups");
    auto max_order = std::make_shared<int>(8);
    auto max_width = std::make_shared<int>(3);
    auto seed = std::make_shared<unsigned long long>(20180822ULL);
    all->add_option("--max-order", *max_order, "largest bundled group order")
        ->capture_default_str();
    all->add_option("--max-width", *max_width, "largest width r")->capture_default_str();
    all->add_option("--seed", *seed, "seed for the sampled symmetry spot checks")
        ->capture_default_str();
    all->callback([&, max_order, max_width, seed] {
      action = [&, max_order, max_width, seed]() {
        if (*max_width > 3 && !unsafe_width)
          wms::fail(wms::errc::bound_exceeded, "width above 3 needs --unsafe-width");
        SweepCounter counter;
        std::vector<std::string> covered;
        for (const auto& name : wms::bundled_group_names()) {
          const FiniteGroup G = wms::bundled_group(name);
          if (G.order() > *max_order) continue;
          covered.push_back(name);
          const CharacterTable T = wms::character_table_for(G);
          if (!as_json) std::cout << "== " << name << " (order " << G.order() << ")\n";
          const auto rows = wms::verify_row_orthogonality(T);
          counter.checks += rows.checks;
          for (const auto& v : rows.violations)
            counter.violations.push_back(name + " row orthogonality: " + v);
          const auto cols = wms::verify_column_sums(T);
          counter.checks += cols.checks;
          for (const auto& v : cols.violations)
            counter.violations.push_back(name + " character sums: " + v);
          if (wms::has_bundled_character_table(name)) {
            const CharacterTable computed = wms::compute_character_table(G);
            bool matched = true;
            for (int i = 0; i < computed.count() && matched; ++i) {
              bool row_found = false;
              for (int k = 0; k < T.count() && !row_found; ++k)
                row_found = computed.row(i) == T.row(k);
              matched = row_found;
            }
            counter.check(matched,
                          [&] { return name + ": computed table differs from the bundled one"; });
          }
          sweep_cross_formula(counter, T, std::min(*max_width, 3), budget);
          sweep_orthogonality(counter, T, *max_width, budget);
          sweep_lemmas(counter, T, *max_width, budget);
          // sampled 2-character symmetry spot checks
          std::mt19937_64 rng(*seed);
          std::uniform_int_distribution<int> pick(0, G.order() - 1);
          for (int trial = 0; trial < 32; ++trial) {
            const int a = pick(rng), b = pick(rng);
            for (int i = 0; i < T.count(); ++i) {
              const Cyclotomic ab = wms::r_character(T, i, Tuple{a, b});
              const Cyclotomic ba = wms::r_character(T, i, Tuple{b, a});
              counter.check(ab == ba, [&]() -> std::string {
                return name + ": 2-character symmetry fails at (" + G.label(a) + "," + G.label(b) +
                       ")";
              });
            }
          }
        }
        // group-free cycle statistic
        for (int dim = 1; dim <= 6; ++dim)
          for (int r = 1; r <= std::min(*max_width + 1, 4); ++r) {
            const Rational lhs = wms::permutation_cycle_statistic(wms::Int(8), dim, r);
            const Rational rhs = wms::orthogonality_target(wms::Int(8), dim, r, true);
            counter.check(lhs == rhs, [&] {
              return "cycle statistic (dim " + std::to_string(dim) + ", width " +
                     std::to_string(r) + "): " + wms::format_rational(lhs) + " vs " +
                     wms::format_rational(rhs);
            });
          }
        // moonshine round trips for the bundled pair
        for (const char* name : {"D4", "Q8"}) {
          if (wms::bundled_group(name).order() > *max_order) continue;
          const ModuleSpec spec =
              wms::default_assignment(wms::bundled_character_table(name), 8);
          const wms::Certificate cert = wms::certify(spec, std::min(*max_width, 3), budget);
          for (const auto& e : cert.entries) {
            counter.check(e.passed, [&] {
              return std::string(name) + " certificate: " + e.name +
                     (e.detail.empty() ? "" : " (" + e.detail + ")");
            });
          }
        }
        if (!as_json)
          std::cout << "covered " << covered.size() << " bundled groups up to order "
                    << *max_order << "\n";
        return report_outcome(counter.violations, counter.checks, "full identity sweep", as_json);
      };
    });
    verify_cmd->require_subcommand(1);
  }

  // let global flags like --json trail any subcommand
  std::function<void(CLI::App*)> enable_fallthrough = [&](CLI::App* cmd) {
    for (CLI::App* sub : cmd->get_subcommands(nullptr)) {
      sub->fallthrough(true);
      enable_fallthrough(sub);
    }
  };
  enable_fallthrough(&app);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 1;
  }

  try {
    return action ? action() : 1;
  } catch (const wms::error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
}
