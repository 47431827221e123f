#ifndef WMS_IO_HPP
#define WMS_IO_HPP

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <limits>
#include <string>
#include <vector>

#include "wms/chartab.hpp"
#include "wms/group.hpp"
#include "wms/laurent.hpp"
#include "wms/moonshine.hpp"

namespace wms {

using json = nlohmann::json;

// Group file: {"name": string, "labels": [string], "table": [[int]]}.

inline json group_to_json(const FiniteGroup& G) {
  json j;
  j["name"] = G.name();
  j["labels"] = G.labels();
  j["table"] = G.table();
  return j;
}

inline FiniteGroup group_from_json(const json& j) {
  if (!j.is_object() || !j.contains("name") || !j.contains("labels") || !j.contains("table"))
    fail(errc::parse_error, "group file needs the fields name, labels, table");
  return FiniteGroup::from_table(j.at("name").get<std::string>(),
                                 j.at("labels").get<std::vector<std::string>>(),
                                 j.at("table").get<std::vector<std::vector<int>>>());
}

inline json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(errc::not_found, "cannot open " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    fail(errc::parse_error, path + ": " + e.what());
  }
  return j;
}

inline FiniteGroup load_group_file(const std::string& path) {
  return group_from_json(load_json_file(path));
}

/// A bundled name, or a path to a group file.
inline FiniteGroup resolve_group(const std::string& name_or_file) {
  const auto& names = bundled_group_names();
  if (std::find(names.begin(), names.end(), name_or_file) != names.end())
    return bundled_group(name_or_file);
  return load_group_file(name_or_file);
}

// Character values: an integer, a rational "p/q", or {"m": int, "coeffs":
// [rational strings]} in the power basis of Q(zeta_m).

inline json cyclotomic_to_json(const Cyclotomic& v) {
  if (v.is_integer()) {
    const Int n = to_integer(v.rational_value());
    if (n >= std::numeric_limits<std::int64_t>::min() &&
        n <= std::numeric_limits<std::int64_t>::max())
      return json(n.convert_to<std::int64_t>());
    return json(n.str());
  }
  if (v.is_rational()) return json(format_rational(v.rational_value()));
  json coeffs = json::array();
  for (const auto& c : v.coefficients()) coeffs.push_back(format_rational(c));
  return json{{"m", v.modulus()}, {"coeffs", coeffs}};
}

inline Cyclotomic cyclotomic_from_json(const json& j) {
  if (j.is_number_integer()) return Cyclotomic::from_rational(1, Rational(j.get<std::int64_t>()));
  if (j.is_string()) return Cyclotomic::from_rational(1, parse_rational(j.get<std::string>()));
  if (j.is_object() && j.contains("m") && j.contains("coeffs")) {
    const unsigned m = j.at("m").get<unsigned>();
    Cyclotomic v(m);
    const auto& coeffs = j.at("coeffs");
    if (!coeffs.is_array() || coeffs.size() != euler_phi(m))
      fail(errc::parse_error, "cyclotomic value needs phi(m) coefficients");
    for (std::size_t k = 0; k < coeffs.size(); ++k)
      v += parse_rational(coeffs[k].get<std::string>()) *
           Cyclotomic::root_power(m, static_cast<long>(k));
    return v;
  }
  fail(errc::parse_error, "unrecognized cyclotomic value: " + j.dump());
}

// Character-table file:
// {"group": string, "class_reps": [string], "class_sizes": [int], "values": [[cyclo]]}.

inline json character_table_to_json(const CharacterTable& T) {
  json j;
  j["group"] = T.group().name();
  json reps = json::array(), sizes = json::array();
  for (int c = 0; c < T.count(); ++c) {
    reps.push_back(T.group().label(T.classes().representatives[static_cast<std::size_t>(c)]));
    sizes.push_back(T.classes().sizes[static_cast<std::size_t>(c)]);
  }
  j["class_reps"] = reps;
  j["class_sizes"] = sizes;
  json values = json::array();
  for (int i = 0; i < T.count(); ++i) {
    json row = json::array();
    for (int c = 0; c < T.count(); ++c) row.push_back(cyclotomic_to_json(T.value(i, c)));
    values.push_back(row);
  }
  j["values"] = values;
  return j;
}

/// Rebuild a table from its file.  The group must be resolvable: bundled name
/// or an explicit group argument.
inline CharacterTable character_table_from_json(const json& j,
                                                const FiniteGroup* group_hint = nullptr) {
  if (!j.is_object() || !j.contains("group") || !j.contains("values"))
    fail(errc::parse_error, "character-table file needs the fields group and values");
  FiniteGroup G = group_hint ? *group_hint : bundled_group(j.at("group").get<std::string>());
  ConjugacyClassPartition P = conjugacy_classes(G);
  const unsigned m = static_cast<unsigned>(group_exponent(G));
  if (j.contains("class_reps")) {
    const auto reps = j.at("class_reps").get<std::vector<std::string>>();
    if (static_cast<int>(reps.size()) != P.count())
      fail(errc::parse_error, "class_reps length differs from the class count");
    for (int c = 0; c < P.count(); ++c)
      if (G.element(reps[static_cast<std::size_t>(c)]) !=
          P.representatives[static_cast<std::size_t>(c)])
        fail(errc::parse_error, "class_reps are not in the canonical class order (expected " +
                                    G.label(P.representatives[static_cast<std::size_t>(c)]) +
                                    " at position " + std::to_string(c) + ")");
  }
  std::vector<std::vector<Cyclotomic>> values;
  for (const auto& row : j.at("values")) {
    std::vector<Cyclotomic> out;
    for (const auto& cell : row) out.push_back(cyclotomic_from_json(cell).promoted(m));
    values.push_back(std::move(out));
  }
  return CharacterTable::make(std::move(G), std::move(P), m, std::move(values));
}

// Series: coefficients as decimal strings, never floating point.

inline json series_to_json(const RationalSeries& s) {
  json j;
  j["lead"] = s.lead();
  j["precision"] = s.precision();
  json coeffs = json::array();
  for (long e = s.lead(); e < s.precision(); ++e) coeffs.push_back(format_rational(s.coeff(e)));
  j["coefficients"] = coeffs;
  return j;
}

inline RationalSeries series_from_json(const json& j) {
  const long lead = j.at("lead").get<long>();
  std::vector<Rational> c;
  for (const auto& v : j.at("coefficients")) c.push_back(parse_rational(v.get<std::string>()));
  return RationalSeries(lead, std::move(c));
}

// Module-spec file: {"group": name, "assignment": {"<class rep>": {"level": N}}}.

inline json module_spec_to_json(const ModuleSpec& spec) {
  json assignment = json::object();
  for (int c = 0; c < spec.table().count(); ++c) {
    const unsigned level = spec.levels()[static_cast<std::size_t>(c)];
    if (level == 0)
      fail(errc::parse_error, "only catalog (level-based) assignments can be serialized");
    const std::string rep =
        spec.group().label(spec.table().classes().representatives[static_cast<std::size_t>(c)]);
    assignment[rep] = json{{"level", level}};
  }
  return json{{"group", spec.group().name()}, {"assignment", assignment}};
}

inline ModuleSpec module_spec_from_json(const json& j, long precision) {
  if (!j.is_object() || !j.contains("group") || !j.contains("assignment"))
    fail(errc::parse_error, "module-spec file needs the fields group and assignment");
  CharacterTable T = character_table_for(resolve_group(j.at("group").get<std::string>()));
  const json& assignment = j.at("assignment");
  std::vector<RationalSeries> series;
  std::vector<unsigned> levels;
  for (int c = 0; c < T.count(); ++c) {
    const std::string rep =
        T.group().label(T.classes().representatives[static_cast<std::size_t>(c)]);
    if (!assignment.contains(rep))
      fail(errc::parse_error, "assignment is missing class representative '" + rep + "'");
    const unsigned level = assignment.at(rep).at("level").get<unsigned>();
    series.push_back(hauptmodul(level, precision));
    levels.push_back(level);
  }
  return ModuleSpec::make(std::move(T), std::move(series), std::move(levels));
}

}  // namespace wms

#endif  // WMS_IO_HPP
