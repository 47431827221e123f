#ifndef WMS_MOONSHINE_HPP
#define WMS_MOONSHINE_HPP

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "wms/chartab.hpp"
#include "wms/laurent.hpp"
#include "wms/qseries.hpp"
#include "wms/rchar.hpp"

namespace wms {

/// A weak-moonshine module seed: one graded-trace series per conjugacy class.
/// The series share a common window [-d, precision); d is the pole depth of
/// the graded module.
class ModuleSpec {
 public:
  static ModuleSpec make(CharacterTable table, std::vector<RationalSeries> assignment,
                         std::vector<unsigned> levels = {}) {
    const int t = table.count();
    if (static_cast<int>(assignment.size()) != t)
      fail(errc::parse_error, "expected one series per class, got " +
                                  std::to_string(assignment.size()) + " for " + std::to_string(t));
    long precision = assignment.front().precision();
    long lead = assignment.front().lead();
    for (const auto& s : assignment) {
      precision = std::min(precision, s.precision());
      lead = std::min(lead, s.lead());
    }
    if (precision <= lead)
      fail(errc::insufficient_precision, "assignment window is empty");
    for (auto& s : assignment) s = s.truncated(precision);
    ModuleSpec spec;
    spec.table_ = std::move(table);
    spec.assignment_ = std::move(assignment);
    spec.levels_ = levels.empty() ? std::vector<unsigned>(static_cast<std::size_t>(t), 0)
                                  : std::move(levels);
    spec.lead_ = lead;
    spec.precision_ = precision;
    return spec;
  }

  const CharacterTable& table() const { return table_; }
  const FiniteGroup& group() const { return table_.group(); }
  const std::vector<RationalSeries>& assignment() const { return assignment_; }
  const RationalSeries& series_for_class(int j) const {
    return assignment_[static_cast<std::size_t>(j)];
  }
  const std::vector<unsigned>& levels() const { return levels_; }
  long pole_depth() const { return -lead_; }
  long lead() const { return lead_; }
  long precision() const { return precision_; }

 private:
  ModuleSpec() : table_(bundled_character_table("D4")) {}
  CharacterTable table_;
  std::vector<RationalSeries> assignment_;
  std::vector<unsigned> levels_;
  long lead_ = 0;
  long precision_ = 0;
};

enum class AssignmentRule {
  /// The bundled demo assignment: classes of order 1/2/4 get the level 1/2/4
  /// Hauptmodul.  Q8 instead inherits the D4 assignment through the shared
  /// character table, pairing {i,-i} with {r,r3}, {j,-j} with {s,r2s} and
  /// {k,-k} with {rs,r3s}.
  table_matched,
  /// Strictly ord(g)-based, for every group: each class of order N gets the
  /// level-N Hauptmodul.  On Q8 this assigns level 4 to all three 2-element
  /// classes.
  by_element_order,
};

inline ModuleSpec default_assignment(CharacterTable table, long precision,
                                     AssignmentRule rule = AssignmentRule::table_matched) {
  const auto& classes = table.classes();
  std::vector<unsigned> levels;
  if (rule == AssignmentRule::table_matched && table.group().name() == "Q8") {
    levels = {1, 2, 4, 2, 2};
  } else {
    for (int j = 0; j < classes.count(); ++j) {
      const int ord = classes.orders[static_cast<std::size_t>(j)];
      if (!hauptmodul_available(static_cast<unsigned>(ord)))
        fail(errc::unsupported_order,
             "no Hauptmodul catalog entry for class of order " + std::to_string(ord) +
                 " (representative " +
                 table.group().label(classes.representatives[static_cast<std::size_t>(j)]) + ")");
      levels.push_back(static_cast<unsigned>(ord));
    }
  }
  std::vector<RationalSeries> assignment;
  for (unsigned level : levels) assignment.push_back(hauptmodul(level, precision));
  return ModuleSpec::make(std::move(table), std::move(assignment), std::move(levels));
}

/// Multiplicity generating functions M_i, one per irreducible character.
/// Coefficients are exact cyclotomic numbers (rational for every sensible
/// assignment); the quality flags report rationality, integrality,
/// nonnegativity and completeness over the computed window, with witnesses.
class MultiplicityTable {
 public:
  MultiplicityTable(long lead, long precision, unsigned modulus,
                    std::vector<std::vector<Cyclotomic>> coeffs)
      : lead_(lead), precision_(precision), modulus_(modulus), coeffs_(std::move(coeffs)) {
    analyze();
  }

  long lead() const { return lead_; }
  long precision() const { return precision_; }
  int count() const { return static_cast<int>(coeffs_.size()); }

  const Cyclotomic& cyclotomic_value(int i, long n) const {
    if (n < lead_ || n >= precision_)
      fail(errc::insufficient_precision, "multiplicity exponent " + std::to_string(n) +
                                             " outside window [" + std::to_string(lead_) + "," +
                                             std::to_string(precision_) + ")");
    return coeffs_[static_cast<std::size_t>(i)][static_cast<std::size_t>(n - lead_)];
  }

  Rational value(int i, long n) const { return cyclotomic_value(i, n).rational_value(); }

  RationalSeries series(int i) const {
    std::vector<Rational> c;
    for (const auto& v : coeffs_[static_cast<std::size_t>(i)]) c.push_back(v.rational_value());
    return RationalSeries(lead_, std::move(c));
  }

  bool all_rational() const { return all_rational_; }
  bool all_integral() const { return all_integral_; }
  bool all_nonnegative() const { return all_nonnegative_; }
  /// Every irreducible has a nonzero multiplicity somewhere in the window.
  bool complete() const { return complete_; }
  const std::vector<std::string>& witnesses() const { return witnesses_; }

 private:
  void analyze() {
    all_rational_ = all_integral_ = all_nonnegative_ = complete_ = true;
    for (int i = 0; i < count(); ++i) {
      bool any_nonzero = false;
      bool reported_rational = false, reported_integral = false, reported_negative = false;
      for (long n = lead_; n < precision_; ++n) {
        const Cyclotomic& v = cyclotomic_value(i, n);
        if (!v.is_zero()) any_nonzero = true;
        const std::string where =
            "M_" + std::to_string(i + 1) + " at q^" + std::to_string(n) + ": " + v.str();
        if (!v.is_rational()) {
          all_rational_ = all_integral_ = all_nonnegative_ = false;
          if (!reported_rational) witnesses_.push_back("non-rational " + where);
          reported_rational = true;
          continue;
        }
        const Rational r = v.rational_value();
        if (!is_integer(r)) {
          all_integral_ = false;
          if (!reported_integral) witnesses_.push_back("non-integral " + where);
          reported_integral = true;
        }
        if (r < 0) {
          all_nonnegative_ = false;
          if (!reported_negative) witnesses_.push_back("negative " + where);
          reported_negative = true;
        }
      }
      if (!any_nonzero) {
        complete_ = false;
        witnesses_.push_back("M_" + std::to_string(i + 1) + " vanishes on the whole window");
      }
    }
  }

  long lead_;
  long precision_;
  unsigned modulus_;
  std::vector<std::vector<Cyclotomic>> coeffs_;
  bool all_rational_ = true, all_integral_ = true, all_nonnegative_ = true, complete_ = true;
  std::vector<std::string> witnesses_;
};

/// M_i = (1/|G|) sum_j |C_j| conj(chi_i(C_j)) T(1,C_j), coefficientwise.
inline MultiplicityTable multiplicities(const ModuleSpec& spec) {
  const CharacterTable& T = spec.table();
  const int t = T.count();
  const long lead = spec.lead(), prec = spec.precision();
  const Rational inv_order(1, T.group().order());
  std::vector<std::vector<Cyclotomic>> coeffs(
      static_cast<std::size_t>(t),
      std::vector<Cyclotomic>(static_cast<std::size_t>(prec - lead), Cyclotomic(T.modulus())));
  for (int i = 0; i < t; ++i)
    for (int j = 0; j < t; ++j) {
      const Cyclotomic weight =
          Rational(T.classes().sizes[static_cast<std::size_t>(j)]) * T.value(i, j).conj();
      if (weight.is_zero()) continue;
      const RationalSeries& a = spec.series_for_class(j);
      for (long n = lead; n < prec; ++n) {
        const Rational& c = a.coeff(n);
        if (c == 0) continue;
        coeffs[static_cast<std::size_t>(i)][static_cast<std::size_t>(n - lead)] += weight * c;
      }
    }
  for (auto& row : coeffs)
    for (auto& v : row) v = v * inv_order;
  return MultiplicityTable(lead, prec, T.modulus(), std::move(coeffs));
}

/// The width-r McKay-Thompson series T(r, g_; tau) = sum_i chi_i^(r)(g_) M_i.
inline RationalSeries frob_series(const ModuleSpec& spec, const MultiplicityTable& mult, int r,
                                  const Tuple& tuple) {
  if (static_cast<int>(tuple.size()) != r)
    fail(errc::parse_error, "tuple length " + std::to_string(tuple.size()) +
                                " does not match width " + std::to_string(r));
  const CharacterTable& T = spec.table();
  const long lead = mult.lead(), prec = mult.precision();
  std::vector<Cyclotomic> acc(static_cast<std::size_t>(prec - lead), Cyclotomic(T.modulus()));
  for (int i = 0; i < T.count(); ++i) {
    const Cyclotomic chi_r = r_character(T, i, tuple);
    if (chi_r.is_zero()) continue;
    for (long n = lead; n < prec; ++n)
      acc[static_cast<std::size_t>(n - lead)] += chi_r * mult.cyclotomic_value(i, n);
  }
  std::vector<Rational> c;
  for (const auto& v : acc) {
    if (!v.is_rational())
      fail(errc::non_rational_value,
           "McKay-Thompson coefficient is not rational: " + v.str() + " at " +
               tuple_label(spec.group(), tuple));
    c.push_back(v.rational_value());
  }
  return RationalSeries(lead, std::move(c));
}

/// Recover M_i from the width-r McKay-Thompson family:
///   dim^{r-1} / (r! |G|^r (dim-1)...(dim-(r-1))) *
///       sum_{g_ in G^(r)} conj(chi_i^(r)(g_)) T(r, g_; tau).
/// Exact equality with multiplicities() is the round-trip contract.
inline RationalSeries recover_multiplicities(const ModuleSpec& spec, const MultiplicityTable& mult,
                                             int r, int i,
                                             std::uint64_t budget = default_enumeration_budget) {
  const CharacterTable& T = spec.table();
  const long dim = T.dim(i);
  if (dim < r)
    fail(errc::dimension_too_small, "character " + std::to_string(i + 1) + " has dimension " +
                                        std::to_string(dim) + " < width " + std::to_string(r));
  const int n_elems = T.group().order();
  check_budget(int_pow(n_elems, static_cast<unsigned long>(r)), budget,
               "recovery sum over G^(" + std::to_string(r) + ")");
  const int t = T.count();
  std::vector<std::vector<Cyclotomic>> layers;
  for (int k = 0; k < t; ++k) layers.push_back(r_character_layer(T, k, r, budget));

  const long lead = mult.lead(), prec = mult.precision();
  std::vector<Cyclotomic> acc(static_cast<std::size_t>(prec - lead), Cyclotomic(T.modulus()));
  std::vector<Cyclotomic> t_coeff(static_cast<std::size_t>(prec - lead), Cyclotomic(T.modulus()));
  const std::uint64_t tuples = layers.front().size();
  for (std::uint64_t rank = 0; rank < tuples; ++rank) {
    for (auto& v : t_coeff) v = Cyclotomic(T.modulus());
    for (int k = 0; k < t; ++k) {
      const Cyclotomic& chi_r = layers[static_cast<std::size_t>(k)][rank];
      if (chi_r.is_zero()) continue;
      for (long n = lead; n < prec; ++n)
        t_coeff[static_cast<std::size_t>(n - lead)] += chi_r * mult.cyclotomic_value(k, n);
    }
    const Cyclotomic weight = layers[static_cast<std::size_t>(i)][rank].conj();
    if (weight.is_zero()) continue;
    for (std::size_t k = 0; k < acc.size(); ++k) acc[k] += weight * t_coeff[k];
  }

  Rational prefactor = rat_pow(Rational(dim), r - 1) /
                       Rational(factorial(static_cast<unsigned>(r)) *
                                int_pow(Int(n_elems), static_cast<unsigned long>(r)));
  for (long k = 1; k <= r - 1; ++k) prefactor /= Rational(dim - k);
  std::vector<Rational> c;
  for (const auto& v : acc) {
    if (!v.is_rational())
      fail(errc::non_rational_value, "recovered multiplicity is not rational: " + v.str());
    c.push_back(Rational(v.rational_value() * prefactor));
  }
  return RationalSeries(lead, std::move(c));
}

/// One grade of the asymptotic-regularity diagnostic: delta_i(n) =
/// m_i(n) / sum_j m_j(n), with the limit targets dim chi_i / sum_j dim chi_j.
struct DeltaRow {
  long grade = 0;
  std::vector<Rational> delta;
};

inline DeltaRow asymptotic_deltas(const MultiplicityTable& mult, long n) {
  Rational total = 0;
  for (int i = 0; i < mult.count(); ++i) total += mult.value(i, n);
  if (total == 0)
    fail(errc::zero_total_multiplicity, "all multiplicities vanish at grade " + std::to_string(n));
  DeltaRow row;
  row.grade = n;
  for (int i = 0; i < mult.count(); ++i) row.delta.push_back(Rational(mult.value(i, n) / total));
  return row;
}

inline std::vector<Rational> delta_limits(const CharacterTable& T) {
  Rational total = 0;
  for (int i = 0; i < T.count(); ++i) total += T.dim(i);
  std::vector<Rational> limits;
  for (int i = 0; i < T.count(); ++i) limits.push_back(Rational(Rational(T.dim(i)) / total));
  return limits;
}

struct CertificateEntry {
  std::string name;
  bool passed = false;
  std::string detail;
};

/// Structural certificate for width-s weak moonshine on a given assignment.
struct Certificate {
  std::vector<CertificateEntry> entries;
  bool complete = false;
  std::vector<std::string> notes;
  std::vector<DeltaRow> deltas;
  std::vector<Rational> limits;

  bool passed() const {
    return std::all_of(entries.begin(), entries.end(),
                       [](const CertificateEntry& e) { return e.passed; });
  }
};

inline Certificate certify(const ModuleSpec& spec, int width,
                           std::uint64_t budget = default_enumeration_budget) {
  const CharacterTable& T = spec.table();
  Certificate cert;
  const MultiplicityTable mult = multiplicities(spec);

  auto witness_detail = [&](const char* prefix) {
    for (const auto& w : mult.witnesses())
      if (w.rfind(prefix, 0) == 0) return w;
    return std::string();
  };
  cert.entries.push_back({"multiplicities are rational", mult.all_rational(),
                          witness_detail("non-rational")});
  cert.entries.push_back({"multiplicities are integral", mult.all_integral(),
                          witness_detail("non-integral")});
  cert.entries.push_back({"multiplicities are nonnegative", mult.all_nonnegative(),
                          witness_detail("negative")});
  cert.complete = mult.complete();
  cert.entries.push_back({"every irreducible appears (complete)", mult.complete(),
                          witness_detail("M_")});

  // Graded-dimension dominance is a sanity note, not a gate.
  {
    std::string note = "graded dimensions dominate the assignment in the window";
    const RationalSeries& dims = spec.series_for_class(0);
    for (int j = 1; j < T.count(); ++j)
      for (long n = spec.lead(); n < spec.precision(); ++n)
        if (dims.coeff(n) < spec.series_for_class(j).coeff(n)) {
          note = "identity-class series is not coefficientwise maximal (class " +
                 std::to_string(j + 1) + " at q^" + std::to_string(n) + ")";
          j = T.count();
          break;
        }
    cert.notes.push_back(note);
  }

  // Width 1: the chi-weighted combination of the M_i must reproduce the
  // assigned series on every class.
  if (mult.all_rational()) {
    bool ok = true;
    std::string detail;
    for (int j = 0; j < T.count() && ok; ++j) {
      const Tuple rep{T.classes().representatives[static_cast<std::size_t>(j)]};
      const RationalSeries rebuilt = frob_series(spec, mult, 1, rep);
      if (!(rebuilt == spec.series_for_class(j))) {
        ok = false;
        detail = "class " + std::to_string(j + 1) + " reconstruction differs";
      }
    }
    cert.entries.push_back({"width-1 trace series match the assignment", ok, detail});
  } else {
    cert.entries.push_back({"width-1 trace series match the assignment", false,
                            "skipped: non-rational multiplicities"});
  }

  // Widths 2..s: the multiplicity recovery from the full McKay-Thompson
  // family must round-trip exactly for every character of sufficient
  // dimension.
  for (int r = 2; r <= width; ++r) {
    int recovered = 0, vanishing = 0;
    bool ok = true;
    std::string detail;
    for (int i = 0; i < T.count() && ok; ++i) {
      if (T.dim(i) < r) {
        ++vanishing;
        continue;
      }
      const RationalSeries back = recover_multiplicities(spec, mult, r, i, budget);
      if (back == mult.series(i)) {
        ++recovered;
      } else {
        ok = false;
        detail = "character " + std::to_string(i + 1) + " fails the width-" + std::to_string(r) +
                 " round trip";
      }
    }
    if (ok)
      detail = std::to_string(recovered) + " recovered, " + std::to_string(vanishing) +
               " below dimension";
    cert.entries.push_back(
        {"width-" + std::to_string(r) + " multiplicity recovery", ok, detail});
  }

  cert.limits = delta_limits(T);
  if (mult.all_rational()) {
    for (long n = 1; n <= 4 && n < mult.precision(); ++n) {
      Rational total = 0;
      for (int i = 0; i < mult.count(); ++i) total += mult.value(i, n);
      if (total == 0) continue;
      cert.deltas.push_back(asymptotic_deltas(mult, n));
    }
  }
  return cert;
}

}  // namespace wms

#endif  // WMS_MOONSHINE_HPP
