#pragma once

// Belief conditioning: given a bba m and the later knowledge that the truth
// lies in A, produce m(.|A).  Five rules, differing only in where the mass
// of focal elements disjoint from A (the conflict mass K_cond) goes:
//
//   DCR    m(X|A) = sum_{Y n A = X} m(Y) / sum_{Y n A != empty} m(Y)
//          (normalisation; undefined when Pl(A) = 0)
//   TBM    conflict mass moves to the empty set (open world)
//   DSM1   conflict mass moves to A itself
//   DSM2   conflict mass splits uniformly over the non-empty subsets of A
//          that already carry transferred mass; if there are none, over the
//          singletons under A, their unions, and A itself
//   CLASS  like DCR but weighting each focal Y by alpha(Y)/beta(Y) instead
//          of its mass; alpha = [mass] recovers DCR exactly
//
// All rules are pure functions of immutable inputs.

#include <functional>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "bft/mass.hpp"

namespace bft {

enum class RuleId { dcr, tbm, dsm1, dsm2, dsm_class };

inline constexpr RuleId kAllRules[] = {RuleId::dcr, RuleId::tbm, RuleId::dsm1,
                                       RuleId::dsm2, RuleId::dsm_class};

inline const char* rule_name(RuleId id) {
  switch (id) {
    case RuleId::dcr: return "DCR";
    case RuleId::tbm: return "TBM";
    case RuleId::dsm1: return "DSM1";
    case RuleId::dsm2: return "DSM2";
    case RuleId::dsm_class: return "CLASS";
  }
  return "?";
}

inline std::optional<RuleId> rule_from_name(std::string_view name) {
  std::string upper;
  upper.reserve(name.size());
  for (char c : name) upper += (c >= 'a' && c <= 'z') ? static_cast<char>(c - 32) : c;
  for (RuleId id : kAllRules)
    if (upper == rule_name(id)) return id;
  return std::nullopt;
}

class UndefinedConditioningError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Class-rule parameters
// ---------------------------------------------------------------------------

// Weight factor evaluated on a focal element; must be finite and > 0 there.
using WeightFn = std::function<double(const MassFunction&, const SetElement&)>;

namespace weights {

inline WeightFn mass() {
  return [](const MassFunction& m, const SetElement& y) { return m.mass_of(y); };
}

// number of minterms of the element
inline WeightFn cardinality() {
  return [](const MassFunction&, const SetElement& y) {
    return static_cast<double>(y.minterm_count());
  };
}

inline WeightFn constant(double v) {
  if (!(v > 0.0))
    throw std::invalid_argument("constant weight factor must be > 0");
  return [v](const MassFunction&, const SetElement&) { return v; };
}

}  // namespace weights

struct ClassParams {
  std::vector<WeightFn> alpha;  // factors the weight is proportional to
  std::vector<WeightFn> beta;   // factors the weight is inversely proportional to

  // alpha = [mass]: the class member equal to DCR
  static ClassParams dcr_equivalent() { return {{weights::mass()}, {}}; }
};

// CLI weight syntax: "mass", "cardinality", or "constant:<v>".
inline WeightFn parse_weight(std::string_view spec) {
  if (spec == "mass") return weights::mass();
  if (spec == "cardinality") return weights::cardinality();
  constexpr std::string_view prefix = "constant:";
  if (spec.substr(0, prefix.size()) == prefix) {
    const std::string value(spec.substr(prefix.size()));
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(value, &used);
    } catch (const std::exception&) {
      throw std::invalid_argument("invalid weight constant '" + value + "'");
    }
    if (used != value.size())
      throw std::invalid_argument("invalid weight constant '" + value + "'");
    return weights::constant(v);
  }
  throw std::invalid_argument("unknown weight factor '" + std::string(spec) +
                              "' (expected mass, cardinality, or constant:<v>)");
}

// ---------------------------------------------------------------------------
// Reports
// ---------------------------------------------------------------------------

struct ConditioningReport {
  RuleId rule;
  ConditioningEvent event;
  MassFunction result;
  double k_cond = 0.0;  // total mass on focal elements disjoint from the event

  // DSM2 only
  std::vector<SetElement> recipients;
  bool degenerate_fallback_used = false;
};

// ---------------------------------------------------------------------------
// Shared machinery
// ---------------------------------------------------------------------------

namespace detail {

struct Grouped {
  // base(X) = sum of m(Y) over focal Y with Y n A = X, X non-empty
  std::map<SetElement, double, CanonicalLess> base;
  double conflict = 0.0;  // K_cond
};

inline Grouped group_by_event(const MassFunction& m, const SetElement& a) {
  Grouped g;
  for (const auto& [y, mass] : m.entries()) {
    SetElement x = intersect_of(y, a);
    if (is_empty(x))
      g.conflict += mass;
    else
      g.base[std::move(x)] += mass;
  }
  return g;
}

inline void check_rule_inputs(const MassFunction& m, const ConditioningEvent& a,
                              const char* who) {
  if (!m.frame()->same_algebra(*a.element().frame()))
    throw std::invalid_argument(std::string(who) + ": frame mismatch");
  require_valid_closed_bba(m, who);
}

}  // namespace detail

// K_cond = sum of m(Y) over focal Y with Y n A = empty; equals 1 - Pl(A).
inline double conflict_mass(const MassFunction& m, const ConditioningEvent& a) {
  detail::check_rule_inputs(m, a, "conflict_mass");
  double sum = 0.0;
  for (const auto& [y, mass] : m.entries())
    if (!y.bits().intersects(a.element().bits())) sum += mass;
  return sum;
}

// ---------------------------------------------------------------------------
// The rules
// ---------------------------------------------------------------------------

inline ConditioningReport condition_dcr(const MassFunction& m, const ConditioningEvent& a) {
  detail::check_rule_inputs(m, a, "condition_dcr");
  detail::Grouped g = detail::group_by_event(m, a.element());
  if (g.base.empty())
    throw UndefinedConditioningError("DCR undefined: Pl(" +
                                     format_expr(a.element()) + ") = 0");
  double denom = 0.0;
  for (const auto& [x, v] : g.base) denom += v;
  std::vector<MassFunction::Entry> entries;
  entries.reserve(g.base.size());
  for (const auto& [x, v] : g.base) entries.emplace_back(x, v / denom);
  return {RuleId::dcr, a, MassFunction::make(m.frame(), std::move(entries)), g.conflict,
          {}, false};
}

inline ConditioningReport condition_tbm(const MassFunction& m, const ConditioningEvent& a) {
  detail::check_rule_inputs(m, a, "condition_tbm");
  detail::Grouped g = detail::group_by_event(m, a.element());
  std::vector<MassFunction::Entry> entries(g.base.begin(), g.base.end());
  entries.emplace_back(m.frame()->empty_element(), g.conflict);
  return {RuleId::tbm, a,
          MassFunction::make(m.frame(), std::move(entries), /*allow_empty_focal=*/true),
          g.conflict, {}, false};
}

inline ConditioningReport condition_dsm1(const MassFunction& m, const ConditioningEvent& a) {
  detail::check_rule_inputs(m, a, "condition_dsm1");
  detail::Grouped g = detail::group_by_event(m, a.element());
  g.base[a.element()] += g.conflict;
  std::vector<MassFunction::Entry> entries(g.base.begin(), g.base.end());
  return {RuleId::dsm1, a, MassFunction::make(m.frame(), std::move(entries)), g.conflict,
          {}, false};
}

namespace detail {

// Fallback recipients when no transferred mass lands inside A: the
// singletons under A, the unions of two or more of them, and A itself,
// deduplicated canonically.
inline std::vector<SetElement> dsm2_fallback_recipients(const SetElement& a) {
  std::set<SetElement, CanonicalLess> out;
  const std::vector<SetElement> atoms = atoms_under(a);
  for (const auto& atom : atoms) out.insert(atom);
  for (std::uint32_t mask = 1; mask < (1u << atoms.size()); ++mask) {
    if (std::popcount(mask) < 2) continue;
    MintermBits bits(a.bits().size());
    for (std::size_t i = 0; i < atoms.size(); ++i)
      if ((mask >> i) & 1u) bits |= atoms[i].bits();
    out.insert(a.frame()->element_from_minterms(std::move(bits)));
  }
  out.insert(a);
  return {out.begin(), out.end()};
}

}  // namespace detail

inline ConditioningReport condition_dsm2(const MassFunction& m, const ConditioningEvent& a) {
  detail::check_rule_inputs(m, a, "condition_dsm2");
  detail::Grouped g = detail::group_by_event(m, a.element());

  std::vector<SetElement> recipients;
  bool fallback = false;
  if (!g.base.empty()) {
    for (const auto& [x, v] : g.base) recipients.push_back(x);
  } else {
    fallback = true;
    recipients = detail::dsm2_fallback_recipients(a.element());
  }

  const double share = g.conflict / static_cast<double>(recipients.size());
  for (const auto& r : recipients) g.base[r] += share;
  std::vector<MassFunction::Entry> entries(g.base.begin(), g.base.end());
  return {RuleId::dsm2, a, MassFunction::make(m.frame(), std::move(entries)), g.conflict,
          std::move(recipients), fallback};
}

inline ConditioningReport condition_class(const MassFunction& m, const ConditioningEvent& a,
                                          const ClassParams& params) {
  detail::check_rule_inputs(m, a, "condition_class");

  const auto factor_value = [&](const WeightFn& fn, const SetElement& y, const char* side) {
    const double v = fn(m, y);
    if (!std::isfinite(v) || !(v > 0.0))
      throw std::invalid_argument(std::string("condition_class: ") + side +
                                  " factor is not strictly positive on focal " +
                                  format_expr(y));
    return v;
  };

  std::map<SetElement, double, CanonicalLess> numerator;
  double denominator = 0.0;
  double conflict = 0.0;
  for (const auto& [y, mass] : m.entries()) {
    SetElement x = intersect_of(y, a.element());
    if (is_empty(x)) {
      conflict += mass;
      continue;
    }
    double w = 1.0;
    for (const auto& fn : params.alpha) w *= factor_value(fn, y, "alpha");
    for (const auto& fn : params.beta) w /= factor_value(fn, y, "beta");
    numerator[std::move(x)] += w;
    denominator += w;
  }
  if (numerator.empty())
    throw UndefinedConditioningError("CLASS undefined: no focal element intersects " +
                                     format_expr(a.element()));

  std::vector<MassFunction::Entry> entries;
  entries.reserve(numerator.size());
  for (const auto& [x, w] : numerator) entries.emplace_back(x, w / denominator);
  return {RuleId::dsm_class, a, MassFunction::make(m.frame(), std::move(entries)), conflict,
          {}, false};
}

// Dispatch by rule id; CLASS falls back to the DCR-equivalent parameters.
inline ConditioningReport condition(const MassFunction& m, const ConditioningEvent& a,
                                    RuleId rule,
                                    const std::optional<ClassParams>& params = std::nullopt) {
  switch (rule) {
    case RuleId::dcr: return condition_dcr(m, a);
    case RuleId::tbm: return condition_tbm(m, a);
    case RuleId::dsm1: return condition_dsm1(m, a);
    case RuleId::dsm2: return condition_dsm2(m, a);
    case RuleId::dsm_class:
      return condition_class(m, a, params ? *params : ClassParams::dcr_equivalent());
  }
  throw std::logic_error("unreachable rule id");
}

// ---------------------------------------------------------------------------
// Comparison harness
// ---------------------------------------------------------------------------

struct RuleOutcome {
  RuleId rule;
  std::optional<ConditioningReport> report;  // empty when the rule is undefined
  std::string undefined_reason;

  bool defined() const { return report.has_value(); }
};

// Runs every rule in the fixed order DCR, TBM, DSM1, DSM2, CLASS; rules that
// are undefined for this input are recorded, not raised.
inline std::vector<RuleOutcome> compare_all(
    const MassFunction& m, const ConditioningEvent& a,
    const std::optional<ClassParams>& class_params = std::nullopt) {
  std::vector<RuleOutcome> out;
  out.reserve(std::size(kAllRules));
  for (RuleId rule : kAllRules) {
    try {
      out.push_back({rule, condition(m, a, rule, class_params), ""});
    } catch (const UndefinedConditioningError& e) {
      out.push_back({rule, std::nullopt, e.what()});
    }
  }
  return out;
}

}  // namespace bft
