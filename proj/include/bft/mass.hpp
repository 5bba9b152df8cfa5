#pragma once

// Basic belief assignments over a fusion space, with Bel and Pl.
//
// A MassFunction is constructible from any entry list (keys are merged
// canonically, exact zeros dropped); validate_bba reports which invariants
// hold.  Operations that require a proper bba say so and check.

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "bft/algebra.hpp"
#include "bft/expr.hpp"

namespace bft {

inline constexpr double kMassTolerance = 1e-12;

class MassFunction {
 public:
  using Entry = std::pair<SetElement, double>;

  // Merges duplicate canonical keys, drops entries with mass exactly 0.
  // allow_empty_focal marks bbas that may carry mass on the empty set
  // (raw conjunctive results and TBM outputs).
  static MassFunction make(FramePtr frame, std::vector<Entry> entries,
                           bool allow_empty_focal = false) {
    std::map<SetElement, double, CanonicalLess> merged;
    for (auto& [elem, mass] : entries) {
      if (!elem.frame()->same_algebra(*frame))
        throw std::invalid_argument("mass entry belongs to a different frame");
      merged[elem] += mass;
    }
    std::vector<Entry> out;
    out.reserve(merged.size());
    for (auto& [elem, mass] : merged)
      if (mass != 0.0) out.emplace_back(elem, mass);
    return MassFunction(std::move(frame), std::move(out), allow_empty_focal);
  }

  const FramePtr& frame() const { return frame_; }
  bool allow_empty_focal() const { return allow_empty_focal_; }

  // focal elements in canonical order
  const std::vector<Entry>& entries() const { return entries_; }

  double mass_of(const SetElement& x) const {
    const auto it = std::lower_bound(
        entries_.begin(), entries_.end(), x, [](const Entry& e, const SetElement& v) {
          return e.first.bits().compare(v.bits()) < 0;
        });
    return (it != entries_.end() && it->first == x) ? it->second : 0.0;
  }

  double total() const {
    double t = 0.0;
    for (const auto& [elem, mass] : entries_) t += mass;
    return t;
  }

 private:
  MassFunction(FramePtr frame, std::vector<Entry> entries, bool allow_empty_focal)
      : frame_(std::move(frame)),
        entries_(std::move(entries)),
        allow_empty_focal_(allow_empty_focal) {}

  FramePtr frame_;
  std::vector<Entry> entries_;
  bool allow_empty_focal_;
};

// ---------------------------------------------------------------------------
// Validation
// ---------------------------------------------------------------------------

struct BbaViolation {
  enum class Code { non_finite, negative_mass, mass_above_one, empty_focal, sum_not_one };
  Code code;
  std::string detail;
};

inline std::vector<BbaViolation> validate_bba(const MassFunction& m) {
  std::vector<BbaViolation> out;
  double sum = 0.0;
  for (const auto& [elem, mass] : m.entries()) {
    sum += mass;
    if (!std::isfinite(mass)) {
      out.push_back({BbaViolation::Code::non_finite,
                     "mass of " + format_expr(elem) + " is not finite"});
      continue;
    }
    if (mass < 0.0)
      out.push_back({BbaViolation::Code::negative_mass,
                     "mass of " + format_expr(elem) + " is negative"});
    if (mass > 1.0 + kMassTolerance)
      out.push_back({BbaViolation::Code::mass_above_one,
                     "mass of " + format_expr(elem) + " exceeds 1"});
    if (!m.allow_empty_focal() && is_empty(elem))
      out.push_back({BbaViolation::Code::empty_focal, "mass assigned to the empty set"});
  }
  if (!(std::abs(sum - 1.0) <= kMassTolerance))
    out.push_back({BbaViolation::Code::sum_not_one,
                   "masses sum to " + std::to_string(sum) + ", expected 1"});
  return out;
}

// Throws unless m is a valid bba with m(empty) = 0; `who` names the caller
// in the error message.
inline void require_valid_closed_bba(const MassFunction& m, const char* who) {
  const auto violations = validate_bba(m);
  if (!violations.empty())
    throw std::invalid_argument(std::string(who) + ": invalid bba: " +
                                violations.front().detail);
  if (m.allow_empty_focal() && m.mass_of(m.frame()->empty_element()) != 0.0)
    throw std::invalid_argument(std::string(who) + ": bba places mass on the empty set");
}

// ---------------------------------------------------------------------------
// Constructors for common bbas
// ---------------------------------------------------------------------------

// total ignorance: m(whole frame) = 1
inline MassFunction vacuous(const FramePtr& frame) {
  return MassFunction::make(frame, {{frame->whole_element(), 1.0}});
}

inline MassFunction point_mass(const SetElement& b) {
  if (is_empty(b)) throw std::invalid_argument("point mass on the empty set");
  return MassFunction::make(b.frame(), {{b, 1.0}});
}

// ---------------------------------------------------------------------------
// Conditioning event: the set the truth is known to lie in
// ---------------------------------------------------------------------------

class ConditioningEvent {
 public:
  explicit ConditioningEvent(SetElement element) : element_(std::move(element)) {
    if (is_empty(element_))
      throw std::invalid_argument("conditioning event must be non-empty");
  }

  const SetElement& element() const { return element_; }

 private:
  SetElement element_;
};

// ---------------------------------------------------------------------------
// Bel and Pl
// ---------------------------------------------------------------------------

inline void require_same_frame(const MassFunction& m, const SetElement& a) {
  if (!m.frame()->same_algebra(*a.frame()))
    throw std::invalid_argument("frame mismatch between bba and set element");
}

// Bel(A) = sum of m(X) over non-empty X contained in A.  The empty set is
// excluded even for bbas that carry open-world mass on it.
inline double bel(const MassFunction& m, const SetElement& a) {
  require_same_frame(m, a);
  double sum = 0.0;
  for (const auto& [elem, mass] : m.entries())
    if (!is_empty(elem) && elem.bits().subset_of(a.bits())) sum += mass;
  return sum;
}

// Pl(A) = sum of m(X) over X intersecting A.
inline double pl(const MassFunction& m, const SetElement& a) {
  require_same_frame(m, a);
  double sum = 0.0;
  for (const auto& [elem, mass] : m.entries())
    if (elem.bits().intersects(a.bits())) sum += mass;
  return sum;
}

}  // namespace bft
