#pragma once

// Conjunctive combination of two bbas, with a ledger of the mass that
// landed on empty intersections.

#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

#include "bft/mass.hpp"

namespace bft {

struct ConflictPair {
  SetElement left;   // focal element of the first bba
  SetElement right;  // focal element of the second bba
  double product;    // m1(left) * m2(right)
};

struct ConflictLedger {
  std::vector<ConflictPair> pairs;
  double total = 0.0;
};

struct CombineResult {
  MassFunction mass;  // allow_empty_focal: conflict is aggregated on the empty set
  ConflictLedger ledger;
};

// (m1 (+) m2)(A) = sum of m1(X) m2(Y) over X, Y with X n Y = A.  Pairs with
// empty intersection are itemized in the ledger and their mass kept on the
// empty set, so the output still sums to 1.
inline CombineResult conjunctive_combine(const MassFunction& m1, const MassFunction& m2) {
  if (!m1.frame()->same_algebra(*m2.frame()))
    throw std::invalid_argument("conjunctive_combine: frame mismatch");
  require_valid_closed_bba(m1, "conjunctive_combine");
  require_valid_closed_bba(m2, "conjunctive_combine");

  std::map<SetElement, double, CanonicalLess> out;
  ConflictLedger ledger;
  for (const auto& [x, mx] : m1.entries()) {
    for (const auto& [y, my] : m2.entries()) {
      const double product = mx * my;
      SetElement inter = intersect_of(x, y);
      if (is_empty(inter)) {
        ledger.pairs.push_back({x, y, product});
        ledger.total += product;
      } else {
        out[std::move(inter)] += product;
      }
    }
  }

  std::vector<MassFunction::Entry> entries(out.begin(), out.end());
  if (ledger.total != 0.0)
    entries.emplace_back(m1.frame()->empty_element(), ledger.total);
  return {MassFunction::make(m1.frame(), std::move(entries), /*allow_empty_focal=*/true),
          std::move(ledger)};
}

}  // namespace bft
