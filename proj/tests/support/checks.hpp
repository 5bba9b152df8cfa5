#pragma once

#include <algorithm>
#include <cmath>

#include "bft/mass.hpp"

namespace testsup {

// max |a(X) - b(X)| over the union of both supports
inline double max_mass_delta(const bft::MassFunction& a, const bft::MassFunction& b) {
  double worst = 0.0;
  for (const auto& [elem, mass] : a.entries())
    worst = std::max(worst, std::abs(mass - b.mass_of(elem)));
  for (const auto& [elem, mass] : b.entries())
    worst = std::max(worst, std::abs(mass - a.mass_of(elem)));
  return worst;
}

}  // namespace testsup
