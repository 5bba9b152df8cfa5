#pragma once

// Independent reference implementation for Shafer frames, kept deliberately
// naive: sets are atom bitmasks, bbas are plain maps, and every function is
// the defining sum written out directly.  Nothing here touches the library's
// canonical algebra; tests convert at the boundary and compare.

#include <cstdint>
#include <map>
#include <vector>

namespace oracle {

// key: union of atoms as a bitmask; 0 is the empty set
using Mass = std::map<std::uint32_t, double>;

inline double bel(const Mass& m, std::uint32_t a) {
  double sum = 0.0;
  for (const auto& [x, v] : m)
    if (x != 0 && (x & ~a) == 0) sum += v;
  return sum;
}

inline double pl(const Mass& m, std::uint32_t a) {
  double sum = 0.0;
  for (const auto& [x, v] : m)
    if ((x & a) != 0) sum += v;
  return sum;
}

// conjunctive rule; mass on empty intersections accumulates at key 0
inline Mass combine(const Mass& m1, const Mass& m2) {
  Mass out;
  for (const auto& [x, vx] : m1)
    for (const auto& [y, vy] : m2) out[x & y] += vx * vy;
  return out;
}

// m(X|A) = sum_{Y n A = X} m(Y) / sum_{Y n A != 0} m(Y); false when Pl(A)=0
inline bool dcr(const Mass& m, std::uint32_t a, Mass& out) {
  double denom = 0.0;
  for (const auto& [y, v] : m)
    if ((y & a) != 0) denom += v;
  if (denom == 0.0) return false;
  out.clear();
  for (const auto& [y, v] : m)
    if ((y & a) != 0) out[y & a] += v;
  for (auto& [x, v] : out) v /= denom;
  return true;
}

// conflict mass goes to the empty set (key 0)
inline Mass tbm(const Mass& m, std::uint32_t a) {
  Mass out;
  for (const auto& [y, v] : m) out[y & a] += v;
  if (out.count(0) && out[0] == 0.0) out.erase(0);
  return out;
}

// conflict mass goes to A itself
inline Mass dsm1(const Mass& m, std::uint32_t a) {
  Mass out;
  for (const auto& [y, v] : m) {
    if ((y & a) != 0)
      out[y & a] += v;
    else
      out[a] += v;
  }
  return out;
}

// conflict mass splits uniformly over the non-empty subsets of A carrying
// transferred mass; if none, over all non-empty subsets of A (singletons,
// their unions, and A itself coincide with exactly those in a Shafer frame)
inline Mass dsm2(const Mass& m, std::uint32_t a) {
  Mass base;
  double conflict = 0.0;
  for (const auto& [y, v] : m) {
    if ((y & a) != 0)
      base[y & a] += v;
    else
      conflict += v;
  }
  std::vector<std::uint32_t> recipients;
  for (std::uint32_t z = a;; z = (z - 1) & a) {
    if (z != 0 && base.count(z) && base.at(z) != 0.0) recipients.push_back(z);
    if (z == 0) break;
  }
  if (recipients.empty()) {
    for (std::uint32_t z = a;; z = (z - 1) & a) {
      if (z != 0) recipients.push_back(z);
      if (z == 0) break;
    }
  }
  Mass out = base;
  for (std::uint32_t z : recipients) out[z] += conflict / static_cast<double>(recipients.size());
  return out;
}

}  // namespace oracle
