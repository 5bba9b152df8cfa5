#pragma once

// Seeded random inputs for property tests: frames, power-set elements,
// bbas, and expression strings.

#include <cstdint>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "bft/expr.hpp"
#include "bft/mass.hpp"

namespace testgen {

struct Gen {
  explicit Gen(std::uint32_t seed) : rng(seed) {}

  double uniform(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
  }
  int uniform_int(int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng);
  }

  std::mt19937 rng;
};

inline bft::FramePtr shafer_frame(std::size_t n) {
  std::vector<std::string> atoms;
  for (std::size_t i = 0; i < n; ++i) atoms.push_back(std::string(1, char('A' + i)));
  return bft::Frame::shafer(std::move(atoms));
}

inline bft::FramePtr free_frame(std::size_t n) {
  std::vector<std::string> atoms;
  for (std::size_t i = 0; i < n; ++i) atoms.push_back(std::string(1, char('a' + i)));
  return bft::Frame::free_model(std::move(atoms));
}

// union of the atoms named in mask (Shafer frames: the whole power set)
inline bft::SetElement element_from_mask(const bft::FramePtr& frame, std::uint32_t mask) {
  bft::MintermBits bits(frame->minterm_count());
  for (std::size_t i = 0; i < frame->atom_count(); ++i)
    if ((mask >> i) & 1u) bits |= frame->atom_element(i).bits();
  return frame->element_from_minterms(std::move(bits));
}

// inverse of element_from_mask for Shafer frames, where every live minterm
// is a singleton
inline std::uint32_t mask_from_element(const bft::SetElement& elem) {
  std::uint32_t mask = 0;
  for (std::size_t k : elem.bits().indices()) {
    if (std::popcount(static_cast<unsigned>(k)) != 1)
      throw std::logic_error("element is not a union of Shafer singletons");
    mask |= static_cast<std::uint32_t>(k);
  }
  return mask;
}

inline std::uint32_t random_nonempty_mask(Gen& g, std::size_t n) {
  return static_cast<std::uint32_t>(g.uniform_int(1, (1 << n) - 1));
}

// valid bba over random distinct non-empty power-set elements
inline bft::MassFunction random_shafer_bba(Gen& g, const bft::FramePtr& frame,
                                           int max_focals = 6) {
  const std::size_t n = frame->atom_count();
  const int limit = (1 << n) - 1;
  const int count = g.uniform_int(1, std::min(max_focals, limit));
  std::set<std::uint32_t> masks;
  while (static_cast<int>(masks.size()) < count) masks.insert(random_nonempty_mask(g, n));

  std::vector<double> weights;
  double total = 0.0;
  for (std::size_t i = 0; i < masks.size(); ++i) {
    weights.push_back(g.uniform(0.05, 1.0));
    total += weights.back();
  }
  std::vector<bft::MassFunction::Entry> entries;
  std::size_t i = 0;
  for (std::uint32_t mask : masks) entries.emplace_back(element_from_mask(frame, mask), weights[i++] / total);
  return bft::MassFunction::make(frame, std::move(entries));
}

// valid bba whose focal elements are all subsets of `within`
inline bft::MassFunction random_bba_within(Gen& g, const bft::FramePtr& frame,
                                           std::uint32_t within, int max_focals = 6) {
  std::vector<std::uint32_t> submasks;
  for (std::uint32_t z = within;; z = (z - 1) & within) {
    if (z != 0) submasks.push_back(z);
    if (z == 0) break;
  }
  const int count = g.uniform_int(1, std::min<int>(max_focals, submasks.size()));
  std::set<std::uint32_t> chosen;
  while (static_cast<int>(chosen.size()) < count)
    chosen.insert(submasks[g.uniform_int(0, static_cast<int>(submasks.size()) - 1)]);

  std::vector<double> weights;
  double total = 0.0;
  for (std::size_t i = 0; i < chosen.size(); ++i) {
    weights.push_back(g.uniform(0.05, 1.0));
    total += weights.back();
  }
  std::vector<bft::MassFunction::Entry> entries;
  std::size_t i = 0;
  for (std::uint32_t mask : chosen) entries.emplace_back(element_from_mask(frame, mask), weights[i++] / total);
  return bft::MassFunction::make(frame, std::move(entries));
}

// random expression tree rendered as text (fully parenthesized)
inline std::string random_expr_string(Gen& g, const std::vector<std::string>& atoms,
                                      int depth) {
  if (depth <= 0) {
    const int pick = g.uniform_int(0, 9);
    if (pick == 0) return "0";
    if (pick == 1) return "1";
    return atoms[static_cast<std::size_t>(g.uniform_int(0, static_cast<int>(atoms.size()) - 1))];
  }
  switch (g.uniform_int(0, 3)) {
    case 0:
      return "(" + random_expr_string(g, atoms, depth - 1) + "|" +
             random_expr_string(g, atoms, depth - 1) + ")";
    case 1:
      return "(" + random_expr_string(g, atoms, depth - 1) + "&" +
             random_expr_string(g, atoms, depth - 1) + ")";
    case 2:
      return "!" + random_expr_string(g, atoms, depth - 1);
    default:
      return random_expr_string(g, atoms, 0);
  }
}

}  // namespace testgen
