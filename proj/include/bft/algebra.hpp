#pragma once

// Canonical fusion-space algebra.
//
// A frame of n atomic hypotheses splits the universe into 2^n Boolean
// minterms; minterm k is the region lying inside atom i exactly when bit i
// of k is set.  Every element of the power set, hyper-power set, or
// super-power set is a union of minterms, stored as a bitset of length 2^n
// with the model's forced-empty minterms cleared.  Equal bitsets mean equal
// elements, so set operations are word-wise bit operations followed by
// re-masking against the model.
//
// The all-negative minterm (index 0) is forced empty in every model: the
// frame is exhaustive, so complements never leave it.

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace bft {

// ---------------------------------------------------------------------------
// MintermBits: fixed-width bitset over the 2^n minterms of one frame.
// ---------------------------------------------------------------------------

class MintermBits {
 public:
  MintermBits() = default;

  explicit MintermBits(std::size_t bit_count)
      : bit_count_(bit_count), words_((bit_count + 63) / 64, 0) {}

  static MintermBits all_set(std::size_t bit_count) {
    MintermBits b(bit_count);
    for (auto& w : b.words_) w = ~std::uint64_t{0};
    b.trim();
    return b;
  }

  std::size_t size() const { return bit_count_; }

  bool test(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1u; }
  void set(std::size_t i) { words_[i >> 6] |= std::uint64_t{1} << (i & 63); }
  void reset(std::size_t i) { words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }

  bool none() const {
    return std::all_of(words_.begin(), words_.end(),
                       [](std::uint64_t w) { return w == 0; });
  }
  bool any() const { return !none(); }

  std::size_t count() const {
    std::size_t c = 0;
    for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }

  bool subset_of(const MintermBits& o) const {
    for (std::size_t i = 0; i < words_.size(); ++i)
      if (words_[i] & ~o.words_[i]) return false;
    return true;
  }

  bool intersects(const MintermBits& o) const {
    for (std::size_t i = 0; i < words_.size(); ++i)
      if (words_[i] & o.words_[i]) return true;
    return false;
  }

  MintermBits& operator&=(const MintermBits& o) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
    return *this;
  }
  MintermBits& operator|=(const MintermBits& o) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
    return *this;
  }

  friend MintermBits operator&(MintermBits a, const MintermBits& b) {
    a &= b;
    return a;
  }
  friend MintermBits operator|(MintermBits a, const MintermBits& b) {
    a |= b;
    return a;
  }

  // a \ b
  friend MintermBits and_not(MintermBits a, const MintermBits& b) {
    for (std::size_t i = 0; i < a.words_.size(); ++i) a.words_[i] &= ~b.words_[i];
    return a;
  }

  bool operator==(const MintermBits&) const = default;

  // Total order: the bitset read as an unsigned integer, minterm index =
  // bit position.  The empty set sorts first; for Shafer frames singletons
  // come out in frame order, which matches how results are displayed.
  int compare(const MintermBits& o) const {
    for (std::size_t i = words_.size(); i-- > 0;) {
      if (words_[i] != o.words_[i]) return words_[i] < o.words_[i] ? -1 : 1;
    }
    return 0;
  }

  std::vector<std::size_t> indices() const {
    std::vector<std::size_t> out;
    for (std::size_t w = 0; w < words_.size(); ++w) {
      std::uint64_t word = words_[w];
      while (word) {
        const int b = std::countr_zero(word);
        out.push_back(w * 64 + static_cast<std::size_t>(b));
        word &= word - 1;
      }
    }
    return out;
  }

 private:
  void trim() {
    if (bit_count_ & 63)
      words_.back() &= (std::uint64_t{1} << (bit_count_ & 63)) - 1;
  }

  std::size_t bit_count_ = 0;
  std::vector<std::uint64_t> words_;
};

// ---------------------------------------------------------------------------
// Frame and SetElement
// ---------------------------------------------------------------------------

enum class ModelKind { shafer, free, hybrid };

class Frame;
using FramePtr = std::shared_ptr<const Frame>;

// A canonical element of the fusion space: minterm bitset with the frame's
// forced-empty minterms cleared.  Immutable; equality is bitset equality.
class SetElement {
 public:
  const MintermBits& bits() const { return bits_; }
  const FramePtr& frame() const { return frame_; }
  std::size_t minterm_count() const { return bits_.count(); }

  bool operator==(const SetElement& o) const { return bits_ == o.bits_; }

 private:
  friend class Frame;
  SetElement(FramePtr f, MintermBits b) : frame_(std::move(f)), bits_(std::move(b)) {}

  FramePtr frame_;
  MintermBits bits_;
};

// Ordering used everywhere results are listed or keyed.
struct CanonicalLess {
  bool operator()(const SetElement& a, const SetElement& b) const {
    return a.bits().compare(b.bits()) < 0;
  }
};

class Frame : public std::enable_shared_from_this<Frame> {
 public:
  static constexpr std::size_t kMaxAtoms = 16;

  static FramePtr shafer(std::vector<std::string> atoms) {
    check_atoms(atoms);
    const std::size_t n = atoms.size();
    // all pairwise intersections empty: any minterm with two or more
    // positive literals is dead, and so is the all-negative one
    MintermBits forced(std::size_t{1} << n);
    for (std::size_t k = 0; k < forced.size(); ++k)
      if (std::popcount(static_cast<unsigned>(k)) != 1) forced.set(k);
    return FramePtr(new Frame(std::move(atoms), ModelKind::shafer, std::move(forced)));
  }

  static FramePtr free_model(std::vector<std::string> atoms) {
    check_atoms(atoms);
    MintermBits forced(std::size_t{1} << atoms.size());
    forced.set(0);
    return FramePtr(new Frame(std::move(atoms), ModelKind::free, std::move(forced)));
  }

  // forced_empty: minterms cleared in addition to the all-negative one.
  static FramePtr hybrid(std::vector<std::string> atoms, MintermBits forced_empty) {
    check_atoms(atoms);
    if (forced_empty.size() != std::size_t{1} << atoms.size())
      throw std::invalid_argument("hybrid constraint bitset has the wrong width");
    forced_empty.set(0);
    return FramePtr(new Frame(std::move(atoms), ModelKind::hybrid, std::move(forced_empty)));
  }

  std::size_t atom_count() const { return atoms_.size(); }
  const std::vector<std::string>& atoms() const { return atoms_; }
  ModelKind model_kind() const { return kind_; }
  std::size_t minterm_count() const { return std::size_t{1} << atoms_.size(); }
  const MintermBits& forced_empty() const { return forced_empty_; }
  const MintermBits& live_mask() const { return live_; }

  std::optional<std::size_t> atom_index(std::string_view name) const {
    for (std::size_t i = 0; i < atoms_.size(); ++i)
      if (atoms_[i] == name) return i;
    return std::nullopt;
  }

  SetElement empty_element() const {
    return SetElement(shared_from_this(), MintermBits(minterm_count()));
  }
  SetElement whole_element() const { return SetElement(shared_from_this(), live_); }
  SetElement atom_element(std::size_t i) const {
    return SetElement(shared_from_this(), atom_cover_[i]);
  }

  // Canonicalization step: every element enters the algebra through here.
  SetElement element_from_minterms(MintermBits raw) const {
    if (raw.size() != minterm_count())
      throw std::invalid_argument("minterm bitset has the wrong width for this frame");
    raw &= live_;
    return SetElement(shared_from_this(), std::move(raw));
  }

  // Interchangeable frames: same atoms, same dead minterms.
  bool same_algebra(const Frame& o) const {
    return this == &o || (atoms_ == o.atoms_ && forced_empty_ == o.forced_empty_);
  }

 private:
  Frame(std::vector<std::string> atoms, ModelKind kind, MintermBits forced)
      : atoms_(std::move(atoms)), kind_(kind), forced_empty_(std::move(forced)) {
    live_ = and_not(MintermBits::all_set(minterm_count()), forced_empty_);
    if (live_.none())
      throw std::invalid_argument("model forces the whole frame empty");
    atom_cover_.reserve(atoms_.size());
    for (std::size_t i = 0; i < atoms_.size(); ++i) {
      MintermBits cov(minterm_count());
      for (std::size_t k = 0; k < cov.size(); ++k)
        if ((k >> i) & 1u) cov.set(k);
      cov &= live_;
      atom_cover_.push_back(std::move(cov));
    }
  }

  static bool valid_identifier(const std::string& s) {
    if (s.empty()) return false;
    const auto alpha = [](char c) {
      return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
    };
    if (!alpha(s[0])) return false;
    return std::all_of(s.begin() + 1, s.end(), [&](char c) {
      return alpha(c) || (c >= '0' && c <= '9') || c == '_';
    });
  }

  static void check_atoms(const std::vector<std::string>& atoms) {
    if (atoms.size() < 2) throw std::invalid_argument("a frame needs at least 2 atoms");
    if (atoms.size() > kMaxAtoms)
      throw std::invalid_argument("a frame supports at most 16 atoms");
    for (const auto& a : atoms)
      if (!valid_identifier(a))
        throw std::invalid_argument("invalid atom name '" + a + "'");
    std::set<std::string> seen(atoms.begin(), atoms.end());
    if (seen.size() != atoms.size())
      throw std::invalid_argument("duplicate atom names");
  }

  std::vector<std::string> atoms_;
  ModelKind kind_;
  MintermBits forced_empty_;
  MintermBits live_;
  std::vector<MintermBits> atom_cover_;
};

// ---------------------------------------------------------------------------
// Set operations (pure, canonical in and out)
// ---------------------------------------------------------------------------

inline void require_same_frame(const SetElement& a, const SetElement& b) {
  if (a.frame() == b.frame()) return;
  if (!a.frame()->same_algebra(*b.frame()))
    throw std::invalid_argument("frame mismatch between set elements");
}

inline SetElement union_of(const SetElement& a, const SetElement& b) {
  require_same_frame(a, b);
  return a.frame()->element_from_minterms(a.bits() | b.bits());
}

inline SetElement intersect_of(const SetElement& a, const SetElement& b) {
  require_same_frame(a, b);
  return a.frame()->element_from_minterms(a.bits() & b.bits());
}

inline SetElement complement_of(const SetElement& a) {
  return a.frame()->element_from_minterms(
      and_not(MintermBits::all_set(a.bits().size()), a.bits()));
}

inline bool is_empty(const SetElement& a) { return a.bits().none(); }

inline bool is_subset(const SetElement& a, const SetElement& b) {
  require_same_frame(a, b);
  return a.bits().subset_of(b.bits());
}

// The non-empty singletons contained in a, in frame order.
inline std::vector<SetElement> atoms_under(const SetElement& a) {
  std::vector<SetElement> out;
  const FramePtr& f = a.frame();
  for (std::size_t i = 0; i < f->atom_count(); ++i) {
    SetElement atom = f->atom_element(i);
    if (!is_empty(atom) && atom.bits().subset_of(a.bits())) out.push_back(std::move(atom));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Fusion-space enumeration (desk scale only)
// ---------------------------------------------------------------------------

enum class SpaceClosure { power, hyper, super };

inline std::vector<SetElement> enumerate_space(const FramePtr& frame, SpaceClosure closure) {
  if (frame->atom_count() > 4)
    throw std::invalid_argument("frame too large for requested closure (enumeration needs n <= 4)");
  const std::size_t n = frame->atom_count();

  const auto less = [](const MintermBits& a, const MintermBits& b) {
    return a.compare(b) < 0;
  };
  std::set<MintermBits, decltype(less)> seen(less);

  switch (closure) {
    case SpaceClosure::power: {
      // all unions of atoms, plus the empty set
      for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
        MintermBits bits(frame->minterm_count());
        for (std::size_t i = 0; i < n; ++i)
          if ((mask >> i) & 1u) bits |= frame->atom_element(i).bits();
        seen.insert(std::move(bits));
      }
      break;
    }
    case SpaceClosure::hyper: {
      // closure of the atoms under union and intersection, plus the empty set
      std::vector<MintermBits> items;
      for (std::size_t i = 0; i < n; ++i) {
        MintermBits cov = frame->atom_element(i).bits();
        if (seen.insert(cov).second) items.push_back(std::move(cov));
      }
      for (std::size_t i = 0; i < items.size(); ++i) {
        for (std::size_t j = 0; j <= i; ++j) {
          for (MintermBits cand : {items[i] | items[j], items[i] & items[j]}) {
            if (seen.insert(cand).second) items.push_back(std::move(cand));
          }
        }
      }
      seen.insert(MintermBits(frame->minterm_count()));
      break;
    }
    case SpaceClosure::super: {
      // every subset of the live minterms
      const std::vector<std::size_t> live = frame->live_mask().indices();
      for (std::uint32_t mask = 0; mask < (1u << live.size()); ++mask) {
        MintermBits bits(frame->minterm_count());
        for (std::size_t i = 0; i < live.size(); ++i)
          if ((mask >> i) & 1u) bits.set(live[i]);
        seen.insert(std::move(bits));
      }
      break;
    }
  }

  std::vector<SetElement> out;
  out.reserve(seen.size());
  for (const auto& bits : seen) out.push_back(frame->element_from_minterms(bits));
  return out;
}

}  // namespace bft
