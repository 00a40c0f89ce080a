#pragma once

// Subsets of a vertex ground set {0, ..., n-1}, n <= 128, as bitmasks.
// The canonical order used throughout the project is size-major with
// colexicographic order inside each size class; the empty set comes first.
// For equal-size sets colex order coincides with numeric order of the mask.

#include <cstdint>
#include <string>
#include <vector>

#include "stabsdp/errors.hpp"

namespace stabsdp {

class VertexSet {
 public:
  using Word = unsigned __int128;
  static constexpr int capacity = 128;

  constexpr VertexSet() : bits_(0) {}
  constexpr explicit VertexSet(Word bits) : bits_(bits) {}

  static VertexSet single(int i) { return VertexSet(Word(1) << i); }
  static VertexSet of(std::initializer_list<int> elems) {
    VertexSet s;
    for (int i : elems) s.bits_ |= Word(1) << i;
    return s;
  }
  static VertexSet full(int n) {
    if (n <= 0) return VertexSet();
    if (n >= capacity) return VertexSet(~Word(0));
    return VertexSet((Word(1) << n) - 1);
  }

  bool contains(int i) const { return (bits_ >> i) & 1; }
  bool empty() const { return bits_ == 0; }
  int size() const;
  VertexSet with(int i) const { return VertexSet(bits_ | (Word(1) << i)); }
  VertexSet without(int i) const { return VertexSet(bits_ & ~(Word(1) << i)); }
  bool subset_of(const VertexSet& o) const { return (bits_ & ~o.bits_) == 0; }
  bool intersects(const VertexSet& o) const { return (bits_ & o.bits_) != 0; }
  VertexSet set_union(const VertexSet& o) const { return VertexSet(bits_ | o.bits_); }
  VertexSet set_intersect(const VertexSet& o) const { return VertexSet(bits_ & o.bits_); }
  VertexSet set_minus(const VertexSet& o) const { return VertexSet(bits_ & ~o.bits_); }

  // Smallest element, or -1 for the empty set.
  int front() const;
  std::vector<int> elements() const;
  Word bits() const { return bits_; }

  friend bool operator==(const VertexSet& a, const VertexSet& b) { return a.bits_ == b.bits_; }
  friend bool operator!=(const VertexSet& a, const VertexSet& b) { return a.bits_ != b.bits_; }

  std::string str() const;  // "{0,2,5}", "{}" for the empty set

 private:
  Word bits_;
};

// Size-major, then colexicographic (numeric mask) order.
bool canonical_less(const VertexSet& a, const VertexSet& b);

struct VertexSetHash {
  size_t operator()(const VertexSet& s) const {
    auto mix = [](uint64_t x) {
      x += 0x9e3779b97f4a7c15ull;
      x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
      x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
      return x ^ (x >> 31);
    };
    return mix(static_cast<uint64_t>(s.bits())) ^ mix(static_cast<uint64_t>(s.bits() >> 64));
  }
};

// All subsets of {0,...,n-1} with at most r elements, in canonical order.
// Throws CapacityError for n > 128 and InvalidParameterError for r < 0;
// r larger than n is clamped to n.
std::vector<VertexSet> enumerate_subsets(int n, int r);

// All subsets of T, in canonical order.
std::vector<VertexSet> subsets_of(const VertexSet& T);

// Exact binomial coefficient; throws CapacityError on uint64 overflow.
uint64_t binomial(int n, int k);

}  // namespace stabsdp
