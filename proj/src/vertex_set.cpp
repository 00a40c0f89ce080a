#include "stabsdp/vertex_set.hpp"

#include <algorithm>
#include <bit>

namespace stabsdp {

namespace {

int popcount128(VertexSet::Word w) {
  return std::popcount(static_cast<uint64_t>(w)) + std::popcount(static_cast<uint64_t>(w >> 64));
}

int ctz128(VertexSet::Word w) {
  uint64_t lo = static_cast<uint64_t>(w);
  if (lo != 0) return std::countr_zero(lo);
  return 64 + std::countr_zero(static_cast<uint64_t>(w >> 64));
}

// Next mask with the same popcount in increasing numeric order (Gosper).
VertexSet::Word next_same_size(VertexSet::Word v) {
  VertexSet::Word t = v | (v - 1);
  VertexSet::Word low = (~t) & (t + 1);  // lowest bit that flips up
  return (t + 1) | (((low - 1)) >> (ctz128(v) + 1));
}

}  // namespace

int VertexSet::size() const { return popcount128(bits_); }

int VertexSet::front() const { return bits_ == 0 ? -1 : ctz128(bits_); }

std::vector<int> VertexSet::elements() const {
  std::vector<int> out;
  out.reserve(size());
  Word w = bits_;
  while (w != 0) {
    int i = ctz128(w);
    out.push_back(i);
    w &= w - 1;
  }
  return out;
}

std::string VertexSet::str() const {
  std::string s = "{";
  bool first = true;
  for (int i : elements()) {
    if (!first) s += ",";
    s += std::to_string(i);
    first = false;
  }
  return s + "}";
}

bool canonical_less(const VertexSet& a, const VertexSet& b) {
  int sa = a.size(), sb = b.size();
  if (sa != sb) return sa < sb;
  return a.bits() < b.bits();
}

std::vector<VertexSet> enumerate_subsets(int n, int r) {
  if (n < 0 || n > VertexSet::capacity)
    throw CapacityError("enumerate_subsets: ground set size " + std::to_string(n) +
                        " outside [0, 128]");
  if (r < 0) throw InvalidParameterError("enumerate_subsets: negative size bound");
  r = std::min(r, n);

  std::vector<VertexSet> out;
  uint64_t total = 0;
  for (int s = 0; s <= r; ++s) total += binomial(n, s);
  out.reserve(total);

  out.emplace_back();  // the empty set
  for (int s = 1; s <= r; ++s) {
    VertexSet::Word v = (VertexSet::Word(1) << s) - 1;
    VertexSet::Word last = v << (n - s);
    while (true) {
      out.emplace_back(VertexSet(v));
      if (v == last) break;
      v = next_same_size(v);
    }
  }
  return out;
}

std::vector<VertexSet> subsets_of(const VertexSet& T) {
  std::vector<int> elems = T.elements();
  size_t d = elems.size();
  if (d > 24) throw CapacityError("subsets_of: set has more than 24 elements");
  std::vector<VertexSet> out;
  out.reserve(size_t(1) << d);
  for (uint64_t pattern = 0; pattern < (uint64_t(1) << d); ++pattern) {
    VertexSet s;
    for (size_t k = 0; k < d; ++k)
      if ((pattern >> k) & 1) s = s.with(elems[k]);
    out.push_back(s);
  }
  std::sort(out.begin(), out.end(),
            [](const VertexSet& a, const VertexSet& b) { return canonical_less(a, b); });
  return out;
}

uint64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  // 128-bit intermediates: the running value is itself a binomial coefficient,
  // so checking it after each step catches overflow without false positives.
  unsigned __int128 result = 1;
  for (int i = 1; i <= k; ++i) {
    result = result * unsigned(n - k + i) / unsigned(i);
    if (result > UINT64_MAX) throw CapacityError("binomial: overflow");
  }
  return static_cast<uint64_t>(result);
}

}  // namespace stabsdp
