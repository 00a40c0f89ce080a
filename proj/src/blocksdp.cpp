#include "stabsdp/blocksdp.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace stabsdp {

void SparseSym::add(int r, int c, double v) {
  if (r < c) std::swap(r, c);
  entries.push_back({r, c, v});
}

void SparseSym::canonicalize() {
  std::sort(entries.begin(), entries.end(), [](const SparseEntry& a, const SparseEntry& b) {
    return a.row != b.row ? a.row < b.row : a.col < b.col;
  });
  std::vector<SparseEntry> merged;
  merged.reserve(entries.size());
  for (const auto& e : entries) {
    if (!merged.empty() && merged.back().row == e.row && merged.back().col == e.col)
      merged.back().value += e.value;
    else
      merged.push_back(e);
  }
  merged.erase(std::remove_if(merged.begin(), merged.end(),
                              [](const SparseEntry& e) { return e.value == 0.0; }),
               merged.end());
  entries = std::move(merged);
}

Eigen::MatrixXd to_dense(const SparseSym& m, int order) {
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(order, order);
  for (const auto& e : m.entries) {
    out(e.row, e.col) = e.value;
    out(e.col, e.row) = e.value;
  }
  return out;
}

double dot(const SparseSym& a, const Eigen::MatrixXd& dense) {
  double total = 0.0;
  for (const auto& e : a.entries)
    total += e.value * dense(e.row, e.col) * (e.row == e.col ? 1.0 : 2.0);
  return total;
}

namespace {

void validate_matrix(const SparseSym& m, int order, int block_idx, const std::string& name) {
  const SparseEntry* prev = nullptr;
  for (const auto& e : m.entries) {
    if (e.col > e.row)
      throw ValidationError("block " + std::to_string(block_idx) + ": " + name +
                            " stores an upper-triangle entry");
    if (e.row >= order || e.col < 0)
      throw ValidationError("block " + std::to_string(block_idx) + ": " + name +
                            " entry index outside order " + std::to_string(order));
    if (!std::isfinite(e.value))
      throw ValidationError("block " + std::to_string(block_idx) + ": " + name +
                            " has a non-finite value");
    if (prev && (prev->row > e.row || (prev->row == e.row && prev->col >= e.col)))
      throw ValidationError("block " + std::to_string(block_idx) + ": " + name +
                            " entries not sorted/unique");
    prev = &e;
  }
}

}  // namespace

void BlockSDP::validate() const {
  if (num_vars < 0) throw ValidationError("negative variable count");
  if (static_cast<int>(objective.size()) != num_vars)
    throw ValidationError("objective length does not match variable count");
  for (double c : objective)
    if (!std::isfinite(c)) throw ValidationError("non-finite objective coefficient");
  for (size_t b = 0; b < blocks.size(); ++b) {
    const SDPBlock& blk = blocks[b];
    if (blk.order < 1)
      throw ValidationError("block " + std::to_string(b) + ": order must be at least 1");
    validate_matrix(blk.constant, blk.order, int(b), "constant matrix");
    int prev_var = -1;
    for (const auto& [j, mat] : blk.coeffs) {
      if (j < 0 || j >= num_vars)
        throw ValidationError("block " + std::to_string(b) + ": variable index " +
                              std::to_string(j) + " out of range");
      if (j <= prev_var)
        throw ValidationError("block " + std::to_string(b) +
                              ": coefficient matrices not sorted by variable");
      prev_var = j;
      if (mat.empty())
        throw ValidationError("block " + std::to_string(b) + ": empty coefficient matrix for variable " +
                              std::to_string(j));
      validate_matrix(mat, blk.order, int(b), "coefficient matrix " + std::to_string(j));
    }
  }
}

namespace {

bool same_matrix(const SparseSym& a, const SparseSym& b) {
  if (a.entries.size() != b.entries.size()) return false;
  for (size_t i = 0; i < a.entries.size(); ++i) {
    const auto& x = a.entries[i];
    const auto& y = b.entries[i];
    if (x.row != y.row || x.col != y.col || x.value != y.value) return false;
  }
  return true;
}

}  // namespace

bool structurally_equal(const BlockSDP& a, const BlockSDP& b) {
  if (a.num_vars != b.num_vars || a.objective != b.objective ||
      a.blocks.size() != b.blocks.size())
    return false;
  for (size_t i = 0; i < a.blocks.size(); ++i) {
    const SDPBlock& p = a.blocks[i];
    const SDPBlock& q = b.blocks[i];
    if (p.order != q.order || p.coeffs.size() != q.coeffs.size()) return false;
    if (!same_matrix(p.constant, q.constant)) return false;
    for (size_t k = 0; k < p.coeffs.size(); ++k) {
      if (p.coeffs[k].first != q.coeffs[k].first) return false;
      if (!same_matrix(p.coeffs[k].second, q.coeffs[k].second)) return false;
    }
  }
  return true;
}

}  // namespace stabsdp
