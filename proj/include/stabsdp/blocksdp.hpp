#pragma once

// Block-diagonal linear matrix inequality in free variables y:
//   maximize  c'y   subject to   sum_j y_j F_j - F0  psd  per block.
// Coefficient matrices are sparse symmetric, lower triangle stored.

#include <Eigen/Dense>
#include <vector>

#include "stabsdp/errors.hpp"

namespace stabsdp {

struct SparseEntry {
  int row = 0;
  int col = 0;  // row >= col
  double value = 0.0;
};

// Symmetric sparse matrix, lower triangle only.
struct SparseSym {
  std::vector<SparseEntry> entries;

  void add(int r, int c, double v);  // accumulates; call canonicalize() when done
  void canonicalize();               // sort by (row, col), merge, drop exact zeros
  bool empty() const { return entries.empty(); }
};

Eigen::MatrixXd to_dense(const SparseSym& m, int order);
double dot(const SparseSym& a, const Eigen::MatrixXd& dense);  // <A, M>, M symmetric

struct SDPBlock {
  int order = 0;
  SparseSym constant;                              // F0
  std::vector<std::pair<int, SparseSym>> coeffs;   // (variable j, F_j), j ascending
};

struct BlockSDP {
  int num_vars = 0;
  std::vector<double> objective;  // length num_vars
  std::vector<SDPBlock> blocks;

  void validate() const;  // throws ValidationError on any structural defect
};

// Exact structural identity: same shapes, same entry lists, same values.
bool structurally_equal(const BlockSDP& a, const BlockSDP& b);

}  // namespace stabsdp
