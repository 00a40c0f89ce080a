#pragma once

// Moment vectors indexed by small vertex subsets, the shifted principal
// blocks A_S(y), their alternating sums A(S,T)(y), the big matrices M(T;y)
// built from them, and plain truncated moment matrices M_t(y).

#include <Eigen/Dense>
#include <optional>
#include <unordered_map>
#include <vector>

#include "stabsdp/graph.hpp"
#include "stabsdp/vertex_set.hpp"

namespace stabsdp {

// Real vector indexed by subsets of {0,...,n-1} of size <= bound.
// Two domains: every subset, or only stable sets of a reference graph.
// Under the stable-only domain a lookup of a non-stable key returns 0,
// which is the value forced on it by the 0/1 semantics; this lets the
// same formulas run over both domains.
class MomentVector {
 public:
  MomentVector(int n, int bound);             // all subsets
  MomentVector(const Graph& g, int bound);    // stable sets only

  int n() const { return n_; }
  int bound() const { return bound_; }
  bool stable_only() const { return graph_.has_value(); }

  double get(const VertexSet& I) const;
  void set(const VertexSet& I, double v);

  // Stored keys in canonical order.
  const std::vector<VertexSet>& support() const { return support_; }

  // Reference graph of the stable-only domain; empty under all-subsets.
  const std::optional<Graph>& reference_graph() const { return graph_; }

 private:
  int effective_bound() const { return std::min(bound_, n_); }
  void check_key(const VertexSet& I) const;

  int n_;
  int bound_;
  std::optional<Graph> graph_;
  std::vector<VertexSet> support_;
  std::unordered_map<VertexSet, double, VertexSetHash> values_;
};

// Dense symmetric matrix with subset row labels (repeats allowed).
struct SymMatrix {
  std::vector<VertexSet> labels;
  Eigen::MatrixXd mat;
  int order() const { return static_cast<int>(labels.size()); }
};

double min_eigenvalue(const Eigen::MatrixXd& m);
double min_eigenvalue(const SymMatrix& m);
bool is_psd(const SymMatrix& m, double tol = 1e-9);

// y_I = 1 exactly when I lies inside the support of the 0/1 vector x.
MomentVector zeta_lift(const std::vector<int>& x, int bound);

// (n+1) x (n+1) block with rows labeled S, S+{0}, ..., S+{n-1}:
// entry(0,0) = y_S, entry(0,1+i) = y_{S+{i}}, entry(1+i,1+j) = y_{S+{i,j}}.
SymMatrix block_A_S(const MomentVector& y, const VertexSet& S);

// Alternating sum over S <= S' <= T of (-1)^{|S'\S|} block_A_S(y, S').
SymMatrix block_A_ST(const MomentVector& y, const VertexSet& S, const VertexSet& T);

// Order 2^{|T|}(n+1) matrix whose (S,S')-subblock is block_A_S(y, S union S'),
// subblocks ordered by the canonical order of the subsets of T.  Row labels
// are kept as a multiset (no dedup).
SymMatrix assemble_M_T(const MomentVector& y, const VertexSet& T);

// Truncated moment matrix: rows indexed by subsets of size <= t in canonical
// order, entry (I,J) = y_{I union J}.
SymMatrix moment_matrix(const MomentVector& y, int t);

// (ay)_I = a[0] y_I + sum_i a[1+i] y_{I+{i}}; the result loses one unit of
// size bound and keeps the domain of y.
MomentVector apply_linear(const std::vector<double>& a, const MomentVector& y);

// Moebius sum over S <= S' <= V of (-1)^{|S'\S|} y_{S'}; needs a full-domain
// vector (bound >= n).
double alternating_sum(const MomentVector& y, const VertexSet& S);

}  // namespace stabsdp
