#include "stabsdp/moment.hpp"

#include <algorithm>

namespace stabsdp {

MomentVector::MomentVector(int n, int bound) : n_(n), bound_(bound) {
  if (n < 0 || n > VertexSet::capacity)
    throw CapacityError("MomentVector: vertex count outside [0, 128]");
  if (bound < 0) throw InvalidParameterError("MomentVector: negative size bound");
  support_ = enumerate_subsets(n_, effective_bound());
  values_.reserve(support_.size());
  for (const auto& s : support_) values_.emplace(s, 0.0);
}

MomentVector::MomentVector(const Graph& g, int bound)
    : n_(g.num_vertices()), bound_(bound), graph_(g) {
  if (bound < 0) throw InvalidParameterError("MomentVector: negative size bound");
  support_ = stable_subsets(g, effective_bound());
  values_.reserve(support_.size());
  for (const auto& s : support_) values_.emplace(s, 0.0);
}

void MomentVector::check_key(const VertexSet& I) const {
  if (!I.subset_of(VertexSet::full(n_)))
    throw InvalidParameterError("moment key " + I.str() + " leaves the ground set");
  if (I.size() > effective_bound())
    throw DomainError("moment key " + I.str() + " exceeds size bound " +
                      std::to_string(effective_bound()));
}

double MomentVector::get(const VertexSet& I) const {
  check_key(I);
  auto it = values_.find(I);
  if (it == values_.end()) return 0.0;  // non-stable key under the stable-only domain
  return it->second;
}

void MomentVector::set(const VertexSet& I, double v) {
  check_key(I);
  auto it = values_.find(I);
  if (it == values_.end()) {
    if (v != 0.0)
      throw DomainError("moment entry at non-stable key " + I.str() +
                        " is identically zero");
    return;
  }
  it->second = v;
}

double min_eigenvalue(const Eigen::MatrixXd& m) {
  if (m.rows() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

double min_eigenvalue(const SymMatrix& m) { return min_eigenvalue(m.mat); }

bool is_psd(const SymMatrix& m, double tol) { return min_eigenvalue(m) >= -tol; }

MomentVector zeta_lift(const std::vector<int>& x, int bound) {
  int n = static_cast<int>(x.size());
  VertexSet supp;
  for (int i = 0; i < n; ++i) {
    if (x[i] != 0 && x[i] != 1)
      throw InvalidParameterError("zeta_lift: coordinates must be 0 or 1");
    if (x[i] == 1) supp = supp.with(i);
  }
  MomentVector y(n, bound);
  for (const auto& I : y.support())
    if (I.subset_of(supp)) y.set(I, 1.0);
  return y;
}

SymMatrix block_A_S(const MomentVector& y, const VertexSet& S) {
  int n = y.n();
  if (y.bound() < std::min(S.size() + 2, n))
    throw DomainError("block_A_S: size bound " + std::to_string(y.bound()) +
                      " too small for shift " + S.str());
  SymMatrix out;
  out.labels.reserve(n + 1);
  out.labels.push_back(S);
  for (int i = 0; i < n; ++i) out.labels.push_back(S.with(i));
  out.mat = Eigen::MatrixXd::Zero(n + 1, n + 1);
  out.mat(0, 0) = y.get(S);
  for (int i = 0; i < n; ++i) {
    double v = y.get(S.with(i));
    out.mat(0, 1 + i) = v;
    out.mat(1 + i, 0) = v;
  }
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      double v = y.get(S.with(i).with(j));
      out.mat(1 + i, 1 + j) = v;
      out.mat(1 + j, 1 + i) = v;
    }
  return out;
}

SymMatrix block_A_ST(const MomentVector& y, const VertexSet& S, const VertexSet& T) {
  if (!S.subset_of(T))
    throw ArgumentError("block_A_ST: shift " + S.str() + " is not inside " + T.str());
  int n = y.n();
  if (y.bound() < std::min(T.size() + 2, n))
    throw DomainError("block_A_ST: size bound too small for " + T.str());
  SymMatrix out = block_A_S(y, S);
  for (const auto& extra : subsets_of(T.set_minus(S))) {
    if (extra.empty()) continue;
    SymMatrix term = block_A_S(y, S.set_union(extra));
    if (extra.size() % 2 == 1)
      out.mat -= term.mat;
    else
      out.mat += term.mat;
  }
  return out;
}

SymMatrix assemble_M_T(const MomentVector& y, const VertexSet& T) {
  int n = y.n();
  if (T.size() > 20) throw CapacityError("assemble_M_T: shift set larger than 20");
  if (y.bound() < std::min(T.size() + 2, n))
    throw DomainError("assemble_M_T: size bound too small for " + T.str());
  auto subs = subsets_of(T);
  int blocks = static_cast<int>(subs.size());
  int b = n + 1;
  SymMatrix out;
  out.labels.reserve(size_t(blocks) * b);
  for (const auto& S : subs) {
    out.labels.push_back(S);
    for (int i = 0; i < n; ++i) out.labels.push_back(S.with(i));
  }
  out.mat = Eigen::MatrixXd::Zero(blocks * b, blocks * b);
  for (int p = 0; p < blocks; ++p)
    for (int q = p; q < blocks; ++q) {
      SymMatrix block = block_A_S(y, subs[p].set_union(subs[q]));
      out.mat.block(p * b, q * b, b, b) = block.mat;
      if (q != p) out.mat.block(q * b, p * b, b, b) = block.mat.transpose();
    }
  return out;
}

SymMatrix moment_matrix(const MomentVector& y, int t) {
  if (t < 0) throw InvalidParameterError("moment_matrix: negative order");
  int n = y.n();
  if (y.bound() < std::min(2 * t, n))
    throw DomainError("moment_matrix: size bound " + std::to_string(y.bound()) +
                      " too small for order " + std::to_string(t));
  SymMatrix out;
  out.labels = enumerate_subsets(n, t);
  int d = out.order();
  out.mat = Eigen::MatrixXd::Zero(d, d);
  for (int p = 0; p < d; ++p)
    for (int q = p; q < d; ++q) {
      double v = y.get(out.labels[p].set_union(out.labels[q]));
      out.mat(p, q) = v;
      out.mat(q, p) = v;
    }
  return out;
}

MomentVector apply_linear(const std::vector<double>& a, const MomentVector& y) {
  int n = y.n();
  if (static_cast<int>(a.size()) != n + 1)
    throw InvalidParameterError("apply_linear: coefficient vector must have length n+1");
  if (y.bound() < 1) throw DomainError("apply_linear: size bound is already zero");
  MomentVector result = y.stable_only() ? MomentVector(*y.reference_graph(), y.bound() - 1)
                                        : MomentVector(n, y.bound() - 1);
  for (const auto& I : result.support()) {
    double v = a[0] * y.get(I);
    for (int i = 0; i < n; ++i) v += a[1 + i] * y.get(I.with(i));
    result.set(I, v);
  }
  return result;
}

double alternating_sum(const MomentVector& y, const VertexSet& S) {
  int n = y.n();
  if (y.bound() < n)
    throw DomainError("alternating_sum: needs a full-domain vector (bound >= n)");
  double total = 0.0;
  for (const auto& extra : subsets_of(VertexSet::full(n).set_minus(S))) {
    double term = y.get(S.set_union(extra));
    total += (extra.size() % 2 == 1) ? -term : term;
  }
  return total;
}

}  // namespace stabsdp
