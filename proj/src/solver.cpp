#include "stabsdp/solver.hpp"

#include <algorithm>
#include <optional>
#include <cmath>
#include <vector>

namespace stabsdp {

namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

// Largest step a in [0,1] keeping chol-factored M + a*D positive definite:
// bounded by the smallest eigenvalue of L^{-1} D L^{-T}.
double max_step(const Eigen::LLT<MatrixXd>& chol, const MatrixXd& dir) {
  MatrixXd t = chol.matrixL().solve(dir);
  t = chol.matrixL().solve(t.transpose()).transpose();
  Eigen::SelfAdjointEigenSolver<MatrixXd> es(0.5 * (t + t.transpose()),
                                             Eigen::EigenvaluesOnly);
  double lo = es.eigenvalues().minCoeff();
  if (lo >= 0.0) return 1.0;
  return std::min(1.0, -1.0 / lo);
}

struct BlockWork {
  int order = 0;
  MatrixXd f0;             // dense constant matrix
  MatrixXd x, s;           // current iterates
  MatrixXd rd;             // pencil residual P(y) - S
  MatrixXd w;              // NT scaling W = G G'
  MatrixXd g, ginv;        // W = G G', G' S G = G^{-1} X G^{-T} = diag(d)
  VectorXd d;              // scaled spectrum, d_i = sqrt(eig_i)
  MatrixXd wrw;            // W rd W
  MatrixXd dx_aff, ds_aff; // predictor direction
  MatrixXd dx, ds;         // corrector direction
  Eigen::LLT<MatrixXd> chol_x, chol_s;
};

}  // namespace

SolveResult solve(const BlockSDP& p, const SolveOptions& opts) {
  p.validate();
  if (opts.gap_tol <= 0 || opts.feas_tol <= 0)
    throw InvalidParameterError("solve: tolerances must be positive");
  if (opts.max_iter < 0) throw InvalidParameterError("solve: negative iteration cap");

  const int m = p.num_vars;
  const int nblocks = static_cast<int>(p.blocks.size());
  if (nblocks == 0) throw ValidationError("solve: no blocks");
  {
    std::vector<char> seen(m, 0);
    for (const auto& blk : p.blocks)
      for (const auto& [j, mat] : blk.coeffs) seen[j] = 1;
    for (int j = 0; j < m; ++j)
      if (!seen[j])
        throw ValidationError("solve: variable " + std::to_string(j) +
                              " appears in no block");
  }

  SolveResult res;
  res.y.assign(m, 0.0);

  // Initial point: y = 0, S = delta I, X = xi I.
  double max_f0 = 0.0, max_c = 0.0;
  for (const auto& blk : p.blocks)
    for (const auto& e : blk.constant.entries) max_f0 = std::max(max_f0, std::abs(e.value));
  for (double c : p.objective) max_c = std::max(max_c, std::abs(c));
  const double delta = opts.init_dual_shift > 0 ? opts.init_dual_shift : 1.0 + max_f0;
  const double xi = opts.init_primal_shift > 0 ? opts.init_primal_shift : 1.0 + max_c;

  std::vector<BlockWork> work(nblocks);
  double total_order = 0.0;
  double norm_f0 = 0.0, norm_c = 0.0;
  for (int b = 0; b < nblocks; ++b) {
    BlockWork& wk = work[b];
    wk.order = p.blocks[b].order;
    wk.f0 = to_dense(p.blocks[b].constant, wk.order);
    wk.x = MatrixXd::Identity(wk.order, wk.order) * xi;
    wk.s = MatrixXd::Identity(wk.order, wk.order) * delta;
    total_order += wk.order;
    norm_f0 += wk.f0.squaredNorm();
  }
  norm_f0 = std::sqrt(norm_f0);
  for (double c : p.objective) norm_c += c * c;
  norm_c = std::sqrt(norm_c);

  const VectorXd c = Eigen::Map<const VectorXd>(p.objective.data(), m);
  VectorXd y = VectorXd::Zero(m);

  MatrixXd schur(m, m);
  VectorXd rp(m);          // c_j + <F_j, X>
  VectorXd fx(m);          // <F_j, X>
  VectorXd fwrw(m);        // <F_j, W rd W>
  VectorXd dy_aff(m), dy(m), rhs(m);

  auto fail = [&](const std::string& why) {
    res.status = SolveStatus::NumericalFailure;
    res.message = why;
  };

  int stall_count = 0;
  for (int it = 0;; ++it) {
    // residuals, objective values, termination metrics
    double mu_num = 0.0;
    double pres_sq = 0.0;
    double dval = 0.0;
    fx.setZero();
    for (int b = 0; b < nblocks; ++b) {
      BlockWork& wk = work[b];
      wk.rd = -wk.f0 - wk.s;
      for (const auto& [j, mat] : p.blocks[b].coeffs) {
        for (const auto& e : mat.entries) {
          wk.rd(e.row, e.col) += y[j] * e.value;
          if (e.row != e.col) wk.rd(e.col, e.row) += y[j] * e.value;
        }
        fx[j] += dot(mat, wk.x);
      }
      mu_num += wk.x.cwiseProduct(wk.s).sum();
      pres_sq += wk.rd.squaredNorm();
      dval -= wk.f0.cwiseProduct(wk.x).sum();
    }
    rp = c + fx;
    const double mu = mu_num / total_order;
    const double val = c.dot(y);
    const double pres = std::sqrt(pres_sq) / (1.0 + norm_f0);
    const double dres = rp.norm() / (1.0 + norm_c);
    const double gap = dval - val;
    const double rel_gap = gap / (1.0 + 0.5 * (std::abs(dval) + std::abs(val)));

    res.value = val;
    res.dual_value = dval;
    res.rel_gap = rel_gap;
    res.primal_residual = pres;
    res.dual_residual = dres;
    res.iterations = it;

    IterationInfo info;
    info.iteration = it;
    info.mu = mu;
    info.primal_residual = pres;
    info.dual_residual = dres;
    info.value = val;
    info.dual_value = dval;
    info.rel_gap = rel_gap;
    res.trace.push_back(info);

    if (!std::isfinite(mu) || !std::isfinite(val) || !std::isfinite(dval)) {
      fail("non-finite iterate");
      break;
    }
    if (std::abs(rel_gap) <= opts.gap_tol && pres <= opts.feas_tol && dres <= opts.feas_tol &&
        gap >= -1e-12 * (1.0 + std::abs(dval) + std::abs(val))) {
      res.status = SolveStatus::Optimal;
      break;
    }
    if (mu > 1e16 || pres_sq > 1e32) {
      fail("diverging iterates (mu or residual above 1e16)");
      break;
    }
    if (it >= opts.max_iter) {
      res.status = SolveStatus::MaxIterations;
      res.message = "iteration cap reached";
      break;
    }

    // Nesterov-Todd scaling per block: with X = LL', eigendecompose
    // L'SL = V diag(lam) V'; then G = LV diag(lam^{-1/4}) satisfies
    // G'SG = G^{-1}XG^{-T} = diag(sqrt(lam)).
    bool scale_ok = true;
    for (int b = 0; b < nblocks && scale_ok; ++b) {
      BlockWork& wk = work[b];
      wk.chol_x.compute(wk.x);
      wk.chol_s.compute(wk.s);
      if (wk.chol_x.info() != Eigen::Success || wk.chol_s.info() != Eigen::Success) {
        fail("iterate lost positive definiteness");
        scale_ok = false;
        break;
      }
      MatrixXd l = wk.chol_x.matrixL();
      MatrixXd h = l.transpose() * wk.s * l;
      Eigen::SelfAdjointEigenSolver<MatrixXd> es(0.5 * (h + h.transpose()));
      if (es.info() != Eigen::Success || es.eigenvalues().minCoeff() <= 0.0) {
        fail("scaling spectrum collapsed");
        scale_ok = false;
        break;
      }
      VectorXd lam = es.eigenvalues();
      wk.d = lam.cwiseSqrt();
      VectorXd quarter = lam.array().pow(0.25).matrix();
      wk.g.noalias() = l * es.eigenvectors();
      wk.g = wk.g * quarter.cwiseInverse().asDiagonal();
      // ginv = diag(lam^{1/4}) V' L^{-1}
      MatrixXd vt_linv = es.eigenvectors().transpose() *
                         l.triangularView<Eigen::Lower>()
                             .solve(MatrixXd::Identity(wk.order, wk.order));
      wk.ginv = quarter.asDiagonal() * vt_linv;
      wk.w.noalias() = wk.g * wk.g.transpose();
      wk.wrw.noalias() = wk.w * wk.rd * wk.w;
      wk.wrw = 0.5 * (wk.wrw + wk.wrw.transpose()).eval();
    }
    if (!scale_ok) break;

    // Schur complement B_jk = sum_b <F_j, W F_k W>, lower triangle.
    fwrw.setZero();
    for (int b = 0; b < nblocks; ++b)
      for (const auto& [j, mat] : p.blocks[b].coeffs) fwrw[j] += dot(mat, work[b].wrw);

    auto assemble_schur = [&]() {
      schur.setZero();
      for (int b = 0; b < nblocks; ++b) {
        BlockWork& wk = work[b];
        const auto& coeffs = p.blocks[b].coeffs;
        const int nv = static_cast<int>(coeffs.size());
        MatrixXd yk(wk.order, wk.order);
        for (int k = 0; k < nv; ++k) {
          const auto& [gk, fk] = coeffs[k];
          yk.setZero();
          for (const auto& e : fk.entries) {
            yk.noalias() += e.value * (wk.w.col(e.row) * wk.w.col(e.col).transpose());
            if (e.row != e.col)
              yk.noalias() += e.value * (wk.w.col(e.col) * wk.w.col(e.row).transpose());
          }
          for (int j = 0; j <= k; ++j)
            schur(gk, coeffs[j].first) += dot(coeffs[j].second, yk);
        }
      }
    };

    assemble_schur();
    // factor in place (the buffer is rebuilt each iteration anyway)
    std::optional<Eigen::LLT<Eigen::Ref<MatrixXd>>> llt;
    llt.emplace(schur);
    if (llt->info() != Eigen::Success) {
      assemble_schur();  // the failed factorization consumed the buffer
      double avg_diag = schur.trace() / m;
      schur.diagonal().array() += 1e-12 * std::max(1.0, avg_diag);
      llt.emplace(schur);
      if (llt->info() != Eigen::Success) {
        fail("Schur complement not positive definite after regularization");
        break;
      }
    }

    // One residual-correction pass against the matrix-free operator
    // v -> (<F_j, W (sum_k v_k F_k) W>)_j: the in-place factorization consumed
    // the Schur matrix, and near convergence its conditioning costs the plain
    // triangular solve the last couple of digits of dual feasibility.
    auto refine = [&](VectorXd& sol, const VectorXd& want) {
      VectorXd resid = want;
      for (int b = 0; b < nblocks; ++b) {
        BlockWork& wk = work[b];
        MatrixXd comb = MatrixXd::Zero(wk.order, wk.order);
        for (const auto& [j, mat] : p.blocks[b].coeffs)
          for (const auto& e : mat.entries) {
            comb(e.row, e.col) += sol[j] * e.value;
            if (e.row != e.col) comb(e.col, e.row) += sol[j] * e.value;
          }
        MatrixXd wcw = wk.w * comb * wk.w;
        for (const auto& [j, mat] : p.blocks[b].coeffs) resid[j] -= dot(mat, wcw);
      }
      llt->solveInPlace(resid);
      sol += resid;
    };

    // predictor: Rc = -X
    for (int j = 0; j < m; ++j) dy_aff[j] = c[j] - fwrw[j];
    rhs = dy_aff;
    llt->solveInPlace(dy_aff);
    refine(dy_aff, rhs);
    double alpha_p_aff = 1.0, alpha_d_aff = 1.0;
    for (int b = 0; b < nblocks; ++b) {
      BlockWork& wk = work[b];
      wk.ds_aff = wk.rd;
      for (const auto& [j, mat] : p.blocks[b].coeffs)
        for (const auto& e : mat.entries) {
          wk.ds_aff(e.row, e.col) += dy_aff[j] * e.value;
          if (e.row != e.col) wk.ds_aff(e.col, e.row) += dy_aff[j] * e.value;
        }
      wk.dx_aff.noalias() = -wk.x - wk.w * wk.ds_aff * wk.w;
      wk.dx_aff = 0.5 * (wk.dx_aff + wk.dx_aff.transpose()).eval();
      alpha_p_aff = std::min(alpha_p_aff, max_step(wk.chol_x, wk.dx_aff));
      alpha_d_aff = std::min(alpha_d_aff, max_step(wk.chol_s, wk.ds_aff));
    }
    double mu_aff = 0.0;
    for (int b = 0; b < nblocks; ++b) {
      BlockWork& wk = work[b];
      mu_aff += (wk.x + alpha_p_aff * wk.dx_aff)
                    .cwiseProduct(wk.s + alpha_d_aff * wk.ds_aff)
                    .sum();
    }
    mu_aff = std::max(mu_aff / total_order, 0.0);
    double sigma = std::clamp(std::pow(mu_aff / mu, 3.0), 0.0, 1.0);

    // corrector: in the scaled space both iterates equal diag(d), so the
    // linearized equation is a trivially solvable Lyapunov system.
    for (int j = 0; j < m; ++j) dy[j] = rp[j] - fwrw[j];
    for (int b = 0; b < nblocks; ++b) {
      BlockWork& wk = work[b];
      MatrixXd dxh = wk.ginv * wk.dx_aff * wk.ginv.transpose();
      MatrixXd dsh = wk.g.transpose() * wk.ds_aff * wk.g;
      MatrixXd mrhs = -0.5 * (dxh * dsh + dsh * dxh);
      mrhs.diagonal().array() += sigma * mu;
      mrhs.diagonal().array() -= wk.d.array().square();
      MatrixXd u(wk.order, wk.order);
      for (int r = 0; r < wk.order; ++r)
        for (int cidx = 0; cidx < wk.order; ++cidx)
          u(r, cidx) = 2.0 * mrhs(r, cidx) / (wk.d[r] + wk.d[cidx]);
      MatrixXd rc = wk.g * u * wk.g.transpose();
      rc = 0.5 * (rc + rc.transpose()).eval();
      wk.dx = rc;  // completed after dy is known
      for (const auto& [j, mat] : p.blocks[b].coeffs) dy[j] += dot(mat, rc);
    }
    rhs = dy;
    llt->solveInPlace(dy);
    refine(dy, rhs);

    double alpha_p = 1.0, alpha_d = 1.0;
    for (int b = 0; b < nblocks; ++b) {
      BlockWork& wk = work[b];
      wk.ds = wk.rd;
      for (const auto& [j, mat] : p.blocks[b].coeffs)
        for (const auto& e : mat.entries) {
          wk.ds(e.row, e.col) += dy[j] * e.value;
          if (e.row != e.col) wk.ds(e.col, e.row) += dy[j] * e.value;
        }
      wk.dx.noalias() -= wk.w * wk.ds * wk.w;
      wk.dx = 0.5 * (wk.dx + wk.dx.transpose()).eval();
      alpha_p = std::min(alpha_p, max_step(wk.chol_x, wk.dx));
      alpha_d = std::min(alpha_d, max_step(wk.chol_s, wk.ds));
    }
    alpha_p = std::min(1.0, 0.98 * alpha_p);
    alpha_d = std::min(1.0, 0.98 * alpha_d);
    if (alpha_p < 1e-10 && alpha_d < 1e-10) {
      if (++stall_count >= 3) {
        fail("step length collapsed");
        break;
      }
    } else {
      stall_count = 0;
    }

    for (int b = 0; b < nblocks; ++b) {
      BlockWork& wk = work[b];
      wk.x += alpha_p * wk.dx;
      wk.s += alpha_d * wk.ds;
      wk.x = 0.5 * (wk.x + wk.x.transpose()).eval();
      wk.s = 0.5 * (wk.s + wk.s.transpose()).eval();
    }
    y += alpha_d * dy;

    res.trace.back().step_primal = alpha_p;
    res.trace.back().step_dual = alpha_d;
    res.trace.back().sigma = sigma;
  }

  res.y.assign(y.data(), y.data() + m);
  res.slack.reserve(nblocks);
  res.dual.reserve(nblocks);
  for (int b = 0; b < nblocks; ++b) {
    res.slack.push_back(work[b].s);
    res.dual.push_back(work[b].x);
  }
  return res;
}

}  // namespace stabsdp
