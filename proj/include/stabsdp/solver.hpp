#pragma once

// Primal-dual interior-point solver for BlockSDP instances:
//   maximize c'y  s.t.  P_b(y) = sum_j y_j F_j^b - F0^b  psd for every block b.
// Self-scaled (Nesterov-Todd) search directions with a Mehrotra
// predictor-corrector step, dense Schur complement, dense Cholesky.
// Infeasible start; single-threaded and bitwise deterministic.

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "stabsdp/blocksdp.hpp"

namespace stabsdp {

struct SolveOptions {
  double gap_tol = 1e-8;   // relative duality gap
  double feas_tol = 1e-8;  // both feasibility residuals
  int max_iter = 200;
  double init_dual_shift = 0.0;    // S = shift*I; 0 picks 1 + max|F0|
  double init_primal_shift = 0.0;  // X = shift*I; 0 picks 1 + max|c|
};

enum class SolveStatus { Optimal, MaxIterations, NumericalFailure };

struct IterationInfo {
  int iteration = 0;
  double mu = 0.0;
  double primal_residual = 0.0;  // pencil side: ||P(y) - S||
  double dual_residual = 0.0;    // multiplier side: ||<F_j,X> + c_j||
  double value = 0.0;            // c'y
  double dual_value = 0.0;       // -<F0, X>
  double rel_gap = 0.0;
  double step_primal = 0.0;      // applied to X
  double step_dual = 0.0;        // applied to (y, S)
  double sigma = 0.0;
};

struct SolveResult {
  SolveStatus status = SolveStatus::NumericalFailure;
  double value = 0.0;       // c'y at the final iterate: the reported bound
  double dual_value = 0.0;  // -<F0, X>: upper side of the bracket
  std::vector<double> y;
  std::vector<Eigen::MatrixXd> slack;  // per block: the slack variable S_b
  std::vector<Eigen::MatrixXd> dual;   // per block: the multiplier X_b
  double rel_gap = 0.0;
  double primal_residual = 0.0;
  double dual_residual = 0.0;
  int iterations = 0;
  std::string message;
  std::vector<IterationInfo> trace;

  bool optimal() const { return status == SolveStatus::Optimal; }
};

// Throws ValidationError for malformed input (including variables that appear
// in no block); numerical breakdown is reported through the status field.
SolveResult solve(const BlockSDP& p, const SolveOptions& opts = {});

}  // namespace stabsdp
