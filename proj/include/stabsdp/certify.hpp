#pragma once

// Independent a-posteriori check of a solver result: everything is recomputed
// from the instance data, nothing is trusted from the solve itself except the
// final iterates.

#include <string>

#include "stabsdp/blocksdp.hpp"
#include "stabsdp/solver.hpp"

namespace stabsdp {

struct VerifyReport {
  bool pencil_psd = false;       // min eig of sum y_j F_j - F0 >= -tol*scale, every block
  bool multiplier_psd = false;   // min eig of X_b >= -tol*scale, every block
  bool multiplier_feasible = false;  // |<F_j, X> + c_j| <= tol*scale for every j
  bool gap_small = false;        // |dual - primal| <= tol*scale
  double min_pencil_eig = 0.0;
  double min_multiplier_eig = 0.0;
  double max_multiplier_residual = 0.0;
  double gap = 0.0;  // dual_value - value, recomputed
  std::string detail;

  bool pass() const {
    return pencil_psd && multiplier_psd && multiplier_feasible && gap_small;
  }
};

VerifyReport verify_solution(const BlockSDP& p, const SolveResult& r, double tol = 1e-7);

}  // namespace stabsdp
