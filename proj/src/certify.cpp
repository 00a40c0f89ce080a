#include "stabsdp/certify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "stabsdp/moment.hpp"

namespace stabsdp {

VerifyReport verify_solution(const BlockSDP& p, const SolveResult& r, double tol) {
  p.validate();
  if (static_cast<int>(r.y.size()) != p.num_vars)
    throw InvalidParameterError("verify_solution: y length does not match instance");
  if (r.dual.size() != p.blocks.size())
    throw InvalidParameterError("verify_solution: multiplier count does not match instance");

  VerifyReport rep;
  double min_pencil = std::numeric_limits<double>::infinity();
  double min_mult = std::numeric_limits<double>::infinity();
  double value = 0.0, dual_value = 0.0;
  for (int j = 0; j < p.num_vars; ++j) value += p.objective[j] * r.y[j];

  std::vector<double> fx(p.num_vars, 0.0);
  double pencil_scale = 1.0, mult_scale = 1.0;
  for (size_t b = 0; b < p.blocks.size(); ++b) {
    const SDPBlock& blk = p.blocks[b];
    Eigen::MatrixXd pencil = -to_dense(blk.constant, blk.order);
    for (const auto& [j, mat] : blk.coeffs) {
      Eigen::MatrixXd fj = to_dense(mat, blk.order);
      pencil += r.y[j] * fj;
      fx[j] += fj.cwiseProduct(r.dual[b]).sum();
    }
    dual_value -= to_dense(blk.constant, blk.order).cwiseProduct(r.dual[b]).sum();
    min_pencil = std::min(min_pencil, min_eigenvalue(pencil));
    min_mult = std::min(min_mult, min_eigenvalue(r.dual[b]));
    pencil_scale = std::max(pencil_scale, pencil.cwiseAbs().maxCoeff());
    mult_scale = std::max(mult_scale, r.dual[b].cwiseAbs().maxCoeff());
  }
  double max_res = 0.0;
  double obj_scale = 1.0;
  for (int j = 0; j < p.num_vars; ++j) {
    max_res = std::max(max_res, std::abs(fx[j] + p.objective[j]));
    obj_scale = std::max(obj_scale, std::abs(p.objective[j]));
  }

  rep.min_pencil_eig = min_pencil;
  rep.min_multiplier_eig = min_mult;
  rep.max_multiplier_residual = max_res;
  rep.gap = dual_value - value;

  rep.pencil_psd = min_pencil >= -tol * pencil_scale;
  rep.multiplier_psd = min_mult >= -tol * std::max(1.0, mult_scale);
  rep.multiplier_feasible = max_res <= tol * std::max({1.0, obj_scale, mult_scale});
  rep.gap_small =
      std::abs(rep.gap) <= tol * (1.0 + std::abs(value) + std::abs(dual_value));

  std::ostringstream os;
  os << "pencil min eig " << min_pencil << ", multiplier min eig " << min_mult
     << ", multiplier residual " << max_res << ", gap " << rep.gap;
  rep.detail = os.str();
  return rep;
}

}  // namespace stabsdp
