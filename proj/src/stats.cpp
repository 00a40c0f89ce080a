#include <algorithm>

#include "stabsdp/hierarchy.hpp"

namespace stabsdp {

namespace {

// sum_{i=0}^{min(r,n)} C(n,i)
std::uint64_t subset_count(int n, int r) {
  std::uint64_t total = 0;
  for (int i = 0; i <= std::min(r, n); ++i) {
    const std::uint64_t term = binomial(n, i);
    if (total > UINT64_MAX - term) throw CapacityError("subset count: overflow");
    total += term;
  }
  return total;
}

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > UINT64_MAX / a) throw CapacityError("formulation size: overflow");
  return a * b;
}

std::uint64_t pow_u64(std::uint64_t base, int e) {
  std::uint64_t r = 1;
  for (int i = 0; i < e; ++i) r = checked_mul(r, base);
  return r;
}

}  // namespace

std::uint64_t h_count(int n, int t) {
  std::uint64_t total = 0, p = 1;
  for (int s = 0; s < t; ++s) {
    if (total > UINT64_MAX - p) throw CapacityError("h_count: overflow");
    total += p;
    p = checked_mul(p, std::uint64_t(2) * n);
  }
  return total;
}

FormulationStats formulation_stats(HierarchyTag tag, int n, int t) {
  if (n < 1) throw InvalidParameterError("formulation_stats: n must be >= 1");
  if (t < 1) throw InvalidParameterError("formulation_stats: level must be >= 1");
  FormulationStats fs;
  fs.tag = tag;
  fs.n = n;
  fs.t = t;
  switch (tag) {
    case HierarchyTag::Theta:
      fs.variables = subset_count(n, 2);
      fs.matrices = 1;
      fs.block_order = n + 1;
      break;
    case HierarchyTag::Lt:
      fs.variables = subset_count(n, t + 1);
      fs.matrices = checked_mul(binomial(n, t - 1), pow_u64(2, t - 1));
      fs.block_order = n + 1;
      break;
    case HierarchyTag::TildeLt:
      fs.variables = subset_count(n, t + 1);
      fs.matrices = checked_mul(binomial(n, t - 1), pow_u64(2, t - 1));
      fs.block_order = n + 1;
      // each block tests 2n vectors for cone membership
      fs.memberships = checked_mul(fs.matrices, std::uint64_t(2) * n);
      fs.has_reference = true;
      fs.ref_variables = fs.variables;
      fs.ref_matrices = fs.matrices;
      // the quoted closed form lacks the factor n from the choice of column
      fs.ref_memberships = checked_mul(binomial(n, t - 1), pow_u64(2, t));
      break;
    case HierarchyTag::Lasserre:
      fs.variables = subset_count(n, 2 * t);
      fs.matrices = 1;  // localizing blocks depend on the cone's row count
      fs.block_order = subset_count(n, t);
      break;
    case HierarchyTag::NPlusExplicit:
      // C(n,2) free off-diagonal entries per certificate matrix, one matrix
      // per recursion node of depth < t, 2n membership tests per leaf
      fs.variables = checked_mul(binomial(n, 2), h_count(n, t));
      fs.matrices = h_count(n, t);
      fs.block_order = n + 1;
      fs.memberships = pow_u64(std::uint64_t(2) * n, t);
      fs.has_reference = true;
      // the quoted closed forms sum the recursion sizes one level too deep
      fs.ref_variables = checked_mul(binomial(n, 2), h_count(n, t + 1));
      fs.ref_matrices = h_count(n, t + 1);
      fs.ref_memberships = checked_mul(pow_u64(2, t), pow_u64(n, t));
      break;
    case HierarchyTag::NPlusTh:
      fs.variables = subset_count(n, 2) + checked_mul(std::uint64_t(2) * n, binomial(n - 1, 2));
      fs.matrices = 1 + std::uint64_t(2) * n;
      fs.block_order = n + 1;
      break;
  }
  if (fs.has_reference) {
    fs.variables_match = fs.variables == fs.ref_variables;
    fs.matrices_match = fs.matrices == fs.ref_matrices;
    fs.memberships_match = fs.memberships == fs.ref_memberships;
  }
  return fs;
}

InstanceStats instance_stats(const RelaxationInstance& inst) {
  InstanceStats st;
  st.variables = inst.sdp.num_vars;
  st.blocks = static_cast<int>(inst.sdp.blocks.size());
  for (const SDPBlock& b : inst.sdp.blocks) {
    st.max_order = std::max(st.max_order, b.order);
    st.nonzeros += b.constant.entries.size();
    for (const auto& [v, mat] : b.coeffs) st.nonzeros += mat.entries.size();
  }
  return st;
}

}  // namespace stabsdp
