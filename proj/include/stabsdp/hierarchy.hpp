#pragma once

// Relaxation builders for the maximum stable set problem and for general
// 0/1 polyhedral cones: the theta body, the block-diagonal subset
// hierarchies L^t and tildeL^t, the truncated moment (Lasserre) hierarchy,
// and two lift forms of the positive-semidefinite Lovasz-Schrijver
// operator.  Every builder assembles a symbolic program and compiles it
// to a BlockSDP with forced zero structure folded away, so the emitted
// problem keeps an interior point whenever the relaxation has one.

#include <cstdint>
#include <string_view>
#include <vector>

#include "stabsdp/cone.hpp"
#include "stabsdp/graph.hpp"
#include "stabsdp/solver.hpp"
#include "stabsdp/symbolic.hpp"

namespace stabsdp {

enum class HierarchyTag { Theta, Lt, TildeLt, Lasserre, NPlusExplicit, NPlusTh };

std::string_view tag_name(HierarchyTag tag);  // "theta", "Lt", "tildeLt", ...

struct RelaxationInstance {
  BlockSDP sdp;
  std::vector<VarInfo> vars;  // one entry per sdp variable, labels where meaningful
  HierarchyTag tag = HierarchyTag::Theta;
  int t = 1;
  int n = 0;       // number of vertices of the underlying graph / cone
  bool nonneg = false;
  double objective_offset = 0.0;
};

// The relaxation value represented by a solver result.
double relaxation_bound(const RelaxationInstance& inst, const SolveResult& r);

// Theta body: one block of order n+1 over variables x_i and y_ij (non-edge
// pairs); maximizing gives the theta number of the graph.
RelaxationInstance build_theta(const Graph& g);

// Level-t subset hierarchy of a graph: variables are the stable sets of
// size <= t+1, and for every (t-1)-subset T and stable S <= T one shifted
// alternating-sum block A(S,T)(y) of order n+1 (blocks that are
// structurally zero or duplicated are dropped).  Level 1 emits exactly the
// theta body.  With nonneg set, every variable also gets a 1x1 block
// y_I >= 0.
RelaxationInstance build_Lt_graph(const Graph& g, int t, bool nonneg = false);

// Same feasible set built without eliminating edge-indexed variables:
// every subset of size <= t+1 is a variable and each edge pair contributes
// the two opposing scalar rows y_ij >= 0, -y_ij >= 0.  compile() folds the
// equalities back out; exists to validate that the elimination is sound.
RelaxationInstance build_Lt_graph_explicit(const Graph& g, int t);

// Truncated moment relaxation of a polyhedral cone: variables y over
// subsets of size <= 2t, the full moment matrix of order sum_{i<=t} C(n,i)
// plus one localizing block per cone row.
RelaxationInstance build_lasserre(const PolyhedralCone& k, int t);

// Moment relaxation specialized to a graph: a single moment block over
// stable rows with edge-indexed entries zeroed.  For the fractional stable
// set cone this describes the same set as build_lasserre(fr_cone(g), t).
RelaxationInstance build_lasserre_graph(const Graph& g, int t);

// Subset hierarchy with explicit cone conditions: blocks A(S,T)(y) for all
// S <= T, |T| = t-1, and for every (S,T), vertex i and cone row a the two
// scalar rows  a'A(S,T)(y)e_i >= 0  and  a'A(S,T)(y)(e_0 - e_i) >= 0.
RelaxationInstance build_tildeLt(const PolyhedralCone& k, int t);

// One round of the positive-semidefinite lift-and-project operator applied
// to the theta body of a graph: a root block plus, for every vertex i, the
// two certificate blocks for the columns Ye_i and Y(e_0 - e_i), with the
// linking equalities substituted away and forced-zero rows removed.
RelaxationInstance build_nplus_th(const Graph& g);

// t rounds of the same operator on a polyhedral cone, written with one
// block per certificate matrix in the recursion tree (depth < t) and the
// cone conditions of the leaves as scalar rows.  Grows like (2n)^t, hence
// the tight capacity cap.
RelaxationInstance build_nplus_explicit(const PolyhedralCone& k, int t);

// Closed-form formulation sizes.  "variables" counts subset coordinates
// (unit included) for the subset-indexed hierarchies and free matrix
// entries for the lift forms; "matrices" counts PSD blocks before any
// structural reduction; "memberships" counts cone-membership conditions.
// For tildeLt and nplus-explicit the commonly quoted closed forms are
// attached for comparison; the match flags record where they disagree
// with first-principles counting.
struct FormulationStats {
  HierarchyTag tag = HierarchyTag::Theta;
  int n = 0;
  int t = 0;
  std::uint64_t variables = 0;
  std::uint64_t matrices = 0;
  std::uint64_t block_order = 0;  // order of the (largest) PSD blocks
  std::uint64_t memberships = 0;
  bool has_reference = false;
  std::uint64_t ref_variables = 0;
  std::uint64_t ref_matrices = 0;
  std::uint64_t ref_memberships = 0;
  bool variables_match = false;
  bool matrices_match = false;
  bool memberships_match = false;
};

// sum_{s=0}^{t-1} (2n)^s: number of certificate matrices in the depth-t
// recursion tree.
std::uint64_t h_count(int n, int t);

FormulationStats formulation_stats(HierarchyTag tag, int n, int t);

// Actual sizes of an emitted instance.
struct InstanceStats {
  int variables = 0;
  int blocks = 0;
  int max_order = 0;
  std::uint64_t nonzeros = 0;  // stored lower-triangle coefficient entries
};

InstanceStats instance_stats(const RelaxationInstance& inst);

}  // namespace stabsdp
