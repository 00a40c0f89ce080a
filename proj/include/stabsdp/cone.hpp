#pragma once

#include <vector>

#include "stabsdp/graph.hpp"

namespace stabsdp {

// Homogeneous polyhedral cone {x in R^{n+1} : A x >= 0} over the coordinates
// (x_0, x_1, ..., x_n); index 0 is the homogenization coordinate.
struct PolyhedralCone {
  int n = 0;                             // number of vertex coordinates
  std::vector<std::vector<double>> rows;  // each of length n + 1

  PolyhedralCone() = default;
  explicit PolyhedralCone(int n_) : n(n_) {}

  // Appends a row of length n+1; exact duplicates are dropped.
  void add_row(std::vector<double> a);
};

// Fractional stable set cone of a graph: rows x_i >= 0 for every vertex and
// x_0 - x_u - x_v >= 0 for every edge.
PolyhedralCone fr_cone(const Graph& g);

// Max of c over { (1, x) : x in {0,1}^n, (1, x) in K }, with c indexed like
// the cone rows (c[0] is a constant term). Returns -infinity when no 0/1
// point is feasible. Requires n <= 20.
double zero_one_optimum(const PolyhedralCone& k, const std::vector<double>& c);

}  // namespace stabsdp
