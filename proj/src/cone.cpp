#include "stabsdp/cone.hpp"

#include <cmath>
#include <limits>

namespace stabsdp {

void PolyhedralCone::add_row(std::vector<double> a) {
  if (static_cast<int>(a.size()) != n + 1)
    throw InvalidParameterError("PolyhedralCone::add_row: row length " +
                                std::to_string(a.size()) + " != " + std::to_string(n + 1));
  for (const auto& r : rows)
    if (r == a) return;
  rows.push_back(std::move(a));
}

PolyhedralCone fr_cone(const Graph& g) {
  int n = g.num_vertices();
  PolyhedralCone k(n);
  for (int i = 0; i < n; ++i) {
    std::vector<double> row(n + 1, 0.0);
    row[i + 1] = 1.0;
    k.add_row(std::move(row));
  }
  for (auto [u, v] : g.edges()) {
    std::vector<double> row(n + 1, 0.0);
    row[0] = 1.0;
    row[u + 1] = -1.0;
    row[v + 1] = -1.0;
    k.add_row(std::move(row));
  }
  return k;
}

double zero_one_optimum(const PolyhedralCone& k, const std::vector<double>& c) {
  if (k.n > 20) throw CapacityError("zero_one_optimum: n > 20");
  if (static_cast<int>(c.size()) != k.n + 1)
    throw InvalidParameterError("zero_one_optimum: objective length mismatch");
  double best = -std::numeric_limits<double>::infinity();
  for (uint64_t mask = 0; mask < (uint64_t(1) << k.n); ++mask) {
    bool ok = true;
    for (const auto& row : k.rows) {
      double v = row[0];
      for (int i = 0; i < k.n; ++i)
        if ((mask >> i) & 1) v += row[i + 1];
      if (v < -1e-12) {
        ok = false;
        break;
      }
    }
    if (!ok) continue;
    double val = c[0];
    for (int i = 0; i < k.n; ++i)
      if ((mask >> i) & 1) val += c[i + 1];
    best = std::max(best, val);
  }
  return best;
}

}  // namespace stabsdp
