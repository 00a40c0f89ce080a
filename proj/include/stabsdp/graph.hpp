#pragma once

#include <iosfwd>
#include <utility>
#include <vector>

#include "stabsdp/vertex_set.hpp"

namespace stabsdp {

// Simple undirected graph on {0, ..., n-1}, adjacency kept as bit sets.
class Graph {
 public:
  explicit Graph(int n);

  void add_edge(int u, int v);  // rejects loops and out-of-range endpoints
  int num_vertices() const { return n_; }
  int num_edges() const { return static_cast<int>(edges_.size()); }
  bool adjacent(int u, int v) const { return adj_[u].contains(v); }
  const VertexSet& neighbors(int v) const { return adj_[v]; }
  int degree(int v) const { return adj_[v].size(); }
  bool is_stable(const VertexSet& s) const;
  // Edge list sorted lexicographically, each edge as (min, max).
  const std::vector<std::pair<int, int>>& edges() const { return edges_; }

 private:
  int n_;
  std::vector<VertexSet> adj_;
  std::vector<std::pair<int, int>> edges_;  // kept sorted
};

// Paley graph on GF(q), q prime, q = 1 mod 4: u ~ v iff u - v is a nonzero
// square mod q. Throws UnsupportedFieldError for composite q and
// InvalidParameterError when q % 4 != 1.
Graph paley_graph(int q);

// Exact stability number by branch and bound; requires n <= 64.
int stability_number(const Graph& g);

// All stable sets of size <= r in canonical order (the empty set included).
std::vector<VertexSet> stable_subsets(const Graph& g, int r);

// Text format: "p <n> <m>" header, one "e <u> <v>" line per edge (0-based),
// "c ..." comments, blank lines ignored.
Graph read_graph(std::istream& in);
void write_graph(std::ostream& out, const Graph& g);
Graph load_graph_file(const std::string& path);

}  // namespace stabsdp
