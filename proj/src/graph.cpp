#include "stabsdp/graph.hpp"

#include <algorithm>
#include <bit>
#include <cassert>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace stabsdp {

Graph::Graph(int n) : n_(n) {
  if (n < 0) throw InvalidParameterError("Graph: negative vertex count");
  if (n > VertexSet::capacity)
    throw CapacityError("Graph: vertex count " + std::to_string(n) + " exceeds 128");
  adj_.resize(n);
}

void Graph::add_edge(int u, int v) {
  if (u < 0 || u >= n_ || v < 0 || v >= n_)
    throw InvalidParameterError("add_edge: endpoint out of range");
  if (u == v) throw InvalidParameterError("add_edge: loop at vertex " + std::to_string(u));
  if (adj_[u].contains(v)) return;  // already present
  adj_[u] = adj_[u].with(v);
  adj_[v] = adj_[v].with(u);
  std::pair<int, int> e{std::min(u, v), std::max(u, v)};
  edges_.insert(std::lower_bound(edges_.begin(), edges_.end(), e), e);
}

bool Graph::is_stable(const VertexSet& s) const {
  for (int v : s.elements())
    if (adj_[v].intersects(s)) return false;
  return true;
}

namespace {

bool is_prime(int q) {
  if (q < 2) return false;
  for (int d = 2; int64_t(d) * d <= q; ++d)
    if (q % d == 0) return false;
  return true;
}

}  // namespace

Graph paley_graph(int q) {
  if (!is_prime(q))
    throw UnsupportedFieldError("paley_graph: " + std::to_string(q) +
                                " is not prime (prime fields only)");
  if (q % 4 != 1)
    throw InvalidParameterError("paley_graph: " + std::to_string(q) +
                                " is not congruent to 1 mod 4");
  Graph g(q);
  std::vector<bool> is_square(q, false);
  for (int k = 1; k <= (q - 1) / 2; ++k) is_square[int(int64_t(k) * k % q)] = true;
  for (int u = 0; u < q; ++u)
    for (int v = u + 1; v < q; ++v)
      if (is_square[(v - u) % q]) g.add_edge(u, v);
  return g;
}

namespace {

// Branch and bound for a maximum stable set on <= 64 vertices.
struct MisSearch {
  std::vector<uint64_t> nbr;  // closed in the take-branch via nbr | self
  int best = 0;

  int greedy(uint64_t cand) const {
    int size = 0;
    while (cand != 0) {
      // min-degree-within-candidates vertex
      int pick = -1, pick_deg = 65;
      for (uint64_t w = cand; w != 0; w &= w - 1) {
        int v = std::countr_zero(w);
        int d = std::popcount(nbr[v] & cand);
        if (d < pick_deg) {
          pick_deg = d;
          pick = v;
        }
      }
      cand &= ~(nbr[pick] | (uint64_t(1) << pick));
      ++size;
    }
    return size;
  }

  void expand(uint64_t cand, int cur) {
    if (cur > best) best = cur;
    while (cand != 0) {
      if (cur + std::popcount(cand) <= best) return;
      // branch on a max-degree vertex: taking it shrinks cand the most
      int pick = -1, pick_deg = -1;
      for (uint64_t w = cand; w != 0; w &= w - 1) {
        int v = std::countr_zero(w);
        int d = std::popcount(nbr[v] & cand);
        if (d > pick_deg) {
          pick_deg = d;
          pick = v;
        }
      }
      uint64_t bit = uint64_t(1) << pick;
      expand(cand & ~(nbr[pick] | bit), cur + 1);
      cand &= ~bit;
    }
  }
};

}  // namespace

int stability_number(const Graph& g) {
  int n = g.num_vertices();
  if (n > 64) throw CapacityError("stability_number: graph exceeds 64 vertices");
  if (n == 0) return 0;
  MisSearch s;
  s.nbr.resize(n);
  for (int v = 0; v < n; ++v)
    s.nbr[v] = static_cast<uint64_t>(g.neighbors(v).bits());
  uint64_t all = (n == 64) ? ~uint64_t(0) : ((uint64_t(1) << n) - 1);
  s.best = s.greedy(all);
  s.expand(all, 0);
  return s.best;
}

std::vector<VertexSet> stable_subsets(const Graph& g, int r) {
  if (r < 0) throw InvalidParameterError("stable_subsets: negative size bound");
  std::vector<VertexSet> out;
  for (const VertexSet& s : enumerate_subsets(g.num_vertices(), r))
    if (g.is_stable(s)) out.push_back(s);
  return out;
}

Graph read_graph(std::istream& in) {
  std::string line;
  int lineno = 0;
  int n = -1, m = -1;
  int seen_edges = 0;
  Graph g(0);
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string tok;
    if (!(ls >> tok)) continue;  // blank line
    if (tok == "c") continue;
    if (tok == "p") {
      if (n >= 0) throw ParseError("duplicate problem line", lineno);
      if (!(ls >> n >> m) || n < 0 || m < 0)
        throw ParseError("expected 'p <n> <m>'", lineno);
      try {
        g = Graph(n);
      } catch (const Error& e) {
        throw ParseError(e.what(), lineno);
      }
      continue;
    }
    if (tok == "e") {
      if (n < 0) throw ParseError("edge before problem line", lineno);
      int u, v;
      if (!(ls >> u >> v)) throw ParseError("expected 'e <u> <v>'", lineno);
      if (u < 0 || u >= n || v < 0 || v >= n)
        throw ParseError("edge endpoint out of range", lineno);
      if (u == v) throw ParseError("loop edge", lineno);
      int before = g.num_edges();
      g.add_edge(u, v);
      if (g.num_edges() == before) throw ParseError("duplicate edge", lineno);
      ++seen_edges;
      continue;
    }
    throw ParseError("unknown record '" + tok + "'", lineno);
  }
  if (n < 0) throw ParseError("missing problem line", lineno == 0 ? 1 : lineno);
  if (seen_edges != m)
    throw ParseError("edge count mismatch: header says " + std::to_string(m) + ", found " +
                         std::to_string(seen_edges),
                     lineno);
  return g;
}

void write_graph(std::ostream& out, const Graph& g) {
  out << "p " << g.num_vertices() << " " << g.num_edges() << "\n";
  for (auto [u, v] : g.edges()) out << "e " << u << " " << v << "\n";
}

Graph load_graph_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open graph file: " + path);
  return read_graph(in);
}

}  // namespace stabsdp
