#include "stabsdp/hierarchy.hpp"

#include <algorithm>
#include <unordered_map>
#include <utility>

namespace stabsdp {

std::string_view tag_name(HierarchyTag tag) {
  switch (tag) {
    case HierarchyTag::Theta: return "theta";
    case HierarchyTag::Lt: return "Lt";
    case HierarchyTag::TildeLt: return "tildeLt";
    case HierarchyTag::Lasserre: return "lasserre";
    case HierarchyTag::NPlusExplicit: return "nplus-explicit";
    case HierarchyTag::NPlusTh: return "nplus-th";
  }
  return "?";
}

double relaxation_bound(const RelaxationInstance& inst, const SolveResult& r) {
  return r.value + inst.objective_offset;
}

namespace {

// Subset-indexed variable pool with y_{} = 1 folded in.  Keys outside the
// pool read as zero, so the same entry formulas run over the full subset
// domain and over the stable-sets-only domain.
struct MomentVars {
  SymbolicSDP prog;
  std::unordered_map<VertexSet, int, VertexSetHash> index;

  void ensure(const VertexSet& I) {
    if (I.empty() || index.count(I)) return;
    index.emplace(I, prog.add_var("y" + I.str(), I));
  }

  LinExpr expr(const VertexSet& I) const {
    if (I.empty()) return LinExpr(1.0);
    auto it = index.find(I);
    if (it == index.end()) return LinExpr(0.0);
    return LinExpr::variable(it->second);
  }

  void set_objective(int n) {
    for (int i = 0; i < n; ++i)
      prog.objective.add_term(index.at(VertexSet::single(i)), 1.0);
  }
};

// Alternating sum over S <= S' <= T of the shifted principal block of S':
// entry (0,0) reads y_{S'}, (0,1+i) reads y_{S'+i}, (1+i,1+j) reads
// y_{S'+i+j}, each weighted by (-1)^{|S'\S|}.
SymBlock shifted_block(const MomentVars& mv, const VertexSet& S, const VertexSet& T, int n) {
  SymBlock b(n + 1);
  const auto deltas = subsets_of(T.set_minus(S));
  for (int r = 0; r <= n; ++r)
    for (int c = r; c <= n; ++c) {
      LinExpr e;
      for (const VertexSet& d : deltas) {
        VertexSet key = S.set_union(d);
        if (r > 0) key = key.with(r - 1);
        if (c > 0) key = key.with(c - 1);
        e.add(mv.expr(key), d.size() % 2 == 0 ? 1.0 : -1.0);
      }
      b.set(r, c, std::move(e));
    }
  return b;
}

RelaxationInstance finish(MomentVars&& mv, HierarchyTag tag, int t, int n, bool nonneg) {
  mv.set_objective(n);
  CompileResult cr = compile(mv.prog);
  RelaxationInstance inst;
  inst.sdp = std::move(cr.sdp);
  inst.vars = std::move(cr.vars);
  inst.tag = tag;
  inst.t = t;
  inst.n = n;
  inst.nonneg = nonneg;
  inst.objective_offset = cr.objective_offset;
  return inst;
}

RelaxationInstance build_Lt_common(const Graph& g, int t, bool nonneg, bool eliminate,
                                   HierarchyTag tag) {
  const int n = g.num_vertices();
  MomentVars mv;
  for (const VertexSet& I : eliminate ? stable_subsets(g, t + 1) : enumerate_subsets(n, t + 1))
    mv.ensure(I);
  const int ts = std::min(t - 1, n);
  for (const VertexSet& T : enumerate_subsets(n, ts)) {
    if (T.size() != ts) continue;
    for (const VertexSet& S : subsets_of(T)) {
      if (eliminate && !g.is_stable(S)) continue;  // structurally zero block
      mv.prog.add_block(shifted_block(mv, S, T, n));
    }
  }
  if (!eliminate)
    for (auto [u, v] : g.edges()) {
      const int e = mv.index.at(VertexSet::of({u, v}));
      mv.prog.add_scalar(LinExpr::variable(e));
      mv.prog.add_scalar(LinExpr::variable(e, -1.0));
    }
  if (nonneg)
    for (int v = 0; v < static_cast<int>(mv.prog.vars.size()); ++v)
      mv.prog.add_scalar(LinExpr::variable(v));
  return finish(std::move(mv), tag, t, n, nonneg);
}

}  // namespace

RelaxationInstance build_theta(const Graph& g) {
  return build_Lt_common(g, 1, false, true, HierarchyTag::Theta);
}

RelaxationInstance build_Lt_graph(const Graph& g, int t, bool nonneg) {
  if (t < 1) throw InvalidParameterError("hierarchy level must be >= 1");
  return build_Lt_common(g, t, nonneg, true, HierarchyTag::Lt);
}

RelaxationInstance build_Lt_graph_explicit(const Graph& g, int t) {
  if (t < 1) throw InvalidParameterError("hierarchy level must be >= 1");
  return build_Lt_common(g, t, false, false, HierarchyTag::Lt);
}

namespace {

RelaxationInstance build_lasserre_common(const PolyhedralCone* k, const Graph* g, int t) {
  const int n = k ? k->n : g->num_vertices();
  if (t < 1) throw InvalidParameterError("hierarchy level must be >= 1");
  if (t >= 2 && n > 16)
    throw CapacityError("moment relaxation limited to n <= 16 for t >= 2");
  MomentVars mv;
  for (const VertexSet& I : g ? stable_subsets(*g, 2 * t) : enumerate_subsets(n, 2 * t))
    mv.ensure(I);
  const auto rows = g ? stable_subsets(*g, t) : enumerate_subsets(n, t);
  SymBlock moment(static_cast<int>(rows.size()));
  for (size_t r = 0; r < rows.size(); ++r)
    for (size_t c = r; c < rows.size(); ++c)
      moment.set(static_cast<int>(r), static_cast<int>(c),
                 mv.expr(rows[r].set_union(rows[c])));
  mv.prog.add_block(std::move(moment));
  if (k) {
    const auto locrows = enumerate_subsets(n, t - 1);
    for (const auto& a : k->rows) {
      SymBlock loc(static_cast<int>(locrows.size()));
      for (size_t r = 0; r < locrows.size(); ++r)
        for (size_t c = r; c < locrows.size(); ++c) {
          const VertexSet u = locrows[r].set_union(locrows[c]);
          LinExpr e;
          if (a[0] != 0.0) e.add(mv.expr(u), a[0]);
          for (int i = 0; i < n; ++i)
            if (a[1 + i] != 0.0) e.add(mv.expr(u.with(i)), a[1 + i]);
          loc.set(static_cast<int>(r), static_cast<int>(c), std::move(e));
        }
      mv.prog.add_block(std::move(loc));
    }
  }
  return finish(std::move(mv), HierarchyTag::Lasserre, t, n, false);
}

}  // namespace

RelaxationInstance build_lasserre(const PolyhedralCone& k, int t) {
  return build_lasserre_common(&k, nullptr, t);
}

RelaxationInstance build_lasserre_graph(const Graph& g, int t) {
  return build_lasserre_common(nullptr, &g, t);
}

RelaxationInstance build_tildeLt(const PolyhedralCone& k, int t) {
  if (t < 1) throw InvalidParameterError("hierarchy level must be >= 1");
  const int n = k.n;
  MomentVars mv;
  for (const VertexSet& I : enumerate_subsets(n, t + 1)) mv.ensure(I);
  const int ts = std::min(t - 1, n);
  for (const VertexSet& T : enumerate_subsets(n, ts)) {
    if (T.size() != ts) continue;
    for (const VertexSet& S : subsets_of(T)) {
      SymBlock b = shifted_block(mv, S, T, n);
      mv.prog.add_block(b);
      // every column of the block and its complement against column 0 must
      // satisfy all cone rows
      for (int i = 0; i < n; ++i)
        for (const auto& a : k.rows) {
          LinExpr ci, cdiff;
          for (int r = 0; r <= n; ++r) {
            if (a[r] == 0.0) continue;
            ci.add(b.at(r, 1 + i), a[r]);
            cdiff.add(b.at(r, 0) - b.at(r, 1 + i), a[r]);
          }
          mv.prog.add_scalar(std::move(ci));
          mv.prog.add_scalar(std::move(cdiff));
        }
    }
  }
  return finish(std::move(mv), HierarchyTag::TildeLt, t, n, false);
}

RelaxationInstance build_nplus_th(const Graph& g) {
  const int n = g.num_vertices();
  if (n > 20) throw CapacityError("lift on the theta body limited to n <= 20");
  MomentVars mv;
  for (const VertexSet& I : stable_subsets(g, 2)) mv.ensure(I);
  mv.prog.add_block(shifted_block(mv, VertexSet(), VertexSet(), n));
  for (int i = 0; i < n; ++i) {
    // certificate for column Ye_i: the duplicated column i is folded onto
    // index 0 and rows of neighbors of i are forced zero, so the block
    // lives on 0 and the non-neighbors of i
    std::vector<int> keep;
    for (int v = 0; v < n; ++v)
      if (v != i && !g.adjacent(i, v)) keep.push_back(v);
    SymBlock cert(static_cast<int>(keep.size()) + 1);
    cert.set(0, 0, mv.expr(VertexSet::single(i)));
    for (size_t p = 0; p < keep.size(); ++p) {
      LinExpr link = mv.expr(VertexSet::of({i, keep[p]}));
      cert.set(0, 1 + static_cast<int>(p), link);
      cert.set(1 + static_cast<int>(p), 1 + static_cast<int>(p), std::move(link));
      for (size_t q = p + 1; q < keep.size(); ++q) {
        LinExpr e;
        if (!g.adjacent(keep[p], keep[q]))
          e = LinExpr::variable(mv.prog.add_var(
              "u" + std::to_string(i) + VertexSet::of({keep[p], keep[q]}).str()));
        cert.set(1 + static_cast<int>(p), 1 + static_cast<int>(q), std::move(e));
      }
    }
    mv.prog.add_block(std::move(cert));
    // certificate for column Y(e_0 - e_i): row i is forced zero and dropped
    std::vector<int> rest;
    for (int v = 0; v < n; ++v)
      if (v != i) rest.push_back(v);
    SymBlock comp(static_cast<int>(rest.size()) + 1);
    comp.set(0, 0, LinExpr(1.0) - mv.expr(VertexSet::single(i)));
    for (size_t p = 0; p < rest.size(); ++p) {
      LinExpr link = mv.expr(VertexSet::single(rest[p])) - mv.expr(VertexSet::of({i, rest[p]}));
      comp.set(0, 1 + static_cast<int>(p), link);
      comp.set(1 + static_cast<int>(p), 1 + static_cast<int>(p), std::move(link));
      for (size_t q = p + 1; q < rest.size(); ++q) {
        LinExpr e;
        if (!g.adjacent(rest[p], rest[q]))
          e = LinExpr::variable(mv.prog.add_var(
              "v" + std::to_string(i) + VertexSet::of({rest[p], rest[q]}).str()));
        comp.set(1 + static_cast<int>(p), 1 + static_cast<int>(q), std::move(e));
      }
    }
    mv.prog.add_block(std::move(comp));
  }
  return finish(std::move(mv), HierarchyTag::NPlusTh, 1, n, false);
}

RelaxationInstance build_nplus_explicit(const PolyhedralCone& k, int t) {
  if (t < 1) throw InvalidParameterError("lift level must be >= 1");
  if (t > 2 || k.n > 8)
    throw CapacityError("explicit lift limited to t <= 2 and n <= 8");
  const int n = k.n;
  MomentVars mv;
  for (const VertexSet& I : enumerate_subsets(n, 2)) mv.ensure(I);
  SymBlock root = shifted_block(mv, VertexSet(), VertexSet(), n);
  mv.prog.add_block(root);

  // one certificate block per recursion branch (vertex i, direction +/-),
  // stored with the forced degeneracies folded: the + branch duplicates
  // column i onto column 0, the - branch loses row i entirely
  struct Child {
    SymBlock block;
    std::vector<int> map;  // full index -> folded index, -1 = forced zero
  };
  std::vector<Child> children;
  if (t == 2) {
    for (int i = 0; i < n; ++i) {
      std::vector<int> keep;
      for (int v = 0; v < n; ++v)
        if (v != i) keep.push_back(v);
      auto pair_var = [&](char sign, int a, int b) {
        return LinExpr::variable(mv.prog.add_var(
            std::string("w") + sign + std::to_string(i) + VertexSet::of({a, b}).str()));
      };
      Child plus;
      plus.block = SymBlock(n);
      plus.block.set(0, 0, mv.expr(VertexSet::single(i)));
      for (size_t p = 0; p < keep.size(); ++p) {
        LinExpr link = mv.expr(VertexSet::of({i, keep[p]}));
        plus.block.set(0, 1 + static_cast<int>(p), link);
        plus.block.set(1 + static_cast<int>(p), 1 + static_cast<int>(p), std::move(link));
        for (size_t q = p + 1; q < keep.size(); ++q)
          plus.block.set(1 + static_cast<int>(p), 1 + static_cast<int>(q),
                         pair_var('+', keep[p], keep[q]));
      }
      plus.map.assign(n + 1, 0);
      for (size_t p = 0; p < keep.size(); ++p) plus.map[1 + keep[p]] = 1 + static_cast<int>(p);
      plus.map[1 + i] = 0;  // duplicated column reads column 0

      Child minus;
      minus.block = SymBlock(n);
      minus.block.set(0, 0, LinExpr(1.0) - mv.expr(VertexSet::single(i)));
      for (size_t p = 0; p < keep.size(); ++p) {
        LinExpr link =
            mv.expr(VertexSet::single(keep[p])) - mv.expr(VertexSet::of({i, keep[p]}));
        minus.block.set(0, 1 + static_cast<int>(p), link);
        minus.block.set(1 + static_cast<int>(p), 1 + static_cast<int>(p), std::move(link));
        for (size_t q = p + 1; q < keep.size(); ++q)
          minus.block.set(1 + static_cast<int>(p), 1 + static_cast<int>(q),
                          pair_var('-', keep[p], keep[q]));
      }
      minus.map.assign(n + 1, 0);
      for (size_t p = 0; p < keep.size(); ++p) minus.map[1 + keep[p]] = 1 + static_cast<int>(p);
      minus.map[1 + i] = -1;  // forced zero row/column

      mv.prog.add_block(plus.block);
      mv.prog.add_block(minus.block);
      children.push_back(std::move(plus));
      children.push_back(std::move(minus));
    }
  }

  // cone conditions on the leaves of the recursion
  auto add_conditions = [&](auto entry) {
    for (int i = 0; i < n; ++i) {
      std::vector<LinExpr> col(n + 1), diff(n + 1);
      for (int r = 0; r <= n; ++r) {
        col[r] = entry(r, 1 + i);
        diff[r] = entry(r, 0) - col[r];
      }
      for (const auto& a : k.rows) {
        LinExpr ci, cdiff;
        for (int r = 0; r <= n; ++r) {
          if (a[r] == 0.0) continue;
          ci.add(col[r], a[r]);
          cdiff.add(diff[r], a[r]);
        }
        mv.prog.add_scalar(std::move(ci));
        mv.prog.add_scalar(std::move(cdiff));
      }
    }
  };
  if (t == 1) {
    add_conditions([&](int r, int c) { return root.at(r, c); });
  } else {
    for (const Child& ch : children)
      add_conditions([&](int r, int c) {
        if (ch.map[r] < 0 || ch.map[c] < 0) return LinExpr();
        return ch.block.at(ch.map[r], ch.map[c]);
      });
  }
  return finish(std::move(mv), HierarchyTag::NPlusExplicit, t, n, false);
}

}  // namespace stabsdp
