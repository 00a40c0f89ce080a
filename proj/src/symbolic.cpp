#include "stabsdp/symbolic.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <string>

namespace stabsdp {

LinExpr LinExpr::variable(int v, double coeff) {
  LinExpr e;
  e.terms.emplace_back(v, coeff);
  return e;
}

void LinExpr::add_term(int v, double coeff) {
  terms.emplace_back(v, coeff);
  normalize();
}

void LinExpr::add(const LinExpr& other, double s) {
  constant += s * other.constant;
  for (const auto& [v, c] : other.terms) terms.emplace_back(v, s * c);
  normalize();
}

void LinExpr::scale(double s) {
  constant *= s;
  for (auto& [v, c] : terms) c *= s;
  normalize();
}

void LinExpr::normalize() {
  std::sort(terms.begin(), terms.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<std::pair<int, double>> merged;
  merged.reserve(terms.size());
  for (const auto& [v, c] : terms) {
    if (!merged.empty() && merged.back().first == v)
      merged.back().second += c;
    else
      merged.emplace_back(v, c);
  }
  merged.erase(std::remove_if(merged.begin(), merged.end(),
                              [](const auto& t) { return t.second == 0.0; }),
               merged.end());
  terms = std::move(merged);
}

void LinExpr::substitute(int v, const LinExpr& rep) {
  auto it = std::lower_bound(terms.begin(), terms.end(), v,
                             [](const auto& t, int key) { return t.first < key; });
  if (it == terms.end() || it->first != v) return;
  double coeff = it->second;
  terms.erase(it);
  add(rep, coeff);
}

LinExpr operator+(LinExpr a, const LinExpr& b) {
  a.add(b);
  return a;
}

LinExpr operator-(LinExpr a, const LinExpr& b) {
  a.add(b, -1.0);
  return a;
}

void SymBlock::set(int r, int c, LinExpr e) {
  e.normalize();
  at(r, c) = e;
  if (r != c) at(c, r) = std::move(e);
}

int SymbolicSDP::add_var(std::string name, std::optional<VertexSet> label) {
  vars.push_back({std::move(name), std::move(label)});
  return static_cast<int>(vars.size()) - 1;
}

void SymbolicSDP::add_scalar(LinExpr e) {
  SymBlock b(1);
  b.set(0, 0, std::move(e));
  blocks.push_back(std::move(b));
}

namespace {

// Exact fingerprint of an expression (bit patterns, not decimal rounding).
std::string expr_key(const LinExpr& e) {
  char buf[32];
  std::string key;
  key.reserve(8 + 24 * e.terms.size());
  auto hex = [&](double v) {
    if (v == 0.0) v = 0.0;  // collapse -0.0
    unsigned long long bits;
    static_assert(sizeof(bits) == sizeof(v));
    __builtin_memcpy(&bits, &v, sizeof(bits));
    std::snprintf(buf, sizeof buf, "%llx", bits);
    key += buf;
  };
  hex(e.constant);
  for (const auto& [v, c] : e.terms) {
    key += '|';
    std::snprintf(buf, sizeof buf, "%d:", v);
    key += buf;
    hex(c);
  }
  return key;
}

LinExpr negated(LinExpr e) {
  e.scale(-1.0);
  return e;
}

struct Reducer {
  std::vector<SymBlock> blocks;
  LinExpr objective;
  const std::vector<VarInfo>& vars;

  Reducer(const SymbolicSDP& in) : blocks(in.blocks), objective(in.objective), vars(in.vars) {
    for (auto& b : blocks)
      for (auto& e : b.entry) e.normalize();
    objective.normalize();
  }

  bool row_is_zero(const SymBlock& b, int r) const {
    for (int k = 0; k < b.order; ++k)
      if (!b.at(r, k).is_zero()) return false;
    return true;
  }

  bool rows_equal(const SymBlock& b, int r, int s) const {
    for (int k = 0; k < b.order; ++k)
      if (!(b.at(r, k) == b.at(s, k))) return false;
    return true;
  }

  // Removes zero rows, duplicated rows, decided order-1 blocks, empty blocks.
  void structural_pass() {
    std::vector<SymBlock> kept;
    kept.reserve(blocks.size());
    for (SymBlock& b : blocks) {
      std::vector<int> keep;
      for (int r = 0; r < b.order; ++r) {
        if (row_is_zero(b, r)) continue;
        bool dup = false;
        for (int s : keep)
          if (rows_equal(b, s, r)) {
            dup = true;
            break;
          }
        if (!dup) keep.push_back(r);
      }
      if (keep.empty()) continue;
      if (static_cast<int>(keep.size()) < b.order) {
        SymBlock reduced(static_cast<int>(keep.size()));
        for (int r = 0; r < reduced.order; ++r)
          for (int c = 0; c < reduced.order; ++c)
            reduced.at(r, c) = b.at(keep[r], keep[c]);
        b = std::move(reduced);
      }
      if (b.order == 1 && b.at(0, 0).is_constant()) {
        double c = b.at(0, 0).constant;
        if (c < 0.0)
          throw ValidationError("structurally infeasible scalar constraint (" +
                                std::to_string(c) + " >= 0)");
        continue;  // trivially satisfied
      }
      kept.push_back(std::move(b));
    }
    blocks = std::move(kept);
  }

  // An expression forced to vanish: either an off-diagonal entry in a row
  // whose diagonal is identically zero, or a pair of opposing scalar blocks.
  std::optional<LinExpr> find_equality() const {
    for (const SymBlock& b : blocks)
      for (int r = 0; r < b.order; ++r) {
        if (!b.at(r, r).is_zero()) continue;
        for (int k = 0; k < b.order; ++k) {
          const LinExpr& e = b.at(r, k);
          if (e.is_zero()) continue;
          if (e.is_constant())
            throw ValidationError("zero diagonal forces a nonzero constant entry");
          return e;
        }
      }
    std::map<std::string, int> seen;
    for (size_t i = 0; i < blocks.size(); ++i) {
      const SymBlock& b = blocks[i];
      if (b.order != 1 || b.at(0, 0).is_constant()) continue;
      seen.emplace(expr_key(b.at(0, 0)), static_cast<int>(i));
    }
    for (const auto& [key, idx] : seen) {
      const LinExpr& e = blocks[idx].at(0, 0);
      auto op = seen.find(expr_key(negated(e)));
      if (op != seen.end()) return e;
    }
    return std::nullopt;
  }

  void substitute_everywhere(int v, const LinExpr& rep) {
    for (SymBlock& b : blocks)
      for (LinExpr& e : b.entry) e.substitute(v, rep);
    objective.substitute(v, rep);
  }

  void eliminate(const LinExpr& eq) {
    // pivot: prefer auxiliary/non-singleton variables, newest first, so the
    // base moment variables (and the objective) survive the fold
    int best = -1;
    double coeff = 0.0;
    bool best_plain = false;
    for (const auto& [v, c] : eq.terms) {
      bool plain = !vars[v].label || vars[v].label->size() != 1;
      if (best < 0 || (plain && !best_plain) || (plain == best_plain && v > best)) {
        best = v;
        coeff = c;
        best_plain = plain;
      }
    }
    LinExpr rep;
    rep.constant = -eq.constant / coeff;
    for (const auto& [v, c] : eq.terms)
      if (v != best) rep.terms.emplace_back(v, -c / coeff);
    rep.normalize();
    substitute_everywhere(best, rep);
  }

  void run() {
    for (;;) {
      structural_pass();
      auto eq = find_equality();
      if (!eq) break;
      eliminate(*eq);
    }
    // duplicate constraints appear once
    std::vector<SymBlock> unique_blocks;
    std::map<std::string, bool> fingerprints;
    for (SymBlock& b : blocks) {
      std::string fp = std::to_string(b.order);
      for (int r = 0; r < b.order; ++r)
        for (int c = 0; c <= r; ++c) {
          fp += '/';
          fp += expr_key(b.at(r, c));
        }
      if (fingerprints.emplace(std::move(fp), true).second)
        unique_blocks.push_back(std::move(b));
    }
    blocks = std::move(unique_blocks);
  }
};

}  // namespace

CompileResult compile(const SymbolicSDP& input) {
  Reducer red(input);
  red.run();

  std::vector<char> used(input.vars.size(), 0);
  for (const SymBlock& b : red.blocks)
    for (const LinExpr& e : b.entry)
      for (const auto& [v, c] : e.terms) used[v] = 1;
  for (const auto& [v, c] : red.objective.terms)
    if (!used[v])
      throw ValidationError("objective variable '" + input.vars[v].name +
                            "' is unconstrained after reduction");

  std::vector<int> remap(input.vars.size(), -1);
  CompileResult out;
  for (size_t v = 0; v < input.vars.size(); ++v)
    if (used[v]) {
      remap[v] = static_cast<int>(out.vars.size());
      out.vars.push_back(input.vars[v]);
    }

  out.sdp.num_vars = static_cast<int>(out.vars.size());
  out.sdp.objective.assign(out.vars.size(), 0.0);
  for (const auto& [v, c] : red.objective.terms) out.sdp.objective[remap[v]] = c;
  out.objective_offset = red.objective.constant;

  for (const SymBlock& b : red.blocks) {
    SDPBlock blk;
    blk.order = b.order;
    std::map<int, SparseSym> coeff;
    for (int r = 0; r < b.order; ++r)
      for (int c = 0; c <= r; ++c) {
        const LinExpr& e = b.at(r, c);
        if (e.constant != 0.0) blk.constant.add(r, c, -e.constant);
        for (const auto& [v, co] : e.terms) coeff[remap[v]].add(r, c, co);
      }
    blk.constant.canonicalize();
    for (auto& [v, mat] : coeff) {
      mat.canonicalize();
      if (!mat.empty()) blk.coeffs.emplace_back(v, std::move(mat));
    }
    out.sdp.blocks.push_back(std::move(blk));
  }
  out.sdp.validate();
  return out;
}

}  // namespace stabsdp
