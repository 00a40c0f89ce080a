#pragma once

// Symbolic stage between the hierarchy builders and the solver: matrices of
// affine expressions over named variables. compile() reduces the description
// to a clean BlockSDP: structural zero rows, duplicated rows, implied
// equalities (opposing scalar pairs, zero-diagonal rows) and duplicate blocks
// are all folded away so the emitted problem has an interior whenever the
// underlying relaxation does.

#include <optional>
#include <string>
#include <vector>

#include "stabsdp/blocksdp.hpp"
#include "stabsdp/vertex_set.hpp"

namespace stabsdp {

struct LinExpr {
  double constant = 0.0;
  std::vector<std::pair<int, double>> terms;  // (variable, coefficient), kept sorted

  LinExpr() = default;
  explicit LinExpr(double c) : constant(c) {}
  static LinExpr variable(int v, double coeff = 1.0);

  void add_term(int v, double coeff);
  void add(const LinExpr& other, double scale = 1.0);
  void scale(double s);
  void normalize();  // sort by variable, merge, drop zero coefficients
  bool is_zero() const { return constant == 0.0 && terms.empty(); }
  bool is_constant() const { return terms.empty(); }
  // Replaces v by rep wherever it occurs (requires both sides normalized).
  void substitute(int v, const LinExpr& rep);

  bool operator==(const LinExpr& other) const = default;
};

LinExpr operator+(LinExpr a, const LinExpr& b);
LinExpr operator-(LinExpr a, const LinExpr& b);

// Symmetric matrix of expressions, dense storage.
struct SymBlock {
  int order = 0;
  std::vector<LinExpr> entry;  // order*order, row-major

  SymBlock() = default;
  explicit SymBlock(int order_) : order(order_), entry(size_t(order_) * order_) {}
  LinExpr& at(int r, int c) { return entry[size_t(r) * order + c]; }
  const LinExpr& at(int r, int c) const { return entry[size_t(r) * order + c]; }
  void set(int r, int c, LinExpr e);  // writes both mirror positions
};

struct VarInfo {
  std::string name;
  std::optional<VertexSet> label;  // the subset a moment variable stands for
};

struct SymbolicSDP {
  std::vector<VarInfo> vars;
  LinExpr objective;  // maximized; constant part becomes the offset
  std::vector<SymBlock> blocks;

  int add_var(std::string name, std::optional<VertexSet> label = std::nullopt);
  void add_block(SymBlock b) { blocks.push_back(std::move(b)); }
  void add_scalar(LinExpr e);  // one order-1 block, meaning e >= 0
};

struct CompileResult {
  BlockSDP sdp;
  std::vector<VarInfo> vars;      // surviving variables, in emission order
  double objective_offset = 0.0;  // constant folded out of the objective
};

// Throws ValidationError if reduction exposes a structurally infeasible
// constraint or leaves an objective variable completely unconstrained.
CompileResult compile(const SymbolicSDP& input);

}  // namespace stabsdp
