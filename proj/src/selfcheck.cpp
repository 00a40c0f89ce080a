#include "stabsdp/selfcheck.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <utility>

#include "stabsdp/certify.hpp"
#include "stabsdp/hierarchy.hpp"
#include "stabsdp/moment.hpp"
#include "stabsdp/sdpa_io.hpp"
#include "stabsdp/solver.hpp"

namespace stabsdp::selfcheck {

namespace {

struct SplitMix {
  uint64_t s;
  explicit SplitMix(uint64_t seed) : s(seed) {}
  uint64_t next() {
    s += 0x9e3779b97f4a7c15ull;
    uint64_t z = s;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }
  double uniform() { return double(next() >> 11) * 0x1.0p-53; }
  double sym() { return 2.0 * uniform() - 1.0; }
  int below(int m) { return int(next() % uint64_t(m)); }
};

struct Recorder {
  SuiteResult r;
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();

  explicit Recorder(std::string name) { r.name = std::move(name); }
  void expect(bool ok, const char* fmt, ...) {
    ++r.checks;
    if (ok) return;
    ++r.failures;
    if (r.notes.size() >= 8) return;
    char buf[256];
    va_list args;
    va_start(args, fmt);
    vsnprintf(buf, sizeof buf, fmt, args);
    va_end(args);
    r.notes.emplace_back(buf);
  }
  SuiteResult done() {
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return std::move(r);
  }
};

Graph random_graph(SplitMix& rng, int n, double p) {
  Graph g(n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (rng.uniform() < p) g.add_edge(i, j);
  return g;
}

PolyhedralCone random_cone(SplitMix& rng, int n) {
  PolyhedralCone k(n);
  for (int i = 0; i < n; ++i) {
    std::vector<double> lo(n + 1, 0.0), hi(n + 1, 0.0);
    lo[1 + i] = 1.0;
    hi[0] = 1.0;
    hi[1 + i] = -1.0;
    k.add_row(lo);
    k.add_row(hi);
  }
  const int extra = 1 + rng.below(3);
  for (int r = 0; r < extra; ++r) {
    std::vector<double> a(n + 1, 0.0);
    a[0] = 1 + rng.below(2);
    const int picks = 2 + rng.below(3);
    for (int p = 0; p < picks; ++p) a[1 + rng.below(n)] = -1.0;
    k.add_row(a);
  }
  return k;
}

MomentVector random_vector(SplitMix& rng, int n, int bound) {
  MomentVector y(n, bound);
  for (const auto& I : y.support()) y.set(I, rng.sym());
  return y;
}

MomentVector random_lift_combo(SplitMix& rng, int n, int bound,
                               std::vector<double>* weights = nullptr) {
  MomentVector y(n, bound);
  std::vector<double> lam(size_t(1) << n);
  for (auto& w : lam) w = rng.uniform();
  for (uint64_t mask = 0; mask < lam.size(); ++mask) {
    std::vector<int> x(n);
    for (int i = 0; i < n; ++i) x[i] = int((mask >> i) & 1);
    MomentVector z = zeta_lift(x, bound);
    for (const auto& I : y.support()) y.set(I, y.get(I) + lam[mask] * z.get(I));
  }
  if (weights) *weights = lam;
  return y;
}

double solved_bound(const RelaxationInstance& inst, bool* ok) {
  SolveResult r = solve(inst.sdp, {});
  if (!r.optimal()) {
    *ok = false;
    return 0.0;
  }
  return relaxation_bound(inst, r);
}

Eigen::MatrixXd random_orthogonal(SplitMix& rng, int n) {
  Eigen::MatrixXd a(n, n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) a(r, c) = rng.sym();
  return Eigen::HouseholderQR<Eigen::MatrixXd>(a).householderQ();
}

struct Built {
  BlockSDP p;
  double opt = 0.0;
};

// Known-optimum instance: strictly complementary psd pair per block, random
// sparse coefficients, constants and objective backed out from the pair.
Built constructed_instance(SplitMix& rng, int m, int nblocks, int max_order) {
  Built out;
  out.p.num_vars = m;
  std::vector<double> ystar(m);
  for (int j = 0; j < m; ++j) ystar[j] = rng.sym();
  std::vector<Eigen::MatrixXd> xstar(nblocks);
  for (int b = 0; b < nblocks; ++b) {
    int order = 2 + rng.below(max_order - 1);
    Eigen::MatrixXd q = random_orthogonal(rng, order);
    int rank = 1 + rng.below(order - 1);
    Eigen::VectorXd dx = Eigen::VectorXd::Zero(order);
    Eigen::VectorXd ds = Eigen::VectorXd::Zero(order);
    for (int i = 0; i < rank; ++i) dx[i] = 0.3 + rng.uniform();
    for (int i = rank; i < order; ++i) ds[i] = 0.3 + rng.uniform();
    xstar[b] = q * dx.asDiagonal() * q.transpose();
    Eigen::MatrixXd f0 = -(q * ds.asDiagonal() * q.transpose());

    SDPBlock blk;
    blk.order = order;
    for (int j = 0; j < m; ++j) {
      if (j % nblocks != b && rng.below(2) == 0) continue;
      SparseSym fj;
      int nnz = 1 + rng.below(order);
      for (int k = 0; k < nnz; ++k) fj.add(rng.below(order), rng.below(order), rng.sym());
      fj.canonicalize();
      if (fj.empty()) fj.add(0, 0, 1.0);
      blk.coeffs.emplace_back(j, fj);
      f0 += ystar[j] * to_dense(fj, order);
    }
    for (int r = 0; r < order; ++r)
      for (int c = 0; c <= r; ++c)
        if (f0(r, c) != 0.0) blk.constant.add(r, c, f0(r, c));
    blk.constant.canonicalize();
    out.p.blocks.push_back(std::move(blk));
  }
  out.p.objective.assign(m, 0.0);
  for (int b = 0; b < nblocks; ++b)
    for (const auto& [j, mat] : out.p.blocks[b].coeffs)
      out.p.objective[j] -= dot(mat, xstar[b]);
  for (int j = 0; j < m; ++j) out.opt += out.p.objective[j] * ystar[j];
  return out;
}

Eigen::MatrixXd inclusion_z(const std::vector<VertexSet>& subs, int b) {
  int k = static_cast<int>(subs.size());
  Eigen::MatrixXd z = Eigen::MatrixXd::Zero(k * b, k * b);
  for (int p = 0; p < k; ++p)
    for (int q = 0; q < k; ++q)
      if (subs[p].subset_of(subs[q]))
        z.block(p * b, q * b, b, b).setIdentity();
  return z;
}

}  // namespace

SuiteResult check_block_factorization(uint64_t seed, int trials) {
  Recorder rec("block factorization");
  SplitMix rng(seed);
  int psd_cases = 0, indef_cases = 0;
  for (int trial = 0; trial < trials; ++trial) {
    int n = 2 + rng.below(5);
    int tsize = rng.below(std::min(4, n + 1));
    MomentVector y =
        (trial % 2 == 0) ? random_vector(rng, n, n) : random_lift_combo(rng, n, n);
    auto subs = enumerate_subsets(n, n);
    VertexSet T;
    while (T.size() != tsize) T = subs[rng.below(int(subs.size()))];
    auto inner = subsets_of(T);
    int b = n + 1, k = int(inner.size());
    Eigen::MatrixXd d = Eigen::MatrixXd::Zero(k * b, k * b);
    bool blocks_psd = true;
    for (int p = 0; p < k; ++p) {
      SymMatrix blk = block_A_ST(y, inner[p], T);
      if (min_eigenvalue(blk) < -1e-9) blocks_psd = false;
      d.block(p * b, p * b, b, b) = blk.mat;
    }
    Eigen::MatrixXd z = inclusion_z(inner, b);
    SymMatrix m = assemble_M_T(y, T);
    double resid = (m.mat - z * d * z.transpose()).cwiseAbs().maxCoeff();
    rec.expect(resid <= 1e-12, "trial %d: factor residual %.2e", trial, resid);
    bool big_psd = min_eigenvalue(m) >= -1e-9;
    rec.expect(big_psd == blocks_psd, "trial %d: positivity tests disagree", trial);
    (big_psd ? psd_cases : indef_cases)++;
  }
  rec.expect(psd_cases > 0 && indef_cases > 0, "branch coverage %d/%d", psd_cases,
             indef_cases);
  return rec.done();
}

SuiteResult check_lift_positivity(uint64_t seed, int combos, int adversarial) {
  Recorder rec("lift positivity");
  SplitMix rng(seed);
  for (int trial = 0; trial < combos; ++trial) {
    int n = 2 + rng.below(4);
    MomentVector y = random_lift_combo(rng, n, n);
    rec.expect(min_eigenvalue(moment_matrix(y, n)) >= -1e-9,
               "combo %d: moment matrix not psd", trial);
    bool sums_ok = true;
    for (const auto& S : enumerate_subsets(n, n))
      if (alternating_sum(y, S) < -1e-12) sums_ok = false;
    rec.expect(sums_ok, "combo %d: alternating sum negative", trial);
  }
  for (int trial = 0; trial < adversarial; ++trial) {
    int n = 2 + rng.below(4);
    std::vector<double> lam;
    MomentVector y = random_lift_combo(rng, n, n, &lam);
    auto subs = enumerate_subsets(n, n);
    VertexSet bad = subs[rng.below(int(subs.size()))];
    uint64_t bad_mask = 0;
    for (int i : bad.elements()) bad_mask |= uint64_t(1) << i;
    std::vector<int> x(n);
    for (int i = 0; i < n; ++i) x[i] = int((bad_mask >> i) & 1);
    MomentVector z = zeta_lift(x, n);
    double delta = lam[bad_mask] + 0.1;
    for (const auto& I : y.support()) y.set(I, y.get(I) - delta * z.get(I));
    rec.expect(alternating_sum(y, bad) < 0.0, "adv %d: corruption invisible", trial);
    rec.expect(min_eigenvalue(moment_matrix(y, n)) <= -1e-12,
               "adv %d: psd test missed a negative weight", trial);
  }
  return rec.done();
}

SuiteResult check_lift_equivalence(uint64_t seed, int cones) {
  Recorder rec("level-1 lift equivalence");
  SplitMix rng(seed);
  for (int trial = 0; trial < cones; ++trial) {
    int n = 2 + rng.below(5);
    PolyhedralCone k = random_cone(rng, n);
    RelaxationInstance tl = build_tildeLt(k, 1);
    RelaxationInstance np = build_nplus_explicit(k, 1);
    rec.expect(structurally_equal(tl.sdp, np.sdp), "cone %d: programs differ", trial);
    bool ok = true;
    double b1 = solved_bound(tl, &ok);
    double b2 = solved_bound(np, &ok);
    rec.expect(ok, "cone %d: solve failed", trial);
    rec.expect(std::abs(b1 - b2) <= 1e-6, "cone %d: bounds %.9f vs %.9f", trial, b1, b2);
  }
  Graph c5(5);
  for (int i = 0; i < 5; ++i) c5.add_edge(i, (i + 1) % 5);
  bool ok = true;
  double b = solved_bound(build_tildeLt(fr_cone(c5), 1), &ok);
  rec.expect(ok && std::abs(b - 2.0) <= 1e-5, "pentagon cone: bound %.9f", b);
  return rec.done();
}

SuiteResult check_sandwich(uint64_t seed, int graphs) {
  Recorder rec("level sandwich");
  SplitMix rng(seed);
  for (int trial = 0; trial < graphs; ++trial) {
    int n = 4 + rng.below(7);
    Graph g = random_graph(rng, n, 0.25 + 0.5 * rng.uniform());
    double alpha = stability_number(g);
    bool ok = true;
    double th = solved_bound(build_theta(g), &ok);
    double l2 = solved_bound(build_Lt_graph(g, 2), &ok);
    double l3 = solved_bound(build_Lt_graph(g, 3), &ok);
    rec.expect(ok, "graph %d: solve failed", trial);
    rec.expect(alpha - 1e-6 <= l3, "graph %d: alpha %.1f above level 3 %.9f", trial,
               alpha, l3);
    rec.expect(l3 <= l2 + 1e-6, "graph %d: levels cross %.9f > %.9f", trial, l3, l2);
    rec.expect(l2 <= th + 1e-6, "graph %d: level 2 above theta", trial);
  }
  return rec.done();
}

SuiteResult check_chain(uint64_t seed, int graphs) {
  Recorder rec("hierarchy chain");
  SplitMix rng(seed);
  for (int trial = 0; trial < graphs; ++trial) {
    int n = 4 + rng.below(5);
    Graph g = random_graph(rng, n, 0.3 + 0.4 * rng.uniform());
    bool ok = true;
    double q2 = solved_bound(build_lasserre(fr_cone(g), 2), &ok);
    double l2 = solved_bound(build_Lt_graph(g, 2), &ok);
    double nth = solved_bound(build_nplus_th(g), &ok);
    double th = solved_bound(build_theta(g), &ok);
    rec.expect(ok, "graph %d: solve failed", trial);
    rec.expect(q2 <= l2 + 1e-6, "graph %d: moment form above subset form", trial);
    rec.expect(l2 <= nth + 1e-6, "graph %d: subset form above lifted theta", trial);
    rec.expect(nth <= th + 1e-6, "graph %d: lifted theta above theta", trial);
  }
  return rec.done();
}

SuiteResult check_exactness(uint64_t seed, int graphs) {
  Recorder rec("exactness at the stability number");
  SplitMix rng(seed);
  int found = 0;
  for (int attempt = 0; attempt < 40 * graphs && found < graphs; ++attempt) {
    int n = 5 + rng.below(6);
    Graph g = random_graph(rng, n, 0.8);
    if (stability_number(g) != 2) continue;
    ++found;
    bool ok = true;
    double l2 = solved_bound(build_Lt_graph(g, 2), &ok);
    rec.expect(ok && std::abs(l2 - 2.0) <= 1e-5, "graph %d: level 2 gave %.9f", found,
               l2);
  }
  rec.expect(found == graphs, "only %d/%d suitable graphs found", found, graphs);
  return rec.done();
}

SuiteResult check_solver_roundtrip(uint64_t seed, int instances) {
  Recorder rec("solver soundness and file round trip");
  SplitMix rng(seed);
  for (int trial = 0; trial < instances; ++trial) {
    Built made = constructed_instance(rng, 2 + rng.below(6), 1 + rng.below(3), 9);
    SolveResult r = solve(made.p, {});
    rec.expect(r.optimal(), "instance %d: status not optimal", trial);
    double dev = std::abs(r.value - made.opt) / std::max(1.0, std::abs(made.opt));
    rec.expect(dev <= 1e-7, "instance %d: off by %.2e", trial, dev);
    rec.expect(verify_solution(made.p, r).pass(), "instance %d: certificate rejected",
               trial);
    rec.expect(structurally_equal(import_sdpa(export_sdpa(made.p)), made.p),
               "instance %d: round trip changed the instance", trial);
  }
  return rec.done();
}

SuiteResult check_counters() {
  Recorder rec("size counters");
  FormulationStats tl = formulation_stats(HierarchyTag::TildeLt, 61, 2);
  rec.expect(tl.variables == 37882, "subset variable count %llu",
             (unsigned long long)tl.variables);
  rec.expect(tl.matrices == 122, "subset matrix count %llu",
             (unsigned long long)tl.matrices);
  rec.expect(tl.memberships == 14884 && tl.has_reference && tl.ref_memberships == 244,
             "membership counts %llu/%llu", (unsigned long long)tl.memberships,
             (unsigned long long)tl.ref_memberships);
  rec.expect(tl.variables_match && tl.matrices_match && !tl.memberships_match,
             "subset reference flags off");
  rec.expect(h_count(61, 2) == 123, "recursion count %llu",
             (unsigned long long)h_count(61, 2));
  FormulationStats np = formulation_stats(HierarchyTag::NPlusExplicit, 61, 2);
  rec.expect(np.matrices == 123 && np.memberships == 14884, "lift counts %llu/%llu",
             (unsigned long long)np.matrices, (unsigned long long)np.memberships);
  rec.expect(!np.variables_match && !np.matrices_match && np.memberships_match,
             "lift reference flags off");
  return rec.done();
}

SuiteResult check_paley_theta(const std::vector<int>& qs, double budget_each) {
  Recorder rec("theta on paley graphs");
  for (int q : qs) {
    auto t0 = std::chrono::steady_clock::now();
    bool ok = true;
    double b = solved_bound(build_theta(paley_graph(q)), &ok);
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    rec.expect(ok, "q=%d: solve failed", q);
    rec.expect(std::abs(b - std::sqrt(double(q))) <= 1e-4, "q=%d: theta %.6f", q, b);
    rec.expect(secs <= budget_each, "q=%d: took %.1f s", q, secs);
  }
  return rec.done();
}

SuiteResult check_table_row_61() {
  Recorder rec("published row q=61");
  bool ok = true;
  double th = solved_bound(build_theta(paley_graph(61)), &ok);
  rec.expect(ok && std::abs(th - std::sqrt(61.0)) <= 1e-4, "theta %.6f", th);
  double l2 = solved_bound(build_Lt_graph(paley_graph(61), 2), &ok);
  rec.expect(ok, "level-2 solve failed");
  rec.expect(std::abs(l2 - 5.465) <= 1e-2, "level-2 bound %.6f", l2);
  rec.expect(std::abs(l2 - 5.464909269) <= 1e-4, "regression digits moved: %.9f", l2);
  return rec.done();
}

std::vector<SuiteResult> run_suites(bool full) {
  std::vector<SuiteResult> out;
  out.push_back(check_block_factorization(101, 200));
  out.push_back(check_lift_positivity(211, 100, 100));
  out.push_back(check_lift_equivalence(307, 20));
  out.push_back(check_exactness(401, 20));
  out.push_back(check_sandwich(503, 50));
  out.push_back(check_chain(601, 20));
  out.push_back(check_solver_roundtrip(701, 50));
  out.push_back(check_counters());
  out.push_back(check_paley_theta({5, 13, 17, 29, 37, 41, 53}, 60.0));
  if (full) {
    out.push_back(check_paley_theta({61, 73, 89, 97, 101}, 60.0));
    out.push_back(check_table_row_61());
  }
  return out;
}

}  // namespace stabsdp::selfcheck
