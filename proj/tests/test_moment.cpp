#include <doctest.h>

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "stabsdp/graph.hpp"
#include "stabsdp/moment.hpp"
#include "stabsdp/vertex_set.hpp"

using namespace stabsdp;

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

std::vector<int> random_binary(SplitMix& rng, int n) {
  std::vector<int> x(n);
  for (int i = 0; i < n; ++i) x[i] = int(rng.next() & 1);
  return x;
}

MomentVector random_vector(SplitMix& rng, int n, int bound) {
  MomentVector y(n, bound);
  for (const auto& I : y.support()) y.set(I, rng.sym());
  return y;
}

// Nonnegative combination of 0/1 lifts; weights returned by subset mask.
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

double inf_norm(const Eigen::MatrixXd& m) { return m.cwiseAbs().maxCoeff(); }

// Block matrix with (P,Q)-subblock = identity when P is inside Q, else zero;
// conjugating diag(block_A_ST) by it must reproduce assemble_M_T.
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

TEST_CASE("zeta lift") {
  SUBCASE("two-point support") {
    MomentVector y = zeta_lift({0, 1, 0, 1}, 2);
    for (const auto& I : y.support()) {
      bool inside = I.subset_of(VertexSet::of({1, 3}));
      CHECK(y.get(I) == (inside ? 1.0 : 0.0));
    }
    CHECK(y.get(VertexSet::of({1, 3})) == 1.0);
    CHECK(y.get(VertexSet::of({0, 1})) == 0.0);
  }

  SUBCASE("all zeros") {
    MomentVector y = zeta_lift({0, 0, 0}, 3);
    CHECK(y.get(VertexSet()) == 1.0);
    for (const auto& I : y.support())
      if (!I.empty()) CHECK(y.get(I) == 0.0);
  }

  SUBCASE("all ones") {
    MomentVector y = zeta_lift({1, 1, 1}, 3);
    CHECK(y.support().size() == 8);
    for (const auto& I : y.support()) CHECK(y.get(I) == 1.0);
  }

  SUBCASE("rejects non-binary coordinates") {
    CHECK_THROWS_AS(zeta_lift({0, 2}, 1), InvalidParameterError);
  }
}

TEST_CASE("moment vector domains") {
  SUBCASE("all-subsets domain") {
    MomentVector y(3, 2);
    CHECK(y.support().size() == 7);
    y.set(VertexSet::of({0, 2}), 0.5);
    CHECK(y.get(VertexSet::of({0, 2})) == 0.5);
    CHECK_THROWS_AS(y.get(VertexSet::of({0, 1, 2})), DomainError);
    CHECK_THROWS_AS(y.set(VertexSet::of({0, 1, 2}), 1.0), DomainError);
    CHECK_THROWS_AS(y.get(VertexSet::of({5})), InvalidParameterError);
  }

  SUBCASE("stable-only domain") {
    Graph c5 = paley_graph(5);
    MomentVector y(c5, 2);
    CHECK(y.support().size() == 11);
    y.set(VertexSet::of({0, 2}), 0.25);  // a non-edge
    CHECK(y.get(VertexSet::of({0, 2})) == 0.25);
    CHECK(y.get(VertexSet::of({0, 1})) == 0.0);  // an edge: forced zero
    CHECK_THROWS_AS(y.set(VertexSet::of({0, 1}), 0.7), DomainError);
    y.set(VertexSet::of({0, 1}), 0.0);  // writing the forced value is a no-op
    CHECK(y.get(VertexSet::of({0, 1})) == 0.0);
  }

  SUBCASE("bound above n stores the full power set") {
    MomentVector y(3, 9);
    CHECK(y.support().size() == 8);
  }
}

TEST_CASE("principal blocks A_S") {
  SUBCASE("empty shift equals the order-1 moment matrix") {
    SplitMix rng(11);
    MomentVector y = random_vector(rng, 4, 2);
    SymMatrix a = block_A_S(y, VertexSet());
    SymMatrix m1 = moment_matrix(y, 1);
    CHECK(a.order() == 5);
    CHECK(inf_norm(a.mat - m1.mat) == 0.0);
    CHECK(a.labels == m1.labels);
  }

  SUBCASE("lift of a single point, shifted by it") {
    MomentVector y = zeta_lift({0, 1}, 3);
    SymMatrix a = block_A_S(y, VertexSet::single(1));
    REQUIRE(a.order() == 3);
    CHECK(a.labels[0] == VertexSet::single(1));
    CHECK(a.labels[1] == VertexSet::of({0, 1}));
    CHECK(a.labels[2] == VertexSet::single(1));  // multiset label: 1 already in S
    CHECK(a.mat(0, 0) == 1.0);
    CHECK(a.mat(0, 2) == 1.0);
    CHECK(a.mat(2, 2) == 1.0);
    for (int k = 0; k < 3; ++k) {
      CHECK(a.mat(1, k) == 0.0);  // row of vertex 0, outside the support
      CHECK(a.mat(k, 1) == 0.0);
    }
  }

  SUBCASE("lift scaling: A_S is the S-indicator multiple of A_empty") {
    SplitMix rng(17);
    for (int trial = 0; trial < 20; ++trial) {
      int n = 2 + rng.below(5);
      auto x = random_binary(rng, n);
      MomentVector y = zeta_lift(x, n);
      auto subs = enumerate_subsets(n, n);
      VertexSet S = subs[rng.below(int(subs.size()))];
      double indicator = 1.0;
      for (int i : S.elements()) indicator *= x[i];
      SymMatrix lhs = block_A_S(y, S);
      SymMatrix base = block_A_S(y, VertexSet());
      CHECK(inf_norm(lhs.mat - indicator * base.mat) == 0.0);
    }
  }

  SUBCASE("bound checks") {
    MomentVector tight(5, 2);
    CHECK_THROWS_AS(block_A_S(tight, VertexSet::single(0)), DomainError);
    // with S = {1} on two vertices every entry set has size <= 2, so bound 2 works
    MomentVector small(2, 2);
    CHECK_NOTHROW(block_A_S(small, VertexSet::single(1)));
  }
}

TEST_CASE("alternating blocks A(S,T)") {
  SplitMix rng(23);

  SUBCASE("S equal to T collapses to one term") {
    MomentVector y = random_vector(rng, 4, 4);
    VertexSet t = VertexSet::of({1, 2});
    CHECK(inf_norm(block_A_ST(y, t, t).mat - block_A_S(y, t).mat) == 0.0);
  }

  SUBCASE("two-element inclusion-exclusion") {
    MomentVector y = random_vector(rng, 4, 4);
    VertexSet t = VertexSet::of({1, 2});
    Eigen::MatrixXd want = block_A_S(y, VertexSet()).mat -
                           block_A_S(y, VertexSet::single(1)).mat -
                           block_A_S(y, VertexSet::single(2)).mat +
                           block_A_S(y, t).mat;
    CHECK(inf_norm(block_A_ST(y, VertexSet(), t).mat - want) == 0.0);
  }

  SUBCASE("shift outside the window is rejected") {
    MomentVector y = random_vector(rng, 4, 4);
    CHECK_THROWS_AS(block_A_ST(y, VertexSet::single(3), VertexSet::of({1, 2})),
                    ArgumentError);
  }

  SUBCASE("lift product identity, exhaustive over 0/1 points") {
    for (int n : {3, 5, 8}) {
      auto subs = enumerate_subsets(n, 4);
      for (int trial = 0; trial < 6; ++trial) {
        VertexSet T = subs[rng.below(int(subs.size()))];
        auto inner = subsets_of(T);
        VertexSet S = inner[rng.below(int(inner.size()))];
        for (uint64_t mask = 0; mask < (uint64_t(1) << n); ++mask) {
          std::vector<int> x(n);
          for (int i = 0; i < n; ++i) x[i] = int((mask >> i) & 1);
          MomentVector y = zeta_lift(x, n);
          double factor = 1.0;
          for (int i : S.elements()) factor *= x[i];
          for (int i : T.set_minus(S).elements()) factor *= 1.0 - x[i];
          Eigen::MatrixXd want = factor * block_A_S(y, VertexSet()).mat;
          CHECK(inf_norm(block_A_ST(y, S, T).mat - want) == 0.0);
        }
      }
    }
  }
}

TEST_CASE("assembled matrices M(T;y)") {
  SplitMix rng(31);

  SUBCASE("empty T reduces to the order-1 moment matrix") {
    MomentVector y = random_vector(rng, 5, 2);
    SymMatrix m = assemble_M_T(y, VertexSet());
    CHECK(inf_norm(m.mat - moment_matrix(y, 1).mat) == 0.0);
  }

  SUBCASE("subblock layout") {
    MomentVector y = random_vector(rng, 4, 4);
    VertexSet T = VertexSet::of({1, 2});
    SymMatrix m = assemble_M_T(y, T);
    REQUIRE(m.order() == 4 * 5);
    auto subs = subsets_of(T);
    for (int p = 0; p < 4; ++p)
      for (int q = 0; q < 4; ++q) {
        Eigen::MatrixXd want = block_A_S(y, subs[p].set_union(subs[q])).mat;
        CHECK(inf_norm(m.mat.block(p * 5, q * 5, 5, 5) - want) == 0.0);
      }
    // multiset labels: first five rows labeled by the empty-shift block
    CHECK(m.labels[0] == VertexSet());
    CHECK(m.labels[1] == VertexSet::single(0));
    CHECK(m.labels[5] == VertexSet::single(1));  // next block starts at its shift
  }

  SUBCASE("congruence factorization against the diagonal of alternating blocks") {
    for (int trial = 0; trial < 200; ++trial) {
      int n = 2 + rng.below(5);                    // up to 6
      int tsize = rng.below(std::min(4, n + 1));   // |T| up to 3
      MomentVector y = (trial % 2 == 0) ? random_vector(rng, n, n)
                                        : random_lift_combo(rng, n, n);
      auto subs = enumerate_subsets(n, n);
      VertexSet T;
      while (T.size() != tsize) T = subs[rng.below(int(subs.size()))];
      auto inner = subsets_of(T);
      int b = n + 1, k = int(inner.size());
      Eigen::MatrixXd d = Eigen::MatrixXd::Zero(k * b, k * b);
      for (int p = 0; p < k; ++p)
        d.block(p * b, p * b, b, b) = block_A_ST(y, inner[p], T).mat;
      Eigen::MatrixXd z = inclusion_z(inner, b);
      SymMatrix m = assemble_M_T(y, T);
      CHECK(inf_norm(m.mat - z * d * z.transpose()) <= 1e-12);
    }
  }

  SUBCASE("equivalence of the two positivity descriptions") {
    int psd_cases = 0, indef_cases = 0;
    for (int trial = 0; trial < 200; ++trial) {
      int n = 2 + rng.below(5);
      int tsize = rng.below(std::min(4, n + 1));
      MomentVector y = (trial % 2 == 0) ? random_vector(rng, n, n)
                                        : random_lift_combo(rng, n, n);
      auto subs = enumerate_subsets(n, n);
      VertexSet T;
      while (T.size() != tsize) T = subs[rng.below(int(subs.size()))];
      bool big_psd = min_eigenvalue(assemble_M_T(y, T)) >= -1e-9;
      bool all_blocks_psd = true;
      for (const auto& S : subsets_of(T))
        if (min_eigenvalue(block_A_ST(y, S, T)) < -1e-9) all_blocks_psd = false;
      CHECK(big_psd == all_blocks_psd);
      (big_psd ? psd_cases : indef_cases)++;
    }
    // both branches of the equivalence must actually occur
    CHECK(psd_cases > 20);
    CHECK(indef_cases > 20);
  }
}

TEST_CASE("moment matrices") {
  SplitMix rng(41);

  SUBCASE("order zero") {
    MomentVector y(4, 4);
    y.set(VertexSet(), 3.5);
    SymMatrix m = moment_matrix(y, 0);
    REQUIRE(m.order() == 1);
    CHECK(m.mat(0, 0) == 3.5);
  }

  SUBCASE("lift gives a rank-one matrix") {
    for (int trial = 0; trial < 10; ++trial) {
      int n = 2 + rng.below(4);
      auto x = random_binary(rng, n);
      MomentVector y = zeta_lift(x, n);
      int t = 1 + rng.below(n);
      SymMatrix m = moment_matrix(y, t);
      Eigen::VectorXd v(m.order());
      for (int p = 0; p < m.order(); ++p) {
        double prod = 1.0;
        for (int i : m.labels[p].elements()) prod *= x[i];
        v(p) = prod;
      }
      CHECK(inf_norm(m.mat - v * v.transpose()) == 0.0);
      CHECK(min_eigenvalue(m) >= -1e-12);
    }
  }

  SUBCASE("bound check") {
    MomentVector y(6, 3);
    CHECK_THROWS_AS(moment_matrix(y, 2), DomainError);
    CHECK_NOTHROW(moment_matrix(y, 1));
  }
}

TEST_CASE("linear forms acting on moment vectors") {
  SplitMix rng(47);

  SUBCASE("coordinate form selects a shifted entry") {
    MomentVector y = random_vector(rng, 4, 3);
    std::vector<double> a{0, 0, 1, 0, 0};  // picks vertex 1
    MomentVector ay = apply_linear(a, y);
    CHECK(ay.bound() == 2);
    for (const auto& I : ay.support()) CHECK(ay.get(I) == y.get(I.with(1)));
  }

  SUBCASE("edge form at the zero lift") {
    MomentVector y = zeta_lift({0, 0, 0}, 2);
    std::vector<double> a{1, -1, -1, 0};
    CHECK(apply_linear(a, y).get(VertexSet()) == 1.0);
  }

  SUBCASE("commutes with lifts, integer data exact") {
    for (int trial = 0; trial < 20; ++trial) {
      int n = 2 + rng.below(5);
      auto x = random_binary(rng, n);
      std::vector<double> a(n + 1);
      for (auto& c : a) c = double(rng.below(11)) - 5.0;
      double scale = a[0];
      for (int i = 0; i < n; ++i) scale += a[1 + i] * x[i];
      MomentVector ay = apply_linear(a, zeta_lift(x, n));
      for (const auto& I : ay.support()) {
        double prod = 1.0;
        for (int i : I.elements()) prod *= x[i];
        CHECK(ay.get(I) == scale * prod);  // exact: all quantities are small integers
      }
    }
  }

  SUBCASE("commutes with lifts, real data to round-off") {
    for (int trial = 0; trial < 20; ++trial) {
      int n = 2 + rng.below(5);
      auto x = random_binary(rng, n);
      std::vector<double> a(n + 1);
      for (auto& c : a) c = rng.sym();
      double scale = a[0];
      for (int i = 0; i < n; ++i) scale += a[1 + i] * x[i];
      MomentVector ay = apply_linear(a, zeta_lift(x, n));
      for (const auto& I : ay.support()) {
        double prod = 1.0;
        for (int i : I.elements()) prod *= x[i];
        CHECK(ay.get(I) == doctest::Approx(scale * prod).epsilon(1e-14));
      }
    }
  }

  SUBCASE("stable-only domain is preserved") {
    Graph c5 = paley_graph(5);
    MomentVector y(c5, 2);
    for (const auto& I : y.support()) y.set(I, 1.0 + I.size());
    std::vector<double> a{1, -1, -1, 0, 0, 0};
    MomentVector ay = apply_linear(a, y);
    CHECK(ay.stable_only());
    CHECK(ay.bound() == 1);
    // (a y)_{0} = y_0 - y_{00} - y_{01}; {0,1} is an edge so that term is 0
    double want = y.get(VertexSet::single(0)) - y.get(VertexSet::single(0)) - 0.0;
    CHECK(ay.get(VertexSet::single(0)) == want);
  }

  SUBCASE("argument guards") {
    MomentVector y(3, 0);
    CHECK_THROWS_AS(apply_linear({1, 0, 0, 0}, y), DomainError);
    MomentVector z(3, 1);
    CHECK_THROWS_AS(apply_linear({1, 0}, z), InvalidParameterError);
  }
}

TEST_CASE("alternating sums detect lift combinations") {
  SplitMix rng(53);

  SUBCASE("single lift: indicator of the support") {
    for (uint64_t mask = 0; mask < 16; ++mask) {
      std::vector<int> x(4);
      for (int i = 0; i < 4; ++i) x[i] = int((mask >> i) & 1);
      VertexSet w;
      for (int i = 0; i < 4; ++i)
        if (x[i]) w = w.with(i);
      MomentVector y = zeta_lift(x, 4);
      for (const auto& S : enumerate_subsets(4, 4))
        CHECK(alternating_sum(y, S) == (S == w ? 1.0 : 0.0));
    }
  }

  SUBCASE("combination weights are recovered") {
    for (int trial = 0; trial < 10; ++trial) {
      int n = 2 + rng.below(4);
      std::vector<double> lam;
      MomentVector y = random_lift_combo(rng, n, n, &lam);
      for (const auto& S : enumerate_subsets(n, n)) {
        uint64_t mask = 0;
        for (int i : S.elements()) mask |= uint64_t(1) << i;
        CHECK(alternating_sum(y, S) == doctest::Approx(lam[mask]).epsilon(1e-12));
        CHECK(alternating_sum(y, S) >= -1e-12);
      }
    }
  }

  SUBCASE("hand-checked small case") {
    MomentVector y(2, 2);
    y.set(VertexSet(), 1.0);
    y.set(VertexSet::single(0), 1.0);
    y.set(VertexSet::single(1), 1.0);
    y.set(VertexSet::of({0, 1}), 0.0);
    CHECK(alternating_sum(y, VertexSet()) == -1.0);
  }

  SUBCASE("needs the full power set") {
    MomentVector y(4, 2);
    CHECK_THROWS_AS(alternating_sum(y, VertexSet()), DomainError);
  }
}

TEST_CASE("positivity of full moment matrices characterizes lift combinations") {
  SplitMix rng(59);

  SUBCASE("nonnegative combinations are positive semidefinite") {
    for (int trial = 0; trial < 20; ++trial) {
      int n = 2 + rng.below(4);  // up to 5
      MomentVector y = random_lift_combo(rng, n, n);
      SymMatrix m = moment_matrix(y, n);
      CHECK(min_eigenvalue(m) >= -1e-9);
      for (const auto& S : enumerate_subsets(n, n))
        CHECK(alternating_sum(y, S) >= -1e-12);
    }
  }

  SUBCASE("one negative weight forces a negative eigenvalue") {
    // lifts form a basis, so the weights of a combination are unique: a
    // visible negative weight cannot coexist with positive semidefiniteness
    for (int trial = 0; trial < 20; ++trial) {
      int n = 2 + rng.below(4);
      std::vector<double> lam;
      MomentVector y = random_lift_combo(rng, n, n, &lam);
      auto subs = enumerate_subsets(n, n);
      VertexSet bad = subs[rng.below(int(subs.size()))];
      uint64_t bad_mask = 0;
      for (int i : bad.elements()) bad_mask |= uint64_t(1) << i;
      // shift that weight to -0.1 by subtracting the matching lift
      std::vector<int> x(n);
      for (int i = 0; i < n; ++i) x[i] = int((bad_mask >> i) & 1);
      MomentVector z = zeta_lift(x, n);
      double delta = lam[bad_mask] + 0.1;
      for (const auto& I : y.support()) y.set(I, y.get(I) - delta * z.get(I));
      CHECK(alternating_sum(y, bad) == doctest::Approx(-0.1).epsilon(1e-10));
      CHECK(min_eigenvalue(moment_matrix(y, n)) <= -1e-12);
    }
  }
}
