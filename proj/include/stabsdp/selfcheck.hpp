#pragma once

// Self-contained property suites shared by the command-line verifier and the
// acceptance harness.  Each suite draws its own deterministic random stream,
// counts individual checks, and reports failures as human-readable notes.

#include <cstdint>
#include <string>
#include <vector>

namespace stabsdp::selfcheck {

struct SuiteResult {
  std::string name;
  int checks = 0;
  int failures = 0;
  double seconds = 0.0;
  std::vector<std::string> notes;  // first few failure descriptions

  bool ok() const { return failures == 0; }
};

// Congruence of the assembled matrix against the block diagonal of shifted
// alternating blocks (residual <= 1e-12) and equivalence of the two
// positivity descriptions; n <= 6, |T| <= 3.
SuiteResult check_block_factorization(uint64_t seed, int trials);

// Nonnegative combinations of 0/1 lifts pass both the full moment-matrix
// test and every alternating sum; vectors with one corrupted weight fail
// both; n <= 5.
SuiteResult check_lift_positivity(uint64_t seed, int combos, int adversarial);

// Level-1 subset relaxation and level-1 explicit lift produce the same
// program and the same bound on random cones in the homogenized cube
// (n <= 6), and both give 2 on the fractional stable set cone of the
// 5-cycle.
SuiteResult check_lift_equivalence(uint64_t seed, int cones);

// alpha <= L3 <= L2 <= theta with 1e-6 slack on random graphs, n <= 10.
SuiteResult check_sandwich(uint64_t seed, int graphs);

// Moment relaxation of the fractional cone refines the subset hierarchy:
// Q2 <= L2 <= lift-on-theta <= theta with 1e-6 slack, n <= 8.
SuiteResult check_chain(uint64_t seed, int graphs);

// Graphs with stability number 2 are solved exactly at level 2 (1e-5).
SuiteResult check_exactness(uint64_t seed, int graphs);

// Instances built around a known strictly complementary optimum solve to
// 1e-7, pass the independent certificate check, and survive an SDPA
// export/import round trip bit-for-bit structurally.
SuiteResult check_solver_roundtrip(uint64_t seed, int instances);

// Closed-form size counters at n = 61, t = 2, including the two quoted
// reference counts that disagree with first-principles counting.
SuiteResult check_counters();

// theta(paley q) = sqrt(q) within 1e-4, each solve within budget_each
// seconds.
SuiteResult check_paley_theta(const std::vector<int>& qs, double budget_each);

// Published level-2 value on paley 61: 5.465 within 1e-2, plus the frozen
// regression digits.
SuiteResult check_table_row_61();

// The verifier entry point: "small" runs everything desk-fast, "full" adds
// the large quadratic-residue rows.
std::vector<SuiteResult> run_suites(bool full);

}  // namespace stabsdp::selfcheck
