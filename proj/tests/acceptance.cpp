// Acceptance suite: one line per criterion, nonzero exit when any fails.
// Tolerances are fixed here, not tuned at runtime.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "definetti/engine.hpp"
#include "definetti/families.hpp"
#include "definetti/harness.hpp"

using namespace definetti;

namespace {

int g_failures = 0;
int g_index = 0;

void report(const std::string& name, bool pass, const std::string& detail) {
  ++g_index;
  if (!pass) ++g_failures;
  std::printf("[%2d] %-34s %s  (%s)\n", g_index, name.c_str(), pass ? "PASS" : "FAIL",
              detail.c_str());
  std::fflush(stdout);
}

std::string describe(const std::vector<SuiteResult>& suites) {
  std::string out;
  for (const auto& s : suites) {
    char buf[96];
    std::snprintf(buf, sizeof(buf), "%s%s worst %.2e", out.empty() ? "" : "; ",
                  s.name.c_str(), s.worst);
    out += buf;
  }
  return out;
}

bool all_pass(const std::vector<SuiteResult>& suites) {
  return std::all_of(suites.begin(), suites.end(),
                     [](const SuiteResult& s) { return s.pass; });
}

CountPmf delta(int n, int ell) {
  std::vector<double> raw(n + 1, 0.0);
  raw[ell] = 1.0;
  return make_count_pmf(n, std::move(raw));
}

}  // namespace

int main() {
  apply_thread_cap_from_env();
  const std::vector<int> n_grid = {4, 8, 16, 32, 64, 128, 256};
  const std::vector<FamilySpec> bank = theorem_family_bank(10);

  // 1. divergence within the k^2-scaled bound across the whole sweep
  SweepConfig config;
  config.families = bank;
  config.n_grid = n_grid;
  const std::vector<SweepRow> rows = run_sweep(config);
  {
    double worst = -1e300;
    for (const auto& row : rows) {
      if (!std::isinf(row.report.theorem_bound)) {
        worst = std::max(worst, row.report.divergence_nats - row.report.theorem_bound);
      }
    }
    char detail[96];
    std::snprintf(detail, sizeof(detail), "%zu cells, worst margin %.2e", rows.size(), worst);
    report("divergence_within_theorem_bound", sweep_within_bound(rows), detail);
  }

  // 2. conditional MI within the k-scaled bound, exhaustive n <= 64 plus
  //    seeded samples at n in {128, 256}; every MI also below log 2
  {
    const auto suites = verify_mi_bounds(64, {128, 256}, 4000, 20250810);
    report("conditional_mi_within_bounds", all_pass(suites), describe(suites));
  }

  // 3. chain rule identity, exhaustive n <= 64
  {
    const SuiteResult s = verify_chain_rule(64);
    char detail[96];
    std::snprintf(detail, sizeof(detail), "%zu cells, worst %.2e, tol %.0e", s.cells, s.worst,
                  s.tolerance);
    report("chain_rule_identity", s.pass, detail);
  }

  // 4. averaging step: divergence below the pi-average of conditional terms
  {
    const SuiteResult s =
        verify_convexity_step(bank, {2, 4, 8, 16, 32, 64, 128});
    char detail[96];
    std::snprintf(detail, sizeof(detail), "%zu cells, worst %.2e, tol %.0e", s.cells, s.worst,
                  s.tolerance);
    report("convexity_averaging_step", s.pass, detail);
  }

  // 5. engine equals the brute-force enumeration at n <= 12
  {
    const auto suites = verify_oracle_equivalence(12, 20);
    report("oracle_equivalence", all_pass(suites), describe(suites));
  }

  // 6. degenerate exactness: k = 1, point masses at the ends, ell in {0, n}
  {
    bool pass = true;
    double worst_k1 = 0.0;
    for (int n : n_grid) {
      for (const auto& spec : bank) {
        worst_k1 = std::max(worst_k1, divergence_to_mixture(generate(spec, n), 1));
      }
      for (int k = 1; k <= n; k += std::max(1, n / 4)) {
        pass = pass && divergence_to_mixture(delta(n, 0), k) == 0.0;
        pass = pass && divergence_to_mixture(delta(n, n), k) == 0.0;
      }
      for (int k = 2; k <= std::min(n, 16); ++k) {
        for (int i = 1; i < k; ++i) {
          pass = pass && conditional_mutual_information(n, 0, i, k) == 0.0;
          pass = pass && conditional_mutual_information(n, n, i, k) == 0.0;
        }
      }
    }
    pass = pass && worst_k1 <= 1e-12;
    char detail[96];
    std::snprintf(detail, sizeof(detail), "worst k=1 divergence %.2e, end masses exact",
                  worst_k1);
    report("degenerate_exactness", pass, detail);
  }

  // 7. tv within the Pinsker-converted bound, plus the generic inequality
  {
    double worst = -1e300;
    bool pass = true;
    for (const auto& row : rows) {
      if (std::isinf(row.report.pinsker_tv_bound)) continue;
      worst = std::max(worst, row.report.tv - row.report.pinsker_tv_bound);
      pass = pass && row.report.tv <= row.report.pinsker_tv_bound;
    }
    const SuiteResult pairs = verify_pinsker_pairs(10000, 16, 424242);
    pass = pass && pairs.pass;
    char detail[96];
    std::snprintf(detail, sizeof(detail), "sweep worst margin %.2e; pairs worst %.2e", worst,
                  pairs.worst);
    report("pinsker_tv_bound", pass, detail);
  }

  // 8. entropy difference inequality on seeded interior pairs
  {
    const SuiteResult s = verify_entropy_difference_pairs(10000, 20250810);
    char detail[96];
    std::snprintf(detail, sizeof(detail), "%zu pairs, worst %.2e", s.cells, s.worst);
    report("entropy_difference_bound", s.pass, detail);
  }

  // 9. term-by-term domination of the conditional MI, exhaustive n <= 128
  {
    const auto suites = verify_term_domination(128);
    report("mi_term_domination", all_pass(suites), describe(suites));
  }

  // 10. tv decay rate: log-log slope near -1
  {
    const RateResult r = run_rate(FamilySpec::iid(0.3), 4, {32, 64, 128, 256, 512, 1024});
    const bool pass = r.slope.has_value() && *r.slope >= -1.25 && *r.slope <= -0.8;
    char detail[96];
    std::snprintf(detail, sizeof(detail), "slope %.4f, expected in [-1.25,-0.8]",
                  r.slope.value_or(0.0));
    report("tv_rate_slope", pass, detail);
  }

  // 11. urn family divergence shrinks to the infinite-length limit
  {
    const auto cv = run_converge(1.0, 1.0, 3, {8, 16, 32, 64, 128, 256, 512});
    bool pass = cv.size() == 7;
    for (const auto& row : cv) {
      pass = pass && row.divergence > 0.0 && row.divergence <= row.theorem_bound;
    }
    pass = pass && cv.back().divergence < cv.front().divergence / 10.0;
    char detail[96];
    std::snprintf(detail, sizeof(detail), "first %.3e, last %.3e", cv.front().divergence,
                  cv.back().divergence);
    report("mixture_convergence", pass, detail);
  }

  if (g_failures == 0) {
    std::printf("acceptance: all %d criteria passed\n", g_index);
  } else {
    std::printf("acceptance: %d of %d criteria FAILED\n", g_failures, g_index);
  }
  return g_failures == 0 ? 0 : 1;
}
