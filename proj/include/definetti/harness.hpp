#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "definetti/count_pmf.hpp"
#include "definetti/families.hpp"

namespace definetti {

enum class OutputFormat { csv, json };

// Which k values a sweep visits for each n: every k in [1,n-1], an explicit
// list (each value must fit in [1,n] for every n in the grid), or fractions
// of n resolved as max(1, floor(f*n)).
struct KRule {
  enum class Mode { all, list, fractions };
  Mode mode = Mode::all;
  std::vector<int> ks;
  std::vector<double> fractions;

  std::vector<int> resolve(int n) const;
};

struct SweepConfig {
  std::vector<FamilySpec> families;
  std::vector<int> n_grid;  // ascending, unique, entries >= 2
  KRule k_rule;
  std::string output_path;  // empty means stdout
  OutputFormat format = OutputFormat::csv;
};

// Throws std::invalid_argument naming the offending field.
void validate_config(const SweepConfig& config);

SweepConfig sweep_config_from_json(const std::string& text);
std::string sweep_config_to_json(const SweepConfig& config);

struct SweepRow {
  std::string family;
  BoundReport report;
};

// One row per (family, n, k), computed in parallel and returned sorted by
// (family label, n, k) regardless of scheduling.
std::vector<SweepRow> run_sweep(const SweepConfig& config);

// True when every row satisfies divergence <= theorem_bound; drives the CLI
// exit status.
bool sweep_within_bound(const std::vector<SweepRow>& rows);

// Fixed columns family,n,k,divergence_nats,tv,theorem_bound,pinsker_tv_bound,
// ratio; floats at 17 significant digits; infinity as the literal "inf" in
// CSV and null in JSON.
std::string sweep_to_csv(const std::vector<SweepRow>& rows);
std::string sweep_to_json(const std::vector<SweepRow>& rows);

struct SuiteResult {
  std::string name;
  std::size_t cells = 0;
  double worst = 0.0;  // largest deviation or bound violation seen
  double tolerance = 0.0;
  bool pass = true;
};

struct VerifyReport {
  std::vector<SuiteResult> suites;
  bool pass = true;
};

// Named families used across verification: iid(0.3), iid(0.5),
// point_mass(0.5n), polya(1,1), polya(2,5), uniform_counts.
std::vector<FamilySpec> named_family_bank();

// Sweep bank: the named families minus uniform_counts (it duplicates
// polya(1,1)) plus `dirichlet_count` seeded random instances.
std::vector<FamilySpec> theorem_family_bank(int dirichlet_count,
                                            std::uint64_t seed_base = 1);

// Engine-vs-enumeration equivalence at n in [2, max_n] (max_n <= 20), over
// the named bank plus `seeds` random instances. Exhaustive conditional grids
// up to n = 12, seeded samples above.
std::vector<SuiteResult> verify_oracle_equivalence(int max_n, int seeds);

// |conditional divergence - sum of conditional MI terms|, exhaustive over
// ell and k for every n in [2, n_max].
SuiteResult verify_chain_rule(int n_max);

// divergence <= sum_l pi(l) * conditional_divergence, per family and k.
SuiteResult verify_convexity_step(const std::vector<FamilySpec>& bank,
                                  const std::vector<int>& n_grid);

// Conditional MI against its closed-form bounds: exhaustive over all
// (ell, i, k) for n in [2, n_max], plus seeded samples at the listed larger
// n. Returns {mi within bound, mi within log 2 cap}.
std::vector<SuiteResult> verify_mi_bounds(int n_max,
                                          const std::vector<int>& sampled_n,
                                          int samples_per_n,
                                          std::uint64_t seed);

// Term-by-term domination in the regime 2k <= n: MI <= term total and
// term total <= the k-scaled bound, exhaustive for n in [4, n_max].
std::vector<SuiteResult> verify_term_domination(int n_max);

// divergence(pi, 1) <= 1e-12 for every family and n.
SuiteResult verify_k1_exactness(const std::vector<FamilySpec>& bank,
                                const std::vector<int>& n_grid);

// Seeded random pmf pairs (support <= max_support, strictly positive Q):
// tv^2 <= 2 * relative entropy.
SuiteResult verify_pinsker_pairs(int pairs, int max_support, std::uint64_t seed);

// Seeded interior pairs: |h(p) - h(q)| <= entropy_difference_bound(p, q).
SuiteResult verify_entropy_difference_pairs(int pairs, std::uint64_t seed);

// The full battery behind the `verify` subcommand.
VerifyReport run_verify(int max_n, int seeds);
std::string verify_to_text(const VerifyReport& report);

struct RateRow {
  int n = 0;
  double tv = 0.0;
};

struct RateResult {
  FamilySpec family;
  int k = 0;
  std::vector<RateRow> rows;
  std::optional<double> slope;  // least-squares log tv vs log n; absent when degenerate
};

RateResult run_rate(const FamilySpec& family, int k, std::vector<int> n_grid);
std::string rate_to_csv(const RateResult& r);
std::string rate_to_json(const RateResult& r);

struct ConvergeRow {
  int n = 0;
  double divergence = 0.0;
  double theorem_bound = 0.0;
};

std::vector<ConvergeRow> run_converge(double a, double b, int k,
                                      std::vector<int> n_grid);
std::string converge_to_csv(double a, double b, int k,
                            const std::vector<ConvergeRow>& rows);
std::string converge_to_json(double a, double b, int k,
                             const std::vector<ConvergeRow>& rows);

struct ExtremalResult {
  int n = 0;
  int k = 0;
  std::string argmax_family;
  double divergence = 0.0;
  double theorem_bound = 0.0;
  double ratio = 0.0;
  double gap = 0.0;
};

// Worst observed divergence/bound ratio over every point mass delta_l plus a
// seeded random batch.
ExtremalResult run_extremal(int n, int k, int dirichlet_batch,
                            std::uint64_t seed_base);
std::string extremal_to_json(const ExtremalResult& r);
std::string extremal_to_text(const ExtremalResult& r);

// Honors DEFINETTI_THREADS when set to a positive integer.
void apply_thread_cap_from_env();

}  // namespace definetti
