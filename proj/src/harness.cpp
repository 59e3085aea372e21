#include "definetti/harness.hpp"

#include <omp.h>

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "definetti/compensated.hpp"
#include "definetti/engine.hpp"
#include "definetti/info_measures.hpp"
#include "definetti/log_binomial.hpp"
#include "definetti/oracle.hpp"
#include "serialization_detail.hpp"

namespace definetti {

using nlohmann::json;

namespace {

constexpr double kLog2 = 0.6931471805599453;

std::string fmt17(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

json json_number_or_null(double v) {
  if (!std::isfinite(v)) return nullptr;
  return v;
}

void normalize_n_grid(std::vector<int>& grid, const char* field) {
  if (grid.empty()) throw std::invalid_argument(std::string(field) + ": must be nonempty");
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  if (grid.front() < 2) throw std::invalid_argument(std::string(field) + ": entries must be >= 2");
}

// Conditional MI depends on the conditioning block only through its size m.
// One evaluation per m serves every (i, k) pair with k - i = m.
std::vector<double> mi_by_block_size(int n, int ell, int m_max) {
  std::vector<double> g(m_max + 1, 0.0);
  if (ell == 0 || ell == n) return g;
  for (int m = 1; m <= m_max; ++m) {
    g[m] = conditional_mutual_information(n, ell, 1, m + 1);
  }
  return g;
}

SuiteResult make_suite(std::string name, std::size_t cells, double worst, double tol) {
  SuiteResult s;
  s.name = std::move(name);
  s.cells = cells;
  s.worst = worst;
  s.tolerance = tol;
  s.pass = worst <= tol;
  return s;
}

}  // namespace

std::vector<int> KRule::resolve(int n) const {
  std::vector<int> out;
  switch (mode) {
    case Mode::all:
      for (int k = 1; k < n; ++k) out.push_back(k);
      break;
    case Mode::list:
      for (int k : ks) {
        if (k < 1 || k > n) {
          throw std::invalid_argument("k_rule: k=" + std::to_string(k) +
                                      " outside [1," + std::to_string(n) + "]");
        }
        out.push_back(k);
      }
      std::sort(out.begin(), out.end());
      out.erase(std::unique(out.begin(), out.end()), out.end());
      break;
    case Mode::fractions:
      for (double f : fractions) {
        if (!(f > 0.0) || !(f < 1.0)) {
          throw std::invalid_argument("k_rule: fractions must lie in (0,1)");
        }
        out.push_back(std::max(1, static_cast<int>(std::floor(f * n))));
      }
      std::sort(out.begin(), out.end());
      out.erase(std::unique(out.begin(), out.end()), out.end());
      break;
  }
  return out;
}

void validate_config(const SweepConfig& config) {
  if (config.families.empty()) {
    throw std::invalid_argument("families: must list at least one family");
  }
  std::vector<int> grid = config.n_grid;
  normalize_n_grid(grid, "n_grid");
  for (int n : grid) config.k_rule.resolve(n);  // throws naming k_rule
}

SweepConfig sweep_config_from_json(const std::string& text) {
  const json j = json::parse(text);
  SweepConfig config;
  if (!j.contains("families") || !j.at("families").is_array()) {
    throw std::invalid_argument("families: missing or not an array");
  }
  for (const auto& f : j.at("families")) {
    if (f.is_string()) {
      config.families.push_back(parse_family_label(f.get<std::string>()));
    } else {
      config.families.push_back(detail::family_from_json(f));
    }
  }
  if (!j.contains("n_grid")) throw std::invalid_argument("n_grid: missing");
  config.n_grid = j.at("n_grid").get<std::vector<int>>();
  if (j.contains("k_rule")) {
    const auto& k = j.at("k_rule");
    if (k.is_string() && k.get<std::string>() == "all") {
      config.k_rule.mode = KRule::Mode::all;
    } else if (k.is_array()) {
      config.k_rule.mode = KRule::Mode::list;
      config.k_rule.ks = k.get<std::vector<int>>();
    } else if (k.is_object() && k.contains("fractions")) {
      config.k_rule.mode = KRule::Mode::fractions;
      config.k_rule.fractions = k.at("fractions").get<std::vector<double>>();
    } else {
      throw std::invalid_argument("k_rule: expected \"all\", an int array, or {\"fractions\": [...]}");
    }
  }
  config.output_path = j.value("output_path", std::string());
  const std::string fmt = j.value("format", std::string("csv"));
  if (fmt == "csv") {
    config.format = OutputFormat::csv;
  } else if (fmt == "json") {
    config.format = OutputFormat::json;
  } else {
    throw std::invalid_argument("format: expected \"csv\" or \"json\"");
  }
  validate_config(config);
  return config;
}

std::string sweep_config_to_json(const SweepConfig& config) {
  json j;
  j["families"] = json::array();
  for (const auto& f : config.families) j["families"].push_back(detail::family_to_json(f));
  j["n_grid"] = config.n_grid;
  switch (config.k_rule.mode) {
    case KRule::Mode::all:
      j["k_rule"] = "all";
      break;
    case KRule::Mode::list:
      j["k_rule"] = config.k_rule.ks;
      break;
    case KRule::Mode::fractions:
      j["k_rule"] = json{{"fractions", config.k_rule.fractions}};
      break;
  }
  j["output_path"] = config.output_path;
  j["format"] = config.format == OutputFormat::csv ? "csv" : "json";
  return j.dump(2);
}

std::vector<SweepRow> run_sweep(const SweepConfig& config) {
  validate_config(config);
  std::vector<int> grid = config.n_grid;
  normalize_n_grid(grid, "n_grid");
  warm_log_factorial_cache(grid.back() + 1);

  struct Cell {
    int family_idx;
    int pmf_idx;
    int k;
  };
  std::vector<CountPmf> pmfs;
  std::vector<Cell> cells;
  for (std::size_t fi = 0; fi < config.families.size(); ++fi) {
    for (int n : grid) {
      pmfs.push_back(generate(config.families[fi], n));
      const int pmf_idx = static_cast<int>(pmfs.size()) - 1;
      for (int k : config.k_rule.resolve(n)) {
        cells.push_back({static_cast<int>(fi), pmf_idx, k});
      }
    }
  }

  std::vector<SweepRow> rows(cells.size());
#pragma omp parallel for schedule(dynamic)
  for (std::size_t c = 0; c < cells.size(); ++c) {
    const Cell& cell = cells[c];
    rows[c].family = config.families[cell.family_idx].label();
    rows[c].report = bound_report(pmfs[cell.pmf_idx], cell.k);
  }
  std::sort(rows.begin(), rows.end(), [](const SweepRow& a, const SweepRow& b) {
    if (a.family != b.family) return a.family < b.family;
    if (a.report.n != b.report.n) return a.report.n < b.report.n;
    return a.report.k < b.report.k;
  });
  return rows;
}

bool sweep_within_bound(const std::vector<SweepRow>& rows) {
  for (const auto& row : rows) {
    if (row.report.divergence_nats > row.report.theorem_bound) return false;
  }
  return true;
}

std::string sweep_to_csv(const std::vector<SweepRow>& rows) {
  std::string out = "family,n,k,divergence_nats,tv,theorem_bound,pinsker_tv_bound,ratio\n";
  for (const auto& row : rows) {
    const BoundReport& r = row.report;
    out += row.family;
    out += ',' + std::to_string(r.n) + ',' + std::to_string(r.k);
    out += ',' + fmt17(r.divergence_nats) + ',' + fmt17(r.tv);
    out += ',' + fmt17(r.theorem_bound) + ',' + fmt17(r.pinsker_tv_bound);
    out += ',' + fmt17(r.ratio) + '\n';
  }
  return out;
}

std::string sweep_to_json(const std::vector<SweepRow>& rows) {
  json arr = json::array();
  for (const auto& row : rows) {
    const BoundReport& r = row.report;
    arr.push_back(json{{"family", row.family},
                       {"n", r.n},
                       {"k", r.k},
                       {"divergence_nats", r.divergence_nats},
                       {"tv", r.tv},
                       {"theorem_bound", json_number_or_null(r.theorem_bound)},
                       {"pinsker_tv_bound", json_number_or_null(r.pinsker_tv_bound)},
                       {"ratio", r.ratio}});
  }
  return arr.dump(2);
}

std::vector<FamilySpec> named_family_bank() {
  return {FamilySpec::iid(0.3),      FamilySpec::iid(0.5),
          FamilySpec::point_mass_fraction(0.5), FamilySpec::polya(1.0, 1.0),
          FamilySpec::polya(2.0, 5.0), FamilySpec::uniform_counts()};
}

std::vector<FamilySpec> theorem_family_bank(int dirichlet_count, std::uint64_t seed_base) {
  std::vector<FamilySpec> bank = {
      FamilySpec::iid(0.3), FamilySpec::iid(0.5), FamilySpec::point_mass_fraction(0.5),
      FamilySpec::polya(1.0, 1.0), FamilySpec::polya(2.0, 5.0)};
  for (int i = 0; i < dirichlet_count; ++i) {
    bank.push_back(FamilySpec::random_dirichlet(seed_base + static_cast<std::uint64_t>(i)));
  }
  return bank;
}

std::vector<SuiteResult> verify_oracle_equivalence(int max_n, int seeds) {
  if (max_n < 2) throw std::invalid_argument("max_n: must be >= 2");
  if (max_n > 20) throw std::invalid_argument("max_n: oracle is capped at n <= 20");
  if (seeds < 0) throw std::invalid_argument("seeds: must be >= 0");

  double worst_exch = 0.0, worst_marg = 0.0, worst_coords = 0.0, worst_norm = 0.0;
  double worst_div = 0.0, worst_tv = 0.0, worst_mi = 0.0, worst_cdiv = 0.0;
  double support_violations = 0.0;
  std::size_t cells_exch = 0, cells_marg = 0, cells_div = 0, cells_mi = 0, cells_cdiv = 0;

  for (int n = 2; n <= max_n; ++n) {
    std::vector<CountPmf> bank;
    for (const auto& spec : named_family_bank()) bank.push_back(generate(spec, n));
    for (int s = 0; s < seeds; ++s) {
      bank.push_back(generate(FamilySpec::random_dirichlet(100 + s), n));
    }

    const std::size_t size = std::size_t{1} << n;
#pragma omp parallel for schedule(dynamic) reduction(max : worst_exch, worst_marg, worst_coords, worst_norm, worst_div, worst_tv) reduction(+ : support_violations, cells_exch, cells_marg, cells_div)
    for (std::size_t b = 0; b < bank.size(); ++b) {
      const CountPmf& pi = bank[b];
      const JointTable joint = enumerate_joint(pi);

      // Invariance under adjacent transpositions of coordinates.
      for (int t = 0; t + 1 < n; ++t) {
        for (std::uint32_t x = 0; x < size; ++x) {
          const std::uint32_t bit_a = (x >> t) & 1u;
          const std::uint32_t bit_b = (x >> (t + 1)) & 1u;
          if (bit_a == bit_b) continue;
          const std::uint32_t y = x ^ ((1u << t) | (1u << (t + 1)));
          worst_exch = std::max(worst_exch, std::abs(joint[x] - joint[y]));
          ++cells_exch;
        }
      }

      for (int k = 1; k <= n; ++k) {
        const WeightClassPmf q = marginal_weight_pmf(pi, k);
        const WeightClassPmf m = mixture_weight_pmf(mixing_measure(pi), k);
        worst_norm = std::max(worst_norm, std::abs(weight_class_total(q) - 1.0));
        worst_norm = std::max(worst_norm, std::abs(weight_class_total(m) - 1.0));
        for (int s = 0; s <= k; ++s) {
          if (q[s] > 0.0 && m[s] == 0.0) support_violations += 1.0;
        }

        std::vector<int> front(k), back(k);
        for (int t = 0; t < k; ++t) {
          front[t] = t;
          back[t] = n - k + t;
        }
        const FinitePmf qk = oracle_marginal(joint, front);
        const FinitePmf qk_back = oracle_marginal(joint, back);
        for (std::uint32_t y = 0; y < qk.size(); ++y) {
          const int w = std::popcount(y);
          worst_marg = std::max(worst_marg, std::abs(qk[y] - q[w]));
          worst_coords = std::max(worst_coords, std::abs(qk_back[y] - q[w]));
          ++cells_marg;
        }

        const FinitePmf mix = oracle_mixture(pi, k);
        worst_div = std::max(worst_div,
                             std::abs(weight_class_kl(q, m) - relative_entropy(qk, mix)));
        worst_tv = std::max(worst_tv,
                            std::abs(weight_class_tv(q, m) - total_variation(qk, mix)));
        ++cells_div;
      }
    }

    // Conditional laws depend on pi only through the conditioning count, so
    // the uniform-counts joint covers every (ell, i, k) once per n.
    const JointTable joint_u = enumerate_joint(generate(FamilySpec::uniform_counts(), n));
    const bool exhaustive = n <= 12;
    std::uint64_t state = 0xabcd0000u + static_cast<std::uint64_t>(n);
    std::vector<std::array<int, 3>> mi_tuples;
    if (exhaustive) {
      for (int ell = 0; ell <= n; ++ell) {
        for (int k = 2; k <= n; ++k) {
          for (int i = 1; i < k; ++i) mi_tuples.push_back({ell, i, k});
        }
      }
    } else {
      for (int t = 0; t < 500; ++t) {
        const int ell = static_cast<int>(splitmix64_next(state) % (n + 1));
        const int k = 2 + static_cast<int>(splitmix64_next(state) % (n - 1));
        const int i = 1 + static_cast<int>(splitmix64_next(state) % (k - 1));
        mi_tuples.push_back({ell, i, k});
      }
    }
#pragma omp parallel for schedule(dynamic) reduction(max : worst_mi)
    for (std::size_t t = 0; t < mi_tuples.size(); ++t) {
      const auto [ell, i, k] = mi_tuples[t];
      const double engine_mi = conditional_mutual_information(n, ell, i, k);
      const double oracle_mi = oracle_conditional_mi(joint_u, i, k, ell);
      worst_mi = std::max(worst_mi, std::abs(engine_mi - oracle_mi));
    }
    cells_mi += mi_tuples.size();

    std::vector<std::array<int, 2>> cd_pairs;
    if (exhaustive) {
      for (int ell = 0; ell <= n; ++ell) {
        for (int k = 1; k <= n; ++k) cd_pairs.push_back({ell, k});
      }
    } else {
      for (int t = 0; t < 200; ++t) {
        cd_pairs.push_back({static_cast<int>(splitmix64_next(state) % (n + 1)),
                            1 + static_cast<int>(splitmix64_next(state) % n)});
      }
    }
#pragma omp parallel for schedule(dynamic) reduction(max : worst_cdiv)
    for (std::size_t t = 0; t < cd_pairs.size(); ++t) {
      const auto [ell, k] = cd_pairs[t];
      std::vector<double> raw(n + 1, 0.0);
      raw[ell] = 1.0;
      const CountPmf delta(n, std::move(raw));
      worst_cdiv = std::max(worst_cdiv, std::abs(conditional_divergence(n, ell, k) -
                                                 oracle_divergence(delta, k)));
    }
    cells_cdiv += cd_pairs.size();
  }

  return {make_suite("joint_exchangeability", cells_exch, worst_exch, 1e-15),
          make_suite("marginal_vs_oracle", cells_marg, worst_marg, 1e-12),
          make_suite("marginal_other_coords", cells_marg, worst_coords, 1e-12),
          make_suite("weight_class_normalization", cells_div, worst_norm, 1e-12),
          make_suite("mixture_support", cells_div, support_violations, 0.0),
          make_suite("divergence_vs_oracle", cells_div, worst_div, 1e-9),
          make_suite("tv_vs_oracle", cells_div, worst_tv, 1e-10),
          make_suite("conditional_mi_vs_oracle", cells_mi, worst_mi, 1e-10),
          make_suite("conditional_divergence_vs_oracle", cells_cdiv, worst_cdiv, 1e-10)};
}

SuiteResult verify_chain_rule(int n_max) {
  if (n_max < 2) throw std::invalid_argument("n_max: must be >= 2");
  warm_log_factorial_cache(n_max + 1);
  double worst = 0.0;
  std::size_t cells = 0;
#pragma omp parallel for schedule(dynamic) reduction(max : worst) reduction(+ : cells)
  for (int n = 2; n <= n_max; ++n) {
    for (int ell = 0; ell <= n; ++ell) {
      const std::vector<double> g = mi_by_block_size(n, ell, n - 1);
      CompensatedSum mi_sum;
      for (int k = 1; k <= n; ++k) {
        if (k >= 2) mi_sum.add(g[k - 1]);  // adds the i = 1 term, block size k-1
        worst = std::max(worst, std::abs(conditional_divergence(n, ell, k) - mi_sum.value()));
        ++cells;
      }
    }
  }
  return make_suite("chain_rule", cells, worst, 1e-10);
}

SuiteResult verify_convexity_step(const std::vector<FamilySpec>& bank,
                                  const std::vector<int>& n_grid) {
  std::vector<int> grid = n_grid;
  normalize_n_grid(grid, "n_grid");
  warm_log_factorial_cache(grid.back() + 1);
  double worst = -std::numeric_limits<double>::infinity();
  std::size_t cells = 0;
  for (int n : grid) {
    std::vector<CountPmf> pmfs;
    for (const auto& spec : bank) pmfs.push_back(generate(spec, n));
#pragma omp parallel for schedule(dynamic) reduction(max : worst) reduction(+ : cells)
    for (int k = 1; k <= n; ++k) {
      std::vector<double> cond(n + 1);
      for (int ell = 0; ell <= n; ++ell) cond[ell] = conditional_divergence(n, ell, k);
      for (const CountPmf& pi : pmfs) {
        CompensatedSum rhs;
        for (int ell = 0; ell <= n; ++ell) {
          if (pi[ell] != 0.0) rhs.add(pi[ell] * cond[ell]);
        }
        worst = std::max(worst, divergence_to_mixture(pi, k) - rhs.value());
        ++cells;
      }
    }
  }
  return make_suite("convexity_step", cells, worst, 1e-10);
}

std::vector<SuiteResult> verify_mi_bounds(int n_max, const std::vector<int>& sampled_n,
                                          int samples_per_n, std::uint64_t seed) {
  if (n_max < 2) throw std::invalid_argument("n_max: must be >= 2");
  double worst_bound = -std::numeric_limits<double>::infinity();
  double worst_cap = -std::numeric_limits<double>::infinity();
  std::size_t cells = 0;
#pragma omp parallel for schedule(dynamic) reduction(max : worst_bound, worst_cap) reduction(+ : cells)
  for (int n = 2; n <= n_max; ++n) {
    for (int ell = 0; ell <= n; ++ell) {
      const std::vector<double> g = mi_by_block_size(n, ell, n - 1);
      for (int k = 2; k <= n; ++k) {
        const double bound = bound_values(n, k).lemma_bound;
        for (int i = 1; i < k; ++i) {
          const double mi = g[k - i];
          worst_bound = std::max(worst_bound, mi - bound);  // -inf - inf stays -inf at k = n
          worst_cap = std::max(worst_cap, mi - kLog2);
          ++cells;
        }
      }
    }
  }
  for (int n : sampled_n) {
    std::uint64_t state = seed ^ (0x5eedULL * static_cast<std::uint64_t>(n));
#pragma omp parallel for schedule(dynamic) reduction(max : worst_bound, worst_cap) reduction(+ : cells)
    for (int t = 0; t < samples_per_n; ++t) {
      std::uint64_t local = state + 0x9e3779b97f4a7c15ULL * static_cast<std::uint64_t>(t);
      const int ell = 1 + static_cast<int>(splitmix64_next(local) % (n - 1));
      const int k = 2 + static_cast<int>(splitmix64_next(local) % (n - 1));
      const int i = 1 + static_cast<int>(splitmix64_next(local) % (k - 1));
      const double mi = conditional_mutual_information(n, ell, i, k);
      const double bound = bound_values(n, k).lemma_bound;
      worst_bound = std::max(worst_bound, mi - bound);
      worst_cap = std::max(worst_cap, mi - kLog2);
      ++cells;
    }
  }
  return {make_suite("mi_within_scaled_bound", cells, worst_bound, 0.0),
          make_suite("mi_within_binary_entropy_cap", cells, worst_cap, 1e-12)};
}

std::vector<SuiteResult> verify_term_domination(int n_max) {
  if (n_max < 4) throw std::invalid_argument("n_max: must be >= 4");
  double worst_mi = -std::numeric_limits<double>::infinity();
  double worst_total = -std::numeric_limits<double>::infinity();
  std::size_t cells = 0;
#pragma omp parallel for schedule(dynamic) reduction(max : worst_mi, worst_total) reduction(+ : cells)
  for (int n = 4; n <= n_max; ++n) {
    const int k_max = n / 2;
    for (int ell = 1; ell <= n - 1; ++ell) {
      const std::vector<double> g = mi_by_block_size(n, ell, std::max(1, k_max - 1));
      for (int k = 2; k <= k_max; ++k) {
        const double lemma = bound_values(n, k).lemma_bound;
        for (int i = 1; i < k; ++i) {
          const LemmaTerms terms = lemma_term_bounds(n, ell, i, k);
          worst_mi = std::max(worst_mi, g[k - i] - terms.total);
          worst_total = std::max(worst_total, terms.total - lemma);
          ++cells;
        }
      }
    }
  }
  return {make_suite("mi_term_domination", cells, worst_mi, 0.0),
          make_suite("term_total_within_scaled_bound", cells, worst_total, 0.0)};
}

SuiteResult verify_k1_exactness(const std::vector<FamilySpec>& bank,
                                const std::vector<int>& n_grid) {
  std::vector<int> grid = n_grid;
  normalize_n_grid(grid, "n_grid");
  double worst = 0.0;
  std::size_t cells = 0;
  for (int n : grid) {
    for (const auto& spec : bank) {
      worst = std::max(worst, divergence_to_mixture(generate(spec, n), 1));
      ++cells;
    }
  }
  return make_suite("k1_exactness", cells, worst, 1e-12);
}

SuiteResult verify_pinsker_pairs(int pairs, int max_support, std::uint64_t seed) {
  if (max_support < 2) throw std::invalid_argument("max_support: must be >= 2");
  double worst = -std::numeric_limits<double>::infinity();
  std::uint64_t state = seed;
  for (int t = 0; t < pairs; ++t) {
    const int size = 2 + static_cast<int>(splitmix64_next(state) % (max_support - 1));
    std::vector<double> p(size), q(size);
    double ps = 0.0, qs = 0.0;
    for (int i = 0; i < size; ++i) {
      double e = -std::log1p(-splitmix64_unit(state));
      if (e < 1e-300) e = 1e-300;
      p[i] = e;
      ps += e;
      e = -std::log1p(-splitmix64_unit(state));
      if (e < 1e-300) e = 1e-300;
      q[i] = e;
      qs += e;
    }
    for (double& x : p) x /= ps;
    for (double& x : q) x /= qs;
    const FinitePmf P(std::move(p)), Q(std::move(q));
    const double tv = total_variation(P, Q);
    worst = std::max(worst, tv * tv - 2.0 * relative_entropy(P, Q));
  }
  return make_suite("pinsker_pairs", static_cast<std::size_t>(pairs), worst, 1e-12);
}

SuiteResult verify_entropy_difference_pairs(int pairs, std::uint64_t seed) {
  double worst = -std::numeric_limits<double>::infinity();
  std::uint64_t state = seed;
  auto interior = [&state]() {
    double u = splitmix64_unit(state);
    while (u <= 0.0) u = splitmix64_unit(state);
    return u;
  };
  for (int t = 0; t < pairs; ++t) {
    const double p = interior();
    const double q = interior();
    worst = std::max(worst, std::abs(binary_entropy(p) - binary_entropy(q)) -
                                entropy_difference_bound(p, q));
  }
  return make_suite("entropy_difference_pairs", static_cast<std::size_t>(pairs), worst, 1e-12);
}

VerifyReport run_verify(int max_n, int seeds) {
  VerifyReport report;
  report.suites = verify_oracle_equivalence(max_n, seeds);
  report.suites.push_back(verify_chain_rule(max_n));

  std::vector<int> grid;
  for (int n = 2; n <= max_n; ++n) grid.push_back(n);
  std::vector<FamilySpec> bank = named_family_bank();
  for (int s = 0; s < seeds; ++s) bank.push_back(FamilySpec::random_dirichlet(100 + s));
  report.suites.push_back(verify_convexity_step(bank, grid));
  report.suites.push_back(verify_k1_exactness(bank, grid));

  for (auto& s : verify_mi_bounds(max_n, {}, 0, 0)) report.suites.push_back(std::move(s));
  if (max_n >= 4) {
    for (auto& s : verify_term_domination(max_n)) report.suites.push_back(std::move(s));
  }
  report.pass = true;
  for (const auto& s : report.suites) report.pass = report.pass && s.pass;
  return report;
}

std::string verify_to_text(const VerifyReport& report) {
  std::ostringstream out;
  for (const auto& s : report.suites) {
    char line[160];
    std::snprintf(line, sizeof(line), "%-36s %10zu cells   worst %+.3e   tol %.1e   %s\n",
                  s.name.c_str(), s.cells, s.worst, s.tolerance, s.pass ? "pass" : "FAIL");
    out << line;
  }
  out << (report.pass ? "verify: all suites passed\n" : "verify: FAILURES detected\n");
  return out.str();
}

RateResult run_rate(const FamilySpec& family, int k, std::vector<int> n_grid) {
  normalize_n_grid(n_grid, "n_grid");
  if (k < 1) throw std::invalid_argument("k: must be >= 1");
  if (k >= n_grid.front()) {
    throw std::invalid_argument("k: must be below every n in n_grid");
  }
  RateResult result;
  result.family = family;
  result.k = k;
  result.rows.resize(n_grid.size());
#pragma omp parallel for schedule(dynamic)
  for (std::size_t i = 0; i < n_grid.size(); ++i) {
    result.rows[i] = {n_grid[i], tv_to_mixture(generate(family, n_grid[i]), k)};
  }
  bool degenerate = false;
  for (const auto& row : result.rows) degenerate = degenerate || !(row.tv > 0.0);
  if (!degenerate && result.rows.size() >= 2) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double count = static_cast<double>(result.rows.size());
    for (const auto& row : result.rows) {
      const double x = std::log(static_cast<double>(row.n));
      const double y = std::log(row.tv);
      sx += x;
      sy += y;
      sxx += x * x;
      sxy += x * y;
    }
    result.slope = (count * sxy - sx * sy) / (count * sxx - sx * sx);
  }
  return result;
}

std::string rate_to_csv(const RateResult& r) {
  std::string out = "family,n,k,tv\n";
  for (const auto& row : r.rows) {
    out += r.family.label() + ',' + std::to_string(row.n) + ',' + std::to_string(r.k) +
           ',' + fmt17(row.tv) + '\n';
  }
  return out;
}

std::string rate_to_json(const RateResult& r) {
  json j;
  j["family"] = detail::family_to_json(r.family);
  j["k"] = r.k;
  j["rows"] = json::array();
  for (const auto& row : r.rows) {
    j["rows"].push_back(json{{"n", row.n}, {"tv", row.tv}});
  }
  j["slope"] = r.slope ? json(*r.slope) : json(nullptr);
  return j.dump(2);
}

std::vector<ConvergeRow> run_converge(double a, double b, int k, std::vector<int> n_grid) {
  if (!(a > 0.0)) throw std::invalid_argument("a: must be > 0");
  if (!(b > 0.0)) throw std::invalid_argument("b: must be > 0");
  normalize_n_grid(n_grid, "n_grid");
  if (k < 1) throw std::invalid_argument("k: must be >= 1");
  if (k >= n_grid.front()) throw std::invalid_argument("k: must be below every n in n_grid");
  std::vector<ConvergeRow> rows(n_grid.size());
#pragma omp parallel for schedule(dynamic)
  for (std::size_t i = 0; i < n_grid.size(); ++i) {
    const int n = n_grid[i];
    rows[i] = {n, divergence_to_mixture(generate(FamilySpec::polya(a, b), n), k),
               bound_values(n, k).theorem_bound};
  }
  return rows;
}

std::string converge_to_csv(double a, double b, int k, const std::vector<ConvergeRow>& rows) {
  const std::string label = FamilySpec::polya(a, b).label();
  std::string out = "family,n,k,divergence_nats,theorem_bound\n";
  for (const auto& row : rows) {
    out += label + ',' + std::to_string(row.n) + ',' + std::to_string(k) + ',' +
           fmt17(row.divergence) + ',' + fmt17(row.theorem_bound) + '\n';
  }
  return out;
}

std::string converge_to_json(double a, double b, int k, const std::vector<ConvergeRow>& rows) {
  json j;
  j["family"] = detail::family_to_json(FamilySpec::polya(a, b));
  j["k"] = k;
  j["rows"] = json::array();
  for (const auto& row : rows) {
    j["rows"].push_back(json{{"n", row.n},
                             {"divergence_nats", row.divergence},
                             {"theorem_bound", json_number_or_null(row.theorem_bound)}});
  }
  return j.dump(2);
}

ExtremalResult run_extremal(int n, int k, int dirichlet_batch, std::uint64_t seed_base) {
  if (n < 2) throw std::invalid_argument("n: must be >= 2");
  if (k < 1 || k >= n) throw std::invalid_argument("k: must lie in [1,n-1]");
  if (dirichlet_batch < 0) throw std::invalid_argument("batch: must be >= 0");

  std::vector<FamilySpec> candidates;
  for (int ell = 0; ell <= n; ++ell) candidates.push_back(FamilySpec::point_mass(ell));
  for (int i = 0; i < dirichlet_batch; ++i) {
    candidates.push_back(FamilySpec::random_dirichlet(seed_base + static_cast<std::uint64_t>(i)));
  }

  std::vector<double> divergences(candidates.size());
#pragma omp parallel for schedule(dynamic)
  for (std::size_t c = 0; c < candidates.size(); ++c) {
    divergences[c] = divergence_to_mixture(generate(candidates[c], n), k);
  }

  const double bound = bound_values(n, k).theorem_bound;
  std::size_t best = 0;
  for (std::size_t c = 1; c < candidates.size(); ++c) {
    if (divergences[c] > divergences[best]) best = c;
  }
  ExtremalResult r;
  r.n = n;
  r.k = k;
  r.argmax_family = candidates[best].label();
  r.divergence = divergences[best];
  r.theorem_bound = bound;
  r.ratio = std::isinf(bound) ? 0.0 : r.divergence / bound;
  r.gap = bound - r.divergence;
  return r;
}

std::string extremal_to_json(const ExtremalResult& r) {
  json j{{"n", r.n},
         {"k", r.k},
         {"argmax_family", r.argmax_family},
         {"divergence_nats", r.divergence},
         {"theorem_bound", json_number_or_null(r.theorem_bound)},
         {"ratio", r.ratio},
         {"gap", json_number_or_null(r.gap)}};
  return j.dump(2);
}

std::string extremal_to_text(const ExtremalResult& r) {
  std::ostringstream out;
  out << "extremal search at n=" << r.n << " k=" << r.k << '\n'
      << "  argmax family : " << r.argmax_family << '\n'
      << "  divergence    : " << fmt17(r.divergence) << '\n'
      << "  theorem bound : " << fmt17(r.theorem_bound) << '\n'
      << "  ratio         : " << fmt17(r.ratio) << '\n'
      << "  gap           : " << fmt17(r.gap) << '\n';
  return out.str();
}

void apply_thread_cap_from_env() {
  const char* env = std::getenv("DEFINETTI_THREADS");
  if (env == nullptr) return;
  const int threads = std::atoi(env);
  if (threads > 0) omp_set_num_threads(threads);
}

}  // namespace definetti
