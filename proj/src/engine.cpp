#include "definetti/engine.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "definetti/compensated.hpp"
#include "definetti/info_measures.hpp"
#include "definetti/log_binomial.hpp"

namespace definetti {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Below this many inner terms the OpenMP fork costs more than the loop.
constexpr long kParallelWorkThreshold = 1 << 14;

double clamp_divergence(double d, const char* what) {
  if (d < 0.0) {
    if (d < -1e-12) throw std::logic_error(std::string(what) + ": negative beyond round-off");
    return 0.0;
  }
  return d;
}

// One weight class of the marginal: sum over l in fixed ascending order.
double marginal_class(const CountPmf& pi, int k, int s) {
  const int n = pi.n();
  CompensatedSum acc;
  const int lo = s;
  const int hi = s + (n - k);
  for (int ell = lo; ell <= hi; ++ell) {
    const double w = pi[ell];
    if (w == 0.0) continue;
    acc.add(w * std::exp(log_binomial(n - k, ell - s) - log_binomial(n, ell)));
  }
  return acc.value();
}

double mixture_class(const MixingMeasure& mu, int k, int s) {
  const int n = mu.n();
  CompensatedSum acc;
  for (int ell = 0; ell <= n; ++ell) {
    const double a = mu.atoms()[ell];
    if (a == 0.0) continue;
    const double p = static_cast<double>(ell) / n;
    const double q = static_cast<double>(n - ell) / n;
    // std::pow(0,0) = 1, which is exactly the 0^0 := 1 convention needed here.
    acc.add(a * std::pow(p, static_cast<double>(s)) *
            std::pow(q, static_cast<double>(k - s)));
  }
  return acc.value();
}

}  // namespace

MixingMeasure mixing_measure(const CountPmf& pi) {
  return MixingMeasure(pi.n(), pi.mass());
}

WeightClassPmf marginal_weight_pmf(const CountPmf& pi, int k) {
  const int n = pi.n();
  if (k < 1 || k > n) throw std::invalid_argument("marginal_weight_pmf: k outside [1,n]");
  warm_log_factorial_cache(n);
  std::vector<double> perseq(k + 1);
  const long work = static_cast<long>(k + 1) * (n - k + 1);
#pragma omp parallel for schedule(static) if (work >= kParallelWorkThreshold)
  for (int s = 0; s <= k; ++s) {
    perseq[s] = marginal_class(pi, k, s);
  }
  return WeightClassPmf(k, std::move(perseq));
}

WeightClassPmf mixture_weight_pmf(const MixingMeasure& mu, int k) {
  if (k < 1) throw std::invalid_argument("mixture_weight_pmf: k must be >= 1");
  const int n = mu.n();
  std::vector<double> perseq(k + 1);
  const long work = static_cast<long>(k + 1) * (n + 1);
#pragma omp parallel for schedule(static) if (work >= kParallelWorkThreshold)
  for (int s = 0; s <= k; ++s) {
    perseq[s] = mixture_class(mu, k, s);
  }
  return WeightClassPmf(k, std::move(perseq));
}

double weight_class_total(const WeightClassPmf& w) {
  const int k = w.k();
  CompensatedSum acc;
  for (int s = 0; s <= k; ++s) {
    if (w[s] == 0.0) continue;
    acc.add(std::exp(log_binomial(k, s)) * w[s]);
  }
  return acc.value();
}

double weight_class_kl(const WeightClassPmf& q, const WeightClassPmf& m) {
  if (q.k() != m.k()) throw std::invalid_argument("weight_class_kl: k mismatch");
  const int k = q.k();
  CompensatedSum acc;
  for (int s = 0; s <= k; ++s) {
    const double qs = q[s];
    if (qs == 0.0) continue;
    const double ms = m[s];
    if (ms == 0.0) {
      throw AbsoluteContinuityViolation("weight_class_kl: q(s) > 0 where m(s) = 0");
    }
    acc.add(std::exp(log_binomial(k, s)) * qs * (std::log(qs) - std::log(ms)));
  }
  return clamp_divergence(acc.value(), "weight_class_kl");
}

double weight_class_tv(const WeightClassPmf& q, const WeightClassPmf& m) {
  if (q.k() != m.k()) throw std::invalid_argument("weight_class_tv: k mismatch");
  const int k = q.k();
  CompensatedSum acc;
  for (int s = 0; s <= k; ++s) {
    acc.add(std::exp(log_binomial(k, s)) * std::abs(q[s] - m[s]));
  }
  return acc.value();
}

double divergence_to_mixture(const CountPmf& pi, int k) {
  return weight_class_kl(marginal_weight_pmf(pi, k),
                         mixture_weight_pmf(mixing_measure(pi), k));
}

double tv_to_mixture(const CountPmf& pi, int k) {
  return weight_class_tv(marginal_weight_pmf(pi, k),
                         mixture_weight_pmf(mixing_measure(pi), k));
}

double conditional_mutual_information(int n, int ell, int i, int k) {
  if (n < 2) throw std::invalid_argument("conditional_mutual_information: n must be >= 2");
  if (k < 2 || k > n) throw std::invalid_argument("conditional_mutual_information: k outside [2,n]");
  if (i < 1 || i > k - 1) throw std::invalid_argument("conditional_mutual_information: i outside [1,k-1]");
  if (ell < 0 || ell > n) throw std::invalid_argument("conditional_mutual_information: ell outside [0,n]");
  if (ell == 0 || ell == n) return 0.0;

  const int m = k - i;       // size of the conditioning block
  const int denom = n - m;   // positions left once the block is removed
  const int jlo = std::max(0, ell - denom);
  const int jhi = std::min(m, ell);
  CompensatedSum cond_entropy;
  for (int j = jlo; j <= jhi; ++j) {
    const double pj = hypergeometric_pmf(j, n, ell, m);
    if (pj == 0.0) continue;
    cond_entropy.add(pj * binary_entropy(static_cast<double>(ell - j) / denom));
  }
  const double mi = binary_entropy(static_cast<double>(ell) / n) - cond_entropy.value();
  return clamp_divergence(mi, "conditional_mutual_information");
}

double conditional_divergence(int n, int ell, int k) {
  if (n < 1) throw std::invalid_argument("conditional_divergence: n must be >= 1");
  if (k < 1 || k > n) throw std::invalid_argument("conditional_divergence: k outside [1,n]");
  if (ell < 0 || ell > n) throw std::invalid_argument("conditional_divergence: ell outside [0,n]");
  if (ell == 0 || ell == n) return 0.0;

  warm_log_factorial_cache(n);
  const double log_p = std::log(static_cast<double>(ell) / n);
  const double log_1mp = std::log(static_cast<double>(n - ell) / n);
  const double log_cn_ell = log_binomial(n, ell);
  const int slo = std::max(0, ell - (n - k));
  const int shi = std::min(k, ell);
  CompensatedSum acc;
  for (int s = slo; s <= shi; ++s) {
    const double log_q = log_binomial(n - k, ell - s) - log_cn_ell;
    const double log_m = s * log_p + (k - s) * log_1mp;
    const double class_mass = std::exp(log_binomial(k, s) + log_q);
    acc.add(class_mass * (log_q - log_m));
  }
  return clamp_divergence(acc.value(), "conditional_divergence");
}

BoundValues bound_values(int n, int k) {
  if (n < 2) throw std::invalid_argument("bound_values: n must be >= 2");
  if (k < 1 || k > n) throw std::invalid_argument("bound_values: k outside [1,n]");
  if (k == n) return {kInf, kInf, kInf};
  const double log_n = std::log(static_cast<double>(n));
  const double dk = static_cast<double>(k);
  BoundValues b;
  b.theorem_bound = 5.0 * dk * dk * log_n / (n - k);
  b.lemma_bound = 5.0 * dk * log_n / (n - k);
  b.pinsker_tv_bound = dk * std::sqrt(10.0 * log_n / (n - k));
  return b;
}

LemmaTerms lemma_term_bounds(int n, int ell, int i, int k) {
  if (n < 2) throw std::invalid_argument("lemma_term_bounds: n must be >= 2");
  if (k < 2 || 2 * k > n) {
    throw std::invalid_argument("lemma_term_bounds: requires 2 <= k <= n/2");
  }
  if (i < 1 || i > k - 1) throw std::invalid_argument("lemma_term_bounds: i outside [1,k-1]");
  if (ell < 1 || ell > n - 1) throw std::invalid_argument("lemma_term_bounds: ell outside [1,n-1]");
  const double log_n = std::log(static_cast<double>(n));
  const int m = k - i;
  LemmaTerms t;
  t.interior_term = 2.0 * ell * m * log_n / (static_cast<double>(n) * (n - m));
  t.collision_term = static_cast<double>(k) / n;
  t.boundary_term = 2.0 * k * log_n / (n - k);
  t.total = t.interior_term + t.collision_term + t.boundary_term;
  return t;
}

BoundReport bound_report(const CountPmf& pi, int k) {
  const int n = pi.n();
  const WeightClassPmf q = marginal_weight_pmf(pi, k);
  const WeightClassPmf m = mixture_weight_pmf(mixing_measure(pi), k);
  const BoundValues b = bound_values(n, k);
  BoundReport r;
  r.n = n;
  r.k = k;
  r.divergence_nats = weight_class_kl(q, m);
  r.tv = weight_class_tv(q, m);
  r.theorem_bound = b.theorem_bound;
  r.pinsker_tv_bound = b.pinsker_tv_bound;
  r.ratio = std::isinf(b.theorem_bound) ? 0.0 : r.divergence_nats / b.theorem_bound;
  return r;
}

}  // namespace definetti
