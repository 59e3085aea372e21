#pragma once

#include "definetti/count_pmf.hpp"

namespace definetti {

// The three summands bounding one conditional mutual information term when
// k <= n/2: the interior entropy-gap term, the Markov collision term (k/n
// scale) and the boundary term (2k log n/(n-k) scale).
struct LemmaTerms {
  double interior_term = 0.0;
  double collision_term = 0.0;
  double boundary_term = 0.0;
  double total = 0.0;
};

struct BoundValues {
  double theorem_bound = 0.0;     // 5 k^2 log n / (n-k)
  double lemma_bound = 0.0;       // 5 k  log n / (n-k)
  double pinsker_tv_bound = 0.0;  // k sqrt(10 log n / (n-k))
};

// The mixing measure of pi: the law of (number of ones)/n on {0,1/n,...,1}.
MixingMeasure mixing_measure(const CountPmf& pi);

// Per-sequence marginal of the first k coordinates:
//   perseq[s] = sum_l pi[l] * C(n-k, l-s) / C(n, l).
// OpenMP-parallel over weight classes for large n*k; each class is summed in
// a fixed order, so output is identical for every thread count.
WeightClassPmf marginal_weight_pmf(const CountPmf& pi, int k);

// Bernoulli mixture of length k under mu, by weight class:
//   perseq[s] = sum_l mu[l] * (l/n)^s * (1 - l/n)^(k-s), with 0^0 = 1.
WeightClassPmf mixture_weight_pmf(const MixingMeasure& mu, int k);

// sum_s C(k,s) * perseq[s]; equals 1 within 1e-12 for every engine output.
double weight_class_total(const WeightClassPmf& w);

// D(q||m) over weight classes, in nats. Multiplicities C(k,s) are evaluated
// in log domain and applied linearly; classes with q(s) = 0 contribute 0.
double weight_class_kl(const WeightClassPmf& q, const WeightClassPmf& m);

// L1 distance over weight classes: sum_s C(k,s) |q(s) - m(s)|.
double weight_class_tv(const WeightClassPmf& q, const WeightClassPmf& m);

// D(Q_k || M_{k,mu}) for the mixing measure of pi itself.
double divergence_to_mixture(const CountPmf& pi, int k);

// Total variation (2*sup convention, values in [0,2]) between the k-marginal
// and the Bernoulli mixture of pi.
double tv_to_mixture(const CountPmf& pi, int k);

// I(X_i; X_{i+1..k} | exactly ell ones among n), via the closed form
//   h(ell/n) - sum_j Hyp(j; n, ell, k-i) h((ell-j)/(n-(k-i))).
// Exactly 0 for ell in {0, n}. Requires 1 <= i <= k-1 <= n-1.
double conditional_mutual_information(int n, int ell, int i, int k);

// D of the conditional k-marginal given exactly ell ones against the product
// Bernoulli(ell/n)^k. Depends on (n, ell, k) only.
double conditional_divergence(int n, int ell, int k);

// Exact bound formulas; all three are +infinity at k = n. Requires n >= 2.
BoundValues bound_values(int n, int k);

// Term-by-term upper bound for one conditional mutual information, valid in
// the regime 2k <= n, 1 <= i <= k-1, 1 <= ell <= n-1. Callers outside that
// regime fall back to the direct log(2) cap.
LemmaTerms lemma_term_bounds(int n, int ell, int i, int k);

// Assembles divergence, tv and bounds for one (pi, k) cell.
BoundReport bound_report(const CountPmf& pi, int k);

namespace serial {

// Plain single-threaded reference kernels with straightforward accumulation.
// Kept for correctness tests against the parallel versions and for the
// benchmark baseline.
WeightClassPmf marginal_weight_pmf(const CountPmf& pi, int k);
WeightClassPmf mixture_weight_pmf(const MixingMeasure& mu, int k);
double divergence_to_mixture(const CountPmf& pi, int k);
double tv_to_mixture(const CountPmf& pi, int k);

}  // namespace serial

}  // namespace definetti
