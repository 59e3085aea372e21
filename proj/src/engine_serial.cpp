#include <cmath>
#include <stdexcept>
#include <vector>

#include "definetti/engine.hpp"
#include "definetti/info_measures.hpp"
#include "definetti/log_binomial.hpp"

// Reference kernels: the same formulas as the parallel versions, written as
// the plainest possible nested loops with naive accumulation. No pragmas.

namespace definetti::serial {

WeightClassPmf marginal_weight_pmf(const CountPmf& pi, int k) {
  const int n = pi.n();
  if (k < 1 || k > n) throw std::invalid_argument("marginal_weight_pmf: k outside [1,n]");
  std::vector<double> perseq(k + 1, 0.0);
  for (int s = 0; s <= k; ++s) {
    double sum = 0.0;
    for (int ell = s; ell <= s + (n - k); ++ell) {
      if (pi[ell] == 0.0) continue;
      sum += pi[ell] * std::exp(log_binomial(n - k, ell - s) - log_binomial(n, ell));
    }
    perseq[s] = sum;
  }
  return WeightClassPmf(k, std::move(perseq));
}

WeightClassPmf mixture_weight_pmf(const MixingMeasure& mu, int k) {
  if (k < 1) throw std::invalid_argument("mixture_weight_pmf: k must be >= 1");
  const int n = mu.n();
  std::vector<double> perseq(k + 1, 0.0);
  for (int s = 0; s <= k; ++s) {
    double sum = 0.0;
    for (int ell = 0; ell <= n; ++ell) {
      if (mu.atoms()[ell] == 0.0) continue;
      const double p = static_cast<double>(ell) / n;
      const double q = static_cast<double>(n - ell) / n;
      sum += mu.atoms()[ell] * std::pow(p, static_cast<double>(s)) *
             std::pow(q, static_cast<double>(k - s));
    }
    perseq[s] = sum;
  }
  return WeightClassPmf(k, std::move(perseq));
}

double divergence_to_mixture(const CountPmf& pi, int k) {
  const WeightClassPmf q = serial::marginal_weight_pmf(pi, k);
  const WeightClassPmf m = serial::mixture_weight_pmf(mixing_measure(pi), k);
  double d = 0.0;
  for (int s = 0; s <= k; ++s) {
    if (q[s] == 0.0) continue;
    if (m[s] == 0.0) {
      throw AbsoluteContinuityViolation("serial divergence: q(s) > 0 where m(s) = 0");
    }
    d += std::exp(log_binomial(k, s)) * q[s] * (std::log(q[s]) - std::log(m[s]));
  }
  return d < 0.0 ? 0.0 : d;
}

double tv_to_mixture(const CountPmf& pi, int k) {
  const WeightClassPmf q = serial::marginal_weight_pmf(pi, k);
  const WeightClassPmf m = serial::mixture_weight_pmf(mixing_measure(pi), k);
  double tv = 0.0;
  for (int s = 0; s <= k; ++s) {
    tv += std::exp(log_binomial(k, s)) * std::abs(q[s] - m[s]);
  }
  return tv;
}

}  // namespace definetti::serial
