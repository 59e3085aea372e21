#pragma once

#include <span>
#include <vector>

#include "definetti/count_pmf.hpp"
#include "definetti/info_measures.hpp"

namespace definetti {

// Dense law over all 2^n binary sequences, indexed by bitmask (bit j holds
// coordinate j, 0-based). Ground truth for small n; capped at n <= 20.
// Deliberately avoids the engine's log-binomial cache: binomials come from an
// exact Pascal triangle, so the two modules share no numeric path.
class JointTable {
 public:
  JointTable(int n, std::vector<double> probs);

  int n() const { return n_; }
  const std::vector<double>& probs() const { return probs_; }
  double operator[](std::uint32_t mask) const { return probs_[mask]; }

 private:
  int n_;
  std::vector<double> probs_;
};

// probs[x] = pi[weight(x)] / C(n, weight(x)).
JointTable enumerate_joint(const CountPmf& pi);

// Marginal law of the listed coordinates (0-based, distinct), as a pmf over
// 2^|coords| bitmasks in the listed order.
FinitePmf oracle_marginal(const JointTable& joint, std::span<const int> coords);

// I(X_i; X_{i+1..k} | exactly ell ones), computed from the conditioned joint
// via the KL form D(P_XY || P_X P_Y). i and k are 1-based, matching the
// engine's closed form; the formula route is intentionally different.
double oracle_conditional_mi(const JointTable& joint, int i, int k, int ell);

// Bernoulli mixture of pi over all 2^k sequences, by direct summation.
FinitePmf oracle_mixture(const CountPmf& pi, int k);

// D(Q_k || M_{k,mu}) recomputed from first principles: marginalize the full
// joint, build the mixture pointwise, take relative entropy.
double oracle_divergence(const CountPmf& pi, int k);

}  // namespace definetti
