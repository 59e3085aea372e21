#pragma once

#include <stdexcept>
#include <vector>

namespace definetti {

// Raised when D(P||Q) hits P(x) > 0 with Q(x) = 0. Engine-produced
// marginal/mixture pairs can never trigger this; a throw means a genuine
// support mismatch in the inputs.
struct AbsoluteContinuityViolation : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Probability vector on an indexed finite support. Index semantics are owned
// by the caller; entries must be nonnegative and sum to 1 within 1e-12.
class FinitePmf {
 public:
  explicit FinitePmf(std::vector<double> probs);

  const std::vector<double>& probs() const { return probs_; }
  std::size_t size() const { return probs_.size(); }
  double operator[](std::size_t i) const { return probs_[i]; }

 private:
  std::vector<double> probs_;
};

// Binary entropy h(p) = -p log p - (1-p) log(1-p) in nats, with 0 log 0 = 0.
// Inputs outside [0,1] by more than 1e-12 are rejected.
double binary_entropy(double p);

// D(P||Q) = sum P(x) log(P(x)/Q(x)) in nats; terms with P(x) = 0 contribute
// nothing. Nonnegative by theorem: round-off in [-1e-12, 0) is clamped to 0,
// anything lower throws.
double relative_entropy(const FinitePmf& p, const FinitePmf& q);

// L1 distance sum |P(x)-Q(x)|, equal to twice the sup-norm variation on a
// finite space; values in [0,2].
double total_variation(const FinitePmf& p, const FinitePmf& q);

// Lipschitz-style bound |h(p)-h(q)| <= |p-q| * max(|logit|).
// Defined for interior points only; p or q in {0,1} is rejected.
double entropy_difference_bound(double p, double q);

}  // namespace definetti
