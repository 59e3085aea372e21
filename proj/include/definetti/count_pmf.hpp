#pragma once

#include <vector>

namespace definetti {

// Count distribution of an exchangeable binary vector: mass[l] is the
// probability that a length-n vector contains exactly l ones. Together with
// the uniform-within-weight-class convention this determines the whole law,
// so every downstream computation is O(n*k) instead of O(2^n).
//
// Immutable after construction. Construction clamps harmless negative noise
// (>= -1e-15) to zero and renormalizes so the mass sums to exactly 1.0.
class CountPmf {
 public:
  CountPmf(int n, std::vector<double> raw);

  int n() const { return n_; }
  const std::vector<double>& mass() const { return mass_; }
  double operator[](int ell) const { return mass_[ell]; }

 private:
  int n_;
  std::vector<double> mass_;
};

inline CountPmf make_count_pmf(int n, std::vector<double> raw) {
  return CountPmf(n, std::move(raw));
}

// Atomic measure on the grid {0, 1/n, ..., 1}; atoms[l] sits at l/n.
class MixingMeasure {
 public:
  MixingMeasure(int n, std::vector<double> atoms);

  int n() const { return n_; }
  const std::vector<double>& atoms() const { return atoms_; }
  double grid_point(int ell) const { return static_cast<double>(ell) / n_; }

 private:
  int n_;
  std::vector<double> atoms_;
};

// Length-k marginal stored by weight class: perseq[s] is the probability of
// any single binary string of length k with s ones, so the class as a whole
// carries C(k,s)*perseq[s]. Compresses 2^k sequences into k+1 numbers.
class WeightClassPmf {
 public:
  WeightClassPmf(int k, std::vector<double> perseq);

  int k() const { return k_; }
  const std::vector<double>& perseq() const { return perseq_; }
  double operator[](int s) const { return perseq_[s]; }

 private:
  int k_;
  std::vector<double> perseq_;
};

// Everything computed for one (pi, n, k) cell.
struct BoundReport {
  int n = 0;
  int k = 0;
  double divergence_nats = 0.0;
  double tv = 0.0;
  double theorem_bound = 0.0;   // +infinity when k == n
  double pinsker_tv_bound = 0.0;
  double ratio = 0.0;           // divergence / theorem_bound, 0 when bound is infinite
};

}  // namespace definetti
