#include "definetti/count_pmf.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace definetti {

namespace {

constexpr double kNegativeNoiseFloor = -1e-15;

double plain_sum(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s;
}

double prefix_sum(const std::vector<double>& v) {
  double s = 0.0;
  for (std::size_t i = 0; i + 1 < v.size(); ++i) s += v[i];
  return s;
}

// Clamps tiny negatives, divides by the total, then rewrites the last entry
// as 1 - (sum of the rest). With the prefix in [0,1] the index-order total
// rounds to exactly 1.0, so downstream code can rely on a bitwise-exact
// normalization. If rounding pushed the prefix above 1, the excess (a few
// ulps) is first drained from the largest entry.
void normalize_exact(std::vector<double>& v, const char* what) {
  std::size_t imax = 0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] < 0.0) {
      if (v[i] < kNegativeNoiseFloor) {
        throw std::invalid_argument(std::string(what) +
                                    ": negative entry below -1e-15 at index " +
                                    std::to_string(i));
      }
      v[i] = 0.0;
    }
    if (v[i] > v[imax]) imax = i;
  }
  const double s = plain_sum(v);
  if (std::abs(s - 1.0) > 1e-9) {
    throw std::invalid_argument(std::string(what) + ": entries sum to " +
                                std::to_string(s) +
                                ", deviates from 1 by more than 1e-9");
  }
  for (double& x : v) x /= s;

  double prefix = prefix_sum(v);
  for (int guard = 0; prefix > 1.0 && guard < 64 && imax + 1 < v.size(); ++guard) {
    double dec = v[imax] - (prefix - 1.0);
    if (dec >= v[imax]) dec = std::nextafter(v[imax], 0.0);
    v[imax] = dec < 0.0 ? 0.0 : dec;
    prefix = prefix_sum(v);
  }
  v.back() = 1.0 - prefix;
}

}  // namespace

CountPmf::CountPmf(int n, std::vector<double> raw) : n_(n), mass_(std::move(raw)) {
  if (n_ < 1) throw std::invalid_argument("CountPmf: n must be >= 1");
  if (mass_.size() != static_cast<std::size_t>(n_) + 1) {
    throw std::invalid_argument("CountPmf: mass must have n+1 entries");
  }
  normalize_exact(mass_, "CountPmf");
}

MixingMeasure::MixingMeasure(int n, std::vector<double> atoms)
    : n_(n), atoms_(std::move(atoms)) {
  if (n_ < 1) throw std::invalid_argument("MixingMeasure: n must be >= 1");
  if (atoms_.size() != static_cast<std::size_t>(n_) + 1) {
    throw std::invalid_argument("MixingMeasure: atoms must have n+1 entries");
  }
  double s = 0.0;
  for (std::size_t i = 0; i < atoms_.size(); ++i) {
    if (atoms_[i] < 0.0) {
      if (atoms_[i] < kNegativeNoiseFloor) {
        throw std::invalid_argument("MixingMeasure: negative atom");
      }
      atoms_[i] = 0.0;
    }
    s += atoms_[i];
  }
  if (std::abs(s - 1.0) > 1e-12) {
    throw std::invalid_argument("MixingMeasure: atoms must sum to 1 within 1e-12");
  }
}

WeightClassPmf::WeightClassPmf(int k, std::vector<double> perseq)
    : k_(k), perseq_(std::move(perseq)) {
  if (k_ < 1) throw std::invalid_argument("WeightClassPmf: k must be >= 1");
  if (perseq_.size() != static_cast<std::size_t>(k_) + 1) {
    throw std::invalid_argument("WeightClassPmf: perseq must have k+1 entries");
  }
  for (double& q : perseq_) {
    if (q < 0.0) {
      if (q < kNegativeNoiseFloor) {
        throw std::invalid_argument("WeightClassPmf: negative entry");
      }
      q = 0.0;
    }
  }
}

}  // namespace definetti
