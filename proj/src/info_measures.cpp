#include "definetti/info_measures.hpp"

#include <cmath>
#include <string>

#include "definetti/compensated.hpp"

namespace definetti {

FinitePmf::FinitePmf(std::vector<double> probs) : probs_(std::move(probs)) {
  if (probs_.empty()) throw std::invalid_argument("FinitePmf: empty support");
  double s = 0.0;
  for (double& p : probs_) {
    if (p < 0.0) {
      if (p < -1e-15) throw std::invalid_argument("FinitePmf: negative entry");
      p = 0.0;
    }
    s += p;
  }
  if (std::abs(s - 1.0) > 1e-12) {
    throw std::invalid_argument("FinitePmf: entries must sum to 1 within 1e-12");
  }
}

double binary_entropy(double p) {
  if (p < -1e-12 || p > 1.0 + 1e-12) {
    throw std::invalid_argument("binary_entropy: p outside [0,1]");
  }
  if (p <= 0.0 || p >= 1.0) return 0.0;
  return -p * std::log(p) - (1.0 - p) * std::log1p(-p);
}

namespace {

double clamp_nonnegative(double d, const char* what) {
  if (d < 0.0) {
    if (d < -1e-12) throw std::logic_error(std::string(what) + ": negative beyond round-off");
    return 0.0;
  }
  return d;
}

}  // namespace

double relative_entropy(const FinitePmf& p, const FinitePmf& q) {
  if (p.size() != q.size()) {
    throw std::invalid_argument("relative_entropy: supports differ in size");
  }
  CompensatedSum acc;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double pi = p[i];
    if (pi == 0.0) continue;
    const double qi = q[i];
    if (qi == 0.0) {
      throw AbsoluteContinuityViolation("relative_entropy: P(x) > 0 where Q(x) = 0");
    }
    acc.add(pi * std::log(pi / qi));
  }
  return clamp_nonnegative(acc.value(), "relative_entropy");
}

double total_variation(const FinitePmf& p, const FinitePmf& q) {
  if (p.size() != q.size()) {
    throw std::invalid_argument("total_variation: supports differ in size");
  }
  CompensatedSum acc;
  for (std::size_t i = 0; i < p.size(); ++i) acc.add(std::abs(p[i] - q[i]));
  return acc.value();
}

double entropy_difference_bound(double p, double q) {
  if (p <= 0.0 || p >= 1.0 || q <= 0.0 || q >= 1.0) {
    throw std::invalid_argument("entropy_difference_bound: p, q must lie strictly inside (0,1)");
  }
  const double lp = std::abs(std::log((1.0 - p) / p));
  const double lq = std::abs(std::log((1.0 - q) / q));
  return std::abs(p - q) * std::max(lp, lq);
}

}  // namespace definetti
