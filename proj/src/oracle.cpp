#include "definetti/oracle.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace definetti {

namespace {

constexpr int kMaxOracleN = 20;  // 2^20 doubles; the oracle is for correctness, not scale

// Exact Pascal triangle. All C(n,k) with n <= 20 fit well inside 2^53.
std::vector<std::vector<double>> pascal_triangle(int n) {
  std::vector<std::vector<double>> c(n + 1);
  for (int a = 0; a <= n; ++a) {
    c[a].assign(a + 1, 1.0);
    for (int b = 1; b < a; ++b) c[a][b] = c[a - 1][b - 1] + c[a - 1][b];
  }
  return c;
}

}  // namespace

JointTable::JointTable(int n, std::vector<double> probs)
    : n_(n), probs_(std::move(probs)) {
  if (n_ < 1 || n_ > kMaxOracleN) {
    throw std::invalid_argument("JointTable: n outside [1,20]");
  }
  if (probs_.size() != (std::size_t{1} << n_)) {
    throw std::invalid_argument("JointTable: probs must have 2^n entries");
  }
  double s = 0.0;
  for (double p : probs_) {
    if (p < 0.0) throw std::invalid_argument("JointTable: negative entry");
    s += p;
  }
  if (std::abs(s - 1.0) > 1e-12) {
    throw std::invalid_argument("JointTable: entries must sum to 1 within 1e-12");
  }
}

JointTable enumerate_joint(const CountPmf& pi) {
  const int n = pi.n();
  if (n > kMaxOracleN) {
    throw std::invalid_argument("enumerate_joint: n > 20 exceeds the oracle cap");
  }
  const auto c = pascal_triangle(n);
  std::vector<double> probs(std::size_t{1} << n);
  for (std::uint32_t x = 0; x < probs.size(); ++x) {
    const int w = std::popcount(x);
    probs[x] = pi[w] / c[n][w];
  }
  return JointTable(n, std::move(probs));
}

FinitePmf oracle_marginal(const JointTable& joint, std::span<const int> coords) {
  const int n = joint.n();
  if (coords.empty() || coords.size() > static_cast<std::size_t>(n)) {
    throw std::invalid_argument("oracle_marginal: bad coordinate count");
  }
  for (std::size_t t = 0; t < coords.size(); ++t) {
    if (coords[t] < 0 || coords[t] >= n) {
      throw std::invalid_argument("oracle_marginal: coordinate out of range");
    }
    for (std::size_t u = t + 1; u < coords.size(); ++u) {
      if (coords[t] == coords[u]) {
        throw std::invalid_argument("oracle_marginal: coordinates must be distinct");
      }
    }
  }
  std::vector<double> out(std::size_t{1} << coords.size(), 0.0);
  const std::uint32_t total = std::uint32_t{1} << n;
  for (std::uint32_t x = 0; x < total; ++x) {
    std::uint32_t sub = 0;
    for (std::size_t t = 0; t < coords.size(); ++t) {
      sub |= ((x >> coords[t]) & 1u) << t;
    }
    out[sub] += joint[x];
  }
  return FinitePmf(std::move(out));
}

double oracle_conditional_mi(const JointTable& joint, int i, int k, int ell) {
  const int n = joint.n();
  if (k < 2 || k > n) throw std::invalid_argument("oracle_conditional_mi: k outside [2,n]");
  if (i < 1 || i > k - 1) throw std::invalid_argument("oracle_conditional_mi: i outside [1,k-1]");
  if (ell < 0 || ell > n) throw std::invalid_argument("oracle_conditional_mi: ell outside [0,n]");

  const int block = k - i;  // coordinates i..k-1 (0-based), i.e. X_{i+1}..X_k
  std::vector<double> joint_xy(std::size_t{2} << block, 0.0);
  double p_event = 0.0;
  const std::uint32_t total = std::uint32_t{1} << n;
  for (std::uint32_t x = 0; x < total; ++x) {
    if (std::popcount(x) != ell) continue;
    p_event += joint[x];
    const std::uint32_t a = (x >> (i - 1)) & 1u;
    const std::uint32_t y = (x >> i) & ((1u << block) - 1u);
    joint_xy[(a << block) | y] += joint[x];
  }
  if (p_event <= 0.0) {
    throw std::invalid_argument("oracle_conditional_mi: conditioning event has probability 0");
  }

  std::vector<double> px(2, 0.0);
  std::vector<double> py(std::size_t{1} << block, 0.0);
  for (std::size_t idx = 0; idx < joint_xy.size(); ++idx) {
    joint_xy[idx] /= p_event;
    px[idx >> block] += joint_xy[idx];
    py[idx & ((1u << block) - 1u)] += joint_xy[idx];
  }

  double mi = 0.0;
  for (std::size_t idx = 0; idx < joint_xy.size(); ++idx) {
    const double j = joint_xy[idx];
    if (j == 0.0) continue;
    mi += j * std::log(j / (px[idx >> block] * py[idx & ((1u << block) - 1u)]));
  }
  return mi < 0.0 ? 0.0 : mi;
}

FinitePmf oracle_mixture(const CountPmf& pi, int k) {
  const int n = pi.n();
  if (k < 1 || k > kMaxOracleN) throw std::invalid_argument("oracle_mixture: k outside [1,20]");
  std::vector<double> mix(std::size_t{1} << k, 0.0);
  for (std::uint32_t y = 0; y < mix.size(); ++y) {
    const int w = std::popcount(y);
    double acc = 0.0;
    for (int ell = 0; ell <= n; ++ell) {
      if (pi[ell] == 0.0) continue;
      const double p = static_cast<double>(ell) / n;
      double term = pi[ell];
      for (int t = 0; t < w; ++t) term *= p;
      for (int t = 0; t < k - w; ++t) term *= 1.0 - p;
      acc += term;
    }
    mix[y] = acc;
  }
  return FinitePmf(std::move(mix));
}

double oracle_divergence(const CountPmf& pi, int k) {
  if (k < 1 || k > pi.n()) throw std::invalid_argument("oracle_divergence: k outside [1,n]");
  const JointTable joint = enumerate_joint(pi);
  std::vector<int> coords(k);
  for (int t = 0; t < k; ++t) coords[t] = t;
  const FinitePmf qk = oracle_marginal(joint, coords);
  const FinitePmf mix = oracle_mixture(pi, k);
  return relative_entropy(qk, mix);
}

}  // namespace definetti
