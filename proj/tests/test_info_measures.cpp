#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "definetti/families.hpp"
#include "definetti/harness.hpp"
#include "definetti/info_measures.hpp"

using namespace definetti;

namespace {
const double kLog2 = std::log(2.0);
}

TEST_CASE("binary entropy at the landmarks") {
  CHECK(binary_entropy(0.5) == doctest::Approx(kLog2).epsilon(1e-15));
  CHECK(binary_entropy(0.0) == 0.0);
  CHECK(binary_entropy(1.0) == 0.0);
  // log 3 - (2/3) log 2, evaluated by hand
  CHECK(std::abs(binary_entropy(1.0 / 3.0) - 0.6365141682948129) < 1e-12);
}

TEST_CASE("binary entropy is symmetric and rejects bad inputs") {
  std::uint64_t state = 11;
  for (int t = 0; t < 1000; ++t) {
    const double p = splitmix64_unit(state);
    CHECK(binary_entropy(p) == doctest::Approx(binary_entropy(1.0 - p)).epsilon(1e-12));
  }
  CHECK_THROWS_AS(binary_entropy(-0.1), std::invalid_argument);
  CHECK_THROWS_AS(binary_entropy(1.1), std::invalid_argument);
  CHECK(binary_entropy(1.0 + 1e-13) == 0.0);  // inside the slack, clamped
}

TEST_CASE("relative entropy basics") {
  const FinitePmf p({0.3, 0.7});
  CHECK(relative_entropy(p, p) == 0.0);

  const FinitePmf half({0.5, 0.5, 0.0, 0.0});
  const FinitePmf uniform({0.25, 0.25, 0.25, 0.25});
  CHECK(relative_entropy(half, uniform) == doctest::Approx(kLog2).epsilon(1e-15));

  CHECK_THROWS_AS(relative_entropy(FinitePmf({1.0, 0.0}), FinitePmf({0.0, 1.0})),
                  AbsoluteContinuityViolation);
  CHECK_THROWS_AS(relative_entropy(p, uniform), std::invalid_argument);
}

TEST_CASE("relative entropy is asymmetric") {
  const FinitePmf p({0.5, 0.5});
  const FinitePmf q({0.25, 0.75});
  CHECK(relative_entropy(p, q) != relative_entropy(q, p));
}

TEST_CASE("total variation basics") {
  const FinitePmf p({0.3, 0.7});
  CHECK(total_variation(p, p) == 0.0);
  CHECK(total_variation(FinitePmf({1.0, 0.0}), FinitePmf({0.0, 1.0})) == 2.0);
  const FinitePmf half({0.5, 0.5, 0.0, 0.0});
  const FinitePmf uniform({0.25, 0.25, 0.25, 0.25});
  CHECK(total_variation(half, uniform) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("total variation is symmetric") {
  std::uint64_t state = 13;
  for (int t = 0; t < 200; ++t) {
    std::vector<double> a(5), b(5);
    double sa = 0, sb = 0;
    for (int i = 0; i < 5; ++i) {
      a[i] = splitmix64_unit(state) + 1e-9;
      b[i] = splitmix64_unit(state) + 1e-9;
      sa += a[i];
      sb += b[i];
    }
    for (int i = 0; i < 5; ++i) {
      a[i] /= sa;
      b[i] /= sb;
    }
    const FinitePmf p(a), q(b);
    CHECK(total_variation(p, q) == total_variation(q, p));
  }
}

TEST_CASE("divergence zero iff total variation zero on generated pairs") {
  std::uint64_t state = 17;
  for (int t = 0; t < 200; ++t) {
    std::vector<double> a(6);
    double sa = 0;
    for (double& x : a) {
      x = splitmix64_unit(state) + 1e-9;
      sa += x;
    }
    for (double& x : a) x /= sa;
    const FinitePmf p(a), q(a);
    CHECK(relative_entropy(p, q) == 0.0);
    CHECK(total_variation(p, q) <= 1e-12);
  }
  const FinitePmf p({0.5, 0.5});
  const FinitePmf q({0.25, 0.75});
  CHECK(relative_entropy(p, q) > 1e-3);
  CHECK(total_variation(p, q) > 1e-3);
}

TEST_CASE("entropy difference bound at the worked points") {
  CHECK(entropy_difference_bound(0.3, 0.3) == 0.0);
  // 0.25 * log 3
  CHECK(std::abs(entropy_difference_bound(0.5, 0.25) - 0.2746530721670274) < 1e-12);
  CHECK(std::abs(std::abs(binary_entropy(0.5) - binary_entropy(0.25)) -
                 0.13081203594113694) < 1e-12);
  CHECK(std::abs(binary_entropy(0.5) - binary_entropy(0.25)) <=
        entropy_difference_bound(0.5, 0.25));
  // (8/10) * log 9 dominates |h(0.1) - h(0.9)| = 0
  CHECK(std::abs(entropy_difference_bound(0.1, 0.9) - 1.7577796618689758) < 1e-12);
  CHECK(std::abs(binary_entropy(0.1) - binary_entropy(0.9)) <=
        entropy_difference_bound(0.1, 0.9));
  CHECK_THROWS_AS(entropy_difference_bound(0.0, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(entropy_difference_bound(0.5, 1.0), std::invalid_argument);
}

TEST_CASE("entropy gap property on seeded interior pairs") {
  const SuiteResult s = verify_entropy_difference_pairs(10000, 20250810);
  CHECK(s.pass);
  CHECK(s.cells == 10000);
}

TEST_CASE("pinsker on seeded pmf pairs with strictly positive q") {
  const SuiteResult s = verify_pinsker_pairs(10000, 16, 424242);
  CHECK(s.pass);
}

TEST_CASE("finite pmf validation") {
  CHECK_THROWS_AS(FinitePmf({}), std::invalid_argument);
  CHECK_THROWS_AS(FinitePmf({0.5, 0.4}), std::invalid_argument);
  CHECK_THROWS_AS(FinitePmf({1.5, -0.5}), std::invalid_argument);
}
