#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <omp.h>

#include <cmath>

#include "definetti/engine.hpp"
#include "definetti/families.hpp"

// The OpenMP kernels must agree with the plain reference kernels, and must
// return the same bits under any thread count.

using namespace definetti;

namespace {

std::vector<CountPmf> cases(int n) {
  std::vector<CountPmf> out;
  out.push_back(generate(FamilySpec::iid(0.3), n));
  out.push_back(generate(FamilySpec::polya(2.0, 5.0), n));
  out.push_back(generate(FamilySpec::random_dirichlet(77), n));
  std::vector<double> raw(n + 1, 0.0);
  raw[n / 3] = 1.0;
  out.push_back(make_count_pmf(n, std::move(raw)));
  return out;
}

}  // namespace

TEST_CASE("parallel kernels match the serial reference") {
  for (int n : {17, 64, 257, 777}) {
    for (const CountPmf& pi : cases(n)) {
      for (int k : {1, 2, n / 3, n / 2, n - 1, n}) {
        if (k < 1) continue;
        const WeightClassPmf qp = marginal_weight_pmf(pi, k);
        const WeightClassPmf qs = serial::marginal_weight_pmf(pi, k);
        const WeightClassPmf mp = mixture_weight_pmf(mixing_measure(pi), k);
        const WeightClassPmf ms = serial::mixture_weight_pmf(mixing_measure(pi), k);
        for (int s = 0; s <= k; ++s) {
          CHECK(std::abs(qp[s] - qs[s]) <= 1e-13 * std::max(1.0, std::abs(qs[s])));
          CHECK(std::abs(mp[s] - ms[s]) <= 1e-13 * std::max(1.0, std::abs(ms[s])));
        }
        CHECK(std::abs(divergence_to_mixture(pi, k) - serial::divergence_to_mixture(pi, k)) <=
              1e-12);
        CHECK(std::abs(tv_to_mixture(pi, k) - serial::tv_to_mixture(pi, k)) <= 1e-12);
      }
    }
  }
}

TEST_CASE("parallel kernels are deterministic across thread counts") {
  const CountPmf pi = generate(FamilySpec::random_dirichlet(123), 777);
  const int k = 400;

  omp_set_num_threads(1);
  const WeightClassPmf q1 = marginal_weight_pmf(pi, k);
  const WeightClassPmf m1 = mixture_weight_pmf(mixing_measure(pi), k);
  const double d1 = divergence_to_mixture(pi, k);

  omp_set_num_threads(omp_get_num_procs());
  const WeightClassPmf q2 = marginal_weight_pmf(pi, k);
  const WeightClassPmf m2 = mixture_weight_pmf(mixing_measure(pi), k);
  const double d2 = divergence_to_mixture(pi, k);

  CHECK(q1.perseq() == q2.perseq());
  CHECK(m1.perseq() == m2.perseq());
  CHECK(d1 == d2);
}

TEST_CASE("repeated runs return identical bits") {
  const CountPmf pi = generate(FamilySpec::polya(2.0, 5.0), 513);
  for (int k : {7, 256, 512}) {
    CHECK(marginal_weight_pmf(pi, k).perseq() == marginal_weight_pmf(pi, k).perseq());
    CHECK(divergence_to_mixture(pi, k) == divergence_to_mixture(pi, k));
  }
}
