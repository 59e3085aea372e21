// Wall-clock comparison of the OpenMP kernels against the serial reference.
// Build and run: cmake --build build --target bench_kernels && ./build/bench_kernels

#include <omp.h>

#include <cmath>
#include <cstdio>

#include "definetti/engine.hpp"
#include "definetti/families.hpp"
#include "definetti/harness.hpp"
#include "definetti/log_binomial.hpp"

using namespace definetti;

namespace {

double time_once(double (*fn)(const CountPmf&, int), const CountPmf& pi, int k, int reps,
                 double* sink) {
  const double t0 = omp_get_wtime();
  for (int r = 0; r < reps; ++r) *sink += fn(pi, k);
  return (omp_get_wtime() - t0) / reps;
}

void bench_divergence(int n, int k, int reps) {
  const CountPmf pi = generate(FamilySpec::polya(2.0, 5.0), n);
  double sink = 0.0;
  const double serial_s = time_once(&serial::divergence_to_mixture, pi, k, reps, &sink);
  const double parallel_s = time_once(&divergence_to_mixture, pi, k, reps, &sink);
  std::printf("divergence      n=%5d k=%5d   serial %8.2f ms   openmp %8.2f ms   speedup %.2fx\n",
              n, k, serial_s * 1e3, parallel_s * 1e3, serial_s / parallel_s);
  if (sink < 0.0) std::printf("%f\n", sink);  // keep the calls observable
}

double mi_sweep_serial(int n, int k) {
  double acc = 0.0;
  for (int ell = 1; ell < n; ++ell) {
    for (int i = 1; i < k; ++i) acc += conditional_mutual_information(n, ell, i, k);
  }
  return acc;
}

double mi_sweep_parallel(int n, int k) {
  double acc = 0.0;
#pragma omp parallel for schedule(dynamic) reduction(+ : acc)
  for (int ell = 1; ell < n; ++ell) {
    for (int i = 1; i < k; ++i) acc += conditional_mutual_information(n, ell, i, k);
  }
  return acc;
}

void bench_mi_sweep(int n, int k) {
  double t0 = omp_get_wtime();
  const double a = mi_sweep_serial(n, k);
  const double serial_s = omp_get_wtime() - t0;
  t0 = omp_get_wtime();
  const double b = mi_sweep_parallel(n, k);
  const double parallel_s = omp_get_wtime() - t0;
  std::printf("mi sweep        n=%5d k=%5d   serial %8.2f ms   openmp %8.2f ms   speedup %.2fx"
              "   agree %.1e\n",
              n, k, serial_s * 1e3, parallel_s * 1e3, serial_s / parallel_s, std::abs(a - b));
}

}  // namespace

int main() {
  apply_thread_cap_from_env();
  int threads = 1;
#pragma omp parallel
  {
#pragma omp single
    threads = omp_get_num_threads();
  }
  std::printf("threads: %d\n", threads);
  warm_log_factorial_cache(8200);

  bench_divergence(1024, 512, 5);
  bench_divergence(4096, 2048, 2);
  bench_divergence(8192, 4096, 1);
  bench_mi_sweep(512, 256);
  bench_mi_sweep(1024, 128);
  return 0;
}
