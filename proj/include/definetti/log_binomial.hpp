#pragma once

namespace definetti {

// log(m!) from a shared cache of compensated prefix sums of log(i). The cache
// grows on demand under a lock and is read lock-free afterwards; entry values
// do not depend on the growth history.
double log_factorial(int m);

// Pre-sizes the shared cache. Optional; call before fanning out worker
// threads to avoid growth inside the hot loops.
void warm_log_factorial_cache(int max_m);

// log C(a,b); -infinity when b < 0 or b > a. a must be >= 0.
double log_binomial(int a, int b);

// P(j ones among m fixed positions of a uniformly random weight-ell sequence
// of length n): C(ell,j) C(n-ell,m-j) / C(n,m), evaluated in log domain.
// Returns 0 outside the support.
double hypergeometric_pmf(int j, int n, int ell, int m);

}  // namespace definetti
