#include "definetti/log_binomial.hpp"

#include <atomic>
#include <cmath>
#include <limits>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <vector>

#include "definetti/compensated.hpp"

namespace definetti {

namespace {

struct Table {
  std::vector<double> logfact;  // logfact[m] = log(m!)
};

std::atomic<const Table*> g_table{nullptr};
std::mutex g_growth_mutex;
// Retired snapshots stay alive so readers holding an old pointer remain valid.
std::vector<std::unique_ptr<const Table>>& retired_tables() {
  static std::vector<std::unique_ptr<const Table>> tables;
  return tables;
}

// Rebuilds from scratch with a compensated running sum, so logfact[m] is the
// same double no matter how many growth steps happened before.
const Table& table_with_capacity(int m) {
  const Table* t = g_table.load(std::memory_order_acquire);
  if (t != nullptr && static_cast<int>(t->logfact.size()) > m) return *t;

  std::lock_guard<std::mutex> lock(g_growth_mutex);
  t = g_table.load(std::memory_order_acquire);
  if (t != nullptr && static_cast<int>(t->logfact.size()) > m) return *t;

  int capacity = 4096;
  if (t != nullptr) capacity = static_cast<int>(t->logfact.size()) * 2;
  if (capacity <= m) capacity = m + 1;

  auto fresh = std::make_unique<Table>();
  fresh->logfact.resize(capacity);
  fresh->logfact[0] = 0.0;
  CompensatedSum acc;
  for (int i = 1; i < capacity; ++i) {
    acc.add(std::log(static_cast<double>(i)));
    fresh->logfact[i] = acc.value();
  }
  const Table* published = fresh.get();
  retired_tables().push_back(std::move(fresh));
  g_table.store(published, std::memory_order_release);
  return *published;
}

}  // namespace

double log_factorial(int m) {
  if (m < 0) throw std::invalid_argument("log_factorial: m must be >= 0");
  return table_with_capacity(m).logfact[m];
}

void warm_log_factorial_cache(int max_m) {
  if (max_m > 0) table_with_capacity(max_m);
}

double log_binomial(int a, int b) {
  if (a < 0) throw std::invalid_argument("log_binomial: a must be >= 0");
  if (b < 0 || b > a) return -std::numeric_limits<double>::infinity();
  const Table& t = table_with_capacity(a);
  return t.logfact[a] - t.logfact[b] - t.logfact[a - b];
}

double hypergeometric_pmf(int j, int n, int ell, int m) {
  if (n < 1) throw std::invalid_argument("hypergeometric_pmf: n must be >= 1");
  if (ell < 0 || ell > n) throw std::invalid_argument("hypergeometric_pmf: ell outside [0,n]");
  if (m < 0 || m > n) throw std::invalid_argument("hypergeometric_pmf: m outside [0,n]");
  if (j < 0 || j > m || j > ell || m - j > n - ell) return 0.0;
  return std::exp(log_binomial(ell, j) + log_binomial(n - ell, m - j) - log_binomial(n, m));
}

}  // namespace definetti
