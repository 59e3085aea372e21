#include "definetti/families.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <vector>

#include "definetti/compensated.hpp"
#include "definetti/log_binomial.hpp"

namespace definetti {

namespace {

// lgamma without the signgam global; all arguments here are positive.
double log_gamma(double x) {
  int sign = 0;
  return lgamma_r(x, &sign);
}

std::string format_real(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

CountPmf generate_iid(double p, int n) {
  if (p < 0.0 || p > 1.0) throw std::invalid_argument("iid: p must lie in [0,1]");
  std::vector<double> raw(n + 1, 0.0);
  if (p == 0.0) {
    raw[0] = 1.0;
  } else if (p == 1.0) {
    raw[n] = 1.0;
  } else {
    const double lp = std::log(p);
    const double lq = std::log1p(-p);
    for (int ell = 0; ell <= n; ++ell) {
      raw[ell] = std::exp(log_binomial(n, ell) + ell * lp + (n - ell) * lq);
    }
  }
  return make_count_pmf(n, std::move(raw));
}

CountPmf generate_polya(double a, double b, int n) {
  if (!(a > 0.0)) throw std::invalid_argument("polya: a must be > 0");
  if (!(b > 0.0)) throw std::invalid_argument("polya: b must be > 0");
  // Beta functions via log-gamma differences for stability at large n.
  const double log_beta_ab = log_gamma(a) + log_gamma(b) - log_gamma(a + b);
  const double log_gamma_abn = log_gamma(a + b + n);
  std::vector<double> raw(n + 1, 0.0);
  for (int ell = 0; ell <= n; ++ell) {
    const double log_beta_post =
        log_gamma(a + ell) + log_gamma(b + n - ell) - log_gamma_abn;
    raw[ell] = std::exp(log_binomial(n, ell) + log_beta_post - log_beta_ab);
  }
  return make_count_pmf(n, std::move(raw));
}

CountPmf generate_dirichlet(std::uint64_t seed, int n) {
  std::uint64_t state = seed;
  std::vector<double> raw(n + 1, 0.0);
  CompensatedSum total;
  for (int ell = 0; ell <= n; ++ell) {
    const double u = splitmix64_unit(state);
    raw[ell] = -std::log1p(-u);
    total.add(raw[ell]);
  }
  const double t = total.value();
  for (double& x : raw) x /= t;
  return make_count_pmf(n, std::move(raw));
}

}  // namespace

FamilySpec FamilySpec::iid(double p) {
  FamilySpec s;
  s.kind = Kind::iid;
  s.p = p;
  return s;
}

FamilySpec FamilySpec::point_mass(int ell) {
  FamilySpec s;
  s.kind = Kind::point_mass;
  s.ell = ell;
  return s;
}

FamilySpec FamilySpec::point_mass_fraction(double fraction) {
  FamilySpec s;
  s.kind = Kind::point_mass;
  s.ell_fraction = fraction;
  return s;
}

FamilySpec FamilySpec::polya(double a, double b) {
  FamilySpec s;
  s.kind = Kind::polya;
  s.a = a;
  s.b = b;
  return s;
}

FamilySpec FamilySpec::uniform_counts() {
  FamilySpec s;
  s.kind = Kind::uniform_counts;
  return s;
}

FamilySpec FamilySpec::random_dirichlet(std::uint64_t seed) {
  FamilySpec s;
  s.kind = Kind::random_dirichlet;
  s.seed = seed;
  return s;
}

std::string FamilySpec::label() const {
  switch (kind) {
    case Kind::iid:
      return "iid(" + format_real(p) + ")";
    case Kind::point_mass:
      if (ell_fraction >= 0.0) return "point_mass(" + format_real(ell_fraction) + "n)";
      return "point_mass(" + std::to_string(ell) + ")";
    case Kind::polya:
      return "polya(" + format_real(a) + "," + format_real(b) + ")";
    case Kind::uniform_counts:
      return "uniform_counts";
    case Kind::random_dirichlet:
      return "random_dirichlet(" + std::to_string(seed) + ")";
  }
  throw std::logic_error("FamilySpec: unknown kind");
}

FamilySpec parse_family_label(const std::string& text) {
  const auto open = text.find('(');
  const std::string name = open == std::string::npos ? text : text.substr(0, open);
  std::string args;
  if (open != std::string::npos) {
    const auto close = text.rfind(')');
    if (close == std::string::npos || close < open) {
      throw std::invalid_argument("family: unbalanced parentheses in '" + text + "'");
    }
    args = text.substr(open + 1, close - open - 1);
  }

  if (name == "uniform_counts") return FamilySpec::uniform_counts();
  if (name == "iid") return FamilySpec::iid(std::stod(args));
  if (name == "polya") {
    const auto comma = args.find(',');
    if (comma == std::string::npos) {
      throw std::invalid_argument("family: polya needs two parameters, got '" + text + "'");
    }
    return FamilySpec::polya(std::stod(args.substr(0, comma)),
                             std::stod(args.substr(comma + 1)));
  }
  if (name == "random_dirichlet") {
    return FamilySpec::random_dirichlet(std::stoull(args));
  }
  if (name == "point_mass") {
    if (!args.empty() && args.back() == 'n') {
      return FamilySpec::point_mass_fraction(std::stod(args.substr(0, args.size() - 1)));
    }
    return FamilySpec::point_mass(std::stoi(args));
  }
  throw std::invalid_argument("family: unknown kind '" + name + "'");
}

CountPmf generate(const FamilySpec& spec, int n) {
  if (n < 1) throw std::invalid_argument("generate: n must be >= 1");
  switch (spec.kind) {
    case FamilySpec::Kind::iid:
      return generate_iid(spec.p, n);
    case FamilySpec::Kind::point_mass: {
      int ell = spec.ell;
      if (spec.ell_fraction >= 0.0) {
        if (spec.ell_fraction > 1.0) {
          throw std::invalid_argument("point_mass: fraction must lie in [0,1]");
        }
        ell = static_cast<int>(std::floor(spec.ell_fraction * n));
        if (ell > n) ell = n;
      }
      if (ell < 0 || ell > n) {
        throw std::invalid_argument("point_mass: ell must lie in [0,n]");
      }
      std::vector<double> raw(n + 1, 0.0);
      raw[ell] = 1.0;
      return make_count_pmf(n, std::move(raw));
    }
    case FamilySpec::Kind::polya:
      return generate_polya(spec.a, spec.b, n);
    case FamilySpec::Kind::uniform_counts: {
      std::vector<double> raw(n + 1, 1.0 / (n + 1));
      return make_count_pmf(n, std::move(raw));
    }
    case FamilySpec::Kind::random_dirichlet:
      return generate_dirichlet(spec.seed, n);
  }
  throw std::logic_error("generate: unknown kind");
}

}  // namespace definetti
