#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "definetti/families.hpp"
#include "definetti/log_binomial.hpp"
#include "definetti/serialization.hpp"

using namespace definetti;
using quad = boost::multiprecision::cpp_bin_float_quad;

namespace {

// Beta-binomial entries by direct quad-precision products, the independent
// route for the polya generator: C(n,l) prod(a+j) prod(b+j) / prod(a+b+j).
double quad_beta_binomial(double a, double b, int n, int ell) {
  quad v = exp(quad(log_binomial(n, ell)));
  for (int j = 0; j < ell; ++j) v *= quad(a) + j;
  for (int j = 0; j < n - ell; ++j) v *= quad(b) + j;
  for (int j = 0; j < n; ++j) v /= quad(a) + quad(b) + j;
  return static_cast<double>(v);
}

}  // namespace

TEST_CASE("iid families at the endpoints and in the middle") {
  const CountPmf zero = generate(FamilySpec::iid(0.0), 5);
  CHECK(zero[0] == 1.0);
  const CountPmf one = generate(FamilySpec::iid(1.0), 5);
  CHECK(one[5] == 1.0);

  const CountPmf mid = generate(FamilySpec::iid(0.3), 5);
  for (int ell = 0; ell <= 5; ++ell) {
    const double expected =
        std::exp(log_binomial(5, ell)) * std::pow(0.3, ell) * std::pow(0.7, 5 - ell);
    CHECK(std::abs(mid[ell] - expected) < 1e-14);
  }
}

TEST_CASE("polya(1,1) is the uniform count law") {
  for (int n : {2, 16, 64, 256}) {
    const CountPmf p = generate(FamilySpec::polya(1.0, 1.0), n);
    for (int ell = 0; ell <= n; ++ell) {
      CHECK(std::abs(p[ell] - 1.0 / (n + 1)) < 1e-12);
    }
  }
}

TEST_CASE("polya matches the quad-precision product formula") {
  struct Case {
    double a, b;
    int n;
  };
  for (const Case c : {Case{2.0, 5.0, 256}, Case{1.0, 1.0, 128}, Case{0.5, 3.5, 200}}) {
    const CountPmf p = generate(FamilySpec::polya(c.a, c.b), c.n);
    for (int ell = 0; ell <= c.n; ++ell) {
      const double expected = quad_beta_binomial(c.a, c.b, c.n, ell);
      // The last entry absorbs the exact-renormalization residue (a few ulps
      // of total mass), so it gets a tiny absolute allowance on top.
      const double tol = 1e-12 * expected + (ell == c.n ? 1e-15 : 0.0);
      CHECK(std::abs(p[ell] - expected) <= tol);
    }
  }
}

TEST_CASE("dirichlet draws are deterministic in the seed") {
  const CountPmf a = generate(FamilySpec::random_dirichlet(42), 8);
  const CountPmf b = generate(FamilySpec::random_dirichlet(42), 8);
  CHECK(a.mass() == b.mass());
  const CountPmf c = generate(FamilySpec::random_dirichlet(43), 8);
  CHECK(a.mass() != c.mass());
}

TEST_CASE("dirichlet fixture, captured once from the seeded generator") {
  const CountPmf d = generate(FamilySpec::random_dirichlet(42), 8);
  const std::vector<double> frozen = {
      0.20453045120578026,   0.026338393798725438, 0.049361887806581628,
      0.06377038390953127,   0.0058606394246626635, 0.30634474989085708,
      0.03724762275189137,   0.24375411435610642,  0.062791756855863801};
  REQUIRE(d.mass().size() == frozen.size());
  for (std::size_t i = 0; i < frozen.size(); ++i) CHECK(d[i] == frozen[i]);
}

TEST_CASE("every generated family is a valid count pmf") {
  const std::vector<FamilySpec> bank = {
      FamilySpec::iid(0.3),           FamilySpec::point_mass(3),
      FamilySpec::point_mass_fraction(0.5), FamilySpec::polya(2.0, 5.0),
      FamilySpec::uniform_counts(),   FamilySpec::random_dirichlet(7)};
  for (const auto& spec : bank) {
    for (int n : {3, 8, 31}) {
      const CountPmf pi = generate(spec, n);
      const double sum = std::accumulate(pi.mass().begin(), pi.mass().end(), 0.0);
      CHECK(sum == 1.0);
      for (int ell = 0; ell <= n; ++ell) CHECK(pi[ell] >= 0.0);
    }
  }
}

TEST_CASE("parameter validation names the constraint") {
  CHECK_THROWS_WITH_AS(generate(FamilySpec::iid(1.5), 4), "iid: p must lie in [0,1]",
                       std::invalid_argument);
  CHECK_THROWS_WITH_AS(generate(FamilySpec::polya(0.0, 1.0), 4), "polya: a must be > 0",
                       std::invalid_argument);
  CHECK_THROWS_WITH_AS(generate(FamilySpec::polya(1.0, -2.0), 4), "polya: b must be > 0",
                       std::invalid_argument);
  CHECK_THROWS_WITH_AS(generate(FamilySpec::point_mass(5), 4),
                       "point_mass: ell must lie in [0,n]", std::invalid_argument);
  CHECK_THROWS_WITH_AS(generate(FamilySpec::point_mass_fraction(1.5), 4),
                       "point_mass: fraction must lie in [0,1]", std::invalid_argument);
}

TEST_CASE("point mass fraction resolves per n") {
  const CountPmf half = generate(FamilySpec::point_mass_fraction(0.5), 9);
  CHECK(half[4] == 1.0);
  const CountPmf full = generate(FamilySpec::point_mass_fraction(1.0), 6);
  CHECK(full[6] == 1.0);
}

TEST_CASE("labels round trip through the parser") {
  const std::vector<FamilySpec> bank = {
      FamilySpec::iid(0.3),           FamilySpec::point_mass(12),
      FamilySpec::point_mass_fraction(0.5), FamilySpec::polya(1.0, 1.0),
      FamilySpec::polya(2.0, 5.0),    FamilySpec::uniform_counts(),
      FamilySpec::random_dirichlet(42)};
  for (const auto& spec : bank) {
    const FamilySpec back = parse_family_label(spec.label());
    CHECK(back.label() == spec.label());
    CHECK(generate(back, 24).mass() == generate(spec, 24).mass());
  }
  CHECK_THROWS_AS(parse_family_label("mystery(3)"), std::invalid_argument);
  CHECK_THROWS_AS(parse_family_label("polya(1"), std::invalid_argument);
}

TEST_CASE("family specs round trip through JSON") {
  const std::vector<FamilySpec> bank = {
      FamilySpec::iid(0.25),          FamilySpec::point_mass(3),
      FamilySpec::point_mass_fraction(0.25), FamilySpec::polya(2.0, 5.0),
      FamilySpec::uniform_counts(),   FamilySpec::random_dirichlet(9001)};
  for (const auto& spec : bank) {
    const FamilySpec back = family_spec_from_json(family_spec_to_json(spec));
    CHECK(back.label() == spec.label());
    CHECK(generate(back, 16).mass() == generate(spec, 16).mass());
  }
}
