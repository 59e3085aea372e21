#pragma once

#include <cstdint>
#include <string>

#include "definetti/count_pmf.hpp"

namespace definetti {

// splitmix64 (public domain, Sebastiano Vigna). The only PRNG in the project;
// fixed here so seeded fixtures are reproducible bit for bit.
inline std::uint64_t splitmix64_next(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Uniform double in [0,1) with 53 random bits.
inline double splitmix64_unit(std::uint64_t& state) {
  return static_cast<double>(splitmix64_next(state) >> 11) * 0x1.0p-53;
}

// A named exchangeable family, instantiable at any length n.
struct FamilySpec {
  enum class Kind { iid, point_mass, polya, uniform_counts, random_dirichlet };

  Kind kind = Kind::uniform_counts;
  double p = 0.0;              // iid: success probability in [0,1]
  int ell = -1;                // point_mass: absolute count, -1 when unset
  double ell_fraction = -1.0;  // point_mass: count = floor(fraction*n), -1 when unset
  double a = 0.0, b = 0.0;     // polya: urn weights, both > 0
  std::uint64_t seed = 0;      // random_dirichlet

  static FamilySpec iid(double p);
  static FamilySpec point_mass(int ell);
  static FamilySpec point_mass_fraction(double fraction);
  static FamilySpec polya(double a, double b);
  static FamilySpec uniform_counts();
  static FamilySpec random_dirichlet(std::uint64_t seed);

  // Compact label, e.g. "iid(0.3)", "point_mass(0.5n)", "polya(1,1)",
  // "random_dirichlet(42)". Used as the family column in sweep output and
  // accepted back by parse_family_label.
  std::string label() const;
};

FamilySpec parse_family_label(const std::string& text);

// Count distribution of the family at length n:
//   iid(p)             -> binomial(n, p)
//   point_mass(l)      -> delta at l
//   polya(a, b)        -> beta-binomial(n, a, b)
//   uniform_counts     -> 1/(n+1) everywhere
//   random_dirichlet   -> normalized seeded exponential draws
// Invalid parameters are rejected with the violated constraint named.
CountPmf generate(const FamilySpec& spec, int n);

}  // namespace definetti
