#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "hyperlat/ballenum.hpp"

namespace hyperlat {

// Minimal positive solution of T^2 - 4 k^2 Delta = 4; T is always even, so
// (T/2, k) is the fundamental solution of x^2 - Delta y^2 = 1.
struct PellSolution {
  Int t_big;    // T
  Int k_small;  // k
};

// Minimal positive solution of t^2 - 4 u^2 Delta = 9 with gcd(3, u) = 1,
// when one exists.
struct NineSolution {
  Int t, u;
};

// Arithmetic data of a discriminant Delta = B0^2 + C0^2 - B0 C0 (coprime
// positive pairs, Delta not a square). Classifies the primitive closed
// geodesics through the projection of rho with that discriminant.
struct DiscriminantRecord {
  Int delta;
  std::vector<std::pair<Int, Int>> pairs;  // sorted (B0, C0)
  PellSolution pell;
  std::optional<NineSolution> nine;
  int eps1 = 0;  // 1 iff pell.k_small is odd
  int eps2 = 0;  // 0 iff nine exists
  int fibers = 0;  // parametrization multiplicity: 1, 2 or 4
  int num_classes = 0;  // |pairs| / fibers
};

// A primitive hyperbolic matrix with positive entries whose axis passes
// through rho: D - A = 2(B - C).
struct GeodesicRep {
  GroupElement matrix;
  Int delta;
  std::pair<Int, Int> source_pair;
};

// A lattice point gamma.rho strictly inside the segment (rho -> g.rho),
// identified by its exact coordinates at rho (2Z is an integer; X, Y are).
struct SegmentPoint {
  Rat x, y, z;
  Rat cosh_d;  // cosh d(rho, gamma.rho) = t/3
  bool is_midpoint = false;
};

// Requires |trace| > 2.
bool is_axis_through_rho(const GroupElement& g);

// delta must be positive and not a perfect square.
PellSolution pell_min(const Int& delta);

// Searches one fundamental-unit period (u up to 3 * pell k; max_periods
// extends the scan for property tests).
std::optional<NineSolution> nine_solution(const Int& delta, int max_periods = 1);

// All coprime positive (B0, C0) with B0^2 + C0^2 - B0 C0 = delta, sorted.
// Empty when delta is a square or not representable.
std::vector<std::pair<Int, Int>> discriminant_pairs(const Int& delta);

// delta is in the discriminant set iff it is not a square and representable.
bool in_d_rho(const Int& delta);

// Number of distinct prime factors p = 1 (mod 3) of delta.
int nu_of(const Int& delta);

// Full record; throws std::invalid_argument if delta is not in the set.
DiscriminantRecord classify(const Int& delta);

// The parametrized representative
// (T/2 - k(B0-C0), k B0; k C0, T/2 + k(B0-C0)).
GeodesicRep phi_param(const Int& delta, const Int& b0, const Int& c0);

// The 0, 1 or 3 lattice points strictly inside (rho -> g.rho) for
// g = phi_param(delta, b0, c0), via the norm equations t^2 - 4u^2 delta = 1
// (midpoint, k even) and t^2 - 4u^2 delta = 9, gcd(3,u) = 1 (the others).
std::vector<SegmentPoint> segment_lattice_points(const Int& delta,
                                                 const Int& b0, const Int& c0);

// Coordinates (X, Y, Z) of the segment midpoint of (rho -> g.rho):
// X = A + B/2, Y = D + C/2, Z = A/2 + B = D/2 + C. Throws if g is not a
// positive-entry matrix with axis through rho.
SegmentPoint midpoint_coords(const GroupElement& g);

// All group elements gamma with the given exact coordinates at omega
// (recovered by a ball search of radius T = X + ksq Y - 2u Z).
std::vector<GroupElement> elements_with_coords(const BasePoint& omega,
                                               const Rat& x, const Rat& y,
                                               const Rat& z);

}  // namespace hyperlat
