#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>

namespace hyperlat {

// Exact arithmetic backbone. All lattice coordinates (X, Y, Z, T), the
// quantities Phi and Xi_M, and ball-membership thresholds are carried as
// arbitrary-precision rationals; floats appear only for angles, distances
// and densities.
using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline double to_double(const Rat& r) { return r.convert_to<double>(); }
inline double to_double(const Int& n) { return n.convert_to<double>(); }

// Parses "p/q" (q > 0) or a plain integer "n".
Rat parse_rational(const std::string& s);

// Parses a decimal literal ("300", "12.5", "3/2") into an exact rational,
// so that thresholds like Q^2 are reproducible bit-for-bit.
Rat parse_decimal_or_rational(const std::string& s);

std::string to_string(const Rat& r);

// Floor of sqrt for nonnegative integers.
Int isqrt_floor(const Int& n);

// True iff n is a perfect square; if so *root holds the square root.
bool is_perfect_square(const Int& n, Int* root = nullptr);

}  // namespace hyperlat
