#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hyperlat/modgroup.hpp"

namespace testutil {

// Counter-based splitmix64 stream; reproducible and seekable.
struct Rng {
  std::uint64_t seed;
  std::uint64_t counter = 0;

  explicit Rng(std::uint64_t s) : seed(s) {}

  std::uint64_t next() {
    std::uint64_t z = seed + (++counter) * 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // uniform in [0, n)
  std::uint64_t below(std::uint64_t n) { return next() % n; }

  double u01() { return static_cast<double>(next() >> 11) * 0x1p-53; }
};

// Random group element as a word in the generators S = (0,-1;1,0) and
// T^n = (1,n;0,1); entry growth is bounded by the word length.
inline hyperlat::GroupElement random_element(Rng& rng, int len = 12) {
  using hyperlat::GroupElement;
  GroupElement g = hyperlat::normalize(1, 0, 0, 1);
  const GroupElement s = hyperlat::normalize(0, -1, 1, 0);
  for (int i = 0; i < len; ++i) {
    long long n = static_cast<long long>(rng.below(7)) - 3;
    g = hyperlat::mul(g, hyperlat::normalize(1, n, 0, 1));
    if (rng.below(2)) g = hyperlat::mul(g, s);
  }
  return g;
}

inline std::vector<std::string> base_point_specs() {
  return {"i", "rho", "u=1/3,ksq=3/2", "u=-2/5,ksq=2", "u=1/7,ksq=5/3"};
}

}  // namespace testutil
