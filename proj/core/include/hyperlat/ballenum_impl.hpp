#pragma once

// Template implementation of BallEnumerator::scan_shard. Not for direct
// inclusion; ballenum.hpp includes this at the end.

#include <cmath>
#include <numeric>

namespace hyperlat {

namespace detail {

template <class I>
I cast_int(const Int& v) {
  if constexpr (std::is_same_v<I, Int>) {
    return v;
  } else {
    // fits_i128 guarantees the model constants fit in a signed 128-bit word.
    bool neg = v < 0;
    Int a = neg ? Int(-v) : v;
    I r = 0;
    I scale = 1;
    while (a != 0) {
      r += scale * static_cast<I>((a & 0xffffffffffffffffULL).convert_to<std::uint64_t>());
      a >>= 64;
      scale *= (I(1) << 64);
    }
    return neg ? -r : r;
  }
}

inline Int to_cpp_int(const Int& v) { return v; }
Int to_cpp_int(__int128 v);

template <class I>
I pos_mod(I a, I m) {
  I r = a % m;
  if (r < 0) r += m;
  return r;
}

template <class I>
I gcd_of(I a, I b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    I t = a % b;
    a = b;
    b = t;
  }
  return a;
}

// Inverse of d modulo c (c >= 1, gcd(c,d) == 1), in [0, c).
template <class I>
I mod_inverse(I d, I c) {
  I r0 = c, r1 = pos_mod(d, c);
  I s0 = 0, s1 = 1;
  while (r1 != 0) {
    I q = r0 / r1;
    I r2 = r0 - q * r1;
    r0 = r1;
    r1 = r2;
    I s2 = s0 - q * s1;
    s0 = s1;
    s1 = s2;
  }
  return pos_mod(s0, c);
}

}  // namespace detail

template <class F>
BallStats BallEnumerator::scan_shard(int shard, int nshards, F&& visit) const {
  if (model_.fits_i128)
    return scan_shard_impl<__int128>(shard, nshards, std::forward<F>(visit));
  return scan_shard_impl<Int>(shard, nshards, std::forward<F>(visit));
}

template <class I, class F>
BallStats BallEnumerator::scan_shard_impl(int shard, int nshards,
                                          F&& visit) const {
  using detail::cast_int;
  BallStats stats;
  if (!model_.any) return stats;

  const I un = cast_int<I>(model_.un);
  const I kn = cast_int<I>(model_.kn);
  const I den = cast_int<I>(model_.den);
  const I q_den = cast_int<I>(model_.q_den);
  const I rhs = cast_int<I>(model_.rhs);            // compare t*q_den against this
  const I ts_delta = cast_int<I>(model_.ts_delta);  // den^2 * Delta
  const long long ad_max = model_.ad_max;

  const Int den_big = model_.den;
  const double delta_f = to_double(spec_.omega.delta);

  auto emit = [&](I a, I b, I c, I d, I xs, I ys, I zs, I ts) {
    ++stats.b_total;
    if (ts == ts_delta) ++stats.b_stabilizer;
    I lhs_half = den * xs, rhs_half = kn * ys;
    bool inner = lhs_half < rhs_half, outer = lhs_half > rhs_half;
    if (inner)
      ++stats.b_inner;
    else if (outer)
      ++stats.b_outer;
    else
      ++stats.b_boundary;
    if (spec_.mode == BallMode::half_inner && !inner) return;
    if (spec_.mode == BallMode::half_outer && !outer) return;

    GroupElement g{detail::to_cpp_int(a), detail::to_cpp_int(b),
                   detail::to_cpp_int(c), detail::to_cpp_int(d)};
    OrbitCoords oc;
    oc.X = Rat(detail::to_cpp_int(xs), den_big);
    oc.Y = Rat(detail::to_cpp_int(ys), den_big);
    oc.Z = Rat(detail::to_cpp_int(zs), den_big);
    oc.T = Rat(detail::to_cpp_int(ts), den_big * den_big);
    double t = to_double(oc.T);
    double disc = t * t - delta_f * delta_f;
    oc.eps_t = disc <= 0 ? 1.0 : (t - std::sqrt(disc)) / delta_f;
    visit(g, oc);
  };

  auto coords_of = [&](I a, I b, I c, I d, I& xs, I& ys, I& zs, I& ts) {
    xs = kn * a * a + den * b * b + 2 * un * a * b;
    ys = kn * c * c + den * d * d + 2 * un * c * d;
    zs = kn * a * c + den * b * d + un * (a * d + b * c);
    ts = den * xs + kn * ys - 2 * un * zs;
  };

  // Stratum c == 0: representatives (1, b, 0, 1), T = Delta + b^2.
  if (shard == 0) {
    I bmax = cast_int<I>(model_.b0_max);
    for (I b = -bmax; b <= bmax; ++b) {
      I xs, ys, zs, ts;
      coords_of(I(1), b, I(0), I(1), xs, ys, zs, ts);
      emit(I(1), b, I(0), I(1), xs, ys, zs, ts);
    }
  }

  // Strata c >= 1: iterate coprime d, then a = d^{-1} (mod c) stepped by c.
  // T restricted to the a-lattice is a convex integer quadratic, evaluated
  // by forward differencing; the scan stops once past the minimum and
  // outside the ball.
  long long c_start = shard == 0 ? nshards : shard;
  if (nshards == 1) c_start = 1;
  for (long long cl = c_start; cl <= model_.c_max;
       cl += (nshards == 1 ? 1 : nshards)) {
    I c = cl;
    for (long long dl = -ad_max; dl <= ad_max; ++dl) {
      if (std::gcd(cl, dl < 0 ? -dl : dl) != 1) continue;
      I d = dl;
      I a0 = detail::mod_inverse<I>(d, c);
      // First lattice point >= -ad_max (a0 >= 0 >= lo, so / is a floor).
      I lo = -I(ad_max);
      I a = a0 - c * ((a0 - lo) / c);
      I hi = I(ad_max);
      if (a > hi) continue;

      // Exact quadratic values of T*den^2*q_den at the first lattice points.
      auto ts_at = [&](I av) {
        I b = (av * d - 1) / c;
        I xs, ys, zs, ts;
        coords_of(av, b, c, d, xs, ys, zs, ts);
        return ts;
      };
      I t0 = ts_at(a) * q_den;
      I d2 = 0, d1 = 0;
      bool have_d = false;
      if (a + c <= hi) {
        I t1 = ts_at(a + c) * q_den;
        d1 = t1 - t0;
        if (a + 2 * c <= hi) d2 = ts_at(a + 2 * c) * q_den - 2 * t1 + t0;
        have_d = true;
      }

      I t = t0;
      for (I av = a; av <= hi; av += c) {
        if (t <= rhs) {
          I b = (av * d - 1) / c;
          I xs, ys, zs, ts;
          coords_of(av, b, c, d, xs, ys, zs, ts);
          emit(av, b, c, d, xs, ys, zs, ts);
        } else if (have_d && d1 >= 0) {
          break;  // convex and increasing: no further members
        }
        if (have_d) {
          t += d1;
          d1 += d2;
        }
      }
    }
  }
  return stats;
}

}  // namespace hyperlat
