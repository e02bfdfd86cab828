#pragma once

#include <cstdint>

#include "hyperlat/modgroup.hpp"

namespace hyperlat {

// A displacement body: the set of (x, y, z) in the box
// [0, 1/(v sqrt(k(k-|u|)))] x [-sqrt(k)/(v sqrt(k-|u|)), +] x [-k, k] with
// |Xi_M(x, y)| <= xi and
// max{x^2 k^2 + y^2 + 2xyu, x^2 X_M + y^2 Y_M + 2xy Z_M} <= 1/(k^2 + z^2 - 2uz).
// Its volume gives the limiting pair count for displacement M.
struct RegionSpec {
  BasePoint omega;
  GroupElement m;
  double xi = 0;

  Rat xm, ym, zm, t;  // exact coordinates of M
  double ell = 0;       // displacement d(omega, M omega) > 0
  double sinh_ell = 0;
  double u_m = 0;       // coth(ell) = T/sqrt(T^2 - Delta^2)
  double c_m = 0;       // tanh(ell/2) = sqrt((T-Delta)/(T+Delta)); U - C = 1/sinh
  double theta_m = 0;
  double x_max = 0, y_max = 0, z_max = 0;  // box half-widths (x from 0)

  // Requires d(omega, M omega) > 0 and xi > 0.
  static RegionSpec make(const BasePoint& omega, const GroupElement& m,
                         double xi);
};

struct VolumeEstimate {
  enum class Method { monte_carlo, closed_form };
  double value = 0;
  double std_error = 0;  // binomial for MC, 0 for quadrature
  Method method = Method::closed_form;
  std::uint64_t samples_or_nodes = 0;
  std::uint64_t seed = 0;
};

// Membership in the body; (x, y) = (0, 0) is excluded (Xi undefined there,
// measure zero).
bool region_contains(const RegionSpec& spec, double x, double y, double z);

// Monte Carlo volume over the box. The random stream is counter-based and
// keyed by (seed, sample index): identical results for any thread count.
VolumeEstimate vol_mc(const RegionSpec& spec, std::uint64_t n_samples,
                      std::uint64_t seed, int threads = 1);

// The polar-coordinate slice area
//   B_M(xi, t) = (1/2v) Int_0^pi [ (cos^2 t / v^2) min{1/sinh l, U + cos u}
//                                  - (v/xi) sin u ]_+ / (U + cos u) du,
// with clamp/min kink locations found analytically and used as quadrature
// panel edges. Satisfies B_M(xi/cos^2 t, t) = B_M(xi, 0) cos^2 t.
double area_bm(const RegionSpec& spec, double xi_local, double t);

// Vol(S_{M,xi}) = v Int_{beta/2 - pi/2}^{beta/2} B_M(xi, t) dt / cos^2 t.
VolumeEstimate vol_closed(const RegionSpec& spec);

// The angular profile B_M(x) = (pi v / 2) B_M(v x / 2, 0).
double bm_profile(const RegionSpec& spec, double x);

// Closed form of the profile derivative at Delta * xi:
//   B_M'(Delta xi) = (pi / (2 Delta^2 xi^2)) Int_{J_{xi,M}} sin u/(U+cos u) du
// computed from the three-case interval table with the elementary
// antiderivative -ln(U + cos u); equals (pi / (Delta^2 xi^2)) f_xi(xi, ell).
double dbm_dxi(const RegionSpec& spec);

}  // namespace hyperlat
