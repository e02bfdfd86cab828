#include "hyperlat/volumes.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <thread>
#include <vector>

#include "hyperlat/quadrature.hpp"

namespace hyperlat {

RegionSpec RegionSpec::make(const BasePoint& omega, const GroupElement& m,
                            double xi) {
  if (xi <= 0) throw std::invalid_argument("xi must be positive");
  RegionSpec s;
  s.omega = omega;
  s.m = m;
  s.xi = xi;
  OrbitCoords oc = coords(omega, m);
  if (oc.T <= omega.delta)
    throw stabilizer_error("displacement body requires d(omega, M omega) > 0");
  s.xm = oc.X;
  s.ym = oc.Y;
  s.zm = oc.Z;
  s.t = oc.T;
  double t = to_double(oc.T), delta = to_double(omega.delta);
  double root = std::sqrt(t * t - delta * delta);
  s.ell = std::log((t + root) / delta);
  s.sinh_ell = root / delta;
  s.u_m = t / root;
  s.c_m = std::sqrt((t - delta) / (t + delta));
  s.theta_m = angle(omega, m, oc).theta;

  double k = omega.k, v = omega.v, au = std::fabs(omega.uf);
  s.x_max = 1.0 / (v * std::sqrt(k * (k - au)));
  s.y_max = std::sqrt(k) / (v * std::sqrt(k - au));
  s.z_max = k;
  return s;
}

bool region_contains(const RegionSpec& spec, double x, double y, double z) {
  if (x < 0 || x > spec.x_max || std::fabs(y) > spec.y_max ||
      std::fabs(z) > spec.z_max)
    return false;
  if (x == 0 && y == 0) return false;
  const BasePoint& w = spec.omega;
  double k2 = to_double(w.ksq), u = w.uf;
  double xm = to_double(spec.xm), ym = to_double(spec.ym),
         zm = to_double(spec.zm);
  double q1 = x * x * k2 + y * y + 2 * x * y * u;
  double q2 = x * x * xm + y * y * ym + 2 * x * y * zm;
  double cap = 1.0 / (k2 + z * z - 2 * u * z);
  if (std::max(q1, q2) > cap) return false;
  double num = x * y * (k2 * ym - xm) + x * x * (k2 * zm - u * xm) +
               y * y * (u * ym - zm);
  return std::fabs(num) <= spec.xi * q1 * q2;
}

namespace {

// splitmix64 evaluated as a pure function of its counter: a deterministic,
// seekable stream.
std::uint64_t splitmix64_at(std::uint64_t seed, std::uint64_t counter) {
  std::uint64_t z = seed + (counter + 1) * 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double u01_at(std::uint64_t seed, std::uint64_t counter) {
  return static_cast<double>(splitmix64_at(seed, counter) >> 11) * 0x1p-53;
}

}  // namespace

VolumeEstimate vol_mc(const RegionSpec& spec, std::uint64_t n_samples,
                      std::uint64_t seed, int threads) {
  if (n_samples < 1000)
    throw std::invalid_argument("need at least 1000 MC samples");
  if (threads < 1) threads = 1;
  double box_vol = spec.x_max * (2 * spec.y_max) * (2 * spec.z_max);

  auto hits_in = [&](std::uint64_t lo, std::uint64_t hi) {
    std::uint64_t hits = 0;
    for (std::uint64_t i = lo; i < hi; ++i) {
      double x = u01_at(seed, 3 * i) * spec.x_max;
      double y = (2 * u01_at(seed, 3 * i + 1) - 1) * spec.y_max;
      double z = (2 * u01_at(seed, 3 * i + 2) - 1) * spec.z_max;
      if (region_contains(spec, x, y, z)) ++hits;
    }
    return hits;
  };

  std::uint64_t hits = 0;
  if (threads == 1) {
    hits = hits_in(0, n_samples);
  } else {
    std::vector<std::uint64_t> part(threads, 0);
    std::vector<std::thread> pool;
    std::uint64_t chunk = n_samples / threads;
    for (int s = 0; s < threads; ++s) {
      std::uint64_t lo = s * chunk;
      std::uint64_t hi = s + 1 == threads ? n_samples : lo + chunk;
      pool.emplace_back([&, s, lo, hi] { part[s] = hits_in(lo, hi); });
    }
    for (auto& t : pool) t.join();
    for (auto h : part) hits += h;
  }

  double p = static_cast<double>(hits) / static_cast<double>(n_samples);
  VolumeEstimate est;
  est.method = VolumeEstimate::Method::monte_carlo;
  est.value = p * box_vol;
  est.std_error =
      box_vol * std::sqrt(p * (1 - p) / static_cast<double>(n_samples));
  est.samples_or_nodes = n_samples;
  est.seed = seed;
  return est;
}

double area_bm(const RegionSpec& spec, double xi_local, double t) {
  if (xi_local <= 0) return 0;
  double v = spec.omega.v;
  double U = spec.u_m, C = spec.c_m, sl = spec.sinh_ell;
  double cc = std::cos(t) * std::cos(t) / (v * v);
  double a = v / xi_local;

  // In the variable u = theta_M - 2 theta, folded to [0, pi], the integrand
  // is (cc * min(1/sinh l, U + cos u) - a sin u)_+ / (U + cos u).
  auto integrand = [&](double u) {
    double num = cc * std::min(1.0 / sl, U + std::cos(u)) - a * std::sin(u);
    if (num <= 0) return 0.0;
    return num / (U + std::cos(u));
  };

  // Panel edges: the min switch at arccos(-C) (where U + cos u = 1/sinh l)
  // and the clamp zeros on each side of it.
  std::vector<double> kinks;
  double ustar = std::acos(std::clamp(-C, -1.0, 1.0));
  kinks.push_back(ustar);
  double q1 = cc / (sl * a);  // sin u at the clamp zero left of ustar
  if (q1 < 1) {
    kinks.push_back(std::asin(q1));
    kinks.push_back(std::numbers::pi - std::asin(q1));
  }
  // Right of ustar: a sin u - cc cos u = cc U, i.e. R sin(u - phi) = cc U.
  double r = std::hypot(a, cc), phi = std::atan2(cc, a);
  if (cc * U < r) {
    double psi = std::asin(cc * U / r);
    kinks.push_back(phi + psi);
    kinks.push_back(phi + std::numbers::pi - psi);
  }

  double val = integrate_adaptive_pts(integrand, 0.0, std::numbers::pi,
                                      std::move(kinks), 1e-12, 15);
  return val / (2 * v);
}

VolumeEstimate vol_closed(const RegionSpec& spec) {
  double v = spec.omega.v, beta = spec.omega.beta;
  auto f = [&](double t) {
    double c = std::cos(t);
    return area_bm(spec, spec.xi, t) / (c * c);
  };
  VolumeEstimate est;
  est.method = VolumeEstimate::Method::closed_form;
  est.value = v * integrate_adaptive(f, beta / 2 - std::numbers::pi / 2,
                                     beta / 2, 1e-9, 15);
  est.std_error = 0;
  return est;
}

double bm_profile(const RegionSpec& spec, double x) {
  double v = spec.omega.v;
  return std::numbers::pi * v / 2 * area_bm(spec, v * x / 2, 0.0);
}

double dbm_dxi(const RegionSpec& spec) {
  double xi = spec.xi;
  double U = spec.u_m, sl = spec.sinh_ell, C = spec.c_m;
  double delta = to_double(spec.omega.delta);

  // Int sin u/(U + cos u) du = ln((U + cos a)/(U + cos b)) on [a, b],
  // written as log1p of a product form so nothing cancels when the
  // endpoints are close or when b approaches pi with U near 1:
  //   cos a - cos b = 2 sin((a+b)/2) sin((b-a)/2),
  //   U + cos b = (U - 1) + 2 cos^2(b/2),  U - 1 = 1/(sinh^2(U + 1)).
  double u_minus_1 = 1.0 / (sl * sl * (U + 1));
  auto piece = [&](double a, double b) {
    if (b <= a) return 0.0;
    double num = 2 * std::sin(0.5 * (a + b)) * std::sin(0.5 * (b - a));
    double cb = std::cos(0.5 * b);
    double den = u_minus_1 + 2 * cb * cb;
    return std::log1p(num / den);
  };

  double integral;
  if (xi >= sl) {
    integral = piece(0, std::numbers::pi);  // ln((U+1)/(U-1)) = 2 ell
  } else {
    double a1 = std::asin(xi / sl);
    double alpha = std::asin(xi / std::sqrt(xi * xi + 1));
    double g = std::asin(U * std::sin(alpha));  // U sin(alpha) <= 1 here
    if (xi >= 2 * C / std::sqrt(1 - C * C)) {   // xi >= 2 sinh(ell/2)
      integral = piece(0, a1) +
                 piece(std::numbers::pi - a1, alpha + g) +
                 piece(std::numbers::pi + alpha - g, std::numbers::pi);
    } else {
      integral = piece(0, a1) +
                 piece(std::numbers::pi + alpha - g, std::numbers::pi);
    }
  }
  return std::numbers::pi / (2 * delta * delta * xi * xi) * integral;
}

}  // namespace hyperlat
