#pragma once

#include <algorithm>
#include <cmath>
#include <type_traits>
#include <vector>

namespace hyperlat {

// Gauss-Legendre nodes/weights on [-1, 1], generated once per order and
// cached. Thread-safe.
struct GaussLegendre {
  std::vector<double> x, w;
};

const GaussLegendre& gauss_legendre(int n);

template <class F>
auto integrate_gl(F&& f, double a, double b, int n) {
  using V = std::invoke_result_t<F&, double>;
  const GaussLegendre& gl = gauss_legendre(n);
  double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  V acc{};
  for (std::size_t i = 0; i < gl.x.size(); ++i)
    acc += V(gl.w[i] * half * f(mid + half * gl.x[i]));
  return acc;
}

namespace detail {

template <class V>
double quad_norm(const V& v) {
  if constexpr (std::is_floating_point_v<V>)
    return std::fabs(v);
  else
    return std::abs(v);  // std::complex
}

template <class F, class V>
V adapt(F& f, double a, double b, double tol, int order, int depth, V whole) {
  double m = 0.5 * (a + b);
  V left = integrate_gl(f, a, m, order);
  V right = integrate_gl(f, m, b, order);
  V both = left + right;
  if (depth <= 0 || quad_norm(V(both - whole)) <= tol) return both;
  return adapt(f, a, m, 0.5 * tol, order, depth - 1, left) +
         adapt(f, m, b, 0.5 * tol, order, depth - 1, right);
}

}  // namespace detail

// Adaptive bisection: a panel is accepted when halving changes it by <= tol.
template <class F>
auto integrate_adaptive(F&& f, double a, double b, double tol, int order = 15,
                        int max_depth = 32) {
  using V = std::invoke_result_t<F&, double>;
  if (a == b) return V{};
  V whole = integrate_gl(f, a, b, order);
  return detail::adapt<F, V>(f, a, b, tol, order, max_depth, whole);
}

// Same, with interior breakpoints (integrand kinks) used as panel edges.
// Points outside (a, b) are ignored.
template <class F>
auto integrate_adaptive_pts(F&& f, double a, double b,
                            std::vector<double> pts, double tol,
                            int order = 15, int max_depth = 32) {
  using V = std::invoke_result_t<F&, double>;
  pts.push_back(a);
  pts.push_back(b);
  std::sort(pts.begin(), pts.end());
  V acc{};
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    double lo = std::max(a, pts[i]), hi = std::min(b, pts[i + 1]);
    if (hi > lo) acc += integrate_adaptive(f, lo, hi, tol, order, max_depth);
  }
  return acc;
}

}  // namespace hyperlat
