#include "hyperlat/selberg.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "hyperlat/quadrature.hpp"

namespace hyperlat {

namespace {

using C = std::complex<double>;

constexpr double PI = std::numbers::pi;

// r - A(r) with A(r) = arccosh(cosh r / c), the antiderivative of
// sinh r / sqrt(cosh^2 r - c^2) for cosh r >= c. The e^{-r} is folded into
// the arccosh logarithm exactly, so the difference stays accurate when both
// terms are large.
double r_minus_arc(double r, double c) {
  double che = 0.5 * (1 + std::exp(-2 * r));  // cosh(r) e^{-r}
  double inner = che * che - c * c * std::exp(-2 * r);
  double we = che + std::sqrt(std::max(inner, 0.0));
  return std::log(c) - std::log(we);
}

}  // namespace

KernelSpec KernelSpec::make(double x) {
  if (x <= 0) throw std::invalid_argument("kernel height X must be positive");
  KernelSpec s;
  s.x_param = x;
  s.r1 = std::asinh(x);
  s.r2 = 2 * std::asinh(x / 2);
  return s;
}

double f_kernel(const KernelSpec& spec, double r) {
  if (r < 0) throw std::invalid_argument("radius must be nonnegative");
  if (r <= spec.r1) return r;
  double x2 = spec.x_param * spec.x_param;
  double c = std::sqrt(1 + x2);  // cosh r1
  // f' integrates to r - 2 A(r) on [r1, r2] and r - A(r) - A(r2) beyond,
  // with A(r2) = ln c; the last branch collapses to -ln(w e^{-r}) with
  // w = cosh r + sqrt(cosh^2 r - c^2), computed to full relative precision
  // (f ~ X^2 e^{-2r}, and the integrands multiply it by sinh r).
  if (r <= spec.r2) return 2 * r_minus_arc(r, c) - r;
  double e2 = std::exp(-2 * r);
  double delta = e2 * (e2 - 2 - 4 * x2);  // (2 cosh(r) e^{-r})^2 - 4c^2 e^{-2r} - 1
  double wm1 = 0.5 * e2 + 0.5 * delta / (std::sqrt(1 + delta) + 1);
  return -std::log1p(wm1);
}

double f_kernel_prime(const KernelSpec& spec, double r, Side side) {
  if (r < 0) throw std::invalid_argument("radius must be nonnegative");
  double x = spec.x_param;
  auto g = [&](double rr) {
    double sh = std::sinh(rr);
    return sh / std::sqrt(sh * sh - x * x);
  };
  if (r < spec.r1) return 1.0;
  if (r == spec.r1)
    return side == Side::left ? 1.0
                              : -std::numeric_limits<double>::infinity();
  if (r < spec.r2) return 1 - 2 * g(r);
  if (r == spec.r2) return side == Side::left ? 1 - 2 * g(r) : 1 - g(r);
  return 1 - g(r);
}

double kernel_k(const KernelSpec& spec, double u_invariant) {
  if (u_invariant < 0)
    throw std::invalid_argument("point-pair invariant must be nonnegative");
  return f_kernel(spec, std::acosh(1 + 2 * u_invariant));
}

C complex_gamma(C z) {
  // Lanczos, g = 7, 9 terms; reflection for Re z < 1/2.
  static const double coef[9] = {0.99999999999980993,
                                 676.5203681218851,
                                 -1259.1392167224028,
                                 771.32342877765313,
                                 -176.61502916214059,
                                 12.507343278686905,
                                 -0.13857109526572012,
                                 9.9843695780195716e-6,
                                 1.5056327351493116e-7};
  if (z.real() < 0.5)
    return PI / (std::sin(PI * z) * complex_gamma(1.0 - z));
  z -= 1.0;
  C a = coef[0];
  for (int i = 1; i < 9; ++i) a += coef[i] / (z + static_cast<double>(i));
  C t = z + 7.5;
  return std::sqrt(2 * PI) * std::pow(t, z + 0.5) * std::exp(-t) * a;
}

namespace {

// 1/Gamma, finite at the poles of Gamma.
C rgamma(C z) {
  if (z.real() < 0.5) return std::sin(PI * z) * complex_gamma(1.0 - z) / PI;
  return 1.0 / complex_gamma(z);
}

// Gauss series sum_n (a)_n (b)_n / ((c)_n n!) x^n for |x| < 1.
C gauss_series(C a, double b, C c, double x, int max_terms = 100000) {
  C sum = 1.0, term = 1.0;
  for (int n = 0; n < max_terms; ++n) {
    term *= (a + static_cast<double>(n)) * (b + n) /
            ((c + static_cast<double>(n)) * (n + 1.0)) * x;
    sum += term;
    if (std::abs(term) <= 1e-17 * std::abs(sum)) break;
  }
  return sum;
}

// F(1/2, 1/2; 1; 1 - x) for small x > 0, the logarithmic limit of the
// connection formula at s = 1/2:
//   (1/pi) sum_n ((1/2)_n / n!)^2 (2 psi(n+1) - 2 psi(n+1/2) - ln x) x^n.
C log_case_series(double x) {
  double sum = 0, p = 1;             // p = ((1/2)_n / n!)^2
  double d = 4 * std::numbers::ln2;  // 2 psi(n+1) - 2 psi(n+1/2)
  double lx = std::log(x), xn = 1;
  for (int n = 0; n < 100000; ++n) {
    double term = p * (d - lx) * xn;
    sum += term;
    if (std::fabs(term) <= 1e-17 * std::fabs(sum) && n > 2) break;
    double h = n + 0.5;
    p *= (h / (n + 1.0)) * (h / (n + 1.0));
    d += 2.0 / (n + 1.0) - 2.0 / h;
    xn *= x;
  }
  return C(sum / PI);
}

// F(s, 1/2; 1; 1 - x) through the connection formula, taking x = 1 - z
// directly so tiny x keeps full precision. Requires 0 < x <= 1/2, s != 1/2.
C hyp2f1_half_comp(C s, double x) {
  C c1 = complex_gamma(0.5 - s) * rgamma(1.0 - s) / std::sqrt(PI);
  C c2 = complex_gamma(s - 0.5) * rgamma(s) / std::sqrt(PI);
  C head = c1 * gauss_series(s, 0.5, s + 0.5, x);
  C tail = c2 * std::exp((0.5 - s) * std::log(x)) *
           gauss_series(1.0 - s, 0.5, 1.5 - s, x);
  return head + tail;
}

// Same interface with the s = 1/2 logarithmic limit folded in.
C hyp2f1_half_at(C s, double x, bool* log_case) {
  if (s == C(0.5)) {
    if (log_case) *log_case = true;
    return log_case_series(x);
  }
  return hyp2f1_half_comp(s, x);
}

}  // namespace

C hyp2f1_half(C s, double z, bool* log_case) {
  if (log_case) *log_case = false;
  if (z < 0 || z >= 1)
    throw std::invalid_argument("hypergeometric argument must lie in [0, 1)");
  if (s == C(0.0)) return C(1.0);  // (0)_n vanishes for n >= 1
  if (z <= 0.5) return gauss_series(s, 0.5, 1.0, z);
  return hyp2f1_half_at(s, 1 - z, log_case);
}

namespace {

// h1(t) = 2 pi Gamma(1/2 - s) / (Gamma(1/2) Gamma(1 - s)) *
//         Int_0^inf f(r) sinh(r) e^{-rs} F(s, 1/2; s + 1/2; e^{-2r}) dr,
// s = 1/2 + it. The argument e^{-2r} keeps the series tame at large r,
// which is where the raw connection formula loses accuracy for large |t|.
C h1_value(const KernelSpec& spec, double t, double tol) {
  C s(0.5, t);
  auto integrand = [&](double r) -> C {
    double f = f_kernel(spec, r);
    if (f == 0) return C(0.0);
    return f * std::sinh(r) * std::exp(C(-r) * s) *
           gauss_series(s, 0.5, s + 0.5, std::exp(-2 * r));
  };
  double rmax = spec.r2 + 45;
  C integral =
      integrate_adaptive_pts(integrand, 0.0, rmax, {spec.r1, spec.r2}, tol);
  C coef = complex_gamma(0.5 - s) * rgamma(1.0 - s) / std::sqrt(PI);
  return 2.0 * PI * coef * integral;
}

}  // namespace

TransformValue h_transform(const KernelSpec& spec, C t) {
  if (std::fabs(t.imag()) > 0.5 + 1e-12)
    throw std::invalid_argument("t must lie in the strip |Im t| <= 1/2");
  double x = spec.x_param;
  double tol = 1e-10 * std::max(1.0, x * x);
  TransformValue out;
  out.t = t;

  if (t.imag() == 0 && std::fabs(t.real()) > 5) {
    out.h = h1_value(spec, t.real(), tol) + h1_value(spec, -t.real(), tol);
    out.est_abs_error = 4 * tol;
    return out;
  }

  C s = 0.5 + C(0, 1) * t;
  auto integrand = [&](double r) -> C {
    double f = f_kernel(spec, r);
    if (f == 0) return C(0.0);
    double x = std::exp(-2 * r);
    C big = s == C(0.0)
                ? C(1.0)
                : (x > 0.5 ? gauss_series(s, 0.5, 1.0, -std::expm1(-2 * r))
                           : hyp2f1_half_at(s, x, nullptr));
    return 2.0 * PI * f * std::sinh(r) * std::exp(C(-r) * s) * big;
  };
  double rmax = spec.r2 + 45;
  out.h = integrate_adaptive_pts(integrand, 0.0, rmax, {spec.r1, spec.r2}, tol);
  // Beyond rmax the integrand decays at least like e^{-r(1 + Re s)} e^{2r}
  // relative to sinh growth, net e^{-r} or faster; one envelope value bounds
  // the tail.
  out.est_abs_error = 4 * tol + std::abs(integrand(rmax));
  return out;
}

}  // namespace hyperlat
