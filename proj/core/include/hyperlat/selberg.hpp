#pragma once

#include <complex>

#include "hyperlat/paircorr.hpp"

namespace hyperlat {

// The radial kernel profile of height parameter X: continuous with
// f_kernel(0) = 0, smooth except at r1 = arcsinh(X) and r2 = 2 arcsinh(X/2),
// with the piecewise derivative f_kernel_prime. Agrees with f_xi(X, r).
struct KernelSpec {
  double x_param = 0;
  double r1 = 0, r2 = 0;

  static KernelSpec make(double x);
};

enum class Side { left, right };

// Closed form via the antiderivative arccosh(cosh r / sqrt(1 + X^2)) of
// sinh r / sqrt(sinh^2 r - X^2) — independent of the f_xi branch logarithms.
double f_kernel(const KernelSpec& spec, double r);

// Derivative branches: 1 below r1; 1 - 2 sinh r/sqrt(sinh^2 r - X^2) between;
// 1 - sinh r/sqrt(sinh^2 r - X^2) above r2. At r1/r2 the side flag selects
// the one-sided value.
double f_kernel_prime(const KernelSpec& spec, double r,
                      Side side = Side::right);

// Point-pair invariant: k_X(u) = f_X(d) with cosh d = 1 + 2u.
double kernel_k(const KernelSpec& spec, double u_invariant);

// Gauss hypergeometric F(s, 1/2; 1; z) for z in [0, 1): direct series for
// z <= 1/2, connection formula in x = 1 - z beyond; the s = 1/2 singular
// case falls back to the logarithmic limit form (log_case set when used).
std::complex<double> hyp2f1_half(std::complex<double> s, double z,
                                 bool* log_case = nullptr);

// Complex gamma (Lanczos), exposed for tests.
std::complex<double> complex_gamma(std::complex<double> z);

struct TransformValue {
  std::complex<double> t;
  std::complex<double> h;
  double est_abs_error = 0;
};

// The spectral transform
//   h(t) = 2 pi Int_0^inf f_X(r) sinh(r) e^{-rs} F(s, 1/2; 1; 1-e^{-2r}) dr,
// s = 1/2 + it, valid on the strip |Im t| <= 1/2. For real |t| > 5 the
// evaluation switches to the manifestly even decomposition h = h1(t) + h1(-t)
// with the better-behaved argument e^{-2r}.
TransformValue h_transform(const KernelSpec& spec, std::complex<double> t);

}  // namespace hyperlat
