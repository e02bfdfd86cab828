#include <cmath>
#include <complex>
#include <numbers>

#include <doctest.h>

#include "hyperlat/paircorr.hpp"
#include "hyperlat/selberg.hpp"

using namespace hyperlat;
using C = std::complex<double>;

TEST_CASE("kernel profile agrees with the pair-correlation summand") {
  for (double x : {0.5, 2.0, 10.0}) {
    KernelSpec ks = KernelSpec::make(x);
    CHECK(f_kernel(ks, 0) == 0);
    for (double r = 0.01; r < 12; r += 0.0173)
      CHECK(f_kernel(ks, r) == doctest::Approx(f_xi(x, r)).epsilon(1e-12));
  }
  CHECK_THROWS(KernelSpec::make(0.0));
}

TEST_CASE("derivative branches match finite differences") {
  KernelSpec ks = KernelSpec::make(2.0);
  auto fd = [&](double r) {
    double h = 1e-6;
    return (f_kernel(ks, r + h) - f_kernel(ks, r - h)) / (2 * h);
  };
  for (double r : {0.3 * ks.r1, 0.8 * ks.r1}) {
    CHECK(f_kernel_prime(ks, r) == 1.0);
    CHECK(fd(r) == doctest::Approx(1.0).epsilon(1e-8));
  }
  for (double r : {0.5 * (ks.r1 + ks.r2), 0.9 * ks.r2})
    CHECK(f_kernel_prime(ks, r) == doctest::Approx(fd(r)).epsilon(1e-6));
  for (double r : {1.2 * ks.r2, 2.5 * ks.r2})
    CHECK(f_kernel_prime(ks, r) == doctest::Approx(fd(r)).epsilon(1e-6));
  // One-sided values at the breakpoints.
  CHECK(f_kernel_prime(ks, ks.r1, Side::left) == 1.0);
  CHECK(f_kernel_prime(ks, ks.r1, Side::right) ==
        -std::numeric_limits<double>::infinity());
  CHECK(f_kernel_prime(ks, ks.r2, Side::right) ==
        doctest::Approx(f_kernel_prime(ks, ks.r2 * (1 + 1e-12), Side::right))
            .epsilon(1e-9));
  // The middle branch is negative: the kernel dips (no monotonicity there).
  CHECK(f_kernel_prime(ks, 0.5 * (ks.r1 + ks.r2)) < 0);
}

TEST_CASE("point-pair invariant wraps the profile through cosh") {
  KernelSpec ks = KernelSpec::make(1.5);
  CHECK(kernel_k(ks, 0) == 0);
  for (double r : {0.3, 1.0, 4.0}) {
    double u = (std::cosh(r) - 1) / 2;
    CHECK(kernel_k(ks, u) == doctest::Approx(f_kernel(ks, r)).epsilon(1e-12));
  }
  // Monotone decreasing once past the dip band (u >= cosh(r2)).
  double u2 = (std::cosh(ks.r2) - 1) / 2;
  double prev = kernel_k(ks, u2);
  for (double u = u2 + 0.5; u < 20; u += 0.5) {
    double cur = kernel_k(ks, u);
    CHECK(cur < prev);
    prev = cur;
  }
}

TEST_CASE("gamma function goldens") {
  CHECK(complex_gamma(C(0.5)).real() ==
        doctest::Approx(std::sqrt(std::numbers::pi)).epsilon(1e-13));
  CHECK(complex_gamma(C(5.0)).real() == doctest::Approx(24.0).epsilon(1e-13));
  // Reflection: |Gamma(i t)|^2 = pi / (t sinh(pi t)).
  double t = 1.3;
  double g2 = std::norm(complex_gamma(C(0, t)));
  CHECK(g2 == doctest::Approx(std::numbers::pi /
                              (t * std::sinh(std::numbers::pi * t)))
                  .epsilon(1e-12));
}

TEST_CASE("hypergeometric series and connection formula overlap") {
  for (double ti : {0.0, 0.5, 3.0, 8.0}) {
    C s(0.5, ti);
    for (double z : {0.55, 0.7, 0.9}) {
      // Direct Gauss series converges (slowly) on (0, 1).
      C sum = 1.0, term = 1.0;
      for (int n = 0; n < 4000000; ++n) {
        term *= (s + static_cast<double>(n)) * (0.5 + n) /
                ((1.0 + static_cast<double>(n)) * (n + 1.0)) * z;
        sum += term;
        if (std::abs(term) < 1e-18 * std::abs(sum)) break;
      }
      bool log_case = false;
      C val = hyp2f1_half(s, z, &log_case);
      CHECK(log_case == (ti == 0.0 && s.real() == 0.5 && s.imag() == 0.0));
      CHECK(std::abs(val - sum) < 1e-11 * (1 + std::abs(sum)));
    }
  }
  // s = 1/2 exactly: F(1/2,1/2;1;z) = (2/pi) K(sqrt z).
  CHECK(hyp2f1_half(C(0.5), 0.0).real() == 1.0);
  CHECK_THROWS(hyp2f1_half(C(0.5), 1.0));
  CHECK_THROWS(hyp2f1_half(C(0.5), -0.1));
}

TEST_CASE("transform special value, evenness and strip") {
  for (double x : {0.5, 2.0}) {
    KernelSpec ks = KernelSpec::make(x);
    TransformValue tv = h_transform(ks, C(0, 0.5));
    double target = std::numbers::pi * x * x;
    CHECK(std::fabs(tv.h.real() - target) / target < 1e-8);
    CHECK(std::fabs(tv.h.imag()) < 1e-10);
    for (double t : {0.5, 3.0, 17.0}) {
      C hp = h_transform(ks, C(t, 0)).h;
      C hm = h_transform(ks, C(-t, 0)).h;
      CHECK(std::abs(hp - hm) < 1e-8);
      CHECK(std::fabs(hp.imag()) < 1e-9);  // real kernel, real t
    }
  }
  KernelSpec ks = KernelSpec::make(2.0);
  CHECK_THROWS(h_transform(ks, C(1.0, 0.6)));
  // The two evaluation paths agree at the |t| = 5 crossover.
  C lo = h_transform(ks, C(5.0 - 1e-9, 0)).h;
  C hi = h_transform(ks, C(5.0 + 1e-9, 0)).h;
  CHECK(std::abs(lo - hi) < 1e-6);
}
