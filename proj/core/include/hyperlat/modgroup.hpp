#pragma once

#include <compare>
#include <stdexcept>
#include <string>
#include <string_view>

#include "hyperlat/rational.hpp"

namespace hyperlat {

// Thrown when an angle (or the x-intercept Psi) is requested for an element
// that fixes the base point; the direction omega -> gamma.omega is undefined.
struct stabilizer_error : std::domain_error {
  using std::domain_error::domain_error;
};

struct invalid_element_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Observer omega = u + iv in the upper half plane, with u and |omega|^2
// rational. v^2 = |omega|^2 - u^2 is derived exactly; v, k = |omega| and the
// polar angle beta are the only float views.
struct BasePoint {
  Rat u;      // Re(omega)
  Rat ksq;    // |omega|^2
  Rat vsq;    // Im(omega)^2 = ksq - u^2, > 0
  Rat delta;  // 2 * vsq

  double uf = 0, v = 0, k = 0, beta = 0;

  static BasePoint from_rationals(const Rat& u, const Rat& ksq);
  // "i" -> (u=0, ksq=1); "rho" -> (u=1/2, ksq=1); otherwise "u=p/q,ksq=p/q".
  static BasePoint parse(std::string_view spec);

  // 2 at i, 3 at rho, 1 otherwise.
  int stabilizer_order() const;

  std::string describe() const;
};

// Normalized PSL2(Z) representative: c > 0, or c == 0 and a == d == 1.
struct GroupElement {
  Int a, b, c, d;

  friend bool operator==(const GroupElement&, const GroupElement&) = default;
  // Lexicographic by (c, d, a, b); matches the CSV emission order.
  friend std::strong_ordering operator<=>(const GroupElement& x,
                                          const GroupElement& y) {
    if (auto r = x.c.compare(y.c); r != 0)
      return r < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
    if (auto r = x.d.compare(y.d); r != 0)
      return r < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
    if (auto r = x.a.compare(y.a); r != 0)
      return r < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
    if (auto r = x.b.compare(y.b); r != 0)
      return r < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

  GroupElement inverse() const { return {d, -b, -c, a}; }
  bool is_identity() const { return c == 0 && b == 0 && a == 1 && d == 1; }
  std::string describe() const;
};

// Canonical representative of {+g, -g}; rejects determinant != 1.
GroupElement normalize(const Int& a, const Int& b, const Int& c, const Int& d);

// Normalized product.
GroupElement mul(const GroupElement& g, const GroupElement& h);

// The exact quantities attached to (omega, gamma):
//   X = |a.omega + b|^2, Y = |c.omega + d|^2, Z = Y Re(gamma.omega),
//   T = ||gamma||^2 = X + ksq Y - 2u Z.
struct OrbitCoords {
  Rat X, Y, Z, T;
  double eps_t = 0;  // (T - sqrt(T^2 - Delta^2)) / Delta = e^{-d(omega, gamma.omega)}
};

OrbitCoords coords(const BasePoint& omega, const GroupElement& g);

// Hyperbolic displacement d(omega, gamma.omega) = arccosh(T / Delta).
double displacement(const BasePoint& omega, const GroupElement& g);
Rat cosh_displacement(const BasePoint& omega, const GroupElement& g);  // T / Delta

struct AngleSample {
  GroupElement element;
  double theta = 0;       // in (-pi, pi]
  double theta_norm = 0;  // frac(theta / 2pi) in [0, 1)
  double t_norm = 0;      // T as a float
};

// Direction angle of omega -> gamma.omega; throws stabilizer_error if T == Delta.
AngleSample angle(const BasePoint& omega, const GroupElement& g);
AngleSample angle(const BasePoint& omega, const GroupElement& g,
                  const OrbitCoords& oc);

// Phi(gamma) = Re(gamma.omega) = Z/Y, exact.
Rat phi(const BasePoint& omega, const GroupElement& g);

// Psi(gamma) = x-intercept of the oriented geodesic omega -> gamma.omega
//            = (Z - u eps_T) / (Y - eps_T). Throws stabilizer_error at T == Delta.
double psi(const BasePoint& omega, const GroupElement& g);

// Xi_M(c, d): the exact value of Phi(gamma) - Phi(gamma M) for any gamma with
// bottom row (c, d). Throws invalid_element_error for degenerate (c, d).
Rat xi_m(const BasePoint& omega, const GroupElement& m, const Int& c,
         const Int& d);

}  // namespace hyperlat
