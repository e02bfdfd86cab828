#include "hyperlat/modgroup.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace hyperlat {

namespace {
constexpr double kTwoPi = 2 * std::numbers::pi;
}

BasePoint BasePoint::from_rationals(const Rat& u, const Rat& ksq) {
  BasePoint p;
  p.u = u;
  p.ksq = ksq;
  p.vsq = ksq - u * u;
  if (p.vsq <= 0)
    throw std::invalid_argument("base point not in the upper half plane (ksq <= u^2)");
  if (ksq <= 0) throw std::invalid_argument("ksq must be positive");
  p.delta = 2 * p.vsq;
  p.uf = to_double(u);
  p.v = std::sqrt(to_double(p.vsq));
  p.k = std::sqrt(to_double(ksq));
  p.beta = std::atan2(p.v, p.uf);
  return p;
}

BasePoint BasePoint::parse(std::string_view spec) {
  if (spec == "i") return from_rationals(Rat(0), Rat(1));
  if (spec == "rho") return from_rationals(Rat(1, 2), Rat(1));
  // "u=p/q,ksq=p/q"
  std::string s(spec);
  auto comma = s.find(',');
  if (comma == std::string::npos || s.rfind("u=", 0) != 0 ||
      s.find("ksq=", comma + 1) != comma + 1)
    throw std::invalid_argument("base point spec must be 'i', 'rho' or 'u=p/q,ksq=p/q'");
  Rat u = parse_rational(s.substr(2, comma - 2));
  Rat ksq = parse_rational(s.substr(comma + 5));
  return from_rationals(u, ksq);
}

int BasePoint::stabilizer_order() const {
  if (u == 0 && ksq == 1) return 2;                 // omega = i
  if (u == Rat(1, 2) && ksq == 1) return 3;         // omega = rho
  return 1;
}

std::string BasePoint::describe() const {
  return "u=" + to_string(u) + ",ksq=" + to_string(ksq);
}

std::string GroupElement::describe() const {
  std::ostringstream os;
  os << "(" << a << "," << b << "," << c << "," << d << ")";
  return os.str();
}

GroupElement normalize(const Int& a, const Int& b, const Int& c, const Int& d) {
  Int det = a * d - b * c;
  if (det != 1) {
    if (det == -1)
      throw invalid_element_error("determinant -1 element is not in PSL2(Z)");
    throw invalid_element_error("determinant must be 1");
  }
  if (c > 0 || (c == 0 && a > 0)) return {a, b, c, d};
  return {-a, -b, -c, -d};
}

GroupElement mul(const GroupElement& g, const GroupElement& h) {
  return normalize(g.a * h.a + g.b * h.c, g.a * h.b + g.b * h.d,
                   g.c * h.a + g.d * h.c, g.c * h.b + g.d * h.d);
}

OrbitCoords coords(const BasePoint& w, const GroupElement& g) {
  OrbitCoords oc;
  oc.X = g.a * g.a * w.ksq + Rat(g.b * g.b) + 2 * g.a * g.b * w.u;
  oc.Y = g.c * g.c * w.ksq + Rat(g.d * g.d) + 2 * g.c * g.d * w.u;
  oc.Z = g.a * g.c * w.ksq + Rat(g.b * g.d) + (g.a * g.d + g.b * g.c) * w.u;
  oc.T = oc.X + w.ksq * oc.Y - 2 * w.u * oc.Z;
  double t = to_double(oc.T), delta = to_double(w.delta);
  double disc = t * t - delta * delta;
  oc.eps_t = disc <= 0 ? 1.0 : (t - std::sqrt(disc)) / delta;
  return oc;
}

Rat cosh_displacement(const BasePoint& w, const GroupElement& g) {
  return coords(w, g).T / w.delta;
}

double displacement(const BasePoint& w, const GroupElement& g) {
  double c = to_double(cosh_displacement(w, g));
  return c <= 1 ? 0.0 : std::acosh(c);
}

AngleSample angle(const BasePoint& w, const GroupElement& g,
                  const OrbitCoords& oc) {
  if (oc.T == w.delta)
    throw stabilizer_error("angle undefined: element fixes the base point");
  // sin = 2v(Z - uY)/sqrt(T^2 - Delta^2), cos = (Delta Y - T)/sqrt(T^2 - Delta^2)
  double sin_num = 2 * w.v * to_double(oc.Z - w.u * oc.Y);
  double cos_num = to_double(w.delta * oc.Y - oc.T);
  AngleSample s;
  s.element = g;
  s.theta = std::atan2(sin_num, cos_num);
  if (s.theta <= -std::numbers::pi) s.theta = std::numbers::pi;
  double f = s.theta / kTwoPi;
  f -= std::floor(f);
  if (f >= 1.0) f = 0.0;
  s.theta_norm = f;
  s.t_norm = to_double(oc.T);
  return s;
}

AngleSample angle(const BasePoint& w, const GroupElement& g) {
  return angle(w, g, coords(w, g));
}

Rat phi(const BasePoint& w, const GroupElement& g) {
  OrbitCoords oc = coords(w, g);
  return oc.Z / oc.Y;
}

double psi(const BasePoint& w, const GroupElement& g) {
  OrbitCoords oc = coords(w, g);
  if (oc.T == w.delta)
    throw stabilizer_error("psi undefined: element fixes the base point");
  return (to_double(oc.Z) - to_double(w.u) * oc.eps_t) /
         (to_double(oc.Y) - oc.eps_t);
}

Rat xi_m(const BasePoint& w, const GroupElement& m, const Int& c, const Int& d) {
  if (c == 0 && d == 0)
    throw invalid_element_error("Xi_M undefined for (c,d) = (0,0)");
  OrbitCoords mc = coords(w, m);
  Rat num = c * d * (w.ksq * mc.Y - mc.X) + c * c * (w.ksq * mc.Z - w.u * mc.X) +
            d * d * (w.u * mc.Y - mc.Z);
  Rat den1 = c * c * w.ksq + Rat(d * d) + 2 * c * d * w.u;
  Rat den2 = c * c * mc.X + d * d * mc.Y + 2 * c * d * mc.Z;
  if (den1 == 0 || den2 == 0)
    throw invalid_element_error("Xi_M: degenerate (c,d) for this base point");
  return num / (den1 * den2);
}

}  // namespace hyperlat
