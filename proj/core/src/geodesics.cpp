#include "hyperlat/geodesics.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace hyperlat {

namespace {

Int abs_int(const Int& v) { return v < 0 ? Int(-v) : v; }

}  // namespace

bool is_axis_through_rho(const GroupElement& g) {
  if (abs_int(g.a + g.d) <= 2)
    throw std::invalid_argument("axis test requires a hyperbolic element");
  return g.d - g.a == 2 * (g.b - g.c);
}

PellSolution pell_min(const Int& delta) {
  if (delta <= 0) throw std::invalid_argument("delta must be positive");
  Int a0 = isqrt_floor(delta);
  if (a0 * a0 == delta)
    throw std::invalid_argument("delta must not be a perfect square");
  // Continued fraction of sqrt(delta); the fundamental solution of
  // x^2 - delta y^2 = 1 appears among the convergents.
  Int m = 0, d = 1, a = a0;
  Int h_prev = 1, h = a0, k_prev = 0, k = 1;
  for (int iter = 0; iter < 100000; ++iter) {
    if (h * h - delta * k * k == 1) return {2 * h, k};
    m = d * a - m;
    d = (delta - m * m) / d;
    a = (a0 + m) / d;
    Int h_next = a * h + h_prev, k_next = a * k + k_prev;
    h_prev = h;
    h = h_next;
    k_prev = k;
    k = k_next;
  }
  throw std::runtime_error("Pell continued fraction did not terminate");
}

std::optional<NineSolution> nine_solution(const Int& delta, int max_periods) {
  Int bound = 3 * pell_min(delta).k_small * max_periods;
  if (4 * delta <= 81) {
    // sqrt(4 delta) <= 9: the convergent criterion below does not apply,
    // but the fundamental unit is tiny here, so a direct scan is cheap.
    for (Int u = 1; u <= bound; ++u) {
      if (u % 3 == 0) continue;
      Int t2 = 9 + 4 * u * u * delta;
      Int t;
      if (is_perfect_square(t2, &t)) return NineSolution{t, u};
    }
    return std::nullopt;
  }
  // t^2 - (4 delta) u^2 = 9 with 0 < 9 < sqrt(4 delta): every positive
  // solution has t/u among the continued-fraction convergents of
  // sqrt(4 delta). Convergent denominators increase strictly, so the first
  // hit with 3 not dividing u is the minimal solution. Walk until the
  // denominator passes the same bound the direct scan would have used.
  Int d4 = 4 * delta;
  Int a0 = isqrt_floor(d4);
  Int m = 0, dd = 1, a = a0;
  Int h_prev = 1, h = a0, k_prev = 0, k = 1;
  while (k <= bound) {
    if (k % 3 != 0 && h * h - d4 * k * k == 9) return NineSolution{h, k};
    m = dd * a - m;
    dd = (d4 - m * m) / dd;
    a = (a0 + m) / dd;
    Int h_next = a * h + h_prev, k_next = a * k + k_prev;
    h_prev = h;
    h = h_next;
    k_prev = k;
    k = k_next;
  }
  return std::nullopt;
}

std::vector<std::pair<Int, Int>> discriminant_pairs(const Int& delta) {
  std::vector<std::pair<Int, Int>> out;
  if (delta <= 0) return out;
  Int r0;
  if (is_perfect_square(delta, &r0)) return out;
  for (Int b0 = 1; 3 * b0 * b0 <= 4 * delta; ++b0) {
    Int disc = 4 * delta - 3 * b0 * b0;
    Int r;
    if (!is_perfect_square(disc, &r)) continue;
    for (int sgn : {-1, 1}) {
      Int num = b0 + sgn * r;
      if (num <= 0 || num % 2 != 0) continue;
      Int c0 = num / 2;
      if (gcd(b0, c0) != 1) continue;
      if (b0 * b0 + c0 * c0 - b0 * c0 != delta) continue;
      out.emplace_back(b0, c0);
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool in_d_rho(const Int& delta) {
  if (delta <= 0) return false;
  Int r;
  if (is_perfect_square(delta, &r)) return false;
  return !discriminant_pairs(delta).empty();
}

int nu_of(const Int& delta) {
  Int n = delta;
  int nu = 0;
  for (Int p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    if (p % 3 == 1) ++nu;
    while (n % p == 0) n /= p;
  }
  if (n > 1 && n % 3 == 1) ++nu;
  return nu;
}

DiscriminantRecord classify(const Int& delta) {
  DiscriminantRecord rec;
  rec.delta = delta;
  rec.pairs = discriminant_pairs(delta);
  if (rec.pairs.empty())
    throw std::invalid_argument("delta is not a geodesic discriminant");
  rec.pell = pell_min(delta);
  rec.nine = nine_solution(delta);
  rec.eps1 = rec.pell.k_small % 2 != 0 ? 1 : 0;
  rec.eps2 = rec.nine ? 0 : 1;
  rec.fibers = rec.eps1 && rec.eps2 ? 1 : (!rec.eps1 && !rec.eps2 ? 4 : 2);
  rec.num_classes = static_cast<int>(rec.pairs.size()) / rec.fibers;
  return rec;
}

GeodesicRep phi_param(const Int& delta, const Int& b0, const Int& c0) {
  if (b0 <= 0 || c0 <= 0 || gcd(b0, c0) != 1 ||
      b0 * b0 + c0 * c0 - b0 * c0 != delta)
    throw std::invalid_argument("(b0, c0) is not a pair for this delta");
  PellSolution p = pell_min(delta);
  Int half_t = p.t_big / 2, k = p.k_small;
  GeodesicRep rep;
  rep.matrix = normalize(half_t - k * (b0 - c0), k * b0, k * c0,
                         half_t + k * (b0 - c0));
  rep.delta = delta;
  rep.source_pair = {b0, c0};
  if (rep.matrix.a <= 0 || rep.matrix.d <= 0 || !is_axis_through_rho(rep.matrix))
    throw std::logic_error("parametrized matrix failed its invariants");
  return rep;
}

namespace {

// cosh of the distance between (z1/y1, v/y1) and (z2/y2, v/y2) with
// v^2 = 3/4, exact: 1 + (|dz|^2 + v^2 (1/y1 - 1/y2)^2) / (2 v^2/(y1 y2)).
Rat cosh_between(const Rat& z1, const Rat& y1, const Rat& z2, const Rat& y2) {
  Rat vsq(3, 4);
  Rat dx = z1 / y1 - z2 / y2;
  Rat dy2 = vsq * (1 / y1 - 1 / y2) * (1 / y1 - 1 / y2);
  return 1 + (dx * dx + dy2) / (2 * vsq / (y1 * y2));
}

}  // namespace

std::vector<SegmentPoint> segment_lattice_points(const Int& delta,
                                                 const Int& b0, const Int& c0) {
  GeodesicRep rep = phi_param(delta, b0, c0);
  PellSolution p = pell_min(delta);
  Int half_t = p.t_big / 2, k = p.k_small;
  Rat cosh_max = Rat(p.t_big * p.t_big, 2) - 1;  // cosh d(rho, g rho)

  BasePoint rho = BasePoint::parse("rho");
  OrbitCoords gc = coords(rho, rep.matrix);

  // Candidate (t, |u|) solutions of t^2 - 4 u^2 delta = 9 (3 | u gives the
  // midpoint family) or the midpoint itself, with t/3 within range.
  std::set<std::pair<Int, Int>> cands;
  bool midpoint_exists = k % 2 == 0;
  if (midpoint_exists) cands.insert({3 * half_t, 3 * (k / 2)});
  if (auto nine = nine_solution(delta)) {
    // Walk the unit orbit alpha * eps^n, eps = half_t + k sqrt(delta),
    // alpha = t + w sqrt(delta) with w = 2u.
    for (int conj : {1, -1}) {
      Int t = nine->t, w = 2 * conj * nine->u;
      for (int dir : {1, -1}) {
        Int tt = t, ww = w;
        for (int n = 0; n < 80; ++n) {
          if (abs_int(ww) % 2 == 0 && ww != 0)
            cands.insert({abs_int(tt), abs_int(ww) / 2});
          Int t2 = tt * half_t + ww * (dir * k) * delta;
          Int w2 = tt * (dir * k) + ww * half_t;
          tt = t2;
          ww = w2;
          if (Rat(abs_int(tt), 3) > 4 * cosh_max) break;
        }
      }
    }
  }

  std::vector<SegmentPoint> points;
  std::set<std::tuple<Rat, Rat, Rat>> seen;
  for (const auto& [t, u_abs] : cands) {
    if (t <= 0) continue;
    bool mid = midpoint_exists && t == 3 * half_t && u_abs == 3 * (k / 2);
    for (int sgn : {1, -1}) {
      Int u = sgn * u_abs;
      if (mid && sgn < 0) continue;  // midpoint uses the positive branch
      Int xn = t + u * (2 * c0 - b0);
      Int yn = t + u * (2 * b0 - c0);
      Int zn2 = t + 2 * u * (b0 + c0);  // 3 * (2Z)
      if (xn % 3 != 0 || yn % 3 != 0 || zn2 % 3 != 0) continue;
      Rat x(xn / 3), y(yn / 3), z = Rat(zn2 / 3, 2);
      if (x <= 0 || y <= 0) continue;
      if (x * y - z * z != Rat(3, 4)) continue;
      // On the axis of g: 2Z = X + u' B0 = Y + u' C0 for a common u'.
      if ((2 * z - x) * c0 != (2 * z - y) * b0) continue;
      Rat cd = cosh_between(z, y, Rat(1, 2), Rat(1));
      if (cd != Rat(t, 3)) continue;
      if (!(cd < cosh_max)) continue;
      Rat cd_end = cosh_between(z, y, gc.Z, gc.Y);
      if (!(cd_end < cosh_max)) continue;
      auto key = std::make_tuple(x, y, z);
      if (!seen.insert(key).second) continue;
      points.push_back({x, y, z, cd, mid});
    }
  }
  std::sort(points.begin(), points.end(),
            [](const SegmentPoint& a, const SegmentPoint& b) {
              return a.cosh_d < b.cosh_d;
            });
  return points;
}

SegmentPoint midpoint_coords(const GroupElement& g) {
  if (g.a <= 0 || g.b <= 0 || g.c <= 0 || g.d <= 0)
    throw std::invalid_argument("midpoint requires positive entries");
  if (!is_axis_through_rho(g))
    throw std::invalid_argument("axis does not pass through rho");
  SegmentPoint pt;
  pt.x = g.a + Rat(g.b, 2);
  pt.y = g.d + Rat(g.c, 2);
  pt.z = Rat(g.a, 2) + g.b;
  if (pt.z != Rat(g.d, 2) + g.c)
    throw std::invalid_argument("inconsistent midpoint coordinates");
  if (pt.x * pt.y - pt.z * pt.z != Rat(3, 4))
    throw std::logic_error("midpoint determinant identity failed");
  pt.cosh_d = pt.x + pt.y - pt.z;  // T at rho
  pt.is_midpoint = true;
  return pt;
}

std::vector<GroupElement> elements_with_coords(const BasePoint& omega,
                                               const Rat& x, const Rat& y,
                                               const Rat& z) {
  Rat t = x + omega.ksq * y - 2 * omega.u * z;
  std::vector<GroupElement> out;
  for (const auto& g : enumerate_ball(BallSpec::make_qsq(omega, t))) {
    OrbitCoords oc = coords(omega, g);
    if (oc.X == x && oc.Y == y && oc.Z == z) out.push_back(g);
  }
  return out;
}

}  // namespace hyperlat
