#include "hyperlat/ballenum.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <thread>

namespace hyperlat {

namespace detail {

Int to_cpp_int(__int128 v) {
  bool neg = v < 0;
  unsigned __int128 m = neg ? -static_cast<unsigned __int128>(v)
                            : static_cast<unsigned __int128>(v);
  Int r = static_cast<std::uint64_t>(m >> 64);
  r <<= 64;
  r += static_cast<std::uint64_t>(m);
  return neg ? Int(-r) : r;
}

namespace {

long long ceil_to_ll(double x) {
  double c = std::ceil(x);
  if (!(c < 4.0e18)) throw capacity_error("ball radius too large for entry bounds");
  return static_cast<long long>(c);
}

}  // namespace

ScaledModel build_model(const BallSpec& spec) {
  ScaledModel m;
  const BasePoint& w = spec.omega;
  Int du = denominator(w.u), dk = denominator(w.ksq);
  m.den = du * dk / gcd(du, dk);
  m.un = numerator(w.u) * (m.den / du);
  m.kn = numerator(w.ksq) * (m.den / dk);
  m.q_num = numerator(spec.qsq);
  m.q_den = denominator(spec.qsq);
  m.rhs = m.q_num * m.den * m.den;
  m.ts_delta = 2 * (m.kn * m.den - m.un * m.un);

  m.any = spec.qsq >= w.delta;
  if (!m.any) return m;

  Rat r = spec.qsq - w.delta;
  m.b0_max = isqrt_floor(numerator(r) / denominator(r));

  // Float entry bounds, inflated; the exact T test trims the overshoot.
  // Valid entries satisfy |a|,|d| < Q sqrt(k) / (v sqrt(k - |u|)) and
  // |c| < Q / (v sqrt(k (k - |u|))); k > |u| since v^2 = k^2 - u^2 > 0.
  double qd = std::sqrt(to_double(spec.qsq));
  double k = w.k, v = w.v, au = std::fabs(w.uf);
  double inflate = 1.0 + 1e-9;
  m.ad_max = ceil_to_ll(qd * std::sqrt(k / (k - au)) / v * inflate) + 2;
  m.c_max = ceil_to_ll(qd / (v * std::sqrt(k * (k - au))) * inflate) + 2;

  // Candidate magnitudes before the membership test: |a|,|d| <= ad_max and
  // |b| = |ad-1|/c <= ad_max^2 + 1; bound T*den^2*q_den accordingly.
  long double A = static_cast<long double>(m.ad_max);
  long double M = A * A + 1;
  long double coeff = static_cast<long double>(m.den.convert_to<double>()) +
                      static_cast<long double>(m.kn.convert_to<double>()) +
                      2 * std::fabs(static_cast<long double>(m.un.convert_to<double>()));
  long double xs_max = 4 * coeff * M * M;
  long double ts_max = 4 * coeff * xs_max;
  long double scaled = ts_max * static_cast<long double>(m.q_den.convert_to<double>());
  m.fits_i128 = scaled * 16 < std::ldexp(1.0L, 120);
  return m;
}

}  // namespace detail

BallMode parse_ball_mode(const std::string& s) {
  if (s == "full") return BallMode::full;
  if (s == "half-inner" || s == "half_inner") return BallMode::half_inner;
  if (s == "half-outer" || s == "half_outer") return BallMode::half_outer;
  throw std::invalid_argument("ball mode must be full, half-inner or half-outer");
}

const char* ball_mode_name(BallMode m) {
  switch (m) {
    case BallMode::full: return "full";
    case BallMode::half_inner: return "half-inner";
    case BallMode::half_outer: return "half-outer";
  }
  return "?";
}

BallSpec BallSpec::make(const BasePoint& omega, const Rat& q, BallMode mode) {
  if (q <= 0) throw std::invalid_argument("ball radius Q must be positive");
  return {omega, q * q, mode};
}

BallSpec BallSpec::make_qsq(const BasePoint& omega, const Rat& qsq, BallMode mode) {
  if (qsq <= 0) throw std::invalid_argument("Q^2 must be positive");
  return {omega, qsq, mode};
}

double BallSpec::q() const { return std::sqrt(to_double(qsq)); }

BallEnumerator::BallEnumerator(const BallSpec& spec)
    : spec_(spec), model_(detail::build_model(spec)) {}

double BallEnumerator::projected_count() const {
  return 6.0 / to_double(spec_.omega.delta) * to_double(spec_.qsq);
}

std::vector<GroupElement> enumerate_ball(const BallSpec& spec, int threads,
                                         std::uint64_t max_elements) {
  BallEnumerator e(spec);
  if (e.projected_count() > 1.2 * static_cast<double>(max_elements) + 1024)
    throw capacity_error("projected ball size exceeds the element cap");
  if (threads < 1) threads = 1;

  std::vector<std::vector<GroupElement>> parts(threads);
  auto run = [&](int shard) {
    e.scan_shard(shard, threads, [&](const GroupElement& g, const OrbitCoords&) {
      parts[shard].push_back(g);
    });
  };
  if (threads == 1) {
    run(0);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (int s = 0; s < threads; ++s) pool.emplace_back(run, s);
    for (auto& t : pool) t.join();
  }

  std::vector<GroupElement> out;
  std::size_t n = 0;
  for (auto& p : parts) n += p.size();
  out.reserve(n);
  for (auto& p : parts) {
    out.insert(out.end(), std::make_move_iterator(p.begin()),
               std::make_move_iterator(p.end()));
    p.clear();
  }
  std::sort(out.begin(), out.end());
  return out;
}

BallStats count_ball(const BallSpec& spec, int threads) {
  BallEnumerator e(spec);
  if (threads < 1) threads = 1;
  auto nothing = [](const GroupElement&, const OrbitCoords&) {};
  if (threads == 1) return e.scan_shard(0, 1, nothing);
  std::vector<BallStats> parts(threads);
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (int s = 0; s < threads; ++s)
    pool.emplace_back([&, s] { parts[s] = e.scan_shard(s, threads, nothing); });
  for (auto& t : pool) t.join();
  BallStats total;
  for (const auto& p : parts) total += p;
  return total;
}

std::vector<GroupElement> enumerate_ball_bruteforce(const BallSpec& spec) {
  const BasePoint& w = spec.omega;
  if (spec.qsq < w.delta) return {};
  double qd = std::sqrt(to_double(spec.qsq));
  double k = w.k, v = w.v, au = std::fabs(w.uf);
  long long admax = detail::ceil_to_ll(qd * std::sqrt(k / (k - au)) / v) + 2;
  long long bmax =
      detail::ceil_to_ll(qd * k * std::sqrt(k) / (v * std::sqrt(k - au))) + 2;
  long long cmax = detail::ceil_to_ll(qd / (v * std::sqrt(k * (k - au)))) + 2;
  double box = (2.0 * admax + 1) * (2.0 * admax + 1) * (2.0 * cmax + 1);
  if (box > 4e9) throw capacity_error("brute-force box too large");

  std::set<GroupElement> found;
  auto consider = [&](Int a, Int b, Int c, Int d) {
    GroupElement g = normalize(a, b, c, d);
    if (coords(w, g).T <= spec.qsq) found.insert(g);
  };
  for (long long c = -cmax; c <= cmax; ++c) {
    if (c == 0) {
      // a = d = +-1; both signs normalize to the same representative.
      for (long long b = -bmax; b <= bmax; ++b) consider(1, b, 0, 1);
      continue;
    }
    for (long long d = -admax; d <= admax; ++d) {
      for (long long a = -admax; a <= admax; ++a) {
        long long num = a * d - 1;
        if (num % c != 0) continue;
        long long b = num / c;
        if (b < -bmax || b > bmax) continue;
        consider(a, b, c, d);
      }
    }
  }
  std::vector<GroupElement> out(found.begin(), found.end());
  if (spec.mode != BallMode::full) {
    std::vector<GroupElement> filtered;
    for (const auto& g : out) {
      OrbitCoords oc = coords(w, g);
      bool inner = oc.X < w.ksq * oc.Y;
      bool outer = oc.X > w.ksq * oc.Y;
      if ((spec.mode == BallMode::half_inner && inner) ||
          (spec.mode == BallMode::half_outer && outer))
        filtered.push_back(g);
    }
    out = std::move(filtered);
  }
  return out;
}

}  // namespace hyperlat
