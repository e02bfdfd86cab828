#include "hyperlat/paircorr.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <thread>
#include <tuple>

#include "hyperlat/quadrature.hpp"

namespace hyperlat {

double f_xi(double xi, double ell) {
  if (ell <= 0 || xi <= 0) return 0;
  double s = std::sinh(ell), ch = std::cosh(ell);
  if (xi >= s) return ell;
  double root = std::sqrt((s - xi) * (s + xi));
  if (xi <= 2 * std::sinh(0.5 * ell)) {
    // ln((ch + s)/(ch + root)) with s - root = xi^2/(s + root), kept stable
    // for xi << s.
    return std::log1p(xi * xi / ((s + root) * (ch + root)));
  }
  return std::log(ch + s) + std::log1p(xi * xi) - 2 * std::log(ch + root);
}

std::vector<AngleSample> angle_list(const BallSpec& spec, int threads,
                                    BallStats* stats) {
  BallEnumerator e(spec);
  if (threads < 1) threads = 1;
  std::vector<std::vector<AngleSample>> parts(threads);
  std::vector<BallStats> pstats(threads);
  auto run = [&](int shard) {
    pstats[shard] = e.scan_shard(
        shard, threads, [&](const GroupElement& g, const OrbitCoords& oc) {
          if (oc.T == spec.omega.delta) return;
          parts[shard].push_back(angle(spec.omega, g, oc));
        });
  };
  if (threads == 1) {
    run(0);
  } else {
    std::vector<std::thread> pool;
    for (int s = 0; s < threads; ++s) pool.emplace_back(run, s);
    for (auto& t : pool) t.join();
  }
  std::vector<AngleSample> out;
  BallStats total;
  for (int s = 0; s < threads; ++s) {
    total += pstats[s];
    out.insert(out.end(), std::make_move_iterator(parts[s].begin()),
               std::make_move_iterator(parts[s].end()));
    parts[s].clear();
  }
  std::sort(out.begin(), out.end(), [](const AngleSample& x, const AngleSample& y) {
    if (x.theta_norm != y.theta_norm) return x.theta_norm < y.theta_norm;
    return x.element < y.element;
  });
  if (stats) *stats = total;
  return out;
}

std::vector<std::uint64_t> count_pairs_closed(const std::vector<double>& thetas,
                                              const std::vector<double>& windows) {
  std::vector<std::uint64_t> out(windows.size(), 0);
  std::size_t n = thetas.size();
  if (n < 2) return out;
  for (std::size_t wi = 0; wi < windows.size(); ++wi) {
    double w = windows[wi];
    if (w < 0) continue;
    if (w >= 1) {
      out[wi] = static_cast<std::uint64_t>(n) * (n - 1);
      continue;
    }
    // Doubled-circle sweep: for sample i, count j with
    // theta_j in [theta_i, theta_i + w] (circularly), minus i itself.
    // lo trails to the first index holding theta_i so that ties behind i
    // (difference exactly 0) are included.
    std::uint64_t count = 0;
    std::size_t lo = 0, hi = 0;
    for (std::size_t i = 0; i < n; ++i) {
      while (lo < i && thetas[lo] < thetas[i]) ++lo;
      if (hi < i) hi = i;
      double limit = thetas[i] + w;
      while (hi + 1 < 2 * n) {
        double next = hi + 1 < n ? thetas[hi + 1] : thetas[hi + 1 - n] + 1;
        if (next <= limit)
          ++hi;
        else
          break;
      }
      count += hi - lo;
    }
    out[wi] = count;
  }
  return out;
}

std::vector<double> empirical_r2(const std::vector<double>& sorted_thetas,
                                 double b_norm,
                                 const std::vector<double>& xi_grid) {
  std::vector<double> windows(xi_grid.size());
  for (std::size_t i = 0; i < xi_grid.size(); ++i)
    windows[i] = xi_grid[i] / b_norm;
  auto counts = count_pairs_closed(sorted_thetas, windows);
  std::vector<double> out(counts.size());
  for (std::size_t i = 0; i < counts.size(); ++i)
    out[i] = static_cast<double>(counts[i]) / b_norm;
  return out;
}

std::vector<double> empirical_g2(const std::vector<double>& sorted_thetas,
                                 double b_norm, double delta, double xi_max) {
  std::size_t nbins =
      static_cast<std::size_t>(std::ceil(xi_max / delta - 1e-12));
  std::vector<double> windows(nbins + 1);
  for (std::size_t j = 0; j <= nbins; ++j) windows[j] = j * delta / b_norm;
  auto counts = count_pairs_closed(sorted_thetas, windows);
  std::vector<double> out(nbins);
  for (std::size_t j = 0; j < nbins; ++j)
    out[j] = static_cast<double>(counts[j + 1] - counts[j]) / (b_norm * delta);
  return out;
}

namespace {

double ell_of(double t, double delta) {
  // arccosh(T/Delta) in log form, safe for large T.
  double c = t / delta;
  if (c <= 1) return 0;
  return std::log(c + std::sqrt(c * c - 1));
}

// Truncation estimate for the spectral sum: shell density ~ 3 e^ell and
// f_xi(xi, ell) <= min(ell, xi^2/(sinh ell cosh ell)).
double tail_integral(double ell_cut, double xi) {
  auto f = [xi](double ell) {
    double bound = std::min(ell, xi * xi / (std::sinh(ell) * std::cosh(ell)));
    return 3 * std::exp(ell) * bound;
  };
  double hi = std::max(ell_cut, std::asinh(xi)) + 60;
  return integrate_adaptive(f, ell_cut, hi, 1e-12, 15);
}

}  // namespace

TheorySeries TheorySeries::build(const BasePoint& omega, double t_cut,
                                 int threads) {
  if (threads < 1) threads = 1;
  TheorySeries ts;
  ts.omega_ = omega;
  ts.t_cut_ = t_cut;
  ts.ell_cut_ = ell_of(t_cut, to_double(omega.delta));

  BallSpec spec = BallSpec::make_qsq(omega, Rat(t_cut));
  BallEnumerator e(spec);
  std::vector<std::map<Rat, std::uint64_t>> parts(threads);
  auto run = [&](int shard) {
    e.scan_shard(shard, threads,
                 [&](const GroupElement&, const OrbitCoords& oc) {
                   if (oc.T == omega.delta) return;
                   ++parts[shard][oc.T];
                 });
  };
  if (threads == 1) {
    run(0);
  } else {
    std::vector<std::thread> pool;
    for (int s = 0; s < threads; ++s) pool.emplace_back(run, s);
    for (auto& t : pool) t.join();
  }
  std::map<Rat, std::uint64_t> merged;
  for (auto& p : parts)
    for (auto& [t, m] : p) merged[t] += m;
  ts.terms_.reserve(merged.size());
  for (auto& [t, m] : merged) ts.terms_.push_back({t, m});
  return ts;
}

TheoryEval TheorySeries::g2(double x) const {
  TheoryEval ev;
  if (x <= 0) return g2_zero();
  double xi = V_GAMMA * x;
  double delta = to_double(omega_.delta);
  double sum = 0;
  for (const auto& term : terms_)
    sum += static_cast<double>(term.multiplicity) *
           f_xi(xi, ell_of(to_double(term.t), delta));
  ev.value = V_GAMMA / (std::numbers::pi * xi * xi) * sum;
  ev.warn_tcut = std::sinh(ell_cut_) <= xi;
  ev.tail =
      V_GAMMA / (std::numbers::pi * xi * xi) * tail_integral(ell_cut_, xi);
  return ev;
}

TheoryEval TheorySeries::g2_zero() const {
  TheoryEval ev;
  double delta = to_double(omega_.delta);
  double sum = 0;
  for (const auto& term : terms_) {
    double t = to_double(term.t);
    double el = (t + std::sqrt(t * t - delta * delta)) / delta;  // e^{ell}
    sum += static_cast<double>(term.multiplicity) / (el * el - 1);
  }
  ev.value = V_GAMMA / std::numbers::pi * sum;
  ev.tail = V_GAMMA / std::numbers::pi * 3 * std::exp(-ell_cut_);
  return ev;
}

namespace {

struct CompactSample {
  double theta;
  std::int64_t kx, ky, kz;  // den*X, den*Y, den*Z — exact orbit-point key
};

std::int64_t scaled_key(const Rat& coord, const Rat& den) {
  Rat s = coord * den;
  if (denominator(s) != 1) throw capacity_error("non-integral scaled coordinate");
  Int n = numerator(s);
  if (n > std::numeric_limits<std::int64_t>::max() ||
      n < std::numeric_limits<std::int64_t>::min())
    throw capacity_error("orbit key exceeds 64 bits; ball too large");
  return n.convert_to<std::int64_t>();
}

}  // namespace

CorrelationGrid correlate(const BasePoint& omega, const Rat& qsq, int elliptic,
                          double delta_bin, double xi_min, double xi_max,
                          const TheorySeries* theory, int threads) {
  if (elliptic != 1 && elliptic != omega.stabilizer_order())
    throw std::invalid_argument(
        "elliptic factor must be 1 or the stabilizer order of omega");
  if (delta_bin <= 0 || xi_max <= xi_min || xi_min < 0)
    throw std::invalid_argument("bad histogram grid");
  if (threads < 1) threads = 1;

  BallSpec spec = BallSpec::make_qsq(omega, qsq);
  BallEnumerator e(spec);
  Rat den = e.scaled_den();

  std::vector<std::vector<CompactSample>> parts(threads);
  std::vector<BallStats> pstats(threads);
  auto run = [&](int shard) {
    pstats[shard] = e.scan_shard(
        shard, threads, [&](const GroupElement& g, const OrbitCoords& oc) {
          if (oc.T == omega.delta) return;
          AngleSample s = angle(omega, g, oc);
          parts[shard].push_back({s.theta_norm, scaled_key(oc.X, den),
                                  scaled_key(oc.Y, den), scaled_key(oc.Z, den)});
        });
  };
  if (threads == 1) {
    run(0);
  } else {
    std::vector<std::thread> pool;
    for (int s = 0; s < threads; ++s) pool.emplace_back(run, s);
    for (auto& t : pool) t.join();
  }

  BallStats stats;
  std::vector<CompactSample> samples;
  for (int s = 0; s < threads; ++s) {
    stats += pstats[s];
    samples.insert(samples.end(), parts[s].begin(), parts[s].end());
    parts[s].clear();
    parts[s].shrink_to_fit();
  }

  if (elliptic > 1) {
    // Collapse samples sharing an orbit point (identical exact (X, Y, Z));
    // each surviving sample represents `elliptic` group elements.
    std::sort(samples.begin(), samples.end(),
              [](const CompactSample& a, const CompactSample& b) {
                return std::tie(a.kx, a.ky, a.kz) < std::tie(b.kx, b.ky, b.kz);
              });
    samples.erase(std::unique(samples.begin(), samples.end(),
                              [](const CompactSample& a, const CompactSample& b) {
                                return a.kx == b.kx && a.ky == b.ky &&
                                       a.kz == b.kz;
                              }),
                  samples.end());
  }
  std::sort(samples.begin(), samples.end(),
            [](const CompactSample& a, const CompactSample& b) {
              return std::tie(a.theta, a.kx, a.ky, a.kz) <
                     std::tie(b.theta, b.kx, b.ky, b.kz);
            });

  std::vector<double> thetas(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) thetas[i] = samples[i].theta;

  CorrelationGrid grid;
  grid.omega_desc = omega.describe();
  grid.q = spec.q();
  grid.delta_bin = delta_bin;
  grid.elliptic = elliptic;
  grid.b_total = stats.b_total;
  grid.b_stabilizer = stats.b_stabilizer;
  grid.n_samples = samples.size();
  grid.b_norm = static_cast<double>(stats.b_total) / elliptic;
  grid.t_cut = theory ? theory->t_cut() : 0;

  std::size_t nbins = static_cast<std::size_t>(
      std::llround((xi_max - xi_min) / delta_bin));
  if (nbins == 0) nbins = 1;
  std::vector<double> edges(nbins + 1);
  for (std::size_t j = 0; j <= nbins; ++j)
    edges[j] = xi_min + static_cast<double>(j) * delta_bin;
  std::vector<double> windows(edges.size());
  for (std::size_t j = 0; j < edges.size(); ++j)
    windows[j] = edges[j] / grid.b_norm;
  auto counts = count_pairs_closed(thetas, windows);

  grid.xi.resize(nbins);
  grid.r2_emp.resize(nbins);
  grid.g2_emp.resize(nbins);
  grid.g2_theory.assign(nbins, 0);
  grid.tail.assign(nbins, 0);
  for (std::size_t j = 0; j < nbins; ++j) {
    grid.xi[j] = 0.5 * (edges[j] + edges[j + 1]);
    grid.r2_emp[j] = static_cast<double>(counts[j + 1]) / grid.b_norm;
    grid.g2_emp[j] = static_cast<double>(counts[j + 1] - counts[j]) /
                     (grid.b_norm * delta_bin);
    if (theory) {
      TheoryEval ev = theory->g2(elliptic * grid.xi[j]);
      grid.g2_theory[j] = ev.value;
      grid.tail[j] = ev.tail;
    }
  }
  return grid;
}

}  // namespace hyperlat
