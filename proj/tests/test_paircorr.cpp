#include <algorithm>
#include <cmath>

#include <doctest.h>

#include "hyperlat/paircorr.hpp"
#include "test_util.hpp"

using namespace hyperlat;

namespace {

// O(N^2) reference for the closed circular window count.
std::uint64_t brute_pairs(const std::vector<double>& thetas, double w) {
  std::uint64_t count = 0;
  std::size_t n = thetas.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      double d = thetas[j] - thetas[i];
      d -= std::floor(d);
      if (d <= w) ++count;
    }
  return count;
}

std::vector<double> random_thetas(testutil::Rng& rng, std::size_t n,
                                  bool with_ties) {
  std::vector<double> t(n);
  for (auto& v : t) v = rng.u01();
  if (with_ties)
    for (std::size_t i = 0; i + 1 < n; i += 3) t[i + 1] = t[i];
  std::sort(t.begin(), t.end());
  return t;
}

}  // namespace

TEST_CASE("pair counting matches the quadratic reference") {
  testutil::Rng rng(101);
  for (int rep = 0; rep < 8; ++rep) {
    auto thetas = random_thetas(rng, 40 + rng.below(160), rep % 2 == 0);
    std::vector<double> windows = {0.0, 1e-6, 0.01, 0.1, 0.37, 0.9, 1.0, 2.0};
    auto counts = count_pairs_closed(thetas, windows);
    for (std::size_t i = 0; i < windows.size(); ++i)
      CHECK(counts[i] == brute_pairs(thetas, windows[i]));
  }
}

TEST_CASE("window zero counts exactly the ties") {
  std::vector<double> t = {0.1, 0.1, 0.1, 0.5, 0.7, 0.7};
  auto counts = count_pairs_closed(t, {0.0});
  CHECK(counts[0] == 3 * 2 + 2 * 1);  // ordered tie pairs
}

TEST_CASE("histogram bins telescope into the cumulative count") {
  testutil::Rng rng(202);
  auto thetas = random_thetas(rng, 300, true);
  double b_norm = 97.0, delta = 0.25, xi_max = 3.0;
  auto g2 = empirical_g2(thetas, b_norm, delta, xi_max);
  std::vector<double> grid;
  for (std::size_t j = 0; j * delta < xi_max + 1e-9; ++j)
    grid.push_back(j * delta);
  auto r2 = empirical_r2(thetas, b_norm, grid);
  for (std::size_t j = 0; j < g2.size(); ++j) {
    double lhs = r2[j + 1] - r2[0];
    double rhs = 0;
    for (std::size_t k = 0; k <= j; ++k) rhs += g2[k] * delta;
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
  }
}

TEST_CASE("summand profile: continuity, plateau and small-window limit") {
  for (double ell : {0.5, 1.0, 3.0}) {
    double b1 = 2 * std::sinh(ell / 2), b2 = std::sinh(ell);
    double s = b2, ch = std::cosh(ell);
    // One-sided limits at the exact breakpoints: the middle piece is
    // log(ch+s) + log1p(xi^2) - 2 log(ch + sqrt(s^2-xi^2)); evaluate it at
    // each breakpoint and compare with the value the adjacent piece returns.
    // (A sampled two-sided check cannot reach 1e-12 at xi = sinh(ell): the
    // middle piece has a square-root cusp there.)
    double mid_at_b1 = std::log(ch + s) + std::log1p(b1 * b1) -
                       2 * std::log(ch + std::sqrt((s - b1) * (s + b1)));
    double mid_at_b2 = std::log(ch + s) + std::log1p(s * s) - 2 * std::log(ch);
    CHECK(std::fabs(f_xi(b1, ell) - mid_at_b1) < 1e-12);
    CHECK(std::fabs(f_xi(b2, ell) - mid_at_b2) < 1e-12);
    // And the sampled values still approach the breakpoint values.
    CHECK(f_xi(b1 * (1 - 1e-13), ell) ==
          doctest::Approx(f_xi(b1, ell)).epsilon(1e-10));
    CHECK(std::fabs(f_xi(b2 * (1 - 1e-10), ell) - ell) < 4 * s * 1e-5);
    CHECK(f_xi(b2 + 0.5, ell) == ell);
    CHECK(f_xi(2 * b2, ell) == ell);
    double xi = 1e-4;
    double expect = 1.0 / (std::exp(2 * ell) - 1);
    CHECK(f_xi(xi, ell) / (xi * xi) ==
          doctest::Approx(expect).epsilon(1e-6));
    // monotone nondecreasing in xi
    CHECK(f_xi(0.5, ell) <= f_xi(0.7, ell));
    CHECK(f_xi(0.7, ell) <= f_xi(b2, ell));
  }
}

TEST_CASE("angles equidistribute: full circle and per-half-ball arcs") {
  BasePoint i = BasePoint::parse("i");
  // Directions of the inner half ball fill the arc theta in (-pi/2, pi/2)
  // (the half plane |z| < 1 seen from i); the outer half fills the
  // complementary arc. Each is equidistributed on its own arc, and the
  // full ball on the whole circle.
  auto ks_of = [](std::vector<double> u) {
    std::sort(u.begin(), u.end());
    double ks = 0;
    std::size_t n = u.size();
    for (std::size_t j = 0; j < n; ++j)
      ks = std::max({ks, std::fabs((j + 1.0) / n - u[j]),
                     std::fabs(u[j] - static_cast<double>(j) / n)});
    return ks;
  };
  for (BallMode mode :
       {BallMode::full, BallMode::half_inner, BallMode::half_outer}) {
    auto samples = angle_list(BallSpec::make(i, 500, mode), 4);
    REQUIRE(samples.size() > 100000);
    std::vector<double> u;
    u.reserve(samples.size());
    for (const auto& s : samples) {
      double t = s.theta_norm;
      if (mode == BallMode::half_inner) {
        // arc [0, 1/4) u (3/4, 1) -> [0, 1]
        t = 2 * (t < 0.5 ? t + 0.25 : t - 0.75);
        CHECK((s.theta_norm < 0.25 || s.theta_norm > 0.75));
      } else if (mode == BallMode::half_outer) {
        // arc (1/4, 3/4) -> [0, 1]
        CHECK(t > 0.25);
        CHECK(t < 0.75);
        t = 2 * (t - 0.25);
      }
      u.push_back(t);
    }
    CHECK(ks_of(std::move(u)) <= 0.02);
  }
}

TEST_CASE("spectrum series evaluates the density and its limit") {
  BasePoint i = BasePoint::parse("i");
  TheorySeries ts = TheorySeries::build(i, 2000.0, 2);
  REQUIRE(!ts.terms().empty());
  // Terms exclude the stabilizer displacement and are sorted by T.
  CHECK(ts.terms().front().t > i.delta);
  for (std::size_t j = 0; j + 1 < ts.terms().size(); ++j)
    CHECK(ts.terms()[j].t < ts.terms()[j + 1].t);
  // Multiplicities total the ball minus fixers.
  std::uint64_t total = 0;
  for (const auto& t : ts.terms()) total += t.multiplicity;
  auto st = count_ball(BallSpec::make_qsq(i, 2000));
  CHECK(total == st.b_total - st.b_stabilizer);
  // Small-x evaluation approaches the x = 0 closed form.
  double z = ts.g2_zero().value;
  CHECK(ts.g2(1e-6).value == doctest::Approx(z).epsilon(1e-6));
  // Determinism across worker counts.
  TheorySeries ts8 = TheorySeries::build(i, 2000.0, 8);
  REQUIRE(ts8.terms().size() == ts.terms().size());
  for (std::size_t j = 0; j < ts.terms().size(); ++j) {
    CHECK(ts8.terms()[j].t == ts.terms()[j].t);
    CHECK(ts8.terms()[j].multiplicity == ts.terms()[j].multiplicity);
  }
}

TEST_CASE("comparison grid wiring") {
  BasePoint i = BasePoint::parse("i");
  TheorySeries ts = TheorySeries::build(i, 1000.0, 2);
  CorrelationGrid grid = correlate(i, Rat(100 * 100), 2, 0.5, 0.0, 2.0, &ts, 2);
  REQUIRE(grid.xi.size() == 4);
  CHECK(grid.xi[0] == doctest::Approx(0.25));
  CHECK(grid.b_norm == doctest::Approx(grid.b_total / 2.0));
  CHECK(grid.n_samples < grid.b_total);  // elliptic deduplication happened
  for (std::size_t j = 0; j < grid.xi.size(); ++j) {
    CHECK(grid.g2_theory[j] == ts.g2(2 * grid.xi[j]).value);
    CHECK(grid.g2_emp[j] >= 0);
  }
  CHECK_THROWS(correlate(i, Rat(100), 3, 0.5, 0.0, 2.0, nullptr, 1));
}
