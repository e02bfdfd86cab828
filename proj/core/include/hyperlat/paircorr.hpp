#pragma once

#include <cstdint>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "hyperlat/ballenum.hpp"

namespace hyperlat {

// Covolume of PSL2(Z).
inline constexpr double V_GAMMA = std::numbers::pi / 3;

// The pair correlation summand: a continuous, piecewise-analytic function of
// (xi, ell) with breakpoints at xi = 2 sinh(ell/2) and xi = sinh(ell);
// f(xi, ell) = ell once xi >= sinh(ell), and f(xi, ell)/xi^2 -> 1/(e^{2ell}-1)
// as xi -> 0.
double f_xi(double xi, double ell);

// All non-stabilizer ball elements as angle samples, sorted by
// (theta_norm, element). Stabilizer/boundary tallies come back in *stats.
std::vector<AngleSample> angle_list(const BallSpec& spec, int threads = 1,
                                    BallStats* stats = nullptr);

// Closed-window circular pair counts: for each window w (in normalized angle
// units), the number of ordered pairs (i, j), i != j, with
// frac(theta_j - theta_i) in [0, w]. thetas must be sorted, values in [0, 1).
// Windows w >= 1 count all N(N-1) pairs. O(N * |windows| + total pairs)-free:
// two-pointer sweep, O(N) per window.
std::vector<std::uint64_t> count_pairs_closed(const std::vector<double>& thetas,
                                              const std::vector<double>& windows);

// R2(xi) = (#ordered pairs with frac difference in [0, xi/b_norm]) / b_norm.
std::vector<double> empirical_r2(const std::vector<double>& sorted_thetas,
                                 double b_norm,
                                 const std::vector<double>& xi_grid);

// Histogram estimate of g2 = dR2/dxi: bin j covers (j*delta, (j+1)*delta] in
// xi and holds its pair count / (b_norm * delta). Ties (difference exactly 0)
// belong to R2(0), not to any bin, so the bins telescope:
// R2(j*delta) = R2(0) + delta * sum(bins 0..j-1).
std::vector<double> empirical_g2(const std::vector<double>& sorted_thetas,
                                 double b_norm, double delta, double xi_max);

struct TheorySeriesTerm {
  Rat t;                      // exact T_M; cosh ell = T / Delta
  std::uint64_t multiplicity;
};

struct TheoryEval {
  double value = 0;
  double tail = 0;       // heuristic truncation estimate, reported only
  bool warn_tcut = false;  // t_cut too small to cover the xi <= sinh(ell) zone
};

// The displacement-length spectrum {(T_M, multiplicity)} for T <= t_cut,
// grouped by exact T over a full-ball enumeration; drives the closed-form
// density and its xi -> 0 limit.
class TheorySeries {
 public:
  static TheorySeries build(const BasePoint& omega, double t_cut,
                            int threads = 1);

  // Density at x: with xi = V_GAMMA * x, value = (V_GAMMA / (pi xi^2)) *
  // sum of multiplicity * f_xi(xi, ell) over the spectrum. The tail uses
  // f <= xi^2/(sinh ell cosh ell) with shell density ~ 3 e^ell.
  TheoryEval g2(double x) const;

  // Density at 0: (V_GAMMA / pi) * sum multiplicity / (e^{2 ell} - 1).
  TheoryEval g2_zero() const;

  const BasePoint& omega() const { return omega_; }
  double t_cut() const { return t_cut_; }
  const std::vector<TheorySeriesTerm>& terms() const { return terms_; }

 private:
  BasePoint omega_;
  double t_cut_ = 0;
  double ell_cut_ = 0;  // arccosh(t_cut / Delta)
  std::vector<TheorySeriesTerm> terms_;  // ascending T, T > Delta only
};

// One row per histogram bin of the empirical/theoretical comparison.
struct CorrelationGrid {
  std::vector<double> xi;        // bin centers, (j + 1/2) * delta
  std::vector<double> r2_emp;    // R2 at the bin's right edge
  std::vector<double> g2_emp;
  std::vector<double> g2_theory;
  std::vector<double> tail;      // theory truncation estimate per bin

  std::string omega_desc;
  double q = 0;
  double delta_bin = 0;
  double t_cut = 0;
  int elliptic = 1;
  double b_norm = 0;
  std::uint64_t n_samples = 0;   // after elliptic deduplication
  std::uint64_t b_total = 0;     // full ball count (stabilizers included)
  std::uint64_t b_stabilizer = 0;
};

// Full comparison pipeline. elliptic must be omega's stabilizer order (or 1
// to skip rescaling): samples sharing an orbit point (same exact (X, Y, Z))
// are collapsed to one and the normalization becomes B_tot / elliptic, which
// estimates the elliptic pair correlation g2(elliptic * xi); the theory
// column is evaluated accordingly. With theory == nullptr the g2_theory and
// tail columns are zero.
CorrelationGrid correlate(const BasePoint& omega, const Rat& qsq, int elliptic,
                          double delta_bin, double xi_min, double xi_max,
                          const TheorySeries* theory, int threads = 1);

}  // namespace hyperlat
