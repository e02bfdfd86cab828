#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <vector>

#include "hyperlat/modgroup.hpp"

namespace hyperlat {

struct capacity_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class BallMode { full, half_inner, half_outer };

BallMode parse_ball_mode(const std::string& s);
const char* ball_mode_name(BallMode m);

// Hyperbolic ball ||gamma|| <= Q around omega, i.e. T <= Q^2 with T exact.
// The threshold is carried as an exact rational so boundary ties are
// reproducible. half_inner keeps X < ksq*Y strictly (|gamma.omega| < k),
// half_outer keeps X > ksq*Y strictly; ties land only in the full ball.
struct BallSpec {
  BasePoint omega;
  Rat qsq;
  BallMode mode = BallMode::full;

  static BallSpec make(const BasePoint& omega, const Rat& q,
                       BallMode mode = BallMode::full);
  static BallSpec make_qsq(const BasePoint& omega, const Rat& qsq,
                           BallMode mode = BallMode::full);
  double q() const;
};

struct BallStats {
  std::uint64_t b_total = 0;
  std::uint64_t b_inner = 0;
  std::uint64_t b_outer = 0;
  std::uint64_t b_boundary = 0;
  std::uint64_t b_stabilizer = 0;

  BallStats& operator+=(const BallStats& o) {
    b_total += o.b_total;
    b_inner += o.b_inner;
    b_outer += o.b_outer;
    b_boundary += o.b_boundary;
    b_stabilizer += o.b_stabilizer;
    return *this;
  }
};

namespace detail {

// Integer model of the membership test. With u = un/den, ksq = kn/den and
// scaled coordinates Xs = den*X, Ys = den*Y, Zs = den*Z, Ts = den^2*T, all
// quantities are integers and
//   T <= qsq  <=>  Ts * q_den <= q_num * den^2.
struct ScaledModel {
  Int un, kn, den;     // den > 0
  Int q_num, q_den;    // qsq = q_num / q_den, q_den > 0
  Int rhs;             // q_num * den^2 * ... compared against Ts * q_den
  Int ts_delta;        // den^2 * Delta (stabilizer test)
  long long c_max = 0, ad_max = 0;
  Int b0_max;          // c == 0 stratum: b^2 <= qsq - Delta
  bool any = false;    // Delta <= qsq
  bool fits_i128 = false;
};

ScaledModel build_model(const BallSpec& spec);

template <class I>
struct ElementView {
  I a, b, c, d;
  I xs, ys, zs, ts;  // den*X, den*Y, den*Z, den^2*T
};

}  // namespace detail

// Streams every normalized element of the ball exactly once, stratified by
// the bottom-left entry c. Shard r of n covers c == 0 (shard 0 only) and all
// c > 0 with c % n == r. Visitation order within a shard is deterministic;
// global order across shards is recovered by sorting, so results are
// bit-identical for any shard count.
class BallEnumerator {
 public:
  explicit BallEnumerator(const BallSpec& spec);

  const BallSpec& spec() const { return spec_; }

  // Expected element count (6/Delta) * Q^2, for capacity checks.
  double projected_count() const;

  // visit(const GroupElement&, const OrbitCoords&) is called for each
  // element of the shard passing the mode filter; returns shard stats over
  // all elements of the shard (before mode filtering).
  template <class F>
  BallStats scan_shard(int shard, int nshards, F&& visit) const;

  Rat scaled_den() const { return Rat(model_.den); }

 private:
  template <class I, class F>
  BallStats scan_shard_impl(int shard, int nshards, F&& visit) const;

  BallSpec spec_;
  detail::ScaledModel model_;
};

// Materialized, sorted (by (c,d,a,b)) list of ball elements. Throws
// capacity_error if the projected count exceeds max_elements.
std::vector<GroupElement> enumerate_ball(const BallSpec& spec, int threads = 1,
                                         std::uint64_t max_elements = 100000000);

BallStats count_ball(const BallSpec& spec, int threads = 1);

// Reference implementation: scan of all integer quadruples within the entry
// box |a|,|d| <= ad bound, |b| <= b bound, |c| <= c bound implied by
// ||gamma|| <= Q, normalize, deduplicate, and filter by the exact T test.
// Only usable at small Q; exists as an oracle for the stratified enumerator.
std::vector<GroupElement> enumerate_ball_bruteforce(const BallSpec& spec);

}  // namespace hyperlat

#include "hyperlat/ballenum_impl.hpp"
