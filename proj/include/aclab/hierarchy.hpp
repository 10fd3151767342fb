#pragma once

#include <cstdint>
#include <vector>

#include "aclab/geometry.hpp"

namespace aclab {

/// One square Q_mk: center, half side, parent index in the level above.
struct Square {
  Rat cx, cy;
  Rat half;                // d_1, side = 2 d_1
  std::int64_t parent = -1;

  bool contains(const Rat& px, const Rat& py) const {
    return abs(px - cx) <= half && abs(py - cy) <= half;
  }
};

/// Piecewise-linear radial ramp of one level: nodes i*omega/m at
/// rho = d/2^i, omega at rho = 0, zero from rho = d on, plateaus on the
/// middle thirds of the dyadic strips.  Nonincreasing and continuous.
struct RampTable {
  int m;
  Rat omega;
  Rat d;  // corner-square side of the owning square

  struct Band {
    Rat a, b;          // strip [a_i, b_i]
    Rat lo_third, hi_third;
    Rat val_a, val_b;  // node values at a and b
    Rat plateau;
  };
  std::vector<Band> bands;  // i = 1..m, outermost first

  static RampTable make(int m, const Rat& omega, const Rat& d);
  Rat eval(const Rat& rho) const;
};

struct LevelStats {
  mpz_class count;
  Rat omega;
  Rat total_measure;
  Rat max_child_side;
  Rat r_omega_sq;  // count * omega^2
};

struct BuildLimits {
  std::int64_t square_cap = 10'000'000;
  bool verify_disjoint = true;  // exact per-level sweep after construction
};

/// The recursive corner-square construction to finite depth M.
///
/// Each square spawns 4m(m+1) children distributed over the middle-third
/// strips of its two corner squares: on each strip, squares go to the two
/// boundary substrips of width d/2^{i+2} and onto the two lines of slope
/// 1/2 and 2 through the inner corner, counts alternating with the parity
/// of m.  Sides are the largest power of 1/2 of the substrip width that
/// fits the prescribed count with positive equal gaps, so the whole tree
/// stays dyadic relative to the root.
class Hierarchy {
 public:
  static Hierarchy build(int depth, const Interval& q11, const BuildLimits& limits = {});
  static Hierarchy build(int depth);  // unit square root

  static mpz_class r_formula(int m);   // 4^{m-1} (m-1)! m!
  static Rat omega_formula(int m);     // 1 / (2^m m!)

  int depth() const { return depth_; }
  const Interval& root() const { return root_; }
  const std::vector<Square>& level(int m) const { return levels_[static_cast<std::size_t>(m - 1)]; }
  const Rat& omega(int m) const { return omegas_[static_cast<std::size_t>(m - 1)]; }

  /// f_m at a point (exact rational; 0 off the supporting polygons).
  Rat eval_level(int m, const Point& p) const;
  /// Partial sum f_1 + ... + f_{max_level}.
  Rat eval_partial(const Point& p, int max_level) const;

  /// The 1/2-regular witness box [O, B_1] of square k at level m.
  Interval tmk_interval(int m, std::int64_t k) const;
  std::vector<Interval> tmk_family(int m) const;

  /// Full partial sums (to the built depth) at the two T_mk endpoints.
  struct TmkAudit {
    Rat at_center;
    Rat at_corner;
  };
  TmkAudit audit_tmk(int m, std::int64_t k) const;

  /// Whole-level endpoint audit: exact sum of |f(O) - f(B1)|^2 over the
  /// level's T_mk from full partial-sum evaluations, a flag telling
  /// whether every difference equals omega_m, and the exact sum of T_mk
  /// measures.  Work is split across threads; rational sums are exact,
  /// so the result does not depend on the split.
  struct TmkLevelAudit {
    Rat sum_sq_diff;
    bool all_diffs_equal_omega = true;
    Rat sum_measure;
  };
  TmkLevelAudit audit_tmk_level(int m, int threads = 1) const;

  LevelStats stats(int m) const;
  RampTable ramp(int m, const Rat& d) const;

 private:
  int depth_ = 0;
  Interval root_;
  std::vector<std::vector<Square>> levels_;
  std::vector<std::vector<std::int64_t>> child_begin_;  // per level, size count+1
  std::vector<Rat> omegas_;

  // normalized ramp per level: breakpoints in units of the corner-square
  // side d, absolute node values, per-segment slopes
  struct NormRamp {
    std::vector<Rat> u, v, slope;
  };
  std::vector<NormRamp> ramps_;

  Rat ramp_scaled(int m, const Rat& d, const Rat& rho) const;
  Rat eval_level_in_square(int m, const Square& sq, const Rat& px, const Rat& py) const;
  std::int64_t find_child(int level_of_parent, std::int64_t parent_idx, const Rat& px,
                          const Rat& py) const;
};

}  // namespace aclab
