#pragma once

#include <optional>
#include <string>
#include <vector>

#include "aclab/function_zoo.hpp"
#include "aclab/geometry.hpp"
#include "aclab/value.hpp"

namespace aclab {

enum class ACKind {
  AlphaAC,      // alpha-regular intervals, volume
  OneAC,        // 1-regular (cubes), volume
  ZeroAC,       // arbitrary intervals, max-side power
  StrongZeroAC, // arbitrary intervals, volume
  ACH,          // arbitrary intervals, volume, lambda-shrunk endpoints
  OneACH,       // 1-regular, volume, lambda-shrunk endpoints
  KAC,          // balls of a fixed shape, oscillation sums
};

enum class MeasureMode { Volume, MaxSidePow };

/// Which absolute-continuity condition a family is tested against.
/// The measure mode is forced by the kind: 0-AC sums the n-th power of
/// the longest side, everything else sums volumes.
struct ACClassSpec {
  ACKind kind = ACKind::OneAC;
  int n = 2;
  Rat alpha;              // AlphaAC
  Rat lambda;             // ACH / OneACH
  BallShape ball_shape = BallShape::SupNorm;  // KAC

  static ACClassSpec alpha_ac(Rat alpha, int n = 2);
  static ACClassSpec one_ac(int n = 2);
  static ACClassSpec zero_ac(int n = 2);
  static ACClassSpec strong_zero_ac(int n = 2);
  static ACClassSpec ac_h(Rat lambda, int n = 2);
  static ACClassSpec one_ac_h(Rat lambda, int n = 2);
  static ACClassSpec k_ac(BallShape shape, int n = 2);

  MeasureMode measure_mode() const {
    return kind == ACKind::ZeroAC ? MeasureMode::MaxSidePow : MeasureMode::Volume;
  }
  std::optional<Rat> regularity_threshold() const;
  bool shrunk_endpoints() const { return kind == ACKind::ACH || kind == ACKind::OneACH; }
  std::string str() const;
};

struct Sums {
  Rat s_meas;
  Value s_osc;
};

/// The two sides of the defining implication evaluated on a family:
/// S_meas per the class's measure mode, S_osc = sum |f(a_i) - f(b_i)|^n
/// (differences at the lambda-shrunk corners for the Hencl-style kinds).
/// Preconditions (pairwise disjointness in the family's own mode, the
/// class's regularity threshold) are re-checked exactly; violations throw
/// FamilyError with the offending index.  KAC accepts cube families
/// (sup-norm balls): the endpoint difference is a certified lower bound
/// for the oscillation, which is the refutation-relevant direction.
Sums violation_sums(const FunctionSpec& f, const IntervalFamily& family, const ACClassSpec& cls);

struct Verdict {
  Rat s_meas;
  Value s_osc;
  bool passes = true;  // false <=> family witnesses a violation at (delta, eps)
  std::size_t family_size = 0;
  Disjointness mode = Disjointness::Closed;
  std::string notes;
};

Verdict check_family(const FunctionSpec& f, const IntervalFamily& family, const ACClassSpec& cls,
                     const Rat& delta, const Rat& eps);

/// Sampling plan shared by the oscillation and lip estimators.
struct Sampler {
  int grid_resolution = 0;   // > 0: lattice of spacing radius/2^resolution
  int sample_count = 0;      // > 0: seeded random points
  std::uint64_t seed = 1;
};

/// Certified lower bound on osc(f, ball) = diam f(ball) from sampled
/// values; grows monotonically as samples are added, never certifies an
/// upper bound.  Pole samples are skipped and counted.
struct OscBound {
  Value lower;
  long samples_used = 0;
  long poles_skipped = 0;
};
OscBound osc_on_ball(const FunctionSpec& f, const Ball& ball, const Sampler& sampler);

/// Per-radius max difference quotients around p with a divergence
/// heuristic: flagged when the last three estimates are nondecreasing and
/// the last is at least growth_factor times the first of the schedule.
struct LipScan {
  std::vector<std::pair<double, double>> estimates;  // (radius, max ratio)
  bool diverging = false;
};
LipScan lip_at(const FunctionSpec& f, const Point& p, const std::vector<Rat>& radii,
               int samples_per_radius, std::uint64_t seed, double growth_factor = 2.0);

/// Central differences (f(p + h D) - f(p - h D)) / (2 h |D|) over a step
/// schedule; converged when the last two successive estimates agree to
/// rel_tol.  D is the (rational, not necessarily unit) direction.
struct DirDerivScan {
  std::vector<std::pair<double, double>> estimates;  // (h, quotient)
  bool converged = false;
  double value = 0.0;  // last estimate
};
DirDerivScan dir_derivative(const FunctionSpec& f, const Point& p, const Point& dir,
                            const std::vector<Rat>& steps, double rel_tol = 1e-6);

/// Grid Dirichlet energy over refinements 1..levels (cells 2^-level of the
/// rect's sides): sum over cells of |forward-difference gradient|^2 * area.
/// Cells touching a pole are excluded and counted.  Divergence suspected
/// when the last refinement grew the energy by >= growth_factor.
struct EnergyScan {
  std::vector<double> energy;           // per level, 1-based schedule
  std::vector<long> excluded_cells;     // per level
  bool divergence_suspected = false;
};
EnergyScan dirichlet_energy(const FunctionSpec& f, const Interval& rect, int levels,
                            double growth_factor = 1.2);

}  // namespace aclab
