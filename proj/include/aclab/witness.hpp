#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "aclab/checkers.hpp"
#include "aclab/function_zoo.hpp"
#include "aclab/hierarchy.hpp"

namespace aclab {

/// A candidate refutation of an AC class at parameters (delta, epsilon):
/// a family with S_meas < delta and S_osc >= epsilon, or the record of a
/// failed attempt.  Every "violates" verdict has been re-verified exactly
/// (disjointness, regularity, exact S_meas; S_osc up to the evaluation
/// error bounds carried by the profiles).
struct WitnessReport {
  ACClassSpec cls;
  Rat delta;
  Rat epsilon;
  IntervalFamily family;
  Rat s_meas;
  Value s_osc;
  enum class Outcome { Violates, Inconclusive };
  Outcome verdict = Outcome::Inconclusive;
  std::string method;
  std::uint64_t seed = 0;
  std::string notes;

  bool violates() const { return verdict == Outcome::Violates; }
};

/// Thin-interval refuter for strong 0-AC: a and b must differ in exactly
/// one coordinate and have distinct values; the interval from a to the
/// shifted copy of b has measure t^{n-1} |a_j - b_j| while the value
/// difference stays above half of |f(a) - f(b)| (t is halved until the
/// evaluated difference supports that).
WitnessReport refute_strong0ac(const FunctionSpec& f, const Point& a, const Point& b,
                               const Rat& delta);

/// 0-AC refuter from a steep pair: requires |f(x) - f(y)|_1 >= m |x - y|_1,
/// scans the coordinate chain for the pigeonhole index, and emits the
/// stack of shifted pairs with S_osc >= 1/3^{n+1} in max-side measure.
/// The shift eta is found by halving against evaluated oscillation probes.
WitnessReport refute_0ac(const FunctionSpec& f, const Point& x, const Point& y,
                         const Rat& ratio, const Rat& delta);

/// Diagonal-square stack against 1-AC for products with non-Lipschitz g:
/// k unit-regular squares with common s-coordinates spaced 2*tau apart,
/// endpoint pairs (s_i, 0) -> (s_i, tau).  Default tau = d/k.
WitnessReport refute_product_1ac(const FunctionSpec& f, const Rat& delta, long k,
                                 std::optional<Rat> tau = std::nullopt,
                                 const Rat& epsilon = Rat(1));

/// The hierarchy's T_mk family over levels m0..M against (1/2)-AC.
/// S_osc comes from full partial-sum evaluations at the T_mk endpoints
/// and is cross-checked against the per-level identity r_m omega_m^2 =
/// 1/(4m); S_meas is exact and compared against the geometric tail bound.
WitnessReport refute_half_ac(const Hierarchy& h, int m0, int M, int threads = 1);

struct GreedyBudget {
  int candidates = 4096;  // random candidates on top of the dyadic sweep
  int iters = 2000;
  std::uint64_t seed = 1;
};

/// Randomized greedy packing: score candidate intervals by |df|^n /
/// measure, pack disjointly under S_meas < delta, then local swap/jiggle
/// moves.  Deterministic for a fixed seed.  grid_r restricts candidate
/// corners to the dyadic grid of that resolution (the oracle's space).
WitnessReport greedy_search(const FunctionSpec& f, const ACClassSpec& cls, const Rat& delta,
                            const GreedyBudget& budget = {},
                            std::optional<int> grid_r = std::nullopt,
                            const Rat& epsilon = Rat(1));

struct OracleLimits {
  std::int64_t family_cap = 100'000'000;
};

/// Exhaustive optimum over families of at most max_k pairwise disjoint
/// admissible intervals with corners on the 2^-grid_r lattice of the
/// domain box.  Ground truth for greedy_search on the same space.
WitnessReport oracle_max(const FunctionSpec& f, int grid_r, int max_k, const Rat& delta,
                         const ACClassSpec& cls, const OracleLimits& limits = {},
                         const Rat& epsilon = Rat(1));

/// Luzin (N) failure data at depth j: the 2^j standard Cantor-cover
/// intervals have total length (2/3)^j while their images under the
/// staircase tile [0,1] exactly.
struct CantorCoverCheck {
  int j;
  Rat total_length;       // (2/3)^j, from the actual cover
  bool images_tile_unit;  // endpoints map onto the full dyadic partition
};
CantorCoverCheck cantor_cover_check(int j);

}  // namespace aclab
