#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "aclab/q2.hpp"
#include "aclab/value.hpp"

namespace aclab {

struct TakagiResult {
  Rat partial;     // sum of the first K terms, exact
  Rat tail_bound;  // |T(x) - partial| <= tail_bound = 2^{1-K} * (1/2)
};

/// Takagi partial sum, T(x) = sum_k 2^{-k} dist(2^k x, Z), truncated at K
/// terms.  Exact on rationals; the tail is bounded by 2^{-K}.
TakagiResult takagi(const Rat& x, int K);
/// Same on p + q*sqrt(2) inputs; the partial sum stays in Q + Q*sqrt(2).
struct TakagiResultQ2 {
  Q2 partial;
  Rat tail_bound;
};
TakagiResultQ2 takagi(const Q2& x, int K);

/// Cantor staircase, extended by 0 left of [0,1] and 1 right of it.
/// Exact on rationals (periodic ternary tails resolved in closed form);
/// ternary digit extraction is capped, beyond the cap a CapacityError is
/// raised rather than approximating.
Rat cantor(const Rat& x, int digit_cap = 256);
Rat cantor(const Q2& x, int digit_cap = 256);

/// One-dimensional building block for the diagonal product construction.
/// Each profile has a declared support [-half, half] (value 0 outside,
/// except Cantor which is a monotone staircase fixed at 0/1 off [0,1]).
class Profile {
 public:
  enum class Kind {
    Constant,           // c everywhere on [-half, half]
    Tent,               // 1 - 2|t| on [-1/2, 1/2]
    CubeRoot,           // cbrt(t) on [-half, half]
    SqrtAbs,            // |s|^{1/2} on [-half, half]
    InvSqrtAbs,         // |s|^{-1/2} on [-half, half], pole at 0
    RationalIndicator,  // 1 at rational s in [-half, half], else 0
    Takagi,             // T(s + 1/2) on [-1/2, 1/2], truncated at K terms
    Cantor,             // the staircase itself
    PiecewiseLinear,    // linear interpolation of breakpoints, 0 outside
  };

  static Profile constant(Rat c);
  static Profile tent();
  static Profile cube_root(Rat half);
  static Profile sqrt_abs(Rat half);
  static Profile inv_sqrt_abs(Rat half);
  static Profile rational_indicator(Rat half);
  static Profile takagi_profile(int K);
  static Profile cantor_profile();
  static Profile piecewise_linear(std::vector<std::pair<Rat, Rat>> pts);

  Kind kind() const { return kind_; }
  int takagi_terms() const { return takagi_k_; }
  const Rat& param() const { return param_; }

  Value eval(const Rat& x) const;
  Value eval(const Q2& x) const;

  /// Half-width of the declared support.
  Rat support_half() const;
  /// sup |value| where finitely bounded.
  std::optional<Rat> bound() const;
  /// Lipschitz constant where the profile is Lipschitz.
  std::optional<Rat> lipschitz() const;
  bool exact_evaluable() const;
  bool has_pole() const { return kind_ == Kind::InvSqrtAbs; }

  std::string str() const;

 private:
  Kind kind_ = Kind::Constant;
  Rat param_;  // Constant: value; supported kinds: half-width
  int takagi_k_ = 64;
  std::vector<std::pair<Rat, Rat>> pts_;
};

}  // namespace aclab
