#pragma once

#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "aclab/geometry.hpp"
#include "aclab/hierarchy.hpp"
#include "aclab/profile.hpp"
#include "aclab/q2.hpp"
#include "aclab/value.hpp"

namespace aclab {

class FunctionSpec;

/// f(s x1 + t x2) = h(s) g(t), zero outside the diamond S_d
/// (|s| <= d and |t| <= d in diagonal coordinates).
struct ProductFn {
  Profile h, g;
  Rat d;
};

/// The nowhere-one-sided-differentiable example: T(s + 1/2)(1 - 2|t|),
/// Takagi truncated at K terms.
struct TakagiTentFn {
  Rat d;
  int K = 64;
};

/// f(t1 x1 + ... + tn xn) = cantor(t1), constant in the diagonal and all
/// other frame directions.
struct CantorDirectionalFn {
  int n = 2;
};

struct AffineFn {
  std::vector<Rat> coeffs;
  Rat offset;
};

/// profile(p[axis]) as a function of n variables.
struct AxisProfileFn {
  Profile profile;
  int axis = 0;
  int n = 2;
};

/// Partial sum of the hierarchy's level functions.
struct HierarchyFn {
  std::shared_ptr<const Hierarchy> hierarchy;
  int depth;
};

struct SumFn {
  std::vector<FunctionSpec> terms;
};

struct ScaleFn {
  Rat c;
  std::shared_ptr<const FunctionSpec> inner;
};

class FunctionSpec {
 public:
  using Node = std::variant<ProductFn, TakagiTentFn, CantorDirectionalFn, AffineFn,
                            AxisProfileFn, HierarchyFn, SumFn, ScaleFn>;

  FunctionSpec() : node_(AffineFn{{Rat(0), Rat(0)}, Rat(0)}) {}
  FunctionSpec(Node n);

  static FunctionSpec product(Profile h, Profile g, Rat d);
  static FunctionSpec takagi_tent(Rat d, int K = 64);
  static FunctionSpec cantor_directional(int n);
  static FunctionSpec affine(std::vector<Rat> coeffs, Rat offset);
  static FunctionSpec axis_profile(Profile p, int axis, int n = 2);
  static FunctionSpec hierarchy_fn(std::shared_ptr<const Hierarchy> h, int depth);
  static FunctionSpec sum(std::vector<FunctionSpec> terms);
  static FunctionSpec scale(Rat c, FunctionSpec inner);

  const Node& node() const { return node_; }
  template <typename T>
  const T* as() const {
    return std::get_if<T>(&node_);
  }

  int dimension() const;
  /// Box around the interesting part of the function, used as the search
  /// and oracle region.
  Interval domain_hint() const;
  bool exact_evaluable() const;

  Value eval(const Point& p) const;
  Value eval(const Q2Point& p) const;

  std::string str() const;

 private:
  Node node_;
};

/// Named constructions from the corollary catalog:
/// cbrt-product, takagi-tent, unbounded, disc-everywhere, w11-not-w12,
/// cantor-luzin.  Unknown names raise a lookup error listing the catalog.
FunctionSpec preset(const std::string& name);
std::vector<std::string> preset_names();

}  // namespace aclab
