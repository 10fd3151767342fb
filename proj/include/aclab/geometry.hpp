#pragma once

#include <span>
#include <string>
#include <vector>

#include "aclab/rational.hpp"

namespace aclab {

/// Point of R^n with exact rational coordinates.
struct Point {
  std::vector<Rat> c;

  Point() = default;
  explicit Point(std::vector<Rat> coords) : c(std::move(coords)) {}
  Point(Rat x, Rat y) : c{std::move(x), std::move(y)} {}

  int dim() const { return static_cast<int>(c.size()); }
  const Rat& operator[](int i) const { return c[static_cast<std::size_t>(i)]; }
  Rat& operator[](int i) { return c[static_cast<std::size_t>(i)]; }

  friend bool operator==(const Point&, const Point&) = default;
  std::string str() const;
};

Point operator+(const Point& a, const Point& b);
Point operator-(const Point& a, const Point& b);
Point operator*(const Rat& s, const Point& p);
Rat dot(const Point& a, const Point& b);

/// Closed axis-aligned box [a, b], a_v <= b_v for every axis.
/// Degenerate boxes (some a_v == b_v) are representable but rejected
/// by regularity().
class Interval {
 public:
  Interval() = default;
  /// Corners need not be ordered; they are normalized componentwise.
  Interval(Point corner1, Point corner2);

  const Point& lo() const { return a_; }
  const Point& hi() const { return b_; }
  int dim() const { return a_.dim(); }

  bool is_degenerate() const;
  Rat side(int axis) const { return b_[axis] - a_[axis]; }
  Rat max_side() const;
  Rat measure() const;
  /// measure / max_side^n, in (0, 1]; throws DomainError("zero max side")
  /// on degenerate boxes.
  Rat regularity() const;
  Rat max_side_pow(int n) const;

  Point center() const;
  /// Concentric box with every side scaled by lambda in (0, 1).
  Interval shrink(const Rat& lambda) const;

  bool contains(const Point& p) const;
  /// Closed sets intersect.
  bool intersects(const Interval& o) const;
  /// Interiors intersect (shared faces allowed).
  bool overlaps_interior(const Interval& o) const;

  friend bool operator==(const Interval&, const Interval&) = default;
  std::string str() const;

 private:
  Point a_, b_;
};

enum class Disjointness {
  Closed,    // closed boxes must not touch at all (default)
  Interior,  // boxes may share boundary, interiors disjoint
};

std::string to_string(Disjointness d);

/// Finite family of boxes plus the disjointness convention it is
/// measured against; reports echo the convention.
struct IntervalFamily {
  std::vector<Interval> items;
  Disjointness mode = Disjointness::Closed;
};

/// True iff the family is pairwise disjoint under `mode`.  Dimension
/// mismatch throws FamilyError.  O(N log N) sweep in the plane,
/// quadratic fallback in other dimensions.
bool pairwise_disjoint(std::span<const Interval> family, Disjointness mode);

/// Like pairwise_disjoint but reports one offending pair, for diagnostics.
struct DisjointReport {
  bool disjoint = true;
  long first = -1, second = -1;
};
DisjointReport check_pairwise_disjoint(std::span<const Interval> family, Disjointness mode);

enum class BallShape { Euclidean, SupNorm };

struct Ball {
  Point center;
  Rat radius;  // > 0
  BallShape shape = BallShape::Euclidean;

  Ball(Point c, Rat r, BallShape s);
  bool contains(const Point& p) const;
  /// Smallest box containing the ball.
  Interval bounding_box() const;
};

/// Orthogonal rational basis x_1..x_n with x_n = e_1 + ... + e_n.
/// For n = 2 this is the paper's diagonal frame x1 = (-1,1), x2 = (1,1);
/// for larger n the remaining vectors are a (negated) Helmert family,
/// x_k = k e_{k+1} - (e_1 + ... + e_k).  Coordinates round-trip exactly.
class DiagBasis {
 public:
  explicit DiagBasis(int n);

  int dim() const { return n_; }
  const Point& vec(int k) const { return vecs_[static_cast<std::size_t>(k)]; }

  /// Point with diagonal coordinates t = (t_1..t_n): sum t_k x_k.
  Point to_std(const std::vector<Rat>& t) const;
  /// n = 2 convenience: s x1 + t x2.
  Point to_std(const Rat& s, const Rat& t) const;
  /// Diagonal coordinates of p: t_k = <p, x_k> / |x_k|^2.
  std::vector<Rat> from_std(const Point& p) const;

 private:
  int n_;
  std::vector<Point> vecs_;
  std::vector<Rat> norm_sq_;
};

}  // namespace aclab
