#include "aclab/geometry.hpp"

#include <algorithm>
#include <map>

#include "aclab/error.hpp"

namespace aclab {

std::string Point::str() const {
  std::string s = "(";
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (i) s += ",";
    s += c[i].str();
  }
  return s + ")";
}

Point operator+(const Point& a, const Point& b) {
  Point r = a;
  for (int i = 0; i < a.dim(); ++i) r[i] += b[i];
  return r;
}

Point operator-(const Point& a, const Point& b) {
  Point r = a;
  for (int i = 0; i < a.dim(); ++i) r[i] -= b[i];
  return r;
}

Point operator*(const Rat& s, const Point& p) {
  Point r = p;
  for (int i = 0; i < p.dim(); ++i) r[i] *= s;
  return r;
}

Rat dot(const Point& a, const Point& b) {
  Rat r;
  for (int i = 0; i < a.dim(); ++i) r += a[i] * b[i];
  return r;
}

Interval::Interval(Point corner1, Point corner2) : a_(std::move(corner1)), b_(std::move(corner2)) {
  if (a_.dim() != b_.dim()) throw FamilyError("interval corners of different dimension");
  if (a_.dim() == 0) throw DomainError("zero-dimensional interval");
  for (int i = 0; i < a_.dim(); ++i)
    if (a_[i] > b_[i]) std::swap(a_[i], b_[i]);
}

bool Interval::is_degenerate() const {
  for (int i = 0; i < dim(); ++i)
    if (a_[i] == b_[i]) return true;
  return false;
}

Rat Interval::max_side() const {
  Rat m = side(0);
  for (int i = 1; i < dim(); ++i) m = aclab::max(m, side(i));
  return m;
}

Rat Interval::measure() const {
  Rat m(1);
  for (int i = 0; i < dim(); ++i) m *= side(i);
  return m;
}

Rat Interval::regularity() const {
  if (is_degenerate()) throw DomainError("zero max side: regularity rejects degenerate intervals");
  return measure() / max_side().pow_int(dim());
}

Rat Interval::max_side_pow(int n) const { return max_side().pow_int(n); }

Point Interval::center() const {
  Point c = a_;
  Rat half(1, 2);
  for (int i = 0; i < dim(); ++i) c[i] = (a_[i] + b_[i]) * half;
  return c;
}

Interval Interval::shrink(const Rat& lambda) const {
  if (lambda.sign() <= 0 || lambda >= Rat(1))
    throw DomainError("shrink factor must lie in (0,1), got " + lambda.str());
  Point lo = a_, hi = b_;
  Rat half(1, 2);
  for (int i = 0; i < dim(); ++i) {
    Rat c = (a_[i] + b_[i]) * half;
    Rat h = lambda * side(i) * half;
    lo[i] = c - h;
    hi[i] = c + h;
  }
  Interval r;
  r.a_ = std::move(lo);
  r.b_ = std::move(hi);
  return r;
}

bool Interval::contains(const Point& p) const {
  for (int i = 0; i < dim(); ++i)
    if (p[i] < a_[i] || p[i] > b_[i]) return false;
  return true;
}

bool Interval::intersects(const Interval& o) const {
  for (int i = 0; i < dim(); ++i)
    if (b_[i] < o.a_[i] || o.b_[i] < a_[i]) return false;
  return true;
}

bool Interval::overlaps_interior(const Interval& o) const {
  // Interiors meet iff every axis has max(lo) < min(hi); a box degenerate
  // in any axis has empty interior and overlaps nothing.
  for (int i = 0; i < dim(); ++i)
    if (aclab::max(a_[i], o.a_[i]) >= aclab::min(b_[i], o.b_[i])) return false;
  return true;
}

std::string Interval::str() const { return "[" + a_.str() + "," + b_.str() + "]"; }

std::string to_string(Disjointness d) {
  return d == Disjointness::Closed ? "closed" : "interior";
}

namespace {

// Plane sweep over x: boxes enter at x-lo, leave at x-hi.  The active set
// is kept as y-intervals ordered by lower edge; while the family passes,
// active y-intervals stay non-overlapping and hence linearly ordered, so
// each insertion only checks its map neighbours.  Interior mode drops
// boxes that are degenerate in some axis (empty interior).
DisjointReport sweep_2d(std::span<const Interval> f, Disjointness mode) {
  const bool closed = mode == Disjointness::Closed;
  struct Ev {
    const Rat* x;
    bool start;
    long idx;
  };
  std::vector<Ev> evs;
  evs.reserve(2 * f.size());
  for (long i = 0; i < static_cast<long>(f.size()); ++i) {
    if (!closed && f[i].is_degenerate()) continue;
    evs.push_back({&f[i].lo()[0], true, i});
    evs.push_back({&f[i].hi()[0], false, i});
  }
  std::sort(evs.begin(), evs.end(), [&](const Ev& a, const Ev& b) {
    if (*a.x != *b.x) return *a.x < *b.x;
    if (a.start != b.start) {
      // Closed mode: a box starting where another ends still touches it,
      // so process starts first.  Interior mode: ends first.
      return closed ? a.start : !a.start;
    }
    return a.idx < b.idx;
  });

  std::map<Rat, std::pair<Rat, long>> active;  // y-lo -> (y-hi, idx)
  auto y_overlap = [&](const Rat& lo1, const Rat& hi1, const Rat& lo2, const Rat& hi2) {
    const Rat& lo = aclab::max(lo1, lo2);
    const Rat& hi = aclab::min(hi1, hi2);
    return closed ? lo <= hi : lo < hi;
  };
  for (const Ev& ev : evs) {
    const Interval& box = f[ev.idx];
    const Rat& ylo = box.lo()[1];
    const Rat& yhi = box.hi()[1];
    if (ev.start) {
      auto it = active.lower_bound(ylo);
      if (it != active.end() && y_overlap(ylo, yhi, it->first, it->second.first))
        return {false, it->second.second, ev.idx};
      if (it != active.begin()) {
        auto p = std::prev(it);
        if (y_overlap(ylo, yhi, p->first, p->second.first))
          return {false, p->second.second, ev.idx};
      }
      auto [pos, inserted] = active.emplace(ylo, std::make_pair(yhi, ev.idx));
      if (!inserted) return {false, pos->second.second, ev.idx};
    } else {
      auto it = active.find(ylo);
      if (it != active.end() && it->second.second == ev.idx) active.erase(it);
    }
  }
  return {};
}

}  // namespace

DisjointReport check_pairwise_disjoint(std::span<const Interval> f, Disjointness mode) {
  if (f.empty()) return {};
  int d = f[0].dim();
  for (long i = 0; i < static_cast<long>(f.size()); ++i)
    if (f[i].dim() != d) throw FamilyError("dimension mismatch in interval family", i);
  if (d == 2 && f.size() > 64) return sweep_2d(f, mode);
  for (long i = 0; i < static_cast<long>(f.size()); ++i)
    for (long j = i + 1; j < static_cast<long>(f.size()); ++j) {
      bool bad = mode == Disjointness::Closed ? f[i].intersects(f[j])
                                              : f[i].overlaps_interior(f[j]);
      if (bad) return {false, i, j};
    }
  return {};
}

bool pairwise_disjoint(std::span<const Interval> f, Disjointness mode) {
  return check_pairwise_disjoint(f, mode).disjoint;
}

Ball::Ball(Point c, Rat r, BallShape s) : center(std::move(c)), radius(std::move(r)), shape(s) {
  if (radius.sign() <= 0) throw DomainError("ball radius must be positive");
}

bool Ball::contains(const Point& p) const {
  if (shape == BallShape::SupNorm) {
    for (int i = 0; i < center.dim(); ++i)
      if (abs(p[i] - center[i]) > radius) return false;
    return true;
  }
  Rat s;
  for (int i = 0; i < center.dim(); ++i) {
    Rat d = p[i] - center[i];
    s += d * d;
  }
  return s <= radius * radius;
}

Interval Ball::bounding_box() const {
  Point lo = center, hi = center;
  for (int i = 0; i < center.dim(); ++i) {
    lo[i] -= radius;
    hi[i] += radius;
  }
  return Interval(lo, hi);
}

DiagBasis::DiagBasis(int n) : n_(n) {
  if (n < 1) throw DomainError("basis dimension must be >= 1");
  vecs_.reserve(static_cast<std::size_t>(n));
  for (int k = 1; k < n; ++k) {
    // x_k = k e_{k+1} - (e_1 + ... + e_k)
    std::vector<Rat> v(static_cast<std::size_t>(n), Rat(0));
    for (int i = 0; i < k; ++i) v[static_cast<std::size_t>(i)] = Rat(-1);
    v[static_cast<std::size_t>(k)] = Rat(k);
    vecs_.emplace_back(std::move(v));
  }
  vecs_.emplace_back(std::vector<Rat>(static_cast<std::size_t>(n), Rat(1)));
  norm_sq_.reserve(static_cast<std::size_t>(n));
  for (const Point& v : vecs_) norm_sq_.push_back(dot(v, v));
}

Point DiagBasis::to_std(const std::vector<Rat>& t) const {
  if (static_cast<int>(t.size()) != n_) throw DomainError("diagonal coordinate count mismatch");
  Point p(std::vector<Rat>(static_cast<std::size_t>(n_), Rat(0)));
  for (int k = 0; k < n_; ++k)
    for (int i = 0; i < n_; ++i) p[i] += t[static_cast<std::size_t>(k)] * vec(k)[i];
  return p;
}

Point DiagBasis::to_std(const Rat& s, const Rat& t) const {
  if (n_ != 2) throw DomainError("(s,t) form requires dimension 2");
  return to_std(std::vector<Rat>{s, t});
}

std::vector<Rat> DiagBasis::from_std(const Point& p) const {
  if (p.dim() != n_) throw DomainError("point dimension mismatch");
  std::vector<Rat> t;
  t.reserve(static_cast<std::size_t>(n_));
  for (int k = 0; k < n_; ++k) t.push_back(dot(p, vec(k)) / norm_sq_[static_cast<std::size_t>(k)]);
  return t;
}

}  // namespace aclab
