#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "aclab/rational.hpp"

namespace aclab {

/// Result of evaluating a function: an approximation with a certified
/// error bound, plus the exact rational when the evaluation path is exact.
///
/// Invariant: |true value - approx| <= err, and when `exact` is set,
/// |true value - exact| <= err as well (err > 0 with `exact` set happens
/// for truncated series such as Takagi partial sums).
struct Value {
  std::optional<Rat> exact;
  double approx = 0.0;
  double err = 0.0;

  static Value of(Rat q) {
    Value v;
    v.approx = q.to_double();
    v.exact = std::move(q);
    v.err = 0.0;
    return v;
  }
  static Value of(Rat q, double truncation_err) {
    Value v = of(std::move(q));
    v.err = truncation_err;
    return v;
  }
  static Value approximate(double x, double e) { return Value{std::nullopt, x, e}; }

  bool is_exact() const { return exact.has_value() && err == 0.0; }
  double lower() const { return approx - err; }
  double upper() const { return approx + err; }
};

namespace detail {
inline double ulp_slop(double x) { return std::abs(x) * 1e-15; }
}

inline Value operator+(const Value& a, const Value& b) {
  Value r;
  r.approx = a.approx + b.approx;
  r.err = a.err + b.err;
  if (a.exact && b.exact) {
    r.exact = *a.exact + *b.exact;
    r.approx = r.exact->to_double();
  } else {
    r.err += detail::ulp_slop(r.approx);
  }
  return r;
}

inline Value operator-(const Value& a, const Value& b) {
  Value r;
  r.approx = a.approx - b.approx;
  r.err = a.err + b.err;
  if (a.exact && b.exact) {
    r.exact = *a.exact - *b.exact;
    r.approx = r.exact->to_double();
  } else {
    r.err += detail::ulp_slop(r.approx);
  }
  return r;
}

inline Value operator*(const Value& a, const Value& b) {
  Value r;
  r.approx = a.approx * b.approx;
  r.err = std::abs(a.approx) * b.err + std::abs(b.approx) * a.err + a.err * b.err;
  if (a.exact && b.exact) {
    r.exact = *a.exact * *b.exact;
    r.approx = r.exact->to_double();
  } else {
    r.err += detail::ulp_slop(r.approx);
  }
  return r;
}

inline Value abs(const Value& a) {
  Value r = a;
  r.approx = std::abs(r.approx);
  if (r.exact) r.exact = abs(*r.exact);
  return r;
}

inline Value pow_int(const Value& a, int n) {
  Value r = Value::of(Rat(1));
  for (int i = 0; i < n; ++i) r = r * a;
  return r;
}

/// Fixed-shape pairwise sum: blocks of 1024 summed left to right, block
/// sums reduced pairwise.  The shape depends only on the length, so the
/// result is identical no matter how work was distributed.
double pairwise_sum(const std::vector<double>& xs);

/// Sums Values: exact rational total when every term is exact, otherwise a
/// pairwise float sum of the approximations with accumulated error bounds.
Value sum_values(const std::vector<Value>& terms);

}  // namespace aclab
