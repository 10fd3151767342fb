#include "aclab/value.hpp"

namespace aclab {

namespace {

double pairwise_range(const std::vector<double>& xs, std::size_t lo, std::size_t hi) {
  if (hi - lo <= 1024) {
    double s = 0;
    for (std::size_t i = lo; i < hi; ++i) s += xs[i];
    return s;
  }
  std::size_t blocks = (hi - lo + 1023) / 1024;
  std::size_t mid = lo + (blocks / 2) * 1024;
  return pairwise_range(xs, lo, mid) + pairwise_range(xs, mid, hi);
}

}  // namespace

double pairwise_sum(const std::vector<double>& xs) {
  if (xs.empty()) return 0.0;
  return pairwise_range(xs, 0, xs.size());
}

Value sum_values(const std::vector<Value>& terms) {
  bool all_exact = true;
  for (const Value& t : terms)
    if (!t.exact) {
      all_exact = false;
      break;
    }
  if (all_exact) {
    Rat s;
    double err = 0;
    for (const Value& t : terms) {
      s += *t.exact;
      err += t.err;
    }
    return Value::of(std::move(s), err);
  }
  std::vector<double> xs;
  xs.reserve(terms.size());
  double err = 0;
  for (const Value& t : terms) {
    xs.push_back(t.approx);
    err += t.err;
  }
  double s = pairwise_sum(xs);
  return Value::approximate(s, err + std::abs(s) * 1e-14 + 1e-300);
}

}  // namespace aclab
