#pragma once

#include <cmath>
#include <vector>

#include "aclab/rational.hpp"

namespace aclab {

/// Number of the form p + q*sqrt(2) with rational p, q.
///
/// Rational iff q == 0.  Exact sign tests, floor and nearest-integer make
/// the rational-indicator profile honestly evaluable at irrational probes
/// and keep Takagi partial sums exact on such inputs.
class Q2 {
 public:
  Q2() = default;
  Q2(Rat p) : p_(std::move(p)) {}
  Q2(Rat p, Rat q) : p_(std::move(p)), q_(std::move(q)) {}

  const Rat& rational_part() const { return p_; }
  const Rat& sqrt2_part() const { return q_; }
  bool is_rational() const { return q_.is_zero(); }

  int sign() const;
  bool is_zero() const { return p_.is_zero() && q_.is_zero(); }

  Q2 operator-() const { return Q2(-p_, -q_); }
  Q2& operator+=(const Q2& o) { p_ += o.p_; q_ += o.q_; return *this; }
  Q2& operator-=(const Q2& o) { p_ -= o.p_; q_ -= o.q_; return *this; }
  Q2& operator*=(const Q2& o);

  friend Q2 operator+(Q2 a, const Q2& b) { a += b; return a; }
  friend Q2 operator-(Q2 a, const Q2& b) { a -= b; return a; }
  friend Q2 operator*(Q2 a, const Q2& b) { a *= b; return a; }

  friend bool operator==(const Q2& a, const Q2& b) { return a.p_ == b.p_ && a.q_ == b.q_; }
  friend bool operator<(const Q2& a, const Q2& b) { return (a - b).sign() < 0; }
  friend bool operator<=(const Q2& a, const Q2& b) { return (a - b).sign() <= 0; }
  friend Q2 abs(const Q2& a) { return a.sign() < 0 ? -a : a; }

  mpz_class floor() const;
  /// floor(x + 1/2)
  mpz_class round_nearest() const;
  /// Exact distance to the nearest integer, in [0, 1/2].
  Q2 dist_to_int() const;

  double to_double() const { return p_.to_double() + q_.to_double() * std::sqrt(2.0); }
  std::string str() const;

 private:
  Rat p_, q_;
};

using Q2Point = std::vector<Q2>;

}  // namespace aclab
