#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "aclab/error.hpp"

namespace aclab {

/// Arbitrary-precision rational, always reduced, denominator >= 1.
///
/// All geometry and all exact sums go through this type; floating point
/// appears only in the numeric diagnostics.  Accepted literal forms:
/// "p/q", integers, decimals ("0.25") and scientific notation ("1e-4"),
/// every one converted exactly.
class Rat {
 public:
  Rat() : v_(0) {}
  Rat(int n) : v_(n) {}
  Rat(long n) : v_(static_cast<signed long>(n)) {}
  Rat(long long n) { set_ll(n); }
  Rat(long num, long den);
  explicit Rat(const mpz_class& z) : v_(z) {}
  Rat(const mpz_class& num, const mpz_class& den);
  explicit Rat(const mpq_class& v) : v_(v) { v_.canonicalize(); }

  static Rat parse(std::string_view s);
  static std::optional<Rat> try_parse(std::string_view s);

  /// 2^e for any integer e (negative allowed).
  static Rat pow2(long e);

  const mpz_class& num() const { return v_.get_num(); }
  const mpz_class& den() const { return v_.get_den(); }
  const mpq_class& raw() const { return v_; }

  bool is_zero() const { return sgn(v_) == 0; }
  bool is_integer() const { return v_.get_den() == 1; }
  int sign() const { return sgn(v_); }

  double to_double() const { return v_.get_d(); }
  std::string str() const;

  Rat operator-() const { return Rat(mpq_class(-v_)); }
  Rat& operator+=(const Rat& o) { v_ += o.v_; return *this; }
  Rat& operator-=(const Rat& o) { v_ -= o.v_; return *this; }
  Rat& operator*=(const Rat& o) { v_ *= o.v_; return *this; }
  Rat& operator/=(const Rat& o);

  friend Rat operator+(Rat a, const Rat& b) { a += b; return a; }
  friend Rat operator-(Rat a, const Rat& b) { a -= b; return a; }
  friend Rat operator*(Rat a, const Rat& b) { a *= b; return a; }
  friend Rat operator/(Rat a, const Rat& b) { a /= b; return a; }

  friend bool operator==(const Rat& a, const Rat& b) { return a.v_ == b.v_; }
  friend std::strong_ordering operator<=>(const Rat& a, const Rat& b) {
    int c = cmp(a.v_, b.v_);
    return c < 0 ? std::strong_ordering::less
         : c > 0 ? std::strong_ordering::greater
                 : std::strong_ordering::equal;
  }

  /// x^e with integer e; e < 0 requires x != 0.
  Rat pow_int(long e) const;

  mpz_class floor() const;
  mpz_class ceil() const;
  /// Nearest integer, ties toward +infinity (floor(x + 1/2)).
  mpz_class round_nearest() const;

 private:
  void set_ll(long long n);
  mpq_class v_;
};

inline Rat abs(const Rat& a) { return a.sign() < 0 ? -a : a; }
inline const Rat& min(const Rat& a, const Rat& b) { return b < a ? b : a; }
inline const Rat& max(const Rat& a, const Rat& b) { return a < b ? b : a; }

}  // namespace aclab
