#include "aclab/q2.hpp"

namespace aclab {

Q2& Q2::operator*=(const Q2& o) {
  // (p1 + q1 r)(p2 + q2 r) = p1 p2 + 2 q1 q2 + (p1 q2 + p2 q1) r,  r = sqrt(2)
  Rat np = p_ * o.p_ + Rat(2) * q_ * o.q_;
  Rat nq = p_ * o.q_ + o.p_ * q_;
  p_ = std::move(np);
  q_ = std::move(nq);
  return *this;
}

int Q2::sign() const {
  int sp = p_.sign(), sq = q_.sign();
  if (sq == 0) return sp;
  if (sp == 0) return sq;
  if (sp == sq) return sp;
  // Opposite signs: compare p^2 with 2 q^2; sign decided by the larger term.
  Rat p2 = p_ * p_, q22 = Rat(2) * q_ * q_;
  if (p2 == q22) return 0;
  return p2 > q22 ? sp : sq;
}

mpz_class Q2::floor() const {
  if (q_.is_zero()) return p_.floor();
  // p + q*sqrt(2) = p + sgn(q) * sqrt(2 q^2).  Bracket the root by an
  // integer square root of the numerator/denominator pair, then fix up
  // with exact sign tests (at most a couple of steps).
  Rat two_q2 = Rat(2) * q_ * q_;
  mpz_class s;
  // floor(sqrt(n/d)) = floor(sqrt(n*d)/d)
  mpz_class nd = two_q2.num() * two_q2.den();
  mpz_sqrt(s.get_mpz_t(), nd.get_mpz_t());
  Rat root_floor(s, two_q2.den());
  Rat approx = q_.sign() > 0 ? p_ + root_floor : p_ - root_floor - Rat(1);
  mpz_class m = approx.floor();
  auto ge = [&](const mpz_class& k) {  // *this >= k ?
    return (*this - Q2(Rat(k))).sign() >= 0;
  };
  while (!ge(m)) m -= 1;
  while (ge(m + 1)) m += 1;
  return m;
}

mpz_class Q2::round_nearest() const {
  Q2 t = *this + Q2(Rat(1, 2));
  return t.floor();
}

Q2 Q2::dist_to_int() const {
  mpz_class n = round_nearest();
  Q2 d = *this - Q2(Rat(n));
  return abs(d);
}

std::string Q2::str() const {
  if (q_.is_zero()) return p_.str();
  std::string r = q_.str() + "r2";
  if (p_.is_zero()) return r;
  return p_.str() + (q_.sign() > 0 ? "+" : "") + r;
}

}  // namespace aclab
