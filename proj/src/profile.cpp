#include "aclab/profile.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "aclab/error.hpp"

namespace aclab {

namespace {

Rat rat_pow2_mpz(unsigned long e) {
  mpz_class n = 1;
  mpz_mul_2exp(n.get_mpz_t(), n.get_mpz_t(), e);
  return Rat(n);
}

// Upper rational bound on x^{1/r} for x >= 0, via 64 guard bits.
Rat root_upper(const Rat& x, unsigned long r) {
  if (x.sign() < 0) throw DomainError("root_upper of negative value");
  if (x.is_zero()) return Rat(0);
  const unsigned long guard = 64;
  // x = p/q;  x^{1/r} = (p q^{r-1})^{1/r} / q
  mpz_class pq = x.num();
  for (unsigned long i = 0; i + 1 < r; ++i) pq *= x.den();
  mpz_class scaled;
  mpz_mul_2exp(scaled.get_mpz_t(), pq.get_mpz_t(), guard * r);
  mpz_class root;
  mpz_root(root.get_mpz_t(), scaled.get_mpz_t(), r);
  root += 1;  // floor root -> upper bound
  mpz_class den;
  mpz_mul_2exp(den.get_mpz_t(), x.den().get_mpz_t(), guard);
  return Rat(root, den);
}

}  // namespace

TakagiResult takagi(const Rat& x, int K) {
  if (K < 1) throw DomainError("takagi truncation order must be >= 1");
  Rat sum;
  Rat y = x;
  Rat scale(1);
  const Rat half(1, 2);
  for (int k = 0; k < K; ++k) {
    Rat frac = y - Rat(y.floor());
    Rat dist = frac <= half ? frac : Rat(1) - frac;
    sum += scale * dist;
    y += y;
    scale *= half;
  }
  return {sum, Rat::pow2(-K)};
}

TakagiResultQ2 takagi(const Q2& x, int K) {
  if (K < 1) throw DomainError("takagi truncation order must be >= 1");
  if (x.is_rational()) {
    TakagiResult r = takagi(x.rational_part(), K);
    return {Q2(r.partial), r.tail_bound};
  }
  Q2 sum;
  Q2 y = x;
  Rat scale(1);
  const Rat half(1, 2);
  for (int k = 0; k < K; ++k) {
    Q2 dist = y.dist_to_int();
    sum += Q2(scale) * dist;
    y += y;
    scale *= half;
  }
  return {sum, Rat::pow2(-K)};
}

namespace {

Rat cantor_from_bits(const std::vector<int>& bits, int ones_pos) {
  // ones_pos >= 0: digit 1 found after `bits`; < 0: expansion ended (all
  // further digits 0)
  mpz_class prefix = 0;
  for (int b : bits) prefix = 2 * prefix + b;
  unsigned long len = static_cast<unsigned long>(bits.size());
  mpz_class p2 = 1;
  if (ones_pos >= 0) {
    mpz_mul_2exp(p2.get_mpz_t(), p2.get_mpz_t(), len + 1);
    return Rat(2 * prefix + 1, p2);
  }
  mpz_mul_2exp(p2.get_mpz_t(), p2.get_mpz_t(), len);
  return Rat(prefix, p2);
}

// Denominator-preserving digit walk in machine words; the state is the
// numerator of the fractional part, so q < 2^62 keeps 3*state in range.
std::optional<Rat> cantor_fast(const Rat& x, int digit_cap) {
  if (!x.den().fits_ulong_p()) return std::nullopt;
  unsigned long q = x.den().get_ui();
  if (q >= (1ULL << 62)) return std::nullopt;
  unsigned long num = x.num().get_ui();  // 0 < num < q
  std::vector<unsigned long> seen;
  std::vector<int> bits;
  seen.reserve(64);
  for (int pos = 0; pos < digit_cap; ++pos) {
    if (num == 0) return cantor_from_bits(bits, -1);
    for (std::size_t u = 0; u < seen.size(); ++u) {
      if (seen[u] == num) {
        // periodic tail from position u
        int len = pos - static_cast<int>(u);
        mpz_class prefix = 0;
        for (std::size_t i = 0; i < u; ++i) prefix = 2 * prefix + bits[i];
        mpz_class b = 0;
        for (std::size_t i = u; i < bits.size(); ++i) b = 2 * b + bits[i];
        mpz_class p2u = 1;
        mpz_mul_2exp(p2u.get_mpz_t(), p2u.get_mpz_t(), static_cast<unsigned long>(u));
        mpz_class p2len = 1;
        mpz_mul_2exp(p2len.get_mpz_t(), p2len.get_mpz_t(), static_cast<unsigned long>(len));
        return Rat(prefix, p2u) + Rat(b, p2u * (p2len - 1));
      }
    }
    seen.push_back(num);
    unsigned long t = 3 * num;
    unsigned long d = t / q;
    num = t - d * q;
    if (d == 1) return cantor_from_bits(bits, pos);
    bits.push_back(d == 2 ? 1 : 0);
  }
  throw CapacityError("cantor: ternary digit cap (" + std::to_string(digit_cap) +
                      ") reached before the expansion resolved");
}

}  // namespace

Rat cantor(const Rat& x, int digit_cap) {
  if (x.sign() <= 0) return Rat(0);
  if (x >= Rat(1)) return Rat(1);
  if (auto fast = cantor_fast(x, digit_cap)) return *fast;
  std::map<Rat, int> seen;
  std::vector<int> bits;  // ternary digit / 2
  Rat cur = x;
  for (int pos = 0; pos < digit_cap; ++pos) {
    auto [it, fresh] = seen.emplace(cur, pos);
    if (!fresh) {
      // periodic tail c_{u+1} .. c_{pos}: prefix/2^u + B / (2^u (2^len - 1))
      int u = it->second;
      int len = pos - u;
      mpz_class prefix = 0;
      for (int i = 0; i < u; ++i) prefix = 2 * prefix + bits[static_cast<std::size_t>(i)];
      mpz_class b = 0;
      for (int i = u; i < pos; ++i) b = 2 * b + bits[static_cast<std::size_t>(i)];
      mpz_class p2u = 1;
      mpz_mul_2exp(p2u.get_mpz_t(), p2u.get_mpz_t(), static_cast<unsigned long>(u));
      mpz_class p2len = 1;
      mpz_mul_2exp(p2len.get_mpz_t(), p2len.get_mpz_t(), static_cast<unsigned long>(len));
      return Rat(prefix, p2u) + Rat(b, p2u * (p2len - 1));
    }
    cur *= Rat(3);
    mpz_class d = cur.floor();
    cur -= Rat(d);
    if (d == 1) {
      mpz_class prefix = 0;
      for (int b : bits) prefix = 2 * prefix + b;
      mpz_class p2 = 1;
      mpz_mul_2exp(p2.get_mpz_t(), p2.get_mpz_t(), static_cast<unsigned long>(pos + 1));
      return Rat(2 * prefix + 1, p2);
    }
    bits.push_back(d == 2 ? 1 : 0);
  }
  throw CapacityError("cantor: ternary digit cap (" + std::to_string(digit_cap) +
                      ") reached before the expansion resolved");
}

Rat cantor(const Q2& x, int digit_cap) {
  if (x.is_rational()) return cantor(x.rational_part(), digit_cap);
  if (x.sign() <= 0) return Rat(0);
  if ((x - Q2(Rat(1))).sign() >= 0) return Rat(1);
  // Irrational expansions never cycle; read digits until the first 1.
  std::vector<int> bits;
  Q2 cur = x;
  for (int pos = 0; pos < digit_cap; ++pos) {
    cur *= Q2(Rat(3));
    mpz_class d = cur.floor();
    cur -= Q2(Rat(d));
    if (d == 1) {
      mpz_class prefix = 0;
      for (int b : bits) prefix = 2 * prefix + b;
      mpz_class p2 = 1;
      mpz_mul_2exp(p2.get_mpz_t(), p2.get_mpz_t(), static_cast<unsigned long>(pos + 1));
      return Rat(2 * prefix + 1, p2);
    }
    bits.push_back(d == 2 ? 1 : 0);
  }
  throw CapacityError("cantor: ternary digit cap reached on an irrational input");
}

Profile Profile::constant(Rat c) {
  Profile p;
  p.kind_ = Kind::Constant;
  p.param_ = std::move(c);
  return p;
}

Profile Profile::tent() {
  Profile p;
  p.kind_ = Kind::Tent;
  return p;
}

Profile Profile::cube_root(Rat half) {
  if (half.sign() <= 0) throw DomainError("cube_root support half-width must be positive");
  Profile p;
  p.kind_ = Kind::CubeRoot;
  p.param_ = std::move(half);
  return p;
}

Profile Profile::sqrt_abs(Rat half) {
  if (half.sign() <= 0) throw DomainError("sqrt_abs support half-width must be positive");
  Profile p;
  p.kind_ = Kind::SqrtAbs;
  p.param_ = std::move(half);
  return p;
}

Profile Profile::inv_sqrt_abs(Rat half) {
  if (half.sign() <= 0) throw DomainError("inv_sqrt_abs support half-width must be positive");
  Profile p;
  p.kind_ = Kind::InvSqrtAbs;
  p.param_ = std::move(half);
  return p;
}

Profile Profile::rational_indicator(Rat half) {
  if (half.sign() <= 0) throw DomainError("rational_indicator support half-width must be positive");
  Profile p;
  p.kind_ = Kind::RationalIndicator;
  p.param_ = std::move(half);
  return p;
}

Profile Profile::takagi_profile(int K) {
  if (K < 1) throw DomainError("takagi truncation order must be >= 1");
  Profile p;
  p.kind_ = Kind::Takagi;
  p.takagi_k_ = K;
  return p;
}

Profile Profile::cantor_profile() {
  Profile p;
  p.kind_ = Kind::Cantor;
  return p;
}

Profile Profile::piecewise_linear(std::vector<std::pair<Rat, Rat>> pts) {
  if (pts.size() < 2) throw DomainError("piecewise_linear needs at least two breakpoints");
  for (std::size_t i = 1; i < pts.size(); ++i)
    if (!(pts[i - 1].first < pts[i].first))
      throw DomainError("piecewise_linear breakpoints must be strictly increasing");
  Profile p;
  p.kind_ = Kind::PiecewiseLinear;
  p.pts_ = std::move(pts);
  return p;
}

namespace {

Value q2_value(const Q2& v) {
  if (v.is_rational()) return Value::of(v.rational_part());
  double a = v.to_double();
  double mag = std::abs(v.rational_part().to_double()) +
               1.5 * std::abs(v.sqrt2_part().to_double());
  return Value::approximate(a, mag * 4e-16 + 1e-300);
}

Value cbrt_value(const Rat& t) {
  // detect exact rational cube roots
  mpz_class rn, rd;
  mpz_class an = ::abs(t.num());
  bool en = mpz_root(rn.get_mpz_t(), an.get_mpz_t(), 3) != 0;
  bool ed = mpz_root(rd.get_mpz_t(), t.den().get_mpz_t(), 3) != 0;
  if (en && ed) {
    if (t.sign() < 0) rn = -rn;
    return Value::of(Rat(rn, rd));
  }
  double a = std::cbrt(t.to_double());
  return Value::approximate(a, std::abs(a) * 1e-15);
}

Value sqrt_value(const Rat& s) {  // sqrt of s >= 0
  if (mpz_perfect_square_p(s.num().get_mpz_t()) && mpz_perfect_square_p(s.den().get_mpz_t())) {
    mpz_class rn, rd;
    mpz_sqrt(rn.get_mpz_t(), s.num().get_mpz_t());
    mpz_sqrt(rd.get_mpz_t(), s.den().get_mpz_t());
    return Value::of(Rat(rn, rd));
  }
  double a = std::sqrt(s.to_double());
  return Value::approximate(a, std::abs(a) * 1e-15);
}

}  // namespace

Value Profile::eval(const Rat& x) const {
  switch (kind_) {
    case Kind::Constant:
      return Value::of(param_);
    case Kind::Tent: {
      Rat a = aclab::abs(x);
      if (a > Rat(1, 2)) return Value::of(Rat(0));
      return Value::of(Rat(1) - Rat(2) * a);
    }
    case Kind::CubeRoot:
      if (aclab::abs(x) > param_) return Value::of(Rat(0));
      return cbrt_value(x);
    case Kind::SqrtAbs:
      if (aclab::abs(x) > param_) return Value::of(Rat(0));
      return sqrt_value(aclab::abs(x));
    case Kind::InvSqrtAbs: {
      if (aclab::abs(x) > param_) return Value::of(Rat(0));
      if (x.is_zero()) throw PoleError("inv_sqrt_abs evaluated at its pole s = 0");
      Value r = sqrt_value(aclab::abs(x));
      if (r.exact) return Value::of(Rat(1) / *r.exact);
      double a = 1.0 / r.approx;
      return Value::approximate(a, std::abs(a) * 3e-15);
    }
    case Kind::RationalIndicator:
      return Value::of(aclab::abs(x) <= param_ ? Rat(1) : Rat(0));
    case Kind::Takagi: {
      if (aclab::abs(x) > Rat(1, 2)) return Value::of(Rat(0));
      TakagiResult r = takagi(x + Rat(1, 2), takagi_k_);
      return Value::of(r.partial, r.tail_bound.to_double());
    }
    case Kind::Cantor:
      return Value::of(cantor(x));
    case Kind::PiecewiseLinear: {
      if (x < pts_.front().first || x > pts_.back().first) return Value::of(Rat(0));
      auto it = std::lower_bound(pts_.begin(), pts_.end(), x,
                                 [](const auto& p, const Rat& v) { return p.first < v; });
      if (it != pts_.end() && it->first == x) return Value::of(it->second);
      auto hi = it;
      auto lo = std::prev(it);
      Rat t = (x - lo->first) / (hi->first - lo->first);
      return Value::of(lo->second + t * (hi->second - lo->second));
    }
  }
  throw Error("unreachable profile kind");
}

Value Profile::eval(const Q2& x) const {
  if (x.is_rational()) {
    if (kind_ == Kind::RationalIndicator)
      return Value::of(abs(x.rational_part()) <= param_ ? Rat(1) : Rat(0));
    return eval(x.rational_part());
  }
  switch (kind_) {
    case Kind::Constant:
      return Value::of(param_);
    case Kind::Tent: {
      Q2 a = abs(x);
      if ((a - Q2(Rat(1, 2))).sign() > 0) return Value::of(Rat(0));
      return q2_value(Q2(Rat(1)) - Q2(Rat(2)) * a);
    }
    case Kind::CubeRoot: {
      if ((abs(x) - Q2(param_)).sign() > 0) return Value::of(Rat(0));
      Value v = q2_value(x);
      double a = std::cbrt(v.approx);
      double slope = v.approx != 0.0 ? std::abs(a / (3 * v.approx)) : 1.0;
      return Value::approximate(a, std::abs(a) * 1e-15 + slope * v.err * 2);
    }
    case Kind::SqrtAbs: {
      if ((abs(x) - Q2(param_)).sign() > 0) return Value::of(Rat(0));
      Value v = q2_value(abs(x));
      double a = std::sqrt(v.approx);
      double slope = a != 0.0 ? 0.5 / a : 1.0;
      return Value::approximate(a, std::abs(a) * 1e-15 + slope * v.err * 2);
    }
    case Kind::InvSqrtAbs: {
      if ((abs(x) - Q2(param_)).sign() > 0) return Value::of(Rat(0));
      if (x.is_zero()) throw PoleError("inv_sqrt_abs evaluated at its pole s = 0");
      Value v = q2_value(abs(x));
      double a = 1.0 / std::sqrt(v.approx);
      double slope = 0.5 * a / v.approx;
      return Value::approximate(a, std::abs(a) * 3e-15 + std::abs(slope) * v.err * 2);
    }
    case Kind::RationalIndicator: {
      // q != 0 here, so the input is irrational
      return Value::of(Rat(0));
    }
    case Kind::Takagi: {
      if ((abs(x) - Q2(Rat(1, 2))).sign() > 0) return Value::of(Rat(0));
      TakagiResultQ2 r = takagi(x + Q2(Rat(1, 2)), takagi_k_);
      Value v = q2_value(r.partial);
      v.err += r.tail_bound.to_double();
      v.exact.reset();
      return v;
    }
    case Kind::Cantor:
      return Value::of(cantor(x));
    case Kind::PiecewiseLinear: {
      // exact comparisons against rational breakpoints, interpolation in Q2
      if ((x - Q2(pts_.front().first)).sign() < 0 || (Q2(pts_.back().first) - x).sign() < 0)
        return Value::of(Rat(0));
      std::size_t hi = 1;
      while (hi < pts_.size() && (Q2(pts_[hi].first) - x).sign() < 0) ++hi;
      const auto& lo_pt = pts_[hi - 1];
      const auto& hi_pt = pts_[hi];
      Rat slope = (hi_pt.second - lo_pt.second) / (hi_pt.first - lo_pt.first);
      Q2 y = Q2(lo_pt.second) + Q2(slope) * (x - Q2(lo_pt.first));
      return q2_value(y);
    }
  }
  throw Error("unreachable profile kind");
}

Rat Profile::support_half() const {
  switch (kind_) {
    case Kind::Tent:
    case Kind::Takagi:
      return Rat(1, 2);
    case Kind::CubeRoot:
    case Kind::SqrtAbs:
    case Kind::InvSqrtAbs:
    case Kind::RationalIndicator:
      return param_;
    case Kind::PiecewiseLinear: {
      Rat m;
      for (const auto& [x, y] : pts_) m = aclab::max(m, aclab::abs(x));
      return m;
    }
    case Kind::Constant:
    case Kind::Cantor:
      throw DomainError("profile has no compact declared support");
  }
  throw Error("unreachable");
}

std::optional<Rat> Profile::bound() const {
  switch (kind_) {
    case Kind::Constant:
      return aclab::abs(param_);
    case Kind::Tent:
    case Kind::RationalIndicator:
    case Kind::Cantor:
      return Rat(1);
    case Kind::Takagi:
      return Rat(2, 3);
    case Kind::CubeRoot:
      return root_upper(param_, 3);
    case Kind::SqrtAbs:
      return root_upper(param_, 2);
    case Kind::InvSqrtAbs:
      return std::nullopt;
    case Kind::PiecewiseLinear: {
      Rat m;
      for (const auto& [x, y] : pts_) m = aclab::max(m, aclab::abs(y));
      return m;
    }
  }
  return std::nullopt;
}

std::optional<Rat> Profile::lipschitz() const {
  switch (kind_) {
    case Kind::Constant:
      return Rat(0);
    case Kind::Tent:
      return Rat(2);
    case Kind::PiecewiseLinear: {
      Rat m;
      for (std::size_t i = 1; i < pts_.size(); ++i) {
        Rat s = aclab::abs((pts_[i].second - pts_[i - 1].second) /
                           (pts_[i].first - pts_[i - 1].first));
        m = aclab::max(m, s);
      }
      // zero outside the breakpoint range: jumps at the ends unless the
      // boundary values vanish
      if (!pts_.front().second.is_zero() || !pts_.back().second.is_zero()) return std::nullopt;
      return m;
    }
    default:
      return std::nullopt;
  }
}

bool Profile::exact_evaluable() const {
  switch (kind_) {
    case Kind::Constant:
    case Kind::Tent:
    case Kind::RationalIndicator:
    case Kind::Cantor:
    case Kind::PiecewiseLinear:
      return true;
    default:
      return false;
  }
}

std::string Profile::str() const {
  switch (kind_) {
    case Kind::Constant:
      return "const:" + param_.str();
    case Kind::Tent:
      return "tent";
    case Kind::CubeRoot:
      return "cbrt:" + param_.str();
    case Kind::SqrtAbs:
      return "sqrtabs:" + param_.str();
    case Kind::InvSqrtAbs:
      return "invsqrtabs:" + param_.str();
    case Kind::RationalIndicator:
      return "qind:" + param_.str();
    case Kind::Takagi:
      return "takagi:" + std::to_string(takagi_k_);
    case Kind::Cantor:
      return "cantor";
    case Kind::PiecewiseLinear: {
      std::string s = "pwl:";
      for (std::size_t i = 0; i < pts_.size(); ++i) {
        if (i) s += ";";
        s += pts_[i].first.str() + "," + pts_[i].second.str();
      }
      return s;
    }
  }
  return "?";
}

}  // namespace aclab
