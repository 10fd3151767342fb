#include "aclab/rational.hpp"

#include <cctype>

namespace aclab {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

}  // namespace

void Rat::set_ll(long long n) {
  if (n >= LONG_MIN && n <= LONG_MAX) {
    v_ = mpq_class(static_cast<signed long>(n));
  } else {
    mpz_class z;
    mpz_import(z.get_mpz_t(), 1, 1, sizeof(n), 0, 0, &n);
    if (n < 0) z = -z;  // import takes magnitude
    v_ = mpq_class(z);
  }
}

Rat::Rat(long num, long den) {
  if (den == 0) throw DomainError("rational with zero denominator");
  v_ = mpq_class(num, den);
  v_.canonicalize();
}

Rat::Rat(const mpz_class& num, const mpz_class& den) {
  if (den == 0) throw DomainError("rational with zero denominator");
  v_ = mpq_class(num, den);
  v_.canonicalize();
}

Rat& Rat::operator/=(const Rat& o) {
  if (o.is_zero()) throw DomainError("division by zero");
  v_ /= o.v_;
  return *this;
}

Rat Rat::pow2(long e) {
  mpq_class r;
  if (e >= 0) {
    mpz_class n = 1;
    mpz_mul_2exp(n.get_mpz_t(), n.get_mpz_t(), e);
    r = n;
  } else {
    mpz_class d = 1;
    mpz_mul_2exp(d.get_mpz_t(), d.get_mpz_t(), -e);
    r = mpq_class(1, 1);
    r /= mpq_class(d);
  }
  return Rat(r);
}

Rat Rat::pow_int(long e) const {
  if (e == 0) return Rat(1);
  if (is_zero()) {
    if (e < 0) throw DomainError("0 raised to a negative power");
    return Rat(0);
  }
  mpz_class n, d;
  unsigned long ae = static_cast<unsigned long>(e < 0 ? -e : e);
  mpz_pow_ui(n.get_mpz_t(), num().get_mpz_t(), ae);
  mpz_pow_ui(d.get_mpz_t(), den().get_mpz_t(), ae);
  if (e < 0) n.swap(d);
  return Rat(n, d);
}

mpz_class Rat::floor() const {
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), num().get_mpz_t(), den().get_mpz_t());
  return q;
}

mpz_class Rat::ceil() const {
  mpz_class q;
  mpz_cdiv_q(q.get_mpz_t(), num().get_mpz_t(), den().get_mpz_t());
  return q;
}

mpz_class Rat::round_nearest() const {
  Rat t = *this + Rat(1, 2);
  return t.floor();
}

std::string Rat::str() const {
  if (is_integer()) return num().get_str();
  return num().get_str() + "/" + den().get_str();
}

std::optional<Rat> Rat::try_parse(std::string_view s) {
  try {
    return parse(s);
  } catch (const Error&) {
    return std::nullopt;
  }
}

Rat Rat::parse(std::string_view s) {
  // strip surrounding spaces
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  s = s.substr(b, e - b);
  if (s.empty()) throw ParseError("empty rational literal", b);

  std::size_t slash = s.find('/');
  if (slash != std::string_view::npos) {
    std::string_view ns = s.substr(0, slash), ds = s.substr(slash + 1);
    std::string nstr(ns), dstr(ds);
    bool neg = !nstr.empty() && nstr[0] == '-';
    std::string ndig = !nstr.empty() && (nstr[0] == '-' || nstr[0] == '+') ? nstr.substr(1) : nstr;
    if (!all_digits(ndig)) throw ParseError("bad numerator '" + nstr + "'", b);
    if (!all_digits(dstr)) throw ParseError("bad denominator '" + dstr + "'", b + slash + 1);
    mpz_class n(ndig, 10), d(dstr, 10);
    if (neg) n = -n;
    if (d == 0) throw ParseError("zero denominator", b + slash + 1);
    return Rat(n, d);
  }

  // [sign] digits [. digits] [e[sign]digits]
  std::size_t i = 0;
  bool neg = false;
  if (i < s.size() && (s[i] == '+' || s[i] == '-')) {
    neg = s[i] == '-';
    ++i;
  }
  std::string mantissa;
  long frac_digits = 0;
  bool any = false, in_frac = false;
  for (; i < s.size(); ++i) {
    char c = s[i];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      mantissa += c;
      if (in_frac) ++frac_digits;
      any = true;
    } else if (c == '.' && !in_frac) {
      in_frac = true;
    } else if ((c == 'e' || c == 'E') && any) {
      break;
    } else {
      throw ParseError(std::string("unexpected character '") + c + "' in rational literal", b + i);
    }
  }
  if (!any) throw ParseError("no digits in rational literal", b + i);
  long exp10 = 0;
  if (i < s.size()) {  // exponent part
    ++i;  // skip e/E
    bool eneg = false;
    if (i < s.size() && (s[i] == '+' || s[i] == '-')) {
      eneg = s[i] == '-';
      ++i;
    }
    if (i >= s.size()) throw ParseError("missing exponent digits", b + i);
    long v = 0;
    for (; i < s.size(); ++i) {
      if (!std::isdigit(static_cast<unsigned char>(s[i])))
        throw ParseError("bad exponent", b + i);
      v = v * 10 + (s[i] - '0');
      if (v > 1000000) throw ParseError("exponent out of range", b + i);
    }
    exp10 = eneg ? -v : v;
  }
  mpz_class n(mantissa.empty() ? std::string("0") : mantissa, 10);
  if (neg) n = -n;
  long net = exp10 - frac_digits;
  mpz_class p10;
  mpz_ui_pow_ui(p10.get_mpz_t(), 10, static_cast<unsigned long>(net < 0 ? -net : net));
  if (net >= 0) return Rat(n * p10, mpz_class(1));
  return Rat(n, p10);
}

}  // namespace aclab
