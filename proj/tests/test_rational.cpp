#include <doctest.h>

#include "aclab/q2.hpp"
#include "aclab/rational.hpp"
#include "aclab/rng.hpp"

using namespace aclab;

TEST_CASE("rational literals parse exactly") {
  CHECK(Rat::parse("1/2") == Rat(1, 2));
  CHECK(Rat::parse("-3/6") == Rat(-1, 2));
  CHECK(Rat::parse("7") == Rat(7));
  CHECK(Rat::parse("0.25") == Rat(1, 4));
  CHECK(Rat::parse("1e-4") == Rat(1, 10000));
  CHECK(Rat::parse("2.5e-3") == Rat(1, 400));
  CHECK(Rat::parse("-1.5e2") == Rat(-150));
  CHECK_THROWS_AS(Rat::parse("1/0"), ParseError);
  CHECK_THROWS_AS(Rat::parse("abc"), ParseError);
  CHECK_THROWS_AS(Rat::parse(""), ParseError);
}

TEST_CASE("rationals stay reduced with positive denominator") {
  Rng rng(7);
  for (int i = 0; i < 200; ++i) {
    long a = static_cast<long>(rng.next_below(2000)) - 1000;
    long b = 1 + static_cast<long>(rng.next_below(999));
    Rat q(a, b);
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), q.num().get_mpz_t(), q.den().get_mpz_t());
    CHECK(g == 1);
    CHECK(q.den() > 0);
  }
  CHECK(Rat(4, -8) == Rat(-1, 2));
}

TEST_CASE("pow2 and pow_int") {
  CHECK(Rat::pow2(-3) == Rat(1, 8));
  CHECK(Rat::pow2(4) == Rat(16));
  CHECK(Rat(2, 3).pow_int(3) == Rat(8, 27));
  CHECK(Rat(2, 3).pow_int(-2) == Rat(9, 4));
  CHECK_THROWS_AS(Rat(0).pow_int(-1), DomainError);
}

TEST_CASE("floor ceil round") {
  CHECK(Rat(7, 2).floor() == 3);
  CHECK(Rat(7, 2).ceil() == 4);
  CHECK(Rat(7, 2).round_nearest() == 4);
  CHECK(Rat(-7, 2).floor() == -4);
  CHECK(Rat(-1, 3).round_nearest() == 0);
}

TEST_CASE("q2 sign and arithmetic agree with doubles") {
  Rng rng(11);
  for (int i = 0; i < 300; ++i) {
    Rat p = Rat(static_cast<long>(rng.next_below(400)) - 200, 1 + static_cast<long>(rng.next_below(40)));
    Rat q = Rat(static_cast<long>(rng.next_below(400)) - 200, 1 + static_cast<long>(rng.next_below(40)));
    Q2 v(p, q);
    double d = v.to_double();
    if (std::abs(d) > 1e-9) CHECK(v.sign() == (d > 0 ? 1 : -1));
    CHECK(Rat(v.floor()).to_double() <= d + 1e-9);
    CHECK(d < Rat(v.floor()).to_double() + 1 + 1e-9);
  }
}

TEST_CASE("q2 floor is exact on hard cases") {
  // 1 + 1*sqrt(2) in [2,3)
  CHECK(Q2(Rat(1), Rat(1)).floor() == 2);
  CHECK(Q2(Rat(0), Rat(-1)).floor() == -2);  // -sqrt(2) in [-2,-1)
  CHECK(Q2(Rat(3), Rat(0)).floor() == 3);
  Q2 tiny = Q2(Rat(665857, 470832), Rat(-1));  // continued-fraction convergent, ~ +2e-12
  CHECK(tiny.sign() == 1);
  CHECK(tiny.floor() == 0);
}

TEST_CASE("q2 dist_to_int stays in [0, 1/2]") {
  Rng rng(13);
  for (int i = 0; i < 200; ++i) {
    Q2 v(rng.next_dyadic(20) * Rat(8) - Rat(4), rng.next_dyadic(20) * Rat(4) - Rat(2));
    Q2 d = v.dist_to_int();
    CHECK(d.sign() >= 0);
    CHECK((d - Q2(Rat(1, 2))).sign() <= 0);
  }
}
