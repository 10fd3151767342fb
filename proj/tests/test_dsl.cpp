#include <doctest.h>

#include "aclab/dsl.hpp"

using namespace aclab;

TEST_CASE("function DSL round trips the catalog forms") {
  FunctionSpec tt = parse_function("preset:takagi-tent");
  CHECK(tt.as<TakagiTentFn>() != nullptr);
  FunctionSpec fp = parse_function("product(h=const:1, g=tent, d=1/2)");
  const auto* p = fp.as<ProductFn>();
  REQUIRE(p != nullptr);
  CHECK(p->d == Rat(1, 2));
  CHECK(p->h.kind() == Profile::Kind::Constant);
  CHECK(p->g.kind() == Profile::Kind::Tent);

  FunctionSpec fq = parse_function("product(h=invsqrtabs, g=const:2, d=1/4)");
  const auto* q = fq.as<ProductFn>();
  REQUIRE(q != nullptr);
  CHECK(q->h.param() == Rat(1, 4));  // default support half = d

  FunctionSpec fcb = parse_function("product(h=const:1, g=cbrt, d=1/2)");
  CHECK(fcb.as<ProductFn>()->g.param() == Rat(1, 4));  // cbrt default half = d/2

  FunctionSpec fa = parse_function("affine:2x-3y+1/2");
  const auto* a = fa.as<AffineFn>();
  REQUIRE(a != nullptr);
  CHECK(a->coeffs[0] == Rat(2));
  CHECK(a->coeffs[1] == Rat(-3));
  CHECK(a->offset == Rat(1, 2));
  FunctionSpec fax = parse_function("affine:x");
  CHECK(fax.as<AffineFn>()->coeffs.size() == 2);  // planar by default

  FunctionSpec fcd = parse_function("cantordir(n=3)");
  CHECK(fcd.as<CantorDirectionalFn>()->n == 3);
  FunctionSpec faxp = parse_function("axis(p=sqrtabs:10, axis=0)");
  CHECK(faxp.as<AxisProfileFn>() != nullptr);
  FunctionSpec fsum = parse_function("sum(preset:takagi-tent, affine:x+y)");
  CHECK(fsum.as<SumFn>()->terms.size() == 2);
  FunctionSpec fsc = parse_function("scale(3, affine:x)");
  CHECK(fsc.as<ScaleFn>()->c == Rat(3));
  FunctionSpec ftt2 = parse_function("takagitent(d=1/2, k=16)");
  CHECK(ftt2.as<TakagiTentFn>()->K == 16);
}

TEST_CASE("parse errors carry a column") {
  CHECK_THROWS_AS(parse_function("nonsense"), ParseError);
  CHECK_THROWS_AS(parse_function("product(h=const:1)"), ParseError);
  CHECK_THROWS_AS(parse_function("preset:unknown-preset"), DomainError);
  CHECK_THROWS_AS(parse_function("affine:2q"), ParseError);
  CHECK_THROWS_AS(parse_function("sum(affine:x"), ParseError);
  try {
    parse_function("product(h=zzz:1, g=tent, d=1/2)");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("at 1:") != std::string::npos);
  }
}

TEST_CASE("class strings") {
  CHECK(parse_class("1ac", 2).kind == ACKind::OneAC);
  CHECK(parse_class("alpha:1/2", 2).alpha == Rat(1, 2));
  CHECK(parse_class("0ac", 3).n == 3);
  CHECK(parse_class("strong0ac", 2).kind == ACKind::StrongZeroAC);
  CHECK(parse_class("ach:1/4", 2).lambda == Rat(1, 4));
  CHECK(parse_class("1ach:1/2", 2).kind == ACKind::OneACH);
  CHECK(parse_class("kac:sup", 2).ball_shape == BallShape::SupNorm);
  CHECK_THROWS_AS(parse_class("2ac", 2), ParseError);
  CHECK_THROWS_AS(parse_class("alpha:7", 2), DomainError);
}

TEST_CASE("points and pairs") {
  Point p = parse_point("1/4,7");
  CHECK(p[0] == Rat(1, 4));
  CHECK(p[1] == Rat(7));
  auto [a, b] = parse_point_pair("0,0:1,0");
  CHECK(a == Point(Rat(0), Rat(0)));
  CHECK(b == Point(Rat(1), Rat(0)));
  Q2Point q = parse_q2_point("1/2+1/3r2,-r2");
  CHECK(q[0].rational_part() == Rat(1, 2));
  CHECK(q[0].sqrt2_part() == Rat(1, 3));
  CHECK(q[1].sqrt2_part() == Rat(-1));
  CHECK_THROWS_AS(parse_point("1/2+1/3r2,0"), ParseError);  // rational-only context
  CHECK_THROWS_AS(parse_point(""), ParseError);
}
