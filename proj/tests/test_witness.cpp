#include <doctest.h>

#include <memory>

#include "aclab/report_json.hpp"
#include "aclab/rng.hpp"
#include "aclab/witness.hpp"

using namespace aclab;

namespace {

FunctionSpec coord_x() { return FunctionSpec::affine({Rat(1), Rat(0)}, Rat(0)); }

}  // namespace

TEST_CASE("strong-0-AC thin-interval refuter") {
  FunctionSpec f = coord_x();
  auto rep = refute_strong0ac(f, Point(Rat(0), Rat(0)), Point(Rat(1), Rat(0)), Rat(1, 10000));
  CHECK(rep.violates());
  CHECK(rep.s_meas == Rat(1, 20000));  // t = delta/2
  CHECK(*rep.s_osc.exact == Rat(1));
  CHECK(rep.family.items.size() == 1);
  CHECK(rep.family.items[0] ==
        Interval(Point(Rat(0), Rat(0)), Point(Rat(1), Rat(1, 20000))));

  FunctionSpec c = FunctionSpec::affine({Rat(0), Rat(0)}, Rat(5));
  CHECK_THROWS_WITH_AS(refute_strong0ac(c, Point(Rat(0), Rat(0)), Point(Rat(1), Rat(0)), Rat(1)),
                       doctest::Contains("not a witness pair"), DomainError);
  CHECK_THROWS_AS(refute_strong0ac(f, Point(Rat(0), Rat(0)), Point(Rat(1), Rat(1)), Rat(1)),
                  DomainError);  // differs in two coordinates
}

TEST_CASE("0-AC pigeonhole refuter on sqrt|x|") {
  FunctionSpec f = FunctionSpec::axis_profile(Profile::sqrt_abs(Rat(10)), 0, 2);
  Rat h(1, 100);
  auto rep = refute_0ac(f, Point(h * h, Rat(0)), Point(Rat(0), Rat(0)), Rat(100), Rat(1, 10000));
  CHECK(rep.violates());
  CHECK(rep.cls.kind == ACKind::ZeroAC);
  CHECK(rep.epsilon == Rat(1, 27));
  CHECK(rep.s_meas < Rat(1, 10000));
  CHECK(rep.s_osc.lower() >= 1.0 / 27);
  CHECK(rep.family.mode == Disjointness::Interior);

  // a Lipschitz function has no such pair
  CHECK_THROWS_WITH_AS(
      refute_0ac(coord_x(), Point(Rat(1, 100), Rat(0)), Point(Rat(0), Rat(0)), Rat(50), Rat(1, 100)),
      doctest::Contains("ratio precondition"), DomainError);
}

TEST_CASE("0-AC refuter on the cbrt product near the diagonal axis") {
  FunctionSpec cb = preset("cbrt-product");
  // pair along x2: |f| jumps like cbrt(t) over l1 distance 2t
  Rat t(1, 1 << 20);
  static const DiagBasis basis(2);
  Point p1 = basis.to_std(Rat(0), Rat(0));
  Point p2 = basis.to_std(Rat(0), t);
  auto rep = refute_0ac(cb, p2, p1, Rat(1000), Rat(1, 10000));
  CHECK(rep.violates());
  CHECK(rep.s_osc.lower() >= 1.0 / 27);
}

TEST_CASE("product stack refuter on cbrt and tent") {
  FunctionSpec cb = preset("cbrt-product");
  auto rep = refute_product_1ac(cb, Rat(1, 100), 1000);
  CHECK(rep.violates());
  CHECK(rep.s_meas == Rat(1, 4000));
  CHECK(rep.s_osc.approx == doctest::Approx(6.2996).epsilon(1e-3));
  CHECK(rep.family.items.size() == 1000);

  auto doubled = refute_product_1ac(cb, Rat(1, 100), 2000);
  CHECK(doubled.s_osc.approx / rep.s_osc.approx >= std::pow(2.0, 1.0 / 3) * 0.95);

  FunctionSpec tent = FunctionSpec::product(Profile::constant(Rat(1)), Profile::tent(), Rat(1, 2));
  auto incon = refute_product_1ac(tent, Rat(1, 100), 1000);
  CHECK_FALSE(incon.violates());

  CHECK_THROWS_AS(refute_product_1ac(coord_x(), Rat(1, 100), 10), DomainError);
}

TEST_CASE("half-AC refuter over the hierarchy") {
  Hierarchy h = Hierarchy::build(4);
  auto rep = refute_half_ac(h, 2, 4, 2);
  CHECK(rep.violates());
  CHECK(*rep.s_osc.exact == Rat(13, 48));
  CHECK(rep.epsilon == Rat(13, 48));
  CHECK(rep.s_meas < Rat(1, 8));
  CHECK(rep.family.items.size() == 8 + 192 + 9216);
  CHECK(rep.cls.kind == ACKind::AlphaAC);
  CHECK(rep.cls.alpha == Rat(1, 2));

  auto level3 = refute_half_ac(h, 3, 3, 2);
  CHECK(level3.s_meas < Rat::pow2(-6));  // (1/8)^2 L^2(Q11)
  CHECK(*level3.s_osc.exact == Rat(1, 12));

  CHECK_THROWS_WITH_AS(refute_half_ac(h, 2, 7, 1), doctest::Contains("depth too small"),
                       DomainError);
  CHECK_THROWS_AS(refute_half_ac(h, 1, 3, 1), DomainError);
}

TEST_CASE("greedy finds the analytic violation on cbrt-product") {
  auto rep = greedy_search(preset("cbrt-product"), ACClassSpec::one_ac(2), Rat(1, 100));
  CHECK(rep.violates());
  CHECK(rep.s_osc.lower() >= 1.0);
  // fully deterministic for a fixed seed
  auto rep2 = greedy_search(preset("cbrt-product"), ACClassSpec::one_ac(2), Rat(1, 100));
  CHECK(dump_json(to_json(rep)) == dump_json(to_json(rep2)));
}

TEST_CASE("greedy is inconclusive on Lipschitz-bounded cases") {
  auto rep = greedy_search(coord_x(), ACClassSpec::one_ac(2), Rat(1, 100));
  CHECK_FALSE(rep.violates());
  REQUIRE(rep.s_osc.exact.has_value());
  CHECK(*rep.s_osc.exact <= rep.s_meas);  // |df|^2 = measure per 1-regular box

  FunctionSpec c = FunctionSpec::affine({Rat(0), Rat(0)}, Rat(3));
  auto flat = greedy_search(c, ACClassSpec::one_ac(2), Rat(1, 100));
  CHECK_FALSE(flat.violates());
  CHECK(flat.s_osc.approx == 0.0);
}

TEST_CASE("oracle matches the hand-computed optimum") {
  auto rep = oracle_max(coord_x(), 2, 1, Rat(1, 10), ACClassSpec::one_ac(2));
  REQUIRE(rep.s_osc.exact.has_value());
  CHECK(*rep.s_osc.exact == Rat(1, 16));
  CHECK(rep.s_meas == Rat(1, 16));
  CHECK(rep.family.items.size() == 1);

  FunctionSpec c = FunctionSpec::affine({Rat(0), Rat(0)}, Rat(1));
  auto flat = oracle_max(c, 2, 1, Rat(1, 10), ACClassSpec::one_ac(2));
  CHECK(flat.s_osc.approx == 0.0);

  OracleLimits tiny;
  tiny.family_cap = 5;
  CHECK_THROWS_AS(oracle_max(coord_x(), 3, 2, Rat(1, 10), ACClassSpec::one_ac(2), tiny),
                  CapacityError);
}

TEST_CASE("grid-restricted greedy never beats the oracle") {
  Rng rng(2024);
  for (int inst = 0; inst < 8; ++inst) {
    FunctionSpec f = FunctionSpec::affine(
        {Rat(static_cast<long>(rng.next_below(9)) - 4, 2), Rat(static_cast<long>(rng.next_below(9)) - 4, 2)},
        Rat(0));
    Rat delta(1 + static_cast<long>(rng.next_below(3)), 20);
    ACClassSpec cls = ACClassSpec::one_ac(2);
    auto orc = oracle_max(f, 2, 2, delta, cls);
    GreedyBudget budget;
    budget.seed = 100 + static_cast<std::uint64_t>(inst);
    auto greedy = greedy_search(f, cls, delta, budget, 2);
    REQUIRE(orc.s_osc.exact.has_value());
    REQUIRE(greedy.s_osc.exact.has_value());
    CHECK(*greedy.s_osc.exact <= *orc.s_osc.exact);
  }
}

TEST_CASE("witness reports re-verify before claiming a violation") {
  auto rep = refute_product_1ac(preset("cbrt-product"), Rat(1, 100), 500);
  REQUIRE(rep.violates());
  CHECK(pairwise_disjoint(rep.family.items, rep.family.mode));
  for (const Interval& box : rep.family.items) CHECK(box.regularity() == Rat(1));
  Rat meas;
  for (const Interval& box : rep.family.items) meas += box.measure();
  CHECK(meas == rep.s_meas);
  CHECK(meas < rep.delta);
}

TEST_CASE("cantor cover images tile the unit interval") {
  for (int j : {0, 1, 2, 5, 10}) {
    auto c = cantor_cover_check(j);
    CHECK(c.images_tile_unit);
    CHECK(c.total_length == Rat(2, 3).pow_int(j));
  }
}
