#include <doctest.h>

#include <memory>

#include "aclab/checkers.hpp"
#include "aclab/rng.hpp"

using namespace aclab;

namespace {

Interval box2(const Rat& ax, const Rat& ay, const Rat& bx, const Rat& by) {
  return Interval(Point(ax, ay), Point(bx, by));
}

FunctionSpec coord_x() { return FunctionSpec::affine({Rat(1), Rat(0)}, Rat(0)); }

IntervalFamily two_squares() {
  IntervalFamily fam;
  fam.items.push_back(box2(Rat(0), Rat(0), Rat(1, 4), Rat(1, 4)));
  fam.items.push_back(box2(Rat(1, 2), Rat(0), Rat(3, 4), Rat(1, 4)));
  return fam;
}

}  // namespace

TEST_CASE("violation sums on simple families") {
  Sums s = violation_sums(coord_x(), two_squares(), ACClassSpec::one_ac(2));
  CHECK(s.s_meas == Rat(1, 8));
  CHECK(*s.s_osc.exact == Rat(1, 8));

  FunctionSpec c = FunctionSpec::affine({Rat(0), Rat(0)}, Rat(7));
  Sums sc = violation_sums(c, two_squares(), ACClassSpec::one_ac(2));
  CHECK(sc.s_osc.exact->is_zero());

  Sums empty = violation_sums(coord_x(), IntervalFamily{}, ACClassSpec::one_ac(2));
  CHECK(empty.s_meas == Rat(0));
  CHECK(empty.s_osc.exact->is_zero());
}

TEST_CASE("violation sums on the hierarchy T family") {
  auto h = std::make_shared<const Hierarchy>(Hierarchy::build(4));
  FunctionSpec f = FunctionSpec::hierarchy_fn(h, 4);
  IntervalFamily fam;
  for (int m = 2; m <= 4; ++m) {
    auto t = h->tmk_family(m);
    fam.items.insert(fam.items.end(), t.begin(), t.end());
  }
  Sums s = violation_sums(f, fam, ACClassSpec::alpha_ac(Rat(1, 2), 2));
  CHECK(*s.s_osc.exact == Rat(13, 48));  // 1/8 + 1/12 + 1/16
}

TEST_CASE("family preconditions are enforced with indices") {
  IntervalFamily overlapping;
  overlapping.items.push_back(box2(Rat(0), Rat(0), Rat(2), Rat(2)));
  overlapping.items.push_back(box2(Rat(1), Rat(1), Rat(3), Rat(3)));
  CHECK_THROWS_AS(violation_sums(coord_x(), overlapping, ACClassSpec::one_ac(2)), FamilyError);

  IntervalFamily thin;
  thin.items.push_back(box2(Rat(0), Rat(0), Rat(1), Rat(1, 4)));  // regularity 1/4
  try {
    violation_sums(coord_x(), thin, ACClassSpec::alpha_ac(Rat(1, 2), 2));
    FAIL("expected FamilyError");
  } catch (const FamilyError& e) {
    CHECK(e.index() == 0);
  }
  // the same box is fine for 0-AC (no threshold)
  CHECK_NOTHROW(violation_sums(coord_x(), thin, ACClassSpec::zero_ac(2)));
  // and measured by max-side power there
  CHECK(violation_sums(coord_x(), thin, ACClassSpec::zero_ac(2)).s_meas == Rat(1));
}

TEST_CASE("shrunk endpoints for the Hencl-style classes") {
  IntervalFamily fam;
  fam.items.push_back(box2(Rat(0), Rat(0), Rat(1), Rat(1)));
  Sums plain = violation_sums(coord_x(), fam, ACClassSpec::one_ac(2));
  Sums shrunk = violation_sums(coord_x(), fam, ACClassSpec::one_ac_h(Rat(1, 2), 2));
  CHECK(*plain.s_osc.exact == Rat(1));
  CHECK(*shrunk.s_osc.exact == Rat(1, 4));  // |1/2 * dx|^2
  CHECK(plain.s_meas == shrunk.s_meas);
}

TEST_CASE("violation sums are additive over concatenation") {
  Rng rng(5);
  FunctionSpec f = preset("takagi-tent");
  auto rand_family = [&](Rat base) {
    IntervalFamily fam;
    for (int i = 0; i < 4; ++i) {
      Rat side = rng.next_dyadic(10) * Rat(1, 8) + Rat(1, 64);
      Rat x = base + Rat(i) * Rat(1, 2);
      Rat y = rng.next_dyadic(10);
      fam.items.push_back(box2(x, y, x + side, y + side));
    }
    return fam;
  };
  IntervalFamily a = rand_family(Rat(-4));
  IntervalFamily b = rand_family(Rat(4));
  IntervalFamily both = a;
  both.items.insert(both.items.end(), b.items.begin(), b.items.end());
  ACClassSpec cls = ACClassSpec::one_ac(2);
  Sums sa = violation_sums(f, a, cls);
  Sums sb = violation_sums(f, b, cls);
  Sums sboth = violation_sums(f, both, cls);
  CHECK(sboth.s_meas == sa.s_meas + sb.s_meas);
  CHECK(sboth.s_osc.approx ==
        doctest::Approx(sa.s_osc.approx + sb.s_osc.approx).epsilon(1e-12));
}

TEST_CASE("scaling the function scales S_osc by c^n") {
  FunctionSpec f = FunctionSpec::product(Profile::constant(Rat(1)), Profile::tent(), Rat(1, 2));
  FunctionSpec f3 = FunctionSpec::scale(Rat(3), f);
  IntervalFamily fam;
  fam.items.push_back(box2(Rat(0), Rat(0), Rat(1, 8), Rat(1, 8)));
  fam.items.push_back(box2(Rat(1, 4), Rat(1, 4), Rat(5, 16), Rat(5, 16)));
  ACClassSpec cls = ACClassSpec::one_ac(2);
  Sums s1 = violation_sums(f, fam, cls);
  Sums s3 = violation_sums(f3, fam, cls);
  CHECK(*s3.s_osc.exact == Rat(9) * *s1.s_osc.exact);
  CHECK(s3.s_meas == s1.s_meas);
}

TEST_CASE("tent product obeys the M^2 L^2 volume bound on random 1-regular families") {
  FunctionSpec f = FunctionSpec::product(Profile::constant(Rat(1)), Profile::tent(), Rat(1, 2));
  ACClassSpec cls = ACClassSpec::one_ac(2);
  Rng rng(12345);
  for (int rep = 0; rep < 1000; ++rep) {
    IntervalFamily fam;
    int want = 1 + static_cast<int>(rng.next_below(8));
    for (int i = 0; i < want; ++i) {
      Rat side = rng.next_dyadic(12) * Rat(1, 4) + Rat(1, 4096);
      Rat x = rng.next_dyadic(14) * Rat(3) - Rat(3, 2);
      Rat y = rng.next_dyadic(14) * Rat(3) - Rat(3, 2);
      Interval cand = box2(x, y, x + side, y + side);
      bool ok = true;
      for (const Interval& other : fam.items)
        if (cand.intersects(other)) {
          ok = false;
          break;
        }
      if (ok) fam.items.push_back(std::move(cand));
    }
    Sums s = violation_sums(f, fam, cls);
    REQUIRE(s.s_osc.exact.has_value());
    CHECK(*s.s_osc.exact <= Rat(4) * s.s_meas);
  }
}

TEST_CASE("check_family verdicts") {
  Verdict good = check_family(coord_x(), two_squares(), ACClassSpec::one_ac(2), Rat(1), Rat(1));
  CHECK(good.passes);
  Verdict bad = check_family(coord_x(), two_squares(), ACClassSpec::one_ac(2), Rat(1, 4),
                             Rat(1, 16));
  CHECK_FALSE(bad.passes);  // S_meas = 1/8 < 1/4 and S_osc = 1/8 >= 1/16
  Verdict empty = check_family(coord_x(), IntervalFamily{}, ACClassSpec::one_ac(2), Rat(1, 100),
                               Rat(1, 100));
  CHECK(empty.passes);
}

TEST_CASE("lipschitz functions pass 0-AC checks at the (Mn)^n delta") {
  // f(x,y) = x is 1-Lipschitz in l1; for eps, delta = eps/(Mn)^n blocks
  // any violation of the max-side implication
  FunctionSpec f = coord_x();
  ACClassSpec cls = ACClassSpec::zero_ac(2);
  Rat eps(1, 4);
  Rat delta = eps / Rat(4);  // (M n)^n = 4
  Rng rng(21);
  for (int rep = 0; rep < 200; ++rep) {
    IntervalFamily fam;
    Rat x;
    for (int i = 0; i < 5; ++i) {
      Rat w = rng.next_dyadic(12) * Rat(1, 10) + Rat(1, 4096);
      Rat ht = rng.next_dyadic(12) * Rat(1, 10) + Rat(1, 4096);
      fam.items.push_back(
          Interval(Point(x, Rat(0)), Point(x + w, ht)));
      x += w + Rat(1, 100);
    }
    Verdict v = check_family(f, fam, cls, delta, eps);
    if (v.s_meas < delta) CHECK(v.passes);
  }
}

TEST_CASE("cantor profile as an axis function") {
  FunctionSpec f = FunctionSpec::axis_profile(Profile::cantor_profile(), 0, 2);
  CHECK(*f.eval(Point(Rat(1, 4), Rat(9))).exact == Rat(1, 3));
  CHECK(*f.eval(Point(Rat(-2), Rat(0))).exact == Rat(0));
  CHECK(*f.eval(Point(Rat(7), Rat(0))).exact == Rat(1));
}

TEST_CASE("osc_on_ball certified lower bounds") {
  FunctionSpec c = FunctionSpec::affine({Rat(0), Rat(0)}, Rat(3));
  Ball ball(Point(Rat(0), Rat(0)), Rat(1), BallShape::Euclidean);
  Sampler s;
  s.grid_resolution = 4;
  CHECK(osc_on_ball(c, ball, s).lower.exact->is_zero());

  OscBound b = osc_on_ball(coord_x(), ball, s);
  CHECK(*b.lower.exact == Rat(2));  // axis extremes included deterministically

  // monotone: adding random samples on top of a coarse grid never decreases
  FunctionSpec f = preset("takagi-tent");
  Ball small(Point(Rat(1, 8), Rat(1, 8)), Rat(1, 16), BallShape::SupNorm);
  Sampler coarse;
  coarse.sample_count = 16;
  coarse.seed = 9;
  Sampler fine = coarse;
  fine.sample_count = 128;  // same stream: the first 16 points repeat
  double lo1 = osc_on_ball(f, small, coarse).lower.approx;
  double lo2 = osc_on_ball(f, small, fine).lower.approx;
  CHECK(lo2 >= lo1 - 1e-15);

  // zero support: a ball fully outside S_d
  Ball outside(Point(Rat(10), Rat(10)), Rat(1, 2), BallShape::SupNorm);
  Sampler g;
  g.grid_resolution = 3;
  CHECK(osc_on_ball(f, outside, g).lower.approx == 0.0);
}

TEST_CASE("lip_at on linear and kinked functions") {
  std::vector<Rat> radii;
  for (int k = 2; k <= 10; ++k) radii.push_back(Rat::pow2(-k));
  FunctionSpec lin = FunctionSpec::affine({Rat(1), Rat(1)}, Rat(0));
  LipScan s = lip_at(lin, Point(Rat(1, 3), Rat(1, 7)), radii, 32, 1);
  for (const auto& [r, est] : s.estimates) CHECK(est == doctest::Approx(std::sqrt(2.0)).epsilon(1e-6));
  CHECK_FALSE(s.diverging);

  FunctionSpec absx = FunctionSpec::axis_profile(Profile::piecewise_linear({{Rat(-4), Rat(4)},
                                                                            {Rat(0), Rat(0)},
                                                                            {Rat(4), Rat(4)}}),
                                                 0, 2);
  LipScan a = lip_at(absx, Point(Rat(0), Rat(0)), radii, 32, 1);
  CHECK(a.estimates.back().second == doctest::Approx(1.0).epsilon(1e-6));
  CHECK_FALSE(a.diverging);

  // at s = 0 the inner Takagi argument is the dyadic 1/2, where every
  // offset of scale 2^-n yields a quotient growing linearly in n
  FunctionSpec tak = preset("takagi-tent");
  LipScan t = lip_at(tak, Point(Rat(1, 4), Rat(1, 4)), radii, 64, 1);
  CHECK(t.diverging);

  // |s|^{1/2} along the diagonal coordinate: ratios grow like r^{-1/2}
  FunctionSpec w = preset("w11-not-w12");
  LipScan ws = lip_at(w, Point(Rat(0), Rat(0)), radii, 64, 1);
  CHECK(ws.diverging);
}

TEST_CASE("dir_derivative is exact on affine functions") {
  FunctionSpec f = FunctionSpec::affine({Rat(2), Rat(-3)}, Rat(1));
  Rng rng(77);
  for (int rep = 0; rep < 30; ++rep) {
    Point dir(Rat(1 + static_cast<long>(rng.next_below(5)), 1 + static_cast<long>(rng.next_below(4))),
              Rat(static_cast<long>(rng.next_below(9)) - 4, 3));
    if (dir[0].is_zero() && dir[1].is_zero()) continue;
    std::vector<Rat> steps{Rat(1, 8), Rat(1, 64), Rat(1, 1024)};
    DirDerivScan scan = dir_derivative(f, Point(Rat(1, 3), Rat(2, 7)), dir, steps);
    double nx = dir[0].to_double(), ny = dir[1].to_double();
    double expect = (2 * nx - 3 * ny) / std::sqrt(nx * nx + ny * ny);
    CHECK(scan.converged);
    CHECK(scan.value == doctest::Approx(expect).epsilon(1e-12));
  }
}

TEST_CASE("takagi-tent directional dichotomy at one point") {
  FunctionSpec f = preset("takagi-tent");
  std::vector<Rat> steps;
  for (int k = 4; k <= 16; ++k) steps.push_back(Rat::pow2(-k));
  Point p(Rat(1, 10), Rat(3, 10));  // s = 1/10, t = 1/5, inside the support
  DirDerivScan diag = dir_derivative(f, p, Point(Rat(1), Rat(1)), steps);
  CHECK(diag.converged);
  // along x2 the tent differentiates cleanly: -2 T(s+1/2) / sqrt(2)
  double expect = -std::sqrt(2.0) * takagi(Rat(1, 10) + Rat(1, 2), 64).partial.to_double();
  CHECK(diag.value == doctest::Approx(expect).epsilon(1e-9));
  DirDerivScan axis = dir_derivative(f, p, Point(Rat(1), Rat(0)), steps);
  CHECK_FALSE(axis.converged);
}

TEST_CASE("pole on the stencil propagates") {
  FunctionSpec f = preset("unbounded");
  std::vector<Rat> steps{Rat(1, 8)};
  CHECK_THROWS_AS(dir_derivative(f, Point(Rat(1, 8), Rat(-1, 8)), Point(Rat(1), Rat(-1)), steps),
                  PoleError);
}

TEST_CASE("dirichlet energy on exact model cases") {
  FunctionSpec fx = coord_x();
  Interval rect = box2(Rat(0), Rat(0), Rat(1), Rat(1));
  EnergyScan s = dirichlet_energy(fx, rect, 5);
  for (double e : s.energy) CHECK(e == doctest::Approx(1.0).epsilon(1e-14));
  CHECK_FALSE(s.divergence_suspected);

  FunctionSpec tent = FunctionSpec::product(Profile::constant(Rat(1)), Profile::tent(), Rat(1, 2));
  Interval inner = box2(Rat(-1, 4), Rat(-1, 4), Rat(1, 4), Rat(1, 4));
  EnergyScan t = dirichlet_energy(tent, inner, 6);
  for (double e : t.energy) CHECK(e == doctest::Approx(0.5).epsilon(1e-14));

  FunctionSpec w = preset("w11-not-w12");
  EnergyScan dv = dirichlet_energy(w, rect, 7);
  CHECK(dv.divergence_suspected);
  for (std::size_t i = 1; i < dv.energy.size(); ++i) CHECK(dv.energy[i] > dv.energy[i - 1]);
}

TEST_CASE("kac euclidean interval families are rejected toward the ball checker") {
  CHECK_THROWS_AS(violation_sums(coord_x(), two_squares(),
                                 ACClassSpec::k_ac(BallShape::Euclidean, 2)),
                  FamilyError);
  // sup-norm balls are cubes: endpoint lower bounds work
  Sums s = violation_sums(coord_x(), two_squares(), ACClassSpec::k_ac(BallShape::SupNorm, 2));
  CHECK(*s.s_osc.exact == Rat(1, 8));
}
