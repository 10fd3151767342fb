#include <doctest.h>

#include <cmath>

#include "aclab/hierarchy.hpp"
#include "aclab/rng.hpp"

using namespace aclab;

namespace {

const Hierarchy& depth4() {
  static Hierarchy h = Hierarchy::build(4);
  return h;
}

}  // namespace

TEST_CASE("count and peak formulas") {
  CHECK(Hierarchy::r_formula(1) == 1);
  CHECK(Hierarchy::r_formula(2) == 8);
  CHECK(Hierarchy::r_formula(3) == 192);
  CHECK(Hierarchy::r_formula(5) == 737280);
  CHECK(Hierarchy::omega_formula(1) == Rat(1, 2));
  CHECK(Hierarchy::omega_formula(2) == Rat(1, 8));
  CHECK(Hierarchy::omega_formula(5) == Rat(1, 3840));
}

TEST_CASE("built levels match the closed forms") {
  const Hierarchy& h = depth4();
  for (int m = 1; m <= 4; ++m) {
    LevelStats st = h.stats(m);
    CHECK(st.count == Hierarchy::r_formula(m));
    CHECK(st.omega == Hierarchy::omega_formula(m));
    CHECK(st.r_omega_sq == Rat(1, 4 * m));
    CHECK(mpz_class(Hierarchy::r_formula(m + 1) / Hierarchy::r_formula(m)) == 4 * m * (m + 1));
  }
}

TEST_CASE("level measures drop by more than 1/8") {
  const Hierarchy& h = depth4();
  CHECK(h.stats(1).total_measure == Rat(1));
  Rat prev = h.stats(1).total_measure;
  for (int m = 2; m <= 4; ++m) {
    Rat cur = h.stats(m).total_measure;
    CHECK(cur < prev / Rat(8));
    CHECK(cur < Rat::pow2(-3 * (m - 1)));  // (1/8)^{m-1} L^2(Q11)
    prev = cur;
  }
}

TEST_CASE("per-level squares are pairwise disjoint and nest in their parents") {
  const Hierarchy& h = depth4();
  Rng rng(3);
  for (int m = 2; m <= 4; ++m) {
    const auto& sqs = h.level(m);
    const auto& parents = h.level(m - 1);
    for (int rep = 0; rep < 50; ++rep) {
      const Square& s = sqs[rng.next_below(sqs.size())];
      const Square& p = parents[static_cast<std::size_t>(s.parent)];
      // strictly inside the parent's corner squares
      CHECK(abs(s.cx - p.cx) + s.half < p.half);
      CHECK(abs(s.cy - p.cy) + s.half < p.half);
      CHECK(abs(s.cx - p.cx) - s.half > p.half / Rat(2));
      CHECK(abs(s.cy - p.cy) - s.half > p.half / Rat(2));
    }
  }
  // depth-4 build already verified disjointness exactly; re-check one level
  std::vector<Interval> boxes;
  for (const Square& s : h.level(3))
    boxes.emplace_back(Point(s.cx - s.half, s.cy - s.half), Point(s.cx + s.half, s.cy + s.half));
  CHECK(pairwise_disjoint(boxes, Disjointness::Closed));
}

TEST_CASE("ramp tables are continuous, nonincreasing, with the stated nodes") {
  for (int m : {1, 2, 3, 5}) {
    Rat omega = Hierarchy::omega_formula(m);
    Rat d(1, 4);
    RampTable t = RampTable::make(m, omega, d);
    CHECK(t.eval(Rat(0)) == omega);
    CHECK(t.eval(d) == Rat(0));
    CHECK(t.eval(d * Rat(2)) == Rat(0));
    for (int i = 1; i < m; ++i)
      CHECK(t.eval(d / Rat::pow2(i)) == Rat(i) * omega / Rat(m));
    Rng rng(100 + m);
    Rat prev_rho, prev_val = omega;
    bool first = true;
    for (int k = 0; k <= 200; ++k) {
      Rat rho = Rat(k) * d / Rat(200);
      Rat val = t.eval(rho);
      if (!first) CHECK(val <= prev_val);
      // continuity probe
      Rat eps(1, 1 << 20);
      if (rho > eps) CHECK(abs(t.eval(rho - eps) - val) <= omega);
      prev_val = val;
      first = false;
    }
  }
}

TEST_CASE("evaluation on corner squares, band, and outside") {
  const Hierarchy& h = depth4();
  // Q11 = [0,1]^2: center (1/2,1/2), d1 = 1/2, d = 1/4
  CHECK(h.eval_level(1, Point(Rat(1, 2), Rat(1, 2))) == Rat(1, 2));   // rho 0 via band
  CHECK(h.eval_level(1, Point(Rat(3, 4), Rat(3, 4))) == Rat(1, 2));   // C1 itself
  CHECK(h.eval_level(1, Point(Rat(3, 4), Rat(1))) == Rat(0));         // B1: rho = d
  CHECK(h.eval_level(1, Point(Rat(1), Rat(1))) == Rat(0));            // A1: rho = 2d
  CHECK(h.eval_level(1, Point(Rat(1), Rat(0))) == Rat(0));            // off the polygon
  CHECK(h.eval_level(1, Point(Rat(5), Rat(5))) == Rat(0));            // outside Q11
  CHECK(h.eval_partial(Point(Rat(7, 8), Rat(7, 8)), 1) == Rat(0));    // corner-square center: rho = d
}

TEST_CASE("band values are constant along slope-1 lines") {
  const Hierarchy& h = depth4();
  Rng rng(7);
  for (int rep = 0; rep < 200; ++rep) {
    // points of the band hexagon of Q11: |x' - y'| <= 1/4 around (1/2,1/2)
    Rat u = rng.next_dyadic(16) * Rat(1, 2) - Rat(1, 4);   // x' - y'
    Rat x = Rat(1, 2) + rng.next_dyadic(16) * Rat(1, 4);
    Point p(x, x - u);
    Rat shift = rng.next_dyadic(16) * Rat(1, 8);
    Point q(p[0] + shift, p[1] + shift);
    Interval q11 = h.root();
    if (!q11.contains(p) || !q11.contains(q)) continue;
    bool p_in_corner = (p[0] >= Rat(3, 4) && p[1] >= Rat(3, 4)) ||
                       (p[0] <= Rat(1, 4) && p[1] <= Rat(1, 4));
    bool q_in_corner = (q[0] >= Rat(3, 4) && q[1] >= Rat(3, 4)) ||
                       (q[0] <= Rat(1, 4) && q[1] <= Rat(1, 4));
    if (p_in_corner || q_in_corner) continue;
    CHECK(h.eval_level(1, p) == h.eval_level(1, q));
  }
}

TEST_CASE("T_mk witnesses: half regularity and exact endpoint differences") {
  const Hierarchy& h = depth4();
  for (int m = 1; m <= 4; ++m) {
    auto fam = h.tmk_family(m);
    CHECK(fam.size() == h.level(m).size());
    Rng rng(m);
    for (int rep = 0; rep < 60; ++rep) {
      std::int64_t k = static_cast<std::int64_t>(rng.next_below(fam.size()));
      CHECK(fam[static_cast<std::size_t>(k)].regularity() == Rat(1, 2));
      auto audit = h.audit_tmk(m, k);
      CHECK(abs(audit.at_center - audit.at_corner) == h.omega(m));
    }
    auto level_audit = h.audit_tmk_level(m, 2);
    CHECK(level_audit.all_diffs_equal_omega);
    CHECK(level_audit.sum_sq_diff == Rat(1, 4 * m));
  }
}

TEST_CASE("per-level lipschitz estimate stays under the analytic bound") {
  const Hierarchy& h = depth4();
  Rng rng(11);
  for (int m = 1; m <= 3; ++m) {
    // min ramp third-width over the level: (d/2^{m-1})/3 with the smallest d
    Rat min_d;
    bool first = true;
    for (const Square& s : h.level(m)) {
      Rat d = s.half / Rat(2);
      if (first || d < min_d) min_d = d;
      first = false;
    }
    Rat third = min_d / Rat::pow2(m - 1) / Rat(3);
    double bound = (h.omega(m) / Rat(m) / third).to_double();
    const auto& sqs = h.level(m);
    double worst = 0;
    for (int rep = 0; rep < 500; ++rep) {
      const Square& s = sqs[rng.next_below(sqs.size())];
      Point p(s.cx + (rng.next_dyadic(20) * Rat(2) - Rat(1)) * s.half,
              s.cy + (rng.next_dyadic(20) * Rat(2) - Rat(1)) * s.half);
      Point q(p[0] + (rng.next_dyadic(20) * Rat(2) - Rat(1)) * s.half / Rat(64),
              p[1] + (rng.next_dyadic(20) * Rat(2) - Rat(1)) * s.half / Rat(64));
      double df = std::abs((h.eval_level(m, p) - h.eval_level(m, q)).to_double());
      double dx = (p[0] - q[0]).to_double(), dy = (p[1] - q[1]).to_double();
      double dist = std::sqrt(dx * dx + dy * dy);
      if (dist > 0) worst = std::max(worst, df / dist);
    }
    CHECK(worst <= bound * 1.01);
  }
}

TEST_CASE("capacity cap rejects oversized builds") {
  CHECK_THROWS_AS(Hierarchy::build(9), CapacityError);
  BuildLimits tiny;
  tiny.square_cap = 100;
  Point lo(Rat(0), Rat(0)), hi(Rat(1), Rat(1));
  CHECK_THROWS_AS(Hierarchy::build(3, Interval(lo, hi), tiny), CapacityError);
  CHECK_THROWS_AS(Hierarchy::build(0), DomainError);
  CHECK_THROWS_AS(Hierarchy::build(2, Interval(Point(Rat(0), Rat(0)), Point(Rat(1), Rat(2)))),
                  DomainError);
}

TEST_CASE("hierarchy works from a non-unit root square") {
  Point lo(Rat(-3), Rat(1)), hi(Rat(-1), Rat(3));
  Hierarchy h = Hierarchy::build(3, Interval(lo, hi));
  CHECK(h.stats(3).count == 192);
  CHECK(h.stats(2).total_measure < Rat(4) / Rat(8));
  auto audit = h.audit_tmk_level(2, 1);
  CHECK(audit.all_diffs_equal_omega);
  CHECK(audit.sum_sq_diff == Rat(1, 8));
  CHECK(h.eval_level(1, Point(Rat(-2), Rat(2))) == Rat(1, 2));  // center of the root
}
