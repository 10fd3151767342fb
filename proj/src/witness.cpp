#include "aclab/witness.hpp"

#include <algorithm>
#include <cmath>

#include "aclab/error.hpp"
#include "aclab/rng.hpp"

namespace aclab {

namespace {

bool certified_ge(const Value& v, const Rat& bound) {
  if (v.is_exact()) return *v.exact >= bound;
  return v.lower() >= bound.to_double();
}

Rat rat_from_double(double x) {
  mpq_class q;
  mpq_set_d(q.get_mpq_t(), x);
  return Rat(q);
}

WitnessReport finish_with_check(const FunctionSpec& f, WitnessReport rep,
                                const ACClassSpec& cls, const Rat& delta, const Rat& eps) {
  rep.cls = cls;
  rep.delta = delta;
  rep.epsilon = eps;
  Verdict v = check_family(f, rep.family, cls, delta, eps);
  rep.s_meas = v.s_meas;
  rep.s_osc = v.s_osc;
  rep.verdict = v.passes ? WitnessReport::Outcome::Inconclusive
                         : WitnessReport::Outcome::Violates;
  if (!v.notes.empty()) rep.notes += (rep.notes.empty() ? "" : "; ") + v.notes;
  return rep;
}

}  // namespace

WitnessReport refute_strong0ac(const FunctionSpec& f, const Point& a, const Point& b,
                               const Rat& delta) {
  const int n = f.dimension();
  if (n < 2) throw DomainError("thin-interval refuter needs dimension >= 2");
  if (a.dim() != n || b.dim() != n) throw DomainError("point dimension mismatch");
  if (delta.sign() <= 0) throw DomainError("delta must be positive");
  int j = -1;
  for (int i = 0; i < n; ++i) {
    if (a[i] != b[i]) {
      if (j >= 0) throw DomainError("witness points must differ in exactly one coordinate");
      j = i;
    }
  }
  if (j < 0) throw DomainError("witness points must differ in exactly one coordinate");

  Value fa = f.eval(a);
  Value fb = f.eval(b);
  Value diff0 = abs(fa - fb);
  bool nonzero = diff0.is_exact() ? !diff0.exact->is_zero() : diff0.lower() > 0;
  if (!nonzero) throw DomainError("not a witness pair: f(a) = f(b) within evaluation error");

  const Rat side = abs(b[j] - a[j]);
  Rat t = delta / (Rat(2) * side);
  while (t.pow_int(n - 1) * side >= delta) t /= Rat(2);

  auto ge_half = [&](const Value& d) {
    if (d.is_exact() && diff0.is_exact()) return *d.exact >= *diff0.exact / Rat(2);
    return d.lower() >= diff0.upper() / 2.0;
  };

  for (int iter = 0; iter < 200; ++iter) {
    Point x = b;
    for (int i = 0; i < n; ++i)
      if (i != j) x[i] += t;
    Value fx = f.eval(x);
    Value dt = abs(fa - fx);
    if (ge_half(dt)) {
      WitnessReport rep;
      rep.family.items.emplace_back(a, x);
      rep.family.mode = Disjointness::Closed;
      rep.method = "analytic:strong0ac";
      rep.notes = "t=" + t.str() + ", pair coordinate " + std::to_string(j);
      Rat eps = diff0.is_exact() ? (*diff0.exact / Rat(2)).pow_int(n)
                                 : rat_from_double(diff0.lower() / 2.0).pow_int(n);
      return finish_with_check(f, std::move(rep), ACClassSpec::strong_zero_ac(n), delta, eps);
    }
    t /= Rat(2);
  }
  WitnessReport rep;
  rep.cls = ACClassSpec::strong_zero_ac(n);
  rep.delta = delta;
  rep.method = "analytic:strong0ac";
  rep.notes = "evaluated difference never stabilized above half the pair difference";
  return rep;
}

WitnessReport refute_0ac(const FunctionSpec& f, const Point& x, const Point& y, const Rat& ratio,
                         const Rat& delta) {
  const int n = f.dimension();
  if (n < 2) throw DomainError("pigeonhole refuter needs dimension >= 2");
  if (x.dim() != n || y.dim() != n) throw DomainError("point dimension mismatch");
  if (ratio.sign() <= 0 || delta.sign() <= 0) throw DomainError("ratio and delta must be positive");

  auto l1 = [&](const Point& u, const Point& v) {
    Rat s;
    for (int i = 0; i < n; ++i) s += abs(u[i] - v[i]);
    return s;
  };
  const Rat slack(999999999, 1000000000);

  Value fdiff = abs(f.eval(x) - f.eval(y));
  Rat dist = l1(x, y);
  if (dist.is_zero()) throw DomainError("witness pair coincides");
  if (!certified_ge(fdiff, ratio * dist * slack))
    throw DomainError("pair fails the ratio precondition |f(x)-f(y)| >= m |x-y|");

  // coordinate chain z_0 = y, ..., z_n = x
  std::vector<Point> chain;
  chain.reserve(static_cast<std::size_t>(n + 1));
  for (int jj = 0; jj <= n; ++jj) {
    Point z = y;
    for (int i = 0; i < jj; ++i) z[i] = x[i];
    chain.push_back(std::move(z));
  }
  std::vector<Value> fz;
  fz.reserve(chain.size());
  for (const Point& z : chain) fz.push_back(f.eval(z));

  int best_j = -1;
  double best_ratio = -1;
  for (int jj = 1; jj <= n; ++jj) {
    Rat dz = l1(chain[static_cast<std::size_t>(jj)], chain[static_cast<std::size_t>(jj - 1)]);
    if (dz.is_zero()) continue;
    Value df = abs(fz[static_cast<std::size_t>(jj)] - fz[static_cast<std::size_t>(jj - 1)]);
    double r = df.lower() / dz.to_double();
    if (r > best_ratio) {
      best_ratio = r;
      best_j = jj;
    }
  }
  WitnessReport fail;
  fail.cls = ACClassSpec::zero_ac(n);
  fail.delta = delta;
  fail.method = "analytic:0ac";
  if (best_j < 0) {
    fail.notes = "no usable coordinate step in the chain";
    return fail;
  }
  const Point& zj = chain[static_cast<std::size_t>(best_j)];
  const Point& zp = chain[static_cast<std::size_t>(best_j - 1)];
  const Rat dz = l1(zj, zp);
  Value gamma = abs(fz[static_cast<std::size_t>(best_j)] - fz[static_cast<std::size_t>(best_j - 1)]);
  if (!certified_ge(gamma, ratio * dz * slack)) {
    fail.notes = "pigeonhole index not found: best chain ratio " + std::to_string(best_ratio) +
                 " below m";
    return fail;
  }

  const double g_lo = gamma.is_exact() ? gamma.exact->to_double() : gamma.lower();
  const double g_hi = gamma.is_exact() ? gamma.exact->to_double() : gamma.upper();
  if (g_lo <= 0) {
    fail.notes = "gamma not certified positive";
    return fail;
  }
  double need_d = std::ceil(std::pow(g_lo, -n) / 3.0);
  double limit_d = std::floor(std::pow(g_hi, -n));
  if (need_d > 2e6)
    throw CapacityError("pigeonhole refuter needs " + std::to_string(need_d) +
                        " boxes, above the 2e6 cap");
  long long m_count = static_cast<long long>(std::max(1.0, need_d));
  // exact measure cap: m * dz^n < delta, i.e. m <= ceil(delta/dz^n) - 1
  Rat dzn = dz.pow_int(n);
  Rat allowed = delta / dzn;
  mpz_class cap_z = allowed.ceil() - 1;
  if (cap_z.fits_slong_p())
    m_count = std::min(m_count, static_cast<long long>(cap_z.get_si()));
  if (m_count < 1 || static_cast<double>(m_count) < need_d ||
      static_cast<double>(m_count) > std::max(limit_d, need_d)) {
    fail.notes = "pigeonhole count infeasible: need >= " + std::to_string(need_d) +
                 ", measure cap allows " + std::to_string(m_count);
    return fail;
  }

  const Rat third_gamma_low = rat_from_double(g_lo / 3.0);
  Rat eta = dz / Rat(2);
  for (int iter = 0; iter < 60; ++iter) {
    Rat tau = eta / (Rat(n) * Rat(static_cast<long long>(m_count + 1)));
    IntervalFamily fam;
    fam.mode = Disjointness::Interior;
    fam.items.reserve(static_cast<std::size_t>(m_count));
    bool all_big = true;
    for (long long i = 1; i <= m_count; ++i) {
      Point ai = zj, bi = zp;
      for (int v = 0; v < n; ++v) {
        if (v == best_j - 1) continue;
        ai[v] += Rat(i) * tau;
        bi[v] += Rat(i + 1) * tau;
      }
      Value da = abs(f.eval(ai) - f.eval(bi));
      if (!certified_ge(da, third_gamma_low)) {
        all_big = false;
        break;
      }
      fam.items.emplace_back(ai, bi);
    }
    if (all_big) {
      WitnessReport rep;
      rep.family = std::move(fam);
      rep.method = "analytic:0ac";
      rep.notes = "chain index " + std::to_string(best_j) + ", gamma~" + std::to_string(g_lo) +
                  ", count " + std::to_string(m_count) + ", eta=" + eta.str() +
                  "; consecutive boxes share faces (interior-disjoint mode)";
      Rat eps = Rat(1) / Rat(3).pow_int(n + 1);
      return finish_with_check(f, std::move(rep), ACClassSpec::zero_ac(n), delta, eps);
    }
    eta /= Rat(2);
  }
  fail.notes = "eta search failed: oscillation probes kept violating the gamma/3 bound "
               "(discontinuity near the pair?)";
  return fail;
}

WitnessReport refute_product_1ac(const FunctionSpec& f, const Rat& delta, long k,
                                 std::optional<Rat> tau_opt, const Rat& epsilon) {
  const ProductFn* prod = f.as<ProductFn>();
  Rat d;
  if (prod) {
    d = prod->d;
  } else if (const auto* tt = f.as<TakagiTentFn>()) {
    d = tt->d;
  } else {
    throw DomainError("refute_product_1ac applies to diagonal product functions");
  }
  if (k < 2) throw DomainError("need at least two squares");
  Rat tau = tau_opt.value_or(d / Rat(k));
  if (tau.sign() <= 0) throw DomainError("tau must be positive");
  if (Rat(2) * tau * Rat(k) > Rat(2) * d)
    throw DomainError("stack does not fit: need 2*tau*k <= 2*d, got tau=" + tau.str());

  static const DiagBasis basis(2);
  IntervalFamily fam;
  fam.mode = Disjointness::Closed;
  fam.items.reserve(static_cast<std::size_t>(k));
  for (long i = 0; i < k; ++i) {
    Rat s = -d + tau + Rat(2) * tau * Rat(i);
    Point a = basis.to_std(s, Rat(0));
    Point b = basis.to_std(s, tau);
    fam.items.emplace_back(a, b);
  }
  WitnessReport rep;
  rep.family = std::move(fam);
  rep.method = "analytic:product";
  rep.notes = "k=" + std::to_string(k) + ", tau=" + tau.str() + ", t=0 -> t'=tau";
  try {
    return finish_with_check(f, std::move(rep), ACClassSpec::one_ac(2), delta, epsilon);
  } catch (const PoleError& e) {
    WitnessReport fail;
    fail.cls = ACClassSpec::one_ac(2);
    fail.delta = delta;
    fail.epsilon = epsilon;
    fail.method = "analytic:product";
    fail.notes = std::string("pole on a probe point: ") + e.what();
    return fail;
  }
}

WitnessReport refute_half_ac(const Hierarchy& h, int m0, int M, int threads) {
  if (m0 < 2) throw DomainError("m0 must be >= 2");
  if (M < m0) throw DomainError("M must be >= m0");
  if (M > h.depth())
    throw DomainError("depth too small: hierarchy built to " + std::to_string(h.depth()) +
                      ", requested " + std::to_string(M));

  WitnessReport rep;
  rep.cls = ACClassSpec::alpha_ac(Rat(1, 2), 2);
  rep.method = "analytic:half-ac";
  rep.family.mode = Disjointness::Closed;

  Rat s_osc, s_meas, eps_formula;
  bool all_eq = true;
  for (int m = m0; m <= M; ++m) {
    Hierarchy::TmkLevelAudit a = h.audit_tmk_level(m, threads);
    s_osc += a.sum_sq_diff;
    s_meas += a.sum_measure;
    all_eq = all_eq && a.all_diffs_equal_omega;
    eps_formula += Rat(1) / Rat(4 * m);
    auto fam = h.tmk_family(m);
    rep.family.items.insert(rep.family.items.end(), std::make_move_iterator(fam.begin()),
                            std::make_move_iterator(fam.end()));
  }

  DisjointReport disj = check_pairwise_disjoint(rep.family.items, Disjointness::Closed);
  if (!disj.disjoint)
    throw Error("T_mk family not disjoint: intervals " + std::to_string(disj.first) + ", " +
                std::to_string(disj.second));
  Rat family_meas;
  const Rat half(1, 2);
  for (const Interval& box : rep.family.items) {
    if (box.regularity() != half) throw Error("T_mk interval not exactly 1/2-regular");
    family_meas += box.measure();
  }
  if (family_meas != s_meas) throw Error("audit measure does not match family measure");

  Rat root_meas = h.root().measure();
  Rat delta = Rat::pow2(-3 * (m0 - 1)) * root_meas;  // (1/8)^{m0-1} L^2(Q11)
  rep.delta = delta;
  rep.epsilon = eps_formula;
  rep.s_meas = s_meas;
  rep.s_osc = Value::of(s_osc);
  rep.notes = all_eq ? "every endpoint difference equals omega_m exactly (no cross-level "
                       "contribution); per-level identity sum r_m omega_m^2 matches"
                     : "cross-level contribution detected at some T_mk endpoints";
  if (s_osc != eps_formula)
    rep.notes += "; full-sum S_osc " + s_osc.str() + " differs from per-level formula " +
                 eps_formula.str();
  rep.verdict = (s_meas < delta && s_osc >= eps_formula) ? WitnessReport::Outcome::Violates
                                                         : WitnessReport::Outcome::Inconclusive;
  return rep;
}

namespace {

struct Candidate {
  Interval box;
  Rat meas;     // per the class's measure mode
  Value term;   // |df|^n
  double score = 0;
  long idx = 0;
};

Interval squared_box(const Interval& b) {
  Rat span;
  for (int i = 0; i < b.dim(); ++i) span = max(span, b.side(i));
  std::vector<Rat> lo, hi;
  const Rat half(1, 2);
  for (int i = 0; i < b.dim(); ++i) {
    Rat c = (b.lo()[i] + b.hi()[i]) * half;
    lo.push_back(c - span * half);
    hi.push_back(c + span * half);
  }
  return Interval(Point(std::move(lo)), Point(std::move(hi)));
}

Rat measure_of(const Interval& box, const ACClassSpec& cls) {
  return cls.measure_mode() == MeasureMode::Volume ? box.measure() : box.max_side_pow(cls.n);
}

bool admissible(const Interval& box, const ACClassSpec& cls) {
  auto thr = cls.regularity_threshold();
  if (!thr) return true;
  if (box.is_degenerate()) return false;
  return box.regularity() >= *thr;
}

std::optional<Value> eval_term(const FunctionSpec& f, const Interval& box, int n) {
  try {
    Value va = f.eval(box.lo());
    Value vb = f.eval(box.hi());
    return pow_int(abs(va - vb), n);
  } catch (const PoleError&) {
    return std::nullopt;
  }
}

void push_candidate(std::vector<Candidate>& out, const FunctionSpec& f, const ACClassSpec& cls,
                    const Rat& delta, Interval box) {
  if (!admissible(box, cls)) return;
  Rat meas = measure_of(box, cls);
  if (meas >= delta) return;
  auto term = eval_term(f, box, cls.n);
  if (!term) return;
  Candidate c;
  c.box = std::move(box);
  c.meas = std::move(meas);
  c.term = std::move(*term);
  double m = c.meas.to_double();
  c.score = std::max(0.0, c.term.lower()) / std::max(m, 1e-300);
  c.idx = static_cast<long>(out.size());
  out.push_back(std::move(c));
}

// every box with corners on the (2^r + 1)-node lattice of `box`
template <typename Fn>
void for_each_grid_box(const Interval& box, int r, bool squares_only, Fn&& fn) {
  long nodes = (1L << r) + 1;
  Rat sx = box.side(0) / Rat::pow2(r);
  Rat sy = box.side(1) / Rat::pow2(r);
  for (long i1 = 0; i1 < nodes; ++i1)
    for (long i2 = i1 + 1; i2 < nodes; ++i2)
      for (long j1 = 0; j1 < nodes; ++j1)
        for (long j2 = j1 + 1; j2 < nodes; ++j2) {
          if (squares_only && i2 - i1 != j2 - j1) continue;
          Point lo(box.lo()[0] + Rat(i1) * sx, box.lo()[1] + Rat(j1) * sy);
          Point hi(box.lo()[0] + Rat(i2) * sx, box.lo()[1] + Rat(j2) * sy);
          fn(Interval(std::move(lo), std::move(hi)));
        }
}

}  // namespace

WitnessReport greedy_search(const FunctionSpec& f, const ACClassSpec& cls, const Rat& delta,
                            const GreedyBudget& budget, std::optional<int> grid_r,
                            const Rat& epsilon) {
  if (delta.sign() <= 0) throw DomainError("delta must be positive");
  const int n = f.dimension();
  Interval region = squared_box(f.domain_hint());
  std::vector<Candidate> pool;

  if (grid_r) {
    if (n != 2) throw DomainError("grid-restricted search is planar");
    for_each_grid_box(region, *grid_r, false, [&](Interval box) {
      push_candidate(pool, f, cls, delta, std::move(box));
    });
  } else {
    if (n == 2) {
      for (int g = 1; g <= 4; ++g)
        for_each_grid_box(region, g, true,
                          [&](Interval box) { push_candidate(pool, f, cls, delta, std::move(box)); });
      for (int g = 1; g <= 3; ++g)
        for_each_grid_box(region, g, false,
                          [&](Interval box) { push_candidate(pool, f, cls, delta, std::move(box)); });
    }
    Rng rng(budget.seed);
    auto thr = cls.regularity_threshold();
    for (int c = 0; c < budget.candidates; ++c) {
      int e = 1 + static_cast<int>(rng.next_below(14));
      Rat side = region.side(0) / Rat::pow2(e);
      std::vector<Rat> sides(static_cast<std::size_t>(n), side);
      if (!thr || *thr < Rat(1)) {
        // one axis shrunk; exact regularity = phi
        Rat phi = thr ? *thr + (Rat(1) - *thr) * rng.next_dyadic(20)
                      : rng.next_dyadic(20) + Rat(1, 1048576);
        if (phi > Rat(1)) phi = Rat(1);
        sides[rng.next_below(static_cast<std::uint64_t>(n))] = side * phi;
      }
      std::vector<Rat> lo(static_cast<std::size_t>(n)), hi(static_cast<std::size_t>(n));
      bool ok = true;
      for (int i = 0; i < n; ++i) {
        Rat room = region.side(i) - sides[static_cast<std::size_t>(i)];
        if (room.sign() < 0) {
          ok = false;
          break;
        }
        Rat off = rng.next_dyadic(40) * room;
        lo[static_cast<std::size_t>(i)] = region.lo()[i] + off;
        hi[static_cast<std::size_t>(i)] = lo[static_cast<std::size_t>(i)] + sides[static_cast<std::size_t>(i)];
      }
      if (!ok) continue;
      push_candidate(pool, f, cls, delta, Interval(Point(std::move(lo)), Point(std::move(hi))));
    }
  }

  std::vector<long> order(pool.size());
  for (std::size_t i = 0; i < pool.size(); ++i) order[i] = static_cast<long>(i);
  std::stable_sort(order.begin(), order.end(), [&](long a, long b) {
    if (pool[static_cast<std::size_t>(a)].score != pool[static_cast<std::size_t>(b)].score)
      return pool[static_cast<std::size_t>(a)].score > pool[static_cast<std::size_t>(b)].score;
    return a < b;
  });

  std::vector<long> accepted;
  Rat meas_acc;
  auto fits = [&](const Candidate& c, const std::vector<long>& cur, long skip) {
    for (long id : cur) {
      if (id == skip) continue;
      if (c.box.intersects(pool[static_cast<std::size_t>(id)].box)) return false;
    }
    return true;
  };
  for (long id : order) {
    const Candidate& c = pool[static_cast<std::size_t>(id)];
    if (c.score <= 0 && !accepted.empty()) break;
    if (meas_acc + c.meas >= delta) continue;
    if (!fits(c, accepted, -1)) continue;
    accepted.push_back(id);
    meas_acc += c.meas;
  }

  // local improvement: swap a pool candidate against its conflicts, or
  // jiggle an accepted box (translate / rescale) when that raises the sum
  Rng rng(budget.seed ^ 0x5eedULL);
  auto total_low = [&](const std::vector<long>& ids) {
    double s = 0;
    for (long id : ids) s += std::max(0.0, pool[static_cast<std::size_t>(id)].term.lower());
    return s;
  };
  auto try_replace = [&](long take_id, const std::vector<long>& base) {
    const Candidate& c = pool[static_cast<std::size_t>(take_id)];
    std::vector<long> keep, conflicts;
    for (long cur : base) {
      if (c.box.intersects(pool[static_cast<std::size_t>(cur)].box))
        conflicts.push_back(cur);
      else
        keep.push_back(cur);
    }
    Rat new_meas = c.meas;
    for (long cur : keep) new_meas += pool[static_cast<std::size_t>(cur)].meas;
    if (new_meas >= delta) return false;
    if (std::max(0.0, c.term.lower()) - total_low(conflicts) <= 1e-15) return false;
    keep.push_back(take_id);
    accepted = std::move(keep);
    meas_acc = std::move(new_meas);
    return true;
  };
  const std::size_t base_pool = pool.size();
  for (int it = 0; it < budget.iters && base_pool > 0; ++it) {
    if (it % 2 == 0) {
      long id = static_cast<long>(rng.next_below(base_pool));
      if (std::find(accepted.begin(), accepted.end(), id) != accepted.end()) continue;
      try_replace(id, accepted);
    } else if (!accepted.empty() && !grid_r) {
      // mutate one accepted box: dyadic translate or rescale about its corner
      long pos = static_cast<long>(rng.next_below(accepted.size()));
      const Interval& old_box = pool[static_cast<std::size_t>(accepted[static_cast<std::size_t>(pos)])].box;
      Point lo = old_box.lo(), hi = old_box.hi();
      if (rng.next_below(2)) {
        int axis = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(n)));
        Rat shift = (Rat(2) * rng.next_dyadic(8) - Rat(1)) * old_box.side(axis);
        lo[axis] += shift;
        hi[axis] += shift;
      } else {
        Rat factor = rng.next_below(2) ? Rat(1, 2) : Rat(3, 2);
        for (int i = 0; i < n; ++i) hi[i] = lo[i] + old_box.side(i) * factor;
      }
      std::size_t before = pool.size();
      push_candidate(pool, f, cls, delta, Interval(std::move(lo), std::move(hi)));
      if (pool.size() == before) continue;  // inadmissible mutation
      std::vector<long> base;
      for (std::size_t i = 0; i < accepted.size(); ++i)
        if (i != static_cast<std::size_t>(pos)) base.push_back(accepted[i]);
      long new_id = static_cast<long>(pool.size() - 1);
      const Candidate& c = pool.back();
      double old_low =
          std::max(0.0, pool[static_cast<std::size_t>(accepted[static_cast<std::size_t>(pos)])].term.lower());
      bool feasible = true;
      Rat new_meas = c.meas;
      for (long cur : base) {
        if (c.box.intersects(pool[static_cast<std::size_t>(cur)].box)) {
          feasible = false;
          break;
        }
        new_meas += pool[static_cast<std::size_t>(cur)].meas;
      }
      if (!feasible || new_meas >= delta) continue;
      if (std::max(0.0, c.term.lower()) > old_low + 1e-15) {
        base.push_back(new_id);
        accepted = std::move(base);
        meas_acc = std::move(new_meas);
      }
    }
  }

  WitnessReport rep;
  rep.seed = budget.seed;
  rep.method = "greedy";
  rep.family.mode = Disjointness::Closed;
  std::sort(accepted.begin(), accepted.end());
  for (long id : accepted) rep.family.items.push_back(pool[static_cast<std::size_t>(id)].box);
  rep.notes = "pool=" + std::to_string(pool.size()) +
              (grid_r ? ", grid-restricted r=" + std::to_string(*grid_r) : "");
  return finish_with_check(f, std::move(rep), cls, delta, epsilon);
}

WitnessReport oracle_max(const FunctionSpec& f, int grid_r, int max_k, const Rat& delta,
                         const ACClassSpec& cls, const OracleLimits& limits, const Rat& epsilon) {
  if (f.dimension() != 2) throw DomainError("the oracle enumerates planar families");
  if (grid_r < 1 || grid_r > 6) throw DomainError("grid resolution out of range [1,6]");
  if (max_k < 1) throw DomainError("max family size must be >= 1");

  Interval region = squared_box(f.domain_hint());
  std::vector<Candidate> boxes;
  for_each_grid_box(region, grid_r, false,
                    [&](Interval box) { push_candidate(boxes, f, cls, delta, std::move(box)); });

  std::int64_t visited = 0;
  std::vector<long> cur, best;
  Rat cur_meas;
  double cur_low = 0, best_low = -1;
  bool cur_exact = true, best_exact = false;
  Rat cur_exact_sum, best_exact_sum;

  auto better_than_best = [&]() {
    if (best_low < 0) return true;
    if (cur_exact && best_exact) return cur_exact_sum > best_exact_sum;
    return cur_low > best_low;
  };

  auto dfs = [&](auto&& self, std::size_t start) -> void {
    for (std::size_t i = start; i < boxes.size(); ++i) {
      const Candidate& c = boxes[i];
      if (cur_meas + c.meas >= delta) continue;
      bool disjoint = true;
      for (long id : cur)
        if (c.box.intersects(boxes[static_cast<std::size_t>(id)].box)) {
          disjoint = false;
          break;
        }
      if (!disjoint) continue;
      cur.push_back(static_cast<long>(i));
      cur_meas += c.meas;
      double save_low = cur_low;
      bool save_exact = cur_exact;
      Rat save_sum = cur_exact_sum;
      cur_low += std::max(0.0, c.term.lower());
      if (c.term.is_exact() && cur_exact)
        cur_exact_sum += *c.term.exact;
      else
        cur_exact = false;
      if (++visited > limits.family_cap)
        throw CapacityError("oracle enumeration exceeded the family cap at " +
                            std::to_string(visited) + " families");
      if (better_than_best()) {
        best = cur;
        best_low = cur_low;
        best_exact = cur_exact;
        best_exact_sum = cur_exact_sum;
      }
      if (static_cast<int>(cur.size()) < max_k) self(self, i + 1);
      cur.pop_back();
      cur_meas -= c.meas;
      cur_low = save_low;
      cur_exact = save_exact;
      cur_exact_sum = save_sum;
    }
  };
  dfs(dfs, 0);

  WitnessReport rep;
  rep.method = "oracle";
  rep.family.mode = Disjointness::Closed;
  for (long id : best) rep.family.items.push_back(boxes[static_cast<std::size_t>(id)].box);
  rep.notes = "grid_r=" + std::to_string(grid_r) + ", boxes=" + std::to_string(boxes.size()) +
              ", families=" + std::to_string(visited);
  return finish_with_check(f, std::move(rep), cls, delta, epsilon);
}

CantorCoverCheck cantor_cover_check(int j) {
  if (j < 0 || j > 26) throw DomainError("cover depth out of range [0,26]");
  CantorCoverCheck out;
  out.j = j;
  mpz_class p3 = 1;
  for (int i = 0; i < j; ++i) p3 *= 3;
  mpz_class p2 = 1;
  mpz_mul_2exp(p2.get_mpz_t(), p2.get_mpz_t(), static_cast<unsigned long>(j));
  bool ok = true;
  for (std::uint64_t t = 0; t < (1ULL << j); ++t) {
    // left endpoint numerator over 3^j: digits 2*b_i
    mpz_class num = 0;
    for (int i = j - 1; i >= 0; --i) {
      num *= 3;
      if ((t >> i) & 1ULL) num += 2;
    }
    Rat a(num, p3);
    Rat b(num + 1, p3);
    if (cantor(a) != Rat(mpz_class(t), p2) || cantor(b) != Rat(mpz_class(t) + 1, p2)) {
      ok = false;
      break;
    }
  }
  out.images_tile_unit = ok;
  out.total_length = Rat(mpz_class(1) << j, p3);
  return out;
}

}  // namespace aclab
