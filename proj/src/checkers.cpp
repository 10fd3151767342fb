#include "aclab/checkers.hpp"

#include <algorithm>
#include <cmath>

#include "aclab/error.hpp"
#include "aclab/rng.hpp"

namespace aclab {

ACClassSpec ACClassSpec::alpha_ac(Rat alpha, int n) {
  if (alpha.sign() <= 0 || alpha >= Rat(1))
    throw DomainError("alpha must lie in (0,1), got " + alpha.str());
  ACClassSpec c;
  c.kind = ACKind::AlphaAC;
  c.alpha = std::move(alpha);
  c.n = n;
  return c;
}

ACClassSpec ACClassSpec::one_ac(int n) {
  ACClassSpec c;
  c.kind = ACKind::OneAC;
  c.n = n;
  return c;
}

ACClassSpec ACClassSpec::zero_ac(int n) {
  ACClassSpec c;
  c.kind = ACKind::ZeroAC;
  c.n = n;
  return c;
}

ACClassSpec ACClassSpec::strong_zero_ac(int n) {
  ACClassSpec c;
  c.kind = ACKind::StrongZeroAC;
  c.n = n;
  return c;
}

ACClassSpec ACClassSpec::ac_h(Rat lambda, int n) {
  if (lambda.sign() <= 0 || lambda >= Rat(1))
    throw DomainError("lambda must lie in (0,1), got " + lambda.str());
  ACClassSpec c;
  c.kind = ACKind::ACH;
  c.lambda = std::move(lambda);
  c.n = n;
  return c;
}

ACClassSpec ACClassSpec::one_ac_h(Rat lambda, int n) {
  ACClassSpec c = ac_h(std::move(lambda), n);
  c.kind = ACKind::OneACH;
  return c;
}

ACClassSpec ACClassSpec::k_ac(BallShape shape, int n) {
  ACClassSpec c;
  c.kind = ACKind::KAC;
  c.ball_shape = shape;
  c.n = n;
  return c;
}

std::optional<Rat> ACClassSpec::regularity_threshold() const {
  switch (kind) {
    case ACKind::AlphaAC:
      return alpha;
    case ACKind::OneAC:
    case ACKind::OneACH:
      return Rat(1);
    case ACKind::KAC:
      return Rat(1);  // sup-norm balls are cubes
    default:
      return std::nullopt;
  }
}

std::string ACClassSpec::str() const {
  std::string tail = "(n=" + std::to_string(n) + ")";
  switch (kind) {
    case ACKind::AlphaAC:
      return "alpha-ac[" + alpha.str() + "]" + tail;
    case ACKind::OneAC:
      return "1-ac" + tail;
    case ACKind::ZeroAC:
      return "0-ac" + tail;
    case ACKind::StrongZeroAC:
      return "strong-0-ac" + tail;
    case ACKind::ACH:
      return "ac-h[" + lambda.str() + "]" + tail;
    case ACKind::OneACH:
      return "1-ac-h[" + lambda.str() + "]" + tail;
    case ACKind::KAC:
      return std::string("k-ac[") + (ball_shape == BallShape::SupNorm ? "sup" : "euclidean") +
             "]" + tail;
  }
  return "?";
}

Sums violation_sums(const FunctionSpec& f, const IntervalFamily& family,
                    const ACClassSpec& cls) {
  if (cls.kind == ACKind::KAC && cls.ball_shape == BallShape::Euclidean)
    throw FamilyError(
        "k-ac with euclidean balls is ball-based; use osc_on_ball, interval families cover "
        "sup-norm balls (cubes) only");
  const int dim = f.dimension();
  for (long i = 0; i < static_cast<long>(family.items.size()); ++i)
    if (family.items[i].dim() != dim)
      throw FamilyError("interval " + std::to_string(i) + " has dimension " +
                            std::to_string(family.items[i].dim()) + ", function needs " +
                            std::to_string(dim),
                        i);

  DisjointReport rep = check_pairwise_disjoint(family.items, family.mode);
  if (!rep.disjoint)
    throw FamilyError("family not pairwise disjoint (" + to_string(family.mode) +
                          " mode): intervals " + std::to_string(rep.first) + " and " +
                          std::to_string(rep.second),
                      rep.second);

  std::optional<Rat> threshold = cls.regularity_threshold();
  Sums sums;
  std::vector<Value> osc_terms;
  osc_terms.reserve(family.items.size());
  for (long i = 0; i < static_cast<long>(family.items.size()); ++i) {
    const Interval& box = family.items[i];
    if (threshold) {
      if (box.is_degenerate())
        throw FamilyError("interval " + std::to_string(i) + " is degenerate", i);
      if (box.regularity() < *threshold)
        throw FamilyError("interval " + std::to_string(i) + " has regularity " +
                              box.regularity().str() + " below threshold " + threshold->str(),
                          i);
    }
    sums.s_meas +=
        cls.measure_mode() == MeasureMode::Volume ? box.measure() : box.max_side_pow(cls.n);
    const Interval probe = cls.shrunk_endpoints() ? box.shrink(cls.lambda) : box;
    Value va = f.eval(probe.lo());
    Value vb = f.eval(probe.hi());
    osc_terms.push_back(pow_int(abs(va - vb), cls.n));
  }
  sums.s_osc = sum_values(osc_terms);
  return sums;
}

Verdict check_family(const FunctionSpec& f, const IntervalFamily& family, const ACClassSpec& cls,
                     const Rat& delta, const Rat& eps) {
  Sums sums = violation_sums(f, family, cls);
  Verdict v;
  v.s_meas = sums.s_meas;
  v.s_osc = sums.s_osc;
  v.family_size = family.items.size();
  v.mode = family.mode;
  bool meas_small = v.s_meas < delta;
  bool osc_large;
  if (v.s_osc.is_exact())
    osc_large = *v.s_osc.exact >= eps;
  else
    osc_large = v.s_osc.lower() >= eps.to_double();
  v.passes = !(meas_small && osc_large);
  if (cls.kind == ACKind::KAC)
    v.notes = "osc^n bounded below by endpoint differences on cube families";
  return v;
}

namespace {

struct Extremes {
  bool any = false;
  bool all_exact = true;
  Rat exact_min, exact_max;
  double lo_cert = 0;  // max over samples of (approx - err)
  double hi_cert = 0;  // min over samples of (approx + err)

  void add(const Value& v) {
    if (!any) {
      lo_cert = v.approx - v.err;
      hi_cert = v.approx + v.err;
      if (v.is_exact()) {
        exact_min = *v.exact;
        exact_max = *v.exact;
      } else {
        all_exact = false;
      }
      any = true;
      return;
    }
    lo_cert = std::max(lo_cert, v.approx - v.err);
    hi_cert = std::min(hi_cert, v.approx + v.err);
    if (v.is_exact() && all_exact) {
      exact_min = min(exact_min, *v.exact);
      exact_max = max(exact_max, *v.exact);
    } else {
      all_exact = false;
    }
  }
};

}  // namespace

OscBound osc_on_ball(const FunctionSpec& f, const Ball& ball, const Sampler& sampler) {
  if (ball.center.dim() != f.dimension())
    throw DomainError("ball dimension does not match function dimension");
  OscBound out;
  Extremes ext;
  auto probe = [&](const Point& p) {
    if (!ball.contains(p)) return;
    try {
      ext.add(f.eval(p));
      ++out.samples_used;
    } catch (const PoleError&) {
      ++out.poles_skipped;
    }
  };
  probe(ball.center);
  // axis extremes of the ball, always in it for both shapes
  for (int i = 0; i < ball.center.dim(); ++i) {
    Point p = ball.center;
    p[i] += ball.radius;
    probe(p);
    p[i] -= Rat(2) * ball.radius;
    probe(p);
  }
  if (sampler.grid_resolution > 0) {
    if (ball.center.dim() != 2)
      throw DomainError("grid sampling implemented for the plane; use sample_count elsewhere");
    Rat h = Rat::pow2(-sampler.grid_resolution);
    mpz_class steps_z = (Rat(2) * ball.radius / h).ceil();
    long steps = static_cast<long>(steps_z.get_si());
    if (steps > 4096) throw CapacityError("grid too fine: " + std::to_string(steps) + " steps");
    for (long i = 0; i <= steps; ++i)
      for (long j = 0; j <= steps; ++j) {
        Point p = ball.center;
        p[0] += Rat(i) * h - ball.radius;
        p[1] += Rat(j) * h - ball.radius;
        probe(p);
      }
  }
  if (sampler.sample_count > 0) {
    Rng rng(sampler.seed);
    for (int k = 0; k < sampler.sample_count; ++k) {
      Point p = ball.center;
      for (int i = 0; i < p.dim(); ++i)
        p[i] += (Rat(2) * rng.next_dyadic(40) - Rat(1)) * ball.radius;
      probe(p);
    }
  }
  if (!ext.any) throw DomainError("no usable samples in the ball");
  if (ext.all_exact) {
    out.lower = Value::of(ext.exact_max - ext.exact_min);
  } else {
    double b = ext.lo_cert - ext.hi_cert;
    out.lower = Value::approximate(std::max(0.0, b), 0.0);
  }
  return out;
}

LipScan lip_at(const FunctionSpec& f, const Point& p, const std::vector<Rat>& radii,
               int samples_per_radius, std::uint64_t seed, double growth_factor) {
  if (radii.empty()) throw DomainError("empty radius schedule");
  for (std::size_t i = 1; i < radii.size(); ++i)
    if (!(radii[i] < radii[i - 1])) throw DomainError("radius schedule must be decreasing");
  Value f0 = f.eval(p);  // pole at p propagates
  LipScan scan;
  Rng rng(seed);
  const int dim = p.dim();
  for (const Rat& r : radii) {
    double best = 0;
    double rd = r.to_double();
    auto try_offset = [&](const std::vector<Rat>& off) {
      double norm2 = 0;
      bool zero = true;
      for (const Rat& c : off) {
        double cd = c.to_double();
        norm2 += cd * cd;
        if (!c.is_zero()) zero = false;
      }
      if (zero) return;
      Point q = p;
      for (int i = 0; i < dim; ++i) q[i] += off[static_cast<std::size_t>(i)];
      try {
        Value v = f.eval(q);
        double ratio = std::abs(v.approx - f0.approx) / std::sqrt(norm2);
        best = std::max(best, ratio);
      } catch (const PoleError&) {
      }
    };
    // fixed compass directions, dyadically rounded to keep points rational
    const int compass = 16;
    for (int c = 0; c < compass && dim == 2; ++c) {
      double th = 2.0 * 3.14159265358979323846 * c / compass;
      std::vector<Rat> off(2);
      off[0] = Rat(static_cast<long long>(std::llround(std::cos(th) * rd * 1099511627776.0))) /
               Rat::pow2(40);
      off[1] = Rat(static_cast<long long>(std::llround(std::sin(th) * rd * 1099511627776.0))) /
               Rat::pow2(40);
      try_offset(off);
    }
    // random directions rescaled to magnitude in [r/2, r]: the per-radius
    // estimate must probe its own scale, not smaller ones
    for (int k = 0; k < samples_per_radius; ++k) {
      std::vector<double> u(static_cast<std::size_t>(dim));
      double norm2 = 0;
      for (int i = 0; i < dim; ++i) {
        u[static_cast<std::size_t>(i)] = 2.0 * rng.next_double() - 1.0;
        norm2 += u[static_cast<std::size_t>(i)] * u[static_cast<std::size_t>(i)];
      }
      if (norm2 < 1e-12) continue;
      double target = rd * (0.5 + 0.5 * rng.next_double());
      double scale = target / std::sqrt(norm2);
      std::vector<Rat> off(static_cast<std::size_t>(dim));
      bool ok = true;
      for (int i = 0; i < dim; ++i) {
        double c = u[static_cast<std::size_t>(i)] * scale;
        if (std::abs(c) > 1e10) {
          ok = false;
          break;
        }
        off[static_cast<std::size_t>(i)] =
            Rat(static_cast<long long>(std::llround(c * 281474976710656.0))) / Rat::pow2(48);
      }
      if (ok) try_offset(off);
    }
    scan.estimates.emplace_back(rd, best);
  }
  const auto& e = scan.estimates;
  if (e.size() >= 3) {
    std::size_t n = e.size();
    bool nondecr = e[n - 1].second >= e[n - 2].second && e[n - 2].second >= e[n - 3].second;
    scan.diverging =
        nondecr && e[n - 1].second > 0 && e[n - 1].second >= growth_factor * e[0].second;
  }
  return scan;
}

DirDerivScan dir_derivative(const FunctionSpec& f, const Point& p, const Point& dir,
                            const std::vector<Rat>& steps, double rel_tol) {
  if (steps.empty()) throw DomainError("empty step schedule");
  if (dir.dim() != p.dim()) throw DomainError("direction dimension mismatch");
  double norm2 = 0;
  for (int i = 0; i < dir.dim(); ++i) {
    double c = dir[i].to_double();
    norm2 += c * c;
  }
  if (norm2 == 0) throw DomainError("zero direction");
  const double norm = std::sqrt(norm2);

  DirDerivScan scan;
  for (const Rat& h : steps) {
    if (h.sign() <= 0) throw DomainError("steps must be positive");
    Point pa = p, pb = p;
    for (int i = 0; i < p.dim(); ++i) {
      pa[i] += h * dir[i];
      pb[i] -= h * dir[i];
    }
    Value va = f.eval(pa);  // a pole on the stencil propagates as an error
    Value vb = f.eval(pb);
    Value num = va - vb;
    double est;
    if (num.exact)
      est = (*num.exact / (Rat(2) * h)).to_double() / norm;
    else
      est = num.approx / (2.0 * h.to_double() * norm);
    scan.estimates.emplace_back(h.to_double(), est);
  }
  const auto& e = scan.estimates;
  if (e.size() >= 3) {
    std::size_t n = e.size();
    auto close = [&](double a, double b) {
      double scale = std::max({std::abs(a), std::abs(b), 1e-12});
      return std::abs(a - b) <= rel_tol * scale;
    };
    scan.converged = close(e[n - 1].second, e[n - 2].second) &&
                     close(e[n - 2].second, e[n - 3].second);
  }
  scan.value = e.back().second;
  return scan;
}

EnergyScan dirichlet_energy(const FunctionSpec& f, const Interval& rect, int levels,
                            double growth_factor) {
  if (levels < 1) throw DomainError("need at least one refinement level");
  if (rect.dim() != 2 || f.dimension() != 2)
    throw DomainError("dirichlet energy is implemented on planar rectangles");
  if (rect.is_degenerate()) throw DomainError("degenerate rectangle");

  EnergyScan scan;
  for (int lvl = 1; lvl <= levels; ++lvl) {
    long n = 1L << lvl;
    Rat hx = rect.side(0) / Rat(static_cast<long>(n));
    Rat hy = rect.side(1) / Rat(static_cast<long>(n));
    double hxd = hx.to_double(), hyd = hy.to_double();
    std::vector<double> vals(static_cast<std::size_t>((n + 1) * (n + 1)));
    std::vector<bool> pole(static_cast<std::size_t>((n + 1) * (n + 1)), false);
    for (long i = 0; i <= n; ++i)
      for (long j = 0; j <= n; ++j) {
        Point q(rect.lo()[0] + Rat(i) * hx, rect.lo()[1] + Rat(j) * hy);
        std::size_t at = static_cast<std::size_t>(i * (n + 1) + j);
        try {
          vals[at] = f.eval(q).approx;
        } catch (const PoleError&) {
          pole[at] = true;
        }
      }
    long excluded = 0;
    std::vector<double> cells;
    cells.reserve(static_cast<std::size_t>(n * n));
    for (long i = 0; i < n; ++i)
      for (long j = 0; j < n; ++j) {
        std::size_t c = static_cast<std::size_t>(i * (n + 1) + j);
        std::size_t cx = static_cast<std::size_t>((i + 1) * (n + 1) + j);
        std::size_t cy = static_cast<std::size_t>(i * (n + 1) + j + 1);
        if (pole[c] || pole[cx] || pole[cy]) {
          ++excluded;
          continue;
        }
        double gx = (vals[cx] - vals[c]) / hxd;
        double gy = (vals[cy] - vals[c]) / hyd;
        cells.push_back((gx * gx + gy * gy) * hxd * hyd);
      }
    if (cells.empty()) throw DomainError("all cells excluded at level " + std::to_string(lvl));
    scan.energy.push_back(pairwise_sum(cells));
    scan.excluded_cells.push_back(excluded);
  }
  if (scan.energy.size() >= 2) {
    double a = scan.energy[scan.energy.size() - 2];
    double b = scan.energy.back();
    scan.divergence_suspected = a > 0 && b >= growth_factor * a;
  }
  return scan;
}

}  // namespace aclab
