#include "aclab/hierarchy.hpp"

#include <algorithm>
#include <string>
#include <thread>

#include "aclab/error.hpp"

namespace aclab {

mpz_class Hierarchy::r_formula(int m) {
  if (m < 1) throw DomainError("level must be >= 1");
  mpz_class four_pow, fac1, fac2;
  mpz_ui_pow_ui(four_pow.get_mpz_t(), 4, static_cast<unsigned long>(m - 1));
  mpz_fac_ui(fac1.get_mpz_t(), static_cast<unsigned long>(m - 1));
  mpz_fac_ui(fac2.get_mpz_t(), static_cast<unsigned long>(m));
  return four_pow * fac1 * fac2;
}

Rat Hierarchy::omega_formula(int m) {
  if (m < 1) throw DomainError("level must be >= 1");
  mpz_class fac, p2 = 1;
  mpz_fac_ui(fac.get_mpz_t(), static_cast<unsigned long>(m));
  mpz_mul_2exp(p2.get_mpz_t(), p2.get_mpz_t(), static_cast<unsigned long>(m));
  return Rat(mpz_class(1), p2 * fac);
}

RampTable RampTable::make(int m, const Rat& omega, const Rat& d) {
  RampTable t{m, omega, d, {}};
  t.bands.reserve(static_cast<std::size_t>(m));
  Rat step = omega / Rat(m);
  for (int i = 1; i <= m; ++i) {
    Band band;
    band.b = d / Rat::pow2(i - 1);
    band.a = i < m ? d / Rat::pow2(i) : Rat(0);
    band.val_b = Rat(i - 1) * step;
    band.val_a = i < m ? Rat(i) * step : omega;
    band.lo_third = (Rat(2) * band.a + band.b) / Rat(3);
    band.hi_third = (band.a + Rat(2) * band.b) / Rat(3);
    band.plateau = (band.val_a + band.val_b) / Rat(2);
    t.bands.push_back(std::move(band));
  }
  return t;
}

Rat RampTable::eval(const Rat& rho) const {
  if (rho >= d) return Rat(0);
  if (rho.sign() < 0) throw DomainError("ramp argument must be nonnegative");
  for (const Band& band : bands) {
    if (rho < band.a) continue;
    // rho in [a, b)
    if (rho >= band.hi_third) {
      // linear from plateau (at hi_third) down to val_b (at b)
      Rat t = (rho - band.hi_third) / (band.b - band.hi_third);
      return band.plateau + t * (band.val_b - band.plateau);
    }
    if (rho >= band.lo_third) return band.plateau;
    // linear from val_a (at a) down to plateau (at lo_third)
    Rat t = (rho - band.a) / (band.lo_third - band.a);
    return band.val_a + t * (band.plateau - band.val_a);
  }
  throw Error("ramp bands do not cover [0,d)");  // unreachable
}

namespace {

struct StripCounts {
  int boundary;  // per boundary substrip (two of them)
  int line;      // per slope line (two of them)
};

StripCounts strip_counts(int m) {
  if (m % 2 == 0) return {m / 2 + 1, m / 2};
  return {(m + 1) / 2, (m + 1) / 2};
}

// Largest sigma = w / 2^j, j >= 1, with pred(sigma) true.
template <typename Pred>
Rat largest_dyadic(const Rat& w, Pred pred) {
  for (int j = 1; j <= 200; ++j) {
    Rat sigma = w / Rat::pow2(j);
    if (pred(sigma)) return sigma;
  }
  throw Error("no admissible dyadic child side found");
}

}  // namespace

Hierarchy Hierarchy::build(int depth) {
  Point lo(Rat(0), Rat(0)), hi(Rat(1), Rat(1));
  return build(depth, Interval(lo, hi));
}

Hierarchy Hierarchy::build(int depth, const Interval& q11, const BuildLimits& limits) {
  if (depth < 1) throw DomainError("hierarchy depth must be >= 1");
  if (q11.dim() != 2) throw DomainError("root square must be planar");
  if (q11.side(0) != q11.side(1) || q11.is_degenerate())
    throw DomainError("root must be a non-degenerate square");

  mpz_class total = 0;
  for (int m = 1; m <= depth; ++m) total += r_formula(m);
  if (total > limits.square_cap)
    throw CapacityError("hierarchy of depth " + std::to_string(depth) + " needs " +
                        total.get_str() + " squares, cap is " +
                        std::to_string(limits.square_cap));

  Hierarchy h;
  h.depth_ = depth;
  h.root_ = q11;
  h.levels_.resize(static_cast<std::size_t>(depth));
  h.child_begin_.resize(static_cast<std::size_t>(depth));
  h.omegas_.reserve(static_cast<std::size_t>(depth));
  for (int m = 1; m <= depth; ++m) h.omegas_.push_back(omega_formula(m));

  // normalized ramps: breakpoints in units of d, shared by every square
  // of the level
  h.ramps_.reserve(static_cast<std::size_t>(depth));
  for (int m = 1; m <= depth; ++m) {
    RampTable t = RampTable::make(m, h.omegas_[static_cast<std::size_t>(m - 1)], Rat(1));
    NormRamp nr;
    for (auto it = t.bands.rbegin(); it != t.bands.rend(); ++it) {
      auto push = [&nr](const Rat& u, const Rat& v) {
        if (!nr.u.empty() && nr.u.back() == u) return;
        nr.u.push_back(u);
        nr.v.push_back(v);
      };
      push(it->a, it->val_a);
      push(it->lo_third, it->plateau);
      push(it->hi_third, it->plateau);
      push(it->b, it->val_b);
    }
    nr.slope.reserve(nr.u.size());
    for (std::size_t i = 0; i + 1 < nr.u.size(); ++i)
      nr.slope.push_back((nr.v[i + 1] - nr.v[i]) / (nr.u[i + 1] - nr.u[i]));
    nr.slope.push_back(Rat(0));
    h.ramps_.push_back(std::move(nr));
  }

  Square root_sq;
  Point c = q11.center();
  root_sq.cx = c[0];
  root_sq.cy = c[1];
  root_sq.half = q11.side(0) / Rat(2);
  h.levels_[0].push_back(root_sq);

  for (int m = 1; m < depth; ++m) {
    const auto& parents = h.levels_[static_cast<std::size_t>(m - 1)];
    auto& children = h.levels_[static_cast<std::size_t>(m)];
    auto& offsets = h.child_begin_[static_cast<std::size_t>(m - 1)];
    offsets.reserve(parents.size() + 1);
    offsets.push_back(0);
    const StripCounts counts = strip_counts(m);
    children.reserve(static_cast<std::size_t>(r_formula(m + 1).get_ui()));

    for (std::int64_t pi = 0; pi < static_cast<std::int64_t>(parents.size()); ++pi) {
      const Square& q = parents[static_cast<std::size_t>(pi)];
      const Rat d = q.half / Rat(2);

      // offsets (xi, upsilon) from the inner corner C of each corner square;
      // corner 1 adds them to C1 = center + (d, d), corner 3 subtracts from
      // C3 = center - (d, d).
      struct Placed {
        Rat xi, up, side;
      };
      std::vector<Placed> placed;

      for (int i = 1; i <= m; ++i) {
        const Rat b = d / Rat::pow2(i - 1);
        const Rat a = i < m ? d / Rat::pow2(i) : Rat(0);
        const Rat lo_third = (Rat(2) * a + b) / Rat(3);
        const Rat hi_third = (a + Rat(2) * b) / Rat(3);
        const Rat span = (b - a) / Rat(3);  // length of the middle third
        const Rat w = d / Rat::pow2(i + 2);

        // boundary substrips: side chosen so `boundary` squares fit along
        // rho with positive equal gaps and stay inside (0, w) across
        const int ca = counts.boundary;
        const Rat sigma_a = largest_dyadic(
            w, [&](const Rat& s) { return Rat(2 * ca) * s < span; });
        const Rat gap = (span - Rat(2 * ca) * sigma_a) / Rat(ca + 1);
        for (int hh = 0; hh < ca; ++hh) {
          Rat rho_start = lo_third + Rat(hh + 1) * gap + Rat(2 * hh) * sigma_a;
          Rat rho_center = rho_start + sigma_a;
          Rat up_c = w / Rat(2);
          Rat xi_c = rho_center - up_c;
          placed.push_back({xi_c, up_c, sigma_a});   // horizontal substrip
          placed.push_back({up_c, xi_c, sigma_a});   // vertical substrip
        }

        // slope-1/2 and slope-2 lines: centers at equally spaced rho in the
        // middle third, kept clear of the boundary substrips
        const int cl = counts.line;
        if (cl > 0) {
          const Rat drho = span / Rat(cl + 1);
          const Rat up_min = (lo_third + drho) / Rat(3);
          const Rat sigma_l = largest_dyadic(w, [&](const Rat& s) {
            return Rat(2) * s < drho && up_min - s / Rat(2) > (w + sigma_a) / Rat(2);
          });
          for (int hh = 0; hh < cl; ++hh) {
            Rat rho_c = lo_third + Rat(hh + 1) * drho;
            Rat third = rho_c / Rat(3);
            placed.push_back({Rat(2) * third, third, sigma_l});  // on y = x/2
            placed.push_back({third, Rat(2) * third, sigma_l});  // on y = 2x
          }
        }
      }

      const Rat c1x = q.cx + d, c1y = q.cy + d;
      const Rat c3x = q.cx - d, c3y = q.cy - d;
      for (const Placed& pl : placed) {
        Square s1;
        s1.cx = c1x + pl.xi;
        s1.cy = c1y + pl.up;
        s1.half = pl.side / Rat(2);
        s1.parent = pi;
        children.push_back(std::move(s1));
      }
      for (const Placed& pl : placed) {
        Square s3;
        s3.cx = c3x - pl.xi;
        s3.cy = c3y - pl.up;
        s3.half = pl.side / Rat(2);
        s3.parent = pi;
        children.push_back(std::move(s3));
      }
      offsets.push_back(static_cast<std::int64_t>(children.size()));
    }

    mpz_class expect = r_formula(m + 1);
    if (mpz_class(static_cast<unsigned long>(children.size())) != expect)
      throw Error("level " + std::to_string(m + 1) + " count mismatch: built " +
                  std::to_string(children.size()) + ", formula " + expect.get_str());
  }
  // trailing offset table for the last level (no children)
  h.child_begin_[static_cast<std::size_t>(depth - 1)]
      .assign(h.levels_[static_cast<std::size_t>(depth - 1)].size() + 1, 0);

  if (limits.verify_disjoint) {
    for (int m = 2; m <= depth; ++m) {
      std::vector<Interval> boxes;
      const auto& sqs = h.level(m);
      boxes.reserve(sqs.size());
      for (const Square& s : sqs)
        boxes.emplace_back(Point(s.cx - s.half, s.cy - s.half),
                           Point(s.cx + s.half, s.cy + s.half));
      DisjointReport rep = check_pairwise_disjoint(boxes, Disjointness::Closed);
      if (!rep.disjoint)
        throw Error("level " + std::to_string(m) + " squares " + std::to_string(rep.first) +
                    " and " + std::to_string(rep.second) + " are not disjoint");
    }
    // per-level measure drop below 1/8, strict
    Rat prev = h.stats(1).total_measure;
    for (int m = 2; m <= depth; ++m) {
      Rat cur = h.stats(m).total_measure;
      if (!(cur < prev / Rat(8)))
        throw Error("level measure bound violated at level " + std::to_string(m));
      prev = cur;
    }
  }
  return h;
}

RampTable Hierarchy::ramp(int m, const Rat& d) const {
  return RampTable::make(m, omega(m), d);
}

Rat Hierarchy::ramp_scaled(int m, const Rat& d, const Rat& rho) const {
  if (rho >= d) return Rat(0);
  const NormRamp& nr = ramps_[static_cast<std::size_t>(m - 1)];
  Rat u = rho / d;
  auto it = std::upper_bound(nr.u.begin(), nr.u.end(), u);
  std::size_t j = static_cast<std::size_t>(it - nr.u.begin());
  if (j == 0) throw DomainError("ramp argument must be nonnegative");
  --j;
  if (nr.slope[j].is_zero()) return nr.v[j];
  return nr.v[j] + (u - nr.u[j]) * nr.slope[j];
}

Rat Hierarchy::eval_level_in_square(int m, const Square& sq, const Rat& px,
                                    const Rat& py) const {
  const Rat d = sq.half / Rat(2);
  const Rat x = px - sq.cx;
  const Rat y = py - sq.cy;
  const Rat md = -d;
  if (x >= d && y >= d) return ramp_scaled(m, d, x - d + y - d);        // corner square 1
  if (x <= md && y <= md) return ramp_scaled(m, d, md - x + (md - y));  // corner square 3
  Rat au = abs(x - y);
  if (au <= d && !(x > d && y > d) && !(x < md && y < md))
    return ramp_scaled(m, d, au);
  return Rat(0);
}

std::int64_t Hierarchy::find_child(int level_of_parent, std::int64_t parent_idx, const Rat& px,
                                   const Rat& py) const {
  if (level_of_parent >= depth_) return -1;
  const auto& offs = child_begin_[static_cast<std::size_t>(level_of_parent - 1)];
  const auto& next = levels_[static_cast<std::size_t>(level_of_parent)];
  for (std::int64_t i = offs[static_cast<std::size_t>(parent_idx)];
       i < offs[static_cast<std::size_t>(parent_idx) + 1]; ++i)
    if (next[static_cast<std::size_t>(i)].contains(px, py)) return i;
  return -1;
}

Rat Hierarchy::eval_level(int m, const Point& p) const {
  if (m < 1 || m > depth_) throw DomainError("level out of range");
  if (p.dim() != 2) throw DomainError("hierarchy points are planar");
  const Rat& px = p[0];
  const Rat& py = p[1];
  std::int64_t idx = 0;
  if (!levels_[0][0].contains(px, py)) return Rat(0);
  for (int lvl = 1; lvl < m; ++lvl) {
    idx = find_child(lvl, idx, px, py);
    if (idx < 0) return Rat(0);
  }
  return eval_level_in_square(m, levels_[static_cast<std::size_t>(m - 1)][static_cast<std::size_t>(idx)], px, py);
}

Rat Hierarchy::eval_partial(const Point& p, int max_level) const {
  if (max_level < 1 || max_level > depth_) throw DomainError("partial-sum level out of range");
  if (p.dim() != 2) throw DomainError("hierarchy points are planar");
  const Rat& px = p[0];
  const Rat& py = p[1];
  Rat sum;
  std::int64_t idx = 0;
  if (!levels_[0][0].contains(px, py)) return sum;
  for (int lvl = 1; lvl <= max_level; ++lvl) {
    sum += eval_level_in_square(lvl, levels_[static_cast<std::size_t>(lvl - 1)][static_cast<std::size_t>(idx)], px, py);
    if (lvl == max_level) break;
    idx = find_child(lvl, idx, px, py);
    if (idx < 0) break;
  }
  return sum;
}

Interval Hierarchy::tmk_interval(int m, std::int64_t k) const {
  const Square& sq = level(m)[static_cast<std::size_t>(k)];
  const Rat d = sq.half / Rat(2);
  // [O, B1]: from the center to the top-left vertex of corner square 1
  return Interval(Point(sq.cx, sq.cy), Point(sq.cx + d, sq.cy + sq.half));
}

std::vector<Interval> Hierarchy::tmk_family(int m) const {
  const auto& sqs = level(m);
  std::vector<Interval> fam;
  fam.reserve(sqs.size());
  for (std::int64_t k = 0; k < static_cast<std::int64_t>(sqs.size()); ++k)
    fam.push_back(tmk_interval(m, k));
  return fam;
}

Hierarchy::TmkAudit Hierarchy::audit_tmk(int m, std::int64_t k) const {
  // Evaluate the full partial sum at both endpoints through the ancestor
  // chain: the endpoints lie in Q_mk, so every ancestor contributes its
  // plateau value and no deeper square contains either endpoint.
  const Square& sq = level(m)[static_cast<std::size_t>(k)];
  const Rat d = sq.half / Rat(2);
  const Rat ox = sq.cx, oy = sq.cy;
  const Rat bx = sq.cx + d, by = sq.cy + sq.half;

  std::vector<const Square*> chain(static_cast<std::size_t>(m));
  std::int64_t idx = k;
  for (int lvl = m; lvl >= 1; --lvl) {
    const Square& s = level(lvl)[static_cast<std::size_t>(idx)];
    chain[static_cast<std::size_t>(lvl - 1)] = &s;
    idx = s.parent;
  }
  TmkAudit a;
  for (int lvl = 1; lvl <= m; ++lvl) {
    const Square& s = *chain[static_cast<std::size_t>(lvl - 1)];
    a.at_center += eval_level_in_square(lvl, s, ox, oy);
    a.at_corner += eval_level_in_square(lvl, s, bx, by);
  }
  // deeper levels vanish at both endpoints: children sit strictly inside
  // the corner squares at rho <= 5d/6 < d
  return a;
}

Hierarchy::TmkLevelAudit Hierarchy::audit_tmk_level(int m, int threads) const {
  if (m < 1 || m > depth_) throw DomainError("level out of range");
  const auto& sqs = level(m);
  const std::int64_t n = static_cast<std::int64_t>(sqs.size());
  if (threads < 1) threads = 1;
  threads = static_cast<int>(std::min<std::int64_t>(threads, std::max<std::int64_t>(1, n)));

  std::vector<TmkLevelAudit> parts(static_cast<std::size_t>(threads));
  auto work = [&](int w) {
    TmkLevelAudit& acc = parts[static_cast<std::size_t>(w)];
    const Rat& om = omega(m);
    const Rat half_rat(1, 2);
    for (std::int64_t k = w; k < n; k += threads) {
      const Square& sq = sqs[static_cast<std::size_t>(k)];
      const Rat d = sq.half * half_rat;
      const Rat bx = sq.cx + d;
      const Rat by = sq.cy + sq.half;
      Rat at_c, at_b;
      std::int64_t idx = k;
      for (int lvl = m; lvl >= 1; --lvl) {
        const Square& s = levels_[static_cast<std::size_t>(lvl - 1)][static_cast<std::size_t>(idx)];
        at_c += eval_level_in_square(lvl, s, sq.cx, sq.cy);
        at_b += eval_level_in_square(lvl, s, bx, by);
        idx = s.parent;
      }
      Rat diff = abs(at_c - at_b);
      if (diff != om) acc.all_diffs_equal_omega = false;
      acc.sum_sq_diff += diff * diff;
      acc.sum_measure += d * sq.half;
    }
  };
  if (threads == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(threads));
    for (int w = 0; w < threads; ++w) pool.emplace_back(work, w);
    for (auto& t : pool) t.join();
  }
  TmkLevelAudit total;
  for (const auto& p : parts) {
    total.sum_sq_diff += p.sum_sq_diff;
    total.sum_measure += p.sum_measure;
    total.all_diffs_equal_omega = total.all_diffs_equal_omega && p.all_diffs_equal_omega;
  }
  return total;
}

LevelStats Hierarchy::stats(int m) const {
  const auto& sqs = level(m);
  LevelStats st;
  st.count = static_cast<unsigned long>(sqs.size());
  st.omega = omega(m);
  for (const Square& s : sqs) {
    Rat side = Rat(2) * s.half;
    st.total_measure += side * side;
    st.max_child_side = max(st.max_child_side, side);
  }
  st.r_omega_sq = Rat(st.count) * st.omega * st.omega;
  return st;
}

}  // namespace aclab
