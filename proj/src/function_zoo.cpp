#include "aclab/function_zoo.hpp"

#include <algorithm>

#include "aclab/error.hpp"

namespace aclab {

FunctionSpec::FunctionSpec(Node n) : node_(std::move(n)) {}

FunctionSpec FunctionSpec::product(Profile h, Profile g, Rat d) {
  if (d.sign() <= 0) throw DomainError("product support parameter d must be positive");
  return FunctionSpec(ProductFn{std::move(h), std::move(g), std::move(d)});
}

FunctionSpec FunctionSpec::takagi_tent(Rat d, int K) {
  if (d.sign() <= 0) throw DomainError("takagi-tent support parameter d must be positive");
  if (K < 1) throw DomainError("takagi truncation order must be >= 1");
  return FunctionSpec(TakagiTentFn{std::move(d), K});
}

FunctionSpec FunctionSpec::cantor_directional(int n) {
  if (n < 2) throw DomainError("cantor-directional needs dimension >= 2");
  return FunctionSpec(CantorDirectionalFn{n});
}

FunctionSpec FunctionSpec::affine(std::vector<Rat> coeffs, Rat offset) {
  if (coeffs.empty()) throw DomainError("affine function needs at least one coefficient");
  return FunctionSpec(AffineFn{std::move(coeffs), std::move(offset)});
}

FunctionSpec FunctionSpec::axis_profile(Profile p, int axis, int n) {
  if (axis < 0 || axis >= n) throw DomainError("axis out of range");
  return FunctionSpec(AxisProfileFn{std::move(p), axis, n});
}

FunctionSpec FunctionSpec::hierarchy_fn(std::shared_ptr<const Hierarchy> h, int depth) {
  if (!h) throw DomainError("null hierarchy");
  if (depth < 1 || depth > h->depth()) throw DomainError("hierarchy partial depth out of range");
  return FunctionSpec(HierarchyFn{std::move(h), depth});
}

FunctionSpec FunctionSpec::sum(std::vector<FunctionSpec> terms) {
  if (terms.empty()) throw DomainError("empty sum");
  int d = terms.front().dimension();
  for (const auto& t : terms)
    if (t.dimension() != d) throw DomainError("sum members must share dimension");
  return FunctionSpec(SumFn{std::move(terms)});
}

FunctionSpec FunctionSpec::scale(Rat c, FunctionSpec inner) {
  return FunctionSpec(ScaleFn{std::move(c), std::make_shared<const FunctionSpec>(std::move(inner))});
}

int FunctionSpec::dimension() const {
  return std::visit(
      [](const auto& n) -> int {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, ProductFn> || std::is_same_v<T, TakagiTentFn> ||
                      std::is_same_v<T, HierarchyFn>)
          return 2;
        else if constexpr (std::is_same_v<T, CantorDirectionalFn>)
          return n.n;
        else if constexpr (std::is_same_v<T, AffineFn>)
          return static_cast<int>(n.coeffs.size());
        else if constexpr (std::is_same_v<T, AxisProfileFn>)
          return n.n;
        else if constexpr (std::is_same_v<T, SumFn>)
          return n.terms.front().dimension();
        else
          return n.inner->dimension();
      },
      node_);
}

bool FunctionSpec::exact_evaluable() const {
  return std::visit(
      [](const auto& n) -> bool {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, ProductFn>)
          return n.h.exact_evaluable() && n.g.exact_evaluable();
        else if constexpr (std::is_same_v<T, TakagiTentFn>)
          return false;
        else if constexpr (std::is_same_v<T, SumFn>) {
          return std::all_of(n.terms.begin(), n.terms.end(),
                             [](const FunctionSpec& t) { return t.exact_evaluable(); });
        } else if constexpr (std::is_same_v<T, ScaleFn>)
          return n.inner->exact_evaluable();
        else
          return true;
      },
      node_);
}

namespace {

Interval cube(int n, const Rat& lo, const Rat& hi) {
  std::vector<Rat> a(static_cast<std::size_t>(n), lo), b(static_cast<std::size_t>(n), hi);
  return Interval(Point(std::move(a)), Point(std::move(b)));
}

Interval merge_boxes(const Interval& a, const Interval& b) {
  std::vector<Rat> lo, hi;
  for (int i = 0; i < a.dim(); ++i) {
    lo.push_back(min(a.lo()[i], b.lo()[i]));
    hi.push_back(max(a.hi()[i], b.hi()[i]));
  }
  return Interval(Point(std::move(lo)), Point(std::move(hi)));
}

}  // namespace

Interval FunctionSpec::domain_hint() const {
  return std::visit(
      [this](const auto& n) -> Interval {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, ProductFn>) {
          Rat r = Rat(2) * n.d;
          return cube(2, -r, r);
        } else if constexpr (std::is_same_v<T, TakagiTentFn>) {
          Rat r = Rat(2) * n.d;
          return cube(2, -r, r);
        } else if constexpr (std::is_same_v<T, CantorDirectionalFn>) {
          return cube(n.n, Rat(-2), Rat(2));
        } else if constexpr (std::is_same_v<T, AffineFn>) {
          return cube(static_cast<int>(n.coeffs.size()), Rat(0), Rat(1));
        } else if constexpr (std::is_same_v<T, AxisProfileFn>) {
          Rat h;
          switch (n.profile.kind()) {
            case Profile::Kind::Constant:
            case Profile::Kind::Cantor:
              h = Rat(1);
              break;
            default:
              h = n.profile.support_half();
          }
          return cube(n.n, -(h + Rat(1)), h + Rat(1));
        } else if constexpr (std::is_same_v<T, HierarchyFn>) {
          return n.hierarchy->root();
        } else if constexpr (std::is_same_v<T, SumFn>) {
          Interval box = n.terms.front().domain_hint();
          for (std::size_t i = 1; i < n.terms.size(); ++i)
            box = merge_boxes(box, n.terms[i].domain_hint());
          return box;
        } else {
          return n.inner->domain_hint();
        }
      },
      node_);
}

namespace {

Value eval_product(const Profile& h, const Profile& g, const Rat& d, const Point& p) {
  static const DiagBasis basis2(2);
  std::vector<Rat> st = basis2.from_std(p);
  const Rat& s = st[0];
  const Rat& t = st[1];
  if (abs(s) > d || abs(t) > d) return Value::of(Rat(0));
  return h.eval(s) * g.eval(t);
}

Value eval_product_q2(const Profile& h, const Profile& g, const Rat& d, const Q2Point& p) {
  // diagonal coordinates of (x, y): s = (y - x)/2, t = (y + x)/2
  if (p.size() != 2) throw DomainError("product functions are planar");
  const Rat half(1, 2);
  Q2 s = (p[1] - p[0]) * Q2(half);
  Q2 t = (p[1] + p[0]) * Q2(half);
  Q2 dd{d};
  if ((abs(s) - dd).sign() > 0 || (abs(t) - dd).sign() > 0) return Value::of(Rat(0));
  return h.eval(s) * g.eval(t);
}

}  // namespace

Value FunctionSpec::eval(const Point& p) const {
  if (p.dim() != dimension())
    throw DomainError("point dimension " + std::to_string(p.dim()) +
                      " does not match function dimension " + std::to_string(dimension()));
  return std::visit(
      [&](const auto& n) -> Value {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, ProductFn>) {
          return eval_product(n.h, n.g, n.d, p);
        } else if constexpr (std::is_same_v<T, TakagiTentFn>) {
          return eval_product(Profile::takagi_profile(n.K), Profile::tent(), n.d, p);
        } else if constexpr (std::is_same_v<T, CantorDirectionalFn>) {
          DiagBasis basis(n.n);
          std::vector<Rat> t = basis.from_std(p);
          return Value::of(cantor(t[0]));
        } else if constexpr (std::is_same_v<T, AffineFn>) {
          Rat v = n.offset;
          for (int i = 0; i < p.dim(); ++i) v += n.coeffs[static_cast<std::size_t>(i)] * p[i];
          return Value::of(std::move(v));
        } else if constexpr (std::is_same_v<T, AxisProfileFn>) {
          return n.profile.eval(p[n.axis]);
        } else if constexpr (std::is_same_v<T, HierarchyFn>) {
          return Value::of(n.hierarchy->eval_partial(p, n.depth));
        } else if constexpr (std::is_same_v<T, SumFn>) {
          std::vector<Value> vals;
          vals.reserve(n.terms.size());
          for (const auto& t : n.terms) vals.push_back(t.eval(p));
          return sum_values(vals);
        } else {
          return Value::of(n.c) * n.inner->eval(p);
        }
      },
      node_);
}

Value FunctionSpec::eval(const Q2Point& p) const {
  if (static_cast<int>(p.size()) != dimension())
    throw DomainError("point dimension does not match function dimension");
  // all-rational points take the exact path
  bool rational = std::all_of(p.begin(), p.end(), [](const Q2& c) { return c.is_rational(); });
  bool touches_indicator = false;
  if (const auto* pr = as<ProductFn>())
    touches_indicator = pr->h.kind() == Profile::Kind::RationalIndicator ||
                        pr->g.kind() == Profile::Kind::RationalIndicator;
  if (const auto* ax = as<AxisProfileFn>())
    touches_indicator = ax->profile.kind() == Profile::Kind::RationalIndicator;
  if (rational && !touches_indicator) {
    std::vector<Rat> c;
    c.reserve(p.size());
    for (const Q2& q : p) c.push_back(q.rational_part());
    return eval(Point(std::move(c)));
  }
  return std::visit(
      [&](const auto& n) -> Value {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, ProductFn>) {
          return eval_product_q2(n.h, n.g, n.d, p);
        } else if constexpr (std::is_same_v<T, TakagiTentFn>) {
          return eval_product_q2(Profile::takagi_profile(n.K), Profile::tent(), n.d, p);
        } else if constexpr (std::is_same_v<T, CantorDirectionalFn>) {
          DiagBasis basis(n.n);
          // t1 = <p, x1> / |x1|^2 in Q2 arithmetic
          Q2 num;
          for (int i = 0; i < basis.dim(); ++i) num += p[static_cast<std::size_t>(i)] * Q2(basis.vec(0)[i]);
          Rat inv = Rat(1) / dot(basis.vec(0), basis.vec(0));
          Q2 t1 = num * Q2(inv);
          return Value::of(cantor(t1));
        } else if constexpr (std::is_same_v<T, AffineFn>) {
          Q2 v{n.offset};
          for (std::size_t i = 0; i < p.size(); ++i) v += p[i] * Q2(n.coeffs[i]);
          if (v.is_rational()) return Value::of(v.rational_part());
          return Value::approximate(v.to_double(), std::abs(v.to_double()) * 1e-15);
        } else if constexpr (std::is_same_v<T, AxisProfileFn>) {
          return n.profile.eval(p[static_cast<std::size_t>(n.axis)]);
        } else if constexpr (std::is_same_v<T, HierarchyFn>) {
          throw DomainError("hierarchy functions accept rational points only");
        } else if constexpr (std::is_same_v<T, SumFn>) {
          std::vector<Value> vals;
          vals.reserve(n.terms.size());
          for (const auto& t : n.terms) vals.push_back(t.eval(p));
          return sum_values(vals);
        } else {
          return Value::of(n.c) * n.inner->eval(p);
        }
      },
      node_);
}

std::string FunctionSpec::str() const {
  return std::visit(
      [](const auto& n) -> std::string {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, ProductFn>)
          return "product(h=" + n.h.str() + ",g=" + n.g.str() + ",d=" + n.d.str() + ")";
        else if constexpr (std::is_same_v<T, TakagiTentFn>)
          return "takagitent(d=" + n.d.str() + ",k=" + std::to_string(n.K) + ")";
        else if constexpr (std::is_same_v<T, CantorDirectionalFn>)
          return "cantordir(n=" + std::to_string(n.n) + ")";
        else if constexpr (std::is_same_v<T, AffineFn>) {
          std::string s = "affine:";
          for (std::size_t i = 0; i < n.coeffs.size(); ++i) {
            if (i) s += ",";
            s += n.coeffs[i].str();
          }
          s += ";" + n.offset.str();
          return s;
        } else if constexpr (std::is_same_v<T, AxisProfileFn>)
          return "axis(p=" + n.profile.str() + ",axis=" + std::to_string(n.axis) +
                 ",n=" + std::to_string(n.n) + ")";
        else if constexpr (std::is_same_v<T, HierarchyFn>)
          return "hierarchy(depth=" + std::to_string(n.depth) + ")";
        else if constexpr (std::is_same_v<T, SumFn>) {
          std::string s = "sum(";
          for (std::size_t i = 0; i < n.terms.size(); ++i) {
            if (i) s += ",";
            s += n.terms[i].str();
          }
          return s + ")";
        } else
          return "scale(" + n.c.str() + "," + n.inner->str() + ")";
      },
      node_);
}

FunctionSpec preset(const std::string& name) {
  const Rat half(1, 2);
  if (name == "cbrt-product")
    return FunctionSpec::product(Profile::constant(Rat(1)), Profile::cube_root(Rat(1, 4)), half);
  if (name == "takagi-tent") return FunctionSpec::takagi_tent(half, 64);
  if (name == "unbounded")
    return FunctionSpec::product(Profile::inv_sqrt_abs(half), Profile::constant(Rat(1)), half);
  if (name == "disc-everywhere")
    return FunctionSpec::product(Profile::rational_indicator(half), Profile::constant(Rat(1)),
                                 half);
  if (name == "w11-not-w12")
    return FunctionSpec::product(Profile::sqrt_abs(half), Profile::constant(Rat(1)), half);
  if (name == "cantor-luzin") return FunctionSpec::cantor_directional(2);
  std::string names;
  for (const auto& n : preset_names()) names += (names.empty() ? "" : ", ") + n;
  throw DomainError("unknown preset '" + name + "'; catalog: " + names);
}

std::vector<std::string> preset_names() {
  return {"cbrt-product", "takagi-tent", "unbounded",
          "disc-everywhere", "w11-not-w12", "cantor-luzin"};
}

}  // namespace aclab
