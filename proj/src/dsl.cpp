#include "aclab/dsl.hpp"

#include <cctype>

#include "aclab/error.hpp"

namespace aclab {

namespace {

struct Cursor {
  std::string_view s;
  std::size_t pos = 0;

  void skip_ws() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  }
  bool eof() {
    skip_ws();
    return pos >= s.size();
  }
  char peek() {
    skip_ws();
    return pos < s.size() ? s[pos] : '\0';
  }
  bool try_eat(char c) {
    skip_ws();
    if (pos < s.size() && s[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!try_eat(c))
      throw ParseError(std::string("expected '") + c + "'", pos);
  }
  bool try_keyword(std::string_view kw) {
    skip_ws();
    if (s.substr(pos, kw.size()) == kw) {
      pos += kw.size();
      return true;
    }
    return false;
  }
  // token up to one of the delimiters at the current nesting level
  std::string take_until(std::string_view delims) {
    skip_ws();
    std::size_t start = pos;
    int depth = 0;
    while (pos < s.size()) {
      char c = s[pos];
      if (c == '(') ++depth;
      if (c == ')') {
        if (depth == 0) break;
        --depth;
      }
      if (depth == 0 && delims.find(c) != std::string_view::npos) break;
      ++pos;
    }
    std::size_t end = pos;
    while (end > start && std::isspace(static_cast<unsigned char>(s[end - 1]))) --end;
    return std::string(s.substr(start, end - start));
  }
};

Rat parse_rat_at(Cursor& c, std::string tok) {
  try {
    return Rat::parse(tok);
  } catch (const ParseError& e) {
    throw ParseError("bad rational '" + tok + "'", c.pos);
  }
}

struct ProfileToken {
  std::string name;
  std::string arg;  // after ':'
};

ProfileToken split_profile(const std::string& tok, std::size_t) {
  std::size_t colon = tok.find(':');
  if (colon == std::string::npos) return {tok, ""};
  return {tok.substr(0, colon), tok.substr(colon + 1)};
}

Profile materialize_profile(const ProfileToken& t, const Rat& d, std::size_t at) {
  auto arg_rat = [&](Rat def) {
    return t.arg.empty() ? def : Rat::parse(t.arg);
  };
  if (t.name == "const") {
    if (t.arg.empty()) throw ParseError("const profile needs a value, e.g. const:1", at);
    return Profile::constant(Rat::parse(t.arg));
  }
  if (t.name == "tent") return Profile::tent();
  if (t.name == "cbrt") return Profile::cube_root(arg_rat(d / Rat(2)));
  if (t.name == "sqrtabs") return Profile::sqrt_abs(arg_rat(d));
  if (t.name == "invsqrtabs") return Profile::inv_sqrt_abs(arg_rat(d));
  if (t.name == "qind") return Profile::rational_indicator(arg_rat(d));
  if (t.name == "takagi") {
    int k = 64;
    if (!t.arg.empty()) k = std::stoi(t.arg);
    return Profile::takagi_profile(k);
  }
  if (t.name == "cantor") return Profile::cantor_profile();
  if (t.name == "pwl") {
    std::vector<std::pair<Rat, Rat>> pts;
    std::size_t start = 0;
    const std::string& a = t.arg;
    while (start < a.size()) {
      std::size_t semi = a.find(';', start);
      std::string pair = a.substr(start, semi == std::string::npos ? std::string::npos : semi - start);
      std::size_t comma = pair.find(',');
      if (comma == std::string::npos) throw ParseError("pwl point needs 'x,y'", at);
      pts.emplace_back(Rat::parse(pair.substr(0, comma)), Rat::parse(pair.substr(comma + 1)));
      if (semi == std::string::npos) break;
      start = semi + 1;
    }
    return Profile::piecewise_linear(std::move(pts));
  }
  throw ParseError("unknown profile '" + t.name + "'", at);
}

int axis_of(const std::string& v, std::size_t at) {
  if (v == "x") return 0;
  if (v == "y") return 1;
  if (v == "z") return 2;
  if (v == "w") return 3;
  if (v.size() >= 2 && v[0] == 'x' && std::isdigit(static_cast<unsigned char>(v[1]))) {
    int k = std::stoi(v.substr(1));
    if (k >= 1 && k <= 9) return k - 1;
  }
  throw ParseError("unknown variable '" + v + "'", at);
}

FunctionSpec parse_affine(const std::string& expr, std::size_t at) {
  // terms: [+|-] [coef] [* ] var | [+|-] coef
  std::vector<Rat> coeffs(2, Rat(0));
  Rat offset;
  std::size_t i = 0;
  auto skip = [&] {
    while (i < expr.size() && std::isspace(static_cast<unsigned char>(expr[i]))) ++i;
  };
  bool any = false;
  while (true) {
    skip();
    if (i >= expr.size()) break;
    int sign = 1;
    if (expr[i] == '+' || expr[i] == '-') {
      sign = expr[i] == '-' ? -1 : 1;
      ++i;
      skip();
    } else if (any) {
      throw ParseError("expected '+' or '-' in affine expression", at + i);
    }
    // optional coefficient
    std::size_t cstart = i;
    while (i < expr.size() &&
           (std::isdigit(static_cast<unsigned char>(expr[i])) || expr[i] == '/' ||
            expr[i] == '.' ))
      ++i;
    Rat coef(1);
    bool has_coef = i > cstart;
    if (has_coef) coef = Rat::parse(expr.substr(cstart, i - cstart));
    skip();
    if (i < expr.size() && expr[i] == '*') {
      ++i;
      skip();
    }
    std::size_t vstart = i;
    while (i < expr.size() &&
           (std::isalpha(static_cast<unsigned char>(expr[i])) ||
            std::isdigit(static_cast<unsigned char>(expr[i])) ))
      ++i;
    std::string var = expr.substr(vstart, i - vstart);
    if (var.empty()) {
      if (!has_coef) throw ParseError("dangling sign in affine expression", at + i);
      offset += Rat(sign) * coef;
    } else {
      int axis = axis_of(var, at + vstart);
      if (axis >= static_cast<int>(coeffs.size())) coeffs.resize(static_cast<std::size_t>(axis) + 1, Rat(0));
      coeffs[static_cast<std::size_t>(axis)] += Rat(sign) * coef;
    }
    any = true;
  }
  if (!any) throw ParseError("empty affine expression", at);
  return FunctionSpec::affine(std::move(coeffs), std::move(offset));
}

FunctionSpec parse_spec(Cursor& c);

FunctionSpec parse_product(Cursor& c) {
  c.expect('(');
  ProfileToken h, g;
  Rat d(1, 2);
  bool has_h = false, has_g = false;
  while (true) {
    std::size_t at = c.pos;
    std::string key = c.take_until("=");
    c.expect('=');
    std::string val = c.take_until(",)");
    if (key == "h") {
      h = split_profile(val, at);
      has_h = true;
    } else if (key == "g") {
      g = split_profile(val, at);
      has_g = true;
    } else if (key == "d") {
      d = parse_rat_at(c, val);
    } else {
      throw ParseError("unknown product field '" + key + "'", at);
    }
    if (c.try_eat(')')) break;
    c.expect(',');
  }
  if (!has_h || !has_g) throw ParseError("product needs h= and g=", c.pos);
  return FunctionSpec::product(materialize_profile(h, d, c.pos),
                               materialize_profile(g, d, c.pos), d);
}

FunctionSpec parse_spec(Cursor& c) {
  c.skip_ws();
  std::size_t at = c.pos;
  if (c.try_keyword("preset:")) {
    std::string name = c.take_until(",)");
    return preset(name);
  }
  if (c.try_keyword("product")) return parse_product(c);
  if (c.try_keyword("takagitent")) {
    c.expect('(');
    Rat d(1, 2);
    int k = 64;
    while (!c.try_eat(')')) {
      std::string key = c.take_until("=");
      c.expect('=');
      std::string val = c.take_until(",)");
      if (key == "d")
        d = parse_rat_at(c, val);
      else if (key == "k")
        k = std::stoi(val);
      else
        throw ParseError("unknown takagitent field '" + key + "'", at);
      c.try_eat(',');
    }
    return FunctionSpec::takagi_tent(d, k);
  }
  if (c.try_keyword("cantordir")) {
    c.expect('(');
    int n = 2;
    while (!c.try_eat(')')) {
      std::string key = c.take_until("=");
      c.expect('=');
      std::string val = c.take_until(",)");
      if (key == "n")
        n = std::stoi(val);
      else
        throw ParseError("unknown cantordir field '" + key + "'", at);
      c.try_eat(',');
    }
    return FunctionSpec::cantor_directional(n);
  }
  if (c.try_keyword("affine:")) {
    std::string expr = c.take_until(",)");
    return parse_affine(expr, at + 7);
  }
  if (c.try_keyword("axis")) {
    c.expect('(');
    ProfileToken p;
    int axis = 0, n = 2;
    bool has_p = false;
    while (!c.try_eat(')')) {
      std::size_t kat = c.pos;
      std::string key = c.take_until("=");
      c.expect('=');
      std::string val = c.take_until(",)");
      if (key == "p") {
        p = split_profile(val, kat);
        has_p = true;
      } else if (key == "axis") {
        axis = std::stoi(val);
      } else if (key == "n") {
        n = std::stoi(val);
      } else {
        throw ParseError("unknown axis field '" + key + "'", kat);
      }
      c.try_eat(',');
    }
    if (!has_p) throw ParseError("axis needs p=", at);
    return FunctionSpec::axis_profile(materialize_profile(p, Rat(1), at), axis, n);
  }
  if (c.try_keyword("sum")) {
    c.expect('(');
    std::vector<FunctionSpec> terms;
    while (true) {
      terms.push_back(parse_spec(c));
      if (c.try_eat(')')) break;
      c.expect(',');
    }
    return FunctionSpec::sum(std::move(terms));
  }
  if (c.try_keyword("scale")) {
    c.expect('(');
    std::string val = c.take_until(",");
    c.expect(',');
    Rat s = parse_rat_at(c, val);
    FunctionSpec inner = parse_spec(c);
    c.expect(')');
    return FunctionSpec::scale(s, std::move(inner));
  }
  if (c.try_keyword("hierarchy:")) {
    std::string val = c.take_until(",)");
    int depth = std::stoi(val);
    auto h = std::make_shared<const Hierarchy>(Hierarchy::build(depth));
    return FunctionSpec::hierarchy_fn(std::move(h), depth);
  }
  throw ParseError("unknown function form", at);
}

}  // namespace

FunctionSpec parse_function(std::string_view text) {
  Cursor c{text};
  FunctionSpec f = parse_spec(c);
  if (!c.eof()) throw ParseError("trailing input after function", c.pos);
  return f;
}

ACClassSpec parse_class(std::string_view text, int n) {
  std::string s(text);
  auto param_after = [&](std::size_t colon) { return Rat::parse(s.substr(colon + 1)); };
  if (s == "1ac") return ACClassSpec::one_ac(n);
  if (s == "0ac") return ACClassSpec::zero_ac(n);
  if (s == "strong0ac") return ACClassSpec::strong_zero_ac(n);
  std::size_t colon = s.find(':');
  if (colon != std::string::npos) {
    std::string head = s.substr(0, colon);
    if (head == "alpha") return ACClassSpec::alpha_ac(param_after(colon), n);
    if (head == "ach") return ACClassSpec::ac_h(param_after(colon), n);
    if (head == "1ach") return ACClassSpec::one_ac_h(param_after(colon), n);
    if (head == "kac") {
      std::string shape = s.substr(colon + 1);
      if (shape == "sup") return ACClassSpec::k_ac(BallShape::SupNorm, n);
      if (shape == "euclid" || shape == "euclidean")
        return ACClassSpec::k_ac(BallShape::Euclidean, n);
      throw ParseError("unknown ball shape '" + shape + "'", colon + 1);
    }
  }
  throw ParseError("unknown class '" + s + "' (1ac, alpha:A, 0ac, strong0ac, ach:L, 1ach:L, kac:sup|euclid)", 0);
}

namespace {

Q2 parse_q2_scalar(std::string_view tok, std::size_t) {
  // forms: RAT | RATr2 | RAT+RATr2 | RAT-RATr2
  std::string s(tok);
  std::size_t r2 = s.find("r2");
  if (r2 == std::string::npos) return Q2(Rat::parse(s));
  // split the sqrt2 coefficient from an optional rational head
  std::size_t split = std::string::npos;
  for (std::size_t i = r2; i-- > 1;) {
    if (s[i] == '+' || s[i] == '-') {
      // not part of an exponent like 1e-4
      if (s[i - 1] != 'e' && s[i - 1] != 'E') {
        split = i;
        break;
      }
    }
  }
  std::string head = split == std::string::npos ? "" : s.substr(0, split);
  std::string coef = split == std::string::npos ? s.substr(0, r2) : s.substr(split, r2 - split);
  if (coef.empty() || coef == "+") coef = "1";
  if (coef == "-") coef = "-1";
  Rat p = head.empty() ? Rat(0) : Rat::parse(head);
  return Q2(p, Rat::parse(coef));
}

}  // namespace

Q2Point parse_q2_point(std::string_view text) {
  Q2Point pt;
  std::size_t start = 0;
  std::string s(text);
  while (start <= s.size()) {
    std::size_t comma = s.find(',', start);
    std::string tok = s.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    if (tok.empty()) throw ParseError("empty coordinate", start);
    pt.push_back(parse_q2_scalar(tok, start));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  if (pt.empty()) throw ParseError("empty point", 0);
  return pt;
}

Point parse_point(std::string_view text) {
  Q2Point q = parse_q2_point(text);
  std::vector<Rat> c;
  c.reserve(q.size());
  for (const Q2& v : q) {
    if (!v.is_rational()) throw ParseError("rational point required (no r2 terms)", 0);
    c.push_back(v.rational_part());
  }
  return Point(std::move(c));
}

std::pair<Point, Point> parse_point_pair(std::string_view text) {
  std::size_t colon = text.find(':');
  if (colon == std::string_view::npos) throw ParseError("pair needs 'x,y:u,v'", 0);
  return {parse_point(text.substr(0, colon)), parse_point(text.substr(colon + 1))};
}

}  // namespace aclab
