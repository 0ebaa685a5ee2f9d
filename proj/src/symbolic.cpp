#include "fnq/symbolic.hpp"

#include <algorithm>
#include <set>

#include "fnq/error.hpp"

namespace fnq {

namespace bmp = boost::multiprecision;

bool is_indeterminate(std::string_view s) {
  if (s == "x" || s == "y") return true;
  return s.size() > 2 && s[s.size() - 2] == '_' && (s.back() == 'x' || s.back() == 'y');
}

SymExpr SymExpr::constant(const Rational& c) {
  SymExpr e;
  e.add_term({}, c);
  return e;
}

SymExpr SymExpr::symbol(const std::string& name) {
  SymExpr e;
  e.add_term({{name, 1}}, 1);
  return e;
}

void SymExpr::add_term(const Monomial& m, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

SymExpr operator+(const SymExpr& a, const SymExpr& b) {
  SymExpr out = a;
  for (const auto& [m, c] : b.terms_) out.add_term(m, c);
  return out;
}

SymExpr operator-(const SymExpr& a) {
  SymExpr out;
  for (const auto& [m, c] : a.terms_) out.terms_.emplace(m, -c);
  return out;
}

SymExpr operator-(const SymExpr& a, const SymExpr& b) { return a + (-b); }

namespace {

SymExpr::Monomial multiply(const SymExpr::Monomial& a, const SymExpr::Monomial& b) {
  SymExpr::Monomial out;
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j].first < a[i].first) {
      out.push_back(b[j++]);
    } else {
      out.push_back({a[i].first, a[i].second + b[j].second});
      ++i;
      ++j;
    }
  }
  return out;
}

unsigned degree(const SymExpr::Monomial& m) {
  unsigned d = 0;
  for (const auto& [s, e] : m) d += e;
  return d;
}

// Rendering order: ascending degree, then lexicographic.
std::vector<std::pair<SymExpr::Monomial, Rational>> ordered(const std::map<SymExpr::Monomial, Rational>& terms) {
  std::vector<std::pair<SymExpr::Monomial, Rational>> out(terms.begin(), terms.end());
  std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return degree(a.first) < degree(b.first);
  });
  return out;
}

std::string monomial_string(const SymExpr::Monomial& m) {
  std::string out;
  for (const auto& [s, e] : m) {
    if (!out.empty()) out += "*";
    out += s;
    if (e > 1) out += "^" + std::to_string(e);
  }
  return out;
}

}  // namespace

SymExpr operator*(const SymExpr& a, const SymExpr& b) {
  SymExpr out;
  for (const auto& [ma, ca] : a.terms_)
    for (const auto& [mb, cb] : b.terms_) out.add_term(multiply(ma, mb), ca * cb);
  return out;
}

SymExpr SymExpr::substitute(const std::map<std::string, Rational>& values) const {
  SymExpr out;
  for (const auto& [m, c] : terms_) {
    Monomial rest;
    Rational coeff = c;
    for (const auto& [s, e] : m) {
      auto it = values.find(s);
      if (it == values.end()) {
        rest.push_back({s, e});
      } else {
        for (unsigned i = 0; i < e; ++i) coeff *= it->second;
      }
    }
    out.add_term(rest, coeff);
  }
  return out;
}

std::map<SymExpr::Monomial, SymExpr> SymExpr::coefficients() const {
  std::map<Monomial, SymExpr> out;
  for (const auto& [m, c] : terms_) {
    Monomial ind, par;
    for (const auto& v : m) (is_indeterminate(v.first) ? ind : par).push_back(v);
    out[ind].add_term(par, c);
  }
  for (auto it = out.begin(); it != out.end();) it = it->second.is_zero() ? out.erase(it) : std::next(it);
  return out;
}

SymExpr SymExpr::primitive() const {
  if (terms_.empty()) return {};
  bmp::cpp_int den = 1, num = 0;
  for (const auto& [m, c] : terms_) {
    den = bmp::lcm(den, bmp::denominator(c));
    num = bmp::gcd(num, bmp::numerator(c));
  }
  Rational factor = Rational(den) / Rational(num);
  if (ordered(terms_).front().second < 0) factor = -factor;
  SymExpr out;
  for (const auto& [m, c] : terms_) out.add_term(m, c * factor);
  return out;
}

std::string SymExpr::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [m, c] : ordered(terms_)) {
    const bool negative = c < 0;
    const Rational mag = negative ? Rational(-c) : c;
    if (first) {
      if (negative) out += "-";
    } else {
      out += negative ? " - " : " + ";
    }
    first = false;
    if (m.empty()) {
      out += mag.str();
    } else {
      if (mag != 1) out += mag.str() + "*";
      out += monomial_string(m);
    }
  }
  return out;
}

namespace {

enum class Generator { Multiplicative, Logarithmic, Leibniz };

std::optional<Generator> generator_kind(const std::string& name) {
  if (name == "m") return Generator::Multiplicative;
  if (name == "l" || name == "l1" || name == "l2") return Generator::Logarithmic;
  if (name == "d") return Generator::Leibniz;
  return std::nullopt;
}

enum class Arg { X, Y, XY };

SymExpr arg_value(Arg a) {
  switch (a) {
    case Arg::X: return SymExpr::symbol("x");
    case Arg::Y: return SymExpr::symbol("y");
    case Arg::XY: return SymExpr::symbol("x") * SymExpr::symbol("y");
  }
  return {};
}

SymExpr generator_value(const std::string& g, Arg a) {
  auto at = [&](const char* suffix) { return SymExpr::symbol(g + suffix); };
  if (a == Arg::X) return at("_x");
  if (a == Arg::Y) return at("_y");
  switch (*generator_kind(g)) {
    case Generator::Multiplicative: return at("_x") * at("_y");
    case Generator::Logarithmic: return at("_x") + at("_y");
    case Generator::Leibniz: return at("_x") * SymExpr::symbol("y") + SymExpr::symbol("x") * at("_y");
  }
  return {};
}

SymExpr body_value(const ExprPtr& e, Arg a) {
  switch (e->kind) {
    case ExprKind::VarX: return arg_value(a);
    case ExprKind::VarY:
      throw Error(ErrorCode::UnsupportedArgument, "family bodies may only use x");
    case ExprKind::Param: return SymExpr::symbol(e->name);
    case ExprKind::IntLit: return SymExpr::constant(Rational(e->value));
    case ExprKind::FnApp: return generator_value(e->name, a);
    case ExprKind::Neg: return -body_value(e->lhs, a);
    case ExprKind::Add: return body_value(e->lhs, a) + body_value(e->rhs, a);
    case ExprKind::Sub: return body_value(e->lhs, a) - body_value(e->rhs, a);
    case ExprKind::Mul: return body_value(e->lhs, a) * body_value(e->rhs, a);
  }
  return {};
}

void check_body(const ExprPtr& e) {
  if (!e) return;
  if (e->kind == ExprKind::FnApp) {
    if (!generator_kind(e->name))
      throw Error(ErrorCode::UnsupportedGenerator,
                  "\"" + e->name + "\" is not a generator (m, l, l1, l2, d)");
    if (e->lhs->kind != ExprKind::VarX)
      throw Error(ErrorCode::UnsupportedArgument, "generators must be applied to x");
    return;
  }
  if (e->kind == ExprKind::Param && is_indeterminate(e->name))
    throw Error(ErrorCode::UnsupportedGenerator,
                "parameter name \"" + e->name + "\" collides with an indeterminate");
  check_body(e->lhs);
  check_body(e->rhs);
}

Arg classify_arg(const ExprPtr& e) {
  if (e->kind == ExprKind::VarX) return Arg::X;
  if (e->kind == ExprKind::VarY) return Arg::Y;
  if (e->kind == ExprKind::Mul) {
    const auto l = e->lhs->kind, r = e->rhs->kind;
    if ((l == ExprKind::VarX && r == ExprKind::VarY) || (l == ExprKind::VarY && r == ExprKind::VarX))
      return Arg::XY;
  }
  throw Error(ErrorCode::UnsupportedArgument,
              "unsupported argument \"" + to_string(e) + "\" (only x, y, x*y)");
}

SymExpr side_value(const ExprPtr& e, const SolutionFamily& fam) {
  switch (e->kind) {
    case ExprKind::VarX: return SymExpr::symbol("x");
    case ExprKind::VarY: return SymExpr::symbol("y");
    case ExprKind::Param: return SymExpr::symbol(e->name);
    case ExprKind::IntLit: return SymExpr::constant(Rational(e->value));
    case ExprKind::FnApp: {
      auto it = fam.functions.find(e->name);
      if (it == fam.functions.end())
        throw Error(ErrorCode::UnboundName,
                    "family \"" + fam.name + "\" does not define \"" + e->name + "\"");
      return body_value(it->second, classify_arg(e->lhs));
    }
    case ExprKind::Neg: return -side_value(e->lhs, fam);
    case ExprKind::Add: return side_value(e->lhs, fam) + side_value(e->rhs, fam);
    case ExprKind::Sub: return side_value(e->lhs, fam) - side_value(e->rhs, fam);
    case ExprKind::Mul: return side_value(e->lhs, fam) * side_value(e->rhs, fam);
  }
  return {};
}

}  // namespace

SolutionFamily make_family(std::string name, const std::vector<std::string>& definitions,
                           std::vector<std::string> annotations) {
  SolutionFamily fam{std::move(name), {}, std::move(annotations)};
  for (const auto& def : definitions) {
    const EquationAst ast = parse_equation(def);
    if (ast.lhs->kind != ExprKind::FnApp || ast.lhs->lhs->kind != ExprKind::VarX)
      throw Error(ErrorCode::InvalidSpec, "family definitions read \"f(x) = ...\"");
    check_body(ast.rhs);
    fam.functions[ast.lhs->name] = ast.rhs;
  }
  return fam;
}

std::pair<SymExpr, SymExpr> family_substitute(const SolutionFamily& family, const EquationAst& ast) {
  return {side_value(ast.lhs, family), side_value(ast.rhs, family)};
}

std::vector<SymExpr> derive_constraints(const SolutionFamily& family, const EquationAst& ast) {
  const auto [lhs, rhs] = family_substitute(family, ast);
  std::map<std::string, SymExpr> unique;
  for (const auto& [mono, coeff] : (lhs - rhs).coefficients()) {
    SymExpr p = coeff.primitive();
    unique.emplace(p.to_string(), std::move(p));
  }
  std::vector<SymExpr> out;
  for (auto& [s, p] : unique) out.push_back(std::move(p));
  return out;
}

std::vector<std::string> render_constraints(const std::vector<SymExpr>& constraints) {
  std::vector<std::string> out;
  for (const auto& c : constraints) out.push_back(c.to_string());
  return out;
}

bool check_identity(const SolutionFamily& family, const EquationAst& ast,
                    const std::map<std::string, Rational>& params) {
  const auto [lhs, rhs] = family_substitute(family, ast);
  return (lhs - rhs).substitute(params).is_zero();
}

SolutionFamily nondegenerate_family() {
  return make_family("thm5",
                     {"f(x) = (g1*l(x) + b2*b2 + 2*g2)*x + b3*b3*m(x)",
                      "h(x) = b2*x + b3*m(x)",
                      "k(x) = (g1*l(x) + g2)*x + g3*m(x)"},
                     {"b3 != 0", "g1 != 0"});
}

SolutionFamily linear_leibniz_family() {
  return make_family("prop4", {"f(x) = (lam*lam + 2*k1)*x + d(x)", "k(x) = k1*x + d(x)"});
}

SolutionFamily sofy_family() { return make_family("sofy", {"h(x) = m(x) - x"}); }

SolutionFamily zero_family(const std::vector<std::string>& functions) {
  std::vector<std::string> defs;
  for (const auto& f : functions) defs.push_back(f + "(x) = 0");
  return make_family("zero", defs);
}

SolutionFamily quadratic_log_family() {
  auto poly = [](const std::string& fn, const std::string& c) {
    return fn + "(x) = (" + c + "11*l1(x)*l1(x) + " + c + "12*l1(x)*l2(x) + " + c +
           "21*l2(x)*l1(x) + " + c + "22*l2(x)*l2(x) + " + c + "1*l1(x) + " + c + "2*l2(x) + " +
           c + ")*x";
  };
  return make_family("quadratic", {poly("f", "a"), poly("h", "b"), poly("k", "g")});
}

std::map<std::string, SymbolicCase> builtin_cases() {
  const std::string pexider = "f(x*y) = h(x)*h(y) + x*k(y) + k(x)*y";
  return {
      {"thm5", {nondegenerate_family(), pexider}},
      {"prop4", {linear_leibniz_family(), "f(x*y) = lam*lam*x*y + x*k(y) + k(x)*y"}},
      {"sofy", {sofy_family(), "h(x*y) = h(x)*y + x*h(y) + h(x)*h(y)"}},
      {"zero", {zero_family({"f", "h", "k"}), pexider}},
      {"quadratic", {quadratic_log_family(), pexider}},
  };
}

}  // namespace fnq
