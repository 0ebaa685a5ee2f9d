#include "fnq/eqdsl.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <set>

#include "fnq/error.hpp"

namespace fnq {

ExprPtr Expr::var_x() { return std::make_shared<const Expr>(Expr{ExprKind::VarX, {}, 0, {}, {}}); }
ExprPtr Expr::var_y() { return std::make_shared<const Expr>(Expr{ExprKind::VarY, {}, 0, {}, {}}); }
ExprPtr Expr::param(std::string name) {
  return std::make_shared<const Expr>(Expr{ExprKind::Param, std::move(name), 0, {}, {}});
}
ExprPtr Expr::app(std::string fn, ExprPtr arg) {
  return std::make_shared<const Expr>(Expr{ExprKind::FnApp, std::move(fn), 0, std::move(arg), {}});
}
ExprPtr Expr::binary(ExprKind kind, ExprPtr a, ExprPtr b) {
  return std::make_shared<const Expr>(Expr{kind, {}, 0, std::move(a), std::move(b)});
}
ExprPtr Expr::negate(ExprPtr a) {
  return std::make_shared<const Expr>(Expr{ExprKind::Neg, {}, 0, std::move(a), {}});
}
ExprPtr Expr::literal(std::uint64_t v) {
  return std::make_shared<const Expr>(Expr{ExprKind::IntLit, {}, v, {}, {}});
}

bool structurally_equal(const ExprPtr& a, const ExprPtr& b) {
  if (!a || !b) return !a && !b;
  if (a->kind != b->kind || a->name != b->name || a->value != b->value) return false;
  return structurally_equal(a->lhs, b->lhs) && structurally_equal(a->rhs, b->rhs);
}

namespace {

bool contains_app(const ExprPtr& e) {
  if (!e) return false;
  if (e->kind == ExprKind::FnApp) return true;
  return contains_app(e->lhs) || contains_app(e->rhs);
}

bool nested(const ExprPtr& e) {
  if (!e) return false;
  if (e->kind == ExprKind::FnApp && contains_app(e->lhs)) return true;
  return nested(e->lhs) || nested(e->rhs);
}

void collect_names(const ExprPtr& e, std::set<std::string>& fns, std::set<std::string>& params) {
  if (!e) return;
  if (e->kind == ExprKind::FnApp) fns.insert(e->name);
  if (e->kind == ExprKind::Param) params.insert(e->name);
  collect_names(e->lhs, fns, params);
  collect_names(e->rhs, fns, params);
}

bool ident_start(unsigned char c) { return std::isalpha(c) || c == '_' || c >= 0x80; }
bool ident_char(unsigned char c) { return std::isalnum(c) || c == '_' || c >= 0x80; }

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  EquationAst equation() {
    EquationAst ast;
    ast.lhs = expr();
    expect('=');
    ast.rhs = expr();
    finish();
    std::set<std::string> fns, params;
    collect_names(ast.lhs, fns, params);
    collect_names(ast.rhs, fns, params);
    for (const auto& f : fns)
      if (params.count(f))
        throw Error(ErrorCode::ArityError,
                    "\"" + f + "\" is used both as a function and as a parameter");
    ast.functions.assign(fns.begin(), fns.end());
    ast.params.assign(params.begin(), params.end());
    return ast;
  }

  ExprPtr lone_expression() {
    ExprPtr e = expr();
    finish();
    return e;
  }

 private:
  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  [[noreturn]] void fail(const std::string& what) {
    skip_ws();
    const std::string found =
        pos_ < text_.size() ? "'" + std::string(1, text_[pos_]) + "'" : "end of input";
    throw Error(ErrorCode::SyntaxError,
                "syntax error at offset " + std::to_string(pos_ + 1) + ": expected " + what +
                    ", found " + found,
                pos_ + 1);
  }

  bool peek(char c) {
    skip_ws();
    return pos_ < text_.size() && text_[pos_] == c;
  }

  void expect(char c) {
    if (!peek(c)) fail(std::string("'") + c + "'");
    ++pos_;
  }

  void finish() {
    skip_ws();
    if (pos_ != text_.size()) fail("end of input");
  }

  ExprPtr expr() {
    ExprPtr e = term();
    while (true) {
      if (peek('+')) {
        ++pos_;
        e = Expr::binary(ExprKind::Add, e, term());
      } else if (peek('-')) {
        ++pos_;
        e = Expr::binary(ExprKind::Sub, e, term());
      } else {
        return e;
      }
    }
  }

  ExprPtr term() {
    ExprPtr e = unary();
    while (peek('*')) {
      ++pos_;
      e = Expr::binary(ExprKind::Mul, e, unary());
    }
    return e;
  }

  ExprPtr unary() {
    if (peek('-')) {
      ++pos_;
      return Expr::negate(unary());
    }
    return atom();
  }

  ExprPtr atom() {
    skip_ws();
    if (pos_ >= text_.size()) fail("expression");
    const auto c = static_cast<unsigned char>(text_[pos_]);
    if (c == '(') {
      ++pos_;
      ExprPtr e = expr();
      expect(')');
      return e;
    }
    if (std::isdigit(c)) {
      std::uint64_t v = 0;
      const std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        const auto d = static_cast<std::uint64_t>(text_[pos_] - '0');
        if (v > (UINT64_MAX - d) / 10) {
          pos_ = start;
          fail("integer that fits in 64 bits");
        }
        v = v * 10 + d;
        ++pos_;
      }
      return Expr::literal(v);
    }
    if (ident_start(c)) {
      const std::size_t start = pos_;
      while (pos_ < text_.size() && ident_char(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      std::string name(text_.substr(start, pos_ - start));
      if (name == "x") return Expr::var_x();
      if (name == "y") return Expr::var_y();
      if (peek('(')) {
        ++pos_;
        ExprPtr arg = expr();
        expect(')');
        return Expr::app(std::move(name), std::move(arg));
      }
      return Expr::param(std::move(name));
    }
    fail("expression");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

int precedence(const ExprPtr& e) {
  switch (e->kind) {
    case ExprKind::Add:
    case ExprKind::Sub: return 1;
    case ExprKind::Mul: return 2;
    case ExprKind::Neg: return 3;
    default: return 4;
  }
}

std::string print(const ExprPtr& e, int min_prec) {
  std::string out;
  switch (e->kind) {
    case ExprKind::VarX: out = "x"; break;
    case ExprKind::VarY: out = "y"; break;
    case ExprKind::Param: out = e->name; break;
    case ExprKind::IntLit: out = std::to_string(e->value); break;
    case ExprKind::FnApp: out = e->name + "(" + print(e->lhs, 0) + ")"; break;
    case ExprKind::Add: out = print(e->lhs, 1) + " + " + print(e->rhs, 2); break;
    case ExprKind::Sub: out = print(e->lhs, 1) + " - " + print(e->rhs, 2); break;
    case ExprKind::Mul: out = print(e->lhs, 2) + "*" + print(e->rhs, 3); break;
    case ExprKind::Neg: out = "-" + print(e->lhs, 3); break;
  }
  return precedence(e) < min_prec ? "(" + out + ")" : out;
}

std::string_view kind_name(ExprKind k) {
  switch (k) {
    case ExprKind::VarX: return "VarX";
    case ExprKind::VarY: return "VarY";
    case ExprKind::Param: return "Param";
    case ExprKind::FnApp: return "FnApp";
    case ExprKind::Add: return "Add";
    case ExprKind::Sub: return "Sub";
    case ExprKind::Mul: return "Mul";
    case ExprKind::Neg: return "Neg";
    case ExprKind::IntLit: return "IntLit";
  }
  return "?";
}

bool is_one(const ExprPtr& e) { return e->kind == ExprKind::IntLit && e->value == 1; }

// y := 1, then drop multiplications by the literal 1.
ExprPtr substitute_y_one(const ExprPtr& e) {
  switch (e->kind) {
    case ExprKind::VarY: return Expr::literal(1);
    case ExprKind::VarX:
    case ExprKind::Param:
    case ExprKind::IntLit: return e;
    case ExprKind::FnApp: return Expr::app(e->name, substitute_y_one(e->lhs));
    case ExprKind::Neg: return Expr::negate(substitute_y_one(e->lhs));
    case ExprKind::Mul: {
      ExprPtr a = substitute_y_one(e->lhs), b = substitute_y_one(e->rhs);
      if (is_one(b)) return a;
      if (is_one(a)) return b;
      return Expr::binary(ExprKind::Mul, a, b);
    }
    case ExprKind::Add:
    case ExprKind::Sub:
      return Expr::binary(e->kind, substitute_y_one(e->lhs), substitute_y_one(e->rhs));
  }
  return e;
}

std::size_t count_apps(const ExprPtr& e, const std::string& fn) {
  if (!e) return 0;
  return (e->kind == ExprKind::FnApp && e->name == fn ? 1 : 0) + count_apps(e->lhs, fn) +
         count_apps(e->rhs, fn);
}

void flatten(const ExprPtr& e, bool positive, std::vector<std::pair<ExprPtr, bool>>& out) {
  switch (e->kind) {
    case ExprKind::Add:
      flatten(e->lhs, positive, out);
      flatten(e->rhs, positive, out);
      return;
    case ExprKind::Sub:
      flatten(e->lhs, positive, out);
      flatten(e->rhs, !positive, out);
      return;
    case ExprKind::Neg: flatten(e->lhs, !positive, out); return;
    default: out.push_back({e, positive});
  }
}

ExprPtr rebuild(const std::vector<std::pair<ExprPtr, bool>>& terms) {
  if (terms.empty()) return Expr::literal(0);
  ExprPtr e = terms.front().second ? terms.front().first : Expr::negate(terms.front().first);
  for (std::size_t i = 1; i < terms.size(); ++i)
    e = Expr::binary(terms[i].second ? ExprKind::Add : ExprKind::Sub, e, terms[i].first);
  return e;
}

}  // namespace

bool EquationAst::has_nested_applications() const { return nested(lhs) || nested(rhs); }

EquationAst parse_equation(std::string_view text) { return Parser(text).equation(); }

ExprPtr parse_expression(std::string_view text) { return Parser(text).lone_expression(); }

std::string to_string(const ExprPtr& e) { return print(e, 0); }

std::string to_string(const EquationAst& ast) {
  return to_string(ast.lhs) + " = " + to_string(ast.rhs);
}

nlohmann::json to_json(const ExprPtr& e) {
  nlohmann::json j;
  j["kind"] = kind_name(e->kind);
  switch (e->kind) {
    case ExprKind::Param: j["name"] = e->name; break;
    case ExprKind::IntLit: j["value"] = e->value; break;
    case ExprKind::FnApp:
      j["name"] = e->name;
      j["arg"] = to_json(e->lhs);
      break;
    case ExprKind::Neg: j["operand"] = to_json(e->lhs); break;
    case ExprKind::Add:
    case ExprKind::Sub:
    case ExprKind::Mul:
      j["lhs"] = to_json(e->lhs);
      j["rhs"] = to_json(e->rhs);
      break;
    default: break;
  }
  return j;
}

nlohmann::json to_json(const EquationAst& ast) {
  return {{"lhs", to_json(ast.lhs)},
          {"rhs", to_json(ast.rhs)},
          {"functions", ast.functions},
          {"params", ast.params},
          {"text", to_string(ast)}};
}

Elem eval_side(const ExprPtr& e, const Binding& b, Elem x, Elem y, const Ring& ring) {
  switch (e->kind) {
    case ExprKind::VarX: return x;
    case ExprKind::VarY: return y;
    case ExprKind::IntLit: {
      if (e->value == 0) return ring.zero();
      const unsigned c = ring.characteristic();
      return ring.from_int(c ? static_cast<long long>(e->value % c) : 1);
    }
    case ExprKind::Param: {
      auto it = b.params.find(e->name);
      if (it == b.params.end())
        throw Error(ErrorCode::UnboundName, "parameter \"" + e->name + "\" is not bound");
      return it->second;
    }
    case ExprKind::FnApp: {
      auto it = b.functions.find(e->name);
      if (it == b.functions.end())
        throw Error(ErrorCode::UnboundName, "function \"" + e->name + "\" is not bound");
      const Elem arg = eval_side(e->lhs, b, x, y, ring);
      const int pos = ring.domain_pos(arg);
      if (pos < 0)
        throw Error(ErrorCode::ArgumentOutsideDomain,
                    e->name + " applied to " + ring.element_name(arg) + ", outside its domain");
      return it->second.values[static_cast<std::size_t>(pos)];
    }
    case ExprKind::Neg: return ring.neg(eval_side(e->lhs, b, x, y, ring));
    case ExprKind::Add:
      return ring.add(eval_side(e->lhs, b, x, y, ring), eval_side(e->rhs, b, x, y, ring));
    case ExprKind::Sub:
      return ring.sub(eval_side(e->lhs, b, x, y, ring), eval_side(e->rhs, b, x, y, ring));
    case ExprKind::Mul:
      return ring.mul(eval_side(e->lhs, b, x, y, ring), eval_side(e->rhs, b, x, y, ring));
  }
  return ring.zero();
}

PivotResult pivot_reduce(const EquationAst& ast, const std::string& pivot_fn) {
  const ExprPtr& l = ast.lhs;
  const bool shape_ok = l->kind == ExprKind::FnApp && l->name == pivot_fn &&
                        l->lhs->kind == ExprKind::Mul && l->lhs->lhs->kind == ExprKind::VarX &&
                        l->lhs->rhs->kind == ExprKind::VarY;
  if (!shape_ok)
    throw Error(ErrorCode::NotReducible,
                "left side must be exactly " + pivot_fn + "(x*y), got " + to_string(l));
  const ExprPtr pivot_at_x = Expr::app(pivot_fn, Expr::var_x());
  const ExprPtr rhs = substitute_y_one(ast.rhs);
  if (count_apps(rhs, pivot_fn) == 0) return PivotDefinition{rhs};

  std::vector<std::pair<ExprPtr, bool>> terms;
  flatten(rhs, true, terms);
  auto it = std::find_if(terms.begin(), terms.end(), [&](const auto& t) {
    return t.second && structurally_equal(t.first, pivot_at_x);
  });
  if (it != terms.end()) {
    terms.erase(it);
    return PivotConstraint{rebuild(terms)};
  }
  terms.push_back({pivot_at_x, false});
  return PivotConstraint{rebuild(terms)};
}

}  // namespace fnq
