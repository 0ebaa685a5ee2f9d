#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "fnq/maps.hpp"
#include "fnq/ring.hpp"
#include "json.hpp"

namespace fnq {

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

enum class ExprKind { VarX, VarY, Param, FnApp, Add, Sub, Mul, Neg, IntLit };

// Immutable expression node. FnApp and Neg use `lhs` as their operand.
struct Expr {
  ExprKind kind;
  std::string name;       // Param, FnApp
  std::uint64_t value = 0;  // IntLit
  ExprPtr lhs, rhs;

  static ExprPtr var_x();
  static ExprPtr var_y();
  static ExprPtr param(std::string name);
  static ExprPtr app(std::string fn, ExprPtr arg);
  static ExprPtr binary(ExprKind kind, ExprPtr a, ExprPtr b);
  static ExprPtr negate(ExprPtr a);
  static ExprPtr literal(std::uint64_t v);
};

bool structurally_equal(const ExprPtr& a, const ExprPtr& b);

struct EquationAst {
  ExprPtr lhs, rhs;
  std::vector<std::string> functions;  // sorted, unique
  std::vector<std::string> params;     // sorted, unique

  // True if some application has another application inside its argument.
  bool has_nested_applications() const;
};

EquationAst parse_equation(std::string_view text);
// Parses "name(x) = expr" style definitions too; exposed for family templates.
ExprPtr parse_expression(std::string_view text);

std::string to_string(const ExprPtr& e);
std::string to_string(const EquationAst& ast);
nlohmann::json to_json(const ExprPtr& e);
nlohmann::json to_json(const EquationAst& ast);

struct Binding {
  std::map<std::string, FnTable> functions;
  std::map<std::string, Elem> params;
};

// Evaluates inside-out at (x, y). Integer literals become n·1.
Elem eval_side(const ExprPtr& side, const Binding& binding, Elem x, Elem y, const Ring& ring);

struct PivotDefinition {
  ExprPtr expr;  // pivot_fn(x) = expr, free of pivot_fn
};
struct PivotConstraint {
  ExprPtr expr;  // expr = 0
};
using PivotResult = std::variant<PivotDefinition, PivotConstraint>;

// Substitutes y := 1 and tries to isolate pivot_fn(x). Throws NotReducible
// when the left side is not exactly pivot_fn(x*y).
PivotResult pivot_reduce(const EquationAst& ast, const std::string& pivot_fn);

}  // namespace fnq
