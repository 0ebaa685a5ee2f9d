#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "fnq/eqdsl.hpp"

namespace fnq {

using Rational = boost::multiprecision::cpp_rational;

// x, y and generator values such as m_x, l1_y are indeterminates; every other
// symbol is a parameter.
bool is_indeterminate(std::string_view symbol);

// Multivariate polynomial with rational coefficients over commuting symbols,
// kept in canonical form (sorted monomials, no zero coefficients).
class SymExpr {
 public:
  using Monomial = std::vector<std::pair<std::string, unsigned>>;  // sorted by name

  SymExpr() = default;
  static SymExpr constant(const Rational& c);
  static SymExpr symbol(const std::string& name);

  const std::map<Monomial, Rational>& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }

  friend SymExpr operator+(const SymExpr& a, const SymExpr& b);
  friend SymExpr operator-(const SymExpr& a, const SymExpr& b);
  friend SymExpr operator*(const SymExpr& a, const SymExpr& b);
  friend SymExpr operator-(const SymExpr& a);
  friend bool operator==(const SymExpr& a, const SymExpr& b) { return a.terms_ == b.terms_; }

  // Replaces the given symbols by values; others are kept.
  SymExpr substitute(const std::map<std::string, Rational>& values) const;
  // Coefficient of every indeterminate monomial, as a polynomial in parameters.
  std::map<Monomial, SymExpr> coefficients() const;
  // Scaled to integer coefficients with gcd 1 and a positive leading term.
  SymExpr primitive() const;
  // Terms by ascending degree, then by name: "g3 + b2*b3", "2*a11 - b1^2".
  std::string to_string() const;

 private:
  void add_term(const Monomial& m, const Rational& c);
  std::map<Monomial, Rational> terms_;
};

// Unknown functions written in terms of x, parameters and the generators
// m (multiplicative), l, l1, l2 (logarithmic) and d (Leibniz), each applied to x.
struct SolutionFamily {
  std::string name;
  std::map<std::string, ExprPtr> functions;  // body of name(x)
  std::vector<std::string> annotations;      // side conditions that are not equations
};

// Each definition reads "f(x) = <expr>". Throws UnsupportedGenerator for an
// application of anything but a generator inside a body.
SolutionFamily make_family(std::string name, const std::vector<std::string>& definitions,
                           std::vector<std::string> annotations = {});

// Both sides of the equation with the family inserted and the generators at
// x*y rewritten. Throws UnsupportedArgument for arguments other than x, y, x*y.
std::pair<SymExpr, SymExpr> family_substitute(const SolutionFamily& family, const EquationAst& ast);

// Parameter polynomials that vanish exactly when the family solves the
// equation identically; primitive, deduplicated, sorted by rendering.
std::vector<SymExpr> derive_constraints(const SolutionFamily& family, const EquationAst& ast);
std::vector<std::string> render_constraints(const std::vector<SymExpr>& constraints);

bool check_identity(const SolutionFamily& family, const EquationAst& ast,
                    const std::map<std::string, Rational>& params);

// Built-in families.
SolutionFamily nondegenerate_family();     // f, h, k with m and l; needs g3 + b2*b3 = 0
SolutionFamily linear_leibniz_family();    // f, k with a Leibniz d
SolutionFamily sofy_family();              // h = m - id
SolutionFamily zero_family(const std::vector<std::string>& functions);
SolutionFamily quadratic_log_family();     // degree-2 ansatz in two logarithms l1, l2

// Name -> (family, equation text) for the built-in symbolic checks.
struct SymbolicCase {
  SolutionFamily family;
  std::string equation;
};
std::map<std::string, SymbolicCase> builtin_cases();

}  // namespace fnq
