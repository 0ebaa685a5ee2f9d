#include <gtest/gtest.h>

#include <random>

#include "fnq/eqdsl.hpp"
#include "fnq/error.hpp"

namespace fnq {
namespace {

Error error_of(std::string_view text) {
  try {
    parse_equation(text);
  } catch (const Error& e) {
    return e;
  }
  ADD_FAILURE() << "parsed: " << text;
  return Error(ErrorCode::Usage, "");
}

std::string pivot_text(std::string_view eq, const std::string& fn) {
  const auto r = pivot_reduce(parse_equation(eq), fn);
  if (const auto* d = std::get_if<PivotDefinition>(&r)) return "def " + to_string(d->expr);
  return "con " + to_string(std::get<PivotConstraint>(r).expr);
}

TEST(Parse, FreeNames) {
  const auto a = parse_equation("f(x*y)=f(x)*y+x*f(y)+f(x)*f(y)");
  EXPECT_EQ(a.functions, std::vector<std::string>{"f"});
  EXPECT_TRUE(a.params.empty());
  const auto b = parse_equation("f(x*y)=h(x)*h(y)+x*k(y)+k(x)*y");
  EXPECT_EQ(b.functions, (std::vector<std::string>{"f", "h", "k"}));
  const auto c = parse_equation("h(x*y) = h(x)*y + x*h(y) + eps*h(x)*h(y)");
  EXPECT_EQ(c.params, std::vector<std::string>{"eps"});
}

TEST(Parse, SyntaxErrorsCarryOffsets) {
  const Error e = error_of("f(x*y)=");
  EXPECT_EQ(e.code(), ErrorCode::SyntaxError);
  ASSERT_TRUE(e.offset());
  EXPECT_EQ(*e.offset(), 8u);
  EXPECT_EQ(*error_of("f(x").offset(), 4u);
  EXPECT_EQ(*error_of("f(x)=)").offset(), 6u);
  EXPECT_EQ(*error_of("f(x)=3 4").offset(), 8u);
  EXPECT_EQ(error_of("f(x)=g(x,y)").code(), ErrorCode::SyntaxError);
}

TEST(Parse, ArityError) {
  EXPECT_EQ(error_of("f(x)=f").code(), ErrorCode::ArityError);
  EXPECT_EQ(error_of("a=a(x)").code(), ErrorCode::ArityError);
}

TEST(Parse, NestedApplicationsAreLegal) {
  const auto a = parse_equation("f(f(x)*y) = f(x)*f(y)");
  EXPECT_TRUE(a.has_nested_applications());
  EXPECT_FALSE(parse_equation("f(x*y) = f(x)*f(y)").has_nested_applications());
}

TEST(Print, Precedence) {
  EXPECT_EQ(to_string(parse_equation("f(x*y)=-(x-y)*f(x)+2*-y")), "f(x*y) = -(x - y)*f(x) + 2*-y");
  EXPECT_EQ(to_string(parse_equation("x-(y-x)=x - y - x")), "x - (y - x) = x - y - x");
  EXPECT_EQ(to_string(parse_equation("x*(y*x)=(x*y)*x")), "x*(y*x) = x*y*x");
}

TEST(Print, RoundTripGoldens) {
  for (const char* t :
       {"f(x*y)=f(x)*y+x*f(y)+f(x)*f(y)", "f(x*y)=h(x)*h(y)+x*k(y)+k(x)*y",
        "lam*(f(x*y) - f(x)*y - x*f(y)) + mu*(f(x*y) - f(x)*f(y)) = 0", "-(-x) = --x",
        "f(f(x)) = 3*x*(y - 2)", "h(x*y)+k(x*y)=h(x)*h(y)+x*k(y)+k(x)*y"}) {
    const auto a = parse_equation(t);
    const auto b = parse_equation(to_string(a));
    EXPECT_TRUE(structurally_equal(a.lhs, b.lhs) && structurally_equal(a.rhs, b.rhs)) << t;
  }
}

// Random expression trees survive print -> parse.
ExprPtr random_expr(std::mt19937& rng, int depth) {
  std::uniform_int_distribution<int> pick(0, depth > 0 ? 8 : 3);
  switch (pick(rng)) {
    case 0: return Expr::var_x();
    case 1: return Expr::var_y();
    case 2: return Expr::param("a");
    case 3: return Expr::literal(rng() % 5);
    case 4: return Expr::app("f", random_expr(rng, depth - 1));
    case 5: return Expr::negate(random_expr(rng, depth - 1));
    case 6: return Expr::binary(ExprKind::Add, random_expr(rng, depth - 1), random_expr(rng, depth - 1));
    case 7: return Expr::binary(ExprKind::Sub, random_expr(rng, depth - 1), random_expr(rng, depth - 1));
    default: return Expr::binary(ExprKind::Mul, random_expr(rng, depth - 1), random_expr(rng, depth - 1));
  }
}

TEST(Print, RoundTripRandom) {
  std::mt19937 rng(7);
  for (int i = 0; i < 500; ++i) {
    const ExprPtr e = random_expr(rng, 4);
    const ExprPtr back = parse_expression(to_string(e));
    ASSERT_TRUE(structurally_equal(e, back)) << to_string(e);
  }
}

TEST(Eval, Examples) {
  const auto z4 = make_ring(RingSpec::zn(4));
  const auto homo = parse_equation("f(x*y)=f(x)*y+x*f(y)+eps*f(x)*f(y)");
  Binding b;
  b.functions.emplace("f", FnTable{z4, {0, 0, 0, 0}});
  b.params["eps"] = 1;
  for (Elem x = 0; x < 4; ++x)
    for (Elem y = 0; y < 4; ++y) EXPECT_EQ(eval_side(homo.rhs, b, x, y, *z4), 0);

  const auto z6 = make_ring(RingSpec::zn(6));
  EXPECT_EQ(eval_side(parse_expression("x*y"), {}, 2, 3, *z6), 0);
  EXPECT_EQ(eval_side(parse_expression("7 - 2*x"), {}, 5, 0, *z6), 3);
}

TEST(Eval, NoncommutativeOrder) {
  const auto ut = make_ring(RingSpec::ut2(2));
  Binding b;
  b.functions.emplace("f", identity_map(ut));
  const auto fy = parse_expression("f(x)*y");
  const auto yf = parse_expression("y*f(x)");
  bool differs = false;
  for (Elem a = 0; a < 8; ++a)
    for (Elem c = 0; c < 8; ++c) {
      EXPECT_EQ(eval_side(fy, b, a, c, *ut), ut->mul(a, c));
      differs = differs || eval_side(fy, b, a, c, *ut) != eval_side(yf, b, a, c, *ut);
    }
  EXPECT_TRUE(differs);
  // [[1,1],[0,0]] * [[0,0],[0,1]] = [[0,1],[0,0]]; reversed product is 0.
  EXPECT_EQ(ut->mul(6, 1), 2);
  EXPECT_EQ(ut->mul(1, 6), 0);
}

TEST(Eval, Errors) {
  const auto z4 = make_ring(RingSpec::zn(4));
  try {
    eval_side(parse_expression("f(x)"), {}, 1, 1, *z4);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::UnboundName);
  }
  const auto even = make_ring(RingSpec::zn(6).with_subring({0, 2, 4}));
  Binding b;
  b.functions.emplace("f", FnTable{even, {0, 0, 0}});
  try {
    eval_side(parse_expression("f(x+1)"), b, 2, 2, *even);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ArgumentOutsideDomain);
  }
}

TEST(Eval, LiteralNeedsUnit) {
  const Ring nonunital = Ring::from_tables("2Z/4Z", 2, {0, 1, 1, 0}, {0, 0, 0, 0}, std::nullopt);
  EXPECT_EQ(eval_side(parse_expression("0*x"), {}, 1, 1, nonunital), 0);
  try {
    eval_side(parse_expression("2*x"), {}, 1, 1, nonunital);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::LiteralInNonUnitalRing);
  }
}

TEST(Pivot, Examples) {
  EXPECT_EQ(pivot_text("f(x*y)=h(x)*h(y)+x*k(y)+k(x)*y", "f"), "def h(x)*h(1) + x*k(1) + k(x)");
  EXPECT_EQ(pivot_text("h(x*y)=h(x)*y+x*h(y)+h(x)*h(y)", "h"), "con x*h(1) + h(x)*h(1)");
  EXPECT_EQ(pivot_text("f(x*y)=f(x)*y+x*f(y)", "f"), "con x*f(1)");
}

TEST(Pivot, NotReducible) {
  try {
    pivot_reduce(parse_equation("f(x)*f(y)=f(x*y)"), "f");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotReducible);
  }
}

// Every solution of the Pexider equation obeys the pivot definition.
TEST(Pivot, DefinitionHoldsOnSolutions) {
  const auto r = make_ring(RingSpec::gf(2, 1));
  const auto eq = parse_equation("f(x*y)=h(x)*h(y)+x*k(y)+k(x)*y");
  const auto def = std::get<PivotDefinition>(pivot_reduce(eq, "f")).expr;
  int solutions = 0;
  for (unsigned code = 0; code < 64; ++code) {
    Binding b;
    b.functions.emplace("f", FnTable{r, {Elem(code & 1), Elem(code >> 1 & 1)}});
    b.functions.emplace("h", FnTable{r, {Elem(code >> 2 & 1), Elem(code >> 3 & 1)}});
    b.functions.emplace("k", FnTable{r, {Elem(code >> 4 & 1), Elem(code >> 5 & 1)}});
    bool ok = true;
    for (Elem x = 0; x < 2; ++x)
      for (Elem y = 0; y < 2; ++y) ok = ok && eval_side(eq.lhs, b, x, y, *r) == eval_side(eq.rhs, b, x, y, *r);
    if (!ok) continue;
    ++solutions;
    for (Elem x = 0; x < 2; ++x) EXPECT_EQ(b.functions.at("f").at(x), eval_side(def, b, x, 1, *r));
  }
  EXPECT_GT(solutions, 0);
}

TEST(Json, Dump) {
  const auto j = to_json(parse_equation("f(x)=a"));
  EXPECT_EQ(j["functions"], nlohmann::json({"f"}));
  EXPECT_EQ(j["params"], nlohmann::json({"a"}));
  EXPECT_EQ(j["rhs"]["kind"], "Param");
  EXPECT_EQ(j["text"], "f(x) = a");
}

}  // namespace
}  // namespace fnq
