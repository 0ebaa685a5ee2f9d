#include <gtest/gtest.h>

#include "fnq/error.hpp"
#include "fnq/solver.hpp"

namespace fnq {
namespace {

SolveTask task_for(const RingSpec& spec, std::vector<std::string> eqs,
                   std::map<std::string, Elem> params = {}) {
  SolveTask t;
  t.ring = make_ring(spec);
  for (const auto& e : eqs) t.equations.push_back(parse_equation(e));
  t.params = std::move(params);
  return t;
}

std::vector<std::vector<Elem>> f_values(const SolutionSet& s, const std::string& name = "f") {
  std::vector<std::vector<Elem>> out;
  for (const auto& b : s.solutions) out.push_back(b.functions.at(name).values);
  return out;
}

const char* kPexider = "f(x*y)=h(x)*h(y)+x*k(y)+k(x)*y";

TEST(Solve, LeibnizOnGF3) {
  const auto s = solve(task_for(RingSpec::gf(3, 1), {"f(x*y)=f(x)*y+x*f(y)"}));
  EXPECT_EQ(f_values(s), (std::vector<std::vector<Elem>>{{0, 0, 0}}));
  EXPECT_EQ(s.enumerated_count, 27u);
  EXPECT_FALSE(s.pruned_by_pivot);
}

TEST(Solve, SofyOnZ2) {
  // m - id for the three multiplicative maps m
  const auto s = solve(task_for(RingSpec::zn(2), {"f(x*y)=f(x)*y+x*f(y)+f(x)*f(y)"}));
  EXPECT_EQ(f_values(s), (std::vector<std::vector<Elem>>{{0, 0}, {0, 1}, {1, 0}}));
}

TEST(Solve, PexiderOnGF3UsesPivot) {
  const auto s = solve(task_for(RingSpec::gf(3, 1), {kPexider}));
  EXPECT_TRUE(s.pruned_by_pivot);
  ASSERT_TRUE(s.pivot_fn);
  EXPECT_EQ(*s.pivot_fn, "f");
  EXPECT_EQ(s.enumerated_count, 729u);
  EXPECT_EQ(s.solutions.size(), 45u);
}

TEST(Solve, ClassRestrictedUnknown) {
  auto t = task_for(RingSpec::gf(5, 1), {"f(x*y)=f(x)*f(y)"});
  t.classes["f"] = {ClassTag::Multiplicative};
  const auto s = solve(t);
  EXPECT_EQ(s.solutions.size(), 6u);
  EXPECT_EQ(s.enumerated_count, 6u);
  // An additive constraint on the pivot is checked after it is computed.
  auto u = task_for(RingSpec::gf(3, 1), {kPexider});
  u.classes["f"] = {ClassTag::Additive};
  for (const auto& b : solve(u).solutions) EXPECT_TRUE(is_additive(b.functions.at("f")));
}

TEST(Solve, Systems) {
  const auto s = solve(task_for(RingSpec::zn(6), {"f(x*y)=f(x)*f(y)", "f(x*y)=f(x)*y+x*f(y)"}));
  EXPECT_EQ(f_values(s), (std::vector<std::vector<Elem>>{{0, 0, 0, 0, 0, 0}}));
  EXPECT_EQ(s.enumerated_count, 46656u);
}

TEST(Solve, NestedApplications) {
  // idempotent maps on Z3: f(f(x)) = f(x)
  const auto s = solve(task_for(RingSpec::zn(3), {"f(f(x)) = f(x)"}));
  auto ref = task_for(RingSpec::zn(3), {"f(f(x)) = f(x)"});
  EXPECT_EQ(f_values(s), f_values(solve_reference(ref)));
  EXPECT_EQ(s.solutions.size(), 10u);  // sum over image sizes k of C(3,k) k^(3-k)
}

TEST(Solve, NoUnknowns) {
  EXPECT_EQ(solve(task_for(RingSpec::ut2(2), {"x*y = y*x"})).solutions.size(), 0u);
  EXPECT_EQ(solve(task_for(RingSpec::zn(4), {"x*y = y*x"})).solutions.size(), 1u);
}

TEST(Solve, PivotOnly) {
  const auto s = solve(task_for(RingSpec::zn(5), {"f(x*y) = 2*x*y"}));
  EXPECT_EQ(f_values(s), (std::vector<std::vector<Elem>>{{0, 2, 4, 1, 3}}));
  EXPECT_EQ(s.enumerated_count, 1u);
}

TEST(Solve, BudgetExceeded) {
  auto t = task_for(RingSpec::ut2(2), {kPexider});
  try {
    solve(t);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::BudgetExceeded);
    EXPECT_NE(std::string(e.what()).find("2.81475e+14"), std::string::npos) << e.what();
  }
  EXPECT_GT(plan(t).candidates, 1e14L);
}

TEST(Solve, UnboundParameter) {
  try {
    solve(task_for(RingSpec::zn(3), {"f(x*y) = eps*f(x)"}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::UnboundName);
  }
}

TEST(Residual, Examples) {
  const auto r = make_ring(RingSpec::gf(3, 1));
  const auto eq = parse_equation(kPexider);
  Binding b;
  b.functions.emplace("f", FnTable{r, {0, 2, 1}});
  b.functions.emplace("h", FnTable{r, {0, 1, 2}});
  b.functions.emplace("k", FnTable{r, {0, 2, 1}});
  EXPECT_TRUE(residual(eq, b, *r).empty());
  b.functions.at("f").values[0] = 1;
  const auto bad = residual(eq, b, *r);
  ASSERT_FALSE(bad.empty());
  EXPECT_EQ(bad.front(), (std::pair<Elem, Elem>{0, 0}));

  const auto z6 = make_ring(RingSpec::zn(6));
  Binding zero;
  zero.functions.emplace("h", zero_map(z6));
  zero.params["eps"] = 1;
  EXPECT_TRUE(residual(parse_equation("h(x*y)=h(x)*y+x*h(y)+eps*h(x)*h(y)"), zero, *z6).empty());
}

// Pruned, unpruned and the serial reference agree on every small instance.
struct Instance {
  RingSpec ring;
  std::string eq;
  std::map<std::string, Elem> params;
};

class SelfConsistency : public ::testing::TestWithParam<Instance> {};

TEST_P(SelfConsistency, PrunedEqualsUnprunedEqualsReference) {
  const auto& in = GetParam();
  auto t = task_for(in.ring, {in.eq}, in.params);
  const auto pruned = solve(t);
  t.use_pivot = false;
  const auto unpruned = solve(t);
  const auto reference = solve_reference(t);
  ASSERT_EQ(pruned.solutions.size(), unpruned.solutions.size());
  ASSERT_EQ(pruned.solutions.size(), reference.solutions.size());
  for (std::size_t i = 0; i < pruned.solutions.size(); ++i) {
    EXPECT_EQ(pruned.solutions[i].functions, unpruned.solutions[i].functions);
    EXPECT_EQ(pruned.solutions[i].functions, reference.solutions[i].functions);
    EXPECT_TRUE(satisfies(t.equations, pruned.solutions[i], *t.ring));
  }
}

INSTANTIATE_TEST_SUITE_P(
    SmallRings, SelfConsistency,
    ::testing::Values(Instance{RingSpec::gf(2, 1), kPexider, {}}, Instance{RingSpec::gf(3, 1), kPexider, {}},
                      Instance{RingSpec::zn(4), kPexider, {}},
                      Instance{RingSpec::zn(4), "f(x*y)=f(x)*y+x*f(y)+eps*f(x)*f(y)", {{"eps", 1}}},
                      Instance{RingSpec::zn(4), "f(x*y)=f(x)*y+x*f(y)+eps*f(x)*f(y)", {{"eps", 2}}},
                      Instance{RingSpec::gf(3, 1), "f(x*y)=f(x)*f(y)", {}},
                      Instance{RingSpec::ut2(2).with_subring({0, 5}), "f(x*y)=f(x)*y+x*f(y)", {}},
                      Instance{RingSpec::gf(3, 1), "h(x*y)+k(x*y)=h(x)*h(y)+x*k(y)+k(x)*y", {}},
                      Instance{RingSpec::gf(3, 1),
                               "lam*(f(x*y) - f(x)*y - x*f(y)) + mu*(f(x*y) - f(x)*f(y)) = 0",
                               {{"lam", 1}, {"mu", 2}}}));

TEST(Determinism, WorkersDoNotChangeOutput) {
  auto t = task_for(RingSpec::gf(3, 1), {kPexider});
  std::string first;
  for (int w : {1, 2, 8}) {
    t.workers = w;
    const std::string out = to_json(solve(t), t).dump();
    if (first.empty())
      first = out;
    else
      EXPECT_EQ(out, first) << "workers=" << w;
  }
}

TEST(Serialization, CsvAndJson) {
  auto t = task_for(RingSpec::zn(2), {"f(x*y)=f(x)*y+x*f(y)+f(x)*f(y)"});
  const auto s = solve(t);
  EXPECT_EQ(to_csv(s, t), "f0,f1\n0,0\n0,1\n1,0\n");
  const auto j = to_json(s, t);
  EXPECT_EQ(j["solution_count"], 3);
  EXPECT_EQ(j["solutions"][1][0]["function"], "f");
  EXPECT_EQ(j["solutions"][1][0]["values"], nlohmann::json({0, 1}));
  EXPECT_FALSE(j["task"].contains("workers"));
}

}  // namespace
}  // namespace fnq
