#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>

#include "fnq/error.hpp"
#include "fnq/ring.hpp"

namespace fnq {
namespace {

std::vector<Elem> all_of(const Ring& r) {
  std::vector<Elem> v(r.size());
  std::iota(v.begin(), v.end(), Elem{0});
  return v;
}

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no fnq::Error thrown";
  return ErrorCode::Usage;
}

TEST(Ring, ZnBasics) {
  const Ring r = build_ring(RingSpec::zn(6));
  EXPECT_EQ(r.size(), 6u);
  EXPECT_TRUE(r.is_commutative());
  ASSERT_TRUE(r.one());
  EXPECT_EQ(*r.one(), 1);
  EXPECT_EQ(r.mul(2, 3), 0);
  EXPECT_EQ(r.add(4, 5), 3);
  EXPECT_EQ(r.neg(2), 4);
  EXPECT_EQ(r.characteristic(), 6u);
  EXPECT_FALSE(r.is_field());
}

TEST(Ring, GF4WithExplicitModulus) {
  const Ring r = build_ring(RingSpec::gf(2, 2, {1, 1, 1}));
  EXPECT_EQ(r.size(), 4u);
  EXPECT_TRUE(r.is_field());
  EXPECT_EQ(r.units().size(), 3u);
  for (Elem e = 1; e < 4; ++e) EXPECT_TRUE(r.is_unit(e));
  // x = index 2, x^2 = x + 1 = index 3
  EXPECT_EQ(r.mul(2, 2), 3);
  EXPECT_EQ(r.characteristic(), 2u);
}

TEST(Ring, DefaultModulusIsFirstIrreducible) {
  EXPECT_EQ(build_ring(RingSpec::gf(2, 2)).content_hash(),
            build_ring(RingSpec::gf(2, 2, {1, 1, 1})).content_hash());
  EXPECT_EQ(build_ring(RingSpec::gf(2, 3)).content_hash(),
            build_ring(RingSpec::gf(2, 3, {1, 1, 0, 1})).content_hash());
  EXPECT_EQ(build_ring(RingSpec::gf(3, 2)).content_hash(),
            build_ring(RingSpec::gf(3, 2, {1, 0, 1})).content_hash());
}

TEST(Ring, UT2IsNoncommutative) {
  const Ring r = build_ring(RingSpec::ut2(2));
  EXPECT_EQ(r.size(), 8u);
  EXPECT_FALSE(r.is_commutative());
  bool found = false;
  for (Elem a : all_of(r))
    for (Elem b : all_of(r)) found = found || r.mul(a, b) != r.mul(b, a);
  EXPECT_TRUE(found);
  // identity [[1,0],[0,1]] = 1*4 + 0*2 + 1
  EXPECT_EQ(*r.one(), 5);
}

TEST(Ring, Center) {
  EXPECT_EQ(center(build_ring(RingSpec::zn(6))).size(), 6u);
  EXPECT_EQ(center(build_ring(RingSpec::gf(3, 1))).size(), 3u);
  EXPECT_EQ(center(build_ring(RingSpec::ut2(2))), (std::vector<Elem>{0, 5}));
}

TEST(Ring, Regular) {
  const Ring z6 = build_ring(RingSpec::zn(6));
  EXPECT_FALSE(is_regular(z6, 3));
  EXPECT_TRUE(is_regular(z6, 5));
  EXPECT_FALSE(is_regular(build_ring(RingSpec::gf(5, 1)), 0));
  EXPECT_EQ(z6.regular(), (std::vector<Elem>{1, 5}));
}

TEST(Ring, PolyQuot) {
  const Ring r = build_ring(RingSpec::poly_quot(2, 2));
  EXPECT_EQ(r.size(), 4u);
  EXPECT_EQ(r.mul(2, 2), 0);  // x^2 = 0
  EXPECT_TRUE(r.has_zero_divisors());
  EXPECT_EQ(r.units(), (std::vector<Elem>{1, 3}));
}

TEST(Ring, Errors) {
  EXPECT_EQ(code_of([] { build_ring(RingSpec::gf(4, 1)); }), ErrorCode::NonPrimeModulus);
  EXPECT_EQ(code_of([] { build_ring(RingSpec::gf(2, 2, {1, 0, 1})); }), ErrorCode::ReducibleModulus);
  EXPECT_EQ(code_of([] { build_ring(RingSpec::zn(300)); }), ErrorCode::BudgetExceeded);
  EXPECT_EQ(code_of([] { build_ring(RingSpec::gf(2, 40)); }), ErrorCode::BudgetExceeded);
  EXPECT_EQ(code_of([] { build_ring(RingSpec::zn(1)); }), ErrorCode::InvalidSpec);
  EXPECT_EQ(code_of([] { build_ring(RingSpec::zn(6).with_subring({0, 1})); }), ErrorCode::InvalidSpec);
  EXPECT_EQ(build_ring(RingSpec::zn(300), 300).size(), 300u);
}

TEST(Ring, Subring) {
  // {0, 2, 4} is closed in Z6 (a non-unital subring).
  const Ring r = build_ring(RingSpec::zn(6).with_subring({0, 2, 4}));
  EXPECT_TRUE(r.has_subring());
  EXPECT_EQ(r.domain(), (std::vector<Elem>{0, 2, 4}));
  EXPECT_EQ(r.domain_pos(4), 2);
  EXPECT_EQ(r.domain_pos(3), -1);
}

TEST(Ring, JsonRoundTrip) {
  const auto j = nlohmann::json::parse(R"({"kind":"Product","left":{"kind":"Zn","n":2},"right":{"kind":"GF","p":3,"k":1}})");
  const RingSpec spec = ring_spec_from_json(j);
  EXPECT_EQ(to_json(spec), j);
  const Ring r = build_ring(spec);
  EXPECT_EQ(r.size(), 6u);
  EXPECT_EQ(r.mul(1 * 3 + 2, 1 * 3 + 2), 1 * 3 + 1);  // (1,2)^2 = (1,1)
  EXPECT_EQ(code_of([] { ring_spec_from_json(nlohmann::json::parse(R"({"kind":"Foo"})")); }),
            ErrorCode::InvalidSpec);
}

TEST(Ring, FromInt) {
  const Ring r = build_ring(RingSpec::zn(6));
  EXPECT_EQ(r.from_int(7), 1);
  EXPECT_EQ(r.from_int(-1), 5);
  const Ring g = build_ring(RingSpec::gf(3, 2));
  EXPECT_EQ(g.from_int(2), 2);
  EXPECT_EQ(g.from_int(3), 0);
}

// Axioms hold for every built-in constructor (the constructor checks them too;
// this recomputes independently).
class RingAxioms : public ::testing::TestWithParam<RingSpec> {};

TEST_P(RingAxioms, Hold) {
  const Ring r = build_ring(GetParam());
  const auto els = all_of(r);
  for (Elem a : els) {
    EXPECT_EQ(r.add(a, r.zero()), a);
    EXPECT_EQ(r.add(a, r.neg(a)), r.zero());
    if (r.one()) {
      EXPECT_EQ(r.mul(a, *r.one()), a);
      EXPECT_EQ(r.mul(*r.one(), a), a);
    }
    for (Elem b : els) {
      EXPECT_EQ(r.add(a, b), r.add(b, a));
      for (Elem c : els) {
        ASSERT_EQ(r.add(r.add(a, b), c), r.add(a, r.add(b, c)));
        ASSERT_EQ(r.mul(r.mul(a, b), c), r.mul(a, r.mul(b, c)));
        ASSERT_EQ(r.mul(a, r.add(b, c)), r.add(r.mul(a, b), r.mul(a, c)));
        ASSERT_EQ(r.mul(r.add(a, b), c), r.add(r.mul(a, c), r.mul(b, c)));
      }
    }
  }
  for (Elem c : r.center())
    for (Elem x : els) EXPECT_EQ(r.mul(c, x), r.mul(x, c));
  if (r.is_field()) {
    EXPECT_EQ(r.units().size(), r.size() - 1);
    EXPECT_EQ(r.regular(), r.units());
  }
}

INSTANTIATE_TEST_SUITE_P(Builtins, RingAxioms,
                         ::testing::Values(RingSpec::zn(2), RingSpec::zn(6), RingSpec::zn(12),
                                           RingSpec::gf(5, 1), RingSpec::gf(2, 3), RingSpec::gf(3, 2),
                                           RingSpec::poly_quot(2, 3), RingSpec::poly_quot(3, 2),
                                           RingSpec::ut2(2), RingSpec::ut2(3),
                                           RingSpec::product(RingSpec::zn(2), RingSpec::ut2(2))));

TEST(Ring, ProductCenterIsProductOfCenters) {
  const Ring l = build_ring(RingSpec::ut2(2));
  const Ring rr = build_ring(RingSpec::zn(3));
  const Ring p = build_ring(RingSpec::product(RingSpec::ut2(2), RingSpec::zn(3)));
  std::vector<Elem> expected;
  for (Elem a : l.center())
    for (Elem b : rr.center()) expected.push_back(static_cast<Elem>(a * rr.size() + b));
  std::sort(expected.begin(), expected.end());
  EXPECT_EQ(p.center(), expected);
}

TEST(Ring, ContentHashDistinguishesRings) {
  EXPECT_NE(build_ring(RingSpec::zn(4)).content_hash(), build_ring(RingSpec::gf(2, 2)).content_hash());
  EXPECT_NE(build_ring(RingSpec::zn(4)).content_hash(), build_ring(RingSpec::poly_quot(2, 2)).content_hash());
}

}  // namespace
}  // namespace fnq
