#include <gtest/gtest.h>

#include "fnq/error.hpp"
#include "fnq/theorems.hpp"

namespace fnq {
namespace {

RingPtr ring(const RingSpec& s) { return make_ring(s); }

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no fnq::Error thrown";
  return ErrorCode::Usage;
}

struct SofyCase {
  RingSpec ring;
  Elem eps;
  std::size_t solutions;
  bool backward;
};

class Sofy : public ::testing::TestWithParam<SofyCase> {};

TEST_P(Sofy, ForwardAlwaysHolds) {
  const auto& c = GetParam();
  const auto rep = verify_sofy(ring(c.ring), c.eps);
  EXPECT_TRUE(rep.forward_ok);
  EXPECT_EQ(rep.solutions_found, c.solutions);
  EXPECT_EQ(rep.backward_ok, c.backward);
  EXPECT_EQ(rep.holds(), c.backward);
  EXPECT_EQ(rep.details["forward_failures"], 0);
}

// Counts come from brute force over all maps; backward fails exactly when eps
// is a zero divisor.
INSTANTIATE_TEST_SUITE_P(
    SmallRings, Sofy,
    ::testing::Values(SofyCase{RingSpec::zn(2), 1, 3, true}, SofyCase{RingSpec::zn(3), 1, 4, true},
                      SofyCase{RingSpec::zn(3), 2, 4, true}, SofyCase{RingSpec::zn(4), 1, 6, true},
                      SofyCase{RingSpec::zn(4), 3, 6, true}, SofyCase{RingSpec::zn(4), 2, 4, false},
                      SofyCase{RingSpec::zn(6), 1, 35, true}, SofyCase{RingSpec::zn(6), 2, 7, false},
                      SofyCase{RingSpec::zn(6), 3, 5, false}, SofyCase{RingSpec::gf(2, 2), 2, 5, true},
                      SofyCase{RingSpec::poly_quot(2, 2), 2, 4, false}));

TEST(Sofy, BijectionForUnitEpsilon) {
  for (Elem eps : {1, 2}) {
    const auto rep = verify_sofy(ring(RingSpec::gf(3, 1)), eps);
    EXPECT_TRUE(rep.details["bijection"].get<bool>());
    EXPECT_EQ(rep.details["multiplicative_count"], rep.solutions_found);
  }
}

TEST(Sofy, UT2CentralEpsilon) {
  const auto rep = verify_sofy(ring(RingSpec::ut2(2)), 5);
  EXPECT_TRUE(rep.forward_ok);
  EXPECT_EQ(rep.solutions_found, 52u);
}

TEST(Sofy, Errors) {
  EXPECT_EQ(code_of([] { verify_sofy(ring(RingSpec::zn(4)), 0); }), ErrorCode::EpsilonZero);
  EXPECT_EQ(code_of([] { verify_sofy(ring(RingSpec::ut2(2)), 2); }), ErrorCode::NotCentral);
}

TEST(MultiplicativeShift, Examples) {
  const auto z2 = ring(RingSpec::zn(2));
  EXPECT_EQ(multiplicative_shift(FnTable{z2, {0, 1}}, 1).values, (std::vector<Elem>{0, 0}));
  EXPECT_EQ(multiplicative_shift(FnTable{z2, {0, 0}}, 1).values, (std::vector<Elem>{0, 1}));
  const auto g3 = ring(RingSpec::gf(3, 1));
  EXPECT_EQ(multiplicative_shift(FnTable{g3, {1, 1, 1}}, 2).values, (std::vector<Elem>{2, 0, 1}));
}

TEST(AnnihilatorWitness, Z6) {
  const auto z6 = ring(RingSpec::zn(6));
  EXPECT_EQ(annihilator_witness(zero_map(z6), *z6), Elem{1});
  EXPECT_FALSE(annihilator_witness(identity_map(z6), *z6));
  EXPECT_EQ(annihilator_witness(FnTable{z6, {0, 3, 0, 3, 0, 3}}, *z6), Elem{2});
}

TEST(MP, OnlyZeroOnSmallRings) {
  for (const auto& s : {RingSpec::gf(3, 1), RingSpec::gf(5, 1), RingSpec::gf(2, 2), RingSpec::zn(4),
                        RingSpec::zn(6), RingSpec::poly_quot(2, 2)}) {
    const auto r = ring(s);
    const auto rep = verify_mp(r);
    EXPECT_TRUE(rep.holds()) << r->name();
    ASSERT_EQ(rep.solutions_found, 1u) << r->name();
    EXPECT_EQ(rep.witnesses.front().first.functions.at("f"), zero_map(r));
  }
}

TEST(MP, ConverseIsInformational) {
  const auto rep = verify_mp(ring(RingSpec::zn(6)));
  EXPECT_TRUE(rep.holds());
  EXPECT_FALSE(rep.details["zero_divisor_free"].get<bool>());
  EXPECT_EQ(rep.details["converse_checked"], 792);
  EXPECT_EQ(rep.details["converse_failures"], 791);
  EXPECT_FALSE(rep.informational.empty());
}

TEST(ClassifyPexider, Examples) {
  const auto g3 = ring(RingSpec::gf(3, 1));
  const auto lin = classify_pexider(FnTable{g3, {0, 2, 1}}, FnTable{g3, {0, 1, 2}}, FnTable{g3, {0, 2, 1}});
  EXPECT_EQ(lin.tag.kind, FamilyKind::AllLinear);
  EXPECT_EQ(lin.tag.scalars.at("lambda1"), 1);
  EXPECT_EQ(lin.tag.scalars.at("lambda2"), 2);
  EXPECT_EQ(lin.rank, 1u);

  const auto zero = classify_pexider(zero_map(g3), zero_map(g3), zero_map(g3));
  EXPECT_EQ(zero.tag.kind, FamilyKind::AllLinear);
  EXPECT_EQ(zero.tag.scalars.at("lambda1"), 0);
  EXPECT_EQ(zero.tag.scalars.at("lambda2"), 0);

  // Frobenius on GF(4): f = h = x^2, k = 0.
  const auto g4 = ring(RingSpec::gf(2, 2));
  const FnTable frob{g4, {0, 1, 3, 2}};
  const auto sq = classify_pexider(frob, frob, zero_map(g4));
  EXPECT_EQ(sq.tag.kind, FamilyKind::MultiplicativeSquare);
  EXPECT_EQ(sq.tag.scalars.at("h1"), 1);
  EXPECT_EQ(sq.tag.scalars.at("lambda"), 0);
  EXPECT_TRUE(sq.char2_hypothesis_unmet);
}

TEST(ClassifyPexider, Errors) {
  const auto g3 = ring(RingSpec::gf(3, 1));
  EXPECT_EQ(code_of([&] { classify_pexider(identity_map(g3), zero_map(g3), zero_map(g3)); }),
            ErrorCode::ResidualNonzero);
  const auto z4 = ring(RingSpec::zn(4));
  EXPECT_EQ(code_of([&] { classify_pexider(zero_map(z4), zero_map(z4), zero_map(z4)); }),
            ErrorCode::NotAField);
}

// Every listed member of every degenerate family solves the equation, and
// classifying it gives back a tag that instantiates to the same triple.
TEST(PexiderFamilies, ClosureAndRoundTrip) {
  for (const auto& s : {RingSpec::gf(3, 1), RingSpec::gf(5, 1)}) {
    const auto r = ring(s);
    const auto eq = parse_equation(kPexiderEquation);
    for (FamilyKind kind : degenerate_families()) {
      const auto tags = family_instances(r, kind, 200);
      EXPECT_FALSE(tags.empty()) << to_string(kind);
      for (const auto& tag : tags) {
        const auto t = instantiate(tag, r);
        Binding b;
        b.functions.emplace("f", t.f);
        b.functions.emplace("h", t.h);
        b.functions.emplace("k", t.k);
        ASSERT_TRUE(residual(eq, b, *r).empty()) << tag.describe(*r);
        const auto back = instantiate(classify_pexider(t.f, t.h, t.k).tag, r);
        EXPECT_EQ(back.f, t.f);
        EXPECT_EQ(back.h, t.h);
        EXPECT_EQ(back.k, t.k);
      }
    }
  }
}

TEST(PexiderFamilies, SamplingIsSeeded) {
  const auto r = ring(RingSpec::gf(5, 1));
  const auto a = family_instances(r, FamilyKind::MultiplicativeSquareShifted, 20, 3);
  const auto b = family_instances(r, FamilyKind::MultiplicativeSquareShifted, 20, 3);
  ASSERT_EQ(a.size(), 20u);
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(a[i].describe(*r), b[i].describe(*r));
}

TEST(VerifyPexider, GF3) {
  const auto rep = verify_pexider(ring(RingSpec::gf(3, 1)));
  EXPECT_TRUE(rep.holds());
  EXPECT_EQ(rep.solutions_found, 45u);
  EXPECT_EQ(rep.details["family_counts"]["AllLinear"], 9);
  EXPECT_EQ(rep.details["family_counts"]["MultiplicativeSquare"], 12);
  EXPECT_EQ(rep.details["family_counts"]["LambdaKFamilyB"], 8);
  EXPECT_EQ(rep.details["family_counts"]["MultiplicativeSquareShifted"], 16);
  EXPECT_EQ(rep.details["rank_counts"]["1"], 9);
  EXPECT_EQ(rep.details["rank_counts"]["2"], 36);
}

TEST(VerifyPexider, GF5AndGF4) {
  const auto g5 = verify_pexider(ring(RingSpec::gf(5, 1)));
  EXPECT_TRUE(g5.holds());
  EXPECT_EQ(g5.solutions_found, 425u);
  const auto g4 = verify_pexider(ring(RingSpec::gf(2, 2)));
  EXPECT_TRUE(g4.holds());
  EXPECT_EQ(g4.solutions_found, 160u);
  EXPECT_TRUE(g4.details["char2_hypothesis_unmet"].get<bool>());
}

TEST(Alien, WitnessInstance) {
  const auto r = ring(RingSpec::gf(5, 1));
  const auto rep = verify_alien(r, 1, 2);
  EXPECT_TRUE(rep.holds());
  EXPECT_EQ(rep.details["scale"], 3);
  ASSERT_EQ(rep.solutions_found, 2u);
  EXPECT_EQ(rep.witnesses[0].first.functions.at("f"), zero_map(r));
  EXPECT_EQ(rep.witnesses[1].first.functions.at("f").values, (std::vector<Elem>{0, 3, 1, 4, 2}));
}

TEST(Alien, AllParameterPairs) {
  for (const auto& s : {RingSpec::gf(3, 1), RingSpec::gf(5, 1)}) {
    const auto r = ring(s);
    for (Elem l = 0; l < r->size(); ++l)
      for (Elem m = 0; m < r->size(); ++m) {
        if (l == 0 && m == 0) {
          EXPECT_EQ(code_of([&] { verify_alien(r, l, m); }), ErrorCode::BothZero);
          continue;
        }
        const auto rep = verify_alien(r, l, m);
        EXPECT_TRUE(rep.holds()) << r->name() << " " << l << "," << m;
        EXPECT_EQ(rep.solutions_found, rep.predicted_count);
      }
  }
  EXPECT_EQ(code_of([] { verify_alien(ring(RingSpec::zn(4)), 1, 1); }), ErrorCode::NotAField);
}

TEST(Report, JsonAndText) {
  const auto rep = verify_sofy(ring(RingSpec::zn(2)), 1);
  const auto j = to_json(rep);
  EXPECT_EQ(j["theorem"], "thm4");
  EXPECT_EQ(j["verdict"], "holds");
  EXPECT_EQ(j["solutions_found"], 3);
  EXPECT_FALSE(render_text(rep).empty());
  const auto bad = to_json(verify_sofy(ring(RingSpec::zn(4)), 2));
  EXPECT_EQ(bad["verdict"], "counterexamples");
}

}  // namespace
}  // namespace fnq
