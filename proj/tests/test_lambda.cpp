#include <gtest/gtest.h>

#include "oracle.hpp"
#include "phic/errors.hpp"
#include "phic/gen.hpp"
#include "phic/lambda.hpp"
#include "phic/reduction.hpp"
#include "phic/surface.hpp"

using namespace phic;

namespace {

LamTerm L(const char* s) { return parse_lambda(s); }
Term P(const char* s) { return parse_term(s); }

ObsVerdict obs(const LamTerm& a, const LamTerm& b, std::size_t fuel = 2000) {
  return obs_equal(a, b, fuel).verdict;
}

}  // namespace

TEST(LamShift, Examples) {
  EXPECT_EQ(lam_shift(0, L("#0")), L("#1"));
  EXPECT_EQ(lam_shift(0, L("\\ #0")), L("\\ #0"));
  LamTerm e = L("\\ (#2) #1");
  EXPECT_EQ(oracle::shift(1, e), L("\\ (#3) #1"));
  EXPECT_EQ(lam_shift(1, e), L("\\ (#3) #1"));
}

TEST(LamShift, AgreesWithOracle) {
  TermGenerator g(51);
  for (int i = 0; i < 500; ++i) {
    LamTerm e = phi_to_lambda(g.open_term(8, 3));
    std::uint32_t c = g.below(4);
    ASSERT_EQ(lam_shift(c, e), oracle::shift(c, e)) << to_string(e);
  }
}

TEST(LamSubstitute, Basics) {
  EXPECT_EQ(lam_substitute(L("#0"), 0, L("{}")), L("{}"));
  EXPECT_EQ(lam_substitute(L("#1"), 0, L("{}")), L("#1"));
  EXPECT_EQ(lam_substitute(L("\\ #1"), 0, L("#0")), L("\\ #1"));
  EXPECT_EQ(lam_beta(L("\\ #1"), L("{a = #0}")), L("\\ {a = #1}"));
  EXPECT_TRUE(lam_free_in(L("\\ #1"), 0));
  EXPECT_FALSE(lam_free_in(L("\\ #0"), 0));
}

TEST(LamStep, Examples) {
  EXPECT_EQ(lam_step(L("((\\ #0) {a = \\ #0}).a")), L("{a = \\ #0}.a"));
  EXPECT_EQ(lam_step(L("({x = #0} with {y = #1}).x")), L("{x = #0}.x"));
  EXPECT_EQ(lam_step(L("({} with {a = #5}).a")), L("#5"));
  EXPECT_EQ(lam_step(L("{a = #1, b = #2}.b")), L("#2"));
  EXPECT_EQ(lam_step(L("#3")), std::nullopt);
}

TEST(LamStep, ConcatProjectsRightBiased) {
  EXPECT_EQ(lam_step(L("({a = #1} || {a = #2}).a")), L("{a = #2}.a"));
  EXPECT_EQ(lam_step(L("({a = #1} || {b = #2}).a")), L("{a = #1}.a"));
  // Unknown field set on the right: stuck.
  EXPECT_EQ(lam_step(L("({a = #1} || #0).a")), std::nullopt);
}

TEST(LamStep, FixUnfoldsOnlyInHeadPosition) {
  LamTerm f = L("fix (\\ {a = #0})");
  EXPECT_EQ(lam_step(f), std::nullopt);
  EXPECT_EQ(lam_step(L("(fix (\\ {a = #0})).a")), L("((\\ {a = #0}) fix (\\ {a = #0})).a"));
  EXPECT_EQ(lam_step(L("\\ (fix (\\ \\ #0)) #0")), std::nullopt);
  EXPECT_TRUE(lam_step(L("\\ (fix (\\ \\ #0)) #0"), FixUnfold::Eliminated).has_value());
}

TEST(Translate, Clauses) {
  EXPECT_EQ(to_string(phi_to_lambda(P("^0"))), "\\ (#2) (#1 || #0)");
  EXPECT_EQ(phi_to_lambda(P("^1")), L("\\ (#4) (#3 || #0)"));
  EXPECT_EQ(to_string(phi_to_lambda(P("[]"))), "fix (\\ \\ {})");
  EXPECT_EQ(phi_to_lambda(P("[x -> ^0]")), L("fix (\\ \\ {x = \\ (#2) (#1 || #0)})"));
  EXPECT_EQ(phi_to_lambda(P("[x -> ?, y -> []]")), L("fix (\\ \\ {x = #0.x, y = fix (\\ \\ {})})"));
  EXPECT_EQ(phi_to_lambda(P("^0.a")), L("((\\ (#2) (#1 || #0)) {}).a"));
  EXPECT_EQ(phi_to_lambda(P("^0(a -> ^1)")),
            L("\\ (\\ (#3) (#2 || #0)) (#0 with {a = \\ (#5) (#4 || #0)})"));
  std::string phi = to_string(phi_to_lambda(P("[x -> ?, @ -> []]")));
  EXPECT_NE(phi.find("with"), std::string::npos);
  EXPECT_EQ(phi_to_lambda(P("[x -> ?, @ -> []]")),
            L("fix (\\ \\ (((#1) #0).@) {} with {x = #0.x, @ = fix (\\ \\ {})})"));
}

TEST(ObsEqual, Examples) {
  EXPECT_EQ(obs(L("{a = #0} || ({b = #1} || {c = #2})"), L("({a = #0} || {b = #1}) || {c = #2}")),
            ObsVerdict::Equal);
  ObsResult ne = obs_equal(L("\\ #0"), L("\\ #1"), 100);
  EXPECT_EQ(ne.verdict, ObsVerdict::NotEqual);
  ASSERT_TRUE(ne.witness.has_value());
  EXPECT_EQ(obs(phi_to_lambda(P("[x -> ?](x -> [])")), phi_to_lambda(P("[x -> []]"))), ObsVerdict::Equal);
  EXPECT_THROW(obs_equal(L("#0"), L("#0"), 0), Error);
}

TEST(ObsEqual, EtaAndZeta) {
  EXPECT_EQ(obs(L("\\ (#1) #0"), L("#0")), ObsVerdict::Equal);
  EXPECT_EQ(obs(L("{} || #0"), L("#0")), ObsVerdict::Equal);
  EXPECT_EQ(obs(L("{a = #0, b = #1}"), L("{b = #1, a = #0}")), ObsVerdict::Equal);
  EXPECT_EQ(obs(L("{a = #0} || {a = #1}"), L("{a = #1}")), ObsVerdict::Equal);
}

TEST(ObsEqual, DivergenceIsInconclusive) {
  LamTerm omega = L("(\\ (#0) #0) (\\ (#0) #0)");
  EXPECT_EQ(obs(omega, L("{}"), 200), ObsVerdict::Inconclusive);
}

TEST(ObsEqual, SymmetricAndReflexive) {
  TermGenerator g(52);
  Reducer r;
  int pairs = 0;
  for (int i = 0; i < 400 && pairs < 60; ++i) {
    Term t = g.closed_term(7);
    auto rs = r.step_all(t);
    if (rs.empty()) continue;
    ++pairs;
    LamTerm a = phi_to_lambda(t), b = phi_to_lambda(rs.front().result);
    EXPECT_NE(obs(a, a), ObsVerdict::NotEqual);
    ObsVerdict ab = obs(a, b), ba = obs(b, a);
    ASSERT_NE(ab, ObsVerdict::NotEqual) << pretty(t);
    if (ab == ObsVerdict::Equal) {
      EXPECT_EQ(ba, ObsVerdict::Equal) << pretty(t);
    }
  }
}

TEST(Embedding, Examples) {
  EXPECT_EQ(lambda_to_phi(L("\\ #0")), P("[arg -> ?, body -> ^0.arg]"));
  EXPECT_EQ(lambda_to_phi(L("(\\ #0) (\\ #0)")),
            P("[arg -> ?, body -> ^0.arg](arg -> [arg -> ?, body -> ^0.arg]).body"));
  try {
    lambda_to_phi(L("{a = #0}"));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::UnsupportedConstruct);
    EXPECT_NE(std::string(e.what()).find("record"), std::string::npos);
  }
  EXPECT_EQ(phi_to_pure_lambda(lambda_to_phi(L("\\ \\ (#1) #0"))), L("\\ \\ (#1) #0"));
  EXPECT_EQ(phi_to_pure_lambda(P("[]")), std::nullopt);
}

TEST(Embedding, EvaluatesLikeBeta) {
  LamTerm k = L("(\\ \\ #1) (\\ #0)");
  auto nf = lam_normalize(k, 100);
  ASSERT_TRUE(nf.has_value());
  EXPECT_EQ(*nf, L("\\ \\ #0"));
  EvalOutcome r = Reducer().evaluate(lambda_to_phi(k), Strategy::NormalOrder, 1000);
  EXPECT_EQ(r.status, EvalStatus::Normal);
  EXPECT_EQ(phi_to_pure_lambda(r.term), nf);
}

TEST(Syntax, RoundTrip) {
  TermGenerator g(53);
  for (int i = 0; i < 300; ++i) {
    LamTerm e = phi_to_lambda(g.closed_term(8));
    ASSERT_EQ(parse_lambda(to_string(e)), e) << to_string(e);
    LamTerm p = g.pure_lambda(10);
    ASSERT_EQ(parse_lambda(to_string(p)), p) << to_string(p);
  }
  EXPECT_THROW(parse_lambda("\\ ("), Error);
  EXPECT_THROW(LamTerm::record({{Label("a"), L("#0")}, {Label("a"), L("#1")}}), Error);
}

// Mirrors of the φ-side laws for the λ target.
TEST(Properties, ShiftAndSubstituteInteract) {
  TermGenerator g(54);
  for (int i = 0; i < 500; ++i) {
    LamTerm e = phi_to_lambda(g.open_term(6, 3));
    LamTerm s = phi_to_lambda(g.closed_term(4));
    std::uint32_t j = g.below(3), k = g.below(j + 1);
    // After the shift nothing refers to j.
    ASSERT_EQ(lam_substitute(lam_shift(j, e), j, s), lam_shift(j, e)) << to_string(e);
    ASSERT_EQ(lam_shift(k, lam_shift(j, e)), lam_shift(j + 1, lam_shift(k, e))) << to_string(e);
  }
}
