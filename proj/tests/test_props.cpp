#include <gtest/gtest.h>

#include "phic/props.hpp"

using namespace phic::props;

namespace {

constexpr std::size_t kSamples = 150;
constexpr std::uint64_t kSeed = 2024;

void expect_clean(const SuiteReport& r) {
  EXPECT_TRUE(r.ok()) << format(r);
  EXPECT_EQ(r.samples, kSamples) << format(r);
}

}  // namespace

TEST(Suites, SubstitutionLemmas) {
  auto reports = substitution_lemmas(kSamples, kSeed);
  ASSERT_EQ(reports.size(), 4u);
  for (const auto& r : reports) {
    expect_clean(r);
    EXPECT_EQ(r.passed, r.samples);
  }
}

TEST(Suites, Confluence) { expect_clean(confluence(kSamples, kSeed)); }
TEST(Suites, Diamond) { expect_clean(diamond(kSamples, kSeed)); }
TEST(Suites, Completeness) { expect_clean(completeness(kSamples, kSeed)); }
TEST(Suites, TapSoundness) { expect_clean(tap_soundness(kSamples, kSeed)); }
TEST(Suites, TranslationSoundness) {
  SuiteReport r = translation_soundness(kSamples, kSeed);
  expect_clean(r);
  EXPECT_GE(r.pass_rate(), 0.8);
}
TEST(Suites, Embedding) { expect_clean(embedding(kSamples, kSeed)); }
TEST(Suites, RegularVersusParallel) { expect_clean(regular_vs_parallel(kSamples, kSeed)); }
TEST(Suites, Standardization) { expect_clean(standardization(kSamples, kSeed)); }
TEST(Suites, UniqueNormalForms) { expect_clean(unique_normal_forms(kSamples, kSeed)); }
TEST(Suites, PrintParse) { expect_clean(print_parse_roundtrip(kSamples, kSeed)); }

TEST(Suites, SeedsAreReproducible) {
  SuiteReport a = confluence(60, 99), b = confluence(60, 99);
  EXPECT_EQ(a.passed, b.passed);
  EXPECT_EQ(a.skipped, b.skipped);
  EXPECT_EQ(a.inconclusive, b.inconclusive);
}
