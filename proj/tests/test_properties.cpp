#include "plic/lemmas.hpp"
#include "support.hpp"

using namespace plic;

class LemmaSuite : public ::testing::TestWithParam<std::uint64_t> {};

TEST_P(LemmaSuite, EveryTallyPasses) {
  auto tallies = lemmas::run_suite(GetParam(), 60);
  EXPECT_GE(tallies.size(), 18u);
  for (const auto& [name, t] : tallies) {
    EXPECT_GT(t.checked, 0u) << name;
    EXPECT_TRUE(t.all_passed()) << name << ": " << (t.failures.empty() ? "" : t.failures.front());
  }
}

INSTANTIATE_TEST_SUITE_P(Seeds, LemmaSuite, ::testing::Values(1u, 2u, 3u));

class GeneratorProperties : public ::testing::TestWithParam<int> {};

TEST_P(GeneratorProperties, NowhereConstantMapsHaveNoPlateau) {
  auto rng = gen::case_rng(8001, static_cast<std::uint64_t>(GetParam()));
  for (bool fix : {true, false}) {
    PLMap f = gen::random_map(rng, {Domain::Symmetric, 8, 8, fix, true});
    EXPECT_TRUE(is_nowhere_constant(f)) << f;
    if (fix) {
      EXPECT_EQ(f(Rational(0)), Rational(0));
    }
  }
  EXPECT_TRUE(is_nowhere_constant(gen::random_radial_map(rng, 8, 8)));
}

TEST_P(GeneratorProperties, BridgedTriplesMeetHypotheses) {
  auto rng = gen::case_rng(8002, static_cast<std::uint64_t>(GetParam()));
  auto tr = gen::bridged_triple(rng);
  EXPECT_EQ(radial_contour_factor(compose(tr.f1, tr.f2)), radial_contour_factor(tr.f1));
  EXPECT_EQ(radial_contour_factor(compose(tr.f2, tr.f3)), radial_contour_factor(tr.f2));
}

TEST_P(GeneratorProperties, SameContourPairsShareFactor) {
  auto rng = gen::case_rng(8003, static_cast<std::uint64_t>(GetParam()));
  auto [f, g] = gen::same_contour_pair(rng);
  EXPECT_EQ(contour_factor(f), contour_factor(g));
}

INSTANTIATE_TEST_SUITE_P(Seeded, GeneratorProperties, ::testing::Range(0, 200));
