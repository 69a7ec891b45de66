#include "plic/generators.hpp"
#include "plic/radial.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace plic;
using namespace plic::testing;

namespace {

void expect_contour_matches_oracle(const PLMap& f) {
  auto lib = contour_points(f);
  auto ref = oracle::contour_points(oracle::pts(f));
  ASSERT_EQ(lib.size(), ref.size()) << f;
  for (std::size_t i = 0; i < lib.size(); ++i) {
    EXPECT_EQ(oracle::q(lib[i].alpha), ref[i].alpha) << f;
    EXPECT_EQ(oracle::q(lib[i].value), ref[i].value) << f;
    EXPECT_EQ(lib[i].orientation == Orientation::Positive, ref[i].positive) << f;
  }
}

}  // namespace

TEST(Departures, Identity) {
  auto prof = departures(PLMap::identity(Domain::Unit));
  ASSERT_EQ(prof.runs.size(), 1u);
  EXPECT_EQ(prof.runs[0].interval, IntervalQ::make(R("0"), R("1"), true, false));
  EXPECT_EQ(prof.runs[0].value_range, IntervalQ::make(R("0"), R("1"), true, false));
  EXPECT_EQ(prof.runs[0].orientation, Orientation::Positive);
}

TEST(Departures, Z1RunsFrozen) {
  auto prof = departures(z1());
  ASSERT_EQ(prof.runs.size(), 3u);
  EXPECT_EQ(prof.runs[0].interval, IntervalQ::make(R("0"), R("1/4"), true, false));
  EXPECT_EQ(prof.runs[0].value_range, IntervalQ::make(R("0"), R("1/2"), true, false));
  EXPECT_EQ(prof.runs[1].orientation, Orientation::Negative);
  EXPECT_EQ(prof.runs[1].interval, IntervalQ::make(R("7/20"), R("1/2"), true, false));
  EXPECT_EQ(prof.runs[1].value_range, IntervalQ::make(R("-3/4"), R("0"), false, true));
  EXPECT_EQ(prof.runs[2].interval, IntervalQ::make(R("6/7"), R("1"), true, false));
  EXPECT_EQ(prof.runs[2].value_range, IntervalQ::make(R("1/2"), R("1"), true, false));
}

TEST(Departures, Z1RunsAgreeWithDefinition) {
  auto P = oracle::pts(z1());
  auto prof = departures(z1());
  for (const auto& x : oracle::cells(P)) {
    Rational rx = Rational::parse(x.get_str());
    EXPECT_EQ(prof.contains(rx), oracle::is_departure(P, x)) << rx;
  }
  EXPECT_FALSE(oracle::is_departure(P, oracle::q("7/20")));
  EXPECT_TRUE(oracle::is_departure(P, oracle::q("3/8")));
  EXPECT_FALSE(oracle::is_departure(P, oracle::q("6/7")));
}

TEST(Departures, ZeroMapAndFixedPoint) {
  EXPECT_TRUE(departures(PLMap::constant(Domain::Unit, R("0"))).runs.empty());
  EXPECT_PLIC_ERROR(departures(unit({{"0", "1/2"}, {"1", "1"}})), ErrorKind::FixedPointViolated);
}

TEST(ContourPoints, AmplitudeGrowsOnlyWithinAnOrientation) {
  PLMap f = unit({{"0", "0"}, {"1/3", "5/8"}, {"2/3", "-3/8"}, {"1", "1"}});
  auto cps = contour_points(f);
  ASSERT_EQ(cps.size(), 3u);
  EXPECT_GT(abs(cps[0].value), abs(cps[1].value));
  EXPECT_LT(abs(cps[0].value), abs(cps[2].value));
  expect_contour_matches_oracle(f);
}

TEST(ContourPoints, Examples) {
  auto id = contour_points(PLMap::identity(Domain::Unit));
  ASSERT_EQ(id.size(), 1u);
  EXPECT_EQ(id[0], (ContourPoint{R("1"), R("1"), Orientation::Positive}));

  auto z = contour_points(z1());
  ASSERT_EQ(z.size(), 3u);
  EXPECT_EQ(z[0], (ContourPoint{R("1/4"), R("1/2"), Orientation::Positive}));
  EXPECT_EQ(z[1], (ContourPoint{R("1/2"), R("-3/4"), Orientation::Negative}));
  EXPECT_EQ(z[2], (ContourPoint{R("1"), R("1"), Orientation::Positive}));
  expect_contour_matches_oracle(z1());

  PLMap down = unit({{"0", "0"}, {"1/2", "1/2"}, {"1", "-1"}});
  auto d = contour_points(down);
  ASSERT_EQ(d.size(), 2u);
  EXPECT_EQ(d[0], (ContourPoint{R("1/2"), R("1/2"), Orientation::Positive}));
  EXPECT_EQ(d[1], (ContourPoint{R("1"), R("-1"), Orientation::Negative}));
  expect_contour_matches_oracle(down);

  EXPECT_PLIC_ERROR(contour_points(PLMap::constant(Domain::Unit, R("0"))), ErrorKind::NoDepartures);
}

TEST(ContourFactor, Examples) {
  EXPECT_EQ(contour_factor(PLMap::identity(Domain::Unit)), PLMap::identity(Domain::Unit));
  PLMap t = contour_factor(z1());
  EXPECT_EQ(t, unit({{"0", "0"}, {"1/3", "1/2"}, {"2/3", "-3/4"}, {"1", "1"}}));
  EXPECT_TRUE(oracle::same_function(oracle::pts(t), oracle::contour_factor(oracle::pts(z1()))));
  EXPECT_EQ(contour_factor(t), t);
}

TEST(RadialContourFactor, Examples) {
  EXPECT_EQ(radial_contour_factor(PLMap::identity()), PLMap::identity());
  PLMap f = glue_halves(z1(), unit({{"0", "0"}, {"1", "-1"}}));
  PLMap t = radial_contour_factor(f);
  EXPECT_EQ(right_half(t), contour_factor(z1()));
  EXPECT_EQ(left_reflected(t), unit({{"0", "0"}, {"1", "-1"}}));
  PLMap dead_right = sym({{"-1", "-1"}, {"0", "0"}, {"1", "0"}});
  try {
    radial_contour_factor(dead_right);
    ADD_FAILURE() << "expected HalfConstant";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::HalfConstant);
    EXPECT_NE(std::string(e.what()).find("right"), std::string::npos);
  }
}

TEST(RadialDepartures, IdentityIsAllPositive) {
  RadialDepartures rd(PLMap::identity());
  EXPECT_TRUE(rd.realizes(Orientation::Positive, R("-1"), R("1")));
  EXPECT_TRUE(rd.realizes(Orientation::Positive, R("-1/3"), R("1/2")));
  EXPECT_FALSE(rd.realizes(Orientation::Positive, R("0"), R("1/2")));
  EXPECT_FALSE(rd.realizes(Orientation::Negative, R("1/2"), R("-1/2")));
  EXPECT_TRUE(rd.negative().empty());
  EXPECT_EQ(rd.census(), Census::AllPositive);
}

TEST(RadialDepartures, CentralZigzagIsMixed) {
  auto c = oracle::census(oracle::pts(zigzag()));
  EXPECT_TRUE(c.positive && c.negative);
  EXPECT_EQ(orientation_census(zigzag()), Census::Mixed);
  EXPECT_EQ(classify_pair(zigzag(), R("-1/2"), R("1/2")), PairKind::Positive);
  EXPECT_EQ(classify_pair(zigzag(), R("-1"), R("1")), PairKind::Negative);
}

TEST(Census, Examples) {
  EXPECT_EQ(orientation_census(PLMap::identity()), Census::AllPositive);
  EXPECT_EQ(orientation_census(PLMap::constant(Domain::Symmetric, R("0"))), Census::None);
  EXPECT_EQ(orientation_census(PLMap::negation()), Census::AllNegative);
}

TEST(SameContour, Examples) {
  for (auto m : {ContourMethod::DepartureMatching, ContourMethod::ContourMatching, ContourMethod::FactorEquality}) {
    EXPECT_TRUE(same_contour(z1(), z1(), m)) << to_string(m);
    EXPECT_TRUE(same_contour(z1(), contour_factor(z1()), m)) << to_string(m);
    EXPECT_FALSE(same_contour(PLMap::identity(Domain::Unit), z1(), m)) << to_string(m);
  }
}

TEST(CompDep, Examples) {
  auto a = comp_dep_check(PLMap::identity(), PLMap::identity(), R("-1/2"), R("1/2"));
  EXPECT_EQ(a.direct, PairKind::Positive);
  EXPECT_EQ(a.clause, 1);
  EXPECT_TRUE(a.agree);
  auto b = comp_dep_check(PLMap::negation(), PLMap::identity(), R("-1/2"), R("1/2"));
  EXPECT_EQ(b.direct, PairKind::Negative);
  EXPECT_EQ(b.clause, 1);
  EXPECT_TRUE(b.agree);
  EXPECT_PLIC_ERROR(comp_dep_check(PLMap::identity(), PLMap::identity(), R("1/2"), R("1/4")),
                    ErrorKind::OrderViolated);
}

class ContourProperties : public ::testing::TestWithParam<int> {};

TEST_P(ContourProperties, ContourDataInvariantsAndOracle) {
  auto rng = gen::case_rng(3001, static_cast<std::uint64_t>(GetParam()));
  PLMap f = gen::random_unit_map(rng, 8, 8);
  auto cps = contour_points(f);
  for (std::size_t i = 0; i + 1 < cps.size(); ++i) {
    EXPECT_LT(cps[i].alpha, cps[i + 1].alpha);
    EXPECT_NE(cps[i].orientation, cps[i + 1].orientation);
  }
  for (std::size_t i = 0; i + 2 < cps.size(); ++i) EXPECT_LT(abs(cps[i].value), abs(cps[i + 2].value));
  for (const auto& b : f.breakpoints()) {
    if (cps.back().orientation == Orientation::Positive)
      EXPECT_LE(b.y, cps.back().value);
    else
      EXPECT_GE(b.y, cps.back().value);
  }
  expect_contour_matches_oracle(f);
  // f([0, α_{i+1}]) = f([α_i, α_{i+1}])
  Rational prev(0);
  for (const auto& c : cps) {
    EXPECT_EQ(*image(f, Rational(0), c.alpha, false, false), *image(f, prev, c.alpha, false, false));
    prev = c.alpha;
  }
}

TEST_P(ContourProperties, DeparturesAgreeWithDefinition) {
  auto rng = gen::case_rng(3002, static_cast<std::uint64_t>(GetParam()));
  PLMap f = gen::random_unit_map(rng, 8, 8);
  auto P = oracle::pts(f);
  auto prof = departures(f);
  for (const auto& x : oracle::cells(P)) {
    Rational rx = Rational::parse(x.get_str());
    EXPECT_EQ(prof.contains(rx), oracle::is_departure(P, x)) << f << " at " << rx;
    EXPECT_EQ(is_departure(f, rx), oracle::is_departure(P, x));
  }
}

TEST_P(ContourProperties, ContourFactorIdempotent) {
  auto rng = gen::case_rng(3003, static_cast<std::uint64_t>(GetParam()));
  PLMap t = contour_factor(gen::random_unit_map(rng, 8, 8));
  EXPECT_EQ(contour_factor(t), t);
}

TEST_P(ContourProperties, CensusAgreesWithPairOracle) {
  auto rng = gen::case_rng(3004, static_cast<std::uint64_t>(GetParam()));
  PLMap f = gen::random_map(rng, {Domain::Symmetric, 6, 8, true, false});
  auto c = oracle::census(oracle::pts(f));
  Census expected = c.positive && c.negative ? Census::Mixed
                    : c.positive             ? Census::AllPositive
                    : c.negative             ? Census::AllNegative
                                             : Census::None;
  EXPECT_EQ(orientation_census(f), expected) << f;
}

TEST_P(ContourProperties, RealizedPairsAgreeWithPairOracle) {
  auto rng = gen::case_rng(3005, static_cast<std::uint64_t>(GetParam()));
  PLMap f = gen::random_radial_map(rng, 6, 8);
  RadialDepartures rd(f);
  auto P = oracle::pts(f);
  auto xs = oracle::cells(P);
  for (const auto& x1 : xs)
    if (x1 < 0)
      for (const auto& x2 : xs)
        if (x2 > 0) {
          auto k = oracle::classify(P, x1, x2);
          Rational y1 = Rational::parse(oracle::eval(P, x1).get_str());
          Rational y2 = Rational::parse(oracle::eval(P, x2).get_str());
          if (k != oracle::Pair::NotDeparture) {
            auto o = k == oracle::Pair::Positive ? Orientation::Positive : Orientation::Negative;
            EXPECT_TRUE(rd.realizes(o, y1, y2)) << f;
          }
        }
  auto witnessed = [&](const Rational& y1, const Rational& y2, oracle::Pair want) {
    auto a = oracle::solve(P, oracle::q(y1)), b = oracle::solve(P, oracle::q(y2));
    for (const auto& x1 : *a)
      for (const auto& x2 : *b)
        if (x1 < 0 && x2 > 0 && oracle::classify(P, x1, x2) == want) return true;
    return false;
  };
  const auto& reps = rd.representatives();
  for (auto [i, j] : rd.positive()) EXPECT_TRUE(witnessed(reps[i], reps[j], oracle::Pair::Positive)) << f;
  for (auto [i, j] : rd.negative()) EXPECT_TRUE(witnessed(reps[i], reps[j], oracle::Pair::Negative)) << f;
}

TEST_P(ContourProperties, ContourFactorHasSameRadialDepartures) {
  auto rng = gen::case_rng(3006, static_cast<std::uint64_t>(GetParam()));
  PLMap f = gen::random_radial_map(rng, 8, 8);
  EXPECT_TRUE(same_radial_departures(f, radial_contour_factor(f))) << f;
}

TEST_P(ContourProperties, CompositionPreservesSameRadialDepartures) {
  auto rng = gen::case_rng(3007, static_cast<std::uint64_t>(GetParam()));
  PLMap g1 = gen::random_radial_map(rng, 6, 8);
  PLMap g2 = radial_contour_factor(g1);
  PLMap f = gen::random_radial_map(rng, 6, 8);
  ASSERT_TRUE(same_radial_departures(g1, g2));
  EXPECT_TRUE(same_radial_departures(compose(f, g1), compose(f, g2))) << f << " / " << g1;
}

TEST_P(ContourProperties, SameContourMethodsAgree) {
  auto rng = gen::case_rng(3008, static_cast<std::uint64_t>(GetParam()));
  auto [f, g] = GetParam() % 2 ? gen::same_contour_pair(rng)
                               : std::pair{gen::random_unit_map(rng, 5, 4), gen::random_unit_map(rng, 5, 4)};
  bool a = same_contour(f, g, ContourMethod::FactorEquality);
  EXPECT_EQ(same_contour(f, g, ContourMethod::DepartureMatching), a) << f << " / " << g;
  EXPECT_EQ(same_contour(f, g, ContourMethod::ContourMatching), a) << f << " / " << g;
  bool oracle_eq = oracle::same_function(oracle::contour_factor(oracle::pts(f)), oracle::contour_factor(oracle::pts(g)));
  EXPECT_EQ(a, oracle_eq);
  if (GetParam() % 2) {
    EXPECT_TRUE(a);
  }
}

TEST_P(ContourProperties, CompDepAgreesWithComposite) {
  auto rng = gen::case_rng(3009, static_cast<std::uint64_t>(GetParam()));
  PLMap f = gen::random_map(rng, {Domain::Symmetric, 5, 8, true, false});
  PLMap g = gen::random_map(rng, {Domain::Symmetric, 5, 8, true, false});
  auto G = oracle::pts(g), F = oracle::pts(f);
  for (int i = 0; i < 10; ++i) {
    Rational x1 = gen::lattice(rng, -16, -1, 16), x2 = gen::lattice(rng, 1, 16, 16);
    auto r = comp_dep_check(f, g, x1, x2);
    EXPECT_TRUE(r.agree);
    auto k = oracle::classify_composite(F, G, oracle::q(x1), oracle::q(x2));
    PairKind expected = k == oracle::Pair::Positive   ? PairKind::Positive
                        : k == oracle::Pair::Negative ? PairKind::Negative
                                                      : PairKind::NotDeparture;
    EXPECT_EQ(r.direct, expected) << f << " / " << g << " at " << x1 << "," << x2;
  }
}

INSTANTIATE_TEST_SUITE_P(Seeded, ContourProperties, ::testing::Range(0, 200));
