// Copyright 2026 The fupc Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "fupc/alphabets.hpp"

#include <cmath>
#include <map>

#include <boost/math/distributions/chi_squared.hpp>

#include "fupc/error.hpp"
#include "gtest/gtest.h"

namespace fupc {
namespace {

std::vector<int> Digits(const Alphabet& a) {
  return {a.digits().begin(), a.digits().end()};
}

TEST(Space, Cardinality) {
  EXPECT_EQ(SpaceCardinality(4, 2), 6);
  EXPECT_EQ(SpaceCardinality(10, 5), 252);
  EXPECT_EQ(SpaceCardinality(64, 8), BigInt("4426165368"));
  EXPECT_EQ(SpaceCardinality(200, 100).str(),
            "90548514656103281165404177077484163874504589675413336841320");
  EXPECT_EQ(SpaceCardinality(3, 4), 0);
  EXPECT_EQ(*BinomialU64(64, 8), 4426165368ULL);
  EXPECT_FALSE(BinomialU64(200, 100).has_value());
}

TEST(Space, EnumerateLexicographic) {
  const std::vector<Alphabet> all = Enumerate(4, 2);
  const std::vector<std::vector<int>> expect = {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};
  ASSERT_EQ(all.size(), expect.size());
  for (std::size_t i = 0; i < all.size(); ++i) EXPECT_EQ(Digits(all[i]), expect[i]);

  const std::vector<Alphabet> one = Enumerate(3, 3);
  ASSERT_EQ(one.size(), 1u);
  EXPECT_EQ(Digits(one[0]), (std::vector<int>{0, 1, 2}));
  EXPECT_EQ(Enumerate(10, 5).size(), 252u);
}

TEST(Space, RankUnrankRoundTrip) {
  for (auto [m, a] : std::vector<std::pair<int, int>>{{6, 3}, {9, 1}, {9, 9}, {12, 4}}) {
    const AlphabetSpace space(m, a);
    std::uint64_t expected = 0;
    for (AlphabetEnumerator it(space); !it.Done(); it.Advance(), ++expected) {
      ASSERT_EQ(it.rank(), expected);
      const Alphabet cur = it.Current();
      ASSERT_EQ(space.Rank(cur), expected);
      ASSERT_EQ(space.Unrank(expected), cur);
    }
    EXPECT_EQ(expected, space.EnumerableCount());
  }
  // Large space: sampled alphabets round-trip through their rank.
  const AlphabetSpace big(64, 8);
  Rng rng(4);
  for (int i = 0; i < 200; ++i) {
    const Alphabet x = big.Sample(rng);
    EXPECT_EQ(big.Unrank(big.Rank(x)), x);
  }
}

TEST(Space, Errors) {
  EXPECT_THROW(AlphabetSpace(2, 1), Error);
  EXPECT_THROW(AlphabetSpace(5, 0), Error);
  EXPECT_THROW(AlphabetSpace(5, 6), Error);
  try {
    AlphabetEnumerator it(AlphabetSpace(40, 20));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kEnumerationTooLarge);
  }
  EXPECT_THROW(AlphabetSpace(5, 2).Rank(Alphabet::Parse("5:0,1,2")), Error);
}

TEST(Sample, ChiSquareUniformity) {
  const AlphabetSpace space(6, 3);
  std::map<std::uint64_t, int> counts;
  const int draws = 100000;
  Rng rng(2024);
  for (int i = 0; i < draws; ++i) ++counts[space.Rank(space.Sample(rng))];
  ASSERT_EQ(counts.size(), 20u);
  const double expected = draws / 20.0;
  double chi2 = 0.0;
  for (auto [rank, c] : counts) chi2 += (c - expected) * (c - expected) / expected;
  const boost::math::chi_squared dist(19);
  const double p_value = 1.0 - boost::math::cdf(dist, chi2);
  EXPECT_GT(p_value, 0.001) << "chi2=" << chi2;
}

TEST(Sample, FullAndDeterministic) {
  Rng rng(1);
  for (int i = 0; i < 10; ++i) {
    EXPECT_EQ(AlphabetSpace(7, 7).Sample(rng), Alphabet::Parse("7:0,1,2,3,4,5,6"));
  }
  Rng a(77), b(77);
  const AlphabetSpace space(30, 6);
  EXPECT_EQ(space.Sample(a), space.Sample(b));
}

TEST(Metric, Examples) {
  EXPECT_EQ(SymmetricDifference(Alphabet::Parse("4:0,2"), Alphabet::Parse("4:0,2")), 0);
  EXPECT_EQ(SymmetricDifference(Alphabet::Parse("4:0,2"), Alphabet::Parse("4:0,1")), 2);
  EXPECT_EQ(SymmetricDifference(Alphabet::Parse("4:0,1"), Alphabet::Parse("4:2,3")), 4);
  EXPECT_THROW(SymmetricDifference(Alphabet::Parse("4:0"), Alphabet::Parse("5:0")), Error);
}

TEST(Metric, AxiomsExhaustiveOn63) {
  const std::vector<Alphabet> all = Enumerate(6, 3);
  for (const auto& x : all) {
    for (const auto& y : all) {
      const int dxy = SymmetricDifference(x, y);
      ASSERT_EQ(dxy, SymmetricDifference(y, x));
      ASSERT_EQ(dxy == 0, x == y);
      for (const auto& z : all) {
        ASSERT_LE(SymmetricDifference(x, z), dxy + SymmetricDifference(y, z));
      }
    }
  }
}

TEST(ExpSum, Examples) {
  EXPECT_LT(std::abs(ExpSum(Alphabet::Parse("4:0,2"), 1)), 1e-15);
  EXPECT_LT(std::abs(ExpSum(Alphabet::Parse("9:1,4,5"), 0) - 3.0), 1e-15);
  EXPECT_LT(std::abs(ExpSum(Alphabet::Parse("9:1,4,5"), 18) - 3.0), 1e-15);
  const Alphabet full = Alphabet::Parse("6:0,1,2,3,4,5");
  for (int m = 1; m < 6; ++m) EXPECT_LT(std::abs(ExpSum(full, m)), 1e-14);
  // Negative frequency is the conjugate.
  const Alphabet a = Alphabet::Parse("11:2,3,7");
  EXPECT_LT(std::abs(ExpSum(a, -4) - std::conj(ExpSum(a, 4))), 1e-14);
}

TEST(Expectation, ExactValues) {
  const AlphabetSpace space(12, 4);
  for (int m = 1; m < 12; ++m) {
    const Estimate e = Expectation([m](const Alphabet& a) { return ExpSum(a, m); },
                                   space, EvalMode::Exact());
    EXPECT_LT(std::abs(e.mean), 1e-12) << "m=" << m;
    EXPECT_EQ(e.count, 495u);
  }
  EXPECT_EQ(Expectation([](const Alphabet&) { return Complex(7.0); }, space,
                        EvalMode::Exact()).mean,
            Complex(7.0));
  const Estimate has_zero = Expectation(
      [](const Alphabet& a) { return Complex(a.Contains(0) ? 1.0 : 0.0); },
      AlphabetSpace(4, 2), EvalMode::Exact());
  EXPECT_DOUBLE_EQ(has_zero.mean.real(), 0.5);
}

TEST(Expectation, MonteCarloAndThreads) {
  const AlphabetSpace space(20, 5);
  auto f = [](const Alphabet& a) { return Complex(a.Contains(3) ? 1.0 : 0.0); };
  const Estimate one = Expectation(f, space, EvalMode::MonteCarlo(20000, 5, 1));
  const Estimate four = Expectation(f, space, EvalMode::MonteCarlo(20000, 5, 4));
  EXPECT_EQ(one.mean, four.mean);
  EXPECT_GT(one.std_error, 0.0);
  EXPECT_NEAR(one.mean.real(), 0.25, 5 * one.std_error);

  const AlphabetSpace exact(14, 5);
  auto g = [](const Alphabet& a) { return ExpSum(a, 3) * ExpSum(a, 1); };
  EXPECT_EQ(Expectation(g, exact, EvalMode::Exact(1)).mean,
            Expectation(g, exact, EvalMode::Exact(3)).mean);
}

TEST(Lipschitz, ExpSumAndConstant) {
  const AlphabetSpace space(12, 4);
  auto f = [](const Alphabet& a) { return ExpSum(a, 1); };
  EXPECT_LE(LipschitzNorm(f, space, LipschitzMode::kAllPairs), 1.0 + 1e-12);
  EXPECT_LE(LipschitzNorm(f, space, LipschitzMode::kSwap), 1.0 + 1e-12);
  EXPECT_EQ(LipschitzNorm([](const Alphabet&) { return Complex(2.0); }, space,
                          LipschitzMode::kAllPairs),
            0.0);
}

TEST(Lipschitz, SwapEqualsAllPairs) {
  const AlphabetSpace space(8, 3);
  std::vector<AlphabetFunction> fns = {
      [](const Alphabet& a) { return ExpSum(a, 1); },
      [](const Alphabet& a) { return Complex(std::abs(ExpSum(a, 3))); },
      [](const Alphabet& a) {
        double s = 0.0;
        for (int d : a.digits()) s += d * d;
        return Complex(std::sqrt(s));
      },
  };
  for (const auto& f : fns) {
    EXPECT_NEAR(LipschitzNorm(f, space, LipschitzMode::kAllPairs),
                LipschitzNorm(f, space, LipschitzMode::kSwap), 1e-14);
  }
}

TEST(Tail, Basics) {
  const AlphabetSpace space(12, 4);
  auto f = [](const Alphabet& a) { return Complex(ExpSum(a, 1).real()); };
  EXPECT_EQ(TailProbability(f, space, 0.0, EvalMode::Exact()), 1.0);
  EXPECT_EQ(TailProbability([](const Alphabet&) { return Complex(3.0); }, space, 0.1,
                            EvalMode::Exact()),
            0.0);
  const double lip = LipschitzNorm(f, space, LipschitzMode::kAllPairs);
  const double t = 2.0 * std::sqrt(4.0);
  EXPECT_LE(TailProbability(f, space, t, EvalMode::Exact()), ConcentrationBound(4, lip, t));
}

TEST(Tail, ReportMonotoneAndBounded) {
  const AlphabetSpace space(14, 5);
  const EvalMode mode = EvalMode::Exact();
  const auto values = EvaluateOnSpace([](const Alphabet& a) { return ExpSum(a, 1); }, space, mode);
  const double lip = LipschitzNormFromValues(values, space, LipschitzMode::kSwap);
  std::vector<double> grid;
  for (int i = 0; i < 50; ++i) grid.push_back(10.0 * i / 49.0);
  const TailReport rep = TailFromValues(values, 5, lip, grid, mode);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (i) EXPECT_LE(rep.empirical_tail[i], rep.empirical_tail[i - 1]);
    EXPECT_LE(rep.empirical_tail[i], rep.bound[i]);
    EXPECT_GE(rep.empirical_tail[i], 0.0);
  }
  EXPECT_EQ(rep.empirical_tail.back(), 0.0);  // |F| <= A < 10
}

TEST(ConcentrationBound, Values) {
  EXPECT_EQ(ConcentrationBound(4, 1.0, 0.0), 1.0);
  EXPECT_NEAR(ConcentrationBound(4, 1.0, 8.0), 2.0 * std::exp(-1.0), 1e-15);
  try {
    ConcentrationBound(4, 0.0, 1.0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNonpositiveLipschitz);
  }
}

TEST(Wilson, Interval) {
  auto [lo, hi] = WilsonInterval(50, 100);
  EXPECT_LT(lo, 0.5);
  EXPECT_GT(hi, 0.5);
  EXPECT_NEAR(lo + hi, 1.0, 1e-12);
  auto [zlo, zhi] = WilsonInterval(0, 1000);
  EXPECT_EQ(zlo, 0.0);
  EXPECT_GT(zhi, 0.0);
}

TEST(GoodSet, Membership) {
  EXPECT_TRUE(GoodSetMember(Alphabet::Parse("5:0,1,2,3,4"), 1e-3));
  // m = 2 gives 1 + e^{2 pi i} = 2 > sqrt 2.
  EXPECT_FALSE(GoodSetMember(Alphabet::Parse("4:0,2"), 1.0));
  EXPECT_TRUE(GoodSetMember(Alphabet::Parse("4:0,2"), std::sqrt(2.0)));
  EXPECT_THROW(GoodSetMember(Alphabet::Parse("4:0,2"), 0.0), Error);
}

TEST(GoodSet, MeasureAgainstBounds) {
  for (double level : {0.5, 1.0, 1.5, 2.0, 4.0}) {
    const GoodSetReport rep = MeasureGoodSet(AlphabetSpace(12, 4), level, EvalMode::Exact());
    EXPECT_LE(rep.complement_measure, rep.union_bound_64);
    EXPECT_LE(rep.complement_measure, rep.union_bound_16);
    std::uint64_t bad = 0;
    for (const Alphabet& a : Enumerate(12, 4)) bad += GoodSetMember(a, level) ? 0 : 1;
    EXPECT_DOUBLE_EQ(rep.complement_measure, bad / 495.0);
  }
}

}  // namespace
}  // namespace fupc
