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

#include "fupc/permutations.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <map>
#include <set>

#include "fupc/error.hpp"

namespace fupc {
namespace {

Permutation P(int m, std::vector<int> v) {
  return Permutation::Create(m, std::move(v));
}

TEST(Permutation, RejectsBadInput) {
  EXPECT_THROW(P(2, {0}), Error);
  EXPECT_THROW(P(4, {}), Error);
  try {
    P(4, {0, 4});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kDigitOutOfRange);
  }
  try {
    P(4, {1, 1});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kDuplicateDigit);
  }
}

TEST(Permutation, Distance) {
  EXPECT_EQ(PermutationDistance(P(3, {0, 1}), P(3, {0, 1})), 0);
  EXPECT_EQ(PermutationDistance(P(3, {0, 1}), P(3, {1, 0})), 2);
  EXPECT_EQ(PermutationDistance(P(3, {0, 1, 2}), P(3, {0, 2, 1})), 2);
  try {
    PermutationDistance(P(3, {0, 1}), P(3, {0}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kShapeMismatch);
  }
}

TEST(Permutation, ProjectSortsImage) {
  EXPECT_EQ(Project(P(3, {2, 0})), Alphabet::Create(3, {0, 2}));
}

TEST(Permutation, EnumerationIsLexicographicAndComplete) {
  const auto perms = EnumeratePermutations(5, 3);
  ASSERT_EQ(perms.size(), 60u);
  for (std::size_t i = 1; i < perms.size(); ++i) {
    EXPECT_LT(perms[i - 1].values(), perms[i].values());
  }
  EXPECT_EQ(PermutationCount(10, 5), 30240u);
  try {
    PermutationCount(12, 12);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kEnumerationTooLarge);
  }
}

TEST(Permutation, FibersHaveFactorialSize) {
  for (auto [m, a] : {std::pair{5, 3}, std::pair{6, 3}, std::pair{4, 2}}) {
    std::map<std::vector<int>, int> fiber;
    for (const auto& p : EnumeratePermutations(m, a)) {
      const Alphabet image = Project(p);
      auto d = image.digits();
      fiber[std::vector<int>(d.begin(), d.end())]++;
    }
    const int factorial = a == 3 ? 6 : 2;
    EXPECT_EQ(fiber.size(), Enumerate(m, a).size());
    for (const auto& [digits, count] : fiber) EXPECT_EQ(count, factorial);
  }
}

TEST(Permutation, PushforwardMatchesUniformMeasure) {
  // S = alphabets whose digit sum is even.
  auto in_s = [](const Alphabet& al) {
    int s = 0;
    for (int d : al.digits()) s += d;
    return s % 2 == 0;
  };
  const auto perms = EnumeratePermutations(6, 3);
  const auto alphs = Enumerate(6, 3);
  int hits_p = 0;
  for (const auto& p : perms) hits_p += in_s(Project(p));
  int hits = 0;
  for (const auto& al : alphs) hits += in_s(al);
  EXPECT_EQ(hits_p * static_cast<long>(alphs.size()),
            hits * static_cast<long>(perms.size()));
}

TEST(Permutation, HammingControlsImageDistanceUpToTwo) {
  // Changing one value moves two digits of the image, so the sharp relation
  // is d(P p1, P p2) <= 2 d^p(p1, p2), not d <= d^p.
  const auto perms = EnumeratePermutations(4, 2);
  int strict = 0;
  for (const auto& p1 : perms) {
    for (const auto& p2 : perms) {
      const int dp = PermutationDistance(p1, p2);
      const int d = SymmetricDifference(Project(p1), Project(p2));
      EXPECT_LE(d, 2 * dp);
      if (d > dp) ++strict;
    }
  }
  EXPECT_GT(strict, 0);
  EXPECT_EQ(PermutationDistance(P(4, {0, 1}), P(4, {2, 1})), 1);
  EXPECT_EQ(SymmetricDifference(Alphabet::Create(4, {0, 1}),
                                Alphabet::Create(4, {1, 2})),
            2);
}

TEST(LiftAndCompare, ConstantFunction) {
  const auto r = LiftAndCompare([](const Alphabet&) { return Complex(3.0, 1.0); }, 5, 3);
  EXPECT_TRUE(r.exp_equal);
  EXPECT_TRUE(r.lip_contracts);
  EXPECT_EQ(r.lipschitz_alphabets, 0.0);
  EXPECT_EQ(r.lipschitz_permutations, 0.0);
}

TEST(LiftAndCompare, IndicatorOfZero) {
  const auto r = LiftAndCompare(
      [](const Alphabet& al) { return Complex(al.Contains(0) ? 1.0 : 0.0); }, 4, 2);
  EXPECT_TRUE(r.exp_equal);
  EXPECT_NEAR(r.expectation_alphabets.real(), 0.5, 1e-15);
  EXPECT_NEAR(r.expectation_permutations.real(), 0.5, 1e-15);
}

TEST(LiftAndCompare, ExpSumLiftDoublesLipschitz) {
  for (auto [m, a] : {std::pair{5, 3}, std::pair{6, 3}}) {
    const auto r = LiftAndCompare(
        [](const Alphabet& al) { return ExpSum(al, 1); }, m, a);
    EXPECT_TRUE(r.exp_equal);
    // E|S|^2-free check: E S(1) = A/M * sum of roots of unity = 0.
    EXPECT_NEAR(std::abs(r.expectation_alphabets), 0.0, 1e-12);
    EXPECT_NEAR(r.lipschitz_permutations, 2.0 * r.lipschitz_alphabets, 1e-12);
    EXPECT_FALSE(r.lip_contracts);
    // Largest chord of the M-th roots of unity.
    const double chord = 2.0 * std::sin(M_PI * (m / 2) / m);
    EXPECT_NEAR(r.lipschitz_permutations, chord, 1e-12);
  }
}

PointMetric HammingOn(const std::vector<Permutation>& perms) {
  return [&perms](std::size_t i, std::size_t j) {
    return static_cast<double>(PermutationDistance(perms[i], perms[j]));
  };
}

TEST(PrefixChain, CertifiesTwoRootA) {
  for (auto [m, a] : {std::pair{5, 3}, std::pair{6, 3}, std::pair{4, 4},
                      std::pair{7, 2}, std::pair{3, 1}}) {
    const auto perms = EnumeratePermutations(m, a);
    const auto chain = BuildPrefixChain(m, a);
    EXPECT_EQ(chain.levels.size(), static_cast<std::size_t>(a) + 1);
    const double l = VerifyLengthCertificate(perms.size(), HammingOn(perms), chain);
    EXPECT_NEAR(l, 2.0 * std::sqrt(static_cast<double>(a)), 1e-12)
        << m << "," << a;
  }
}

TEST(PrefixChain, SingleLevelSwapsValues) {
  const auto chain = BuildPrefixChain(3, 1);
  ASSERT_EQ(chain.step_bounds, std::vector<double>{2.0});
  ASSERT_EQ(chain.pairings.size(), 1u);
  EXPECT_EQ(chain.pairings[0].size(), 3u);
  for (const auto& p : chain.pairings[0]) {
    ASSERT_EQ(p.image.size(), 1u);
    EXPECT_EQ(p.image[0], p.to_block);
  }
}

TEST(PrefixChain, DisplacementAtMostTwo) {
  const auto perms = EnumeratePermutations(6, 3);
  const auto chain = BuildPrefixChain(6, 3);
  for (std::size_t k = 1; k < chain.levels.size(); ++k) {
    for (const auto& pairing : chain.pairings[k - 1]) {
      const auto& from = chain.levels[k][pairing.from_block];
      for (std::size_t i = 0; i < from.size(); ++i) {
        EXPECT_LE(PermutationDistance(perms[from[i]], perms[pairing.image[i]]), 2);
      }
    }
  }
}

TEST(TrivialChain, LengthIsDiameter) {
  const auto perms = EnumeratePermutations(5, 3);
  const auto metric = HammingOn(perms);
  const auto chain = BuildTrivialChain(perms.size(), metric);
  EXPECT_DOUBLE_EQ(VerifyLengthCertificate(perms.size(), metric, chain), 3.0);

  // A small non-permutation space: points on a line.
  const std::vector<double> xs = {0.0, 0.5, 2.25, 1.0};
  const PointMetric line = [&](std::size_t i, std::size_t j) {
    return std::abs(xs[i] - xs[j]);
  };
  EXPECT_DOUBLE_EQ(VerifyLengthCertificate(4, line, BuildTrivialChain(4, line)), 2.25);
}

class CorruptedChain : public ::testing::Test {
 protected:
  void SetUp() override {
    perms_ = EnumeratePermutations(5, 3);
    chain_ = BuildPrefixChain(5, 3);
  }
  void ExpectViolation(std::size_t level) {
    try {
      VerifyLengthCertificate(perms_.size(), HammingOn(perms_), chain_);
      FAIL() << "corrupted certificate accepted";
    } catch (const CertificateViolation& e) {
      EXPECT_EQ(e.code(), ErrorCode::kCertificateViolation);
      EXPECT_EQ(e.level(), level) << e.what();
    }
  }
  std::vector<Permutation> perms_;
  PartitionChain chain_;
};

TEST_F(CorruptedChain, ImageOutsideTargetBlock) {
  auto& pairing = chain_.pairings[1][0];
  pairing.image[0] = chain_.levels[2][pairing.from_block][0];
  ExpectViolation(2);
}

TEST_F(CorruptedChain, NonInjectivePairing) {
  auto& pairing = chain_.pairings[0][0];
  pairing.image[1] = pairing.image[0];
  ExpectViolation(1);
}

TEST_F(CorruptedChain, DisplacementTooLarge) {
  // Rotate the image inside the target block: still a bijection, but some
  // points now move by 3.
  auto& pairing = chain_.pairings[0][0];
  std::rotate(pairing.image.begin(), pairing.image.begin() + 1, pairing.image.end());
  try {
    VerifyLengthCertificate(perms_.size(), HammingOn(perms_), chain_);
    FAIL();
  } catch (const CertificateViolation& e) {
    EXPECT_EQ(e.level(), 1u);
    EXPECT_NE(e.witness(), CertificateViolation::npos);
    ASSERT_EQ(e.blocks().size(), 2u);
  }
}

TEST_F(CorruptedChain, StepBoundTooSmall) {
  chain_.step_bounds[2] = 0.5;  // last-level swaps move one position
  ExpectViolation(3);
}

TEST_F(CorruptedChain, MissingPairing) {
  chain_.pairings[0].pop_back();
  ExpectViolation(1);
}

TEST_F(CorruptedChain, NonRefiningLevel) {
  std::swap(chain_.levels[2][0][0], chain_.levels[2].back()[0]);
  ExpectViolation(2);
}

TEST_F(CorruptedChain, NonSingletonTerminal) {
  chain_.levels.pop_back();
  chain_.step_bounds.pop_back();
  chain_.pairings.pop_back();
  ExpectViolation(2);
}

TEST(ChainJson, RoundTrip) {
  const auto chain = BuildPrefixChain(4, 2);
  const auto back = ChainFromJson(ChainToJson(chain));
  EXPECT_EQ(back.space_id, "Pi(4,2)");
  EXPECT_EQ(back.levels, chain.levels);
  EXPECT_EQ(back.step_bounds, chain.step_bounds);
  const auto perms = EnumeratePermutations(4, 2);
  EXPECT_NEAR(VerifyLengthCertificate(perms.size(), HammingOn(perms), back),
              2.0 * std::sqrt(2.0), 1e-12);
  try {
    ChainFromJson(nlohmann::json::parse(R"({"space":"x"})"));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kParseError);
  }
}

TEST(MetricTail, Bound) {
  EXPECT_EQ(MetricSpaceTailBound(1.0, 1.0, 0.0), 1.0);
  for (int a : {2, 3, 5}) {
    for (double t : {0.5, 2.0, 7.0}) {
      EXPECT_NEAR(MetricSpaceTailBound(2.0 * std::sqrt(a), 0.8, t),
                  ConcentrationBound(a, 0.8, t), 1e-15);
    }
  }
  try {
    MetricSpaceTailBound(0.0, 1.0, 1.0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNonpositiveInput);
  }
  EXPECT_THROW(MetricSpaceTailBound(1.0, -1.0, 1.0), Error);
}

TEST(MetricTail, LiftedExpSumTailsDominated) {
  // The lifted function has Lipschitz constant Lip(f o P) on (Pi, d^p), so
  // the finite-metric-space bound applies to it directly.
  for (auto [m, a] : {std::pair{5, 3}, std::pair{6, 3}}) {
    const auto perms = EnumeratePermutations(m, a);
    std::vector<Complex> vals;
    for (const auto& p : perms) vals.push_back(ExpSum(Project(p), 1));
    const auto r = LiftAndCompare([](const Alphabet& al) { return ExpSum(al, 1); }, m, a);
    const double l = 2.0 * std::sqrt(static_cast<double>(a));
    for (double t = 0.25; t <= 3.0; t += 0.25) {
      int hits = 0;
      for (const Complex& v : vals) hits += std::abs(v - r.expectation_permutations) >= t;
      const double tail = static_cast<double>(hits) / vals.size();
      EXPECT_LE(tail, MetricSpaceTailBound(l, r.lipschitz_permutations, t)) << t;
    }
  }
}

}  // namespace
}  // namespace fupc
