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

#ifndef FUPC_PERMUTATIONS_HPP_
#define FUPC_PERMUTATIONS_HPP_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "fupc/alphabets.hpp"
#include "fupc/cantor.hpp"
#include "json.hpp"

namespace fupc {

inline constexpr std::uint64_t kDefaultPermutationCap = 1'000'000;

// An injective map {0..A-1} -> {0..M-1}, stored as values[j] = pi(j).
class Permutation {
 public:
  // Throws Error{kBaseTooSmall, kDigitOutOfRange, kDuplicateDigit,
  // kEmptyAlphabet}.
  static Permutation Create(int m, std::vector<int> values);

  int m() const noexcept { return m_; }
  const std::vector<int>& values() const noexcept { return values_; }
  int size() const noexcept { return static_cast<int>(values_.size()); }

  friend bool operator==(const Permutation&, const Permutation&) = default;

 private:
  Permutation(int m, std::vector<int> values) : m_(m), values_(std::move(values)) {}
  int m_;
  std::vector<int> values_;
};

// Number of positions where the two maps disagree. Throws
// Error{kShapeMismatch} unless both share M and A.
int PermutationDistance(const Permutation& p1, const Permutation& p2);

// The image of the map, as an alphabet.
Alphabet Project(const Permutation& p);

// M! / (M - A)!, or Error{kEnumerationTooLarge} beyond `cap`.
std::uint64_t PermutationCount(int m, int a,
                               std::uint64_t cap = kDefaultPermutationCap);

// Every injective map in lexicographic order of (pi(0), ..., pi(A-1)).
std::vector<Permutation> EnumeratePermutations(
    int m, int a, std::uint64_t cap = kDefaultPermutationCap);

struct LiftComparison {
  Complex expectation_alphabets;
  Complex expectation_permutations;
  double lipschitz_alphabets = 0.0;
  double lipschitz_permutations = 0.0;
  bool exp_equal = false;      // within 1e-12
  bool lip_contracts = false;  // Lip(f o P) <= Lip(f) + 1e-12
};

// Compares f on alphabets with f o P on permutations by full enumeration.
LiftComparison LiftAndCompare(const AlphabetFunction& f, int m, int a,
                              std::uint64_t cap = kDefaultPermutationCap);

// A nested sequence of partitions of the points {0..n-1} of a finite metric
// space, with a per-level displacement bound and an explicit bijection for
// every pair of sibling blocks. Levels are stored by block membership.
struct SiblingPairing {
  std::size_t from_block = 0;       // block index within the level, from < to
  std::size_t to_block = 0;
  std::vector<std::size_t> image;   // image[i] pairs from-block point i
};

struct PartitionChain {
  std::string space_id;
  std::size_t point_count = 0;
  // levels[k] lists the blocks of the k-th partition; levels[0] is {X}.
  std::vector<std::vector<std::vector<std::size_t>>> levels;
  // step_bounds[k - 1] = a_k and pairings[k - 1] cover level k, k >= 1.
  std::vector<double> step_bounds;
  std::vector<std::vector<SiblingPairing>> pairings;
};

using PointMetric = std::function<double(std::size_t, std::size_t)>;

// Checks the chain: one block at level 0, all singletons at the last level,
// every level a partition refining the previous one, and for all siblings
// p < q a recorded bijection moving each point by at most a_k. Returns the
// length sqrt(sum a_k^2). Throws CertificateViolation naming the level, the
// blocks and a witness point on the first failure found.
double VerifyLengthCertificate(std::size_t point_count, const PointMetric& metric,
                               const PartitionChain& chain);

// The prefix chain of the permutation space: level k groups maps by
// (pi(0), ..., pi(k-1)); siblings are matched by swapping the two
// distinguishing values. a_k = 2, length 2 sqrt(A). Points are
// EnumeratePermutations(m, a) ranks.
PartitionChain BuildPrefixChain(int m, int a,
                                std::uint64_t cap = kDefaultPermutationCap);

// {X} then all singletons, a_1 = diameter.
PartitionChain BuildTrivialChain(std::size_t point_count, const PointMetric& metric);

nlohmann::json ChainToJson(const PartitionChain& chain);
PartitionChain ChainFromJson(const nlohmann::json& doc);

// min(1, 2 exp(-t^2 / (4 l^2 lip^2))). Throws Error{kNonpositiveInput}.
double MetricSpaceTailBound(double length, double lip, double t);

}  // namespace fupc

#endif  // FUPC_PERMUTATIONS_HPP_
