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

#ifndef FUPC_ALPHABETS_HPP_
#define FUPC_ALPHABETS_HPP_

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "fupc/cantor.hpp"
#include "fupc/fourier.hpp"
#include "fupc/rng.hpp"

namespace fupc {

using BigInt = boost::multiprecision::cpp_int;

inline constexpr std::uint64_t kDefaultEnumerationCap = 10'000'000;
// Exact Lipschitz norms compare all pairs; above this many alphabets use the
// single-swap scan instead.
inline constexpr std::uint64_t kDefaultAllPairsCap = 20'000;

// Exact binomial coefficient C(m, a) (0 when a < 0 or a > m).
BigInt SpaceCardinality(int m, int a);

// C(n, k) when it fits in 64 bits.
std::optional<std::uint64_t> BinomialU64(int n, int k);

// The space of all A-element alphabets in base M under the uniform measure,
// ordered lexicographically by sorted digit lists.
class AlphabetSpace {
 public:
  // Throws Error{kBaseTooSmall} for m < 3 and Error{kInvalidArgument} unless
  // 1 <= a <= m.
  AlphabetSpace(int m, int a);

  int m() const noexcept { return m_; }
  int a() const noexcept { return a_; }
  const BigInt& cardinality() const noexcept { return cardinality_; }

  // The cardinality when it is at most `cap`; Error{kEnumerationTooLarge}
  // otherwise.
  std::uint64_t EnumerableCount(std::uint64_t cap = kDefaultEnumerationCap) const;

  // Lexicographic rank <-> alphabet. Require an enumerable (64-bit) space.
  std::uint64_t Rank(const Alphabet& alphabet) const;
  Alphabet Unrank(std::uint64_t rank) const;

  // Uniform draw: partial Fisher-Yates selection of A digits, then sort.
  Alphabet Sample(Rng& rng) const;

 private:
  int m_;
  int a_;
  BigInt cardinality_;
};

// Single-consumer lexicographic walk over an AlphabetSpace.
class AlphabetEnumerator {
 public:
  // Throws Error{kEnumerationTooLarge} when the space exceeds `cap`.
  explicit AlphabetEnumerator(const AlphabetSpace& space,
                              std::uint64_t cap = kDefaultEnumerationCap);

  bool Done() const noexcept { return done_; }
  Alphabet Current() const;
  std::uint64_t rank() const noexcept { return rank_; }
  void Advance();

 private:
  int m_;
  std::vector<int> digits_;
  std::uint64_t rank_ = 0;
  bool done_ = false;
};

// All alphabets of the space in lexicographic order.
std::vector<Alphabet> Enumerate(int m, int a,
                                std::uint64_t cap = kDefaultEnumerationCap);

// |A1 symmetric-difference A2|. Throws Error{kBaseMismatch} for different M.
int SymmetricDifference(const Alphabet& a1, const Alphabet& a2);

// sum_{j in A} e^{2 pi i m j / M}, with m reduced mod M.
Complex ExpSum(const Alphabet& alphabet, std::int64_t freq);

using AlphabetFunction = std::function<Complex(const Alphabet&)>;

enum class EvalKind { kExact, kMonteCarlo };

struct EvalMode {
  EvalKind kind = EvalKind::kExact;
  std::uint64_t samples = 0;  // Monte Carlo only
  std::uint64_t seed = 0;     // Monte Carlo only
  std::uint64_t enumeration_cap = kDefaultEnumerationCap;
  int threads = 1;

  static EvalMode Exact(int threads = 1) { return {EvalKind::kExact, 0, 0, kDefaultEnumerationCap, threads}; }
  static EvalMode MonteCarlo(std::uint64_t samples, std::uint64_t seed,
                             int threads = 1) {
    return {EvalKind::kMonteCarlo, samples, seed, kDefaultEnumerationCap, threads};
  }
};

const char* EvalKindName(EvalKind kind);

// Values of f over the space: every alphabet in rank order (exact), or one
// per Monte Carlo sample, sample i drawn from Rng(DeriveSeed(seed, i)).
std::vector<Complex> EvaluateOnSpace(const AlphabetFunction& f,
                                     const AlphabetSpace& space,
                                     const EvalMode& mode);

// The alphabets EvaluateOnSpace visits, in the same order.
std::vector<Alphabet> DrawAlphabets(const AlphabetSpace& space,
                                    const EvalMode& mode);

struct Estimate {
  Complex mean;
  double std_error = 0.0;  // 0 in exact mode
  std::uint64_t count = 0;
};

Estimate Expectation(const AlphabetFunction& f, const AlphabetSpace& space,
                     const EvalMode& mode);

enum class LipschitzMode { kAllPairs, kSwap };

// max |f(A1) - f(A2)| / d(A1, A2). kAllPairs scans every pair; kSwap scans
// only pairs at distance 2 (one digit exchanged) and halves, which attains
// the same maximum on a fixed-cardinality space.
double LipschitzNorm(const AlphabetFunction& f, const AlphabetSpace& space,
                     LipschitzMode mode,
                     std::uint64_t cap = kDefaultEnumerationCap,
                     int threads = 1);

// Same, from precomputed values in rank order.
double LipschitzNormFromValues(const std::vector<Complex>& values,
                               const AlphabetSpace& space, LipschitzMode mode,
                               int threads = 1);

struct TailReport {
  std::vector<double> t_grid;
  std::vector<double> empirical_tail;
  std::vector<double> bound;
  // Wilson 95% interval per grid point in Monte Carlo mode, else equal to
  // the empirical value.
  std::vector<double> ci_low;
  std::vector<double> ci_high;
  std::vector<std::pair<std::string, std::vector<double>>> extra_bounds;
  EvalMode mode;
  std::uint64_t samples = 0;
  Complex mean;
  double lipschitz = 0.0;
};

// mu(|f - E f| >= t).
double TailProbability(const AlphabetFunction& f, const AlphabetSpace& space,
                       double t, const EvalMode& mode);

// Empirical tails on an ascending grid from precomputed values, with
// `bound` filled by ConcentrationBound(A, lipschitz, t).
TailReport TailFromValues(const std::vector<Complex>& values, int a_card,
                          double lipschitz, std::vector<double> t_grid,
                          const EvalMode& mode);

// min(1, 2 exp(-t^2 / (16 A lip^2))). Throws Error{kNonpositiveLipschitz}.
double ConcentrationBound(int a_card, double lip, double t);

// Wilson score interval for `hits` successes in `n` trials at z.
std::pair<double, double> WilsonInterval(std::uint64_t hits, std::uint64_t n,
                                         double z = 1.959963984540054);

// |ExpSum(A, m)| <= L sqrt(A) + 1e-12 for every m = 1..M-1 (negative
// frequencies are conjugates). The slack settles exact ties such as |S| = 2 at
// L sqrt(A) = 2 the same way on every platform. Throws Error{kInvalidArgument} unless L > 0.
bool GoodSetMember(const Alphabet& alphabet, double level);

struct GoodSetReport {
  int m = 0;
  int a_card = 0;
  double level = 0.0;
  EvalMode mode;
  std::uint64_t count = 0;
  double complement_measure = 0.0;
  std::vector<double> per_freq_complement;  // index m - 1
  double union_bound_64 = 0.0;      // 4 M e^{-L^2/64}
  double union_bound_16 = 0.0;      // 2 (M - 1) e^{-L^2/16}
  double per_freq_bound_64 = 0.0;   // 2 e^{-L^2/64}
  double per_freq_bound_16 = 0.0;   // 2 e^{-L^2/16}
  bool holds_64 = false;
  bool holds_16 = false;
};

GoodSetReport MeasureGoodSet(const AlphabetSpace& space, double level,
                             const EvalMode& mode);

}  // namespace fupc

#endif  // FUPC_ALPHABETS_HPP_
