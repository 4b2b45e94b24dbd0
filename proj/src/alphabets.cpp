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

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "fupc/error.hpp"
#include "fupc/parallel.hpp"

namespace fupc {

BigInt SpaceCardinality(int m, int a) {
  if (a < 0 || a > m) return 0;
  a = std::min(a, m - a);
  BigInt result = 1;
  for (int i = 1; i <= a; ++i) {
    result *= (m - a + i);
    result /= i;
  }
  return result;
}

std::optional<std::uint64_t> BinomialU64(int n, int k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  unsigned __int128 result = 1;
  for (int i = 1; i <= k; ++i) {
    result = result * static_cast<unsigned>(n - k + i) / static_cast<unsigned>(i);
    if (result > UINT64_MAX) return std::nullopt;
  }
  return static_cast<std::uint64_t>(result);
}

AlphabetSpace::AlphabetSpace(int m, int a) : m_(m), a_(a) {
  if (m < 3) {
    throw Error(ErrorCode::kBaseTooSmall,
                "base must be at least 3, got " + std::to_string(m));
  }
  if (a < 1 || a > m) {
    throw Error(ErrorCode::kInvalidArgument,
                "alphabet size must lie in [1, " + std::to_string(m) +
                    "], got " + std::to_string(a));
  }
  cardinality_ = SpaceCardinality(m, a);
}

std::uint64_t AlphabetSpace::EnumerableCount(std::uint64_t cap) const {
  if (cardinality_ > cap) {
    throw Error(ErrorCode::kEnumerationTooLarge,
                "C(" + std::to_string(m_) + "," + std::to_string(a_) + ") = " +
                    cardinality_.str() + " exceeds the enumeration cap " +
                    std::to_string(cap));
  }
  return static_cast<std::uint64_t>(cardinality_);
}

std::uint64_t AlphabetSpace::Rank(const Alphabet& alphabet) const {
  if (alphabet.base() != m_ || alphabet.size() != a_) {
    throw Error(ErrorCode::kShapeMismatch,
                "alphabet " + alphabet.ToString() + " is not in the space (" +
                    std::to_string(m_) + "," + std::to_string(a_) + ")");
  }
  EnumerableCount(UINT64_MAX);
  std::uint64_t rank = 0;
  int v = 0;
  const auto digits = alphabet.digits();
  for (int i = 0; i < a_; ++i) {
    for (; v < digits[i]; ++v) rank += *BinomialU64(m_ - 1 - v, a_ - 1 - i);
    ++v;
  }
  return rank;
}

Alphabet AlphabetSpace::Unrank(std::uint64_t rank) const {
  const std::uint64_t count = EnumerableCount(UINT64_MAX);
  if (rank >= count) {
    throw Error(ErrorCode::kIndexOutOfRange,
                "rank " + std::to_string(rank) + " outside [0, " +
                    std::to_string(count) + ")");
  }
  std::vector<int> digits;
  digits.reserve(a_);
  int v = 0;
  for (int i = 0; i < a_; ++i) {
    while (true) {
      const std::uint64_t block = *BinomialU64(m_ - 1 - v, a_ - 1 - i);
      if (rank < block) break;
      rank -= block;
      ++v;
    }
    digits.push_back(v++);
  }
  return Alphabet::Create(m_, std::move(digits));
}

Alphabet AlphabetSpace::Sample(Rng& rng) const {
  std::vector<int> pool(m_);
  std::iota(pool.begin(), pool.end(), 0);
  for (int i = 0; i < a_; ++i) {
    const auto j = i + static_cast<int>(rng.Below(static_cast<std::uint64_t>(m_ - i)));
    std::swap(pool[i], pool[j]);
  }
  pool.resize(a_);
  return Alphabet::Create(m_, std::move(pool));
}

AlphabetEnumerator::AlphabetEnumerator(const AlphabetSpace& space,
                                       std::uint64_t cap)
    : m_(space.m()), digits_(space.a()) {
  space.EnumerableCount(cap);
  std::iota(digits_.begin(), digits_.end(), 0);
}

Alphabet AlphabetEnumerator::Current() const {
  return Alphabet::Create(m_, digits_);
}

void AlphabetEnumerator::Advance() {
  const int a = static_cast<int>(digits_.size());
  int i = a - 1;
  while (i >= 0 && digits_[i] == m_ - a + i) --i;
  if (i < 0) {
    done_ = true;
    return;
  }
  ++digits_[i];
  for (int j = i + 1; j < a; ++j) digits_[j] = digits_[j - 1] + 1;
  ++rank_;
}

std::vector<Alphabet> Enumerate(int m, int a, std::uint64_t cap) {
  const AlphabetSpace space(m, a);
  std::vector<Alphabet> out;
  out.reserve(space.EnumerableCount(cap));
  for (AlphabetEnumerator it(space, cap); !it.Done(); it.Advance()) {
    out.push_back(it.Current());
  }
  return out;
}

int SymmetricDifference(const Alphabet& a1, const Alphabet& a2) {
  if (a1.base() != a2.base()) {
    throw Error(ErrorCode::kBaseMismatch,
                "bases differ: " + a1.ToString() + " vs " + a2.ToString());
  }
  const auto x = a1.digits();
  const auto y = a2.digits();
  std::size_t i = 0, j = 0;
  int common = 0;
  while (i < x.size() && j < y.size()) {
    if (x[i] == y[j]) {
      ++common;
      ++i;
      ++j;
    } else if (x[i] < y[j]) {
      ++i;
    } else {
      ++j;
    }
  }
  return static_cast<int>(x.size() + y.size()) - 2 * common;
}

Complex ExpSum(const Alphabet& alphabet, std::int64_t freq) {
  const std::int64_t m = alphabet.base();
  const std::int64_t f = ((freq % m) + m) % m;
  Complex sum = 0.0;
  for (int j : alphabet.digits()) {
    const double angle =
        2.0 * std::numbers::pi * static_cast<double>((f * j) % m) / static_cast<double>(m);
    sum += Complex(std::cos(angle), std::sin(angle));
  }
  return sum;
}

const char* EvalKindName(EvalKind kind) {
  return kind == EvalKind::kExact ? "exact" : "monte_carlo";
}

namespace {

std::uint64_t ItemCount(const AlphabetSpace& space, const EvalMode& mode) {
  if (mode.kind == EvalKind::kExact) return space.EnumerableCount(mode.enumeration_cap);
  if (mode.samples == 0) {
    throw Error(ErrorCode::kInvalidArgument, "Monte Carlo needs at least one sample");
  }
  return mode.samples;
}

// Calls visit(index, alphabet) for every item of the mode, possibly from
// several threads but never twice for the same index.
template <typename Visit>
void ForEachAlphabet(const AlphabetSpace& space, const EvalMode& mode,
                     Visit&& visit) {
  const std::uint64_t count = ItemCount(space, mode);
  const std::size_t blocks =
      static_cast<std::size_t>(std::min<std::uint64_t>(count, 4 * std::max(1, mode.threads)));
  ParallelFor(blocks, mode.threads, [&](std::size_t b) {
    const std::uint64_t begin = count * b / blocks;
    const std::uint64_t end = count * (b + 1) / blocks;
    if (begin == end) return;
    if (mode.kind == EvalKind::kMonteCarlo) {
      for (std::uint64_t i = begin; i < end; ++i) {
        Rng rng(DeriveSeed(mode.seed, i));
        visit(i, space.Sample(rng));
      }
      return;
    }
    Alphabet first = space.Unrank(begin);
    std::vector<int> digits(first.digits().begin(), first.digits().end());
    const int m = space.m();
    const int a = space.a();
    for (std::uint64_t i = begin; i < end; ++i) {
      visit(i, Alphabet::Create(m, digits));
      int pos = a - 1;
      while (pos >= 0 && digits[pos] == m - a + pos) --pos;
      if (pos < 0) break;
      ++digits[pos];
      for (int j = pos + 1; j < a; ++j) digits[j] = digits[j - 1] + 1;
    }
  });
}

}  // namespace

std::vector<Complex> EvaluateOnSpace(const AlphabetFunction& f,
                                     const AlphabetSpace& space,
                                     const EvalMode& mode) {
  std::vector<Complex> values(ItemCount(space, mode));
  ForEachAlphabet(space, mode, [&](std::uint64_t i, const Alphabet& alphabet) {
    values[i] = f(alphabet);
  });
  return values;
}

std::vector<Alphabet> DrawAlphabets(const AlphabetSpace& space,
                                    const EvalMode& mode) {
  const std::uint64_t count = ItemCount(space, mode);
  std::vector<std::optional<Alphabet>> slots(count);
  ForEachAlphabet(space, mode, [&](std::uint64_t i, const Alphabet& alphabet) {
    slots[i] = alphabet;
  });
  std::vector<Alphabet> out;
  out.reserve(count);
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

namespace {

Estimate EstimateFromValues(const std::vector<Complex>& values,
                            EvalKind kind) {
  Estimate est;
  est.count = values.size();
  Complex sum = 0.0;
  for (const Complex& v : values) sum += v;
  est.mean = sum / static_cast<double>(values.size());
  if (kind == EvalKind::kMonteCarlo && values.size() > 1) {
    double ss = 0.0;
    for (const Complex& v : values) ss += std::norm(v - est.mean);
    const auto n = static_cast<double>(values.size());
    est.std_error = std::sqrt(ss / (n - 1.0) / n);
  }
  return est;
}

}  // namespace

Estimate Expectation(const AlphabetFunction& f, const AlphabetSpace& space,
                     const EvalMode& mode) {
  return EstimateFromValues(EvaluateOnSpace(f, space, mode), mode.kind);
}

double LipschitzNormFromValues(const std::vector<Complex>& values,
                               const AlphabetSpace& space, LipschitzMode mode,
                               int threads) {
  const std::uint64_t count = values.size();
  if (count != space.EnumerableCount(UINT64_MAX)) {
    throw Error(ErrorCode::kLengthMismatch,
                "expected one value per alphabet of the space");
  }
  const std::size_t workers = static_cast<std::size_t>(std::max(1, threads));
  std::vector<double> best(count, 0.0);
  if (mode == LipschitzMode::kAllPairs) {
    std::vector<Alphabet> all = Enumerate(space.m(), space.a(), UINT64_MAX);
    ParallelFor(count, static_cast<int>(workers), [&](std::size_t i) {
      double local = 0.0;
      for (std::size_t j = i + 1; j < count; ++j) {
        const int d = SymmetricDifference(all[i], all[j]);
        local = std::max(local, std::abs(values[i] - values[j]) / d);
      }
      best[i] = local;
    });
  } else {
    const int m = space.m();
    ParallelFor(count, static_cast<int>(workers), [&](std::size_t i) {
      const Alphabet alphabet = space.Unrank(i);
      std::vector<int> digits(alphabet.digits().begin(), alphabet.digits().end());
      double local = 0.0;
      for (std::size_t out = 0; out < digits.size(); ++out) {
        for (int in = 0; in < m; ++in) {
          if (alphabet.Contains(in)) continue;
          std::vector<int> swapped = digits;
          swapped[out] = in;
          const std::uint64_t j = space.Rank(Alphabet::Create(m, std::move(swapped)));
          if (j > i) local = std::max(local, std::abs(values[i] - values[j]) / 2.0);
        }
      }
      best[i] = local;
    });
  }
  return count == 0 ? 0.0 : *std::max_element(best.begin(), best.end());
}

double LipschitzNorm(const AlphabetFunction& f, const AlphabetSpace& space,
                     LipschitzMode mode, std::uint64_t cap, int threads) {
  EvalMode eval = EvalMode::Exact(threads);
  eval.enumeration_cap = cap;
  const std::vector<Complex> values = EvaluateOnSpace(f, space, eval);
  if (mode == LipschitzMode::kAllPairs && values.size() > kDefaultAllPairsCap) {
    throw Error(ErrorCode::kEnumerationTooLarge,
                "all-pairs Lipschitz scan over " + std::to_string(values.size()) +
                    " alphabets exceeds the cap " + std::to_string(kDefaultAllPairsCap));
  }
  return LipschitzNormFromValues(values, space, mode, threads);
}

double ConcentrationBound(int a_card, double lip, double t) {
  if (!(lip > 0.0)) {
    throw Error(ErrorCode::kNonpositiveLipschitz,
                "Lipschitz constant must be positive");
  }
  return std::min(1.0, 2.0 * std::exp(-t * t / (16.0 * a_card * lip * lip)));
}

std::pair<double, double> WilsonInterval(std::uint64_t hits, std::uint64_t n,
                                         double z) {
  if (n == 0) return {0.0, 1.0};
  const double nn = static_cast<double>(n);
  const double p = static_cast<double>(hits) / nn;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / nn;
  const double center = (p + z2 / (2.0 * nn)) / denom;
  const double half = z * std::sqrt(p * (1.0 - p) / nn + z2 / (4.0 * nn * nn)) / denom;
  const double lo = hits == 0 ? 0.0 : std::max(0.0, center - half);
  const double hi = hits == n ? 1.0 : std::min(1.0, center + half);
  return {lo, hi};
}

TailReport TailFromValues(const std::vector<Complex>& values, int a_card,
                          double lipschitz, std::vector<double> t_grid,
                          const EvalMode& mode) {
  std::sort(t_grid.begin(), t_grid.end());
  TailReport report;
  report.mode = mode;
  report.samples = values.size();
  report.lipschitz = lipschitz;
  report.mean = EstimateFromValues(values, mode.kind).mean;
  std::vector<double> dev(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) dev[i] = std::abs(values[i] - report.mean);
  std::sort(dev.begin(), dev.end());
  const auto n = static_cast<std::uint64_t>(dev.size());
  for (double t : t_grid) {
    const auto below = static_cast<std::uint64_t>(
        std::lower_bound(dev.begin(), dev.end(), t) - dev.begin());
    const std::uint64_t hits = n - below;
    const double p = n ? static_cast<double>(hits) / static_cast<double>(n) : 0.0;
    report.t_grid.push_back(t);
    report.empirical_tail.push_back(p);
    if (lipschitz > 0.0) {
      report.bound.push_back(ConcentrationBound(a_card, lipschitz, t));
    } else {
      report.bound.push_back(t > 0.0 ? 0.0 : 1.0);
    }
    if (mode.kind == EvalKind::kMonteCarlo) {
      const auto [lo, hi] = WilsonInterval(hits, n);
      report.ci_low.push_back(lo);
      report.ci_high.push_back(hi);
    } else {
      report.ci_low.push_back(p);
      report.ci_high.push_back(p);
    }
  }
  return report;
}

double TailProbability(const AlphabetFunction& f, const AlphabetSpace& space,
                       double t, const EvalMode& mode) {
  const std::vector<Complex> values = EvaluateOnSpace(f, space, mode);
  const Complex mean = EstimateFromValues(values, mode.kind).mean;
  std::uint64_t hits = 0;
  for (const Complex& v : values) {
    if (std::abs(v - mean) >= t) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(values.size());
}

namespace {

// Absolute slack on the |sum| <= L sqrt(A) comparison for rounding in the
// exponential sums.
constexpr double kSumSlack = 1e-12;

}  // namespace

bool GoodSetMember(const Alphabet& alphabet, double level) {
  if (!(level > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "good-set level L must be positive");
  }
  const double limit = level * std::sqrt(static_cast<double>(alphabet.size()));
  for (int m = 1; m < alphabet.base(); ++m) {
    if (std::abs(ExpSum(alphabet, m)) > limit + kSumSlack) return false;
  }
  return true;
}

GoodSetReport MeasureGoodSet(const AlphabetSpace& space, double level,
                             const EvalMode& mode) {
  if (!(level > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "good-set level L must be positive");
  }
  const int m = space.m();
  const std::uint64_t count = ItemCount(space, mode);
  const double limit = level * std::sqrt(static_cast<double>(space.a()));
  // Per item: bit f-1 set when frequency f fails.
  std::vector<std::vector<bool>> fails(count);
  ForEachAlphabet(space, mode, [&](std::uint64_t i, const Alphabet& alphabet) {
    std::vector<bool> row(static_cast<std::size_t>(m - 1));
    for (int f = 1; f < m; ++f) {
      row[f - 1] = std::abs(ExpSum(alphabet, f)) > limit + kSumSlack;
    }
    fails[i] = std::move(row);
  });
  GoodSetReport report;
  report.m = m;
  report.a_card = space.a();
  report.level = level;
  report.mode = mode;
  report.count = count;
  std::vector<std::uint64_t> per(static_cast<std::size_t>(m - 1), 0);
  std::uint64_t any = 0;
  for (const auto& row : fails) {
    bool bad = false;
    for (std::size_t f = 0; f < row.size(); ++f) {
      if (row[f]) {
        ++per[f];
        bad = true;
      }
    }
    if (bad) ++any;
  }
  const auto n = static_cast<double>(count);
  report.complement_measure = static_cast<double>(any) / n;
  for (std::uint64_t c : per) report.per_freq_complement.push_back(static_cast<double>(c) / n);
  const double l2 = level * level;
  report.union_bound_64 = 4.0 * m * std::exp(-l2 / 64.0);
  report.union_bound_16 = 2.0 * (m - 1) * std::exp(-l2 / 16.0);
  report.per_freq_bound_64 = 2.0 * std::exp(-l2 / 64.0);
  report.per_freq_bound_16 = 2.0 * std::exp(-l2 / 16.0);
  const double worst = *std::max_element(report.per_freq_complement.begin(),
                                         report.per_freq_complement.end());
  report.holds_64 = report.complement_measure <= report.union_bound_64 &&
                    worst <= report.per_freq_bound_64;
  report.holds_16 = report.complement_measure <= report.union_bound_16 &&
                    worst <= report.per_freq_bound_16;
  return report;
}

}  // namespace fupc
