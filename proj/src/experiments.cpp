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

#include "fupc/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>

#include "fupc/error.hpp"
#include "fupc/parallel.hpp"
#include "fupc/rng.hpp"

namespace fupc {

namespace {

void RequireNontrivial(int m, int a_card) {
  if (!(1 < a_card && a_card < m)) {
    throw Error(ErrorCode::kTrivialAlphabet,
                "experiment needs 1 < A < M, got M=" + std::to_string(m) +
                    " A=" + std::to_string(a_card));
  }
}

double SpaceDimension(int m, int a_card) {
  return std::log(static_cast<double>(a_card)) / std::log(static_cast<double>(m));
}

}  // namespace

int DefaultKMax(int m, int k_limit, std::uint64_t n_cap) {
  int k = 1;
  while (k < k_limit && CheckedPower(m, k + 1, n_cap) != 0) ++k;
  return k;
}

BetaSample SampleBetaLower(const AlphabetSpace& space, const EvalMode& mode,
                           const BetaSampleOptions& options) {
  BetaSample out;
  out.alphabets = DrawAlphabets(space, mode);
  const std::size_t count = out.alphabets.size();
  // One solve per CanonicalAlphabet class, run on its first member with that
  // member's seed.
  std::map<Alphabet, std::size_t> first;
  std::vector<std::size_t> rep_of(count);
  std::vector<std::size_t> reps;
  for (std::size_t i = 0; i < count; ++i) {
    const auto [it, inserted] = first.emplace(CanonicalAlphabet(out.alphabets[i]), reps.size());
    if (inserted) reps.push_back(i);
    rep_of[i] = it->second;
  }
  std::vector<double> rep_beta(reps.size(), 0.0);
  std::vector<char> bad(reps.size(), 0);
  PowerOptions power;
  power.n_cap = options.n_cap;
  power.method = options.method;
  power.near_one = options.near_one;
  ParallelFor(reps.size(), mode.threads, [&](std::size_t j) {
    const std::size_t i = reps[j];
    const BetaProfile profile =
        ComputeBetaProfile(out.alphabets[i], options.k_max, options.tol,
                           DeriveSeed(mode.seed, i), power);
    rep_beta[j] = profile.beta_lower;
    for (const auto& r : profile.reports) {
      if (!r.converged) bad[j] = 1;
    }
  });
  out.beta_lower.resize(count);
  for (std::size_t i = 0; i < count; ++i) {
    out.beta_lower[i] = rep_beta[rep_of[i]];
    out.unconverged += bad[rep_of[i]];
  }
  return out;
}

FupcRecord FupcFromSample(int m, int a_card, double epsilon,
                          const BetaSample& sample, const EvalMode& mode,
                          int k_max) {
  RequireNontrivial(m, a_card);
  if (!(epsilon > 0.0)) {
    throw Error(ErrorCode::kNonpositiveInput, "epsilon must be positive");
  }
  FupcRecord r;
  r.m = m;
  r.a_card = a_card;
  r.delta = SpaceDimension(m, a_card);
  r.epsilon = epsilon;
  r.threshold = 0.5 - 0.75 * r.delta - epsilon;
  r.mode = mode;
  r.k_max = k_max;
  r.count = sample.beta_lower.size();
  for (double b : sample.beta_lower) r.successes += b >= r.threshold;
  r.success_fraction =
      r.count == 0 ? 0.0 : static_cast<double>(r.successes) / static_cast<double>(r.count);
  const double md = m;
  r.theorem_floor =
      std::max(0.0, 1.0 - 4.0 * md * std::exp(-std::pow(md, 4.0 * epsilon) / 64.0));
  r.floor_vacuous = r.theorem_floor <= 0.0;
  r.in_regime = r.delta > 0.0 && r.delta < 2.0 / 3.0;
  r.floor_holds = r.success_fraction >= r.theorem_floor;
  r.unconverged = sample.unconverged;
  return r;
}

FupcRecord FupcExperiment(int m, int a_card, double epsilon,
                          const EvalMode& mode, int k_max) {
  RequireNontrivial(m, a_card);
  const AlphabetSpace space(m, a_card);
  BetaSampleOptions opts;
  opts.k_max = k_max;
  return FupcFromSample(m, a_card, epsilon, SampleBetaLower(space, mode, opts),
                        mode, k_max);
}

CurvePoint CurveFromSample(int m, int a_card, const BetaSample& sample,
                           const EvalMode& mode, int k_max) {
  RequireNontrivial(m, a_card);
  CurvePoint p;
  p.m = m;
  p.a_card = a_card;
  p.delta = SpaceDimension(m, a_card);
  p.volume_bound = VolumeBound(p.delta);
  p.red_line = RedLine(p.delta);
  p.best_possible = BestPossible(p.delta);
  p.k_max = k_max;
  p.mode = mode;
  p.count = sample.beta_lower.size();
  p.unconverged = sample.unconverged;
  double sum = 0.0;
  for (double b : sample.beta_lower) sum += b;
  const double n = static_cast<double>(p.count);
  p.mean_beta_lower = p.count == 0 ? 0.0 : sum / n;
  if (mode.kind == EvalKind::kMonteCarlo && p.count > 1) {
    double ss = 0.0;
    for (double b : sample.beta_lower) ss += (b - p.mean_beta_lower) * (b - p.mean_beta_lower);
    p.std_error = std::sqrt(ss / (n - 1.0) / n);
  }
  p.dominates_volume = p.mean_beta_lower >= p.volume_bound - 1e-6;
  p.above_red_line = p.mean_beta_lower >= p.red_line;
  return p;
}

CurvePoint ExpectationExperiment(int m, int a_card, int k_max,
                                 const EvalMode& mode) {
  RequireNontrivial(m, a_card);
  const AlphabetSpace space(m, a_card);
  BetaSampleOptions opts;
  opts.k_max = k_max;
  return CurveFromSample(m, a_card, SampleBetaLower(space, mode, opts), mode,
                         k_max);
}

std::vector<CurvePoint> Figure1Dataset(int m_lo, int m_hi, int k_max,
                                       std::uint64_t seed, int threads) {
  if (m_lo < 3 || m_hi < m_lo) {
    throw Error(ErrorCode::kInvalidArgument,
                "need 3 <= m_lo <= m_hi, got " + std::to_string(m_lo) + ".." +
                    std::to_string(m_hi));
  }
  std::vector<CurvePoint> points;
  for (int m = m_lo; m <= m_hi; ++m) {
    const int k = k_max > 0 ? k_max : DefaultKMax(m);
    for (int a = 2; a < m; ++a) {
      EvalMode mode = EvalMode::Exact(threads);
      mode.seed = DeriveSeed(seed, static_cast<std::uint64_t>(1000 * m + a));
      points.push_back(ExpectationExperiment(m, a, k, mode));
    }
  }
  return points;
}

double ExpSumLipschitz(int m, std::int64_t freq) {
  const std::int64_t f = ((freq % m) + m) % m;
  double best = 0.0;
  for (int a = 0; a < m; ++a) {
    for (int b = a + 1; b < m; ++b) {
      const double ta = 2.0 * std::numbers::pi * static_cast<double>((a * f) % m) / m;
      const double tb = 2.0 * std::numbers::pi * static_cast<double>((b * f) % m) / m;
      best = std::max(best, std::abs(std::polar(1.0, ta) - std::polar(1.0, tb)) / 2.0);
    }
  }
  return best;
}

TailReport ConcentrationExperiment(int m, int a_card, std::int64_t freq,
                                   std::vector<double> t_grid,
                                   const EvalMode& mode) {
  if (freq % m == 0) {
    throw Error(ErrorCode::kInvalidArgument,
                "frequency must be nonzero mod M, got " + std::to_string(freq));
  }
  const AlphabetSpace space(m, a_card);
  const AlphabetFunction f = [freq](const Alphabet& al) { return ExpSum(al, freq); };
  const std::vector<Complex> values = EvaluateOnSpace(f, space, mode);
  const double lip =
      mode.kind == EvalKind::kExact
          ? LipschitzNormFromValues(values, space, LipschitzMode::kSwap, mode.threads)
          : ExpSumLipschitz(m, freq);
  TailReport report = TailFromValues(values, a_card, lip, std::move(t_grid), mode);
  const double a = a_card;
  std::vector<double> b16, b64, lifted;
  for (double t : report.t_grid) {
    const double l2 = t * t / a;
    b16.push_back(2.0 * std::exp(-l2 / 16.0));
    b64.push_back(2.0 * std::exp(-l2 / 64.0));
    lifted.push_back(lip > 0.0 ? std::min(1.0, 2.0 * std::exp(-t * t / (64.0 * a * lip * lip)))
                               : 1.0);
  }
  report.extra_bounds.emplace_back("per_freq_16", std::move(b16));
  report.extra_bounds.emplace_back("chained_64", std::move(b64));
  report.extra_bounds.emplace_back("lifted_64", std::move(lifted));
  return report;
}

std::vector<double> LinearGrid(double lo, double hi, int n) {
  if (n < 1) throw Error(ErrorCode::kInvalidArgument, "grid needs n >= 1");
  std::vector<double> grid(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    grid[i] = n == 1 ? lo : lo + (hi - lo) * i / (n - 1);
  }
  return grid;
}

}  // namespace fupc
