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

#ifndef FUPC_EXPERIMENTS_HPP_
#define FUPC_EXPERIMENTS_HPP_

#include <cstdint>
#include <vector>

#include "fupc/alphabets.hpp"
#include "fupc/spectral.hpp"

namespace fupc {

inline constexpr std::uint64_t kExperimentNCap = 100'000;
inline constexpr int kExperimentKLimit = 4;

// Largest k <= k_limit with M^k <= n_cap (at least 1).
int DefaultKMax(int m, int k_limit = kExperimentKLimit,
                std::uint64_t n_cap = kExperimentNCap);

struct BetaSampleOptions {
  int k_max = 1;
  // Ritz-residual tolerance for RkLanczos (or Rayleigh change for RkPower).
  double tol = 1e-10;
  std::uint64_t n_cap = kExperimentNCap;
  SpectralMethod method = SpectralMethod::kLanczos;
  // Early exit for r_k within this of 1; bounds the beta_k error by
  // near_one / (2 k ln M).
  double near_one = 1e-6;
};

struct BetaSample {
  std::vector<Alphabet> alphabets;
  std::vector<double> beta_lower;
  std::uint64_t unconverged = 0;  // eigen-solver runs that hit max_iter
};

// beta_lower(A, k_max) for every alphabet EvaluateOnSpace would visit.
// Alphabets with the same CanonicalAlphabet share one solve, seeded with
// DeriveSeed(mode.seed, i) for the first such item i, so results depend only
// on the config, never on mode.threads.
BetaSample SampleBetaLower(const AlphabetSpace& space, const EvalMode& mode,
                           const BetaSampleOptions& options);

struct FupcRecord {
  int m = 0;
  int a_card = 0;
  double delta = 0.0;
  double epsilon = 0.0;
  double threshold = 0.0;  // 1/2 - 3 delta/4 - eps
  EvalMode mode;
  int k_max = 0;
  std::uint64_t count = 0;
  std::uint64_t successes = 0;
  double success_fraction = 0.0;
  double theorem_floor = 0.0;  // max(0, 1 - 4M exp(-M^{4 eps}/64))
  bool floor_vacuous = false;  // theorem_floor == 0
  bool in_regime = false;      // 0 < delta < 2/3
  bool floor_holds = false;    // success_fraction >= theorem_floor
  std::uint64_t unconverged = 0;
};

// Requires 1 < A < M (Error{kTrivialAlphabet}) and eps > 0
// (Error{kNonpositiveInput}).
FupcRecord FupcFromSample(int m, int a_card, double epsilon,
                          const BetaSample& sample, const EvalMode& mode,
                          int k_max);

FupcRecord FupcExperiment(int m, int a_card, double epsilon,
                          const EvalMode& mode, int k_max);

struct CurvePoint {
  int m = 0;
  int a_card = 0;
  double delta = 0.0;
  double mean_beta_lower = 0.0;
  double std_error = 0.0;  // Monte Carlo only
  double volume_bound = 0.0;   // max(0, 1/2 - delta)
  double red_line = 0.0;       // max(0, 1/2 - 3 delta/4)
  double best_possible = 0.0;  // (1 - delta)/2
  int k_max = 0;
  std::uint64_t count = 0;
  EvalMode mode;
  bool dominates_volume = false;  // mean >= volume_bound - 1e-6
  bool above_red_line = false;    // mean >= red_line (recorded only)
  std::uint64_t unconverged = 0;
};

CurvePoint CurveFromSample(int m, int a_card, const BetaSample& sample,
                           const EvalMode& mode, int k_max);

CurvePoint ExpectationExperiment(int m, int a_card, int k_max,
                                 const EvalMode& mode);

// One exact CurvePoint for every 1 < A < M, M in [m_lo, m_hi]. k_max <= 0
// picks DefaultKMax(M) per base. Pair (M, A) is seeded DeriveSeed(seed,
// 1000 M + A).
std::vector<CurvePoint> Figure1Dataset(int m_lo, int m_hi, int k_max,
                                       std::uint64_t seed, int threads);

// max |e(a m/M) - e(b m/M)| / 2 over digits a != b: the swap Lipschitz
// constant of ExpSum(., freq) on any space with 1 <= A < M.
double ExpSumLipschitz(int m, std::int64_t freq);

// TailReport for ExpSum(., freq) with ConcentrationBound as `bound` and extra
// bound columns, L = t / sqrt(A):
//   "per_freq_16"  2 e^{-L^2/16}
//   "chained_64"   2 e^{-L^2/64}
//   "lifted_64"    min(1, 2 exp(-t^2 / (64 A Lip^2)))
// Lip is measured from the values in exact mode, from ExpSumLipschitz in
// Monte Carlo mode. Error{kInvalidArgument} for freq = 0 mod M.
TailReport ConcentrationExperiment(int m, int a_card, std::int64_t freq,
                                   std::vector<double> t_grid,
                                   const EvalMode& mode);

// n evenly spaced points on [lo, hi].
std::vector<double> LinearGrid(double lo, double hi, int n);

}  // namespace fupc

#endif  // FUPC_EXPERIMENTS_HPP_
