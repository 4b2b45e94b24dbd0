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

#ifndef FUPC_SPECTRAL_HPP_
#define FUPC_SPECTRAL_HPP_

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "fupc/cantor.hpp"
#include "fupc/fourier.hpp"

namespace fupc {

// Row-major square complex matrix.
struct DenseMatrix {
  std::size_t dim = 0;
  std::vector<Complex> data;

  DenseMatrix() = default;
  explicit DenseMatrix(std::size_t n) : dim(n), data(n * n) {}
  Complex& operator()(std::size_t i, std::size_t j) { return data[i * dim + j]; }
  const Complex& operator()(std::size_t i, std::size_t j) const {
    return data[i * dim + j];
  }
};

struct HermitianEigen {
  std::vector<double> values;  // descending
  DenseMatrix vectors;         // column i pairs with values[i]
  int sweeps = 0;
  double off_norm = 0.0;       // off-diagonal Frobenius norm at exit
  bool converged = false;
};

// Cyclic Jacobi rotations. Stops once the off-diagonal Frobenius norm is
// at most tol * max(1, ||A||_F). Only the upper triangle's Hermitian part is
// trusted; the input is assumed Hermitian.
HermitianEigen JacobiEigen(DenseMatrix a, double tol = 1e-13,
                           int max_sweeps = 100);

// The A x A Gram matrix of 1_A F_M 1_A, indexed by alphabet positions:
// F_jk = (1/M) sum_{l in A} e^{2 pi i (k - j) l / M}.
struct GramMatrix {
  Alphabet alphabet;
  DenseMatrix entries;
};

GramMatrix BuildGramMatrix(const Alphabet& alphabet);

// max_j sum_k |F_jk|, an upper bound for r_1^2 by Schur's test.
double SchurBound(const Alphabet& alphabet);

enum class SpectralMethod { kDense, kPower, kLanczos };

const char* SpectralMethodName(SpectralMethod method);

struct SpectralReport {
  Alphabet alphabet;
  int k = 1;
  double r_k = 0.0;
  double beta_k = 0.0;
  int iterations = 0;
  double residual = 0.0;
  SpectralMethod method = SpectralMethod::kPower;
  bool converged = true;
};

// -log(r) / (k log M), with r clamped below at 1e-300.
double ExponentFromNorm(double r, int k, int base);

inline constexpr std::size_t kDefaultDenseCap = 512;

// r_1 from the largest Gram eigenvalue. Throws Error{kDenseCapExceeded}
// when A > dense_cap.
SpectralReport R1Dense(const Alphabet& alphabet,
                       std::size_t dense_cap = kDefaultDenseCap);

struct PowerOptions {
  int max_iter = 100000;  // operator applications
  std::uint64_t n_cap = kDefaultIndexCap;
  // Used by ComputeBetaProfile to pick RkPower or RkLanczos.
  SpectralMethod method = SpectralMethod::kPower;
  std::size_t krylov_dim = 48;  // RkLanczos only
  // RkLanczos only: also stop once the Ritz value reaches 1 - near_one.
  // Since r_k <= 1 this still brackets r_k^2 within near_one.
  double near_one = 0.0;
};

// r_k by power iteration on T^* T with T = 1_C F_N 1_C (compressed to C),
// two seeded restarts, larger estimate kept. Stops when the relative change
// of the Rayleigh quotient is at most `tol`; on hitting max_iter the report
// comes back with converged = false rather than throwing. `residual` is
// ||T^*T x - lambda x|| / lambda for the returned unit vector x.
SpectralReport RkPower(const Alphabet& alphabet, int k, double tol,
                       std::uint64_t seed, const PowerOptions& options = {});

// r_k by thick-restart Lanczos on the same compressed T^* T: a Krylov basis
// of krylov_dim vectors with full reorthogonalization, Rayleigh-Ritz on it,
// restart keeping the top third of the Ritz vectors. Stops once the Ritz
// residual ||T^*T y - theta y|| is at most tol * theta (that residual bounds
// the eigenvalue error) or theta gains less than tol/100 relative over a
// restart cycle. theta never exceeds the true top eigenvalue; `residual`
// reports the relative Ritz residual at exit.
// Needs far fewer applications than RkPower when the top singular values
// cluster. `iterations` counts operator applications.
SpectralReport RkLanczos(const Alphabet& alphabet, int k, double tol,
                         std::uint64_t seed, const PowerOptions& options = {});

// Representative of the alphabets sharing every r_k with `alphabet`: digits
// shifted down so the smallest is 0, then the lexicographically smaller of
// that and its mirror max - d. A shift without wraparound translates C_k and
// the mirror negates it up to translation; neither changes |F_N| entries on
// C_k x C_k beyond unimodular row and column factors.
Alphabet CanonicalAlphabet(const Alphabet& alphabet);

struct BetaProfile {
  std::vector<SpectralReport> reports;  // k = 1..k_max
  double beta_lower = 0.0;              // max_k beta_k
};

// Per-k reports from options.method (power or Lanczos); k uses seed DeriveSeed(seed, k). Works for
// trivial alphabets too.
BetaProfile ComputeBetaProfile(const Alphabet& alphabet, int k_max, double tol,
                               std::uint64_t seed,
                               const PowerOptions& options = {});

// max_{k <= k_max} beta_k, a lower bound for the sharp exponent since
// r_{nk} <= r_k^n. Throws Error{kTrivialAlphabet} unless 1 < A < M.
double BetaLower(const Alphabet& alphabet, int k_max, double tol,
                 std::uint64_t seed, const PowerOptions& options = {});

// Envelope values at dimension delta.
inline double VolumeBound(double delta) { return delta < 0.5 ? 0.5 - delta : 0.0; }
inline double RedLine(double delta) {
  const double v = 0.5 - 0.75 * delta;
  return v > 0.0 ? v : 0.0;
}
inline double BestPossible(double delta) { return (1.0 - delta) / 2.0; }

}  // namespace fupc

#endif  // FUPC_SPECTRAL_HPP_
