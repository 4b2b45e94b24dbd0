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

#ifndef FUPC_OQM_HPP_
#define FUPC_OQM_HPP_

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "fupc/cantor.hpp"
#include "fupc/fourier.hpp"
#include "fupc/spectral.hpp"

namespace fupc {

inline constexpr std::size_t kDefaultOqmDenseCap = 4096;
// Matrix-free application only needs O(N) memory.
inline constexpr std::uint64_t kDefaultOqmMatrixFreeCap = std::uint64_t{1} << 24;

struct OqmOptions {
  // Real weights on {0..N/M-1}; empty means the identity cutoff.
  std::vector<double> cutoff;
  bool dense = true;
  std::size_t dense_cap = kDefaultOqmDenseCap;
};

// B_N = F_N^{-1} D, where D is block diagonal with M blocks of size N/M:
// chi F_{N/M} chi on block a for a in the alphabet, zero otherwise.
class OpenQuantumMap {
 public:
  // Throws Error{kOrderTooSmall} for k < 2, Error{kOrderTooLarge} when N
  // exceeds the dense cap (dense mode) or the matrix-free cap, and
  // Error{kLengthMismatch} for a cutoff of the wrong size.
  static OpenQuantumMap Build(const Alphabet& alphabet, int k,
                              const OqmOptions& options = {});

  const Alphabet& alphabet() const noexcept { return alphabet_; }
  int k() const noexcept { return k_; }
  std::size_t n() const noexcept { return n_; }
  std::size_t block_size() const noexcept { return block_; }
  bool has_dense() const noexcept { return !dense_.data.empty(); }
  // Throws Error{kInvalidArgument} when built without the dense matrix.
  const DenseMatrix& dense() const;

  // Matrix-free B u and B^* u.
  void Apply(std::span<const Complex> in, std::span<Complex> out) const;
  void ApplyAdjoint(std::span<const Complex> in, std::span<Complex> out) const;

  // The block-diagonal middle factor D as a dense matrix (N <= dense cap).
  DenseMatrix MiddleFactor() const;

 private:
  OpenQuantumMap(const Alphabet& alphabet, int k, std::size_t n,
                 std::vector<double> cutoff);

  Alphabet alphabet_;
  int k_;
  std::size_t n_;
  std::size_t block_;
  std::vector<double> cutoff_;
  std::shared_ptr<const FourierPlan> full_plan_;
  std::shared_ptr<const FourierPlan> block_plan_;
  DenseMatrix dense_;
};

struct NormEstimate {
  double norm = 0.0;
  int iterations = 0;
  bool converged = false;
};

// ||B|| by power iteration on B^* B using the matrix-free applier.
NormEstimate OperatorNorm(const OpenQuantumMap& b, double tol = 1e-12,
                          std::uint64_t seed = 1, int max_iter = 10000);

// ||X|| for a dense matrix, same method.
NormEstimate DenseOperatorNorm(const DenseMatrix& x, double tol = 1e-12,
                               std::uint64_t seed = 1, int max_iter = 10000,
                               int threads = 1);

// X Y, parallel over rows.
DenseMatrix Multiply(const DenseMatrix& x, const DenseMatrix& y, int threads = 1);

struct SpectralRadiusResult {
  double rho = 0.0;
  int j_used = 0;
  // norm_sequence[j] = ||B^{2^j}||^{1/2^j}, j = 0..j_used.
  std::vector<double> norm_sequence;
  bool converged = false;
};

// Gelfand estimate by repeated squaring with normalization after each step.
// Stops when the relative change drops to `tol` (tested only once 2^j >= 4k)
// or after j_max squarings; `converged` is false in the latter case.
SpectralRadiusResult SpectralRadius(const OpenQuantumMap& b, int j_max = 12,
                                    double tol = 1e-4, int threads = 1);

struct BetaCandidate {
  std::string name;
  double beta = 0.0;
};

// "volume" = max(0, 1/2 - delta) and "red_line_eps" = 1/2 - 3 delta/4 - eps.
std::vector<BetaCandidate> DefaultBetaCandidates(const Alphabet& alphabet,
                                                 double eps);

struct GapColumn {
  BetaCandidate candidate;
  double m_pow_neg_beta = 0.0;  // M^{-beta}
  double m_pow_beta = 0.0;      // M^{beta}
  // rho > M^{-beta}: the finite-N radius has not dropped below the target.
  bool regime_not_reached = false;
};

struct GapRow {
  Alphabet alphabet;
  int k = 0;
  std::size_t n = 0;
  double rho = 0.0;
  double norm = 0.0;
  int j_used = 0;
  bool converged = false;
  std::vector<GapColumn> columns;
};

std::vector<GapRow> GapReport(const Alphabet& alphabet,
                              const std::vector<int>& k_values,
                              const std::vector<BetaCandidate>& candidates,
                              int threads = 1);

}  // namespace fupc

#endif  // FUPC_OQM_HPP_
