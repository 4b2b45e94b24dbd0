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

#include "fupc/oqm.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "fupc/error.hpp"
#include "fupc/parallel.hpp"
#include "fupc/rng.hpp"

namespace fupc {

namespace {

// e^{-2 pi i r c / n} / sqrt(n) * w_r * w_c.
Complex BlockEntry(std::size_t r, std::size_t c, std::size_t n,
                   const std::vector<double>& w) {
  const std::size_t phase = (r * c) % n;
  const double angle = -2.0 * std::numbers::pi * static_cast<double>(phase) /
                       static_cast<double>(n);
  return std::polar(w[r] * w[c] / std::sqrt(static_cast<double>(n)), angle);
}

double Norm2(const ComplexVec& v) {
  double s = 0.0;
  for (const Complex& z : v) s += std::norm(z);
  return std::sqrt(s);
}

ComplexVec RandomUnitVector(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  ComplexVec x(n);
  for (auto& z : x) z = Complex(2.0 * rng.Uniform() - 1.0, 2.0 * rng.Uniform() - 1.0);
  const double s = Norm2(x);
  for (auto& z : x) z /= s;
  return x;
}

// Power iteration on G = A^* A given y -> A^* A y.
template <typename GramApply>
NormEstimate PowerNorm(std::size_t n, GramApply gram, double tol,
                       std::uint64_t seed, int max_iter) {
  ComplexVec x = RandomUnitVector(n, seed);
  ComplexVec z(n);
  NormEstimate est;
  double prev = -1.0;
  for (int it = 1; it <= max_iter; ++it) {
    // lambda = <x, G x> with |x| = 1.
    gram(x, z);
    double lambda = 0.0;
    for (std::size_t i = 0; i < n; ++i) lambda += (std::conj(x[i]) * z[i]).real();
    est.iterations = it;
    est.norm = std::sqrt(std::max(0.0, lambda));
    const double zn = Norm2(z);
    if (zn == 0.0) {
      est.norm = 0.0;
      est.converged = true;
      return est;
    }
    if (prev >= 0.0 && std::abs(lambda - prev) <= tol * lambda) {
      est.converged = true;
      return est;
    }
    prev = lambda;
    for (std::size_t i = 0; i < n; ++i) x[i] = z[i] / zn;
  }
  return est;
}

}  // namespace

OpenQuantumMap::OpenQuantumMap(const Alphabet& alphabet, int k, std::size_t n,
                               std::vector<double> cutoff)
    : alphabet_(alphabet),
      k_(k),
      n_(n),
      block_(n / static_cast<std::size_t>(alphabet.base())),
      cutoff_(std::move(cutoff)),
      full_plan_(std::make_shared<FourierPlan>(n)),
      block_plan_(std::make_shared<FourierPlan>(block_)) {}

OpenQuantumMap OpenQuantumMap::Build(const Alphabet& alphabet, int k,
                                     const OqmOptions& options) {
  if (k < 2) {
    throw Error(ErrorCode::kOrderTooSmall,
                "open quantum map needs k >= 2, got " + std::to_string(k));
  }
  const std::uint64_t cap =
      options.dense ? options.dense_cap : kDefaultOqmMatrixFreeCap;
  const std::uint64_t n = CheckedPower(alphabet.base(), k, cap);
  if (n == 0) {
    throw Error(ErrorCode::kOrderTooLarge,
                "N = " + std::to_string(alphabet.base()) + "^" +
                    std::to_string(k) + " exceeds the " +
                    (options.dense ? "dense" : "matrix-free") + " cap " +
                    std::to_string(cap));
  }
  const std::size_t block = n / static_cast<std::size_t>(alphabet.base());
  std::vector<double> cutoff = options.cutoff;
  if (cutoff.empty()) {
    cutoff.assign(block, 1.0);
  } else if (cutoff.size() != block) {
    throw Error(ErrorCode::kLengthMismatch,
                "cutoff has " + std::to_string(cutoff.size()) +
                    " weights, block size is " + std::to_string(block));
  }
  OpenQuantumMap b(alphabet, k, n, std::move(cutoff));
  if (options.dense) {
    // Column c of B is F_N^{-1} applied to column c of the middle factor.
    b.dense_ = DenseMatrix(n);
    ComplexVec col(n), image(n);
    for (std::size_t c = 0; c < n; ++c) {
      const std::size_t a = c / block;
      if (!alphabet.Contains(static_cast<int>(a))) continue;
      std::fill(col.begin(), col.end(), Complex(0.0));
      for (std::size_t r = 0; r < block; ++r) {
        col[a * block + r] = BlockEntry(r, c - a * block, block, b.cutoff_);
      }
      b.full_plan_->Inverse(col, image);
      for (std::size_t r = 0; r < n; ++r) b.dense_(r, c) = image[r];
    }
  }
  return b;
}

const DenseMatrix& OpenQuantumMap::dense() const {
  if (!has_dense()) {
    throw Error(ErrorCode::kInvalidArgument,
                "open quantum map was built without its dense matrix");
  }
  return dense_;
}

void OpenQuantumMap::Apply(std::span<const Complex> in,
                           std::span<Complex> out) const {
  if (in.size() != n_ || out.size() != n_) {
    throw Error(ErrorCode::kLengthMismatch, "vector length must equal N");
  }
  ComplexVec mid(n_, Complex(0.0)), piece(block_), spec(block_);
  for (int a : alphabet_.digits()) {
    const std::size_t off = static_cast<std::size_t>(a) * block_;
    for (std::size_t r = 0; r < block_; ++r) piece[r] = cutoff_[r] * in[off + r];
    block_plan_->Forward(piece, spec);
    for (std::size_t r = 0; r < block_; ++r) mid[off + r] = cutoff_[r] * spec[r];
  }
  full_plan_->Inverse(mid, out);
}

void OpenQuantumMap::ApplyAdjoint(std::span<const Complex> in,
                                  std::span<Complex> out) const {
  if (in.size() != n_ || out.size() != n_) {
    throw Error(ErrorCode::kLengthMismatch, "vector length must equal N");
  }
  ComplexVec freq(n_), piece(block_), back(block_);
  full_plan_->Forward(in, freq);
  std::fill(out.begin(), out.end(), Complex(0.0));
  for (int a : alphabet_.digits()) {
    const std::size_t off = static_cast<std::size_t>(a) * block_;
    for (std::size_t r = 0; r < block_; ++r) piece[r] = cutoff_[r] * freq[off + r];
    block_plan_->Inverse(piece, back);
    for (std::size_t r = 0; r < block_; ++r) out[off + r] = cutoff_[r] * back[r];
  }
}

DenseMatrix OpenQuantumMap::MiddleFactor() const {
  if (n_ > kDefaultOqmDenseCap) {
    throw Error(ErrorCode::kDenseCapExceeded,
                "middle factor of size " + std::to_string(n_) +
                    " exceeds the dense cap");
  }
  DenseMatrix d(n_);
  for (int a : alphabet_.digits()) {
    const std::size_t off = static_cast<std::size_t>(a) * block_;
    for (std::size_t r = 0; r < block_; ++r) {
      for (std::size_t c = 0; c < block_; ++c) {
        d(off + r, off + c) = BlockEntry(r, c, block_, cutoff_);
      }
    }
  }
  return d;
}

NormEstimate OperatorNorm(const OpenQuantumMap& b, double tol,
                          std::uint64_t seed, int max_iter) {
  ComplexVec tmp(b.n());
  return PowerNorm(
      b.n(),
      [&](const ComplexVec& x, ComplexVec& z) {
        b.Apply(x, tmp);
        b.ApplyAdjoint(tmp, z);
      },
      tol, seed, max_iter);
}

NormEstimate DenseOperatorNorm(const DenseMatrix& x, double tol,
                               std::uint64_t seed, int max_iter, int threads) {
  const std::size_t n = x.dim;
  ComplexVec y(n);
  return PowerNorm(
      n,
      [&](const ComplexVec& v, ComplexVec& z) {
        ParallelFor(n, threads, [&](std::size_t i) {
          Complex s = 0.0;
          const Complex* row = &x.data[i * n];
          for (std::size_t j = 0; j < n; ++j) s += row[j] * v[j];
          y[i] = s;
        });
        ParallelFor(n, threads, [&](std::size_t j) {
          Complex s = 0.0;
          for (std::size_t i = 0; i < n; ++i) s += std::conj(x(i, j)) * y[i];
          z[j] = s;
        });
      },
      tol, seed, max_iter);
}

DenseMatrix Multiply(const DenseMatrix& x, const DenseMatrix& y, int threads) {
  if (x.dim != y.dim) {
    throw Error(ErrorCode::kShapeMismatch, "matrix dimensions differ");
  }
  const std::size_t n = x.dim;
  DenseMatrix out(n);
  ParallelFor(n, threads, [&](std::size_t i) {
    Complex* dst = &out.data[i * n];
    for (std::size_t l = 0; l < n; ++l) {
      const Complex s = x(i, l);
      if (s == Complex(0.0)) continue;
      const Complex* src = &y.data[l * n];
      for (std::size_t j = 0; j < n; ++j) dst[j] += s * src[j];
    }
  });
  return out;
}

SpectralRadiusResult SpectralRadius(const OpenQuantumMap& b, int j_max,
                                    double tol, int threads) {
  if (j_max < 0) {
    throw Error(ErrorCode::kInvalidArgument, "j_max must be non-negative");
  }
  DenseMatrix x = b.dense();
  // ||B^n|| can sit exactly at 1 while n is below the escape time (about k
  // steps), which would read as convergence; only test once 2^j >= 4k.
  int first_check = 1;
  while ((1 << first_check) < 4 * b.k()) ++first_check;
  // B^{2^j} = exp(log_scale) * x throughout.
  double log_scale = 0.0;
  SpectralRadiusResult out;
  for (int j = 0;; ++j) {
    const double nrm = DenseOperatorNorm(x, 1e-12, 1, 10000, threads).norm;
    out.j_used = j;
    if (nrm == 0.0) {
      out.norm_sequence.push_back(0.0);
      out.converged = true;
      break;
    }
    const double est = std::exp((std::log(nrm) + log_scale) / std::ldexp(1.0, j));
    out.norm_sequence.push_back(est);
    if (j >= first_check) {
      const double prev = out.norm_sequence[j - 1];
      if (std::abs(est - prev) <= tol * prev) {
        out.converged = true;
        break;
      }
    }
    if (j == j_max) break;
    for (auto& z : x.data) z /= nrm;
    log_scale = 2.0 * (log_scale + std::log(nrm));
    x = Multiply(x, x, threads);
  }
  out.rho = out.norm_sequence.back();
  return out;
}

std::vector<BetaCandidate> DefaultBetaCandidates(const Alphabet& alphabet,
                                                 double eps) {
  const double delta = Dimension(alphabet);
  return {{"volume", VolumeBound(delta)},
          {"red_line_eps", 0.5 - 0.75 * delta - eps}};
}

std::vector<GapRow> GapReport(const Alphabet& alphabet,
                              const std::vector<int>& k_values,
                              const std::vector<BetaCandidate>& candidates,
                              int threads) {
  std::vector<GapRow> rows;
  const double m = alphabet.base();
  for (int k : k_values) {
    const auto b = OpenQuantumMap::Build(alphabet, k);
    const auto sr = SpectralRadius(b, 12, 1e-4, threads);
    GapRow row{alphabet, k, b.n(), sr.rho, OperatorNorm(b).norm, sr.j_used,
               sr.converged, {}};
    for (const auto& c : candidates) {
      const double target = std::pow(m, -c.beta);
      row.columns.push_back(
          {c, target, std::pow(m, c.beta), sr.rho > target + 1e-9});
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace fupc
