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

#ifndef FUPC_FOURIER_HPP_
#define FUPC_FOURIER_HPP_

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "fupc/cantor.hpp"

namespace fupc {

using Complex = std::complex<double>;
using ComplexVec = std::vector<Complex>;

// Unitary DFT of a fixed length n, v(j) = n^{-1/2} sum_l e^{-2 pi i j l / n}
// u(l). Mixed-radix decimation in time over the prime factors of n; a prime
// length degenerates to the direct sum. Immutable once built, so one plan
// can serve many threads.
class FourierPlan {
 public:
  explicit FourierPlan(std::size_t n);

  std::size_t size() const noexcept { return n_; }
  const std::vector<std::size_t>& factors() const noexcept { return factors_; }

  // `in` and `out` must both have length n and must not alias.
  void Forward(std::span<const Complex> in, std::span<Complex> out) const;
  void Inverse(std::span<const Complex> in, std::span<Complex> out) const;

 private:
  void Transform(const Complex* in, std::size_t stride, Complex* out,
                 std::size_t len, std::size_t depth, Complex* scratch) const;

  std::size_t n_;
  std::size_t max_factor_;
  std::vector<std::size_t> factors_;
  std::vector<Complex> twiddles_;  // e^{-2 pi i j / n}
};

// Throw Error{kLengthMismatch} unless u.size() == n.
ComplexVec Dft(std::size_t n, std::span<const Complex> u);
ComplexVec Idft(std::size_t n, std::span<const Complex> v);

// 1_C F_N 1_C on the full length-N space.
ComplexVec RestrictedApply(const CantorSet& c, std::span<const Complex> u);
// (1_C F_N 1_C)^* = 1_C F_N^{-1} 1_C.
ComplexVec RestrictedApplyAdjoint(const CantorSet& c,
                                  std::span<const Complex> u);

// 1_C F_N 1_C compressed to the A^k coordinates of C (ordered as
// CantorSet::indices()). Uses the digit structure of C: each radix-M stage
// of the transform only ever touches alphabet digits, so one application
// costs k * A^{k+1} operations instead of O(N log N).
class CantorTransform {
 public:
  explicit CantorTransform(const CantorSet& c);

  std::size_t size() const noexcept { return size_; }

  // `in` and `out` have length A^k and must not alias.
  void Apply(std::span<const Complex> in, std::span<Complex> out) const;
  void ApplyAdjoint(std::span<const Complex> in, std::span<Complex> out) const;

 private:
  void Recurse(const Complex* in, std::size_t stride, Complex* out,
               int level, Complex* scratch) const;

  std::size_t alphabet_size_;
  int order_;
  std::size_t size_;
  double scale_;
  // twiddles_[s - 1][p * A + q] = e^{-2 pi i j_p d_q / M^s}, where j_p is the
  // order-s Cantor index at compressed position p and d_q the q-th digit.
  std::vector<std::vector<Complex>> twiddles_;
};

}  // namespace fupc

#endif  // FUPC_FOURIER_HPP_
