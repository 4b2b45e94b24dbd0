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

#include "fupc/fourier.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "fupc/error.hpp"

namespace fupc {

namespace {

std::vector<std::size_t> PrimeFactors(std::size_t n) {
  std::vector<std::size_t> out;
  for (std::size_t p = 2; p * p <= n; ++p) {
    while (n % p == 0) {
      out.push_back(p);
      n /= p;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

Complex UnitRoot(std::uint64_t num, std::uint64_t den) {
  // e^{-2 pi i num / den}, num already reduced mod den.
  const double angle = -2.0 * std::numbers::pi * static_cast<double>(num) /
                       static_cast<double>(den);
  return {std::cos(angle), std::sin(angle)};
}

void CheckLength(std::size_t expected, std::size_t got) {
  if (expected != got) {
    throw Error(ErrorCode::kLengthMismatch,
                "expected a vector of length " + std::to_string(expected) +
                    ", got " + std::to_string(got));
  }
}

}  // namespace

FourierPlan::FourierPlan(std::size_t n) : n_(n), max_factor_(1) {
  if (n == 0) throw Error(ErrorCode::kInvalidArgument, "DFT length must be >= 1");
  factors_ = PrimeFactors(n);
  for (std::size_t p : factors_) max_factor_ = std::max(max_factor_, p);
  twiddles_.resize(n);
  for (std::size_t j = 0; j < n; ++j) twiddles_[j] = UnitRoot(j, n);
}

void FourierPlan::Transform(const Complex* in, std::size_t stride,
                            Complex* out, std::size_t len, std::size_t depth,
                            Complex* scratch) const {
  if (len == 1) {
    out[0] = in[0];
    return;
  }
  const std::size_t p = factors_[depth];
  const std::size_t m = len / p;
  for (std::size_t r = 0; r < p; ++r) {
    Transform(in + r * stride, stride * p, out + r * m, m, depth + 1, scratch);
  }
  const std::size_t step = n_ / len;
  const std::size_t root_step = n_ / p;
  for (std::size_t k = 0; k < m; ++k) {
    for (std::size_t r = 0; r < p; ++r) {
      scratch[r] = out[r * m + k] * twiddles_[r * k * step];
    }
    for (std::size_t q = 0; q < p; ++q) {
      Complex acc = scratch[0];
      for (std::size_t r = 1; r < p; ++r) {
        acc += scratch[r] * twiddles_[((r * q) % p) * root_step];
      }
      out[k + q * m] = acc;
    }
  }
}

void FourierPlan::Forward(std::span<const Complex> in,
                          std::span<Complex> out) const {
  CheckLength(n_, in.size());
  CheckLength(n_, out.size());
  std::vector<Complex> scratch(max_factor_);
  Transform(in.data(), 1, out.data(), n_, 0, scratch.data());
  const double scale = 1.0 / std::sqrt(static_cast<double>(n_));
  for (Complex& z : out) z *= scale;
}

void FourierPlan::Inverse(std::span<const Complex> in,
                          std::span<Complex> out) const {
  CheckLength(n_, in.size());
  ComplexVec conj_in(in.size());
  for (std::size_t i = 0; i < in.size(); ++i) conj_in[i] = std::conj(in[i]);
  Forward(conj_in, out);
  for (Complex& z : out) z = std::conj(z);
}

ComplexVec Dft(std::size_t n, std::span<const Complex> u) {
  CheckLength(n, u.size());
  ComplexVec v(n);
  FourierPlan(n).Forward(u, v);
  return v;
}

ComplexVec Idft(std::size_t n, std::span<const Complex> v) {
  CheckLength(n, v.size());
  ComplexVec u(n);
  FourierPlan(n).Inverse(v, u);
  return u;
}

namespace {

ComplexVec MaskedTransform(const CantorSet& c, std::span<const Complex> u,
                           bool inverse) {
  const auto n = static_cast<std::size_t>(c.n());
  CheckLength(n, u.size());
  ComplexVec masked(n);
  for (std::uint64_t idx : c.indices()) masked[idx] = u[idx];
  ComplexVec transformed(n);
  FourierPlan plan(n);
  if (inverse) {
    plan.Inverse(masked, transformed);
  } else {
    plan.Forward(masked, transformed);
  }
  ComplexVec out(n);
  for (std::uint64_t idx : c.indices()) out[idx] = transformed[idx];
  return out;
}

}  // namespace

ComplexVec RestrictedApply(const CantorSet& c, std::span<const Complex> u) {
  return MaskedTransform(c, u, false);
}

ComplexVec RestrictedApplyAdjoint(const CantorSet& c,
                                  std::span<const Complex> u) {
  return MaskedTransform(c, u, true);
}

CantorTransform::CantorTransform(const CantorSet& c)
    : alphabet_size_(c.alphabet().digits().size()),
      order_(c.order()),
      size_(c.size()),
      scale_(1.0 / std::sqrt(static_cast<double>(c.n()))) {
  const auto digits = c.alphabet().digits();
  const auto m = static_cast<std::uint64_t>(c.alphabet().base());
  const std::size_t a = alphabet_size_;
  // Order-s Cantor value at compressed position p: the low s base-M digits
  // of the full-order value, since positions agree on their low base-A digits.
  const auto values = c.indices();
  std::uint64_t modulus = 1;
  std::size_t count = 1;
  twiddles_.resize(static_cast<std::size_t>(order_));
  for (int s = 1; s <= order_; ++s) {
    modulus *= m;
    count *= a;
    auto& table = twiddles_[static_cast<std::size_t>(s - 1)];
    table.resize(count * a);
    for (std::size_t p = 0; p < count; ++p) {
      const std::uint64_t j = values[p] % modulus;
      for (std::size_t q = 0; q < a; ++q) {
        const auto d = static_cast<std::uint64_t>(digits[q]);
        // j < M^s and d < M, so j * d fits easily for any N within the cap.
        table[p * a + q] = UnitRoot((j * d) % modulus, modulus);
      }
    }
  }
}

void CantorTransform::Recurse(const Complex* in, std::size_t stride,
                              Complex* out, int level,
                              Complex* scratch) const {
  if (level == 0) {
    out[0] = in[0];
    return;
  }
  const std::size_t a = alphabet_size_;
  std::size_t sub = 1;
  for (int s = 1; s < level; ++s) sub *= a;
  for (std::size_t q = 0; q < a; ++q) {
    Recurse(in + q * stride, stride * a, out + q * sub, level - 1, scratch);
  }
  const auto& table = twiddles_[static_cast<std::size_t>(level - 1)];
  for (std::size_t low = 0; low < sub; ++low) {
    for (std::size_t q = 0; q < a; ++q) scratch[q] = out[q * sub + low];
    for (std::size_t top = 0; top < a; ++top) {
      const std::size_t p = low + sub * top;
      const Complex* row = &table[p * a];
      Complex acc = 0.0;
      for (std::size_t q = 0; q < a; ++q) acc += row[q] * scratch[q];
      out[p] = acc;
    }
  }
}

void CantorTransform::Apply(std::span<const Complex> in,
                            std::span<Complex> out) const {
  CheckLength(size_, in.size());
  CheckLength(size_, out.size());
  std::vector<Complex> scratch(alphabet_size_);
  Recurse(in.data(), 1, out.data(), order_, scratch.data());
  for (Complex& z : out) z *= scale_;
}

void CantorTransform::ApplyAdjoint(std::span<const Complex> in,
                                   std::span<Complex> out) const {
  // The kernel is symmetric, so the adjoint is the entrywise conjugate.
  CheckLength(size_, in.size());
  ComplexVec conj_in(in.size());
  for (std::size_t i = 0; i < in.size(); ++i) conj_in[i] = std::conj(in[i]);
  Apply(conj_in, out);
  for (Complex& z : out) z = std::conj(z);
}

}  // namespace fupc
