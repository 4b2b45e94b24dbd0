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

#include "fupc/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include <Eigen/Eigenvalues>

#include "fupc/error.hpp"
#include "fupc/rng.hpp"

namespace fupc {

namespace {

double OffDiagonalNorm(const DenseMatrix& a) {
  double sum = 0.0;
  for (std::size_t i = 0; i < a.dim; ++i) {
    for (std::size_t j = 0; j < a.dim; ++j) {
      if (i != j) sum += std::norm(a(i, j));
    }
  }
  return std::sqrt(sum);
}

double FrobeniusNorm(const DenseMatrix& a) {
  double sum = 0.0;
  for (const Complex& z : a.data) sum += std::norm(z);
  return std::sqrt(sum);
}

// Zeroes a(p, q) with the unitary R = diag(1, conj(e)) * [[c, s], [-s, c]]
// acting on coordinates (p, q), where a(p, q) = g e with g = |a(p, q)|.
void Rotate(DenseMatrix& a, DenseMatrix& v, std::size_t p, std::size_t q) {
  const Complex apq = a(p, q);
  const double g = std::abs(apq);
  if (g == 0.0) return;
  const Complex e = apq / g;
  const double app = a(p, p).real();
  const double aqq = a(q, q).real();
  const double theta = (aqq - app) / (2.0 * g);
  const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                   (std::abs(theta) + std::sqrt(theta * theta + 1.0));
  const double c = 1.0 / std::sqrt(t * t + 1.0);
  const double s = t * c;
  const Complex ce = std::conj(e);
  const std::size_t n = a.dim;
  // A <- A R
  for (std::size_t r = 0; r < n; ++r) {
    const Complex arp = a(r, p);
    const Complex arq = a(r, q);
    a(r, p) = c * arp - s * ce * arq;
    a(r, q) = s * arp + c * ce * arq;
  }
  // A <- R^* A
  for (std::size_t r = 0; r < n; ++r) {
    const Complex apr = a(p, r);
    const Complex aqr = a(q, r);
    a(p, r) = c * apr - s * e * aqr;
    a(q, r) = s * apr + c * e * aqr;
  }
  a(p, q) = 0.0;
  a(q, p) = 0.0;
  a(p, p) = app - t * g;
  a(q, q) = aqq + t * g;
  // V <- V R
  for (std::size_t r = 0; r < n; ++r) {
    const Complex vrp = v(r, p);
    const Complex vrq = v(r, q);
    v(r, p) = c * vrp - s * ce * vrq;
    v(r, q) = s * vrp + c * ce * vrq;
  }
}

}  // namespace

HermitianEigen JacobiEigen(DenseMatrix a, double tol, int max_sweeps) {
  const std::size_t n = a.dim;
  HermitianEigen out;
  DenseMatrix v(n);
  for (std::size_t i = 0; i < n; ++i) v(i, i) = 1.0;
  const double threshold = tol * std::max(1.0, FrobeniusNorm(a));
  double off = OffDiagonalNorm(a);
  int sweeps = 0;
  while (off > threshold && sweeps < max_sweeps) {
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) Rotate(a, v, p, q);
    }
    ++sweeps;
    off = OffDiagonalNorm(a);
  }
  out.sweeps = sweeps;
  out.off_norm = off;
  out.converged = off <= threshold;

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    return a(x, x).real() > a(y, y).real();
  });
  out.values.resize(n);
  out.vectors = DenseMatrix(n);
  for (std::size_t i = 0; i < n; ++i) {
    out.values[i] = a(order[i], order[i]).real();
    for (std::size_t r = 0; r < n; ++r) out.vectors(r, i) = v(r, order[i]);
  }
  return out;
}

GramMatrix BuildGramMatrix(const Alphabet& alphabet) {
  const auto digits = alphabet.digits();
  const std::size_t a = digits.size();
  const int m = alphabet.base();
  GramMatrix gram{alphabet, DenseMatrix(a)};
  for (std::size_t j = 0; j < a; ++j) {
    gram.entries(j, j) = static_cast<double>(a) / m;
    for (std::size_t k = j + 1; k < a; ++k) {
      Complex sum = 0.0;
      for (int l : digits) {
        // Reduce the phase exactly before converting to an angle.
        const int phase = ((digits[k] - digits[j]) * l) % m;
        const double angle = 2.0 * std::numbers::pi * phase / m;
        sum += Complex(std::cos(angle), std::sin(angle));
      }
      sum /= static_cast<double>(m);
      gram.entries(j, k) = sum;
      gram.entries(k, j) = std::conj(sum);
    }
  }
  return gram;
}

double SchurBound(const Alphabet& alphabet) {
  const GramMatrix gram = BuildGramMatrix(alphabet);
  double best = 0.0;
  for (std::size_t j = 0; j < gram.entries.dim; ++j) {
    double row = 0.0;
    for (std::size_t k = 0; k < gram.entries.dim; ++k) {
      row += std::abs(gram.entries(j, k));
    }
    best = std::max(best, row);
  }
  return best;
}

const char* SpectralMethodName(SpectralMethod method) {
  switch (method) {
    case SpectralMethod::kDense:
      return "dense";
    case SpectralMethod::kPower:
      return "power";
    case SpectralMethod::kLanczos:
      return "lanczos";
  }
  return "unknown";
}

double ExponentFromNorm(double r, int k, int base) {
  const double clamped = std::max(r, 1e-300);
  // Adding +0.0 turns the -0 from r = 1 into 0.
  return -std::log(clamped) / (k * std::log(static_cast<double>(base))) + 0.0;
}

SpectralReport R1Dense(const Alphabet& alphabet, std::size_t dense_cap) {
  const auto a = static_cast<std::size_t>(alphabet.size());
  if (a > dense_cap) {
    throw Error(ErrorCode::kDenseCapExceeded,
                "alphabet size " + std::to_string(a) + " exceeds dense cap " +
                    std::to_string(dense_cap));
  }
  const HermitianEigen eig = JacobiEigen(BuildGramMatrix(alphabet).entries);
  const double r = std::sqrt(std::max(eig.values.front(), 0.0));
  return SpectralReport{
      .alphabet = alphabet,
      .k = 1,
      .r_k = r,
      .beta_k = ExponentFromNorm(r, 1, alphabet.base()),
      .iterations = eig.sweeps,
      .residual = eig.off_norm,
      .method = SpectralMethod::kDense,
      .converged = eig.converged,
  };
}

namespace {

double Norm2(std::span<const Complex> x) {
  double sum = 0.0;
  for (const Complex& z : x) sum += std::norm(z);
  return std::sqrt(sum);
}

struct PowerRun {
  double lambda = 0.0;
  double residual = 0.0;
  int iterations = 0;
  bool converged = false;
};

PowerRun RunPower(const CantorTransform& op, double tol, std::uint64_t seed,
                  int max_iter) {
  const std::size_t n = op.size();
  Rng rng(seed);
  ComplexVec x(n), y(n), z(n);
  for (Complex& c : x) {
    c = Complex(2.0 * rng.Uniform() - 1.0, 2.0 * rng.Uniform() - 1.0);
  }
  const double x0 = Norm2(x);
  for (Complex& c : x) c /= x0;

  PowerRun run;
  double previous = -1.0;
  for (int it = 1; it <= max_iter; ++it) {
    op.Apply(x, y);
    op.ApplyAdjoint(y, z);
    const double ty = Norm2(y);
    const double lambda = ty * ty;  // <x, T^*T x> with ||x|| = 1
    run.lambda = lambda;
    run.iterations = it;
    if (lambda == 0.0) {
      run.converged = true;
      run.residual = 0.0;
      return run;
    }
    double res = 0.0;
    for (std::size_t i = 0; i < n; ++i) res += std::norm(z[i] - lambda * x[i]);
    run.residual = std::sqrt(res) / lambda;
    const double zn = Norm2(z);
    for (std::size_t i = 0; i < n; ++i) x[i] = z[i] / zn;
    if (it > 1 && std::abs(lambda - previous) <= tol * lambda) {
      run.converged = true;
      return run;
    }
    previous = lambda;
  }
  return run;
}

}  // namespace

SpectralReport RkPower(const Alphabet& alphabet, int k, double tol,
                       std::uint64_t seed, const PowerOptions& options) {
  if (!(tol > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "tolerance must be positive");
  }
  const CantorSet c = BuildCantor(alphabet, k, options.n_cap);
  const CantorTransform op(c);
  PowerRun best;
  for (std::uint64_t restart = 0; restart < 2; ++restart) {
    PowerRun run = RunPower(op, tol, DeriveSeed(seed, restart), options.max_iter);
    if (restart == 0 || run.lambda > best.lambda) best = run;
  }
  const double r = std::sqrt(best.lambda);
  return SpectralReport{
      .alphabet = alphabet,
      .k = k,
      .r_k = r,
      .beta_k = ExponentFromNorm(r, k, alphabet.base()),
      .iterations = best.iterations,
      .residual = best.residual,
      .method = SpectralMethod::kPower,
      .converged = best.converged,
  };
}

SpectralReport RkLanczos(const Alphabet& alphabet, int k, double tol,
                         std::uint64_t seed, const PowerOptions& options) {
  if (!(tol > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "tolerance must be positive");
  }
  const CantorSet c = BuildCantor(alphabet, k, options.n_cap);
  const CantorTransform op(c);
  const std::size_t n = op.size();
  const std::size_t m = std::max<std::size_t>(2, std::min(n, options.krylov_dim));
  const std::size_t keep = std::max<std::size_t>(1, m / 3);

  auto dot = [n](const ComplexVec& a, const ComplexVec& b) {
    Complex s = 0.0;
    for (std::size_t l = 0; l < n; ++l) s += std::conj(a[l]) * b[l];
    return s;
  };
  ComplexVec tmp(n);
  int applies = 0;
  auto gram = [&](const ComplexVec& in, ComplexVec& out) {
    op.Apply(in, tmp);
    op.ApplyAdjoint(tmp, out);
    ++applies;
  };

  // basis holds orthonormal V, images holds G V column by column, and h
  // accumulates V* G V from the Gram-Schmidt coefficients.
  std::vector<ComplexVec> basis(m, ComplexVec(n)), images(m, ComplexVec(n));
  std::vector<ComplexVec> next_basis(keep, ComplexVec(n)), next_images(keep, ComplexVec(n));
  Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(m),
                                              static_cast<Eigen::Index>(m));
  std::vector<Complex> coef(m);
  // Removes the span of basis[0..size) from v, with a second pass only on
  // heavy cancellation. coef receives the total projection coefficients.
  auto orthogonalize = [&](ComplexVec& v, std::size_t size) {
    std::fill(coef.begin(), coef.begin() + static_cast<std::ptrdiff_t>(size), Complex(0.0));
    double before = Norm2(v);
    double after = before;
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t i = 0; i < size; ++i) {
        const Complex d = dot(basis[i], v);
        coef[i] += d;
        for (std::size_t l = 0; l < n; ++l) v[l] -= d * basis[i][l];
      }
      after = Norm2(v);
      if (after > 0.7 * before) break;
      before = after;
    }
    return after;
  };
  auto set_column = [&](std::size_t col, std::size_t size) {
    for (std::size_t i = 0; i < size; ++i) {
      const auto r = static_cast<Eigen::Index>(i);
      const auto q = static_cast<Eigen::Index>(col);
      h(r, q) = coef[i];
      h(q, r) = std::conj(coef[i]);
    }
    h(static_cast<Eigen::Index>(col), static_cast<Eigen::Index>(col)) = coef[col].real();
  };

  Rng rng(seed);
  ComplexVec v(n);
  for (Complex& z : v) z = Complex(2.0 * rng.Uniform() - 1.0, 2.0 * rng.Uniform() - 1.0);
  double vn = Norm2(v);
  for (Complex& z : v) z /= vn;

  SpectralReport report{.alphabet = alphabet,
                        .k = k,
                        .method = SpectralMethod::kLanczos,
                        .converged = false};
  double theta = 0.0;
  double previous_theta = -1.0;
  std::size_t size = 0;
  while (true) {
    // Expand with v, then keep extending by the orthogonalized image.
    bool exhausted = false;
    while (size < m) {
      basis[size] = v;
      gram(basis[size], images[size]);
      ++size;
      v = images[size - 1];
      if (size == m) {
        for (std::size_t i = 0; i < size; ++i) coef[i] = dot(basis[i], v);
        set_column(size - 1, size);
        break;
      }
      vn = orthogonalize(v, size);
      set_column(size - 1, size);
      if (vn <= 1e-13 * std::max(Norm2(images[size - 1]), 1e-300)) {
        exhausted = true;  // the span is invariant
        break;
      }
      for (Complex& z : v) z /= vn;
    }

    const auto sz = static_cast<Eigen::Index>(size);
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(h.topLeftCorner(sz, sz));
    const Eigen::VectorXd& values = eig.eigenvalues();  // ascending
    theta = std::max(values(sz - 1), 0.0);

    const std::size_t kept = std::min(keep, size);
    for (std::size_t r = 0; r < kept; ++r) {
      const Eigen::Index col = sz - 1 - static_cast<Eigen::Index>(r);
      std::fill(next_basis[r].begin(), next_basis[r].end(), Complex(0.0));
      std::fill(next_images[r].begin(), next_images[r].end(), Complex(0.0));
      for (std::size_t j = 0; j < size; ++j) {
        const Complex s = eig.eigenvectors()(static_cast<Eigen::Index>(j), col);
        for (std::size_t l = 0; l < n; ++l) {
          next_basis[r][l] += s * basis[j][l];
          next_images[r][l] += s * images[j][l];
        }
      }
    }
    // Residual of the top Ritz pair.
    ComplexVec res_vec(n);
    for (std::size_t l = 0; l < n; ++l) {
      res_vec[l] = next_images[0][l] - values(sz - 1) * next_basis[0][l];
    }
    const double res = Norm2(res_vec);
    report.residual = theta > 0.0 ? res / theta : 0.0;
    // Inside a tight cluster the Ritz value settles long before the
    // residual does, so a stalled theta also counts.
    const bool stalled = previous_theta >= 0.0 &&
                         theta - previous_theta <= 1e-2 * tol * theta;
    // r_k <= 1, so theta >= 1 - near_one pins r_k^2 to [theta, 1].
    const bool pinned = theta >= 1.0 - options.near_one;
    if (res <= tol * theta || stalled || pinned || exhausted || size == n ||
        theta == 0.0) {
      report.converged = true;
      break;
    }
    previous_theta = theta;
    if (applies >= options.max_iter) break;

    h.setZero();
    for (std::size_t r = 0; r < kept; ++r) {
      basis[r] = next_basis[r];
      images[r] = next_images[r];
      const auto i = static_cast<Eigen::Index>(r);
      h(i, i) = values(sz - 1 - i);
    }
    size = kept;
    v = res_vec;
    vn = orthogonalize(v, size);
    if (vn == 0.0) {
      report.converged = true;
      break;
    }
    for (Complex& z : v) z /= vn;
  }
  report.iterations = applies;
  report.r_k = std::sqrt(theta);
  report.beta_k = ExponentFromNorm(report.r_k, k, alphabet.base());
  return report;
}

Alphabet CanonicalAlphabet(const Alphabet& alphabet) {
  const auto digits = alphabet.digits();
  const int lo = digits.front();
  const int hi = digits.back();
  std::vector<int> shifted, mirrored;
  for (int d : digits) shifted.push_back(d - lo);
  for (int d : digits) mirrored.push_back(hi - d);
  std::sort(mirrored.begin(), mirrored.end());
  return Alphabet::Create(alphabet.base(), std::min(shifted, mirrored));
}

BetaProfile ComputeBetaProfile(const Alphabet& alphabet, int k_max, double tol,
                               std::uint64_t seed,
                               const PowerOptions& options) {
  if (k_max < 1) {
    throw Error(ErrorCode::kOrderTooSmall, "k_max must be at least 1");
  }
  BetaProfile profile;
  profile.beta_lower = -std::numeric_limits<double>::infinity();
  for (int k = 1; k <= k_max; ++k) {
    const std::uint64_t k_seed = DeriveSeed(seed, static_cast<std::uint64_t>(k));
    profile.reports.push_back(options.method == SpectralMethod::kLanczos
                                  ? RkLanczos(alphabet, k, tol, k_seed, options)
                                  : RkPower(alphabet, k, tol, k_seed, options));
    profile.beta_lower = std::max(profile.beta_lower, profile.reports.back().beta_k);
  }
  return profile;
}

double BetaLower(const Alphabet& alphabet, int k_max, double tol,
                 std::uint64_t seed, const PowerOptions& options) {
  if (alphabet.IsTrivial()) {
    throw Error(ErrorCode::kTrivialAlphabet,
                "beta_lower needs 1 < A < M, got " + alphabet.ToString());
  }
  return ComputeBetaProfile(alphabet, k_max, tol, seed, options).beta_lower;
}

}  // namespace fupc
