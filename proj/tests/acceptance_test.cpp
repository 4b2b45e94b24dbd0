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

// Acceptance suite. Prints one PASS/FAIL line per criterion and exits
// nonzero if any criterion fails. Reference values are computed here from
// first principles (naive DFT, direct sums, brute-force enumeration).

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <numbers>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "fupc/alphabets.hpp"
#include "fupc/cantor.hpp"
#include "fupc/error.hpp"
#include "fupc/experiments.hpp"
#include "fupc/fourier.hpp"
#include "fupc/oqm.hpp"
#include "fupc/permutations.hpp"
#include "fupc/rng.hpp"
#include "fupc/spectral.hpp"

namespace fupc {
namespace {

constexpr double kPi = std::numbers::pi;

struct Outcome {
  bool passed = true;
  std::ostringstream detail;
  void Require(bool ok, const std::string& what) {
    if (!ok) {
      passed = false;
      detail << "[violated: " << what << "] ";
    }
  }
};

int Threads() {
  const unsigned n = std::thread::hardware_concurrency();
  return n == 0 ? 1 : static_cast<int>(n);
}

Complex Unit(double turns) { return std::polar(1.0, 2.0 * kPi * turns); }

// Unitary DFT straight from the definition, sign -1 in the exponent.
ComplexVec NaiveDft(const ComplexVec& u) {
  const std::size_t n = u.size();
  ComplexVec w(n), v(n);
  for (std::size_t j = 0; j < n; ++j) w[j] = Unit(-static_cast<double>(j) / static_cast<double>(n));
  for (std::size_t j = 0; j < n; ++j) {
    Complex s = 0.0;
    std::size_t idx = 0;  // j * l mod n
    for (std::size_t l = 0; l < n; ++l) {
      s += w[idx] * u[l];
      idx += j;
      if (idx >= n) idx -= n;
    }
    v[j] = s / std::sqrt(static_cast<double>(n));
  }
  return v;
}

std::vector<Alphabet> Nontrivial(int m) {
  std::vector<Alphabet> out;
  for (int a = 2; a < m; ++a) {
    for (Alphabet& x : Enumerate(m, a)) out.push_back(std::move(x));
  }
  return out;
}

std::vector<Alphabet> AllAlphabets(int m) {
  std::vector<Alphabet> out;
  for (int a = 1; a <= m; ++a) {
    for (Alphabet& x : Enumerate(m, a)) out.push_back(std::move(x));
  }
  return out;
}

Complex DirectExpSum(const Alphabet& x, int freq) {
  Complex s = 0.0;
  for (int d : x.digits()) s += Unit(static_cast<double>(d * freq % x.base()) / x.base());
  return s;
}

// 1. FFT against the definition.
void DftUnitarity(Outcome& o) {
  Rng rng(20260101);
  double worst_norm = 0.0, worst_entry = 0.0;
  for (int m : {3, 4, 5, 7}) {
    std::size_t n = 1;
    for (int k = 1; k <= 5; ++k) {
      n *= static_cast<std::size_t>(m);
      for (int v = 0; v < 20; ++v) {
        ComplexVec u(n);
        for (Complex& z : u) z = Complex(2.0 * rng.Uniform() - 1.0, 2.0 * rng.Uniform() - 1.0);
        const ComplexVec f = Dft(n, u);
        const ComplexVec g = NaiveDft(u);
        double nu = 0.0, nf = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
          nu += std::norm(u[i]);
          nf += std::norm(f[i]);
          worst_entry = std::max(worst_entry, std::abs(f[i] - g[i]));
        }
        worst_norm = std::max(worst_norm, std::abs(std::sqrt(nf / nu) - 1.0));
      }
    }
  }
  o.detail << "max |ratio-1|=" << worst_norm << " max naive dev=" << worst_entry;
  o.Require(worst_norm <= 1e-10, "norm ratio within 1e-10");
  o.Require(worst_entry <= 1e-10, "entries within 1e-10 of naive DFT");
}

// 2. Closed-form norms.
void ClosedForms(Outcome& o) {
  double single = 0.0, full = 0.0;
  for (int m = 3; m <= 12; ++m) {
    for (int d = 0; d < m; ++d) {
      single = std::max(single, std::abs(R1Dense(Alphabet::Create(m, {d})).r_k - 1.0 / std::sqrt(m)));
    }
    std::vector<int> all(static_cast<std::size_t>(m));
    for (int d = 0; d < m; ++d) all[static_cast<std::size_t>(d)] = d;
    const Alphabet x = Alphabet::Create(m, all);
    full = std::max(full, std::abs(R1Dense(x).r_k - 1.0));
    for (int k = 2; k <= 3 && std::pow(m, k) <= 2000; ++k) {
      full = std::max(full, std::abs(RkPower(x, k, 1e-13, 1).r_k - 1.0));
    }
  }
  const double r401 = R1Dense(Alphabet::Parse("4:0,1")).r_k;
  const double r302 = R1Dense(Alphabet::Parse("3:0,2")).r_k;
  o.detail << "singletons dev=" << single << " full dev=" << full << " r1(4:{0,1})=" << r401
           << " target 2^-1/2=" << 1.0 / std::sqrt(2.0) << " r1(3:{0,2})=" << r302 << " ";
  o.Require(single <= 1e-12, "r_1(M,{a}) = M^-1/2");
  o.Require(full <= 1e-12, "full alphabet r_k = 1");
  o.Require(std::abs(r401 - 1.0 / std::sqrt(2.0)) <= 1e-10, "r_1(4,{0,1}) = 2^-1/2");
  o.Require(std::abs(r302 - 1.0) <= 1e-10, "r_1(3,{0,2}) = 1");
}

// 3. N^{-(1-delta)/2} <= r_k <= min(1, N^{-(1/2-delta)}).
void Sandwich(Outcome& o) {
  double worst_low = -1.0, worst_high = -1.0;
  std::size_t cases = 0;
  for (int m = 3; m <= 8; ++m) {
    for (const Alphabet& x : Nontrivial(m)) {
      const double delta = std::log(x.size()) / std::log(m);
      for (int k = 1; k <= 3; ++k) {
        const double n = std::pow(m, k);
        const double r = RkLanczos(x, k, 1e-12, 17).r_k;
        worst_low = std::max(worst_low, std::pow(n, -(1.0 - delta) / 2.0) - r);
        worst_high = std::max(worst_high, r - std::min(1.0, std::pow(n, -(0.5 - delta))));
        ++cases;
      }
    }
  }
  o.detail << cases << " cases, max lower violation=" << worst_low
           << " max upper violation=" << worst_high;
  o.Require(worst_low <= 1e-9, "lower sandwich");
  o.Require(worst_high <= 1e-9, "upper sandwich");
}

// 4. r_{k1+k2} <= r_{k1} r_{k2}.
void Submultiplicativity(Outcome& o) {
  Rng rng(4242);
  double worst = -1.0;
  for (int m = 3; m <= 6; ++m) {
    for (int i = 0; i < 100; ++i) {
      const int a = 2 + static_cast<int>(rng.Below(static_cast<std::uint64_t>(m - 2)));
      const Alphabet x = AlphabetSpace(m, a).Sample(rng);
      double r[5];
      for (int k = 1; k <= 4; ++k) r[k] = RkLanczos(x, k, 1e-11, 3).r_k;
      for (int k1 = 1; k1 <= 2; ++k1) {
        for (int k2 = 1; k2 <= 2; ++k2) {
          worst = std::max(worst, r[k1 + k2] - r[k1] * r[k2] * (1.0 + 1e-9));
        }
      }
    }
  }
  o.detail << "400 alphabets, max r_{k1+k2} - r_k1 r_k2 (1+1e-9)=" << worst;
  o.Require(worst <= 0.0, "submultiplicativity");
}

// 5. Dense k = 1 against power iteration.
void DenseVsPower(Outcome& o) {
  double worst = 0.0;
  std::size_t count = 0;
  for (int m = 3; m <= 10; ++m) {
    for (const Alphabet& x : AllAlphabets(m)) {
      worst = std::max(worst, std::abs(R1Dense(x).r_k - RkPower(x, 1, 1e-12, 5).r_k));
      ++count;
    }
  }
  o.detail << count << " alphabets, max dev=" << worst;
  o.Require(worst <= 1e-8, "dense and power agree to 1e-8");
}

// 6. E exp_sum = 0 by enumeration; the mean is also summed directly here.
void ZeroExpectation(Outcome& o) {
  double worst_lib = 0.0, worst_direct = 0.0;
  for (int m = 3; m <= 12; ++m) {
    for (int a = 2; a < m; ++a) {
      const AlphabetSpace space(m, a);
      const std::vector<Alphabet> all = Enumerate(m, a);
      for (int f = 1; f < m; ++f) {
        const Estimate e = Expectation([f](const Alphabet& x) { return ExpSum(x, f); }, space,
                                       EvalMode::Exact(Threads()));
        worst_lib = std::max(worst_lib, std::abs(e.mean));
        Complex s = 0.0;
        for (const Alphabet& x : all) s += DirectExpSum(x, f);
        worst_direct = std::max(worst_direct, std::abs(s) / static_cast<double>(all.size()));
      }
    }
  }
  o.detail << "max |E| library=" << worst_lib << " direct=" << worst_direct;
  o.Require(worst_lib <= 1e-9, "library expectation vanishes");
  o.Require(worst_direct <= 1e-9, "direct expectation vanishes");
}

// Swap and all-pairs Lipschitz constant of values over the symmetric
// difference metric, by brute force.
double BruteLipschitz(const std::vector<Alphabet>& xs, const std::vector<Complex>& f) {
  double lip = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    for (std::size_t j = i + 1; j < xs.size(); ++j) {
      lip = std::max(lip, std::abs(f[i] - f[j]) / SymmetricDifference(xs[i], xs[j]));
    }
  }
  return lip;
}

// 7. Tails of exp_sum(., 1) and the good-set complement.
void Concentration(Outcome& o) {
  for (auto [m, a] : {std::pair{12, 4}, std::pair{14, 5}}) {
    const std::vector<Alphabet> xs = Enumerate(m, a);
    std::vector<Complex> f(xs.size());
    Complex mean = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      f[i] = DirectExpSum(xs[i], 1);
      mean += f[i];
    }
    mean /= static_cast<double>(xs.size());
    const double lip = BruteLipschitz(xs, f);
    const std::vector<double> grid = LinearGrid(0.0, 2.0 * a, 50);
    const TailReport lib = ConcentrationExperiment(m, a, 1, grid, EvalMode::Exact(Threads()));
    double worst = -1.0, worst_lib_dev = 0.0;
    for (std::size_t g = 0; g < grid.size(); ++g) {
      const double t = grid[g];
      std::size_t hits = 0;
      for (const Complex& z : f) hits += std::abs(z - mean) >= t;
      const double tail = static_cast<double>(hits) / static_cast<double>(xs.size());
      const double bound = 2.0 * std::exp(-t * t / (16.0 * a * lip * lip));
      worst = std::max(worst, tail - bound);
      worst_lib_dev = std::max(worst_lib_dev, std::abs(tail - lib.empirical_tail[g]));
    }
    o.detail << "(" << m << "," << a << ") Lip=" << lip << " max tail-bound=" << worst
             << " lib tail dev=" << worst_lib_dev << "; ";
    o.Require(worst <= 0.0, "tail <= 2exp(-t^2/(16 A Lip^2))");
    o.Require(worst_lib_dev == 0.0, "library tails match enumeration");

    // Good sets over a range of levels. The /64 form is asserted, /16 recorded.
    for (double level : {1.0, 1.5, 2.0, 3.0, 4.0}) {
      const double cut = level * std::sqrt(static_cast<double>(a));
      std::size_t bad = 0;
      std::vector<std::size_t> bad_freq(static_cast<std::size_t>(m), 0);
      for (const Alphabet& x : xs) {
        bool good = true;
        for (int q = 1; q < m; ++q) {
          if (std::abs(DirectExpSum(x, q)) > cut + 1e-12) {  // ties count as good
            good = false;
            ++bad_freq[static_cast<std::size_t>(q)];
          }
        }
        bad += !good;
      }
      const double n = static_cast<double>(xs.size());
      const double complement = static_cast<double>(bad) / n;
      double worst_freq = 0.0;
      for (int q = 1; q < m; ++q) {
        worst_freq = std::max(worst_freq, static_cast<double>(bad_freq[static_cast<std::size_t>(q)]) / n);
      }
      const double b64 = 2.0 * std::exp(-level * level / 64.0);
      const double b16 = 2.0 * std::exp(-level * level / 16.0);
      const GoodSetReport r = MeasureGoodSet(AlphabetSpace(m, a), level, EvalMode::Exact(Threads()));
      o.Require(complement <= b64, "good-set complement <= 2e^{-L^2/64}");
      o.Require(worst_freq <= b64, "per-frequency complement <= 2e^{-L^2/64}");
      o.Require(r.complement_measure == complement, "library complement matches enumeration");
      if (level == 1.0 || level == 4.0) {
        o.detail << "L=" << level << " complement=" << complement << " /64 bound=" << b64
                 << " /16 bound=" << b16 << (complement <= b16 ? " (/16 held)" : " (/16 failed)")
                 << "; ";
      }
    }
  }
}

// 8. r_1^2 <= max row sum of |Gram|, with the Gram matrix built here.
void SchurDomination(Outcome& o) {
  double worst = -1.0, worst_lib = 0.0;
  std::size_t count = 0;
  for (int m = 3; m <= 12; ++m) {
    for (const Alphabet& x : AllAlphabets(m)) {
      const auto d = x.digits();
      double schur = 0.0;
      for (int j : d) {
        double row = 0.0;
        for (int k : d) {
          Complex g = 0.0;
          for (int l : d) g += Unit(static_cast<double>(((j - k) * l % m + m) % m) / m);
          row += std::abs(g) / m;
        }
        schur = std::max(schur, row);
      }
      const double r1 = R1Dense(x).r_k;
      worst = std::max(worst, r1 * r1 - schur);
      worst_lib = std::max(worst_lib, std::abs(schur - SchurBound(x)));
      ++count;
    }
  }
  o.detail << count << " alphabets, max r1^2-schur=" << worst << " lib schur dev=" << worst_lib;
  o.Require(worst <= 1e-12, "r_1^2 <= schur_bound + 1e-12");
  o.Require(worst_lib <= 1e-12, "library schur bound matches direct sum");
}

// 9. Permutation space, lifting and the prefix-chain certificate.
void Permutations(Outcome& o) {
  for (auto [m, a] : {std::pair{5, 3}, std::pair{6, 3}}) {
    const std::vector<Permutation> points = EnumeratePermutations(m, a);
    std::map<Alphabet, int> fibers;
    for (const Permutation& p : points) ++fibers[Project(p)];
    int fact = 1;
    for (int i = 2; i <= a; ++i) fact *= i;
    bool equal = fibers.size() == Enumerate(m, a).size();
    for (const auto& [x, c] : fibers) equal = equal && c == fact;
    o.Require(equal, "fiber sizes equal A!");

    const AlphabetFunction f = [](const Alphabet& x) { return ExpSum(x, 1); };
    const LiftComparison c = LiftAndCompare(f, m, a);
    Complex direct = 0.0;
    for (const Permutation& p : points) direct += DirectExpSum(Project(p), 1);
    direct /= static_cast<double>(points.size());
    o.Require(std::abs(c.expectation_permutations - c.expectation_alphabets) <= 1e-12,
              "E^p(F o P) = E(F)");
    o.Require(std::abs(direct - c.expectation_permutations) <= 1e-12,
              "E^p(F o P) matches direct sum");
    o.Require(c.lipschitz_permutations <= c.lipschitz_alphabets + 1e-12,
              "Lip(F o P) <= Lip(F)");

    const PointMetric metric = [&points](std::size_t i, std::size_t j) {
      return static_cast<double>(PermutationDistance(points[i], points[j]));
    };
    PartitionChain chain = BuildPrefixChain(m, a);
    const double length = VerifyLengthCertificate(points.size(), metric, chain);
    o.Require(std::abs(length - 2.0 * std::sqrt(static_cast<double>(a))) <= 1e-12,
              "certificate length 2 sqrt(A)");
    SiblingPairing& p = chain.pairings.at(1).front();
    p.image.at(1) = p.image.at(0);
    bool rejected = false;
    try {
      VerifyLengthCertificate(points.size(), metric, chain);
    } catch (const CertificateViolation&) {
      rejected = true;
    }
    o.Require(rejected, "corrupted certificate rejected");
    o.detail << "(" << m << "," << a << ") fibers=" << fibers.size() << "x" << fact
             << " Lip=" << c.lipschitz_alphabets << " Lip_p=" << c.lipschitz_permutations
             << " length=" << length << "; ";
  }
}

// 10. Desk check of the probabilistic FUP statement at M = 64, A = 8.
void DeskCheck(Outcome& o) {
  const int m = 64, a = 8;
  const double eps = 0.25;
  EvalMode mode = EvalMode::MonteCarlo(10000, 20260);
  mode.threads = Threads();
  const FupcRecord r = FupcExperiment(m, a, eps, mode, 1);
  const double floor = std::max(0.0, 1.0 - 4.0 * m * std::exp(-std::pow(m, 4.0 * eps) / 64.0));
  o.detail << "delta=" << r.delta << " success_fraction=" << r.success_fraction << " ("
           << r.successes << "/" << r.count << ") theorem_floor=" << r.theorem_floor
           << " floor_vacuous=" << (r.floor_vacuous ? "true" : "false");
  o.Require(r.count == 10000, "10^4 samples");
  o.Require(std::abs(r.delta - 0.5) <= 1e-15, "delta = 1/2");
  o.Require(r.theorem_floor == floor, "floor computed exactly");
  o.Require(r.floor_vacuous == (floor == 0.0), "floor_vacuous flag");
  o.Require(r.success_fraction >= r.theorem_floor, "success_fraction >= theorem_floor");
}

// 11. Full enumeration M = 3..10.
void Figure1(Outcome& o) {
  const std::vector<CurvePoint> pts = Figure1Dataset(3, 10, 0, 1, Threads());
  double worst = -1.0;
  std::size_t above_red = 0;
  for (const CurvePoint& p : pts) {
    const double delta = std::log(p.a_card) / std::log(p.m);
    worst = std::max(worst, std::max(0.0, 0.5 - delta) - p.mean_beta_lower);
    above_red += p.mean_beta_lower >= RedLine(delta);
    std::uint64_t n = 1;
    for (int k = 0; k < p.k_max; ++k) n *= static_cast<std::uint64_t>(p.m);
    o.Require(n <= 100000, "N <= 1e5");
  }
  o.detail << pts.size() << " points, max shortfall below volume bound=" << worst << ", "
           << above_red << " points at or above the red line";
  o.Require(pts.size() == 36, "36 points");
  o.Require(worst <= 1e-6, "mean beta_lower >= max(0, 1/2 - delta) - 1e-6");
}

// 12. Open quantum maps with the identity cutoff.
void OpenQuantumMaps(Outcome& o) {
  double worst_norm = -1.0, worst_rho = -1.0, worst_layout = 0.0, worst_full = 0.0;
  struct Case {
    const char* alphabet;
    int k_lo, k_hi;
  };
  for (const Case& c : {Case{"3:0,2", 2, 4}, Case{"4:0,1", 2, 3}}) {
    const Alphabet x = Alphabet::Parse(c.alphabet);
    for (int k = c.k_lo; k <= c.k_hi; ++k) {
      const OpenQuantumMap b = OpenQuantumMap::Build(x, k);
      const double norm = OperatorNorm(b).norm;
      const double rho = SpectralRadius(b, 12, 1e-4, Threads()).rho;
      worst_norm = std::max(worst_norm, norm - 1.0);
      worst_rho = std::max(worst_rho, rho - norm);
      o.detail << c.alphabet << " k=" << k << " norm=" << norm << " rho=" << rho << "; ";
      if (x.base() != 3) continue;
      // diag(F_{N/3}, 0, F_{N/3}) with the unit cutoff.
      const std::size_t n = b.n(), blk = n / 3;
      const DenseMatrix d = b.MiddleFactor();
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
          Complex want = 0.0;
          if (i / blk == j / blk && i / blk != 1) {
            const std::size_t p = i % blk, q = j % blk;
            want = Unit(-static_cast<double>(p * q % blk) / blk) / std::sqrt(static_cast<double>(blk));
          }
          worst_layout = std::max(worst_layout, std::abs(d(i, j) - want));
        }
      }
    }
  }
  for (int k = 2; k <= 4; ++k) {
    const OpenQuantumMap b = OpenQuantumMap::Build(Alphabet::Parse("3:0,1,2"), k);
    worst_full = std::max(worst_full, std::abs(SpectralRadius(b, 12, 1e-4, Threads()).rho - 1.0));
  }
  o.detail << "layout dev=" << worst_layout << " full rho dev=" << worst_full;
  o.Require(worst_norm <= 1e-9, "||B_N|| <= 1 + 1e-9");
  o.Require(worst_rho <= 1e-6, "rho <= ||B_N|| + 1e-6");
  o.Require(worst_layout <= 1e-12, "M=3 block layout");
  o.Require(worst_full <= 1e-6, "full alphabet rho = 1");
}

}  // namespace
}  // namespace fupc

int main() {
  using fupc::Outcome;
  const std::vector<std::pair<const char*, std::function<void(Outcome&)>>> criteria = {
      {"dft_unitarity", fupc::DftUnitarity},
      {"closed_form_norms", fupc::ClosedForms},
      {"sandwich", fupc::Sandwich},
      {"submultiplicativity", fupc::Submultiplicativity},
      {"dense_matrix_free_agreement", fupc::DenseVsPower},
      {"zero_expectation", fupc::ZeroExpectation},
      {"concentration_tails", fupc::Concentration},
      {"schur_domination", fupc::SchurDomination},
      {"permutation_machinery", fupc::Permutations},
      {"fupc_desk_check", fupc::DeskCheck},
      {"figure1_dataset", fupc::Figure1},
      {"open_quantum_maps", fupc::OpenQuantumMaps},
  };
  int failures = 0;
  int index = 0;
  for (const auto& [name, run] : criteria) {
    ++index;
    Outcome o;
    o.detail.precision(10);
    const auto start = std::chrono::steady_clock::now();
    try {
      run(o);
    } catch (const std::exception& e) {
      o.passed = false;
      o.detail << "threw: " << e.what();
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    failures += !o.passed;
    std::printf("%s %2d %s (%.1f s): %s\n", o.passed ? "PASS" : "FAIL", index, name, secs,
                o.detail.str().c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures,
              criteria.size());
  return failures == 0 ? 0 : 1;
}
