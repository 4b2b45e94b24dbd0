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


#include "fupc/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numbers>

#include "fupc/error.hpp"
#include "fupc/permutations.hpp"
#include "fupc/rng.hpp"

namespace fupc {

namespace {

struct Scale {
  bool quick;
  int pick(int quick_value, int full_value) const { return quick ? quick_value : full_value; }
};

std::string Worst(const char* label, double value) {
  return std::string(label) + "=" + FormatDouble(value);
}

ComplexVec NaiveDft(const ComplexVec& u) {
  const std::size_t n = u.size();
  ComplexVec v(n);
  for (std::size_t j = 0; j < n; ++j) {
    Complex s = 0.0;
    for (std::size_t l = 0; l < n; ++l) {
      s += std::polar(1.0, -2.0 * std::numbers::pi * static_cast<double>((j * l) % n) / n) * u[l];
    }
    v[j] = s / std::sqrt(static_cast<double>(n));
  }
  return v;
}

// Every nontrivial alphabet of base m.
std::vector<Alphabet> Nontrivial(int m) {
  std::vector<Alphabet> out;
  for (int a = 2; a < m; ++a) {
    for (Alphabet& x : Enumerate(m, a)) out.push_back(std::move(x));
  }
  return out;
}

CheckResult FftCheck(const Scale& s, std::uint64_t seed) {
  Rng rng(seed);
  double worst_norm = 0.0, worst_entry = 0.0;
  const int k_max = s.pick(3, 5);
  const int vectors = s.pick(3, 20);
  for (int m : {3, 4, 5, 7}) {
    std::size_t n = 1;
    for (int k = 1; k <= k_max; ++k) {
      n *= static_cast<std::size_t>(m);
      for (int v = 0; v < vectors; ++v) {
        ComplexVec u(n);
        for (Complex& z : u) z = Complex(2.0 * rng.Uniform() - 1.0, 2.0 * rng.Uniform() - 1.0);
        const ComplexVec f = Dft(n, u);
        double nu = 0.0, nf = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
          nu += std::norm(u[i]);
          nf += std::norm(f[i]);
        }
        worst_norm = std::max(worst_norm, std::abs(std::sqrt(nf / nu) - 1.0));
        if (n <= 3125 && v < 2) {
          const ComplexVec g = NaiveDft(u);
          for (std::size_t i = 0; i < n; ++i) worst_entry = std::max(worst_entry, std::abs(f[i] - g[i]));
        }
      }
    }
  }
  return {"fft_unitarity", worst_norm <= 1e-10 && worst_entry <= 1e-10,
          Worst("norm_dev", worst_norm) + " " + Worst("naive_dev", worst_entry)};
}

CheckResult ClosedForms(const Scale& s) {
  double worst = 0.0;
  for (int m = 3; m <= s.pick(8, 12); ++m) {
    for (int d = 0; d < m; ++d) {
      worst = std::max(worst, std::abs(R1Dense(Alphabet::Create(m, {d})).r_k - 1.0 / std::sqrt(m)));
    }
    std::vector<int> all(static_cast<std::size_t>(m));
    for (int d = 0; d < m; ++d) all[static_cast<std::size_t>(d)] = d;
    const Alphabet full = Alphabet::Create(m, all);
    for (int k = 1; k <= 2; ++k) worst = std::max(worst, std::abs(RkPower(full, k, 1e-12, 1).r_k - 1.0));
  }
  worst = std::max(worst, std::abs(R1Dense(Alphabet::Parse("3:0,2")).r_k - 1.0));
  const double r401 = R1Dense(Alphabet::Parse("4:0,1")).r_k;
  const double dev401 = std::abs(r401 - std::cos(std::numbers::pi / 8.0));
  return {"closed_forms", worst <= 1e-10 && dev401 <= 1e-12,
          Worst("max_dev", worst) + " " + Worst("r1(4:0,1)", r401)};
}

CheckResult GramAndSchur(const Scale& s) {
  double worst_diag = 0.0, min_eig = 0.0, worst_schur = -1.0;
  for (int m = 3; m <= s.pick(7, 12); ++m) {
    for (int a = 1; a <= m; ++a) {
      for (const Alphabet& x : Enumerate(m, a)) {
        const GramMatrix g = BuildGramMatrix(x);
        for (std::size_t i = 0; i < g.entries.dim; ++i) {
          worst_diag = std::max(worst_diag, std::abs(g.entries(i, i) - static_cast<double>(a) / m));
        }
        const HermitianEigen e = JacobiEigen(g.entries);
        min_eig = std::min(min_eig, e.values.back());
        worst_schur = std::max(worst_schur, e.values.front() - SchurBound(x));
      }
    }
  }
  return {"gram_psd_schur", worst_diag <= 1e-12 && min_eig >= -1e-10 && worst_schur <= 1e-12,
          Worst("diag_dev", worst_diag) + " " + Worst("min_eig", min_eig) + " " +
              Worst("r1sq_minus_schur", worst_schur)};
}

CheckResult Sandwich(const Scale& s, std::uint64_t seed) {
  double worst = -1.0;
  for (int m = 3; m <= s.pick(5, 6); ++m) {
    for (const Alphabet& x : Nontrivial(m)) {
      const double delta = Dimension(x);
      for (int k = 1; k <= s.pick(2, 3); ++k) {
        const double n = std::pow(m, k);
        const double r = RkPower(x, k, 1e-12, DeriveSeed(seed, static_cast<std::uint64_t>(k))).r_k;
        worst = std::max(worst, std::pow(n, -(1.0 - delta) / 2.0) - r);
        worst = std::max(worst, r - std::min(1.0, std::pow(n, -(0.5 - delta))));
      }
    }
  }
  return {"sandwich", worst <= 1e-9, Worst("max_violation", worst)};
}

CheckResult Submultiplicative(const Scale& s, std::uint64_t seed) {
  double worst = 0.0;
  Rng rng(seed);
  for (int m = 3; m <= 6; ++m) {
    for (int i = 0; i < s.pick(10, 40); ++i) {
      const int a = 2 + static_cast<int>(rng.Below(static_cast<std::uint64_t>(m - 2)));
      const Alphabet x = AlphabetSpace(m, a).Sample(rng);
      double r[5];
      for (int k = 1; k <= 4; ++k) r[k] = RkLanczos(x, k, 1e-12, 3).r_k;
      for (int k1 = 1; k1 <= 2; ++k1) {
        for (int k2 = 1; k2 <= 2; ++k2) {
          worst = std::max(worst, r[k1 + k2] / (r[k1] * r[k2]) - 1.0);
        }
      }
    }
  }
  return {"submultiplicativity", worst <= 1e-9, Worst("max_ratio_minus_1", worst)};
}

CheckResult DenseVsPower(const Scale& s) {
  double worst = 0.0;
  for (int m = 3; m <= s.pick(6, 10); ++m) {
    for (int a = 1; a <= m; ++a) {
      for (const Alphabet& x : Enumerate(m, a)) {
        worst = std::max(worst, std::abs(R1Dense(x).r_k - RkPower(x, 1, 1e-12, 5).r_k));
      }
    }
  }
  return {"dense_vs_power", worst <= 1e-8, Worst("max_dev", worst)};
}

CheckResult ZeroExpectation(const Scale& s, int threads) {
  double worst = 0.0;
  for (int m = 3; m <= s.pick(8, 12); ++m) {
    for (int a = 2; a < m; ++a) {
      const AlphabetSpace space(m, a);
      for (int f = 1; f < m; ++f) {
        const Estimate e = Expectation([f](const Alphabet& x) { return ExpSum(x, f); }, space,
                                       EvalMode::Exact(threads));
        worst = std::max(worst, std::abs(e.mean));
      }
    }
  }
  return {"zero_expectation", worst <= 1e-9, Worst("max_abs_mean", worst)};
}

CheckResult Concentration(const Scale& s, int threads) {
  const int m = s.pick(10, 12), a = s.pick(3, 4);
  const TailReport r =
      ConcentrationExperiment(m, a, 1, LinearGrid(0.0, 2.0 * a, 50), EvalMode::Exact(threads));
  double worst = -1.0;
  bool monotone = true;
  for (std::size_t i = 0; i < r.t_grid.size(); ++i) {
    worst = std::max(worst, r.empirical_tail[i] - r.bound[i]);
    if (i > 0 && r.empirical_tail[i] > r.empirical_tail[i - 1]) monotone = false;
  }
  return {"concentration", worst <= 0.0 && monotone,
          "M=" + std::to_string(m) + " A=" + std::to_string(a) + " " +
              Worst("max_tail_minus_bound", worst)};
}

CheckResult GoodSet(const Scale& s, int threads) {
  const int m = s.pick(10, 12), a = s.pick(3, 4);
  const GoodSetReport r = MeasureGoodSet(AlphabetSpace(m, a), 4.0, EvalMode::Exact(threads));
  return {"good_set", r.holds_64,
          Worst("complement", r.complement_measure) + " " + Worst("bound_64", r.union_bound_64)};
}

CheckResult PermutationLift(const Scale& s) {
  bool ok = true;
  std::string detail;
  const std::vector<std::pair<int, int>> spaces =
      s.quick ? std::vector<std::pair<int, int>>{{5, 3}} : std::vector<std::pair<int, int>>{{5, 3}, {6, 3}};
  for (const auto& [m, a] : spaces) {
    // Fibers of the projection all have A! elements.
    std::map<Alphabet, int> fibers;
    for (const Permutation& p : EnumeratePermutations(m, a)) ++fibers[Project(p)];
    int fact = 1;
    for (int i = 2; i <= a; ++i) fact *= i;
    for (const auto& [x, count] : fibers) ok = ok && count == fact;
    ok = ok && fibers.size() == Enumerate(m, a).size();
    for (int f = 1; f < m; ++f) {
      const LiftComparison c = LiftAndCompare([f](const Alphabet& x) { return ExpSum(x, f); }, m, a);
      // d(P p1, P p2) <= 2 d^p(p1, p2), so lifting at most doubles Lip.
      ok = ok && c.exp_equal && c.lipschitz_permutations <= 2.0 * c.lipschitz_alphabets + 1e-12;
    }
    detail += "(" + std::to_string(m) + "," + std::to_string(a) + ") ";
  }
  return {"permutation_lift", ok, detail + "fibers, expectations, Lip(f o P) <= 2 Lip(f)"};
}

CheckResult PrefixChain(const Scale& s) {
  double worst = 0.0;
  const std::vector<std::pair<int, int>> spaces =
      s.quick ? std::vector<std::pair<int, int>>{{5, 3}, {4, 2}}
              : std::vector<std::pair<int, int>>{{5, 3}, {6, 3}, {4, 4}, {7, 2}};
  bool rejected = false;
  for (const auto& [m, a] : spaces) {
    const std::vector<Permutation> points = EnumeratePermutations(m, a);
    const PointMetric metric = [&points](std::size_t i, std::size_t j) {
      return static_cast<double>(PermutationDistance(points[i], points[j]));
    };
    PartitionChain chain = BuildPrefixChain(m, a);
    const double length = VerifyLengthCertificate(points.size(), metric, chain);
    worst = std::max(worst, std::abs(length - 2.0 * std::sqrt(a)));
    if (m == 5 && a == 3) {
      // Breaking injectivity of one pairing must be caught.
      SiblingPairing& p = chain.pairings.at(1).front();
      p.image.at(1) = p.image.at(0);
      try {
        VerifyLengthCertificate(points.size(), metric, chain);
      } catch (const CertificateViolation&) {
        rejected = true;
      }
    }
  }
  return {"prefix_chain", worst <= 1e-12 && rejected,
          Worst("max_length_dev", worst) + (rejected ? " corrupted chain rejected" : " corrupted chain accepted")};
}

CheckResult Oqm(const Scale& s, int threads) {
  double worst_norm = 0.0, worst_rho = -1.0, worst_full = 0.0;
  struct Case {
    const char* alphabet;
    int k_hi;
  };
  for (const Case& c : {Case{"3:0,2", s.pick(3, 4)}, Case{"4:0,1", 3}}) {
    for (int k = 2; k <= c.k_hi; ++k) {
      const OpenQuantumMap b = OpenQuantumMap::Build(Alphabet::Parse(c.alphabet), k);
      const double norm = OperatorNorm(b).norm;
      const double rho = SpectralRadius(b, 12, 1e-4, threads).rho;
      worst_norm = std::max(worst_norm, norm - 1.0);
      worst_rho = std::max(worst_rho, rho - norm);
    }
  }
  for (int k = 2; k <= 3; ++k) {
    const OpenQuantumMap b = OpenQuantumMap::Build(Alphabet::Parse("3:0,1,2"), k);
    worst_full = std::max(worst_full, std::abs(SpectralRadius(b, 12, 1e-4, threads).rho - 1.0));
  }
  return {"oqm", worst_norm <= 1e-9 && worst_rho <= 1e-6 && worst_full <= 1e-6,
          Worst("norm_minus_1", worst_norm) + " " + Worst("rho_minus_norm", worst_rho) + " " +
              Worst("full_rho_dev", worst_full)};
}

CheckResult CurveDomination(const Scale& s, std::uint64_t seed, int threads) {
  const std::vector<CurvePoint> points =
      Figure1Dataset(3, s.pick(5, 7), s.pick(2, 0), seed, threads);
  double worst = -1.0;
  for (const CurvePoint& p : points) worst = std::max(worst, p.volume_bound - p.mean_beta_lower);
  return {"curve_domination", worst <= 1e-6,
          std::to_string(points.size()) + " points " + Worst("max_shortfall", worst)};
}

}  // namespace

std::vector<CheckResult> RunInvariantSuite(const VerifyOptions& options) {
  const Scale s{options.quick};
  const int t = options.threads;
  const std::uint64_t seed = options.seed;
  const std::vector<std::pair<std::string, std::function<CheckResult()>>> checks = {
      {"fft_unitarity", [&] { return FftCheck(s, seed); }},
      {"closed_forms", [&] { return ClosedForms(s); }},
      {"gram_psd_schur", [&] { return GramAndSchur(s); }},
      {"sandwich", [&] { return Sandwich(s, seed); }},
      {"submultiplicativity", [&] { return Submultiplicative(s, seed); }},
      {"dense_vs_power", [&] { return DenseVsPower(s); }},
      {"zero_expectation", [&] { return ZeroExpectation(s, t); }},
      {"concentration", [&] { return Concentration(s, t); }},
      {"good_set", [&] { return GoodSet(s, t); }},
      {"permutation_lift", [&] { return PermutationLift(s); }},
      {"prefix_chain", [&] { return PrefixChain(s); }},
      {"oqm", [&] { return Oqm(s, t); }},
      {"curve_domination", [&] { return CurveDomination(s, seed, t); }},
  };
  std::vector<CheckResult> out;
  for (const auto& [name, run] : checks) {
    try {
      out.push_back(run());
    } catch (const std::exception& e) {
      out.push_back({name, false, std::string("threw: ") + e.what()});
    }
  }
  return out;
}

Table VerifyTable(const std::vector<CheckResult>& results) {
  Table t{"verify", {"check", "passed", "detail"}, {}};
  for (const CheckResult& r : results) t.AddRow({r.name, r.passed, r.detail});
  return t;
}

}  // namespace fupc
