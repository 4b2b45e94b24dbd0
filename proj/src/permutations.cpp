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

#include "fupc/permutations.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <unordered_map>
#include <utility>

#include "fupc/error.hpp"

namespace fupc {

Permutation Permutation::Create(int m, std::vector<int> values) {
  if (m < 3) {
    throw Error(ErrorCode::kBaseTooSmall,
                "base must be at least 3, got " + std::to_string(m));
  }
  if (values.empty()) {
    throw Error(ErrorCode::kEmptyAlphabet, "permutation has no values");
  }
  std::vector<bool> seen(static_cast<std::size_t>(m), false);
  for (int v : values) {
    if (v < 0 || v >= m) {
      throw Error(ErrorCode::kDigitOutOfRange,
                  "value " + std::to_string(v) + " outside [0, " +
                      std::to_string(m - 1) + "]");
    }
    if (seen[static_cast<std::size_t>(v)]) {
      throw Error(ErrorCode::kDuplicateDigit,
                  "value " + std::to_string(v) + " appears twice");
    }
    seen[static_cast<std::size_t>(v)] = true;
  }
  return Permutation(m, std::move(values));
}

int PermutationDistance(const Permutation& p1, const Permutation& p2) {
  if (p1.m() != p2.m() || p1.size() != p2.size()) {
    throw Error(ErrorCode::kShapeMismatch,
                "permutations live in different spaces");
  }
  int d = 0;
  for (int j = 0; j < p1.size(); ++j) {
    if (p1.values()[j] != p2.values()[j]) ++d;
  }
  return d;
}

Alphabet Project(const Permutation& p) {
  return Alphabet::Create(p.m(), p.values());
}

std::uint64_t PermutationCount(int m, int a, std::uint64_t cap) {
  if (m < 3) {
    throw Error(ErrorCode::kBaseTooSmall,
                "base must be at least 3, got " + std::to_string(m));
  }
  if (a < 1 || a > m) {
    throw Error(ErrorCode::kInvalidArgument,
                "need 1 <= A <= M, got A=" + std::to_string(a));
  }
  std::uint64_t count = 1;
  for (int j = 0; j < a; ++j) {
    count *= static_cast<std::uint64_t>(m - j);
    if (count > cap) {
      throw Error(ErrorCode::kEnumerationTooLarge,
                  "permutation space Pi(" + std::to_string(m) + "," +
                      std::to_string(a) + ") exceeds cap " +
                      std::to_string(cap));
    }
  }
  return count;
}

std::vector<Permutation> EnumeratePermutations(int m, int a,
                                               std::uint64_t cap) {
  const std::uint64_t count = PermutationCount(m, a, cap);
  std::vector<Permutation> out;
  out.reserve(count);
  std::vector<int> values(static_cast<std::size_t>(a));
  std::vector<bool> used(static_cast<std::size_t>(m), false);
  // Depth-first in increasing value order yields lexicographic order.
  auto recurse = [&](auto&& self, int pos) -> void {
    if (pos == a) {
      out.push_back(Permutation::Create(m, values));
      return;
    }
    for (int v = 0; v < m; ++v) {
      if (used[v]) continue;
      used[v] = true;
      values[pos] = v;
      self(self, pos + 1);
      used[v] = false;
    }
  };
  recurse(recurse, 0);
  return out;
}

LiftComparison LiftAndCompare(const AlphabetFunction& f, int m, int a,
                              std::uint64_t cap) {
  const AlphabetSpace space(m, a);
  const std::uint64_t alph_count = space.EnumerableCount(cap);
  const auto perms = EnumeratePermutations(m, a, cap);
  if (perms.size() > kDefaultAllPairsCap) {
    throw Error(ErrorCode::kEnumerationTooLarge,
                "all-pairs Lipschitz scan over " +
                    std::to_string(perms.size()) + " permutations exceeds cap " +
                    std::to_string(kDefaultAllPairsCap));
  }

  const std::vector<Complex> alph_values =
      EvaluateOnSpace(f, space, EvalMode::Exact());
  Complex alph_sum = 0.0;
  for (const Complex& v : alph_values) alph_sum += v;

  std::vector<Complex> perm_values;
  perm_values.reserve(perms.size());
  Complex perm_sum = 0.0;
  for (const auto& p : perms) {
    perm_values.push_back(f(Project(p)));
    perm_sum += perm_values.back();
  }

  LiftComparison out;
  out.expectation_alphabets = alph_sum / static_cast<double>(alph_count);
  out.expectation_permutations =
      perm_sum / static_cast<double>(perms.size());
  out.lipschitz_alphabets = LipschitzNormFromValues(
      alph_values, space, LipschitzMode::kAllPairs);
  double lip = 0.0;
  for (std::size_t i = 0; i < perms.size(); ++i) {
    for (std::size_t j = i + 1; j < perms.size(); ++j) {
      const double num = std::abs(perm_values[i] - perm_values[j]);
      if (num == 0.0) continue;
      lip = std::max(lip, num / PermutationDistance(perms[i], perms[j]));
    }
  }
  out.lipschitz_permutations = lip;
  out.exp_equal =
      std::abs(out.expectation_alphabets - out.expectation_permutations) <=
      1e-12;
  out.lip_contracts = lip <= out.lipschitz_alphabets + 1e-12;
  return out;
}

namespace {

[[noreturn]] void Violation(std::size_t level, std::vector<std::size_t> blocks,
                            std::size_t witness, const std::string& why) {
  std::string msg = "certificate violation at level " + std::to_string(level);
  if (!blocks.empty()) {
    msg += ", blocks";
    for (std::size_t b : blocks) msg += " " + std::to_string(b);
  }
  if (witness != CertificateViolation::npos) {
    msg += ", point " + std::to_string(witness);
  }
  msg += ": " + why;
  throw CertificateViolation(level, std::move(blocks), witness, msg);
}

constexpr double kDisplacementSlack = 1e-12;

}  // namespace

double VerifyLengthCertificate(std::size_t point_count,
                               const PointMetric& metric,
                               const PartitionChain& chain) {
  constexpr std::size_t kNone = CertificateViolation::npos;
  if (chain.point_count != point_count) {
    Violation(0, {}, kNone,
              "chain covers " + std::to_string(chain.point_count) +
                  " points, space has " + std::to_string(point_count));
  }
  const std::size_t n_levels = chain.levels.size();
  if (n_levels == 0) Violation(0, {}, kNone, "no levels");
  if (chain.step_bounds.size() + 1 != n_levels ||
      chain.pairings.size() + 1 != n_levels) {
    Violation(0, {}, kNone, "step bounds or pairings do not match level count");
  }
  if (chain.levels[0].size() != 1) {
    Violation(0, {}, kNone, "level 0 must be a single block");
  }

  std::vector<std::size_t> prev_owner;
  std::vector<std::size_t> owner(point_count);
  for (std::size_t k = 0; k < n_levels; ++k) {
    const auto& blocks = chain.levels[k];
    std::fill(owner.begin(), owner.end(), kNone);
    for (std::size_t b = 0; b < blocks.size(); ++b) {
      if (blocks[b].empty()) Violation(k, {b}, kNone, "empty block");
      for (std::size_t x : blocks[b]) {
        if (x >= point_count) Violation(k, {b}, x, "point out of range");
        if (owner[x] != kNone) {
          Violation(k, {owner[x], b}, x, "point lies in two blocks");
        }
        owner[x] = b;
      }
    }
    for (std::size_t x = 0; x < point_count; ++x) {
      if (owner[x] == kNone) Violation(k, {}, x, "point not covered");
    }

    if (k > 0) {
      // Refinement and parent lookup.
      std::vector<std::size_t> parent(blocks.size());
      for (std::size_t b = 0; b < blocks.size(); ++b) {
        parent[b] = prev_owner[blocks[b][0]];
        for (std::size_t x : blocks[b]) {
          if (prev_owner[x] != parent[b]) {
            Violation(k, {b}, x, "block straddles two parent blocks");
          }
        }
      }

      const double a_k = chain.step_bounds[k - 1];
      if (!(a_k >= 0.0) || !std::isfinite(a_k)) {
        Violation(k, {}, kNone, "step bound must be finite and non-negative");
      }
      std::map<std::pair<std::size_t, std::size_t>, const SiblingPairing*>
          by_pair;
      std::vector<char> hit(point_count, 0);
      for (const auto& pairing : chain.pairings[k - 1]) {
        const std::size_t p = pairing.from_block;
        const std::size_t q = pairing.to_block;
        if (p >= blocks.size() || q >= blocks.size() || p >= q) {
          Violation(k, {p, q}, kNone, "pairing names invalid blocks");
        }
        if (parent[p] != parent[q]) {
          Violation(k, {p, q}, kNone, "paired blocks are not siblings");
        }
        if (!by_pair.emplace(std::make_pair(p, q), &pairing).second) {
          Violation(k, {p, q}, kNone, "duplicate pairing");
        }
        const auto& from = blocks[p];
        if (pairing.image.size() != from.size() ||
            blocks[q].size() != from.size()) {
          Violation(k, {p, q}, kNone, "pairing is not a bijection (sizes)");
        }
        for (std::size_t i = 0; i < from.size(); ++i) {
          const std::size_t y = pairing.image[i];
          if (y >= point_count || owner[y] != q) {
            Violation(k, {p, q}, from[i], "image leaves the target block");
          }
          if (hit[y]) {
            Violation(k, {p, q}, y, "pairing is not injective");
          }
          hit[y] = 1;
          const double d = metric(from[i], y);
          if (d > a_k + kDisplacementSlack) {
            Violation(k, {p, q}, from[i],
                      "displacement " + std::to_string(d) +
                          " exceeds step bound " + std::to_string(a_k));
          }
        }
        for (std::size_t y : pairing.image) hit[y] = 0;
      }

      // Every sibling pair must carry a pairing.
      std::map<std::size_t, std::vector<std::size_t>> children;
      for (std::size_t b = 0; b < blocks.size(); ++b) {
        children[parent[b]].push_back(b);
      }
      for (const auto& [par, kids] : children) {
        for (std::size_t i = 0; i < kids.size(); ++i) {
          for (std::size_t j = i + 1; j < kids.size(); ++j) {
            if (!by_pair.count({kids[i], kids[j]})) {
              Violation(k, {kids[i], kids[j]}, kNone,
                        "sibling blocks have no recorded pairing");
            }
          }
        }
      }
    }
    prev_owner = owner;
  }

  for (std::size_t b = 0; b < chain.levels.back().size(); ++b) {
    if (chain.levels.back()[b].size() != 1) {
      Violation(n_levels - 1, {b}, chain.levels.back()[b][0],
                "last level is not all singletons");
    }
  }

  double sq = 0.0;
  for (double a_k : chain.step_bounds) sq += a_k * a_k;
  return std::sqrt(sq);
}

PartitionChain BuildPrefixChain(int m, int a, std::uint64_t cap) {
  const auto perms = EnumeratePermutations(m, a, cap);
  const std::size_t n = perms.size();

  auto key = [m](const std::vector<int>& v) {
    std::uint64_t k = 0;
    for (auto it = v.rbegin(); it != v.rend(); ++it) {
      k = k * static_cast<std::uint64_t>(m) + static_cast<std::uint64_t>(*it);
    }
    return k;
  };
  std::unordered_map<std::uint64_t, std::size_t> rank_of;
  rank_of.reserve(n);
  for (std::size_t i = 0; i < n; ++i) rank_of.emplace(key(perms[i].values()), i);

  PartitionChain chain;
  chain.space_id = "Pi(" + std::to_string(m) + "," + std::to_string(a) + ")";
  chain.point_count = n;
  chain.levels.resize(static_cast<std::size_t>(a) + 1);
  chain.levels[0].push_back({});
  for (std::size_t i = 0; i < n; ++i) chain.levels[0][0].push_back(i);

  // Lexicographic order keeps each prefix class contiguous.
  std::vector<std::size_t> prev_block(n, 0);
  for (int k = 1; k <= a; ++k) {
    auto& blocks = chain.levels[static_cast<std::size_t>(k)];
    std::vector<std::size_t> block_of(n);
    std::vector<std::size_t> parent;
    std::vector<int> last_value;
    for (std::size_t i = 0; i < n; ++i) {
      const bool fresh = i == 0 || prev_block[i] != prev_block[i - 1] ||
                         perms[i].values()[k - 1] != perms[i - 1].values()[k - 1];
      if (fresh) {
        blocks.push_back({});
        parent.push_back(prev_block[i]);
        last_value.push_back(perms[i].values()[k - 1]);
      }
      blocks.back().push_back(i);
      block_of[i] = blocks.size() - 1;
    }

    std::vector<SiblingPairing> pairings;
    std::size_t start = 0;
    while (start < blocks.size()) {
      std::size_t stop = start;
      while (stop < blocks.size() && parent[stop] == parent[start]) ++stop;
      for (std::size_t p = start; p < stop; ++p) {
        for (std::size_t q = p + 1; q < stop; ++q) {
          const int r = last_value[p];
          const int s = last_value[q];
          SiblingPairing pairing{p, q, {}};
          pairing.image.reserve(blocks[p].size());
          for (std::size_t x : blocks[p]) {
            std::vector<int> v = perms[x].values();
            for (int& value : v) {
              if (value == r) {
                value = s;
              } else if (value == s) {
                value = r;
              }
            }
            pairing.image.push_back(rank_of.at(key(v)));
          }
          pairings.push_back(std::move(pairing));
        }
      }
      start = stop;
    }
    chain.pairings.push_back(std::move(pairings));
    chain.step_bounds.push_back(2.0);
    prev_block = std::move(block_of);
  }
  return chain;
}

PartitionChain BuildTrivialChain(std::size_t point_count,
                                 const PointMetric& metric) {
  if (point_count == 0) {
    throw Error(ErrorCode::kInvalidArgument, "metric space has no points");
  }
  PartitionChain chain;
  chain.space_id = "trivial";
  chain.point_count = point_count;
  chain.levels.resize(2);
  chain.levels[0].push_back({});
  double diameter = 0.0;
  std::vector<SiblingPairing> pairings;
  for (std::size_t i = 0; i < point_count; ++i) {
    chain.levels[0][0].push_back(i);
    chain.levels[1].push_back({i});
    for (std::size_t j = i + 1; j < point_count; ++j) {
      diameter = std::max(diameter, metric(i, j));
      pairings.push_back(SiblingPairing{i, j, {j}});
    }
  }
  chain.step_bounds.push_back(diameter);
  chain.pairings.push_back(std::move(pairings));
  return chain;
}

nlohmann::json ChainToJson(const PartitionChain& chain) {
  nlohmann::json doc;
  doc["space"] = chain.space_id;
  doc["points"] = chain.point_count;
  doc["levels"] = chain.levels;
  doc["step_bounds"] = chain.step_bounds;
  nlohmann::json pairings = nlohmann::json::array();
  for (const auto& level : chain.pairings) {
    nlohmann::json row = nlohmann::json::array();
    for (const auto& p : level) {
      row.push_back(
          {{"from", p.from_block}, {"to", p.to_block}, {"image", p.image}});
    }
    pairings.push_back(std::move(row));
  }
  doc["pairings"] = std::move(pairings);
  return doc;
}

PartitionChain ChainFromJson(const nlohmann::json& doc) {
  try {
    PartitionChain chain;
    chain.space_id = doc.at("space").get<std::string>();
    chain.point_count = doc.at("points").get<std::size_t>();
    doc.at("levels").get_to(chain.levels);
    doc.at("step_bounds").get_to(chain.step_bounds);
    for (const auto& row : doc.at("pairings")) {
      std::vector<SiblingPairing> level;
      for (const auto& p : row) {
        level.push_back(SiblingPairing{p.at("from").get<std::size_t>(),
                                       p.at("to").get<std::size_t>(),
                                       p.at("image").get<std::vector<std::size_t>>()});
      }
      chain.pairings.push_back(std::move(level));
    }
    return chain;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kParseError,
                std::string("malformed partition chain: ") + e.what());
  }
}

double MetricSpaceTailBound(double length, double lip, double t) {
  if (!(length > 0.0) || !(lip > 0.0)) {
    throw Error(ErrorCode::kNonpositiveInput,
                "length and Lipschitz constant must be positive");
  }
  return std::min(1.0, 2.0 * std::exp(-t * t / (4.0 * length * length * lip * lip)));
}

}  // namespace fupc
