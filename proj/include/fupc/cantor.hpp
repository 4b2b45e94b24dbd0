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

#ifndef FUPC_CANTOR_HPP_
#define FUPC_CANTOR_HPP_

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace fupc {

// Largest N = M^k accepted when materializing a Cantor set.
inline constexpr std::uint64_t kDefaultIndexCap = std::uint64_t{1} << 40;

// A base M >= 3 together with a set of distinct digits in [0, M), kept in
// ascending order so that equality and ordering are structural.
class Alphabet {
 public:
  // Throws Error{kBaseTooSmall, kEmptyAlphabet, kDigitOutOfRange,
  // kDuplicateDigit}.
  static Alphabet Create(int base, std::vector<int> digits);

  // Parses the text form "M:d0,d1,...", e.g. "3:0,2". Whitespace is not
  // accepted. Errors carry the offending character position.
  static Alphabet Parse(std::string_view text);

  int base() const noexcept { return base_; }
  std::span<const int> digits() const noexcept { return digits_; }
  int size() const noexcept { return static_cast<int>(digits_.size()); }
  bool Contains(int digit) const noexcept {
    return digit >= 0 && digit < base_ && mask_[static_cast<std::size_t>(digit)];
  }

  bool IsTrivial() const noexcept { return size() == 1 || size() == base_; }

  std::string ToString() const;

  friend bool operator==(const Alphabet& a, const Alphabet& b) {
    return a.base_ == b.base_ && a.digits_ == b.digits_;
  }
  friend std::strong_ordering operator<=>(const Alphabet& a,
                                          const Alphabet& b) {
    if (auto c = a.base_ <=> b.base_; c != 0) return c;
    return a.digits_ <=> b.digits_;
  }

 private:
  Alphabet(int base, std::vector<int> digits);

  int base_;
  std::vector<int> digits_;
  std::vector<bool> mask_;
};

// log A / log M; exactly 0 for A = 1 and exactly 1 for A = M.
double Dimension(const Alphabet& alphabet);

// M^k, or 0 when it would exceed `cap`.
std::uint64_t CheckedPower(int base, int exponent, std::uint64_t cap);

// The discrete Cantor set of order k: every integer in [0, M^k) whose base-M
// digits all belong to the alphabet. Indices are ascending; position p in
// `indices()` is the base-A number whose digits are alphabet positions.
class CantorSet {
 public:
  const Alphabet& alphabet() const noexcept { return alphabet_; }
  int order() const noexcept { return order_; }
  std::uint64_t n() const noexcept { return n_; }
  std::span<const std::uint64_t> indices() const noexcept { return indices_; }
  std::size_t size() const noexcept { return indices_.size(); }

  // Digit test in O(k). Throws Error{kIndexOutOfRange} unless 0 <= idx < N.
  bool Contains(std::int64_t idx) const;

 private:
  friend CantorSet BuildCantor(const Alphabet&, int, std::uint64_t);
  CantorSet(Alphabet alphabet, int order, std::uint64_t n,
            std::vector<std::uint64_t> indices)
      : alphabet_(std::move(alphabet)),
        order_(order),
        n_(n),
        indices_(std::move(indices)) {}

  Alphabet alphabet_;
  int order_;
  std::uint64_t n_;
  std::vector<std::uint64_t> indices_;
};

// Throws Error{kOrderTooSmall} for k < 1 and Error{kOrderTooLarge} when
// M^k exceeds `cap`.
CantorSet BuildCantor(const Alphabet& alphabet, int order,
                      std::uint64_t cap = kDefaultIndexCap);

}  // namespace fupc

#endif  // FUPC_CANTOR_HPP_
