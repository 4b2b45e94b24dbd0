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

#include "fupc/cantor.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>

#include "fupc/error.hpp"

namespace fupc {

Alphabet::Alphabet(int base, std::vector<int> digits)
    : base_(base), digits_(std::move(digits)), mask_(base, false) {
  for (int d : digits_) mask_[static_cast<std::size_t>(d)] = true;
}

Alphabet Alphabet::Create(int base, std::vector<int> digits) {
  if (base < 3) {
    throw Error(ErrorCode::kBaseTooSmall,
                "base must be at least 3, got " + std::to_string(base));
  }
  if (digits.empty()) {
    throw Error(ErrorCode::kEmptyAlphabet, "alphabet has no digits");
  }
  for (int d : digits) {
    if (d < 0 || d >= base) {
      throw Error(ErrorCode::kDigitOutOfRange,
                  "digit " + std::to_string(d) + " outside [0, " +
                      std::to_string(base - 1) + "]");
    }
  }
  std::sort(digits.begin(), digits.end());
  auto dup = std::adjacent_find(digits.begin(), digits.end());
  if (dup != digits.end()) {
    throw Error(ErrorCode::kDuplicateDigit,
                "digit " + std::to_string(*dup) + " appears twice");
  }
  return Alphabet(base, std::move(digits));
}

namespace {

[[noreturn]] void ParseFail(std::string_view text, std::size_t pos,
                            const std::string& why) {
  throw Error(ErrorCode::kParseError,
              "cannot parse alphabet \"" + std::string(text) +
                  "\" at position " + std::to_string(pos) + ": " + why);
}

// Reads a non-negative decimal integer starting at `pos`.
int ReadNumber(std::string_view text, std::size_t& pos) {
  int value = 0;
  const char* first = text.data() + pos;
  const char* last = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec == std::errc::result_out_of_range) {
    ParseFail(text, pos, "number out of range");
  }
  if (ec != std::errc() || ptr == first || *first == '-' || *first == '+') {
    ParseFail(text, pos, "expected a digit");
  }
  pos += static_cast<std::size_t>(ptr - first);
  return value;
}

}  // namespace

Alphabet Alphabet::Parse(std::string_view text) {
  std::size_t pos = 0;
  if (text.empty()) ParseFail(text, 0, "empty input");
  int base = ReadNumber(text, pos);
  if (pos >= text.size() || text[pos] != ':') {
    ParseFail(text, pos, "expected ':' after base");
  }
  ++pos;
  std::vector<int> digits;
  while (true) {
    digits.push_back(ReadNumber(text, pos));
    if (pos == text.size()) break;
    if (text[pos] != ',') ParseFail(text, pos, "expected ',' or end of input");
    ++pos;
  }
  return Create(base, std::move(digits));
}

std::string Alphabet::ToString() const {
  std::string out = std::to_string(base_) + ":";
  for (std::size_t i = 0; i < digits_.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(digits_[i]);
  }
  return out;
}

double Dimension(const Alphabet& alphabet) {
  if (alphabet.size() == 1) return 0.0;
  if (alphabet.size() == alphabet.base()) return 1.0;
  return std::log(static_cast<double>(alphabet.size())) /
         std::log(static_cast<double>(alphabet.base()));
}

std::uint64_t CheckedPower(int base, int exponent, std::uint64_t cap) {
  std::uint64_t value = 1;
  const auto b = static_cast<std::uint64_t>(base);
  for (int i = 0; i < exponent; ++i) {
    if (value > cap / b) return 0;
    value *= b;
  }
  return value;
}

bool CantorSet::Contains(std::int64_t idx) const {
  if (idx < 0 || static_cast<std::uint64_t>(idx) >= n_) {
    throw Error(ErrorCode::kIndexOutOfRange,
                "index " + std::to_string(idx) + " outside [0, " +
                    std::to_string(n_) + ")");
  }
  auto rest = static_cast<std::uint64_t>(idx);
  const auto m = static_cast<std::uint64_t>(alphabet_.base());
  for (int j = 0; j < order_; ++j) {
    if (!alphabet_.Contains(static_cast<int>(rest % m))) return false;
    rest /= m;
  }
  return true;
}

CantorSet BuildCantor(const Alphabet& alphabet, int order, std::uint64_t cap) {
  if (order < 1) {
    throw Error(ErrorCode::kOrderTooSmall,
                "order must be at least 1, got " + std::to_string(order));
  }
  const std::uint64_t n = CheckedPower(alphabet.base(), order, cap);
  if (n == 0) {
    throw Error(ErrorCode::kOrderTooLarge,
                std::to_string(alphabet.base()) + "^" + std::to_string(order) +
                    " exceeds the index cap " + std::to_string(cap));
  }
  // Build level by level: C_{j+1} = { d * M^j + x : d in A, x in C_j }, with
  // the new digit most significant so each level stays sorted.
  std::vector<std::uint64_t> indices{0};
  std::uint64_t place = 1;
  for (int j = 0; j < order; ++j) {
    std::vector<std::uint64_t> next;
    next.reserve(indices.size() * alphabet.digits().size());
    for (int d : alphabet.digits()) {
      const std::uint64_t offset = static_cast<std::uint64_t>(d) * place;
      for (std::uint64_t x : indices) next.push_back(offset + x);
    }
    indices = std::move(next);
    place *= static_cast<std::uint64_t>(alphabet.base());
  }
  return CantorSet(alphabet, order, n, std::move(indices));
}

}  // namespace fupc
