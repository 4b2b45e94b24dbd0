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

#ifndef FUPC_ERROR_HPP_
#define FUPC_ERROR_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace fupc {

enum class ErrorCode {
  kInvalidArgument,
  kParseError,
  kBaseTooSmall,
  kDigitOutOfRange,
  kDuplicateDigit,
  kEmptyAlphabet,
  kOrderTooLarge,
  kOrderTooSmall,
  kIndexOutOfRange,
  kLengthMismatch,
  kDenseCapExceeded,
  kTrivialAlphabet,
  kEnumerationTooLarge,
  kBaseMismatch,
  kShapeMismatch,
  kNonpositiveLipschitz,
  kNonpositiveInput,
  kCertificateViolation,
  kInvariantFailure,
};

const char* ErrorCodeName(ErrorCode code);

// True for the codes that signal a configured size cap was exceeded.
bool IsCapError(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

// Raised by the length-certificate verifier. `blocks` names the offending
// block indices at `level`; `witness` is a point rank exhibiting the failure
// (or npos when the failure is structural, e.g. a missing pairing).
class CertificateViolation : public Error {
 public:
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  CertificateViolation(std::size_t level, std::vector<std::size_t> blocks,
                       std::size_t witness, const std::string& what)
      : Error(ErrorCode::kCertificateViolation, what),
        level_(level),
        blocks_(std::move(blocks)),
        witness_(witness) {}

  std::size_t level() const noexcept { return level_; }
  const std::vector<std::size_t>& blocks() const noexcept { return blocks_; }
  std::size_t witness() const noexcept { return witness_; }

 private:
  std::size_t level_;
  std::vector<std::size_t> blocks_;
  std::size_t witness_;
};

}  // namespace fupc

#endif  // FUPC_ERROR_HPP_
