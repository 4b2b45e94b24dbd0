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

#include "fupc/error.hpp"

namespace fupc {

const char* ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kParseError: return "ParseError";
    case ErrorCode::kBaseTooSmall: return "BaseTooSmall";
    case ErrorCode::kDigitOutOfRange: return "DigitOutOfRange";
    case ErrorCode::kDuplicateDigit: return "DuplicateDigit";
    case ErrorCode::kEmptyAlphabet: return "EmptyAlphabet";
    case ErrorCode::kOrderTooLarge: return "OrderTooLarge";
    case ErrorCode::kOrderTooSmall: return "OrderTooSmall";
    case ErrorCode::kIndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::kLengthMismatch: return "LengthMismatch";
    case ErrorCode::kDenseCapExceeded: return "DenseCapExceeded";
    case ErrorCode::kTrivialAlphabet: return "TrivialAlphabet";
    case ErrorCode::kEnumerationTooLarge: return "EnumerationTooLarge";
    case ErrorCode::kBaseMismatch: return "BaseMismatch";
    case ErrorCode::kShapeMismatch: return "ShapeMismatch";
    case ErrorCode::kNonpositiveLipschitz: return "NonpositiveLipschitz";
    case ErrorCode::kNonpositiveInput: return "NonpositiveInput";
    case ErrorCode::kCertificateViolation: return "CertificateViolation";
    case ErrorCode::kInvariantFailure: return "InvariantFailure";
  }
  return "Unknown";
}

bool IsCapError(ErrorCode code) {
  return code == ErrorCode::kOrderTooLarge ||
         code == ErrorCode::kDenseCapExceeded ||
         code == ErrorCode::kEnumerationTooLarge;
}

}  // namespace fupc
