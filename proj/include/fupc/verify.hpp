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


#ifndef FUPC_VERIFY_HPP_
#define FUPC_VERIFY_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "fupc/report.hpp"

namespace fupc {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct VerifyOptions {
  bool quick = false;  // smaller ranges, a few seconds in total
  int threads = 1;
  std::uint64_t seed = 1;
};

// Property checks across every module. A check that throws is recorded as
// failed with the exception text as detail.
std::vector<CheckResult> RunInvariantSuite(const VerifyOptions& options);

// Columns: check, passed, detail.
Table VerifyTable(const std::vector<CheckResult>& results);

}  // namespace fupc

#endif  // FUPC_VERIFY_HPP_
