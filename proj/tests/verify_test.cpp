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

#include "gtest/gtest.h"

namespace fupc {
namespace {

TEST(Verify, QuickSuitePasses) {
  const auto results = RunInvariantSuite({.quick = true, .threads = 1, .seed = 1});
  EXPECT_EQ(results.size(), 13u);
  for (const CheckResult& r : results) EXPECT_TRUE(r.passed) << r.name << ": " << r.detail;
  const Table t = VerifyTable(results);
  EXPECT_EQ(t.columns, (std::vector<std::string>{"check", "passed", "detail"}));
  EXPECT_EQ(t.rows.size(), results.size());
}

}  // namespace
}  // namespace fupc
