// Copyright 2026 The duelbo Authors. All rights reserved.
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

#ifndef DUELBO_ACCEPTANCE_HPP_
#define DUELBO_ACCEPTANCE_HPP_

#include <functional>
#include <string>
#include <vector>

namespace duelbo {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
};

struct AcceptanceOptions {
  std::vector<int> only;  // empty runs every criterion
  int jobs = 1;
};

// Runs the end-to-end acceptance criteria (ids 1-9) and reports each result
// through `on_result` as soon as it is available.
std::vector<CriterionResult> run_acceptance(
    const AcceptanceOptions& options,
    const std::function<void(const CriterionResult&)>& on_result = {});

std::string format_result(const CriterionResult& result);

}  // namespace duelbo

#endif  // DUELBO_ACCEPTANCE_HPP_
