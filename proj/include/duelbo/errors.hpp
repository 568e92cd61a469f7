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

#ifndef DUELBO_ERRORS_HPP_
#define DUELBO_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace duelbo {

// Dimension mismatches and malformed arguments use std::invalid_argument.

// Invalid or incompatible experiment configuration.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The environment was queried past its horizon.
class HorizonError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A documented algorithmic precondition did not hold.
class InvariantError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Factorization failed even after jitter.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace duelbo

#endif  // DUELBO_ERRORS_HPP_
