// Copyright 2026 the exante authors
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

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace exante {

using Vec = std::vector<double>;

/// Probability vectors must sum to one within this tolerance.
inline constexpr double kSumTol = 1e-9;

/// Slack allowed before an incentive constraint counts as violated.
inline constexpr double kIcTol = 1e-7;

/// Tolerance for argmin/argmax ties.
inline constexpr double kTieTol = 1e-9;

/// Raised when an input document or argument fails validation.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when a numerical routine cannot produce a trustworthy result.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

double dot(const Vec& a, const Vec& b);
double l1_distance(const Vec& a, const Vec& b);

/// Entries nonnegative (within tol) and summing to one (within tol).
bool is_distribution(const Vec& v, double tol = kSumTol);

}  // namespace exante
