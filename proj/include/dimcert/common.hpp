// Copyright 2026 The dimcert Authors
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

#ifndef DIMCERT_COMMON_HPP
#define DIMCERT_COMMON_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace dimcert {

/// Bad user-supplied data: malformed files, non-finite entries, bad flags.
class input_error : public std::runtime_error {
 public:
  explicit input_error(const std::string& what) : std::runtime_error(what) {}
};

/// Request outside the supported protocol family (even d, unknown variant, ...).
class protocol_error : public std::runtime_error {
 public:
  explicit protocol_error(const std::string& what) : std::runtime_error(what) {}
};

/// Internal numerical failure (non-convergence, infeasible LP, ...).
class numeric_error : public std::runtime_error {
 public:
  explicit numeric_error(const std::string& what) : std::runtime_error(what) {}
};

using index_t = std::size_t;

// Singular values below this are treated as numerically zero when ranking.
inline constexpr double kDefaultRankTol = 1e-10;

}  // namespace dimcert

#endif  // DIMCERT_COMMON_HPP
