// Copyright 2026 The qsvt-forge Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef QSVT_FORGE_ERRORS_HPP
#define QSVT_FORGE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace qsvt_forge {

/// Bad input: wrong shape, out-of-range parameter, malformed file.
/// The CLI maps this to exit code 2.
class ValidationError : public std::invalid_argument {
 public:
  explicit ValidationError(const std::string &what) : std::invalid_argument(what) {}
};

/// A numerically degenerate situation the algorithm cannot recover from
/// (zero overlap, singular readout system, vanishing post-selection).
/// The CLI maps this to exit code 3.
class DegeneracyError : public std::runtime_error {
 public:
  explicit DegeneracyError(const std::string &what) : std::runtime_error(what) {}
};

inline void require(bool ok, const std::string &msg) {
  if (!ok) throw ValidationError(msg);
}

}  // namespace qsvt_forge

#endif
