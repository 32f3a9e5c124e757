// Copyright 2026 The mmes Authors
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

#include <stdexcept>
#include <string>
#include <string_view>

namespace mmes {

enum class ErrorCode {
    InvalidInput,
    InvalidState,
    Capacity,
    InvalidConfig,
    NumericalFailure,
    Parse,
    Io,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Base exception for every failure raised by the library. The code is
/// machine-readable; what() carries a one-line human message.
class Error : public std::runtime_error {
  public:
    Error(ErrorCode code, const std::string &message)
        : std::runtime_error(message), code_(code) {}

    [[nodiscard]] ErrorCode code() const noexcept { return code_; }

  private:
    ErrorCode code_;
};

/// Raised by the optimizer when an objective evaluation returns NaN or inf.
class NumericalFailure : public Error {
  public:
    NumericalFailure(int start_index, const std::string &message)
        : Error(ErrorCode::NumericalFailure, message), start_(start_index) {}

    [[nodiscard]] int start_index() const noexcept { return start_; }

  private:
    int start_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string &message) {
    throw Error(code, message);
}

} // namespace mmes
