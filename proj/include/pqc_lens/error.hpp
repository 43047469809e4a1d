// Copyright 2026 The pqc-lens Authors
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

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace pqc_lens {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// A precondition on an argument was violated.
class InvalidArgument : public Error {
   public:
    using Error::Error;
};

/// A circuit-spec document could not be parsed or failed validation.
class ParseError : public Error {
   public:
    ParseError(const std::string &what, std::size_t position = npos)
        : Error(position == npos ? what : what + " (at byte " + std::to_string(position) + ")"),
          position_(position) {}

    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

    /// Byte offset of a syntax error, or npos for semantic errors.
    std::size_t position() const noexcept { return position_; }

   private:
    std::size_t position_;
};

/// A computation produced a non-finite value (diverging training, etc).
class NumericalError : public Error {
   public:
    using Error::Error;
};

}  // namespace pqc_lens
