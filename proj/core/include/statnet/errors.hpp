// Copyright 2026 The Statnet Authors
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

namespace statnet {

/// Root of every exception thrown by the library.
class Error : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// Malformed caller input: wrong lengths, mismatched dimensions, bad values.
class InputError : public Error {
   public:
    using Error::Error;
};

/// Network DSL syntax or validation failure. `line()` is 1-based; 0 means
/// the problem was found after the whole text was read.
class ParseError : public InputError {
   public:
    ParseError(std::size_t line, const std::string &message)
        : InputError(line == 0 ? message : "line " + std::to_string(line) + ": " + message), line_(line) {
    }
    std::size_t line() const {
        return line_;
    }

   private:
    std::size_t line_;
};

/// A vector with zero norm was asked to be normalized.
class DegenerateStateError : public Error {
   public:
    using Error::Error;
};

/// The watchdog step could not place the mass demanded by the drive.
class DegenerateDynamicsError : public Error {
   public:
    DegenerateDynamicsError(double t, int sector, const std::string &message)
        : Error(message), t_(t), sector_(sector) {
    }
    /// Time of the failing step (NaN when raised outside a trajectory).
    double t() const {
        return t_;
    }
    /// Drive-node value of the sector that could not be populated.
    int sector() const {
        return sector_;
    }

   private:
    double t_;
    int sector_;
};

/// The gates and input pins alone admit no assignment.
class UnpreparableNetworkError : public Error {
   public:
    using Error::Error;
};

/// Problem too large for exhaustive treatment.
class LimitError : public Error {
   public:
    using Error::Error;
};

}  // namespace statnet
