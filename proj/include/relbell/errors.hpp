// Copyright 2026 The relbell Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
/**
 * @file
 * Exception types thrown by the relbell toolkit.
 */
#pragma once

#include <stdexcept>
#include <string>

namespace relbell {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

class NotHermitian : public Error {
  public:
    explicit NotHermitian(const std::string &what)
        : Error("not Hermitian: " + what) {}
};

class NoConvergence : public Error {
  public:
    explicit NoConvergence(const std::string &what)
        : Error("no convergence: " + what) {}
};

class DimensionMismatch : public Error {
  public:
    explicit DimensionMismatch(const std::string &what)
        : Error("dimension mismatch: " + what) {}
};

/// The observable normalization factor vanished (beta -> 1 with the
/// measurement direction perpendicular to the boost).
class DegenerateObservable : public Error {
  public:
    explicit DegenerateObservable(const std::string &what)
        : Error("degenerate observable: " + what) {}
};

/// A closed-form expression was asked to evaluate outside the geometry it
/// was derived for.
class DomainRestriction : public Error {
  public:
    explicit DomainRestriction(const std::string &what)
        : Error("outside closed-form domain: " + what) {}
};

/// A scalar argument (usually beta) is out of range.
class DomainError : public Error {
  public:
    explicit DomainError(const std::string &what)
        : Error("domain error: " + what) {}
};

class InvalidObservable : public Error {
  public:
    explicit InvalidObservable(const std::string &what)
        : Error("invalid observable: " + what) {}
};

class MissingSetting : public Error {
  public:
    explicit MissingSetting(const std::string &what)
        : Error("missing setting: " + what) {}
};

} // namespace relbell
