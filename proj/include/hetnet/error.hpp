// Copyright 2026 the hetnet-ase authors
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

namespace hetnet {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An input violates a documented precondition (negative density, alpha <= 2, K > M, ...).
/// Messages name the offending field and the constraint.
class DomainError : public Error {
public:
    using Error::Error;
};

/// An iterative method ran out of budget before meeting its tolerance.
class NonConvergence : public Error {
public:
    using Error::Error;
};

/// Bisection endpoints do not straddle a sign change.
class BadBracket : public Error {
public:
    using Error::Error;
};

/// A simulation window contained no base station.
class EmptyWindow : public Error {
public:
    using Error::Error;
};

namespace detail {

[[noreturn]] inline void domain_fail(const std::string& field, const std::string& constraint)
{
    throw DomainError(field + ": must satisfy " + constraint);
}

} // namespace detail

} // namespace hetnet
