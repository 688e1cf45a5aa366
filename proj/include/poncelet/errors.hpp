// Copyright 2026 The poncelet-lab Authors
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

namespace poncelet {

/// Root of every exception thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Input outside an operation's domain (point off an ellipse, invalid config, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

/// A construction collapsed (zero-area polygon, coincident points, ...).
/// The sweep engine treats these as skipped samples.
class DegenerateError : public Error {
public:
    using Error::Error;
};

/// Two lines that should meet are parallel.
class VertexAtInfinity : public DegenerateError {
public:
    using DegenerateError::DegenerateError;
};

class SolverError : public Error {
public:
    SolverError(const std::string& what, double final_error)
        : Error(what), final_error_(final_error) {}
    double final_error() const noexcept { return final_error_; }

private:
    double final_error_;
};

/// Two independent computations of the same quantity disagree.
class ConsistencyError : public Error {
public:
    using Error::Error;
};

class NotFoundError : public Error {
public:
    using Error::Error;
};

}  // namespace poncelet
