// Copyright 2026-present the xlrank project
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
#include <exception>
#include <stdexcept>
#include <string>

namespace xlrank {

/// Root of every exception thrown by the toolkit. Context is added by
/// nesting (std::throw_with_nested), so the innermost exception carries
/// the category and the outer ones carry "where".
class Error : public std::runtime_error {
 public:
    using std::runtime_error::runtime_error;
};

/// Caller violated an operation precondition (empty text, dimension mismatch).
class PreconditionError : public Error {
 public:
    using Error::Error;
};

/// Malformed input record. The message is prefixed with "line N: ".
class ParseError : public Error {
 public:
    ParseError(std::size_t line, const std::string& message);

    std::size_t
    line() const noexcept {
        return line_;
    }

 private:
    std::size_t line_;
};

/// Well-formed input that violates a domain invariant (duplicate ids, ...).
class ValidationError : public Error {
 public:
    using Error::Error;
};

/// Binary or text container does not follow its declared layout.
class FormatError : public Error {
 public:
    using Error::Error;
};

/// Failure reported by, or while talking to, an external service.
/// status() is the HTTP status, or 0 when no response was received.
class ServiceError : public Error {
 public:
    explicit ServiceError(const std::string& message, int status = 0)
        : Error(message), status_(status) {
    }

    int
    status() const noexcept {
        return status_;
    }

 private:
    int status_;
};

/// The service answered, but the answer breaks the wire contract.
class ProtocolError : public ServiceError {
 public:
    explicit ProtocolError(const std::string& message) : ServiceError(message, 0) {
    }
};

/// Marks the position of a failing element inside a batch call; always
/// thrown nested around the real cause.
class ItemError : public Error {
 public:
    explicit ItemError(std::size_t index);

    std::size_t
    index() const noexcept {
        return index_;
    }

 private:
    std::size_t index_;
};

enum class ErrorKind {
    kInput,    // bad input, config or precondition
    kService,  // external service unreachable or misbehaving
    kOther,
};

/// Category of the innermost nested exception.
ErrorKind
classify(const std::exception& e);

/// All messages of a nested exception chain joined with ": ".
std::string
describe(const std::exception& e);

/// Index carried by the outermost ItemError in the chain, if any.
bool
find_item_index(const std::exception& e, std::size_t& index);

}  // namespace xlrank
