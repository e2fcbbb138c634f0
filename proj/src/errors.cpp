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

#include "xlrank/errors.hpp"

namespace xlrank {

ParseError::ParseError(std::size_t line, const std::string& message)
    : Error("line " + std::to_string(line) + ": " + message), line_(line) {
}

ItemError::ItemError(std::size_t index)
    : Error("item " + std::to_string(index)), index_(index) {
}

namespace {

const std::exception*
nested_of(const std::exception& e) {
    try {
        std::rethrow_if_nested(e);
    } catch (const std::exception& inner) {
        // The caught object lives in the exception_ptr owned by `e`,
        // so the reference stays valid while `e` is alive.
        return &inner;
    } catch (...) {
    }
    return nullptr;
}

}  // namespace

ErrorKind
classify(const std::exception& e) {
    const std::exception* current = &e;
    ErrorKind kind = ErrorKind::kOther;
    while (current != nullptr) {
        if (dynamic_cast<const ServiceError*>(current) != nullptr) {
            kind = ErrorKind::kService;
        } else if (dynamic_cast<const PreconditionError*>(current) != nullptr ||
                   dynamic_cast<const ParseError*>(current) != nullptr ||
                   dynamic_cast<const ValidationError*>(current) != nullptr ||
                   dynamic_cast<const FormatError*>(current) != nullptr) {
            kind = ErrorKind::kInput;
        }
        current = nested_of(*current);
    }
    return kind;
}

std::string
describe(const std::exception& e) {
    std::string out = e.what();
    for (const std::exception* inner = nested_of(e); inner != nullptr;
         inner = nested_of(*inner)) {
        out += ": ";
        out += inner->what();
    }
    return out;
}

bool
find_item_index(const std::exception& e, std::size_t& index) {
    for (const std::exception* current = &e; current != nullptr;
         current = nested_of(*current)) {
        if (const auto* item = dynamic_cast<const ItemError*>(current)) {
            index = item->index();
            return true;
        }
    }
    return false;
}

}  // namespace xlrank
