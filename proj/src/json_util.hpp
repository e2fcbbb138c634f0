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

// Field accessors shared by the JSONL readers. Every failure becomes a
// ParseError carrying the line number and the path of the offending field.

#pragma once

#include <charconv>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>

#include "json.hpp"
#include "xlrank/errors.hpp"
#include "xlrank/language.hpp"

namespace xlrank::detail {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

inline json
parse_json_line(std::string_view line, std::size_t line_no) {
    json value;
    try {
        value = json::parse(line);
    } catch (const json::parse_error& e) {
        throw ParseError(line_no, std::string("invalid JSON: ") + e.what());
    }
    if (!value.is_object()) {
        throw ParseError(line_no, "record is not a JSON object");
    }
    return value;
}

inline std::string
field_path(std::string_view where, std::string_view key) {
    if (where.empty()) {
        return std::string(key);
    }
    return std::string(where) + "." + std::string(key);
}

inline const json&
require(const json& obj, std::string_view key, std::size_t line_no, std::string_view where) {
    auto it = obj.find(key);
    if (it == obj.end() || it->is_null()) {
        throw ParseError(line_no, "missing field '" + field_path(where, key) + "'");
    }
    return *it;
}

/// Strings, or integers rendered in decimal (ids are sometimes numeric).
inline std::string
as_id(const json& value, std::size_t line_no, const std::string& path) {
    if (value.is_string()) {
        return value.get<std::string>();
    }
    if (value.is_number_integer()) {
        return value.dump();
    }
    throw ParseError(line_no, "field '" + path + "' must be a string");
}

inline std::string
require_string(const json& obj, std::string_view key, std::size_t line_no,
               std::string_view where) {
    const json& value = require(obj, key, line_no, where);
    if (!value.is_string()) {
        throw ParseError(line_no, "field '" + field_path(where, key) + "' must be a string");
    }
    return value.get<std::string>();
}

inline std::string
optional_string(const json& obj, std::string_view key, std::size_t line_no,
                std::string_view where) {
    auto it = obj.find(key);
    if (it == obj.end() || it->is_null()) {
        return {};
    }
    if (!it->is_string()) {
        throw ParseError(line_no, "field '" + field_path(where, key) + "' must be a string");
    }
    return it->get<std::string>();
}

inline LanguageCode
language_field(const json& obj, std::string_view key, std::size_t line_no, std::string_view where,
               bool required) {
    std::string code = required ? require_string(obj, key, line_no, where)
                                : optional_string(obj, key, line_no, where);
    if (code.empty() && !required) {
        return LanguageCode::undetermined();
    }
    auto lang = LanguageCode::parse(code);
    if (!lang) {
        throw ParseError(line_no,
                         "field '" + field_path(where, key) + "': invalid language '" + code + "'");
    }
    return *lang;
}

/// Number, or a decimal number written as a string.
inline std::optional<double>
optional_real(const json& obj, std::string_view key, std::size_t line_no, std::string_view where) {
    auto it = obj.find(key);
    if (it == obj.end() || it->is_null()) {
        return std::nullopt;
    }
    if (it->is_number()) {
        return it->get<double>();
    }
    if (it->is_string()) {
        const auto& text = it->get_ref<const std::string&>();
        double value = 0.0;
        const char* first = text.data();
        const char* last = text.data() + text.size();
        while (first < last && *first == ' ') {
            ++first;
        }
        while (last > first && last[-1] == ' ') {
            --last;
        }
        if (first != last && *first == '+') {
            ++first;
        }
        auto [ptr, ec] = std::from_chars(first, last, value);
        if (ec == std::errc() && ptr == last && first != last) {
            return value;
        }
    }
    throw ParseError(line_no, "field '" + field_path(where, key) + "' must be a decimal number");
}

}  // namespace xlrank::detail
