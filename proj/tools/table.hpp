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
// CSV / JSON table output for the command-line tool.
#pragma once

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <ctime>
#include <optional>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"

namespace relbell::cli {

using Cell = std::variant<std::monostate, double, std::int64_t, std::string>;

inline Cell cell(std::optional<double> v) {
    return v ? Cell{*v} : Cell{};
}

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
};

enum class Format { csv, json };

struct Meta {
    std::string command;
    std::string version;
    std::uint64_t seed = 0;
    bool timestamp = true;
    nlohmann::ordered_json extra = nlohmann::ordered_json::object();
};

/// Reals are written with 17 significant digits.
inline std::string format_real(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline std::string csv_escape(const std::string &s) {
    if (s.find_first_of(",\"\n\r") == std::string::npos) {
        return s;
    }
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') {
            out += '"';
        }
        out += c;
    }
    return out + "\"";
}

inline std::string to_csv(const Table &t) {
    std::string out;
    for (std::size_t i = 0; i < t.columns.size(); ++i) {
        out += (i ? "," : "") + csv_escape(t.columns[i]);
    }
    out += '\n';
    for (const auto &row : t.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) {
                out += ',';
            }
            const Cell &c = row[i];
            if (const auto *d = std::get_if<double>(&c)) {
                out += format_real(*d);
            } else if (const auto *n = std::get_if<std::int64_t>(&c)) {
                out += std::to_string(*n);
            } else if (const auto *s = std::get_if<std::string>(&c)) {
                out += csv_escape(*s);
            }
        }
        out += '\n';
    }
    return out;
}

inline std::string utc_timestamp() {
    const std::time_t now =
        std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

inline std::string to_json(const Table &t, const Meta &meta) {
    nlohmann::ordered_json doc;
    auto &m = doc["meta"];
    m["command"] = meta.command;
    m["version"] = meta.version;
    m["seed"] = meta.seed;
    if (meta.timestamp) {
        m["timestamp"] = utc_timestamp();
    }
    for (const auto &[k, v] : meta.extra.items()) {
        m[k] = v;
    }
    auto rows = nlohmann::ordered_json::array();
    for (const auto &row : t.rows) {
        nlohmann::ordered_json obj;
        for (std::size_t i = 0; i < row.size(); ++i) {
            std::visit(
                [&](const auto &v) {
                    using T = std::decay_t<decltype(v)>;
                    if constexpr (std::is_same_v<T, std::monostate>) {
                        obj[t.columns[i]] = nullptr;
                    } else {
                        obj[t.columns[i]] = v;
                    }
                },
                row[i]);
        }
        rows.push_back(std::move(obj));
    }
    doc["rows"] = std::move(rows);
    return doc.dump(2) + "\n";
}

inline std::string render(const Table &t, const Meta &meta, Format f) {
    return f == Format::csv ? to_csv(t) : to_json(t, meta);
}

} // namespace relbell::cli
