/*
Copyright 2026 The tracesumm Authors

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
*/

#pragma once

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <istream>
#include <iterator>
#include <ostream>
#include <regex>
#include <string>
#include <unordered_map>
#include <variant>
#include <vector>

#include "tracesumm/error.hpp"
#include "tracesumm/trace_model.hpp"

namespace tracesumm {

/// Column roles for CSV ingestion. An empty attribute list means "every
/// column that is neither the id nor the ordering column", in header order.
struct CsvConfig {
    std::string id_column = "trace_id";
    std::string order_column = "position";
    std::vector<std::string> attribute_columns;
};

namespace detail {

struct CsvRecord {
    std::size_t line = 0;
    std::vector<std::string> fields;
};

// RFC 4180 reader: quoted fields may hold commas, doubled quotes and line
// breaks. Accepts LF or CRLF record terminators.
inline std::vector<CsvRecord> read_csv_records(std::string_view text) {
    if (text.size() >= 3 && text.substr(0, 3) == "\xEF\xBB\xBF") {
        text.remove_prefix(3);
    }
    std::vector<CsvRecord> records;
    std::size_t line = 1;
    std::size_t i = 0;
    while (i < text.size()) {
        CsvRecord record;
        record.line = line;
        std::string field;
        bool record_done = false;
        while (!record_done) {
            field.clear();
            if (i < text.size() && text[i] == '"') {
                const std::size_t open_line = line;
                ++i;
                for (;;) {
                    if (i >= text.size()) {
                        throw ParseError("trace-model", "unterminated quoted field starting on line " +
                                                            std::to_string(open_line), open_line);
                    }
                    const char c = text[i++];
                    if (c == '"') {
                        if (i < text.size() && text[i] == '"') {
                            field.push_back('"');
                            ++i;
                        } else {
                            break;
                        }
                    } else {
                        if (c == '\n') {
                            ++line;
                        }
                        field.push_back(c);
                    }
                }
                if (i < text.size() && text[i] != ',' && text[i] != '\n' && text[i] != '\r') {
                    throw ParseError("trace-model", "unexpected character after quoted field on line " +
                                                        std::to_string(line), line);
                }
            } else {
                while (i < text.size() && text[i] != ',' && text[i] != '\n' && text[i] != '\r') {
                    field.push_back(text[i++]);
                }
            }
            record.fields.push_back(field);
            if (i >= text.size()) {
                record_done = true;
            } else if (text[i] == ',') {
                ++i;
            } else {
                if (text[i] == '\r') {
                    ++i;
                }
                if (i < text.size() && text[i] == '\n') {
                    ++i;
                }
                ++line;
                record_done = true;
            }
        }
        const bool blank = record.fields.size() == 1 && record.fields[0].empty();
        if (!blank) {
            records.push_back(std::move(record));
        }
    }
    return records;
}

inline bool needs_quotes(std::string_view field) {
    return field.find_first_of(",\"\r\n") != std::string_view::npos;
}

inline void write_csv_field(std::ostream& out, std::string_view field) {
    if (!needs_quotes(field)) {
        out << field;
        return;
    }
    out << '"';
    for (char c : field) {
        if (c == '"') {
            out << '"';
        }
        out << c;
    }
    out << '"';
}

using OrderKey = std::variant<std::int64_t, std::string>;

inline std::optional<std::int64_t> parse_integer(std::string_view s) {
    std::int64_t value = 0;
    const auto* first = s.data();
    const auto* last = s.data() + s.size();
    if (!s.empty() && s.front() == '+') {
        ++first;
    }
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last || first == last) {
        return std::nullopt;
    }
    return value;
}

inline std::optional<std::string> parse_timestamp(std::string_view s) {
    static const std::regex pattern(
        R"(^\d{4}-\d{2}-\d{2}([T ]\d{2}:\d{2}(:\d{2}(\.\d+)?)?)?(Z|[+-]\d{2}:?\d{2})?$)");
    if (!std::regex_match(s.begin(), s.end(), pattern)) {
        return std::nullopt;
    }
    std::string key(s);
    std::replace(key.begin(), key.end(), 'T', ' ');
    return key;
}

} // namespace detail

/// Reads a CSV event log into a TraceSet. Traces appear in first-seen id
/// order; events are stable-sorted by the ordering column, which must hold
/// integers throughout or ISO-8601 timestamps throughout. Empty attribute
/// cells map to the attribute's reserved missing code.
inline TraceSet parse_csv_log(std::istream& source, const CsvConfig& config = {}) {
    const std::string text{std::istreambuf_iterator<char>(source), std::istreambuf_iterator<char>()};
    auto records = detail::read_csv_records(text);
    if (records.empty()) {
        throw EmptyInputError("trace-model", "CSV input is empty");
    }
    const auto& header = records.front().fields;
    auto column = [&](const std::string& name) -> std::size_t {
        auto it = std::find(header.begin(), header.end(), name);
        if (it == header.end()) {
            throw SchemaError("trace-model", "missing column '" + name + "'");
        }
        return static_cast<std::size_t>(it - header.begin());
    };
    const std::size_t id_col = column(config.id_column);
    const std::size_t order_col = column(config.order_column);

    std::vector<std::string> attr_names = config.attribute_columns;
    if (attr_names.empty()) {
        for (std::size_t c = 0; c < header.size(); ++c) {
            if (c != id_col && c != order_col) {
                attr_names.push_back(header[c]);
            }
        }
    }
    if (attr_names.empty()) {
        throw SchemaError("trace-model", "CSV log needs at least one attribute column");
    }
    std::vector<std::size_t> attr_cols;
    for (const auto& name : attr_names) {
        attr_cols.push_back(column(name));
    }
    if (records.size() == 1) {
        throw EmptyInputError("trace-model", "CSV input has a header but no rows");
    }

    TraceSet out;
    for (const auto& name : attr_names) {
        out.schema.add_attribute(name);
    }

    struct Row {
        std::size_t trace = 0;
        detail::OrderKey key;
        std::size_t file_order = 0;
        const std::vector<std::string>* fields = nullptr;
    };
    std::vector<Row> rows;
    rows.reserve(records.size() - 1);
    std::unordered_map<std::string, std::size_t> trace_index;
    std::vector<std::string> trace_ids;
    std::vector<bool> saw_missing(attr_cols.size(), false);
    enum class OrderMode { Unknown, Integer, Timestamp } mode = OrderMode::Unknown;

    for (std::size_t r = 1; r < records.size(); ++r) {
        const auto& rec = records[r];
        if (rec.fields.size() != header.size()) {
            throw ParseError("trace-model", "line " + std::to_string(rec.line) + ": expected " +
                                                std::to_string(header.size()) + " fields, found " +
                                                std::to_string(rec.fields.size()), rec.line);
        }
        const std::string& order_text = rec.fields[order_col];
        detail::OrderKey key;
        if (mode == OrderMode::Unknown) {
            mode = detail::parse_integer(order_text) ? OrderMode::Integer : OrderMode::Timestamp;
        }
        if (mode == OrderMode::Integer) {
            auto v = detail::parse_integer(order_text);
            if (!v) {
                throw ParseError("trace-model", "line " + std::to_string(rec.line) +
                                                    ": unparsable ordering value '" + order_text + "'", rec.line);
            }
            key = *v;
        } else {
            auto v = detail::parse_timestamp(order_text);
            if (!v) {
                throw ParseError("trace-model", "line " + std::to_string(rec.line) +
                                                    ": unparsable ordering value '" + order_text + "'", rec.line);
            }
            key = std::move(*v);
        }

        const std::string& id = rec.fields[id_col];
        auto [it, inserted] = trace_index.try_emplace(id, trace_ids.size());
        if (inserted) {
            trace_ids.push_back(id);
        }
        for (std::size_t a = 0; a < attr_cols.size(); ++a) {
            const std::string& value = rec.fields[attr_cols[a]];
            if (value.empty()) {
                saw_missing[a] = true;
            } else {
                out.schema.dictionary(a).intern(value);
            }
        }
        rows.push_back(Row{it->second, std::move(key), r, &rec.fields});
    }
    for (std::size_t a = 0; a < attr_cols.size(); ++a) {
        if (saw_missing[a]) {
            out.schema.dictionary(a).reserve_missing();
        }
    }

    std::stable_sort(rows.begin(), rows.end(), [](const Row& x, const Row& y) {
        if (x.trace != y.trace) {
            return x.trace < y.trace;
        }
        return x.key < y.key;
    });

    out.traces.resize(trace_ids.size());
    for (std::size_t t = 0; t < trace_ids.size(); ++t) {
        out.traces[t].id = trace_ids[t];
    }
    for (const auto& row : rows) {
        Event event;
        event.values.reserve(attr_cols.size());
        for (std::size_t a = 0; a < attr_cols.size(); ++a) {
            const std::string& value = (*row.fields)[attr_cols[a]];
            const auto& dict = out.schema.dictionary(a);
            event.values.push_back(value.empty() ? *dict.missing_code() : *dict.find(value));
        }
        out.traces[row.trace].events.push_back(std::move(event));
    }
    return out;
}

/// Writes a TraceSet as CSV with 1-based integer positions. Missing values
/// are written as empty cells, so parse_csv_log reads the file back.
inline void write_csv_log(std::ostream& out, const TraceSet& trace_set, const CsvConfig& config = {}) {
    detail::write_csv_field(out, config.id_column);
    out << ',';
    detail::write_csv_field(out, config.order_column);
    for (const auto& name : trace_set.schema.names()) {
        out << ',';
        detail::write_csv_field(out, name);
    }
    out << '\n';
    for (const auto& trace : trace_set.traces) {
        for (std::size_t i = 0; i < trace.events.size(); ++i) {
            detail::write_csv_field(out, trace.id);
            out << ',' << (i + 1);
            for (std::size_t a = 0; a < trace_set.schema.size(); ++a) {
                out << ',';
                const Symbol code = trace.events[i].values[a];
                const auto& dict = trace_set.schema.dictionary(a);
                if (!dict.is_missing(code)) {
                    detail::write_csv_field(out, dict.label(code));
                }
            }
            out << '\n';
        }
    }
}

} // namespace tracesumm
