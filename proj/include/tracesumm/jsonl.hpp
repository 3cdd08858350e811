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

#include <istream>
#include <ostream>
#include <string>

#include <json.hpp>

#include "tracesumm/error.hpp"
#include "tracesumm/trace_model.hpp"

namespace tracesumm {

// Canonical dump: a schema header line
//   {"schema":{"attributes":[{"name":..,"values":[..],"missing":code|null},..]}}
// followed by one line per trace
//   {"id":"..","events":[[c1,c2,..],..]}

inline void write_jsonl(std::ostream& out, const TraceSet& trace_set) {
    nlohmann::json attributes = nlohmann::json::array();
    for (std::size_t a = 0; a < trace_set.schema.size(); ++a) {
        const auto& dict = trace_set.schema.dictionary(a);
        nlohmann::json values = nlohmann::json::array();
        for (Symbol c = 0; c < dict.cardinality(); ++c) {
            values.push_back(dict.label(c));
        }
        nlohmann::json entry{{"name", trace_set.schema.name(a)}, {"values", std::move(values)}};
        entry["missing"] = dict.missing_code() ? nlohmann::json(*dict.missing_code()) : nlohmann::json(nullptr);
        attributes.push_back(std::move(entry));
    }
    out << nlohmann::json{{"schema", {{"attributes", std::move(attributes)}}}}.dump() << '\n';
    for (const auto& trace : trace_set.traces) {
        nlohmann::json events = nlohmann::json::array();
        for (const auto& event : trace.events) {
            events.push_back(event.values);
        }
        out << nlohmann::json{{"id", trace.id}, {"events", std::move(events)}}.dump() << '\n';
    }
}

inline TraceSet read_jsonl(std::istream& in) {
    TraceSet out;
    std::string line;
    std::size_t line_no = 0;
    bool have_schema = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) {
            continue;
        }
        nlohmann::json doc;
        try {
            doc = nlohmann::json::parse(line);
        } catch (const nlohmann::json::parse_error& e) {
            throw ParseError("trace-model", "line " + std::to_string(line_no) + ": " + e.what(), line_no);
        }
        try {
            if (!have_schema) {
                for (const auto& attr : doc.at("schema").at("attributes")) {
                    const std::size_t a = out.schema.add_attribute(attr.at("name").get<std::string>());
                    const auto& values = attr.at("values");
                    const auto missing = attr.contains("missing") && !attr["missing"].is_null()
                                             ? std::optional<Symbol>(attr["missing"].get<Symbol>())
                                             : std::nullopt;
                    auto& dict = out.schema.dictionary(a);
                    for (std::size_t c = 0; c < values.size(); ++c) {
                        if (missing && *missing == c) {
                            dict.reserve_missing();
                        } else {
                            dict.intern(values[c].get<std::string>());
                        }
                    }
                }
                have_schema = true;
                continue;
            }
            Trace trace;
            trace.id = doc.at("id").get<std::string>();
            for (const auto& ev : doc.at("events")) {
                trace.events.push_back(Event{ev.get<std::vector<Symbol>>()});
            }
            out.traces.push_back(std::move(trace));
        } catch (const nlohmann::json::exception& e) {
            throw ParseError("trace-model", "line " + std::to_string(line_no) + ": " + e.what(), line_no);
        }
    }
    if (!have_schema || out.traces.empty()) {
        throw EmptyInputError("trace-model", "JSON-lines input holds no traces");
    }
    out.validate();
    return out;
}

} // namespace tracesumm
