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

#include <expat.h>

#include <cstring>
#include <istream>
#include <iterator>
#include <memory>
#include <optional>
#include <string>
#include <unordered_set>
#include <vector>

#include "tracesumm/error.hpp"
#include "tracesumm/trace_model.hpp"

namespace tracesumm {

struct XesConfig {
    std::vector<std::string> event_keys{"concept:name"};
};

namespace detail {

struct XesState {
    const XesConfig* config = nullptr;
    // Element stack of local names; only log/trace/event nesting matters.
    std::vector<std::string> stack;
    std::size_t trace_count = 0;
    std::string trace_id;
    std::vector<std::vector<std::optional<std::string>>> trace_events;
    std::vector<std::optional<std::string>> current_event;

    struct RawTrace {
        std::string id;
        std::vector<std::vector<std::optional<std::string>>> events;
    };
    std::vector<RawTrace> traces;
};

inline std::string_view local_name(const XML_Char* name) {
    std::string_view n(name);
    if (auto colon = n.rfind(':'); colon != std::string_view::npos) {
        return n.substr(colon + 1);
    }
    return n;
}

inline void xes_start(void* user, const XML_Char* name, const XML_Char** attrs) {
    auto& st = *static_cast<XesState*>(user);
    const std::string_view elem = local_name(name);
    const std::string parent = st.stack.empty() ? std::string() : st.stack.back();
    st.stack.emplace_back(elem);

    if (elem == "trace" && parent == "log") {
        ++st.trace_count;
        st.trace_id.clear();
        st.trace_events.clear();
        return;
    }
    if (elem == "event" && parent == "trace") {
        st.current_event.assign(st.config->event_keys.size(), std::nullopt);
        return;
    }
    if (parent != "trace" && parent != "event") {
        return;
    }
    const char* key = nullptr;
    const char* value = nullptr;
    for (std::size_t i = 0; attrs[i] != nullptr; i += 2) {
        if (std::strcmp(attrs[i], "key") == 0) {
            key = attrs[i + 1];
        } else if (std::strcmp(attrs[i], "value") == 0) {
            value = attrs[i + 1];
        }
    }
    if (key == nullptr || value == nullptr) {
        return;
    }
    if (parent == "trace") {
        if (std::strcmp(key, "concept:name") == 0) {
            st.trace_id = value;
        }
        return;
    }
    for (std::size_t k = 0; k < st.config->event_keys.size(); ++k) {
        if (st.config->event_keys[k] == key && value[0] != '\0') {
            st.current_event[k] = std::string(value);
        }
    }
}

inline void xes_end(void* user, const XML_Char* /*name*/) {
    auto& st = *static_cast<XesState*>(user);
    const std::string elem = st.stack.back();
    st.stack.pop_back();
    const std::string parent = st.stack.empty() ? std::string() : st.stack.back();
    if (elem == "event" && parent == "trace") {
        st.trace_events.push_back(std::move(st.current_event));
        st.current_event.clear();
    } else if (elem == "trace" && parent == "log") {
        std::string id = st.trace_id.empty() ? "trace_" + std::to_string(st.trace_count) : st.trace_id;
        st.traces.push_back({std::move(id), std::move(st.trace_events)});
        st.trace_events.clear();
    }
}

} // namespace detail

/// Reads the XES skeleton log > trace > event > {string,...} key/value
/// children. Each configured event key becomes one attribute; events lacking
/// a key get that attribute's reserved missing code, which every attribute
/// dictionary carries after the observed values. The trace id is the
/// trace-level concept:name (or trace_<n> when absent). Traces without events
/// are skipped.
inline TraceSet parse_xes_log(std::istream& source, const XesConfig& config = {}) {
    if (config.event_keys.empty()) {
        throw SchemaError("trace-model", "XES ingestion needs at least one event key");
    }
    const std::string text{std::istreambuf_iterator<char>(source), std::istreambuf_iterator<char>()};

    detail::XesState state;
    state.config = &config;
    std::unique_ptr<std::remove_pointer_t<XML_Parser>, decltype(&XML_ParserFree)> parser(
        XML_ParserCreate(nullptr), &XML_ParserFree);
    XML_SetUserData(parser.get(), &state);
    XML_SetElementHandler(parser.get(), &detail::xes_start, &detail::xes_end);
    if (XML_Parse(parser.get(), text.data(), static_cast<int>(text.size()), XML_TRUE) == XML_STATUS_ERROR) {
        const auto offset = static_cast<std::int64_t>(XML_GetCurrentByteIndex(parser.get()));
        const auto line = static_cast<std::size_t>(XML_GetCurrentLineNumber(parser.get()));
        throw ParseError("trace-model",
                         std::string("malformed XML at byte ") + std::to_string(offset) + ": " +
                             XML_ErrorString(XML_GetErrorCode(parser.get())),
                         line, offset);
    }
    if (state.trace_count == 0) {
        throw EmptyInputError("trace-model", "XES log contains no <trace> elements");
    }

    TraceSet out;
    for (const auto& key : config.event_keys) {
        out.schema.add_attribute(key);
    }
    for (const auto& raw : state.traces) {
        for (const auto& ev : raw.events) {
            for (std::size_t k = 0; k < ev.size(); ++k) {
                if (ev[k]) {
                    out.schema.dictionary(k).intern(*ev[k]);
                }
            }
        }
    }
    for (std::size_t k = 0; k < config.event_keys.size(); ++k) {
        out.schema.dictionary(k).reserve_missing();
    }

    std::unordered_set<std::string> ids;
    for (auto& raw : state.traces) {
        if (raw.events.empty()) {
            continue;
        }
        if (!ids.insert(raw.id).second) {
            throw ParseError("trace-model", "duplicate trace id '" + raw.id + "'", 0);
        }
        Trace trace;
        trace.id = raw.id;
        for (const auto& ev : raw.events) {
            Event event;
            for (std::size_t k = 0; k < ev.size(); ++k) {
                const auto& dict = out.schema.dictionary(k);
                event.values.push_back(ev[k] ? *dict.find(*ev[k]) : *dict.missing_code());
            }
            trace.events.push_back(std::move(event));
        }
        out.traces.push_back(std::move(trace));
    }
    if (out.traces.empty()) {
        throw EmptyInputError("trace-model", "XES log contains no events");
    }
    return out;
}

} // namespace tracesumm
