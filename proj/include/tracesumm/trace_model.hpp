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

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "tracesumm/error.hpp"

namespace tracesumm {

/// Dense integer code for one value of one alphabet. Every downstream module
/// compares these, never strings.
using Symbol = std::uint32_t;
using SymbolSequence = std::vector<Symbol>;

inline constexpr std::string_view kMissingLabel = "<missing>";

/// Bijection between the distinct string values of one attribute and
/// [0, cardinality). Codes are handed out in first-seen order; the "missing"
/// code, when reserved, is an ordinary code flagged as such.
class AttributeDictionary {
public:
    Symbol intern(std::string_view value) {
        const std::string key(value);
        if (auto it = index_.find(key); it != index_.end()) {
            return it->second;
        }
        const auto code = static_cast<Symbol>(labels_.size());
        labels_.push_back(key);
        index_.emplace(key, code);
        return code;
    }

    /// Reserves the missing-value code if it does not exist yet and returns it.
    Symbol reserve_missing() {
        if (!missing_) {
            missing_ = static_cast<Symbol>(labels_.size());
            labels_.emplace_back(kMissingLabel);
        }
        return *missing_;
    }

    std::optional<Symbol> find(std::string_view value) const {
        if (auto it = index_.find(std::string(value)); it != index_.end()) {
            return it->second;
        }
        return std::nullopt;
    }

    const std::string& label(Symbol code) const { return labels_.at(code); }
    std::size_t cardinality() const noexcept { return labels_.size(); }
    std::optional<Symbol> missing_code() const noexcept { return missing_; }
    bool is_missing(Symbol code) const noexcept { return missing_ && *missing_ == code; }
    bool contains(Symbol code) const noexcept { return code < labels_.size(); }

    bool operator==(const AttributeDictionary& other) const {
        return labels_ == other.labels_ && missing_ == other.missing_;
    }

private:
    std::vector<std::string> labels_;
    std::unordered_map<std::string, Symbol> index_;
    std::optional<Symbol> missing_;
};

/// Ordered attribute names plus one dictionary per attribute.
class AttributeSchema {
public:
    std::size_t add_attribute(std::string_view name) {
        if (name.empty()) {
            throw SchemaError("trace-model", "attribute names must be non-empty");
        }
        if (find(name)) {
            throw SchemaError("trace-model", "duplicate attribute '" + std::string(name) + "'");
        }
        names_.emplace_back(name);
        dictionaries_.emplace_back();
        return names_.size() - 1;
    }

    std::optional<std::size_t> find(std::string_view name) const {
        for (std::size_t i = 0; i < names_.size(); ++i) {
            if (names_[i] == name) {
                return i;
            }
        }
        return std::nullopt;
    }

    std::size_t index_of(std::string_view name) const {
        if (auto i = find(name)) {
            return *i;
        }
        throw SchemaError("trace-model", "unknown attribute '" + std::string(name) + "'");
    }

    std::size_t size() const noexcept { return names_.size(); }
    const std::vector<std::string>& names() const noexcept { return names_; }
    const std::string& name(std::size_t i) const { return names_.at(i); }
    AttributeDictionary& dictionary(std::size_t i) { return dictionaries_.at(i); }
    const AttributeDictionary& dictionary(std::size_t i) const { return dictionaries_.at(i); }

    bool operator==(const AttributeSchema& other) const = default;

private:
    std::vector<std::string> names_;
    std::vector<AttributeDictionary> dictionaries_;
};

/// One object: a code per schema attribute, in schema order.
struct Event {
    std::vector<Symbol> values;

    bool operator==(const Event&) const = default;
};

/// Events are stored in order; an event's 1-based position is its index.
struct Trace {
    std::string id;
    std::vector<Event> events;

    std::size_t size() const noexcept { return events.size(); }
    bool operator==(const Trace&) const = default;
};

struct TraceSet {
    AttributeSchema schema;
    std::vector<Trace> traces;

    std::size_t size() const noexcept { return traces.size(); }
    bool empty() const noexcept { return traces.empty(); }

    /// Index of the trace with the given id.
    std::size_t index_of(std::string_view id) const {
        for (std::size_t i = 0; i < traces.size(); ++i) {
            if (traces[i].id == id) {
                return i;
            }
        }
        throw LookupError("trace-model", "unknown trace id '" + std::string(id) + "'");
    }

    /// Throws ConsistencyError when an invariant of the data model is broken.
    void validate() const {
        std::unordered_set<std::string> seen;
        for (const auto& trace : traces) {
            if (!seen.insert(trace.id).second) {
                throw ConsistencyError("trace-model", "duplicate trace id '" + trace.id + "'");
            }
            if (trace.events.empty()) {
                throw ConsistencyError("trace-model", "trace '" + trace.id + "' has no events");
            }
            for (const auto& event : trace.events) {
                if (event.values.size() != schema.size()) {
                    throw ConsistencyError("trace-model", "event arity differs from schema in trace '" + trace.id + "'");
                }
                for (std::size_t a = 0; a < event.values.size(); ++a) {
                    if (!schema.dictionary(a).contains(event.values[a])) {
                        throw ConsistencyError("trace-model", "invalid code for attribute '" + schema.name(a) +
                                                                  "' in trace '" + trace.id + "'");
                    }
                }
            }
        }
    }

    bool operator==(const TraceSet&) const = default;
};

/// Interned tuples of attribute codes. Composite code c stands for tuples[c],
/// taken over `attributes` (schema indices, in the order requested).
struct CompositeAlphabet {
    std::vector<std::size_t> attributes;
    std::vector<std::vector<Symbol>> tuples;

    std::size_t size() const noexcept { return tuples.size(); }
};

/// Per-trace composite-symbol sequences aligned 1:1 with the input events.
struct Projection {
    CompositeAlphabet alphabet;
    std::vector<SymbolSequence> sequences;
};

namespace detail {

struct TupleHash {
    std::size_t operator()(const std::vector<Symbol>& tuple) const noexcept {
        std::uint64_t h = 1469598103934665603ULL;
        for (Symbol s : tuple) {
            h ^= s;
            h *= 1099511628211ULL;
        }
        return static_cast<std::size_t>(h);
    }
};

} // namespace detail

/// Turns every event into one composite symbol over `attrs`. Composite codes
/// are assigned in first-seen order over (trace, event) order.
inline Projection project_symbols(const TraceSet& trace_set, std::span<const std::string> attrs) {
    if (attrs.empty()) {
        throw SchemaError("trace-model", "projection needs at least one attribute");
    }
    Projection out;
    for (const auto& name : attrs) {
        out.alphabet.attributes.push_back(trace_set.schema.index_of(name));
    }

    std::unordered_map<std::vector<Symbol>, Symbol, detail::TupleHash> index;
    std::vector<Symbol> key(out.alphabet.attributes.size());
    out.sequences.reserve(trace_set.traces.size());
    for (const auto& trace : trace_set.traces) {
        SymbolSequence seq;
        seq.reserve(trace.events.size());
        for (const auto& event : trace.events) {
            for (std::size_t k = 0; k < key.size(); ++k) {
                key[k] = event.values[out.alphabet.attributes[k]];
            }
            auto [it, inserted] = index.try_emplace(key, static_cast<Symbol>(out.alphabet.tuples.size()));
            if (inserted) {
                out.alphabet.tuples.push_back(key);
            }
            seq.push_back(it->second);
        }
        out.sequences.push_back(std::move(seq));
    }
    return out;
}

inline Projection project_symbols(const TraceSet& trace_set, std::initializer_list<std::string> attrs) {
    const std::vector<std::string> names(attrs);
    return project_symbols(trace_set, std::span<const std::string>(names));
}

/// Projection onto the full schema: the original object alphabet.
inline Projection project_all(const TraceSet& trace_set) {
    return project_symbols(trace_set, std::span<const std::string>(trace_set.schema.names()));
}

/// Original-space view of a trace set used by search, evaluation and
/// clustering: ids, full-schema composite sequences and the alphabet size.
struct SymbolCorpus {
    std::vector<std::string> ids;
    std::vector<SymbolSequence> sequences;
    std::size_t alphabet_size = 0;

    std::size_t size() const noexcept { return sequences.size(); }

    std::size_t index_of(std::string_view id) const {
        for (std::size_t i = 0; i < ids.size(); ++i) {
            if (ids[i] == id) {
                return i;
            }
        }
        throw LookupError("similarity-search", "unknown trace id '" + std::string(id) + "'");
    }
};

inline SymbolCorpus make_corpus(const TraceSet& trace_set, Projection projection) {
    SymbolCorpus corpus;
    corpus.ids.reserve(trace_set.size());
    for (const auto& trace : trace_set.traces) {
        corpus.ids.push_back(trace.id);
    }
    corpus.sequences = std::move(projection.sequences);
    corpus.alphabet_size = projection.alphabet.size();
    return corpus;
}

inline SymbolCorpus make_corpus(const TraceSet& trace_set) { return make_corpus(trace_set, project_all(trace_set)); }

} // namespace tracesumm
