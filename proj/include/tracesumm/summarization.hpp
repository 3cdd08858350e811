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
#include <cstdint>
#include <map>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "tracesumm/error.hpp"
#include "tracesumm/trace_model.hpp"

namespace tracesumm {

enum class MappingKind { Attribute, Topic, Random, Identity };

inline std::string_view to_string(MappingKind kind) {
    switch (kind) {
    case MappingKind::Attribute: return "attribute";
    case MappingKind::Topic: return "topic";
    case MappingKind::Random: return "random";
    case MappingKind::Identity: return "identity";
    }
    return "identity";
}

inline MappingKind mapping_kind_from_string(std::string_view name) {
    if (name == "attribute") return MappingKind::Attribute;
    if (name == "topic") return MappingKind::Topic;
    if (name == "random") return MappingKind::Random;
    if (name == "identity") return MappingKind::Identity;
    throw ParameterError("summarization", "unknown mapping kind '" + std::string(name) + "'");
}

/// Total many-to-one map from an original alphabet [0, domain_size) onto a
/// summary alphabet [0, summary_alphabet_size). Construction rejects tables
/// whose image skips a summary code.
class MappingFunction {
public:
    MappingFunction() = default;

    MappingFunction(MappingKind kind, std::vector<Symbol> table, std::vector<std::string> labels = {})
        : kind_(kind), table_(std::move(table)), labels_(std::move(labels)) {
        std::size_t size = 0;
        for (Symbol s : table_) {
            size = std::max<std::size_t>(size, static_cast<std::size_t>(s) + 1);
        }
        std::vector<bool> used(size, false);
        for (Symbol s : table_) {
            used[s] = true;
        }
        if (std::find(used.begin(), used.end(), false) != used.end()) {
            throw ConsistencyError("summarization", "mapping table does not cover every summary code");
        }
        summary_size_ = size;
        if (labels_.empty()) {
            for (std::size_t s = 0; s < size; ++s) {
                labels_.push_back("s" + std::to_string(s));
            }
        } else if (labels_.size() != size) {
            throw ConsistencyError("summarization", "label count " + std::to_string(labels_.size()) +
                                                        " does not match summary alphabet size " + std::to_string(size));
        }
    }

    static MappingFunction identity(std::size_t alphabet_size) {
        std::vector<Symbol> table(alphabet_size);
        for (std::size_t i = 0; i < alphabet_size; ++i) {
            table[i] = static_cast<Symbol>(i);
        }
        return MappingFunction(MappingKind::Identity, std::move(table));
    }

    Symbol operator()(Symbol original) const {
        if (original >= table_.size()) {
            throw MappingDomainError("summarization", original);
        }
        return table_[original];
    }

    MappingKind kind() const noexcept { return kind_; }
    std::size_t domain_size() const noexcept { return table_.size(); }
    std::size_t summary_alphabet_size() const noexcept { return summary_size_; }
    const std::vector<Symbol>& table() const noexcept { return table_; }
    const std::vector<std::string>& labels() const noexcept { return labels_; }

    MappingFunction with_labels(std::vector<std::string> labels) const {
        return MappingFunction(kind_, table_, std::move(labels));
    }

    bool operator==(const MappingFunction&) const = default;

private:
    MappingKind kind_ = MappingKind::Identity;
    std::vector<Symbol> table_;
    std::vector<std::string> labels_;
    std::size_t summary_size_ = 0;
};

inline nlohmann::json to_json(const MappingFunction& f) {
    return nlohmann::json{{"kind", std::string(to_string(f.kind()))},
                          {"k", f.summary_alphabet_size()},
                          {"table", f.table()},
                          {"labels", f.labels()}};
}

inline MappingFunction mapping_from_json(const nlohmann::json& doc) {
    try {
        MappingFunction f(mapping_kind_from_string(doc.at("kind").get<std::string>()),
                          doc.at("table").get<std::vector<Symbol>>(),
                          doc.value("labels", std::vector<std::string>{}));
        if (doc.contains("k") && doc["k"].get<std::size_t>() != f.summary_alphabet_size()) {
            throw ConsistencyError("summarization", "mapping 'k' disagrees with its table");
        }
        return f;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError("summarization", std::string("bad mapping JSON: ") + e.what(), 0);
    }
}

/// A summary with provenance. origin_index[i] lists the 1-based original
/// positions folded into symbols[i].
struct SummarySequence {
    SymbolSequence symbols;
    std::vector<std::vector<std::uint32_t>> origin_index;
    bool reduced = false;

    std::size_t size() const noexcept { return symbols.size(); }
    bool operator==(const SummarySequence&) const = default;
};

/// f-summarization: substitutes every symbol, keeping positions.
inline SummarySequence apply_mapping(std::span<const Symbol> trace_symbols, const MappingFunction& f) {
    SummarySequence out;
    out.symbols.reserve(trace_symbols.size());
    out.origin_index.reserve(trace_symbols.size());
    for (std::size_t i = 0; i < trace_symbols.size(); ++i) {
        out.symbols.push_back(f(trace_symbols[i]));
        out.origin_index.push_back({static_cast<std::uint32_t>(i + 1)});
    }
    return out;
}

/// Reduced f-summarization: maximal runs of equal mapped symbols collapse to
/// a single item covering the run's positions.
inline SummarySequence apply_reduced_mapping(std::span<const Symbol> trace_symbols, const MappingFunction& f) {
    SummarySequence out;
    out.reduced = true;
    for (std::size_t i = 0; i < trace_symbols.size(); ++i) {
        const Symbol s = f(trace_symbols[i]);
        const auto position = static_cast<std::uint32_t>(i + 1);
        if (!out.symbols.empty() && out.symbols.back() == s) {
            out.origin_index.back().push_back(position);
        } else {
            out.symbols.push_back(s);
            out.origin_index.push_back({position});
        }
    }
    return out;
}

/// Symbols only, without provenance; the form used in distance loops.
inline SymbolSequence summarize_symbols(std::span<const Symbol> trace_symbols, const MappingFunction& f, bool reduced) {
    SymbolSequence out;
    out.reserve(trace_symbols.size());
    for (Symbol original : trace_symbols) {
        const Symbol s = f(original);
        if (!reduced || out.empty() || out.back() != s) {
            out.push_back(s);
        }
    }
    return out;
}

/// True iff original order never runs backwards in the summary: for i < j the
/// summary item holding i is at or before the one holding j. Throws
/// ConsistencyError when the provenance does not cover 1..m exactly once or
/// disagrees with f.
inline bool check_sequence_preserving(std::span<const Symbol> original, const SummarySequence& summary,
                                      const MappingFunction& f) {
    if (summary.origin_index.size() != summary.symbols.size()) {
        throw ConsistencyError("summarization", "provenance list length differs from summary length");
    }
    const std::size_t m = original.size();
    std::vector<std::size_t> holder(m, SIZE_MAX);
    for (std::size_t s = 0; s < summary.origin_index.size(); ++s) {
        for (std::uint32_t position : summary.origin_index[s]) {
            if (position == 0 || position > m) {
                throw ConsistencyError("summarization", "provenance position " + std::to_string(position) +
                                                            " is outside 1.." + std::to_string(m));
            }
            if (holder[position - 1] != SIZE_MAX) {
                throw ConsistencyError("summarization", "position " + std::to_string(position) + " is covered twice");
            }
            if (f(original[position - 1]) != summary.symbols[s]) {
                throw ConsistencyError("summarization", "summary symbol at " + std::to_string(s) +
                                                            " is not the image of position " + std::to_string(position));
            }
            holder[position - 1] = s;
        }
    }
    if (std::find(holder.begin(), holder.end(), SIZE_MAX) != holder.end()) {
        throw ConsistencyError("summarization", "provenance does not cover every original position");
    }
    return std::is_sorted(holder.begin(), holder.end());
}

/// A-compatible mapping over the composite alphabet `original`: two composite
/// symbols share a summary code iff they agree on every attribute in `attrs`.
/// Summary codes follow first appearance in composite-code order; labels are
/// the attribute values joined with '|'.
inline MappingFunction build_attribute_mapping(const AttributeSchema& schema, const CompositeAlphabet& original,
                                               std::span<const std::string> attrs) {
    if (attrs.empty()) {
        throw SchemaError("summarization", "attribute mapping needs at least one attribute");
    }
    std::vector<std::size_t> slots;
    for (const auto& name : attrs) {
        const std::size_t schema_index = schema.index_of(name);
        auto it = std::find(original.attributes.begin(), original.attributes.end(), schema_index);
        if (it == original.attributes.end()) {
            throw SchemaError("summarization", "attribute '" + name + "' is not part of the original alphabet");
        }
        slots.push_back(static_cast<std::size_t>(it - original.attributes.begin()));
    }

    std::map<std::vector<Symbol>, Symbol> codes;
    std::vector<Symbol> table;
    std::vector<std::string> labels;
    table.reserve(original.size());
    for (const auto& tuple : original.tuples) {
        std::vector<Symbol> key;
        key.reserve(slots.size());
        for (std::size_t slot : slots) {
            key.push_back(tuple[slot]);
        }
        auto [it, inserted] = codes.try_emplace(key, static_cast<Symbol>(labels.size()));
        if (inserted) {
            std::string label;
            for (std::size_t k = 0; k < slots.size(); ++k) {
                if (k > 0) {
                    label += '|';
                }
                label += schema.dictionary(original.attributes[slots[k]]).label(key[k]);
            }
            labels.push_back(std::move(label));
        }
        table.push_back(it->second);
    }
    return MappingFunction(MappingKind::Attribute, std::move(table), std::move(labels));
}

/// Convenience overload: attribute mapping over the full-schema alphabet of
/// `trace_set` (the alphabet make_corpus uses).
inline MappingFunction build_attribute_mapping(const TraceSet& trace_set, std::span<const std::string> attrs) {
    return build_attribute_mapping(trace_set.schema, project_all(trace_set).alphabet, attrs);
}

/// Uniform random assignment of `alphabet_size` codes to k classes. Classes
/// left empty are then filled in ascending order, each by moving the lowest
/// original code out of the currently largest class (ties: lowest class).
inline MappingFunction build_random_mapping(std::size_t alphabet_size, std::size_t k, std::uint64_t seed) {
    if (k < 1 || k > alphabet_size) {
        throw ParameterError("summarization", "random mapping needs 1 <= k <= " + std::to_string(alphabet_size) +
                                                  ", got k=" + std::to_string(k));
    }
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> pick(0, k - 1);
    std::vector<Symbol> table(alphabet_size);
    std::vector<std::size_t> class_size(k, 0);
    for (auto& s : table) {
        s = static_cast<Symbol>(pick(rng));
        ++class_size[s];
    }
    for (std::size_t empty = 0; empty < k; ++empty) {
        if (class_size[empty] != 0) {
            continue;
        }
        const auto largest = static_cast<Symbol>(
            std::max_element(class_size.begin(), class_size.end()) - class_size.begin());
        const auto donor = std::find(table.begin(), table.end(), largest);
        *donor = static_cast<Symbol>(empty);
        --class_size[largest];
        ++class_size[empty];
    }
    return MappingFunction(MappingKind::Random, std::move(table));
}

/// Lifts a mapping defined over one attribute's codes onto a composite
/// alphabet that contains that attribute: composite c maps to
/// base(tuple_c[attribute]).
inline MappingFunction compose_through_attribute(const CompositeAlphabet& original, std::size_t schema_attribute,
                                                 const MappingFunction& base) {
    auto it = std::find(original.attributes.begin(), original.attributes.end(), schema_attribute);
    if (it == original.attributes.end()) {
        throw SchemaError("summarization", "base attribute is not part of the original alphabet");
    }
    const auto slot = static_cast<std::size_t>(it - original.attributes.begin());
    std::vector<Symbol> table;
    table.reserve(original.size());
    std::vector<bool> used(base.summary_alphabet_size(), false);
    for (const auto& tuple : original.tuples) {
        table.push_back(base(tuple[slot]));
        used[table.back()] = true;
    }
    // Summary codes whose base dimensions never occur in the alphabet would
    // leave holes; renumber densely and keep their labels aligned.
    std::vector<Symbol> renumber(base.summary_alphabet_size(), 0);
    std::vector<std::string> labels;
    for (std::size_t s = 0; s < used.size(); ++s) {
        if (used[s]) {
            renumber[s] = static_cast<Symbol>(labels.size());
            labels.push_back(base.labels()[s]);
        }
    }
    for (auto& s : table) {
        s = renumber[s];
    }
    return MappingFunction(base.kind(), std::move(table), std::move(labels));
}

} // namespace tracesumm
