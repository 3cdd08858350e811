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

#include <cstdint>
#include <string>
#include <vector>

#include "tracesumm/error.hpp"
#include "tracesumm/summarization.hpp"
#include "tracesumm/topic_model.hpp"
#include "tracesumm/trace_model.hpp"

namespace tracesumm {

/// Everything needed to build one mapping over a trace set's full-schema
/// alphabet.
struct SchemeSpec {
    MappingKind kind = MappingKind::Identity;
    std::size_t k = 10;
    std::vector<std::string> attrs;
    double lambda = 0.5;
    ReductionMethod method = ReductionMethod::Svd;
    std::uint64_t seed = 0;
    std::string base_attribute;

    /// Throws ParameterError for values that can never be valid, without
    /// looking at any data.
    void validate() const {
        if ((kind == MappingKind::Topic || kind == MappingKind::Random) && k < 1) {
            throw ParameterError("cli-bench", "k must be at least 1");
        }
        if (kind == MappingKind::Topic && !(lambda >= 0.0 && lambda <= 1.0)) {
            throw ParameterError("cli-bench", "lambda must lie in [0, 1]");
        }
        if (kind == MappingKind::Attribute && attrs.empty()) {
            throw ParameterError("cli-bench", "attribute scheme needs --attrs");
        }
    }

    std::string describe() const {
        std::string out(to_string(kind));
        switch (kind) {
        case MappingKind::Attribute:
            for (std::size_t i = 0; i < attrs.size(); ++i) {
                out += (i == 0 ? "(" : ",") + attrs[i];
            }
            out += ")";
            break;
        case MappingKind::Topic:
            out += "(k=" + std::to_string(k) + ",lambda=" + std::to_string(lambda) + "," +
                   std::string(to_string(method)) + ",seed=" + std::to_string(seed) + ")";
            break;
        case MappingKind::Random:
            out += "(k=" + std::to_string(k) + ",seed=" + std::to_string(seed) + ")";
            break;
        case MappingKind::Identity: break;
        }
        return out;
    }
};

/// Builds the mapping over make_corpus(trace_set)'s alphabet.
inline MappingFunction build_scheme_mapping(const TraceSet& trace_set, const SchemeSpec& spec) {
    spec.validate();
    const CompositeAlphabet alphabet = project_all(trace_set).alphabet;
    switch (spec.kind) {
    case MappingKind::Identity: return MappingFunction::identity(alphabet.size());
    case MappingKind::Random: return build_random_mapping(alphabet.size(), spec.k, spec.seed);
    case MappingKind::Attribute: return build_attribute_mapping(trace_set.schema, alphabet, spec.attrs);
    case MappingKind::Topic: {
        TopicOptions options;
        options.base_attribute = spec.base_attribute;
        options.k = spec.k;
        options.lambda = spec.lambda;
        options.method = spec.method;
        options.seed = spec.seed;
        const TopicModel model = fit_topic_model(trace_set, options);
        return compose_through_attribute(alphabet, trace_set.schema.index_of(model.base_attribute), model.mapping);
    }
    }
    throw ParameterError("cli-bench", "unknown scheme");
}

} // namespace tracesumm
