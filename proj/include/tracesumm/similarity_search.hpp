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

#include <chrono>
#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "tracesumm/edit_distance.hpp"
#include "tracesumm/parallel.hpp"
#include "tracesumm/summarization.hpp"
#include "tracesumm/trace_model.hpp"

namespace tracesumm {

/// FNV-1a over everything that determines a corpus summary.
inline std::uint64_t content_digest(const SymbolCorpus& corpus, const MappingFunction& f, bool reduced) {
    std::uint64_t h = 1469598103934665603ULL;
    auto mix = [&h](std::uint64_t v) {
        for (int b = 0; b < 8; ++b) {
            h ^= (v >> (8 * b)) & 0xFFu;
            h *= 1099511628211ULL;
        }
    };
    mix(reduced ? 1 : 0);
    mix(f.table().size());
    for (Symbol s : f.table()) {
        mix(s);
    }
    mix(corpus.sequences.size());
    for (const auto& seq : corpus.sequences) {
        mix(seq.size());
        for (Symbol s : seq) {
            mix(s);
        }
    }
    return h;
}

/// Summaries of every corpus sequence under one mapping, computed once per
/// (corpus, mapping, reduced) digest and shared read-only afterwards.
class SummaryCache {
public:
    using Summaries = std::vector<SymbolSequence>;

    std::shared_ptr<const Summaries> get(const SymbolCorpus& corpus, const MappingFunction& f, bool reduced,
                                         unsigned threads = 0) {
        const std::uint64_t key = content_digest(corpus, f, reduced);
        {
            std::lock_guard lock(mutex_);
            if (auto it = entries_.find(key); it != entries_.end()) {
                return it->second;
            }
        }
        auto built = std::make_shared<Summaries>(corpus.size());
        parallel_for(corpus.size(), threads, [&](std::size_t i) {
            (*built)[i] = summarize_symbols(corpus.sequences[i], f, reduced);
        });
        std::lock_guard lock(mutex_);
        return entries_.try_emplace(key, std::move(built)).first->second;
    }

    std::size_t size() const {
        std::lock_guard lock(mutex_);
        return entries_.size();
    }

private:
    mutable std::mutex mutex_;
    std::unordered_map<std::uint64_t, std::shared_ptr<const Summaries>> entries_;
};

struct SearchOptions {
    std::size_t chi = 0;
    bool reduced = true;
    bool verify = false;
    unsigned threads = 0;
};

struct SearchHit {
    std::size_t index = 0;
    std::size_t summary_distance = 0;
    /// Set when verification ran and the original distance is within chi.
    std::optional<std::size_t> original_distance;
    bool verified = false;
};

struct SearchResult {
    std::vector<std::string> candidate_ids;
    /// Subset of candidate_ids; filled only when verification is enabled.
    std::vector<std::string> verified_ids;
    bool verification_enabled = false;
    std::vector<SearchHit> hits; // one per candidate, corpus order
    double prefilter_ms = 0.0;
    double verify_ms = 0.0;
};

namespace detail {
inline double elapsed_ms(std::chrono::steady_clock::time_point since) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - since).count();
}
} // namespace detail

/// Threshold search in summary space: every corpus trace whose summary lies
/// within chi of the query's summary is a candidate. With verification each
/// candidate is re-checked against chi on the original sequences.
inline SearchResult threshold_search(const SymbolCorpus& corpus, std::span<const Symbol> query,
                                     const MappingFunction& f, const SearchOptions& options,
                                     SummaryCache* cache = nullptr) {
    SummaryCache local;
    SummaryCache& summaries_cache = cache != nullptr ? *cache : local;

    SearchResult result;
    result.verification_enabled = options.verify;
    const auto start = std::chrono::steady_clock::now();
    const SymbolSequence query_summary = summarize_symbols(query, f, options.reduced);
    const auto summaries = summaries_cache.get(corpus, f, options.reduced, options.threads);
    std::vector<std::optional<std::size_t>> summary_distance(corpus.size());
    parallel_for(corpus.size(), options.threads, [&](std::size_t i) {
        summary_distance[i] = edit_distance_bounded(query_summary, (*summaries)[i], options.chi);
    });
    for (std::size_t i = 0; i < corpus.size(); ++i) {
        if (summary_distance[i]) {
            result.hits.push_back({i, *summary_distance[i], std::nullopt, false});
            result.candidate_ids.push_back(corpus.ids[i]);
        }
    }
    result.prefilter_ms = detail::elapsed_ms(start);

    if (options.verify) {
        const auto verify_start = std::chrono::steady_clock::now();
        parallel_for(result.hits.size(), options.threads, [&](std::size_t h) {
            auto& hit = result.hits[h];
            hit.original_distance = edit_distance_bounded(query, corpus.sequences[hit.index], options.chi);
            hit.verified = hit.original_distance.has_value();
        });
        for (const auto& hit : result.hits) {
            if (hit.verified) {
                result.verified_ids.push_back(corpus.ids[hit.index]);
            }
        }
        result.verify_ms = detail::elapsed_ms(verify_start);
    }
    return result;
}

inline SearchResult threshold_search(const SymbolCorpus& corpus, std::string_view query_id, const MappingFunction& f,
                                     const SearchOptions& options, SummaryCache* cache = nullptr) {
    const std::size_t q = corpus.index_of(query_id);
    return threshold_search(corpus, std::span<const Symbol>(corpus.sequences[q]), f, options, cache);
}

// ---------------------------------------------------------------------------
// All-pairs evaluation
// ---------------------------------------------------------------------------

/// Index of unordered pair (i, j), i < j, in a condensed upper triangle.
inline std::size_t condensed_index(std::size_t n, std::size_t i, std::size_t j) {
    return i * n - i * (i + 1) / 2 + (j - i - 1);
}

/// Original and summary edit distances for every unordered pair, plus the
/// length-rule classification of each pair.
struct PairDistances {
    std::size_t n = 0;
    std::vector<std::uint32_t> original;
    std::vector<std::uint32_t> summary;
    std::size_t holds = 0;
    std::size_t violates_by_rule = 0;
    std::size_t undetermined = 0;

    std::size_t pair_count() const noexcept { return original.size(); }
};

inline PairDistances compute_pair_distances(const SymbolCorpus& corpus, const MappingFunction& f, bool reduced,
                                            unsigned threads = 0, SummaryCache* cache = nullptr) {
    SummaryCache local;
    const auto summaries = (cache != nullptr ? *cache : local).get(corpus, f, reduced, threads);
    PairDistances out;
    out.n = corpus.size();
    const std::size_t pairs = out.n < 2 ? 0 : out.n * (out.n - 1) / 2;
    out.original.resize(pairs);
    out.summary.resize(pairs);
    std::vector<std::uint8_t> rule(pairs);
    parallel_for(out.n, threads, [&](std::size_t i) {
        for (std::size_t j = i + 1; j < out.n; ++j) {
            const std::size_t idx = condensed_index(out.n, i, j);
            out.original[idx] = static_cast<std::uint32_t>(edit_distance(corpus.sequences[i], corpus.sequences[j]));
            out.summary[idx] = static_cast<std::uint32_t>(edit_distance((*summaries)[i], (*summaries)[j]));
            rule[idx] = static_cast<std::uint8_t>(classify_contractive(corpus.sequences[i].size(),
                                                                       corpus.sequences[j].size(),
                                                                       (*summaries)[i].size(),
                                                                       (*summaries)[j].size())
                                                      .verdict);
        }
    });
    for (auto r : rule) {
        switch (static_cast<ContractiveRule>(r)) {
        case ContractiveRule::Holds: ++out.holds; break;
        case ContractiveRule::ViolatesByRule: ++out.violates_by_rule; break;
        case ContractiveRule::Undetermined: ++out.undetermined; break;
        }
    }
    return out;
}

struct SearchMetrics {
    std::size_t chi = 0;
    /// |candidates \ truth| / |candidates|, 0 when there are no candidates.
    double false_positive_rate = 0.0;
    /// |candidates & truth| / |truth|, 1 when the truth set is empty.
    double recall = 1.0;
    std::size_t violation_count = 0;
    double violation_fraction = 0.0;
    std::size_t pair_count = 0;
    std::size_t candidate_pairs = 0;
    std::size_t truth_pairs = 0;
    std::size_t holds = 0;
    std::size_t violates_by_rule = 0;
    std::size_t undetermined = 0;
};

inline SearchMetrics metrics_at(const PairDistances& d, std::size_t chi) {
    SearchMetrics m;
    m.chi = chi;
    m.pair_count = d.pair_count();
    std::size_t hits = 0;
    for (std::size_t p = 0; p < d.pair_count(); ++p) {
        const bool truth = d.original[p] <= chi;
        const bool candidate = d.summary[p] <= chi;
        m.truth_pairs += truth ? 1 : 0;
        m.candidate_pairs += candidate ? 1 : 0;
        hits += (truth && candidate) ? 1 : 0;
        m.violation_count += d.summary[p] > d.original[p] ? 1 : 0;
    }
    m.false_positive_rate =
        m.candidate_pairs == 0 ? 0.0 : static_cast<double>(m.candidate_pairs - hits) / static_cast<double>(m.candidate_pairs);
    m.recall = m.truth_pairs == 0 ? 1.0 : static_cast<double>(hits) / static_cast<double>(m.truth_pairs);
    m.violation_fraction =
        m.pair_count == 0 ? 0.0 : static_cast<double>(m.violation_count) / static_cast<double>(m.pair_count);
    m.holds = d.holds;
    m.violates_by_rule = d.violates_by_rule;
    m.undetermined = d.undetermined;
    return m;
}

/// All unordered pairs of the corpus (self-pairs excluded): false-positive
/// rate and recall of summary-space threshold search at chi, and the share of
/// pairs whose summary distance exceeds the original one.
inline SearchMetrics evaluate_pairs(const SymbolCorpus& corpus, const MappingFunction& f, std::size_t chi,
                                    bool reduced = true, unsigned threads = 0) {
    if (corpus.size() < 2) {
        throw ParameterError("similarity-search", "pair evaluation needs at least two traces");
    }
    return metrics_at(compute_pair_distances(corpus, f, reduced, threads), chi);
}

} // namespace tracesumm
