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
#include <chrono>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "tracesumm/edit_distance.hpp"
#include "tracesumm/error.hpp"
#include "tracesumm/parallel.hpp"
#include "tracesumm/scheme.hpp"
#include "tracesumm/summarization.hpp"
#include "tracesumm/trace_model.hpp"

namespace tracesumm {

struct BenchRow {
    std::string scheme; // "original" for the baseline row
    std::size_t k = 0;  // summary alphabet size actually produced
    double mean_length = 0.0;
    double wall_ms = 0.0; // median over repetitions
    std::vector<double> samples_ms;
    std::size_t pair_count = 0;
};

struct BenchReport {
    std::vector<BenchRow> rows;
    unsigned threads = 1;
    std::size_t traces = 0;
    std::size_t repetitions = 3;
};

/// Wall time of every unordered-pair edit distance over `sequences`.
inline double time_allpairs_ms(std::span<const SymbolSequence> sequences, unsigned threads) {
    const std::size_t n = sequences.size();
    std::vector<std::uint64_t> partial(n, 0);
    const auto start = std::chrono::steady_clock::now();
    parallel_for(n, threads, [&](std::size_t i) {
        std::uint64_t sum = 0;
        for (std::size_t j = i + 1; j < n; ++j) {
            sum += edit_distance(sequences[i], sequences[j]);
        }
        partial[i] = sum;
    });
    const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    // Keep the distances observable so the work cannot be dropped.
    volatile std::uint64_t sink = 0;
    for (auto p : partial) {
        sink = sink + p;
    }
    return std::max(ms, 1e-6);
}

namespace detail {
inline BenchRow bench_sequences(std::string scheme, std::size_t k, std::span<const SymbolSequence> sequences,
                                unsigned threads, std::size_t repetitions) {
    BenchRow row;
    row.scheme = std::move(scheme);
    row.k = k;
    const std::size_t n = sequences.size();
    row.pair_count = n * (n - 1) / 2;
    double total = 0.0;
    for (const auto& s : sequences) {
        total += static_cast<double>(s.size());
    }
    row.mean_length = total / static_cast<double>(n);
    time_allpairs_ms(sequences, threads); // warm-up
    for (std::size_t r = 0; r < repetitions; ++r) {
        row.samples_ms.push_back(time_allpairs_ms(sequences, threads));
    }
    std::vector<double> sorted = row.samples_ms;
    std::sort(sorted.begin(), sorted.end());
    row.wall_ms = sorted[sorted.size() / 2];
    return row;
}
} // namespace detail

/// Times all-pairs edit distance in the original space and under each
/// scheme's reduced summaries. Mapping construction and summarization are
/// not timed.
inline BenchReport benchmark_allpairs(const TraceSet& trace_set, std::span<const SchemeSpec> schemes,
                                      unsigned threads = 0, std::size_t repetitions = 3) {
    if (trace_set.size() < 2) {
        throw ParameterError("cli-bench", "benchmark needs at least two traces");
    }
    if (repetitions < 1) {
        throw ParameterError("cli-bench", "benchmark needs at least one repetition");
    }
    BenchReport report;
    report.threads = resolve_threads(threads);
    report.traces = trace_set.size();
    report.repetitions = repetitions;
    const SymbolCorpus corpus = make_corpus(trace_set);
    report.rows.push_back(detail::bench_sequences("original", corpus.alphabet_size, corpus.sequences, report.threads,
                                                  repetitions));
    for (const auto& spec : schemes) {
        const MappingFunction f = build_scheme_mapping(trace_set, spec);
        std::vector<SymbolSequence> summaries(corpus.size());
        parallel_for(corpus.size(), report.threads,
                     [&](std::size_t i) { summaries[i] = summarize_symbols(corpus.sequences[i], f, true); });
        report.rows.push_back(detail::bench_sequences(spec.describe(), f.summary_alphabet_size(), summaries,
                                                      report.threads, repetitions));
    }
    return report;
}

/// Deterministic part of a report (no timings).
inline nlohmann::json bench_shape_json(const BenchReport& report) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& row : report.rows) {
        rows.push_back({{"scheme", row.scheme}, {"k", row.k}, {"mean_length", row.mean_length},
                        {"pair_count", row.pair_count}});
    }
    return {{"traces", report.traces}, {"repetitions", report.repetitions}, {"rows", std::move(rows)}};
}

inline nlohmann::json bench_timing_json(const BenchReport& report) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& row : report.rows) {
        rows.push_back({{"scheme", row.scheme}, {"k", row.k}, {"wall_ms", row.wall_ms}, {"samples_ms", row.samples_ms}});
    }
    return {{"threads", report.threads}, {"rows", std::move(rows)}};
}

} // namespace tracesumm
