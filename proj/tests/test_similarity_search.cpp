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

#include <algorithm>
#include <random>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "tracesumm/edit_distance.hpp"
#include "tracesumm/similarity_search.hpp"
#include "tracesumm/summarization.hpp"
#include "tracesumm/synthetic.hpp"

namespace ts = tracesumm;

namespace {

ts::SymbolCorpus random_corpus(std::uint64_t seed, std::size_t n, std::size_t alphabet, std::size_t max_len) {
    std::mt19937_64 rng(seed);
    ts::SymbolCorpus corpus;
    corpus.alphabet_size = alphabet;
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t len = rng() % (max_len + 1);
        ts::SymbolSequence s;
        for (std::size_t j = 0; j < len; ++j) {
            s.push_back(static_cast<ts::Symbol>(rng() % alphabet));
        }
        corpus.ids.push_back("q" + std::to_string(i));
        corpus.sequences.push_back(std::move(s));
    }
    return corpus;
}

// Plain Wagner-Fischer used only as a reference.
std::size_t reference_distance(const ts::SymbolSequence& a, const ts::SymbolSequence& b) {
    std::vector<std::vector<std::size_t>> d(a.size() + 1, std::vector<std::size_t>(b.size() + 1));
    for (std::size_t i = 0; i <= a.size(); ++i) d[i][0] = i;
    for (std::size_t j = 0; j <= b.size(); ++j) d[0][j] = j;
    for (std::size_t i = 1; i <= a.size(); ++i) {
        for (std::size_t j = 1; j <= b.size(); ++j) {
            d[i][j] = std::min({d[i - 1][j] + 1, d[i][j - 1] + 1, d[i - 1][j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1)});
        }
    }
    return d[a.size()][b.size()];
}

std::vector<std::string> brute_force(const ts::SymbolCorpus& corpus, std::size_t q, std::size_t chi) {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < corpus.size(); ++i) {
        if (reference_distance(corpus.sequences[q], corpus.sequences[i]) <= chi) {
            out.push_back(corpus.ids[i]);
        }
    }
    return out;
}

bool includes(const std::vector<std::string>& outer, const std::vector<std::string>& inner) {
    for (const auto& id : inner) {
        if (std::find(outer.begin(), outer.end(), id) == outer.end()) {
            return false;
        }
    }
    return true;
}

} // namespace

TEST(ThresholdSearch, IdentityChiZeroFindsExactDuplicates) {
    ts::SymbolCorpus corpus;
    corpus.alphabet_size = 3;
    corpus.ids = {"x", "y", "z", "w"};
    corpus.sequences = {{0, 1, 2}, {0, 1}, {0, 1, 2}, {0, 0, 1, 2}};
    const auto f = ts::MappingFunction::identity(3);
    ts::SearchOptions options;
    options.chi = 0;
    options.reduced = false;
    const auto r = ts::threshold_search(corpus, "x", f, options);
    EXPECT_EQ(r.candidate_ids, (std::vector<std::string>{"x", "z"}));
    EXPECT_TRUE(r.verified_ids.empty());
    EXPECT_FALSE(r.verification_enabled);
}

TEST(ThresholdSearch, ReducedIdentityCollapsesRepeats) {
    ts::SymbolCorpus corpus;
    corpus.alphabet_size = 3;
    corpus.ids = {"x", "y", "z", "w"};
    corpus.sequences = {{0, 1, 2}, {0, 1}, {0, 1, 2}, {0, 0, 1, 2}};
    const auto f = ts::MappingFunction::identity(3);
    ts::SearchOptions options;
    options.chi = 0;
    options.verify = true;
    const auto r = ts::threshold_search(corpus, "x", f, options);
    EXPECT_EQ(r.candidate_ids, (std::vector<std::string>{"x", "z", "w"}));
    EXPECT_EQ(r.verified_ids, (std::vector<std::string>{"x", "z"}));
    ASSERT_EQ(r.hits.size(), 3u);
    EXPECT_FALSE(r.hits[2].verified);
    EXPECT_FALSE(r.hits[2].original_distance.has_value());
    EXPECT_EQ(r.hits[0].original_distance, 0u);
}

TEST(ThresholdSearch, SingleTopicMakesEverythingACandidate) {
    auto corpus = random_corpus(3, 25, 6, 10);
    const auto f = ts::build_random_mapping(6, 1, 0);
    ts::SearchOptions options;
    options.chi = 1; // every reduced summary is empty or a single symbol
    const auto r = ts::threshold_search(corpus, "q0", f, options);
    EXPECT_EQ(r.candidate_ids, corpus.ids);
}

TEST(ThresholdSearch, NonReducedVerifiedEqualsBruteForce) {
    for (std::uint64_t seed = 0; seed < 15; ++seed) {
        const auto corpus = random_corpus(seed, 40, 5, 9);
        const auto f = ts::build_random_mapping(5, 1 + seed % 4, seed);
        for (std::size_t chi : {0u, 1u, 2u, 4u}) {
            ts::SearchOptions options;
            options.chi = chi;
            options.reduced = false;
            options.verify = true;
            const std::size_t q = seed % corpus.size();
            const auto r = ts::threshold_search(corpus, corpus.ids[q], f, options);
            const auto truth = brute_force(corpus, q, chi);
            EXPECT_EQ(r.verified_ids, truth) << "seed " << seed << " chi " << chi;
            EXPECT_TRUE(includes(r.candidate_ids, truth));
            for (const auto& hit : r.hits) {
                const auto expected = reference_distance(
                    ts::summarize_symbols(corpus.sequences[q], f, false),
                    ts::summarize_symbols(corpus.sequences[hit.index], f, false));
                EXPECT_EQ(hit.summary_distance, expected);
                EXPECT_LE(hit.summary_distance, chi);
            }
        }
    }
}

TEST(ThresholdSearch, VerifiedIsAlwaysSubsetOfTruthAndCandidates) {
    const auto corpus = random_corpus(8, 60, 6, 12);
    const auto f = ts::build_random_mapping(6, 3, 8);
    ts::SearchOptions options;
    options.chi = 3;
    options.verify = true;
    const auto r = ts::threshold_search(corpus, "q5", f, options);
    EXPECT_TRUE(includes(r.candidate_ids, r.verified_ids));
    EXPECT_TRUE(includes(brute_force(corpus, 5, 3), r.verified_ids));
}

TEST(ThresholdSearch, CandidatesGrowWithChi) {
    const auto corpus = random_corpus(11, 80, 7, 14);
    const auto f = ts::build_random_mapping(7, 3, 2);
    ts::SummaryCache cache;
    std::vector<std::string> previous;
    for (std::size_t chi = 0; chi <= 10; ++chi) {
        ts::SearchOptions options;
        options.chi = chi;
        const auto r = ts::threshold_search(corpus, "q7", f, options, &cache);
        EXPECT_TRUE(includes(r.candidate_ids, previous)) << chi;
        previous = r.candidate_ids;
    }
    EXPECT_EQ(cache.size(), 1u);
}

TEST(ThresholdSearch, ExternalQuerySequence) {
    const auto corpus = random_corpus(2, 20, 4, 6);
    const auto f = ts::MappingFunction::identity(4);
    ts::SearchOptions options;
    options.chi = 2;
    options.reduced = false;
    const ts::SymbolSequence query = corpus.sequences[4];
    const auto r = ts::threshold_search(corpus, std::span<const ts::Symbol>(query), f, options);
    EXPECT_EQ(r.candidate_ids, brute_force(corpus, 4, 2));
}

TEST(ThresholdSearch, UnknownQueryIsLookupError) {
    const auto corpus = random_corpus(2, 5, 4, 6);
    EXPECT_THROW(ts::threshold_search(corpus, "nope", ts::MappingFunction::identity(4), {}), ts::LookupError);
}

TEST(SummaryCache, SharesAndSeparatesEntries) {
    const auto corpus = random_corpus(4, 10, 4, 6);
    ts::SummaryCache cache;
    const auto f = ts::MappingFunction::identity(4);
    const auto a = cache.get(corpus, f, true);
    const auto b = cache.get(corpus, f, true);
    EXPECT_EQ(a.get(), b.get());
    cache.get(corpus, f, false);
    cache.get(corpus, ts::build_random_mapping(4, 2, 0), true);
    EXPECT_EQ(cache.size(), 3u);
    for (std::size_t i = 0; i < corpus.size(); ++i) {
        EXPECT_EQ((*a)[i], ts::summarize_symbols(corpus.sequences[i], f, true));
    }
}

TEST(CondensedIndex, EnumeratesPairsInOrder) {
    const std::size_t n = 7;
    std::size_t expected = 0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            EXPECT_EQ(ts::condensed_index(n, i, j), expected++);
        }
    }
}

TEST(EvaluatePairs, IdentityNonReducedIsPerfect) {
    const auto corpus = random_corpus(5, 30, 5, 8);
    for (std::size_t chi : {0u, 2u, 5u}) {
        const auto m = ts::evaluate_pairs(corpus, ts::MappingFunction::identity(5), chi, false);
        EXPECT_EQ(m.false_positive_rate, 0.0);
        EXPECT_EQ(m.recall, 1.0);
        EXPECT_EQ(m.violation_count, 0u);
        EXPECT_EQ(m.pair_count, 30u * 29u / 2u);
        EXPECT_EQ(m.candidate_pairs, m.truth_pairs);
    }
}

TEST(EvaluatePairs, MatchesPairwiseOracle) {
    const auto corpus = random_corpus(9, 25, 6, 10);
    const auto f = ts::build_random_mapping(6, 3, 1);
    const std::size_t chi = 3;
    std::size_t truth = 0, candidates = 0, both = 0, violations = 0;
    for (std::size_t i = 0; i < corpus.size(); ++i) {
        for (std::size_t j = i + 1; j < corpus.size(); ++j) {
            const auto orig = reference_distance(corpus.sequences[i], corpus.sequences[j]);
            const auto summ = reference_distance(ts::summarize_symbols(corpus.sequences[i], f, true),
                                                 ts::summarize_symbols(corpus.sequences[j], f, true));
            truth += orig <= chi;
            candidates += summ <= chi;
            both += orig <= chi && summ <= chi;
            violations += summ > orig;
        }
    }
    const auto m = ts::evaluate_pairs(corpus, f, chi);
    EXPECT_EQ(m.truth_pairs, truth);
    EXPECT_EQ(m.candidate_pairs, candidates);
    EXPECT_EQ(m.violation_count, violations);
    EXPECT_DOUBLE_EQ(m.false_positive_rate, candidates == 0 ? 0.0 : double(candidates - both) / double(candidates));
    EXPECT_DOUBLE_EQ(m.recall, truth == 0 ? 1.0 : double(both) / double(truth));
    EXPECT_EQ(m.holds + m.violates_by_rule + m.undetermined, m.pair_count);
}

TEST(EvaluatePairs, NonReducedNeverViolates) {
    ts::SyntheticSpec spec;
    spec.traces = 60;
    const auto log = ts::generate_synthetic_log(spec).log;
    const auto corpus = ts::make_corpus(log);
    const auto f = ts::build_random_mapping(corpus.alphabet_size, 5, 3);
    const auto m = ts::evaluate_pairs(corpus, f, 5, false);
    EXPECT_EQ(m.violation_count, 0u);
    EXPECT_EQ(m.recall, 1.0);
}

TEST(EvaluatePairs, NeedsTwoTraces) {
    const auto corpus = random_corpus(1, 1, 3, 3);
    EXPECT_THROW(ts::evaluate_pairs(corpus, ts::MappingFunction::identity(3), 1), ts::ParameterError);
}
