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
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tracesumm/edit_distance.hpp"
#include "tracesumm/error.hpp"
#include "tracesumm/parallel.hpp"
#include "tracesumm/similarity_search.hpp"
#include "tracesumm/summarization.hpp"
#include "tracesumm/trace_model.hpp"

namespace tracesumm {

/// Condensed upper triangle of pairwise distances between n traces.
class DistanceMatrix {
public:
    DistanceMatrix() = default;
    DistanceMatrix(std::size_t n, std::string space_tag)
        : n_(n), values_(n < 2 ? 0 : n * (n - 1) / 2, 0.0), space_tag_(std::move(space_tag)) {}

    std::size_t size() const noexcept { return n_; }
    const std::string& space_tag() const noexcept { return space_tag_; }
    const std::vector<double>& condensed() const noexcept { return values_; }

    double operator()(std::size_t i, std::size_t j) const {
        if (i == j) {
            return 0.0;
        }
        if (i > j) {
            std::swap(i, j);
        }
        return values_[condensed_index(n_, i, j)];
    }

    void set(std::size_t i, std::size_t j, double value) {
        if (i > j) {
            std::swap(i, j);
        }
        values_[condensed_index(n_, i, j)] = value;
    }

private:
    std::size_t n_ = 0;
    std::vector<double> values_;
    std::string space_tag_ = "original";
};

inline DistanceMatrix distance_matrix(std::span<const SymbolSequence> sequences, std::string space_tag,
                                      unsigned threads = 0) {
    DistanceMatrix out(sequences.size(), std::move(space_tag));
    const std::size_t n = sequences.size();
    parallel_for(n, threads, [&](std::size_t i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            out.set(i, j, static_cast<double>(edit_distance(sequences[i], sequences[j])));
        }
    });
    return out;
}

/// Pairwise edit distances of the corpus, in the original space when f is
/// absent, else between (optionally reduced) f-summaries.
inline DistanceMatrix distance_matrix(const SymbolCorpus& corpus, const MappingFunction* f, bool reduced,
                                      unsigned threads = 0) {
    if (corpus.size() < 2) {
        throw ParameterError("trace-clustering", "distance matrix needs at least two traces");
    }
    if (f == nullptr) {
        return distance_matrix(std::span<const SymbolSequence>(corpus.sequences), "original", threads);
    }
    std::vector<SymbolSequence> summaries(corpus.size());
    parallel_for(corpus.size(), threads,
                 [&](std::size_t i) { summaries[i] = summarize_symbols(corpus.sequences[i], *f, reduced); });
    const std::string tag = "summary(k=" + std::to_string(f->summary_alphabet_size()) + "," +
                            std::string(to_string(f->kind())) + (reduced ? ",reduced" : "") + ")";
    return distance_matrix(std::span<const SymbolSequence>(summaries), tag, threads);
}

enum class Linkage { Average, Complete };

inline Linkage linkage_from_string(std::string_view name) {
    if (name == "average") return Linkage::Average;
    if (name == "complete") return Linkage::Complete;
    throw ParameterError("trace-clustering", "unknown linkage '" + std::string(name) + "'");
}

struct ClusterMerge {
    std::size_t left = 0;  // smallest member of the first cluster
    std::size_t right = 0; // smallest member of the second cluster
    double height = 0.0;
    std::size_t size = 0;  // size of the merged cluster
};

struct Clustering {
    std::vector<std::size_t> assignments; // trace index -> dense cluster id
    std::size_t cluster_count = 0;
    std::vector<ClusterMerge> dendrogram;
};

/// Agglomerative clustering down to `clusters` groups. Each merge takes the
/// closest pair; ties go to the lexicographically smallest pair of cluster
/// ids, a cluster's id being its smallest member. Final ids are dense and
/// ordered by smallest member.
inline Clustering hierarchical_cluster(const DistanceMatrix& matrix, std::size_t clusters,
                                       Linkage linkage = Linkage::Average) {
    const std::size_t n = matrix.size();
    if (clusters < 1 || clusters > n) {
        throw ParameterError("trace-clustering", "cluster count must be in [1, " + std::to_string(n) + "], got " +
                                                     std::to_string(clusters));
    }
    // Full working copy; row i only ever holds live clusters j > i.
    std::vector<double> d(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            d[i * n + j] = d[j * n + i] = matrix(i, j);
        }
    }
    std::vector<bool> active(n, true);
    std::vector<std::size_t> size(n, 1);
    constexpr double kInf = std::numeric_limits<double>::infinity();
    std::vector<double> row_min(n, kInf);
    std::vector<std::size_t> row_arg(n, SIZE_MAX);

    auto rescan = [&](std::size_t i) {
        row_min[i] = kInf;
        row_arg[i] = SIZE_MAX;
        for (std::size_t j = i + 1; j < n; ++j) {
            if (active[j] && d[i * n + j] < row_min[i]) {
                row_min[i] = d[i * n + j];
                row_arg[i] = j;
            }
        }
    };
    for (std::size_t i = 0; i < n; ++i) {
        rescan(i);
    }

    std::vector<std::size_t> slot_of(n);
    for (std::size_t i = 0; i < n; ++i) {
        slot_of[i] = i;
    }

    Clustering out;
    for (std::size_t remaining = n; remaining > clusters; --remaining) {
        std::size_t a = SIZE_MAX;
        for (std::size_t i = 0; i < n; ++i) {
            if (active[i] && row_arg[i] != SIZE_MAX && (a == SIZE_MAX || row_min[i] < row_min[a])) {
                a = i;
            }
        }
        const std::size_t b = row_arg[a];
        const double height = row_min[a];
        const double wa = static_cast<double>(size[a]);
        const double wb = static_cast<double>(size[b]);

        active[b] = false;
        for (std::size_t c = 0; c < n; ++c) {
            if (!active[c] || c == a) {
                continue;
            }
            const double da = d[a * n + c];
            const double db = d[b * n + c];
            const double merged = linkage == Linkage::Average ? (wa * da + wb * db) / (wa + wb) : std::max(da, db);
            d[a * n + c] = d[c * n + a] = merged;
        }
        size[a] += size[b];
        out.dendrogram.push_back({a, b, height, size[a]});
        for (auto& s : slot_of) {
            if (s == b) {
                s = a;
            }
        }

        rescan(a);
        for (std::size_t i = 0; i < a; ++i) {
            if (!active[i]) {
                continue;
            }
            if (row_arg[i] == a || row_arg[i] == b) {
                rescan(i);
            } else {
                const double v = d[i * n + a];
                if (v < row_min[i] || (v == row_min[i] && a < row_arg[i])) {
                    row_min[i] = v;
                    row_arg[i] = a;
                }
            }
        }
        for (std::size_t i = a + 1; i < n; ++i) {
            if (active[i] && row_arg[i] == b) {
                rescan(i);
            }
        }
    }

    std::vector<std::size_t> dense(n, SIZE_MAX);
    out.assignments.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t slot = slot_of[i];
        if (dense[slot] == SIZE_MAX) {
            dense[slot] = out.cluster_count++;
        }
        out.assignments[i] = dense[slot];
    }
    return out;
}

// ---------------------------------------------------------------------------
// Quality
// ---------------------------------------------------------------------------

/// Adjusted Rand Index of two labelings of the same items. Two labelings
/// that are both trivial (all singletons or one cluster) score 1 when
/// identical and 0 otherwise.
inline double adjusted_rand_index(std::span<const std::size_t> a, std::span<const std::size_t> b) {
    if (a.size() != b.size()) {
        throw ConsistencyError("trace-clustering", "labelings cover different item counts");
    }
    const std::size_t n = a.size();
    auto choose2 = [](double x) { return x * (x - 1.0) / 2.0; };
    std::map<std::pair<std::size_t, std::size_t>, std::size_t> joint;
    std::map<std::size_t, std::size_t> rows;
    std::map<std::size_t, std::size_t> cols;
    for (std::size_t i = 0; i < n; ++i) {
        ++joint[{a[i], b[i]}];
        ++rows[a[i]];
        ++cols[b[i]];
    }
    double index = 0.0;
    for (const auto& [key, count] : joint) {
        index += choose2(static_cast<double>(count));
    }
    double row_sum = 0.0;
    for (const auto& [key, count] : rows) {
        row_sum += choose2(static_cast<double>(count));
    }
    double col_sum = 0.0;
    for (const auto& [key, count] : cols) {
        col_sum += choose2(static_cast<double>(count));
    }
    const double total = choose2(static_cast<double>(n));
    const double expected = total == 0.0 ? 0.0 : row_sum * col_sum / total;
    const double max_index = 0.5 * (row_sum + col_sum);
    if (max_index == expected) {
        return index == max_index ? 1.0 : 0.0;
    }
    return (index - expected) / (max_index - expected);
}

/// Mean silhouette over all items, or nullopt when it is undefined (fewer
/// than two clusters, or only singletons). Items in singleton clusters
/// contribute 0.
inline std::optional<double> mean_silhouette(const DistanceMatrix& matrix, std::span<const std::size_t> assignments,
                                             unsigned threads = 0) {
    const std::size_t n = matrix.size();
    if (assignments.size() != n) {
        throw ConsistencyError("trace-clustering", "assignment count differs from matrix size");
    }
    const std::size_t k = n == 0 ? 0 : *std::max_element(assignments.begin(), assignments.end()) + 1;
    std::vector<std::size_t> counts(k, 0);
    for (auto c : assignments) {
        ++counts[c];
    }
    if (k < 2 || std::all_of(counts.begin(), counts.end(), [](std::size_t c) { return c <= 1; })) {
        return std::nullopt;
    }
    std::vector<double> s(n, 0.0);
    parallel_for(n, threads, [&](std::size_t i) {
        const std::size_t own = assignments[i];
        if (counts[own] <= 1) {
            return;
        }
        std::vector<double> sums(k, 0.0);
        for (std::size_t j = 0; j < n; ++j) {
            if (j != i) {
                sums[assignments[j]] += matrix(i, j);
            }
        }
        const double a = sums[own] / static_cast<double>(counts[own] - 1);
        double b = std::numeric_limits<double>::infinity();
        for (std::size_t c = 0; c < k; ++c) {
            if (c != own && counts[c] > 0) {
                b = std::min(b, sums[c] / static_cast<double>(counts[c]));
            }
        }
        const double denom = std::max(a, b);
        s[i] = denom == 0.0 ? 0.0 : (b - a) / denom;
    });
    double total = 0.0;
    for (double v : s) {
        total += v;
    }
    return total / static_cast<double>(n);
}

/// Sum over clusters of (|C| / n) * mean pairwise distance inside C;
/// singleton clusters contribute 0.
inline double weighted_intra_distance(const DistanceMatrix& matrix, std::span<const std::size_t> assignments) {
    const std::size_t n = matrix.size();
    if (n == 0) {
        return 0.0;
    }
    const std::size_t k = *std::max_element(assignments.begin(), assignments.end()) + 1;
    std::vector<double> sum(k, 0.0);
    std::vector<std::size_t> count(k, 0);
    for (std::size_t i = 0; i < n; ++i) {
        ++count[assignments[i]];
        for (std::size_t j = i + 1; j < n; ++j) {
            if (assignments[i] == assignments[j]) {
                sum[assignments[i]] += matrix(i, j);
            }
        }
    }
    double out = 0.0;
    for (std::size_t c = 0; c < k; ++c) {
        if (count[c] < 2) {
            continue;
        }
        const double pairs = static_cast<double>(count[c]) * static_cast<double>(count[c] - 1) / 2.0;
        out += static_cast<double>(count[c]) / static_cast<double>(n) * (sum[c] / pairs);
    }
    return out;
}

struct QualityReport {
    std::size_t cluster_count = 0;
    std::string space;
    std::optional<double> silhouette;
    double weighted_intra = 0.0;
    std::optional<double> ari;
    std::vector<std::string> warnings;
};

/// Quality of `clustering` measured on ORIGINAL-space distances, with ARI
/// against `reference` when one is given.
inline QualityReport weighted_cluster_quality(const Clustering& clustering, const DistanceMatrix& original_matrix,
                                              const std::optional<std::vector<std::size_t>>& reference = std::nullopt,
                                              std::string space = "original", unsigned threads = 0) {
    if (clustering.assignments.size() != original_matrix.size()) {
        throw ConsistencyError("trace-clustering", "clustering and matrix cover different corpora");
    }
    QualityReport report;
    report.cluster_count = clustering.cluster_count;
    report.space = std::move(space);
    report.silhouette = mean_silhouette(original_matrix, clustering.assignments, threads);
    if (!report.silhouette) {
        report.warnings.emplace_back("silhouette undefined: fewer than two clusters or singletons only");
    }
    report.weighted_intra = weighted_intra_distance(original_matrix, clustering.assignments);
    if (reference) {
        report.ari = adjusted_rand_index(clustering.assignments, *reference);
    }
    return report;
}

} // namespace tracesumm
