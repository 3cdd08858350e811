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
#include <ostream>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

#include "tracesumm/error.hpp"
#include "tracesumm/summarization.hpp"
#include "tracesumm/trace_model.hpp"

namespace tracesumm {

// ---------------------------------------------------------------------------
// Vectorization
// ---------------------------------------------------------------------------

/// Per-trace weights over the dimensions (values) of a base attribute.
/// matrix(p, i) = (1 + ln tf) * ln(|S| / df_i) when dimension i occurs in
/// trace p, else 0.
struct TopicVectorization {
    std::string base_attribute;
    std::size_t base_index = 0;
    Eigen::MatrixXi tf;          // |S| x |A*|
    std::vector<std::size_t> df; // per dimension
    Eigen::MatrixXd matrix;      // |S| x |A*|
};

/// The attribute with the most distinct values (first one on ties).
inline std::string default_base_attribute(const AttributeSchema& schema) {
    if (schema.size() == 0) {
        throw SchemaError("topic-model", "schema has no attributes");
    }
    std::size_t best = 0;
    for (std::size_t a = 1; a < schema.size(); ++a) {
        if (schema.dictionary(a).cardinality() > schema.dictionary(best).cardinality()) {
            best = a;
        }
    }
    return schema.name(best);
}

inline TopicVectorization vectorize(const TraceSet& trace_set, std::string_view base_attribute) {
    TopicVectorization out;
    out.base_attribute = std::string(base_attribute);
    out.base_index = trace_set.schema.index_of(base_attribute);
    if (trace_set.empty()) {
        throw EmptyInputError("topic-model", "cannot vectorize an empty trace set");
    }
    const auto rows = static_cast<Eigen::Index>(trace_set.size());
    const auto dims = static_cast<Eigen::Index>(trace_set.schema.dictionary(out.base_index).cardinality());
    out.tf = Eigen::MatrixXi::Zero(rows, dims);
    for (Eigen::Index p = 0; p < rows; ++p) {
        for (const auto& event : trace_set.traces[static_cast<std::size_t>(p)].events) {
            ++out.tf(p, static_cast<Eigen::Index>(event.values[out.base_index]));
        }
    }
    out.df.assign(static_cast<std::size_t>(dims), 0);
    for (Eigen::Index i = 0; i < dims; ++i) {
        out.df[static_cast<std::size_t>(i)] = static_cast<std::size_t>((out.tf.col(i).array() > 0).count());
    }
    out.matrix = Eigen::MatrixXd::Zero(rows, dims);
    const double total = static_cast<double>(rows);
    for (Eigen::Index i = 0; i < dims; ++i) {
        const std::size_t df = out.df[static_cast<std::size_t>(i)];
        if (df == 0) {
            continue;
        }
        const double idf = std::log(total / static_cast<double>(df));
        for (Eigen::Index p = 0; p < rows; ++p) {
            const int tf = out.tf(p, i);
            if (tf > 0) {
                out.matrix(p, i) = (1.0 + std::log(static_cast<double>(tf))) * idf;
            }
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Dimensionality reduction
// ---------------------------------------------------------------------------

enum class ReductionMethod { Svd, Nmf };

inline std::string_view to_string(ReductionMethod method) { return method == ReductionMethod::Svd ? "svd" : "nmf"; }

inline ReductionMethod reduction_method_from_string(std::string_view name) {
    if (name == "svd") return ReductionMethod::Svd;
    if (name == "nmf") return ReductionMethod::Nmf;
    throw ParameterError("topic-model", "unknown reduction method '" + std::string(name) + "'");
}

/// M ~= m_prime * w^T with m_prime |S| x k and w |A*| x k.
struct Reduction {
    Eigen::MatrixXd m_prime;
    Eigen::MatrixXd w;
    /// NMF only: squared Frobenius residual after each iteration.
    std::vector<double> objective_history;
};

struct ReductionOptions {
    std::uint64_t seed = 0;
    std::size_t svd_oversampling = 8;
    std::size_t svd_power_iterations = 4;
    std::size_t nmf_max_iterations = 500;
    double nmf_tolerance = 1e-6;
};

namespace detail {

inline Eigen::MatrixXd orthonormal_basis(const Eigen::MatrixXd& y) {
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(y);
    return qr.householderQ() * Eigen::MatrixXd::Identity(y.rows(), y.cols());
}

// Randomized range finder with power iterations, then an exact SVD of the
// small projected matrix.
inline Reduction randomized_svd(const Eigen::MatrixXd& m, Eigen::Index k, const ReductionOptions& options) {
    const Eigen::Index sketch =
        std::min<Eigen::Index>(k + static_cast<Eigen::Index>(options.svd_oversampling), std::min(m.rows(), m.cols()));
    std::mt19937_64 rng(options.seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    Eigen::MatrixXd omega(m.cols(), sketch);
    for (Eigen::Index c = 0; c < omega.cols(); ++c) {
        for (Eigen::Index r = 0; r < omega.rows(); ++r) {
            omega(r, c) = gauss(rng);
        }
    }
    Eigen::MatrixXd q = orthonormal_basis(m * omega);
    for (std::size_t it = 0; it < options.svd_power_iterations; ++it) {
        const Eigen::MatrixXd z = orthonormal_basis(m.transpose() * q);
        q = orthonormal_basis(m * z);
    }
    const Eigen::MatrixXd b = q.transpose() * m;
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(b, Eigen::ComputeThinU | Eigen::ComputeThinV);
    Reduction out;
    const Eigen::MatrixXd u = q * svd.matrixU().leftCols(k);
    out.m_prime = u * svd.singularValues().head(k).asDiagonal();
    out.w = svd.matrixV().leftCols(k);
    return out;
}

// Multiplicative updates for min ||M - A B^T||_F^2 with A, B >= 0.
inline Reduction nmf(const Eigen::MatrixXd& m, Eigen::Index k, const ReductionOptions& options) {
    std::mt19937_64 rng(options.seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    auto init = [&](Eigen::Index rows) {
        Eigen::MatrixXd x(rows, k);
        for (Eigen::Index c = 0; c < k; ++c) {
            for (Eigen::Index r = 0; r < rows; ++r) {
                x(r, c) = 1.0 - unit(rng); // (0, 1]
            }
        }
        return x;
    };
    Eigen::MatrixXd a = init(m.rows());
    Eigen::MatrixXd b = init(m.cols());
    auto residual = [&] { return (m - a * b.transpose()).squaredNorm(); };
    auto scale = [](Eigen::MatrixXd& x, const Eigen::MatrixXd& num, const Eigen::MatrixXd& den) {
        for (Eigen::Index c = 0; c < x.cols(); ++c) {
            for (Eigen::Index r = 0; r < x.rows(); ++r) {
                if (den(r, c) > 0.0) {
                    x(r, c) *= num(r, c) / den(r, c);
                }
            }
        }
    };

    Reduction out;
    double previous = residual();
    for (std::size_t it = 0; it < options.nmf_max_iterations; ++it) {
        scale(a, m * b, a * (b.transpose() * b));
        scale(b, m.transpose() * a, b * (a.transpose() * a));
        const double current = residual();
        out.objective_history.push_back(current);
        if (current == 0.0 || (previous - current) / previous < options.nmf_tolerance) {
            break;
        }
        previous = current;
    }
    out.m_prime = std::move(a);
    out.w = std::move(b);
    return out;
}

} // namespace detail

/// Rank-k factorization of a non-negative matrix. SVD: randomized subspace
/// iteration, m_prime = U*Sigma, w = V. NMF: multiplicative updates from a
/// seeded uniform (0, 1] start.
inline Reduction reduce_dimensions(const Eigen::MatrixXd& m, std::size_t k, ReductionMethod method,
                                   const ReductionOptions& options = {}) {
    const auto limit = static_cast<std::size_t>(std::min(m.rows(), m.cols()));
    if (k < 1 || k > limit) {
        throw ParameterError("topic-model", "reduction rank must be in [1, " + std::to_string(limit) + "], got " +
                                                std::to_string(k));
    }
    if ((m.array() < 0.0).any()) {
        throw ParameterError("topic-model", "reduction input must be non-negative");
    }
    if (m.isZero(0.0)) {
        throw DegenerateInputError("topic-model", "reduction input is all zero");
    }
    const auto rank = static_cast<Eigen::Index>(k);
    return method == ReductionMethod::Svd ? detail::randomized_svd(m, rank, options) : detail::nmf(m, rank, options);
}

// ---------------------------------------------------------------------------
// Similarity and adjacency
// ---------------------------------------------------------------------------

/// theta(i, j) = max(0, cos(w_i, w_j)); zero rows are similar to nothing but
/// themselves.
inline Eigen::MatrixXd dimension_similarity(const Eigen::MatrixXd& w) {
    const Eigen::Index n = w.rows();
    Eigen::VectorXd norms = w.rowwise().norm();
    Eigen::MatrixXd theta = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        theta(i, i) = 1.0;
        if (norms(i) == 0.0) {
            continue;
        }
        for (Eigen::Index j = i + 1; j < n; ++j) {
            if (norms(j) == 0.0) {
                continue;
            }
            const double c = w.row(i).dot(w.row(j)) / (norms(i) * norms(j));
            theta(i, j) = theta(j, i) = std::clamp(c, 0.0, 1.0);
        }
    }
    return theta;
}

/// omega(i, j): number of consecutive event pairs whose base-attribute values
/// are i and j (either order, i != j).
inline Eigen::MatrixXi adjacency_counts(const TraceSet& trace_set, std::string_view base_attribute) {
    const std::size_t base = trace_set.schema.index_of(base_attribute);
    if (trace_set.empty()) {
        throw EmptyInputError("topic-model", "cannot count adjacencies of an empty trace set");
    }
    const auto n = static_cast<Eigen::Index>(trace_set.schema.dictionary(base).cardinality());
    Eigen::MatrixXi omega = Eigen::MatrixXi::Zero(n, n);
    for (const auto& trace : trace_set.traces) {
        for (std::size_t t = 1; t < trace.events.size(); ++t) {
            const auto i = static_cast<Eigen::Index>(trace.events[t - 1].values[base]);
            const auto j = static_cast<Eigen::Index>(trace.events[t].values[base]);
            if (i != j) {
                ++omega(i, j);
                ++omega(j, i);
            }
        }
    }
    return omega;
}

/// Min-max scaling of the off-diagonal adjacency counts into [0, 1]. A
/// constant matrix scales to 1 where counts are positive, else 0.
inline Eigen::MatrixXd normalize_adjacency(const Eigen::MatrixXi& omega) {
    const Eigen::Index n = omega.rows();
    Eigen::MatrixXd out = Eigen::MatrixXd::Zero(n, n);
    if (n < 2) {
        return out;
    }
    int lo = std::numeric_limits<int>::max();
    int hi = std::numeric_limits<int>::min();
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
            if (i != j) {
                lo = std::min(lo, omega(i, j));
                hi = std::max(hi, omega(i, j));
            }
        }
    }
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
            if (i == j) {
                continue;
            }
            if (hi == lo) {
                out(i, j) = hi > 0 ? 1.0 : 0.0;
            } else {
                out(i, j) = static_cast<double>(omega(i, j) - lo) / static_cast<double>(hi - lo);
            }
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Greedy topic assignment
// ---------------------------------------------------------------------------

struct MergeRecord {
    std::size_t left = 0;  // smallest member of the first cluster
    std::size_t right = 0; // smallest member of the second cluster
    double score = 0.0;

    bool operator==(const MergeRecord&) const = default;
};

struct TopicModel {
    Eigen::MatrixXd w;
    Eigen::MatrixXd theta;
    Eigen::MatrixXi omega;
    double lambda = 0.5;
    std::size_t k = 0;
    ReductionMethod method = ReductionMethod::Svd;
    std::vector<MergeRecord> dendrogram;
    /// Dimension -> topic over the base attribute's dictionary.
    MappingFunction mapping;
    std::string base_attribute;
    /// Names of the dimensions, used for auto labels.
    std::vector<std::string> dimension_names;
    /// Set when some dimensions never occur; they share this extra topic.
    std::optional<Symbol> unused_topic;
};

/// Pairwise merge affinity lambda*theta + (1-lambda)*omega_hat*theta.
inline Eigen::MatrixXd pair_affinity(const Eigen::MatrixXd& theta, const Eigen::MatrixXi& omega, double lambda) {
    const Eigen::MatrixXd omega_hat = normalize_adjacency(omega);
    return lambda * theta + (1.0 - lambda) * omega_hat.cwiseProduct(theta);
}

/// Average-linkage agglomeration on pair_affinity until one cluster is left,
/// then cut after n - k merges. Ties pick the pair with the lexicographically
/// smallest (min member, min member). Topic ids follow smallest member code.
inline TopicModel build_topic_mapping(const Eigen::MatrixXd& theta, const Eigen::MatrixXi& omega, double lambda,
                                      std::size_t k) {
    const auto n = static_cast<std::size_t>(theta.rows());
    if (n == 0) {
        throw EmptyInputError("topic-model", "no dimensions to assign");
    }
    if (theta.cols() != theta.rows() || omega.rows() != theta.rows() || omega.cols() != theta.cols()) {
        throw ParameterError("topic-model", "theta and omega must be square and of equal size");
    }
    if (k < 1 || k > n) {
        throw ParameterError("topic-model", "topic count must be in [1, " + std::to_string(n) + "], got " +
                                                std::to_string(k));
    }
    if (lambda < 0.0 || lambda > 1.0) {
        throw ParameterError("topic-model", "lambda must lie in [0, 1]");
    }

    Eigen::MatrixXd score = pair_affinity(theta, omega, lambda);
    std::vector<std::size_t> size(n, 1);
    std::vector<bool> active(n, true);

    TopicModel model;
    model.theta = theta;
    model.omega = omega;
    model.lambda = lambda;
    model.k = k;

    std::vector<std::size_t> label(n);
    for (std::size_t i = 0; i < n; ++i) {
        label[i] = i;
    }
    std::vector<std::size_t> cut_label;
    if (k == n) {
        cut_label = label;
    }

    for (std::size_t step = 0; step + 1 < n; ++step) {
        double best = -std::numeric_limits<double>::infinity();
        std::size_t bi = 0;
        std::size_t bj = 0;
        for (std::size_t i = 0; i < n; ++i) {
            if (!active[i]) {
                continue;
            }
            for (std::size_t j = i + 1; j < n; ++j) {
                if (active[j] && score(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) > best) {
                    best = score(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
                    bi = i;
                    bj = j;
                }
            }
        }
        model.dendrogram.push_back({bi, bj, best});
        const double wi = static_cast<double>(size[bi]);
        const double wj = static_cast<double>(size[bj]);
        for (std::size_t c = 0; c < n; ++c) {
            if (!active[c] || c == bi || c == bj) {
                continue;
            }
            const auto ci = static_cast<Eigen::Index>(c);
            const double merged =
                (wi * score(static_cast<Eigen::Index>(bi), ci) + wj * score(static_cast<Eigen::Index>(bj), ci)) /
                (wi + wj);
            score(static_cast<Eigen::Index>(bi), ci) = merged;
            score(ci, static_cast<Eigen::Index>(bi)) = merged;
        }
        size[bi] += size[bj];
        active[bj] = false;
        for (auto& l : label) {
            if (l == bj) {
                l = bi;
            }
        }
        if (step + 1 == n - k) {
            cut_label = label;
        }
    }

    // Dense topic ids in order of smallest member.
    std::vector<Symbol> topic_of_slot(n, 0);
    std::vector<bool> seen(n, false);
    Symbol next = 0;
    std::vector<Symbol> table(n);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t slot = cut_label[i];
        if (!seen[slot]) {
            seen[slot] = true;
            topic_of_slot[slot] = next++;
        }
        table[i] = topic_of_slot[slot];
    }
    model.mapping = MappingFunction(MappingKind::Topic, std::move(table));
    for (std::size_t i = 0; i < n; ++i) {
        model.dimension_names.push_back("d" + std::to_string(i));
    }
    return model;
}

/// Replaces topic labels. Empty `labels` selects auto labels: for each topic
/// the member dimension with the highest summed theta to the other members
/// (lowest code on ties).
inline TopicModel label_topics(TopicModel model, const std::vector<std::string>& labels) {
    const std::size_t topics = model.mapping.summary_alphabet_size();
    const std::size_t named = model.unused_topic ? topics - 1 : topics;
    if (!labels.empty()) {
        if (labels.size() != named) {
            throw ParameterError("topic-model", "expected " + std::to_string(named) + " topic labels, got " +
                                                    std::to_string(labels.size()));
        }
        auto full = labels;
        if (model.unused_topic) {
            full.emplace_back("<unused>");
        }
        model.mapping = model.mapping.with_labels(std::move(full));
        return model;
    }
    const auto& table = model.mapping.table();
    std::vector<std::string> auto_labels(topics);
    std::vector<double> best(topics, -1.0);
    for (std::size_t i = 0; i < table.size(); ++i) {
        const Symbol t = table[i];
        if (model.unused_topic && t == *model.unused_topic) {
            continue;
        }
        double total = 0.0;
        for (std::size_t j = 0; j < table.size(); ++j) {
            if (j != i && table[j] == t && model.theta.rows() > 0) {
                total += model.theta(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
            }
        }
        if (total > best[t]) {
            best[t] = total;
            auto_labels[t] = i < model.dimension_names.size() ? model.dimension_names[i] : "d" + std::to_string(i);
        }
    }
    if (model.unused_topic) {
        auto_labels[*model.unused_topic] = "<unused>";
    }
    model.mapping = model.mapping.with_labels(std::move(auto_labels));
    return model;
}

/// Which reading of the adjacency term of the topic objective to score.
enum class ObjectiveReading {
    SameTopic, // both sums range over pairs sharing a topic
    Literal,   // adjacency sum over all pairs (constant in the assignment)
};

/// Topic-assignment objective over unordered pairs i < j, with omega already
/// scaled to [0, 1].
inline double topic_objective(const Eigen::MatrixXd& theta, const Eigen::MatrixXd& omega_hat, double lambda,
                              std::span<const Symbol> assignment,
                              ObjectiveReading reading = ObjectiveReading::SameTopic) {
    double similarity = 0.0;
    double adjacency = 0.0;
    for (std::size_t i = 0; i < assignment.size(); ++i) {
        for (std::size_t j = i + 1; j < assignment.size(); ++j) {
            const auto ii = static_cast<Eigen::Index>(i);
            const auto jj = static_cast<Eigen::Index>(j);
            const bool same = assignment[i] == assignment[j];
            if (same) {
                similarity += theta(ii, jj);
            }
            if (same || reading == ObjectiveReading::Literal) {
                adjacency += omega_hat(ii, jj) * theta(ii, jj);
            }
        }
    }
    return lambda * similarity + (1.0 - lambda) * adjacency;
}

// ---------------------------------------------------------------------------
// Full pipeline
// ---------------------------------------------------------------------------

struct TopicOptions {
    std::string base_attribute; // empty: default_base_attribute
    std::size_t k = 10;
    double lambda = 0.5;
    ReductionMethod method = ReductionMethod::Svd;
    std::uint64_t seed = 0;
    std::vector<std::string> labels;
};

/// Vectorize, reduce, score and assign. Works on the dimensions that occur in
/// the trace set; the others (if any) share one extra "<unused>" topic. The
/// topic count is min(k, occurring dimensions) and the reduction rank is
/// additionally capped by the trace count.
inline TopicModel fit_topic_model(const TraceSet& trace_set, const TopicOptions& options) {
    if (options.k < 1) {
        throw ParameterError("topic-model", "k must be at least 1");
    }
    const std::string base =
        options.base_attribute.empty() ? default_base_attribute(trace_set.schema) : options.base_attribute;
    const TopicVectorization vec = vectorize(trace_set, base);
    const Eigen::MatrixXi omega_full = adjacency_counts(trace_set, base);

    std::vector<Eigen::Index> occurring;
    for (std::size_t i = 0; i < vec.df.size(); ++i) {
        if (vec.df[i] > 0) {
            occurring.push_back(static_cast<Eigen::Index>(i));
        }
    }
    const auto n_occ = static_cast<Eigen::Index>(occurring.size());
    Eigen::MatrixXd m(vec.matrix.rows(), n_occ);
    Eigen::MatrixXi omega(n_occ, n_occ);
    for (Eigen::Index c = 0; c < n_occ; ++c) {
        m.col(c) = vec.matrix.col(occurring[static_cast<std::size_t>(c)]);
        for (Eigen::Index r = 0; r < n_occ; ++r) {
            omega(r, c) = omega_full(occurring[static_cast<std::size_t>(r)], occurring[static_cast<std::size_t>(c)]);
        }
    }

    const std::size_t topics = std::min<std::size_t>(options.k, static_cast<std::size_t>(n_occ));
    const std::size_t rank = std::min<std::size_t>(topics, static_cast<std::size_t>(m.rows()));
    ReductionOptions reduction_options;
    reduction_options.seed = options.seed;
    const Reduction reduced = reduce_dimensions(m, rank, options.method, reduction_options);
    const Eigen::MatrixXd theta = dimension_similarity(reduced.w);

    TopicModel occ_model = build_topic_mapping(theta, omega, options.lambda, topics);

    // Expand back to the full dictionary.
    const auto& dict = trace_set.schema.dictionary(vec.base_index);
    const std::size_t dims = dict.cardinality();
    const bool has_unused = static_cast<std::size_t>(n_occ) < dims;
    const auto unused = static_cast<Symbol>(occ_model.mapping.summary_alphabet_size());
    std::vector<Symbol> table(dims, unused);
    for (Eigen::Index c = 0; c < n_occ; ++c) {
        table[static_cast<std::size_t>(occurring[static_cast<std::size_t>(c)])] =
            occ_model.mapping.table()[static_cast<std::size_t>(c)];
    }

    TopicModel model;
    model.lambda = options.lambda;
    model.k = options.k;
    model.method = options.method;
    model.base_attribute = base;
    model.w = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(dims), reduced.w.cols());
    model.theta = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(dims), static_cast<Eigen::Index>(dims));
    model.omega = omega_full;
    for (Eigen::Index r = 0; r < n_occ; ++r) {
        const Eigen::Index rr = occurring[static_cast<std::size_t>(r)];
        model.w.row(rr) = reduced.w.row(r);
        for (Eigen::Index c = 0; c < n_occ; ++c) {
            model.theta(rr, occurring[static_cast<std::size_t>(c)]) = theta(r, c);
        }
    }
    for (std::size_t i = 0; i < dims; ++i) {
        if (vec.df[i] == 0) {
            model.theta(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = 1.0;
        }
    }
    for (const auto& merge : occ_model.dendrogram) {
        model.dendrogram.push_back({static_cast<std::size_t>(occurring[merge.left]),
                                    static_cast<std::size_t>(occurring[merge.right]), merge.score});
    }
    model.mapping = MappingFunction(MappingKind::Topic, std::move(table));
    if (has_unused) {
        model.unused_topic = unused;
    }
    for (Symbol c = 0; c < dims; ++c) {
        model.dimension_names.push_back(dict.label(c));
    }
    return label_topics(std::move(model), options.labels);
}

/// Topic mapping lifted onto the full-schema composite alphabet of the trace
/// set, ready for summarizing make_corpus() sequences.
inline MappingFunction corpus_topic_mapping(const TraceSet& trace_set, const TopicModel& model) {
    return compose_through_attribute(project_all(trace_set).alphabet, trace_set.schema.index_of(model.base_attribute),
                                     model.mapping);
}

inline nlohmann::json to_json(const TopicModel& model) {
    nlohmann::json dendrogram = nlohmann::json::array();
    for (const auto& merge : model.dendrogram) {
        dendrogram.push_back({merge.left, merge.right, merge.score});
    }
    return nlohmann::json{{"k", model.k},
                          {"lambda", model.lambda},
                          {"method", std::string(to_string(model.method))},
                          {"base_attribute", model.base_attribute},
                          {"dendrogram", std::move(dendrogram)},
                          {"mapping", to_json(model.mapping)}};
}

inline void write_matrix_csv(std::ostream& out, const Eigen::MatrixXd& matrix) {
    out.precision(17);
    for (Eigen::Index r = 0; r < matrix.rows(); ++r) {
        for (Eigen::Index c = 0; c < matrix.cols(); ++c) {
            if (c > 0) {
                out << ',';
            }
            out << matrix(r, c);
        }
        out << '\n';
    }
}

} // namespace tracesumm
