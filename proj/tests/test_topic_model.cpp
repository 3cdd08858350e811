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

#include <cmath>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "tracesumm/csv_log.hpp"
#include "tracesumm/synthetic.hpp"
#include "tracesumm/topic_model.hpp"

namespace ts = tracesumm;

namespace {

ts::TraceSet log_of(const std::vector<std::vector<std::string>>& traces) {
    std::string text = "trace_id,position,act\n";
    for (std::size_t t = 0; t < traces.size(); ++t) {
        for (std::size_t i = 0; i < traces[t].size(); ++i) {
            text += "p" + std::to_string(t + 1) + "," + std::to_string(i + 1) + "," + traces[t][i] + "\n";
        }
    }
    std::istringstream in(text);
    return ts::parse_csv_log(in);
}

Eigen::Index code(const ts::TraceSet& log, const std::string& value) {
    return static_cast<Eigen::Index>(*log.schema.dictionary(0).find(value));
}

// Topic objective of a partition written out independently: same-topic pairs,
// unordered, omega scaled by its off-diagonal min and max.
double partition_score(const Eigen::MatrixXd& theta, const Eigen::MatrixXi& omega, double lambda,
                       const std::vector<int>& part) {
    const auto n = static_cast<std::size_t>(theta.rows());
    int lo = INT32_MAX;
    int hi = INT32_MIN;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (i != j) {
                lo = std::min(lo, omega(i, j));
                hi = std::max(hi, omega(i, j));
            }
        }
    }
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (part[i] != part[j]) {
                continue;
            }
            const double w = hi == lo ? (hi > 0 ? 1.0 : 0.0) : double(omega(i, j) - lo) / double(hi - lo);
            total += lambda * theta(i, j) + (1.0 - lambda) * w * theta(i, j);
        }
    }
    return total;
}

// Every partition of n items into exactly k blocks, as restricted growth strings.
void for_each_partition(std::size_t n, std::size_t k, const std::function<void(const std::vector<int>&)>& visit) {
    std::vector<int> part(n, 0);
    std::function<void(std::size_t, int)> rec = [&](std::size_t i, int used) {
        if (i == n) {
            if (static_cast<std::size_t>(used) == k) {
                visit(part);
            }
            return;
        }
        for (int b = 0; b <= used && b < static_cast<int>(k); ++b) {
            part[i] = b;
            rec(i + 1, std::max(used, b + 1));
        }
    };
    rec(0, 0);
}

double relative_error(const Eigen::MatrixXd& m, const ts::Reduction& r) {
    return (m - r.m_prime * r.w.transpose()).norm() / m.norm();
}

} // namespace

TEST(Vectorize, TfIdfValues) {
    const auto log = log_of({{"a", "a", "b"}, {"b", "c"}});
    const auto v = ts::vectorize(log, "act");
    EXPECT_EQ(v.matrix.rows(), 2);
    EXPECT_EQ(v.matrix.cols(), 3);
    // (1 + ln 2) * ln(2 / 1), evaluated by hand.
    EXPECT_NEAR(v.matrix(0, code(log, "a")), (1.0 + std::log(2.0)) * std::log(2.0), 1e-12);
    EXPECT_NEAR(v.matrix(0, code(log, "a")), 1.1736001945, 1e-9);
    EXPECT_DOUBLE_EQ(v.matrix(0, code(log, "b")), 0.0); // present everywhere
    EXPECT_DOUBLE_EQ(v.matrix(0, code(log, "c")), 0.0); // absent
    EXPECT_NEAR(v.matrix(1, code(log, "c")), std::log(2.0), 1e-12);
    EXPECT_EQ(v.tf(0, code(log, "a")), 2);
    EXPECT_EQ(v.df[static_cast<std::size_t>(code(log, "b"))], 2u);
}

TEST(Vectorize, Errors) {
    const auto log = log_of({{"a"}});
    EXPECT_THROW(ts::vectorize(log, "missing"), ts::SchemaError);
    ts::TraceSet empty;
    empty.schema.add_attribute("act");
    EXPECT_THROW(ts::vectorize(empty, "act"), ts::EmptyInputError);
}

TEST(Vectorize, DefaultBaseIsLargestAttribute) {
    ts::SyntheticSpec spec;
    spec.traces = 30;
    EXPECT_EQ(ts::default_base_attribute(ts::generate_synthetic_log(spec).log.schema), "activity");
}

TEST(Reduce, DiagonalSvdIsExact) {
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(2, 2);
    m(0, 0) = 3;
    m(1, 1) = 2;
    const auto r = ts::reduce_dimensions(m, 2, ts::ReductionMethod::Svd);
    EXPECT_LT((m - r.m_prime * r.w.transpose()).norm(), 1e-9);
}

TEST(Reduce, RankOneBothMethods) {
    Eigen::VectorXd u(2);
    u << 1, 2;
    Eigen::VectorXd v = Eigen::VectorXd::Ones(3);
    const Eigen::MatrixXd m = u * v.transpose();
    for (auto method : {ts::ReductionMethod::Svd, ts::ReductionMethod::Nmf}) {
        const auto r = ts::reduce_dimensions(m, 1, method);
        EXPECT_LT(relative_error(m, r), 1e-6) << ts::to_string(method);
        EXPECT_EQ(r.w.rows(), 3);
        EXPECT_EQ(r.w.cols(), 1);
    }
}

TEST(Reduce, KnownRankSvd) {
    std::mt19937_64 rng(21);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int trial = 0; trial < 20; ++trial) {
        const Eigen::Index rows = 10 + static_cast<Eigen::Index>(rng() % 30);
        const Eigen::Index cols = 10 + static_cast<Eigen::Index>(rng() % 30);
        const Eigen::Index rank = 1 + static_cast<Eigen::Index>(rng() % 5);
        Eigen::MatrixXd a(rows, rank);
        Eigen::MatrixXd b(cols, rank);
        for (auto* x : {&a, &b}) {
            for (Eigen::Index i = 0; i < x->size(); ++i) {
                x->data()[i] = unit(rng);
            }
        }
        const Eigen::MatrixXd m = a * b.transpose();
        const auto k = static_cast<std::size_t>(rank + static_cast<Eigen::Index>(rng() % 3));
        EXPECT_LT(relative_error(m, ts::reduce_dimensions(m, k, ts::ReductionMethod::Svd)), 1e-6);
    }
}

TEST(Reduce, NmfIsDeterministicNonNegativeAndMonotone) {
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    Eigen::MatrixXd m(12, 9);
    for (Eigen::Index i = 0; i < m.size(); ++i) {
        m.data()[i] = unit(rng);
    }
    ts::ReductionOptions options;
    options.seed = 77;
    const auto a = ts::reduce_dimensions(m, 3, ts::ReductionMethod::Nmf, options);
    const auto b = ts::reduce_dimensions(m, 3, ts::ReductionMethod::Nmf, options);
    EXPECT_TRUE(a.w == b.w);
    EXPECT_TRUE(a.m_prime == b.m_prime);
    EXPECT_GE(a.w.minCoeff(), 0.0);
    EXPECT_GE(a.m_prime.minCoeff(), 0.0);
    ASSERT_FALSE(a.objective_history.empty());
    for (std::size_t i = 1; i < a.objective_history.size(); ++i) {
        EXPECT_LE(a.objective_history[i], a.objective_history[i - 1] * (1.0 + 1e-12));
    }
    EXPECT_LE(a.objective_history.size(), 500u);
}

TEST(Reduce, Errors) {
    const Eigen::MatrixXd m = Eigen::MatrixXd::Ones(3, 4);
    EXPECT_THROW(ts::reduce_dimensions(m, 0, ts::ReductionMethod::Svd), ts::ParameterError);
    EXPECT_THROW(ts::reduce_dimensions(m, 4, ts::ReductionMethod::Svd), ts::ParameterError);
    EXPECT_THROW(ts::reduce_dimensions(-m, 1, ts::ReductionMethod::Nmf), ts::ParameterError);
    EXPECT_THROW(ts::reduce_dimensions(Eigen::MatrixXd::Zero(3, 4), 1, ts::ReductionMethod::Svd),
                 ts::DegenerateInputError);
}

TEST(Similarity, Examples) {
    Eigen::MatrixXd w(5, 2);
    w << 1, 1, //
        1, 1,  //
        1, 0,  //
        0, 1,  //
        0, 0;
    const auto theta = ts::dimension_similarity(w);
    EXPECT_NEAR(theta(0, 1), 1.0, 1e-12);
    EXPECT_NEAR(theta(0, 2), 1.0 / std::sqrt(2.0), 1e-12);
    EXPECT_NEAR(theta(0, 2), 0.70710678, 1e-8);
    EXPECT_DOUBLE_EQ(theta(2, 3), 0.0);
    EXPECT_DOUBLE_EQ(theta(4, 0), 0.0);
    EXPECT_DOUBLE_EQ(theta(4, 4), 1.0);
    EXPECT_TRUE(theta.isApprox(theta.transpose()));
}

TEST(Similarity, NegativeCosineClampsToZero) {
    Eigen::MatrixXd w(2, 2);
    w << 1, 0, -1, 0.1;
    EXPECT_DOUBLE_EQ(ts::dimension_similarity(w)(0, 1), 0.0);
}

TEST(Adjacency, Examples) {
    {
        const auto log = log_of({{"a", "b", "a"}});
        const auto omega = ts::adjacency_counts(log, "act");
        EXPECT_EQ(omega(code(log, "a"), code(log, "b")), 2);
        EXPECT_EQ(omega(code(log, "b"), code(log, "a")), 2);
    }
    {
        const auto log = log_of({{"a", "a"}});
        EXPECT_TRUE(ts::adjacency_counts(log, "act").isZero());
    }
    {
        const auto log = log_of({{"a", "b"}, {"a", "b"}});
        EXPECT_EQ(ts::adjacency_counts(log, "act")(0, 1), 2);
    }
}

TEST(Adjacency, NormalizationScalesToUnitInterval) {
    Eigen::MatrixXi omega(3, 3);
    omega << 0, 4, 2, //
        4, 0, 0,      //
        2, 0, 0;
    const auto hat = ts::normalize_adjacency(omega);
    EXPECT_DOUBLE_EQ(hat(0, 1), 1.0);
    EXPECT_DOUBLE_EQ(hat(0, 2), 0.5);
    EXPECT_DOUBLE_EQ(hat(1, 2), 0.0);
    Eigen::MatrixXi constant = Eigen::MatrixXi::Constant(3, 3, 5);
    EXPECT_DOUBLE_EQ(ts::normalize_adjacency(constant)(0, 2), 1.0);
    EXPECT_TRUE(ts::normalize_adjacency(Eigen::MatrixXi::Zero(3, 3)).isZero());
}

TEST(TopicMapping, StrongPairMergesFirst) {
    Eigen::MatrixXd theta = Eigen::MatrixXd::Identity(3, 3);
    theta(0, 1) = theta(1, 0) = 0.99;
    const Eigen::MatrixXi omega = Eigen::MatrixXi::Zero(3, 3);
    const auto model = ts::build_topic_mapping(theta, omega, 1.0, 2);
    EXPECT_EQ(model.mapping.table(), (std::vector<ts::Symbol>{0, 0, 1}));
    // Exhaustive search over all 2-partitions agrees.
    double best = -1.0;
    std::vector<int> best_part;
    for_each_partition(3, 2, [&](const std::vector<int>& part) {
        const double s = partition_score(theta, omega, 1.0, part);
        if (s > best) {
            best = s;
            best_part = part;
        }
    });
    EXPECT_EQ(best_part, (std::vector<int>{0, 0, 1}));
}

TEST(TopicMapping, KEqualsNIsIdentityAndKOneIsSingleTopic) {
    std::mt19937_64 rng(4);
    Eigen::MatrixXd w = Eigen::MatrixXd::Random(6, 3);
    const auto theta = ts::dimension_similarity(w);
    const Eigen::MatrixXi omega = Eigen::MatrixXi::Ones(6, 6);
    EXPECT_EQ(ts::build_topic_mapping(theta, omega, 0.5, 6).mapping.table(),
              (std::vector<ts::Symbol>{0, 1, 2, 3, 4, 5}));
    EXPECT_EQ(ts::build_topic_mapping(theta, omega, 0.5, 1).mapping.table(), (std::vector<ts::Symbol>(6, 0)));
}

TEST(TopicMapping, Errors) {
    const Eigen::MatrixXd theta = Eigen::MatrixXd::Identity(3, 3);
    const Eigen::MatrixXi omega = Eigen::MatrixXi::Zero(3, 3);
    EXPECT_THROW(ts::build_topic_mapping(theta, omega, 0.5, 0), ts::ParameterError);
    EXPECT_THROW(ts::build_topic_mapping(theta, omega, 0.5, 4), ts::ParameterError);
    EXPECT_THROW(ts::build_topic_mapping(theta, omega, 1.5, 2), ts::ParameterError);
    EXPECT_THROW(ts::build_topic_mapping(Eigen::MatrixXd(0, 0), Eigen::MatrixXi(0, 0), 0.5, 1), ts::EmptyInputError);
    EXPECT_THROW(ts::build_topic_mapping(theta, Eigen::MatrixXi::Zero(2, 2), 0.5, 1), ts::ParameterError);
}

TEST(TopicMapping, TiesGoToSmallestPair) {
    // All affinities equal: merges go (0,1), then (0,2), ...
    const Eigen::MatrixXd theta = Eigen::MatrixXd::Ones(4, 4);
    const Eigen::MatrixXi omega = Eigen::MatrixXi::Zero(4, 4);
    const auto model = ts::build_topic_mapping(theta, omega, 0.5, 2);
    ASSERT_EQ(model.dendrogram.size(), 3u);
    EXPECT_EQ(model.dendrogram[0].left, 0u);
    EXPECT_EQ(model.dendrogram[0].right, 1u);
    EXPECT_EQ(model.dendrogram[1].left, 0u);
    EXPECT_EQ(model.dendrogram[1].right, 2u);
    EXPECT_EQ(model.mapping.table(), (std::vector<ts::Symbol>{0, 0, 0, 1}));
}

TEST(TopicMapping, GreedyBeatsArbitraryMergingOnAverage) {
    std::mt19937_64 rng(12);
    std::normal_distribution<double> gauss;
    double greedy_total = 0.0;
    double arbitrary_total = 0.0;
    double optimum_total = 0.0;
    for (int instance = 0; instance < 30; ++instance) {
        const auto n = static_cast<Eigen::Index>(3 + rng() % 5);
        const auto k = static_cast<std::size_t>(1 + rng() % static_cast<std::size_t>(n));
        Eigen::MatrixXd w(n, 3);
        for (Eigen::Index i = 0; i < w.size(); ++i) {
            w.data()[i] = gauss(rng);
        }
        const auto theta = ts::dimension_similarity(w);
        Eigen::MatrixXi omega = Eigen::MatrixXi::Zero(n, n);
        for (int step = 0; step < 40; ++step) {
            const auto i = static_cast<Eigen::Index>(rng() % static_cast<std::size_t>(n));
            const auto j = static_cast<Eigen::Index>(rng() % static_cast<std::size_t>(n));
            if (i != j) {
                ++omega(i, j);
                ++omega(j, i);
            }
        }
        const double lambda = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
        const auto model = ts::build_topic_mapping(theta, omega, lambda, k);
        std::vector<int> greedy(model.mapping.table().begin(), model.mapping.table().end());
        EXPECT_EQ(model.mapping.summary_alphabet_size(), k);
        greedy_total += partition_score(theta, omega, lambda, greedy);
        // The library objective agrees with the independent scorer.
        EXPECT_NEAR(ts::topic_objective(theta, ts::normalize_adjacency(omega), lambda, model.mapping.table()),
                    partition_score(theta, omega, lambda, greedy), 1e-9);
        // Arbitrary merging: first n-k+1 dimensions in one block.
        std::vector<int> arbitrary(static_cast<std::size_t>(n));
        for (std::size_t i = 0; i < arbitrary.size(); ++i) {
            arbitrary[i] = static_cast<int>(i < arbitrary.size() - k + 1 ? 0 : i - (arbitrary.size() - k));
        }
        arbitrary_total += partition_score(theta, omega, lambda, arbitrary);
        double best = 0.0;
        for_each_partition(static_cast<std::size_t>(n), k, [&](const std::vector<int>& part) {
            best = std::max(best, partition_score(theta, omega, lambda, part));
        });
        optimum_total += best;
        EXPECT_LE(partition_score(theta, omega, lambda, greedy), best + 1e-9);
    }
    EXPECT_GE(greedy_total, arbitrary_total);
    EXPECT_LE(greedy_total, optimum_total + 1e-9);
}

TEST(TopicObjective, LiteralReadingIsConstantInAssignment) {
    Eigen::MatrixXd theta = Eigen::MatrixXd::Ones(3, 3);
    Eigen::MatrixXd omega_hat = Eigen::MatrixXd::Ones(3, 3);
    const std::vector<ts::Symbol> split{0, 1, 2};
    const std::vector<ts::Symbol> joined{0, 0, 0};
    const auto lit = ts::ObjectiveReading::Literal;
    EXPECT_DOUBLE_EQ(ts::topic_objective(theta, omega_hat, 0.0, split, lit),
                     ts::topic_objective(theta, omega_hat, 0.0, joined, lit));
    EXPECT_DOUBLE_EQ(ts::topic_objective(theta, omega_hat, 0.0, split), 0.0);
    EXPECT_DOUBLE_EQ(ts::topic_objective(theta, omega_hat, 0.0, joined), 3.0);
}

TEST(LabelTopics, UserAndAutoLabels) {
    Eigen::MatrixXd theta = Eigen::MatrixXd::Identity(3, 3);
    theta(0, 1) = theta(1, 0) = 0.9;
    theta(1, 2) = theta(2, 1) = 0.2;
    auto model = ts::build_topic_mapping(theta, Eigen::MatrixXi::Zero(3, 3), 1.0, 2);
    model.dimension_names = {"draft", "review", "ship"};
    const auto named = ts::label_topics(model, {"prep", "exec"});
    EXPECT_EQ(named.mapping.labels(), (std::vector<std::string>{"prep", "exec"}));
    const auto automatic = ts::label_topics(model, {});
    EXPECT_EQ(automatic.mapping.labels(), (std::vector<std::string>{"draft", "ship"}));
    EXPECT_THROW(ts::label_topics(model, {"a", "b", "c"}), ts::ParameterError);
}

TEST(FitTopicModel, SyntheticLogPipeline) {
    ts::SyntheticSpec spec;
    spec.traces = 150;
    spec.seed = 4;
    const auto log = ts::generate_synthetic_log(spec).log;
    for (auto method : {ts::ReductionMethod::Svd, ts::ReductionMethod::Nmf}) {
        ts::TopicOptions options;
        options.k = 8;
        options.method = method;
        options.seed = 3;
        const auto model = ts::fit_topic_model(log, options);
        const std::size_t topics = model.mapping.summary_alphabet_size() - (model.unused_topic ? 1 : 0);
        EXPECT_EQ(topics, 8u);
        EXPECT_EQ(model.mapping.domain_size(), 113u);
        EXPECT_EQ(model.base_attribute, "activity");
        EXPECT_GE(model.theta.minCoeff(), 0.0);
        EXPECT_LE(model.theta.maxCoeff(), 1.0 + 1e-12);
        EXPECT_TRUE(model.omega == model.omega.transpose());
        // Same inputs, same outputs.
        const auto again = ts::fit_topic_model(log, options);
        EXPECT_EQ(again.mapping, model.mapping);
        EXPECT_EQ(again.dendrogram, model.dendrogram);
        // Lifted onto the corpus alphabet the mapping stays surjective.
        const auto lifted = ts::corpus_topic_mapping(log, model);
        EXPECT_EQ(lifted.summary_alphabet_size(), topics);
    }
}

TEST(FitTopicModel, UnusedDimensionsShareAnExtraTopic) {
    auto log = log_of({{"a", "b", "c"}, {"b", "c", "a"}, {"c", "a"}});
    log.schema.dictionary(0).intern("never");
    ts::TopicOptions options;
    options.k = 2;
    const auto model = ts::fit_topic_model(log, options);
    ASSERT_TRUE(model.unused_topic.has_value());
    EXPECT_EQ(model.mapping.summary_alphabet_size(), 3u);
    EXPECT_EQ(model.mapping.table()[3], *model.unused_topic);
    EXPECT_EQ(model.mapping.labels()[*model.unused_topic], "<unused>");
}

TEST(FitTopicModel, KLargerThanDimensionsIsCapped) {
    const auto log = log_of({{"a", "b"}, {"b", "c"}, {"a", "c"}});
    ts::TopicOptions options;
    options.k = 50;
    EXPECT_EQ(ts::fit_topic_model(log, options).mapping.summary_alphabet_size(), 3u);
    options.k = 0;
    EXPECT_THROW(ts::fit_topic_model(log, options), ts::ParameterError);
}

TEST(TopicModelJson, HasDocumentedFields) {
    const auto log = log_of({{"a", "b"}, {"b", "c"}, {"a", "c"}});
    ts::TopicOptions options;
    options.k = 2;
    const auto doc = ts::to_json(ts::fit_topic_model(log, options));
    for (const char* key : {"k", "lambda", "method", "dendrogram", "mapping"}) {
        EXPECT_TRUE(doc.contains(key)) << key;
    }
    EXPECT_EQ(doc["mapping"]["kind"], "topic");
}
