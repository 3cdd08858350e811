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
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "tracesumm/bench.hpp"
#include "tracesumm/clustering.hpp"
#include "tracesumm/csv_log.hpp"
#include "tracesumm/error.hpp"
#include "tracesumm/jsonl.hpp"
#include "tracesumm/parallel.hpp"
#include "tracesumm/scheme.hpp"
#include "tracesumm/similarity_search.hpp"
#include "tracesumm/summarization.hpp"
#include "tracesumm/synthetic.hpp"
#include "tracesumm/trace_model.hpp"
#include "tracesumm/xes_log.hpp"

namespace tracesumm {

inline const std::vector<std::string>& cli_tasks() {
    static const std::vector<std::string> tasks{"ingest", "summarize", "search", "cluster", "evaluate", "bench", "gen"};
    return tasks;
}

struct RunConfig {
    std::string task;
    std::string input;
    std::string format; // csv, xes, jsonl; empty: from the file extension
    CsvConfig csv;
    XesConfig xes;

    std::vector<std::string> schemes{"identity"};
    std::vector<std::string> attrs;
    std::vector<std::size_t> ks;
    double lambda = 0.5;
    std::string method = "svd";
    std::string base_attribute;
    bool reduced = true;

    std::vector<std::size_t> chis;
    std::string query;
    bool verify = false;
    std::size_t clusters = 2;
    std::string linkage = "average";

    SyntheticSpec synthetic;
    std::size_t repetitions = 3;

    std::uint64_t seed = 0;
    unsigned threads = 0; // 0: TRACESUMM_THREADS or hardware
    std::string out = ".";
};

/// Scheme specs described by the config: one per scheme name, expanded over
/// the k list for the k-parameterized schemes.
inline std::vector<SchemeSpec> scheme_specs(const RunConfig& config) {
    std::vector<SchemeSpec> specs;
    for (const auto& name : config.schemes) {
        SchemeSpec spec;
        spec.kind = mapping_kind_from_string(name);
        spec.attrs = config.attrs;
        spec.lambda = config.lambda;
        spec.method = reduction_method_from_string(config.method);
        spec.seed = config.seed;
        spec.base_attribute = config.base_attribute;
        const bool uses_k = spec.kind == MappingKind::Topic || spec.kind == MappingKind::Random;
        if (uses_k) {
            std::vector<std::size_t> ks = config.ks;
            if (ks.empty()) {
                ks = config.task == "bench" ? std::vector<std::size_t>{2, 5, 10, 20, 50, 100}
                                            : std::vector<std::size_t>{10};
            }
            for (std::size_t k : ks) {
                spec.k = k;
                specs.push_back(spec);
            }
        } else {
            specs.push_back(spec);
        }
    }
    return specs;
}

/// All parameter checks that do not need the input data.
inline void validate_config(const RunConfig& config) {
    const auto& tasks = cli_tasks();
    if (std::find(tasks.begin(), tasks.end(), config.task) == tasks.end()) {
        throw ParameterError("cli-bench", "unknown task '" + config.task + "'");
    }
    if (config.task != "gen" && config.input.empty()) {
        throw ParameterError("cli-bench", "--input is required for " + config.task);
    }
    if (!config.format.empty() && config.format != "csv" && config.format != "xes" && config.format != "jsonl") {
        throw ParameterError("cli-bench", "unknown format '" + config.format + "'");
    }
    if (config.schemes.empty()) {
        throw ParameterError("cli-bench", "no scheme given");
    }
    for (std::size_t k : config.ks) {
        if (k < 1) {
            throw ParameterError("cli-bench", "k must be at least 1");
        }
    }
    const auto specs = scheme_specs(config);
    for (const auto& spec : specs) {
        spec.validate();
    }
    if (config.task != "bench" && (config.schemes.size() != 1 || config.ks.size() > 1)) {
        throw ParameterError("cli-bench", config.task + " takes exactly one scheme and at most one k");
    }
    linkage_from_string(config.linkage);
    if (config.task == "search") {
        if (config.query.empty()) {
            throw ParameterError("cli-bench", "search needs --query");
        }
        if (config.chis.size() != 1) {
            throw ParameterError("cli-bench", "search needs exactly one --chi");
        }
    }
    if (config.task == "evaluate" && config.chis.empty()) {
        throw ParameterError("cli-bench", "evaluate needs --chi");
    }
    if (config.task == "cluster" && config.clusters < 1) {
        throw ParameterError("cli-bench", "--clusters must be at least 1");
    }
    if (config.task == "bench" && config.repetitions < 1) {
        throw ParameterError("cli-bench", "--repetitions must be at least 1");
    }
    if (config.task == "gen") {
        if (config.synthetic.traces < 1 || config.synthetic.activities < 1 || config.synthetic.variants < 1) {
            throw ParameterError("cli-bench", "--traces, --activities and --variants must be at least 1");
        }
        if (!(config.synthetic.noise >= 0.0 && config.synthetic.noise <= 1.0)) {
            throw ParameterError("cli-bench", "--noise must lie in [0, 1]");
        }
    }
}

/// Canonical form of every setting that influences the output content.
inline nlohmann::json config_json(const RunConfig& config) {
    nlohmann::json doc{{"task", config.task}, {"seed", config.seed}};
    if (config.task != "gen") {
        doc["input"] = config.input;
        doc["format"] = config.format;
        doc["csv"] = {config.csv.id_column, config.csv.order_column, config.csv.attribute_columns};
        doc["xes"] = config.xes.event_keys;
    }
    if (config.task == "summarize" || config.task == "search" || config.task == "cluster" ||
        config.task == "evaluate" || config.task == "bench") {
        nlohmann::json schemes = nlohmann::json::array();
        for (const auto& spec : scheme_specs(config)) {
            schemes.push_back(spec.describe());
        }
        doc["schemes"] = std::move(schemes);
        doc["reduced"] = config.reduced;
        doc["base_attribute"] = config.base_attribute;
    }
    if (config.task == "search") {
        doc["query"] = config.query;
        doc["chi"] = config.chis;
        doc["verify"] = config.verify;
    } else if (config.task == "evaluate") {
        doc["chi"] = config.chis;
    } else if (config.task == "cluster") {
        doc["clusters"] = config.clusters;
        doc["linkage"] = config.linkage;
    } else if (config.task == "bench") {
        doc["repetitions"] = config.repetitions;
    } else if (config.task == "gen") {
        const auto& s = config.synthetic;
        doc["synthetic"] = {s.activities, s.traces, s.variants, s.noise, s.blocks};
    }
    return doc;
}

inline std::string config_digest(const RunConfig& config) {
    const std::string text = config_json(config).dump();
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

namespace detail {

/// Files written by one run; removed again unless the run commits.
class OutputFiles {
public:
    OutputFiles(std::filesystem::path dir, std::string stem) : dir_(std::move(dir)), stem_(std::move(stem)) {}
    OutputFiles(const OutputFiles&) = delete;
    OutputFiles& operator=(const OutputFiles&) = delete;

    ~OutputFiles() {
        if (committed_) {
            return;
        }
        for (const auto& path : written_) {
            std::error_code ignored;
            std::filesystem::remove(path, ignored);
        }
    }

    std::filesystem::path path(const std::string& suffix) const { return dir_ / (stem_ + suffix); }

    template <typename Writer>
    std::filesystem::path write(const std::string& suffix, Writer&& writer) {
        const auto target = path(suffix);
        written_.push_back(target);
        std::ofstream out(target, std::ios::binary);
        if (!out) {
            throw Error("cli-bench", "cannot open '" + target.string() + "' for writing");
        }
        writer(out);
        out.flush();
        if (!out) {
            throw Error("cli-bench", "failed writing '" + target.string() + "'");
        }
        return target;
    }

    void commit() { committed_ = true; }

private:
    std::filesystem::path dir_;
    std::string stem_;
    std::vector<std::filesystem::path> written_;
    bool committed_ = false;
};

inline std::string infer_format(const RunConfig& config) {
    if (!config.format.empty()) {
        return config.format;
    }
    const auto ext = std::filesystem::path(config.input).extension().string();
    if (ext == ".csv") return "csv";
    if (ext == ".xes" || ext == ".xml") return "xes";
    if (ext == ".jsonl" || ext == ".json") return "jsonl";
    throw ParameterError("cli-bench", "cannot infer the format of '" + config.input + "'; pass --format");
}

inline TraceSet load_input(const RunConfig& config) {
    const std::string format = infer_format(config);
    std::ifstream in(config.input, std::ios::binary);
    if (!in) {
        throw Error("cli-bench", "cannot read '" + config.input + "'");
    }
    if (format == "csv") return parse_csv_log(in, config.csv);
    if (format == "xes") return parse_xes_log(in, config.xes);
    return read_jsonl(in);
}

/// "value|value|..." label of every composite symbol.
inline std::vector<std::string> composite_labels(const TraceSet& trace_set, const CompositeAlphabet& alphabet) {
    std::vector<std::string> labels;
    labels.reserve(alphabet.size());
    for (const auto& tuple : alphabet.tuples) {
        std::string label;
        for (std::size_t i = 0; i < tuple.size(); ++i) {
            if (i > 0) {
                label += '|';
            }
            label += trace_set.schema.dictionary(alphabet.attributes[i]).label(tuple[i]);
        }
        labels.push_back(std::move(label));
    }
    return labels;
}

inline MappingFunction config_mapping(const TraceSet& trace_set, const RunConfig& config) {
    const SchemeSpec spec = scheme_specs(config).front();
    MappingFunction f = build_scheme_mapping(trace_set, spec);
    if (spec.kind == MappingKind::Identity) {
        f = f.with_labels(composite_labels(trace_set, project_all(trace_set).alphabet));
    }
    return f;
}

inline std::string format_optional(const std::optional<double>& v) {
    if (!v) {
        return "null";
    }
    std::ostringstream s;
    s << *v;
    return s.str();
}

} // namespace detail

/// Executes one task. Returns the process exit status; the one-line summary
/// goes to `out`, errors to `err`.
inline int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
    try {
        validate_config(config);
        std::filesystem::create_directories(config.out);
        const std::string digest = config_digest(config);
        detail::OutputFiles files(config.out, config.task + "-" + digest);
        const unsigned threads = resolve_threads(config.threads);
        std::string summary;

        if (config.task == "gen") {
            SyntheticSpec spec = config.synthetic;
            spec.seed = config.seed;
            const SyntheticLog gen = generate_synthetic_log(spec);
            const auto log_path = files.write(".jsonl", [&](std::ostream& o) { write_jsonl(o, gen.log); });
            files.write(".variants.csv", [&](std::ostream& o) {
                o << "trace_id,variant\n";
                for (std::size_t t = 0; t < gen.log.size(); ++t) {
                    o << gen.log.traces[t].id << ',' << gen.variant_of[t] << '\n';
                }
            });
            summary = "gen: " + std::to_string(gen.log.size()) + " traces, " + std::to_string(spec.activities) +
                      " activities, " + std::to_string(spec.variants) + " variants -> " + log_path.string();
        } else {
            const TraceSet trace_set = detail::load_input(config);

            if (config.task == "ingest") {
                std::size_t events = 0;
                for (const auto& t : trace_set.traces) {
                    events += t.size();
                }
                const auto path = files.write(".jsonl", [&](std::ostream& o) { write_jsonl(o, trace_set); });
                summary = "ingest: " + std::to_string(trace_set.size()) + " traces, " + std::to_string(events) +
                          " events, attributes";
                for (std::size_t a = 0; a < trace_set.schema.size(); ++a) {
                    summary += (a == 0 ? " " : ",") + trace_set.schema.name(a) + "(" +
                               std::to_string(trace_set.schema.dictionary(a).cardinality()) + ")";
                }
                summary += " -> " + path.string();
            } else if (config.task == "summarize") {
                const SymbolCorpus corpus = make_corpus(trace_set);
                const MappingFunction f = detail::config_mapping(trace_set, config);
                files.write(".mapping.json", [&](std::ostream& o) { o << to_json(f).dump(2) << '\n'; });
                double total = 0.0;
                const auto path = files.write(".jsonl", [&](std::ostream& o) {
                    for (std::size_t i = 0; i < corpus.size(); ++i) {
                        const SummarySequence s = config.reduced ? apply_reduced_mapping(corpus.sequences[i], f)
                                                                 : apply_mapping(corpus.sequences[i], f);
                        total += static_cast<double>(s.size());
                        nlohmann::json labels = nlohmann::json::array();
                        for (Symbol c : s.symbols) {
                            labels.push_back(f.labels()[c]);
                        }
                        o << nlohmann::json{{"id", corpus.ids[i]},
                                            {"summary", s.symbols},
                                            {"labels", std::move(labels)},
                                            {"origin", s.origin_index}}
                                 .dump()
                          << '\n';
                    }
                });
                std::ostringstream s;
                s << "summarize: " << corpus.size() << " traces, " << f.domain_size() << " -> "
                  << f.summary_alphabet_size() << " symbols, mean length " << total / static_cast<double>(corpus.size())
                  << " -> " << path.string();
                summary = s.str();
            } else if (config.task == "search") {
                const SymbolCorpus corpus = make_corpus(trace_set);
                const MappingFunction f = detail::config_mapping(trace_set, config);
                SearchOptions options;
                options.chi = config.chis.front();
                options.reduced = config.reduced;
                options.verify = config.verify;
                options.threads = threads;
                const SearchResult result = threshold_search(corpus, config.query, f, options);
                // Full distances to the query, for the per-trace table and the
                // query's false-positive rate, recall and violation share.
                const std::size_t q = corpus.index_of(config.query);
                const SymbolSequence query_summary = summarize_symbols(corpus.sequences[q], f, options.reduced);
                std::vector<std::size_t> original_distance(corpus.size());
                std::vector<std::size_t> summary_distance(corpus.size());
                parallel_for(corpus.size(), threads, [&](std::size_t i) {
                    original_distance[i] = edit_distance(corpus.sequences[q], corpus.sequences[i]);
                    summary_distance[i] =
                        edit_distance(query_summary, summarize_symbols(corpus.sequences[i], f, options.reduced));
                });
                std::vector<char> candidate(corpus.size(), 0);
                std::vector<char> verified(corpus.size(), 0);
                for (const auto& hit : result.hits) {
                    candidate[hit.index] = 1;
                    verified[hit.index] = hit.verified ? 1 : 0;
                }
                std::size_t truth = 0, hits = 0, violations = 0;
                for (std::size_t i = 0; i < corpus.size(); ++i) {
                    const bool within = original_distance[i] <= options.chi;
                    truth += within ? 1 : 0;
                    hits += (within && candidate[i]) ? 1 : 0;
                    violations += summary_distance[i] > original_distance[i] ? 1 : 0;
                }
                const std::size_t candidates = result.candidate_ids.size();
                files.write(".csv", [&](std::ostream& o) {
                    o << "trace_id,summary_distance,original_distance,candidate,verified\n";
                    for (std::size_t i = 0; i < corpus.size(); ++i) {
                        o << corpus.ids[i] << ',' << summary_distance[i] << ',';
                        if (result.verification_enabled) {
                            o << original_distance[i];
                        }
                        o << ',' << int(candidate[i]) << ',' << int(verified[i]) << '\n';
                    }
                });
                const SchemeSpec spec = scheme_specs(config).front();
                nlohmann::json doc{
                    {"query", config.query},
                    {"chi", options.chi},
                    {"k", f.summary_alphabet_size()},
                    {"scheme", spec.describe()},
                    {"reduced", options.reduced},
                    {"fp_rate", candidates == 0 ? 0.0 : double(candidates - hits) / double(candidates)},
                    {"recall", truth == 0 ? 1.0 : double(hits) / double(truth)},
                    {"violation_fraction", double(violations) / double(corpus.size())},
                    {"candidates", result.candidate_ids}};
                if (result.verification_enabled) {
                    doc["verified"] = result.verified_ids;
                }
                const auto path = files.write(".json", [&](std::ostream& o) { o << doc.dump(2) << '\n'; });
                files.write(".timing.json", [&](std::ostream& o) {
                    o << nlohmann::json{{"prefilter_ms", result.prefilter_ms}, {"verify_ms", result.verify_ms},
                                        {"threads", threads}}
                             .dump(2)
                      << '\n';
                });
                summary = "search: " + std::to_string(result.candidate_ids.size()) + " candidates";
                if (result.verification_enabled) {
                    summary += ", " + std::to_string(result.verified_ids.size()) + " verified";
                }
                summary += " -> " + path.string();
            } else if (config.task == "cluster") {
                const SymbolCorpus corpus = make_corpus(trace_set);
                if (config.clusters > corpus.size()) {
                    throw ParameterError("trace-clustering", "--clusters exceeds the trace count " +
                                                                 std::to_string(corpus.size()));
                }
                const Linkage linkage = linkage_from_string(config.linkage);
                const SchemeSpec spec = scheme_specs(config).front();
                const DistanceMatrix original = distance_matrix(corpus, nullptr, false, threads);
                const bool in_original = spec.kind == MappingKind::Identity && !config.reduced;
                std::optional<MappingFunction> f;
                if (!in_original) {
                    f = detail::config_mapping(trace_set, config);
                }
                const DistanceMatrix matrix = in_original ? original : distance_matrix(corpus, &*f, config.reduced, threads);
                const Clustering clustering = hierarchical_cluster(matrix, config.clusters, linkage);
                std::optional<std::vector<std::size_t>> reference;
                if (!in_original) {
                    reference = hierarchical_cluster(original, config.clusters, linkage).assignments;
                }
                const QualityReport quality =
                    weighted_cluster_quality(clustering, original, reference, matrix.space_tag(), threads);
                const auto path = files.write(".csv", [&](std::ostream& o) {
                    o << "trace_id,cluster_id\n";
                    for (std::size_t i = 0; i < corpus.size(); ++i) {
                        o << corpus.ids[i] << ',' << clustering.assignments[i] << '\n';
                    }
                });
                nlohmann::json doc{{"N", quality.cluster_count},
                                   {"space", quality.space},
                                   {"silhouette", nullptr},
                                   {"weighted_intra", quality.weighted_intra},
                                   {"warnings", quality.warnings}};
                if (quality.silhouette) {
                    doc["silhouette"] = *quality.silhouette;
                }
                if (quality.ari) {
                    doc["ari"] = *quality.ari;
                }
                files.write(".quality.json", [&](std::ostream& o) { o << doc.dump(2) << '\n'; });
                for (const auto& w : quality.warnings) {
                    err << "warning [trace-clustering]: " << w << '\n';
                }
                summary = "cluster: N=" + std::to_string(quality.cluster_count) + " in " + quality.space +
                          ", silhouette " + detail::format_optional(quality.silhouette) +
                          (quality.ari ? ", ari vs original " + detail::format_optional(quality.ari) : "") + " -> " +
                          path.string();
            } else if (config.task == "evaluate") {
                const SymbolCorpus corpus = make_corpus(trace_set);
                if (corpus.size() < 2) {
                    throw ParameterError("similarity-search", "evaluate needs at least two traces");
                }
                const MappingFunction f = detail::config_mapping(trace_set, config);
                const PairDistances pairs = compute_pair_distances(corpus, f, config.reduced, threads);
                const auto path = files.write(".csv", [&](std::ostream& o) {
                    o.precision(10);
                    o << "chi,fp_rate,recall,candidate_pairs,truth_pairs,violation_count,violation_fraction,"
                         "pair_count\n";
                    for (std::size_t chi : config.chis) {
                        const SearchMetrics m = metrics_at(pairs, chi);
                        o << chi << ',' << m.false_positive_rate << ',' << m.recall << ',' << m.candidate_pairs << ','
                          << m.truth_pairs << ',' << m.violation_count << ',' << m.violation_fraction << ','
                          << m.pair_count << '\n';
                    }
                });
                summary = "evaluate: " + std::to_string(config.chis.size()) + " rows over " +
                          std::to_string(pairs.pair_count()) + " pairs -> " + path.string();
            } else if (config.task == "bench") {
                const auto specs = scheme_specs(config);
                const BenchReport report = benchmark_allpairs(trace_set, specs, threads, config.repetitions);
                const auto path =
                    files.write(".json", [&](std::ostream& o) { o << bench_shape_json(report).dump(2) << '\n'; });
                files.write(".timing.json",
                            [&](std::ostream& o) { o << bench_timing_json(report).dump(2) << '\n'; });
                summary = "bench: " + std::to_string(report.rows.size()) + " rows, " +
                          std::to_string(report.rows.front().pair_count) + " pairs each, " +
                          std::to_string(report.threads) + " threads -> " + path.string();
            }
        }
        files.commit();
        out << summary << '\n';
        return 0;
    } catch (const ParseError& e) {
        err << "error [" << e.module() << "]: " << e.what();
        if (e.line() > 0) {
            err << " (line " << e.line() << ")";
        }
        if (e.byte_offset() >= 0) {
            err << " (byte " << e.byte_offset() << ")";
        }
        err << '\n';
    } catch (const Error& e) {
        err << "error [" << e.module() << "]: " << e.what() << '\n';
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
    }
    return 1;
}

/// Parses argv into a RunConfig and runs it. Usage errors exit with 2.
inline int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Trace summarization, similarity search and clustering for event logs", "tracesumm"};
    app.require_subcommand(1, 1);
    app.fallthrough();
    RunConfig config;

    app.add_option("--input", config.input, "Event log file");
    app.add_option("--format", config.format, "Input format (default: from extension)")
        ->check(CLI::IsMember({"csv", "xes", "jsonl"}));
    app.add_option("--id-column", config.csv.id_column, "CSV trace id column");
    app.add_option("--order-column", config.csv.order_column, "CSV event order column");
    app.add_option("--columns", config.csv.attribute_columns, "CSV attribute columns (default: all others)")
        ->delimiter(',');
    app.add_option("--xes-keys", config.xes.event_keys, "XES event attribute keys")->delimiter(',');

    app.add_option("--scheme", config.schemes, "Mapping scheme(s)")
        ->delimiter(',')
        ->check(CLI::IsMember({"attribute", "topic", "random", "identity"}));
    app.add_option("--attrs", config.attrs, "Attributes of the attribute scheme")->delimiter(',');
    app.add_option("--k", config.ks, "Summary alphabet size(s)")->delimiter(',');
    app.add_option("--lambda", config.lambda, "Topic merge weight in [0, 1]");
    app.add_option("--method", config.method, "Topic dimensionality reduction")->check(CLI::IsMember({"svd", "nmf"}));
    app.add_option("--base-attribute", config.base_attribute, "Topic base attribute (default: largest)");
    app.add_flag("--reduced,!--no-reduced", config.reduced, "Collapse runs of equal summary symbols");

    app.add_option("--chi", config.chis, "Distance threshold(s)")->delimiter(',');
    app.add_option("--query", config.query, "Query trace id");
    app.add_flag("--verify", config.verify, "Verify candidates on original traces");
    app.add_option("--clusters", config.clusters, "Cluster count");
    app.add_option("--linkage", config.linkage, "Linkage")->check(CLI::IsMember({"average", "complete"}));

    app.add_option("--traces", config.synthetic.traces, "Synthetic trace count");
    app.add_option("--activities", config.synthetic.activities, "Synthetic activity count");
    app.add_option("--variants", config.synthetic.variants, "Synthetic variant count");
    app.add_option("--noise", config.synthetic.noise, "Synthetic noise rate");
    app.add_option("--repetitions", config.repetitions, "Benchmark repetitions");

    app.add_option("--seed", config.seed, "Random seed");
    app.add_option("--threads", config.threads, "Worker threads (default: TRACESUMM_THREADS or all cores)");
    app.add_option("--out", config.out, "Output directory");

    const std::map<std::string, std::string> about{
        {"ingest", "Parse a log and write it as JSON lines"},
        {"summarize", "Map traces to summary sequences"},
        {"search", "Threshold search for one query trace"},
        {"cluster", "Hierarchical clustering with quality report"},
        {"evaluate", "False-positive rate, recall and violations over all pairs"},
        {"bench", "Time all-pairs edit distance per scheme and k"},
        {"gen", "Write a seeded synthetic log"},
    };
    for (const auto& task : cli_tasks()) {
        app.add_subcommand(task, about.at(task))->callback([&config, task] { config.task = task; });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err) == 0 ? 0 : 2;
    }
    return run(config, out, err);
}

} // namespace tracesumm
