// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 hashtopics contributors

#include "hashtopics/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <nlohmann/json.hpp>
#include <type_traits>
#include <unordered_map>

#include "hashtopics/corpus.hpp"
#include "hashtopics/hashgraph.hpp"
#include "hashtopics/io.hpp"
#include "hashtopics/labeler.hpp"
#include "hashtopics/report.hpp"
#include "hashtopics/tsnmf.hpp"
#include "hashtopics/vectorizer.hpp"

namespace hashtopics {

namespace {

using json = nlohmann::json;

template <typename T>
void read_field(const json& j, const char* key, T& out) {
    if (j.contains(key)) out = j.at(key).get<T>();
}

// Wall-clock timer for the manifest's stage timings.
class StageClock {
  public:
    void start() { begin_ = std::chrono::steady_clock::now(); }
    double stop() const {
        const auto end = std::chrono::steady_clock::now();
        return std::chrono::duration<double>(end - begin_).count();
    }

  private:
    std::chrono::steady_clock::time_point begin_;
};

template <typename Fn>
auto run_stage(const std::string& stage, std::map<std::string, double>& timings, Fn&& fn) {
    StageClock clock;
    clock.start();
    try {
        if constexpr (std::is_void_v<decltype(fn())>) {
            fn();
            timings[stage] = clock.stop();
        } else {
            auto result = fn();
            timings[stage] = clock.stop();
            return result;
        }
    } catch (const StageError&) {
        throw;
    } catch (const std::exception& e) {
        throw StageError(stage, e.what());
    }
}

json config_to_json(const PipelineConfig& c) {
    json j;
    j["input_path"] = c.input_path;
    j["output_dir"] = c.output_dir;
    j["min_chars"] = c.min_chars;
    j["drop_retweets"] = c.drop_retweets;
    j["drop_replies"] = c.drop_replies;
    j["min_df"] = c.min_df;
    j["tau"] = c.tau;
    j["resolution"] = c.resolution;
    j["num_communities"] = c.num_communities;
    j["k"] = c.k;
    j["target_labeled_ratio"] = c.target_labeled_ratio;
    j["max_iter"] = c.max_iter;
    j["tol"] = c.tol;
    j["seed"] = c.seed;
    return j;
}

// Rows of the full matrix restricted to the given documents, in order.
DocTermMatrix select_rows(const DocTermMatrix& full, const std::vector<Document>& all_docs,
                          const std::vector<Document>& subset) {
    std::unordered_map<std::string, Eigen::Index> row_of;
    row_of.reserve(all_docs.size());
    for (std::size_t i = 0; i < all_docs.size(); ++i) {
        row_of.emplace(all_docs[i].id, static_cast<Eigen::Index>(i));
    }
    std::vector<Eigen::Triplet<double>> triplets;
    for (std::size_t i = 0; i < subset.size(); ++i) {
        const Eigen::Index src = row_of.at(subset[i].id);
        for (SparseRowMatrix::InnerIterator it(full.values, static_cast<int>(src)); it; ++it) {
            triplets.emplace_back(static_cast<Eigen::Index>(i), it.col(), it.value());
        }
    }
    DocTermMatrix out;
    out.kind = full.kind;
    out.values.resize(static_cast<Eigen::Index>(subset.size()), full.cols());
    out.values.setFromTriplets(triplets.begin(), triplets.end());
    return out;
}

}  // namespace

PipelineConfig load_pipeline_config(const std::filesystem::path& path) {
    json j;
    try {
        j = json::parse(read_file(path));
    } catch (const json::parse_error& e) {
        throw std::runtime_error("config parse error in " + path.string() + ": " + e.what());
    }
    if (!j.is_object()) throw std::runtime_error("config must be a JSON object: " + path.string());
    PipelineConfig c;
    read_field(j, "input_path", c.input_path);
    read_field(j, "output_dir", c.output_dir);
    read_field(j, "min_chars", c.min_chars);
    read_field(j, "drop_retweets", c.drop_retweets);
    read_field(j, "drop_replies", c.drop_replies);
    read_field(j, "min_df", c.min_df);
    read_field(j, "tau", c.tau);
    read_field(j, "resolution", c.resolution);
    read_field(j, "num_communities", c.num_communities);
    read_field(j, "k", c.k);
    read_field(j, "target_labeled_ratio", c.target_labeled_ratio);
    read_field(j, "max_iter", c.max_iter);
    read_field(j, "tol", c.tol);
    read_field(j, "seed", c.seed);
    return c;
}

void validate_config(const PipelineConfig& config) {
    if (config.min_chars < 0) throw std::invalid_argument("min_chars must be non-negative");
    if (config.min_df < 1) throw std::invalid_argument("min_df must be positive");
    if (config.tau < 1) throw std::invalid_argument("tau must be positive");
    if (!(config.resolution > 0.0)) throw std::invalid_argument("resolution must be positive");
    if (config.num_communities < 1) {
        throw std::invalid_argument("num_communities must be positive");
    }
    if (config.k < 1) throw std::invalid_argument("k must be positive");
    if (config.num_communities > config.k) {
        throw std::invalid_argument("num_communities must not exceed k");
    }
    if (!(config.target_labeled_ratio > 0.0) || config.target_labeled_ratio > 1.0) {
        throw std::invalid_argument("target_labeled_ratio must be in (0, 1]");
    }
    if (config.max_iter < 1) throw std::invalid_argument("max_iter must be positive");
    if (!(config.tol > 0.0)) throw std::invalid_argument("tol must be positive");
}

const std::vector<std::string>& pipeline_artifact_names() {
    static const std::vector<std::string> names = {
        "documents.jsonl",       "matrix.mtx",
        "vocab.tsv",             "graph.tsv",
        "partition.tsv",         "lookup.tsv",
        "labeled_documents.jsonl", "constraints.mtx",
        "w_supervised.mtx",      "h_supervised.mtx",
        "fit_supervised.json",   "w_unsupervised.mtx",
        "h_unsupervised.mtx",    "fit_unsupervised.json",
        "topics_supervised.json", "topics_unsupervised.json",
        "comparison.json",
    };
    return names;
}

void run_pipeline(const PipelineConfig& config) {
    try {
        validate_config(config);
        if (config.input_path.empty()) throw std::invalid_argument("input_path is required");
        if (config.output_dir.empty()) throw std::invalid_argument("output_dir is required");
        if (!std::filesystem::exists(config.input_path)) {
            throw std::runtime_error("input file does not exist: " + config.input_path);
        }
    } catch (const std::exception& e) {
        throw StageError("config", e.what());
    }

    const std::filesystem::path out_dir(config.output_dir);
    std::filesystem::create_directories(out_dir);

    std::map<std::string, double> timings;
    json stats;

    // ingest
    IngestStats ingest_stats;
    const std::vector<Document> docs = run_stage("ingest", timings, [&] {
        auto loaded = load_corpus(config.input_path, static_cast<std::size_t>(config.min_chars),
                                  config.drop_retweets, config.drop_replies, &ingest_stats);
        if (loaded.empty()) throw std::runtime_error("no documents survive filtering");
        write_documents_jsonl(out_dir / "documents.jsonl", loaded);
        return loaded;
    });
    stats["records_read"] = ingest_stats.records_read;
    stats["dropped_retweets"] = ingest_stats.dropped_retweets;
    stats["dropped_replies"] = ingest_stats.dropped_replies;
    stats["dropped_short"] = ingest_stats.dropped_short;
    stats["documents_kept"] = ingest_stats.kept;

    // vectorize
    struct Vectorized {
        Vocabulary vocab;
        DocTermMatrix tfidf_matrix;
    };
    const Vectorized vec = run_stage("vectorize", timings, [&] {
        Vectorized v;
        v.vocab = build_vocabulary(docs, static_cast<int>(config.min_df));
        const DocTermMatrix counts = count_matrix(docs, v.vocab);
        v.tfidf_matrix = tfidf(counts);
        write_vocabulary_tsv(out_dir / "vocab.tsv", v.vocab);
        write_matrix_coordinate(out_dir / "matrix.mtx", v.tfidf_matrix.values);
        return v;
    });
    stats["vocabulary_size"] = vec.vocab.size();
    stats["matrix_nonzeros"] = vec.tfidf_matrix.values.nonZeros();

    // graph
    const HashtagGraph graph = run_stage("graph", timings, [&] {
        HashtagGraph g = HashtagGraph::build(docs, config.tau);
        write_graph_tsv(out_dir / "graph.tsv", g);
        return g;
    });
    stats["graph_nodes"] = graph.num_nodes();
    stats["graph_edges"] = graph.edges().size();

    // communities
    const Partition partition = run_stage("communities", timings, [&] {
        Partition p = louvain(graph, ModularityParams{config.resolution}, config.seed);
        write_partition_tsv(out_dir / "partition.tsv", p);
        return p;
    });
    stats["num_communities"] = partition.num_communities;

    // label (lookup, labeling, down-sampling, constraint matrix)
    struct Labeled {
        std::vector<Document> fit_docs;
        ConstraintMatrix constraints;
        double fraction_before = 0.0;
        double fraction_after = 0.0;
    };
    const Labeled labeled = run_stage("label", timings, [&] {
        Labeled l;
        const CommunityLookup lookup = make_lookup(partition, config.num_communities);
        write_lookup_tsv(out_dir / "lookup.tsv", lookup);
        std::vector<Document> tagged = label_documents(docs, lookup);
        const auto labeled_count = static_cast<double>(
            std::count_if(tagged.begin(), tagged.end(),
                          [](const Document& d) { return !d.labels.empty(); }));
        l.fraction_before = labeled_count / static_cast<double>(tagged.size());
        l.fit_docs = downsample_unlabeled(tagged, config.target_labeled_ratio, config.seed + 1);
        const auto labeled_after = static_cast<double>(
            std::count_if(l.fit_docs.begin(), l.fit_docs.end(),
                          [](const Document& d) { return !d.labels.empty(); }));
        l.fraction_after = labeled_after / static_cast<double>(l.fit_docs.size());
        write_documents_jsonl(out_dir / "labeled_documents.jsonl", l.fit_docs);
        l.constraints = build_constraint_matrix(l.fit_docs, config.k);
        write_constraint_coordinate(out_dir / "constraints.mtx", l.constraints);
        return l;
    });
    stats["selected_communities"] = std::min(config.num_communities, partition.num_communities);
    stats["labeled_fraction_before"] = labeled.fraction_before;
    stats["labeled_fraction_after"] = labeled.fraction_after;
    stats["documents_fit"] = labeled.fit_docs.size();

    SolverConfig solver;
    solver.k = config.k;
    solver.max_iter = config.max_iter;
    solver.tol = config.tol;
    solver.seed = config.seed + 2;

    const DocTermMatrix fit_matrix = select_rows(vec.tfidf_matrix, docs, labeled.fit_docs);

    // fit_supervised
    const Factorization supervised = run_stage("fit_supervised", timings, [&] {
        Factorization f = fit(fit_matrix, labeled.constraints, solver);
        write_factorization(out_dir / "w_supervised.mtx", out_dir / "h_supervised.mtx",
                            out_dir / "fit_supervised.json", f);
        return f;
    });

    // fit_unsupervised: same solver settings with an all-ones mask
    const Factorization unsupervised = run_stage("fit_unsupervised", timings, [&] {
        ConstraintMatrix ones;
        ones.entries = Eigen::MatrixXd::Ones(fit_matrix.rows(), config.k);
        ones.labeled_mask.assign(static_cast<std::size_t>(fit_matrix.rows()), false);
        Factorization f = fit(fit_matrix, ones, solver);
        write_factorization(out_dir / "w_unsupervised.mtx", out_dir / "h_unsupervised.mtx",
                            out_dir / "fit_unsupervised.json", f);
        return f;
    });

    // report
    run_stage("report", timings, [&] {
        std::vector<std::string> ids;
        std::vector<std::set<int>> reference;
        ids.reserve(labeled.fit_docs.size());
        reference.reserve(labeled.fit_docs.size());
        for (const auto& doc : labeled.fit_docs) {
            ids.push_back(doc.id);
            reference.push_back(doc.labels);
        }
        constexpr int kTopWords = 20;
        write_topics_json(out_dir / "topics_supervised.json",
                          make_report(supervised, vec.vocab, ids, kTopWords));
        write_topics_json(out_dir / "topics_unsupervised.json",
                          make_report(unsupervised, vec.vocab, ids, kTopWords));
        const auto [sup, unsup] = compare_runs(supervised, unsupervised, reference);
        write_comparison_json(out_dir / "comparison.json", sup, unsup);
    });

    // manifest
    run_stage("manifest", timings, [&] {
        json manifest;
        manifest["config"] = config_to_json(config);
        manifest["stats"] = stats;
        json checksums;
        for (const auto& name : pipeline_artifact_names()) {
            checksums[name] = sha256_file(out_dir / name);
        }
        manifest["checksums"] = checksums;
        json times;
        for (const auto& [stage, seconds] : timings) times[stage] = seconds;
        manifest["timings"] = times;
        write_file(out_dir / "manifest.json", manifest.dump(2) + "\n");
    });
}

}  // namespace hashtopics
