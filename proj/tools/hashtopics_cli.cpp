// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 hashtopics contributors

#include <CLI11.hpp>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "hashtopics/corpus.hpp"
#include "hashtopics/hashgraph.hpp"
#include "hashtopics/io.hpp"
#include "hashtopics/labeler.hpp"
#include "hashtopics/pipeline.hpp"
#include "hashtopics/report.hpp"
#include "hashtopics/synthetic.hpp"
#include "hashtopics/tsnmf.hpp"
#include "hashtopics/vectorizer.hpp"

namespace {

using namespace hashtopics;

int fail(const std::string& stage, const std::string& message) {
    std::cerr << "[" << stage << "] " << message << "\n";
    return 1;
}

// Documents for factorization: full matrix rows picked by id when a
// selection file is given, otherwise the matrix as-is.
DocTermMatrix select_fit_rows(const DocTermMatrix& full, const std::vector<Document>& all_docs,
                              const std::vector<Document>& subset) {
    std::map<std::string, Eigen::Index> row_of;
    for (std::size_t i = 0; i < all_docs.size(); ++i) {
        row_of.emplace(all_docs[i].id, static_cast<Eigen::Index>(i));
    }
    std::vector<Eigen::Triplet<double>> triplets;
    for (std::size_t i = 0; i < subset.size(); ++i) {
        auto it = row_of.find(subset[i].id);
        if (it == row_of.end()) {
            throw std::runtime_error("selected document not in corpus: " + subset[i].id);
        }
        for (SparseRowMatrix::InnerIterator entry(full.values, static_cast<int>(it->second)); entry;
             ++entry) {
            triplets.emplace_back(static_cast<Eigen::Index>(i), entry.col(), entry.value());
        }
    }
    DocTermMatrix out;
    out.kind = full.kind;
    out.values.resize(static_cast<Eigen::Index>(subset.size()), full.cols());
    out.values.setFromTriplets(triplets.begin(), triplets.end());
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Topic extraction from short hashtag-bearing documents"};
    app.require_subcommand(1);

    // pipeline
    auto* pipeline_cmd = app.add_subcommand("pipeline", "Run every stage from one config");
    std::string config_path;
    PipelineConfig flags;
    pipeline_cmd->add_option("--config", config_path, "JSON config file");
    pipeline_cmd->add_option("--input", flags.input_path, "Input corpus (JSON Lines)");
    pipeline_cmd->add_option("--output-dir", flags.output_dir, "Artifact directory");
    pipeline_cmd->add_option("--min-chars", flags.min_chars, "Minimum raw text length");
    pipeline_cmd->add_flag("--drop-retweets{true},--keep-retweets{false}", flags.drop_retweets,
                           "Drop or keep retweets");
    pipeline_cmd->add_flag("--drop-replies{true},--keep-replies{false}", flags.drop_replies,
                           "Drop or keep replies");
    pipeline_cmd->add_option("--min-df", flags.min_df, "Minimum document frequency");
    pipeline_cmd->add_option("--tau", flags.tau, "Co-occurrence truncation threshold");
    pipeline_cmd->add_option("--resolution", flags.resolution, "Louvain resolution");
    pipeline_cmd->add_option("--num-communities", flags.num_communities,
                             "Communities used for labeling");
    pipeline_cmd->add_option("--k", flags.k, "Factorization components");
    pipeline_cmd->add_option("--target-labeled-ratio", flags.target_labeled_ratio,
                             "Labeled fraction after down-sampling");
    pipeline_cmd->add_option("--max-iter", flags.max_iter, "Solver iteration cap");
    pipeline_cmd->add_option("--tol", flags.tol, "Solver stopping tolerance");
    pipeline_cmd->add_option("--seed", flags.seed, "Base random seed");

    // ingest
    auto* ingest_cmd = app.add_subcommand("ingest", "Filter and tokenize a raw corpus");
    std::string in_input, in_output;
    std::int64_t in_min_chars = 160;
    bool in_keep_retweets = false, in_keep_replies = false;
    ingest_cmd->add_option("--input", in_input, "Raw corpus (JSON Lines)")->required();
    ingest_cmd->add_option("--output", in_output, "Tokenized documents (JSON Lines)")->required();
    ingest_cmd->add_option("--min-chars", in_min_chars, "Minimum raw text length");
    ingest_cmd->add_flag("--keep-retweets", in_keep_retweets, "Keep retweets");
    ingest_cmd->add_flag("--keep-replies", in_keep_replies, "Keep replies");

    // vectorize
    auto* vec_cmd = app.add_subcommand("vectorize", "Build the TF-IDF document-term matrix");
    std::string v_docs, v_matrix, v_vocab;
    std::int64_t v_min_df = 5;
    vec_cmd->add_option("--documents", v_docs, "Tokenized documents")->required();
    vec_cmd->add_option("--matrix", v_matrix, "Output matrix (coordinate text)")->required();
    vec_cmd->add_option("--vocab", v_vocab, "Output vocabulary TSV")->required();
    vec_cmd->add_option("--min-df", v_min_df, "Minimum document frequency");

    // graph
    auto* graph_cmd = app.add_subcommand("graph", "Build the hashtag co-occurrence graph");
    std::string g_docs, g_output;
    std::int64_t g_tau = 2;
    graph_cmd->add_option("--documents", g_docs, "Tokenized documents")->required();
    graph_cmd->add_option("--output", g_output, "Output edge list TSV")->required();
    graph_cmd->add_option("--tau", g_tau, "Co-occurrence truncation threshold");

    // communities
    auto* comm_cmd = app.add_subcommand("communities", "Louvain community detection");
    std::string c_docs, c_graph, c_output;
    double c_resolution = 0.3;
    std::uint64_t c_seed = 42;
    comm_cmd->add_option("--documents", c_docs, "Tokenized documents (node set)")->required();
    comm_cmd->add_option("--graph", c_graph, "Edge list TSV")->required();
    comm_cmd->add_option("--output", c_output, "Output partition TSV")->required();
    comm_cmd->add_option("--resolution", c_resolution, "Louvain resolution");
    comm_cmd->add_option("--seed", c_seed, "Random seed");

    // label
    auto* label_cmd = app.add_subcommand("label", "Label documents and build constraints");
    std::string l_docs, l_partition, l_lookup, l_labeled, l_constraints;
    int l_num_communities = 70, l_k = 80;
    double l_ratio = 0.5;
    std::uint64_t l_seed = 43;
    label_cmd->add_option("--documents", l_docs, "Tokenized documents")->required();
    label_cmd->add_option("--partition", l_partition, "Partition TSV")->required();
    label_cmd->add_option("--lookup", l_lookup, "Output lookup TSV")->required();
    label_cmd->add_option("--labeled", l_labeled, "Output labeled documents")->required();
    label_cmd->add_option("--constraints", l_constraints, "Output constraint matrix")->required();
    label_cmd->add_option("--num-communities", l_num_communities, "Communities used for labeling");
    label_cmd->add_option("--k", l_k, "Factorization components");
    label_cmd->add_option("--target-labeled-ratio", l_ratio, "Labeled fraction target");
    label_cmd->add_option("--seed", l_seed, "Down-sampling seed");

    // fit
    auto* fit_cmd = app.add_subcommand("fit", "Factorize the document-term matrix");
    std::string f_matrix, f_constraints, f_docs, f_selected, f_w, f_h, f_meta;
    int f_k = 80, f_max_iter = 200;
    double f_tol = 1e-4;
    std::uint64_t f_seed = 44;
    fit_cmd->add_option("--matrix", f_matrix, "Document-term matrix")->required();
    fit_cmd->add_option("--constraints", f_constraints,
                        "Constraint matrix (omit for plain NMF)");
    fit_cmd->add_option("--documents", f_docs, "Documents behind the matrix rows");
    fit_cmd->add_option("--selected", f_selected, "Documents to keep (row selection)");
    fit_cmd->add_option("--w-out", f_w, "Output W matrix")->required();
    fit_cmd->add_option("--h-out", f_h, "Output H matrix")->required();
    fit_cmd->add_option("--meta-out", f_meta, "Output JSON sidecar")->required();
    fit_cmd->add_option("--k", f_k, "Factorization components");
    fit_cmd->add_option("--max-iter", f_max_iter, "Iteration cap");
    fit_cmd->add_option("--tol", f_tol, "Stopping tolerance");
    fit_cmd->add_option("--seed", f_seed, "Initialization seed");

    // report
    auto* report_cmd = app.add_subcommand("report", "Topic report and run comparison");
    std::string r_w, r_h, r_meta, r_vocab, r_docs, r_topics;
    std::string r_w2, r_h2, r_meta2, r_comparison;
    int r_top_n = 20;
    report_cmd->add_option("--w-matrix", r_w, "W matrix")->required();
    report_cmd->add_option("--h-matrix", r_h, "H matrix")->required();
    report_cmd->add_option("--meta", r_meta, "Fit JSON sidecar")->required();
    report_cmd->add_option("--vocab", r_vocab, "Vocabulary TSV")->required();
    report_cmd->add_option("--documents", r_docs, "Labeled documents (ids and labels)")->required();
    report_cmd->add_option("--topics", r_topics, "Output topic report JSON")->required();
    report_cmd->add_option("--w2-matrix", r_w2, "Second run W (enables comparison)");
    report_cmd->add_option("--h2-matrix", r_h2, "Second run H");
    report_cmd->add_option("--meta2", r_meta2, "Second run sidecar");
    report_cmd->add_option("--comparison", r_comparison, "Output comparison JSON");
    report_cmd->add_option("--top-n", r_top_n, "Words listed per topic");

    // synth
    auto* synth_cmd = app.add_subcommand("synth", "Generate a planted-topic corpus");
    std::string s_output, s_planted;
    SyntheticParams s_params;
    synth_cmd->add_option("--output", s_output, "Output raw corpus (JSON Lines)")->required();
    synth_cmd->add_option("--planted", s_planted, "Output planted topics TSV");
    synth_cmd->add_option("--num-topics", s_params.num_topics, "Planted topic count");
    synth_cmd->add_option("--num-docs", s_params.num_docs, "Document count");
    synth_cmd->add_option("--words-per-topic", s_params.words_per_topic, "Topic vocabulary size");
    synth_cmd->add_option("--shared-noise-words", s_params.shared_noise_words,
                          "Shared vocabulary size");
    synth_cmd->add_option("--min-words", s_params.min_words, "Minimum words per document");
    synth_cmd->add_option("--max-words", s_params.max_words, "Maximum words per document");
    synth_cmd->add_option("--noise-probability", s_params.noise_probability,
                          "Chance a word is drawn from the shared vocabulary");
    synth_cmd->add_option("--tags-per-topic", s_params.tags_per_topic, "Tag pool size per topic");
    synth_cmd->add_option("--min-hashtags", s_params.min_hashtags, "Minimum hashtags per document");
    synth_cmd->add_option("--max-hashtags", s_params.max_hashtags, "Maximum hashtags per document");
    synth_cmd->add_option("--contamination", s_params.contamination,
                          "Chance a hashtag comes from another topic's pool");
    synth_cmd->add_option("--seed", s_params.seed, "Random seed");

    CLI11_PARSE(app, argc, argv);

    try {
        if (pipeline_cmd->parsed()) {
            PipelineConfig config;
            if (!config_path.empty()) config = load_pipeline_config(config_path);
            if (pipeline_cmd->count("--input")) config.input_path = flags.input_path;
            if (pipeline_cmd->count("--output-dir")) config.output_dir = flags.output_dir;
            if (pipeline_cmd->count("--min-chars")) config.min_chars = flags.min_chars;
            if (pipeline_cmd->count("--drop-retweets")) config.drop_retweets = flags.drop_retweets;
            if (pipeline_cmd->count("--drop-replies")) config.drop_replies = flags.drop_replies;
            if (pipeline_cmd->count("--min-df")) config.min_df = flags.min_df;
            if (pipeline_cmd->count("--tau")) config.tau = flags.tau;
            if (pipeline_cmd->count("--resolution")) config.resolution = flags.resolution;
            if (pipeline_cmd->count("--num-communities")) {
                config.num_communities = flags.num_communities;
            }
            if (pipeline_cmd->count("--k")) config.k = flags.k;
            if (pipeline_cmd->count("--target-labeled-ratio")) {
                config.target_labeled_ratio = flags.target_labeled_ratio;
            }
            if (pipeline_cmd->count("--max-iter")) config.max_iter = flags.max_iter;
            if (pipeline_cmd->count("--tol")) config.tol = flags.tol;
            if (pipeline_cmd->count("--seed")) config.seed = flags.seed;
            try {
                run_pipeline(config);
            } catch (const StageError& e) {
                return fail(e.stage(), e.what());
            }
            return 0;
        }

        if (ingest_cmd->parsed()) {
            const auto docs = load_corpus(in_input, static_cast<std::size_t>(in_min_chars),
                                          !in_keep_retweets, !in_keep_replies);
            write_documents_jsonl(in_output, docs);
            return 0;
        }

        if (vec_cmd->parsed()) {
            const auto docs = read_documents_jsonl(v_docs);
            const Vocabulary vocab = build_vocabulary(docs, static_cast<int>(v_min_df));
            const DocTermMatrix weighted = tfidf(count_matrix(docs, vocab));
            write_vocabulary_tsv(v_vocab, vocab);
            write_matrix_coordinate(v_matrix, weighted.values);
            return 0;
        }

        if (graph_cmd->parsed()) {
            const auto docs = read_documents_jsonl(g_docs);
            write_graph_tsv(g_output, HashtagGraph::build(docs, g_tau));
            return 0;
        }

        if (comm_cmd->parsed()) {
            const auto docs = read_documents_jsonl(c_docs);
            std::vector<std::string> nodes;
            for (const auto& doc : docs) {
                nodes.insert(nodes.end(), doc.hashtags.begin(), doc.hashtags.end());
            }
            const auto edges = read_graph_tsv(c_graph);
            const HashtagGraph graph = HashtagGraph::from_edges(std::move(nodes), edges, 1);
            const Partition partition = louvain(graph, ModularityParams{c_resolution}, c_seed);
            write_partition_tsv(c_output, partition);
            return 0;
        }

        if (label_cmd->parsed()) {
            const auto docs = read_documents_jsonl(l_docs);
            const Partition partition = read_partition_tsv(l_partition);
            const CommunityLookup lookup = make_lookup(partition, l_num_communities);
            write_lookup_tsv(l_lookup, lookup);
            auto tagged = label_documents(docs, lookup);
            auto kept = downsample_unlabeled(tagged, l_ratio, l_seed);
            write_documents_jsonl(l_labeled, kept);
            write_constraint_coordinate(l_constraints, build_constraint_matrix(kept, l_k));
            return 0;
        }

        if (fit_cmd->parsed()) {
            DocTermMatrix matrix;
            matrix.kind = DocTermMatrix::Kind::tfidf;
            matrix.values = read_matrix_coordinate(f_matrix);
            if (!f_selected.empty()) {
                if (f_docs.empty()) {
                    throw std::runtime_error("--selected requires --documents");
                }
                matrix = select_fit_rows(matrix, read_documents_jsonl(f_docs),
                                         read_documents_jsonl(f_selected));
            }
            SolverConfig solver;
            solver.k = f_k;
            solver.max_iter = f_max_iter;
            solver.tol = f_tol;
            solver.seed = f_seed;
            Factorization result;
            if (f_constraints.empty()) {
                result = fit_plain(matrix, solver);
            } else {
                result = fit(matrix, read_constraint_coordinate(f_constraints), solver);
            }
            write_factorization(f_w, f_h, f_meta, result);
            return 0;
        }

        if (report_cmd->parsed()) {
            const Factorization run = read_factorization(r_w, r_h, r_meta);
            const Vocabulary vocab = read_vocabulary_tsv(r_vocab);
            const auto docs = read_documents_jsonl(r_docs);
            std::vector<std::string> ids;
            std::vector<std::set<int>> reference;
            for (const auto& doc : docs) {
                ids.push_back(doc.id);
                reference.push_back(doc.labels);
            }
            write_topics_json(r_topics, make_report(run, vocab, ids, r_top_n));
            if (!r_w2.empty()) {
                if (r_h2.empty() || r_meta2.empty() || r_comparison.empty()) {
                    throw std::runtime_error(
                        "--w2-matrix requires --h2-matrix, --meta2 and --comparison");
                }
                const Factorization other = read_factorization(r_w2, r_h2, r_meta2);
                const auto [a, b] = compare_runs(run, other, reference);
                write_comparison_json(r_comparison, a, b);
            }
            return 0;
        }

        if (synth_cmd->parsed()) {
            const SyntheticCorpus corpus = generate_planted_corpus(s_params);
            write_raw_documents_jsonl(s_output, corpus.raw);
            if (!s_planted.empty()) {
                std::ofstream out(s_planted, std::ios::binary | std::ios::trunc);
                if (!out) throw std::runtime_error("cannot open file for writing: " + s_planted);
                for (std::size_t i = 0; i < corpus.raw.size(); ++i) {
                    out << corpus.raw[i].id << '\t' << corpus.planted[i] << '\n';
                }
            }
            return 0;
        }
    } catch (const std::exception& e) {
        return fail(app.get_subcommands().front()->get_name(), e.what());
    }
    return 0;
}
