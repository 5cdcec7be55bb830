// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 hashtopics contributors

#pragma once

#include <Eigen/Dense>
#include <filesystem>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "hashtopics/tsnmf.hpp"
#include "hashtopics/vectorizer.hpp"

namespace hashtopics {

struct TopicWord {
    std::string token;
    double weight;
};

// dominant_topic is -1 when the coefficient row is all zeros.
struct DocumentSummary {
    std::string id;
    int dominant_topic = -1;
    std::vector<double> coefficients;
};

struct TopicReport {
    std::vector<std::vector<TopicWord>> topics;
    std::vector<DocumentSummary> documents;
};

struct ComparisonResult {
    double purity = 0.0;
    double nmi = 0.0;
    double objective = 0.0;
};

// Per topic, the top_n positive-weight tokens sorted by weight descending,
// ties broken by token index ascending. All-zero rows yield empty lists.
TopicReport top_words(const Eigen::MatrixXd& h, const Vocabulary& vocab, int top_n);

// Row argmax, ties broken by lowest component id; -1 for all-zero rows.
std::vector<int> dominant_topics(const Eigen::MatrixXd& w);

// top_words plus per-document summaries (doc_ids align with W rows).
TopicReport make_report(const Factorization& f, const Vocabulary& vocab,
                        const std::vector<std::string>& doc_ids, int top_n);

// Purity and NMI of each run's dominant-topic assignment against the
// reference, restricted to documents with exactly one reference label.
// NMI uses natural-log entropies and arithmetic-mean normalization.
// Throws when no document has exactly one reference label.
std::pair<ComparisonResult, ComparisonResult> compare_runs(
    const Factorization& run_a, const Factorization& run_b,
    const std::vector<std::set<int>>& reference);

void write_topics_json(const std::filesystem::path& path, const TopicReport& report);
void write_comparison_json(const std::filesystem::path& path, const ComparisonResult& supervised,
                           const ComparisonResult& unsupervised);

}  // namespace hashtopics
