// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 hashtopics contributors

#include "hashtopics/report.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <nlohmann/json.hpp>
#include <stdexcept>

#include "hashtopics/io.hpp"

namespace hashtopics {

TopicReport top_words(const Eigen::MatrixXd& h, const Vocabulary& vocab, int top_n) {
    if (top_n < 1) throw std::invalid_argument("top_n must be positive");
    if (h.cols() != static_cast<Eigen::Index>(vocab.size())) {
        throw std::invalid_argument("H columns do not match vocabulary size");
    }
    TopicReport report;
    report.topics.resize(static_cast<std::size_t>(h.rows()));
    for (Eigen::Index t = 0; t < h.rows(); ++t) {
        std::vector<Eigen::Index> idx;
        for (Eigen::Index j = 0; j < h.cols(); ++j) {
            if (h(t, j) > 0.0) idx.push_back(j);
        }
        std::sort(idx.begin(), idx.end(), [&](Eigen::Index a, Eigen::Index b) {
            if (h(t, a) != h(t, b)) return h(t, a) > h(t, b);
            return a < b;
        });
        if (static_cast<int>(idx.size()) > top_n) idx.resize(static_cast<std::size_t>(top_n));
        auto& words = report.topics[static_cast<std::size_t>(t)];
        words.reserve(idx.size());
        for (Eigen::Index j : idx) {
            words.push_back({vocab.index_to_token[static_cast<std::size_t>(j)], h(t, j)});
        }
    }
    return report;
}

std::vector<int> dominant_topics(const Eigen::MatrixXd& w) {
    std::vector<int> out(static_cast<std::size_t>(w.rows()), -1);
    for (Eigen::Index i = 0; i < w.rows(); ++i) {
        int best = -1;
        double best_value = 0.0;
        for (Eigen::Index j = 0; j < w.cols(); ++j) {
            if (w(i, j) > best_value) {
                best_value = w(i, j);
                best = static_cast<int>(j);
            }
        }
        out[static_cast<std::size_t>(i)] = best;
    }
    return out;
}

TopicReport make_report(const Factorization& f, const Vocabulary& vocab,
                        const std::vector<std::string>& doc_ids, int top_n) {
    if (static_cast<Eigen::Index>(doc_ids.size()) != f.W.rows()) {
        throw std::invalid_argument("document ids do not match W rows");
    }
    TopicReport report = top_words(f.H, vocab, top_n);
    const std::vector<int> dominant = dominant_topics(f.W);
    report.documents.resize(doc_ids.size());
    for (std::size_t i = 0; i < doc_ids.size(); ++i) {
        auto& doc = report.documents[i];
        doc.id = doc_ids[i];
        doc.dominant_topic = dominant[i];
        doc.coefficients.assign(f.W.row(static_cast<Eigen::Index>(i)).begin(),
                                f.W.row(static_cast<Eigen::Index>(i)).end());
    }
    return report;
}

namespace {

struct Metrics {
    double purity = 0.0;
    double nmi = 0.0;
};

// Both inputs are parallel over the filtered documents; clusters may
// contain -1 (unassigned), which acts as a regular cluster id.
Metrics agreement(const std::vector<int>& clusters, const std::vector<int>& labels) {
    const auto n = static_cast<double>(clusters.size());
    std::map<std::pair<int, int>, double> joint;
    std::map<int, double> cluster_count;
    std::map<int, double> label_count;
    for (std::size_t i = 0; i < clusters.size(); ++i) {
        joint[{clusters[i], labels[i]}] += 1.0;
        cluster_count[clusters[i]] += 1.0;
        label_count[labels[i]] += 1.0;
    }

    Metrics m;
    std::map<int, double> best_in_cluster;
    for (const auto& [key, count] : joint) {
        double& best = best_in_cluster[key.first];
        best = std::max(best, count);
    }
    for (const auto& [c, best] : best_in_cluster) m.purity += best;
    m.purity /= n;

    double h_c = 0.0;
    for (const auto& [c, count] : cluster_count) {
        const double p = count / n;
        h_c -= p * std::log(p);
    }
    double h_l = 0.0;
    for (const auto& [l, count] : label_count) {
        const double p = count / n;
        h_l -= p * std::log(p);
    }
    if (h_c == 0.0 && h_l == 0.0) {
        m.nmi = 1.0;  // both partitions trivial, hence identical
        return m;
    }
    double mi = 0.0;
    for (const auto& [key, count] : joint) {
        const double p = count / n;
        const double pc = cluster_count[key.first] / n;
        const double pl = label_count[key.second] / n;
        mi += p * std::log(p / (pc * pl));
    }
    m.nmi = std::clamp(mi / (0.5 * (h_c + h_l)), 0.0, 1.0);
    return m;
}

}  // namespace

std::pair<ComparisonResult, ComparisonResult> compare_runs(
    const Factorization& run_a, const Factorization& run_b,
    const std::vector<std::set<int>>& reference) {
    if (run_a.W.rows() != run_b.W.rows() ||
        static_cast<Eigen::Index>(reference.size()) != run_a.W.rows()) {
        throw std::invalid_argument("comparison inputs do not cover the same documents");
    }
    const std::vector<int> dom_a = dominant_topics(run_a.W);
    const std::vector<int> dom_b = dominant_topics(run_b.W);

    std::vector<int> clusters_a, clusters_b, labels;
    for (std::size_t i = 0; i < reference.size(); ++i) {
        if (reference[i].size() != 1) continue;
        clusters_a.push_back(dom_a[i]);
        clusters_b.push_back(dom_b[i]);
        labels.push_back(*reference[i].begin());
    }
    if (labels.empty()) {
        throw std::runtime_error("no document has exactly one reference label");
    }

    const Metrics ma = agreement(clusters_a, labels);
    const Metrics mb = agreement(clusters_b, labels);
    ComparisonResult a{ma.purity, ma.nmi,
                       run_a.objective_trace.empty() ? 0.0 : run_a.objective_trace.back()};
    ComparisonResult b{mb.purity, mb.nmi,
                       run_b.objective_trace.empty() ? 0.0 : run_b.objective_trace.back()};
    return {a, b};
}

void write_topics_json(const std::filesystem::path& path, const TopicReport& report) {
    nlohmann::json doc;
    doc["topics"] = nlohmann::json::array();
    for (std::size_t t = 0; t < report.topics.size(); ++t) {
        nlohmann::json topic;
        topic["id"] = t;
        topic["words"] = nlohmann::json::array();
        for (const auto& word : report.topics[t]) {
            topic["words"].push_back({{"token", word.token}, {"weight", word.weight}});
        }
        doc["topics"].push_back(std::move(topic));
    }
    doc["documents"] = nlohmann::json::array();
    for (const auto& summary : report.documents) {
        doc["documents"].push_back({{"id", summary.id},
                                    {"dominant_topic", summary.dominant_topic},
                                    {"coefficients", summary.coefficients}});
    }
    write_file(path, doc.dump(2) + "\n");
}

void write_comparison_json(const std::filesystem::path& path, const ComparisonResult& supervised,
                           const ComparisonResult& unsupervised) {
    nlohmann::json doc;
    doc["supervised"] = {{"purity", supervised.purity},
                         {"nmi", supervised.nmi},
                         {"objective", supervised.objective}};
    doc["unsupervised"] = {{"purity", unsupervised.purity},
                           {"nmi", unsupervised.nmi},
                           {"objective", unsupervised.objective}};
    write_file(path, doc.dump(2) + "\n");
}

}  // namespace hashtopics
