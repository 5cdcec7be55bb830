// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 hashtopics contributors

#include "hashtopics/labeler.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "hashtopics/rng.hpp"

namespace hashtopics {

CommunityLookup make_lookup(const Partition& partition, int c) {
    if (c < 1) throw std::invalid_argument("community count must be positive");
    CommunityLookup lookup;
    lookup.num_selected = std::min(c, partition.num_communities);
    for (const auto& [tag, cid] : partition.community_of) {
        if (cid < lookup.num_selected) lookup.table.emplace(tag, cid);
    }
    return lookup;
}

std::vector<Document> label_documents(std::vector<Document> docs, const CommunityLookup& lookup) {
    for (auto& doc : docs) {
        doc.labels.clear();
        for (const auto& tag : doc.hashtags) {
            auto it = lookup.table.find(tag);
            if (it != lookup.table.end()) doc.labels.insert(it->second);
        }
    }
    return docs;
}

ConstraintMatrix build_constraint_matrix(const std::vector<Document>& docs, int k) {
    if (k < 1) throw std::invalid_argument("component count must be positive");
    const Eigen::Index n = static_cast<Eigen::Index>(docs.size());
    ConstraintMatrix m;
    m.entries = Eigen::MatrixXd::Zero(n, k);
    m.labeled_mask.assign(docs.size(), false);
    for (Eigen::Index i = 0; i < n; ++i) {
        const auto& labels = docs[static_cast<std::size_t>(i)].labels;
        if (labels.empty()) {
            m.entries.row(i).setOnes();
            continue;
        }
        m.labeled_mask[static_cast<std::size_t>(i)] = true;
        for (int j : labels) {
            if (j < 0 || j >= k) {
                throw std::runtime_error("label id out of range for document " +
                                         docs[static_cast<std::size_t>(i)].id);
            }
            m.entries(i, j) = 1.0;
        }
    }
    return m;
}

std::vector<Document> downsample_unlabeled(const std::vector<Document>& docs, double target_ratio,
                                           std::uint64_t seed) {
    if (!(target_ratio > 0.0) || target_ratio > 1.0) {
        throw std::invalid_argument("target ratio must be in (0, 1]");
    }
    std::vector<std::size_t> unlabeled;
    std::size_t n_labeled = 0;
    for (std::size_t i = 0; i < docs.size(); ++i) {
        if (docs[i].labels.empty()) {
            unlabeled.push_back(i);
        } else {
            ++n_labeled;
        }
    }
    if (unlabeled.empty()) return docs;

    const double fraction = static_cast<double>(n_labeled) / static_cast<double>(docs.size());
    if (fraction >= target_ratio) return docs;
    if (n_labeled == 0) throw std::runtime_error("cannot reach target ratio");

    const auto keep_count = static_cast<std::size_t>(
        std::floor(static_cast<double>(n_labeled) * (1.0 - target_ratio) / target_ratio));

    Rng rng(seed);
    rng.shuffle(unlabeled);
    unlabeled.resize(std::min(keep_count, unlabeled.size()));
    std::sort(unlabeled.begin(), unlabeled.end());

    std::vector<Document> out;
    out.reserve(n_labeled + unlabeled.size());
    std::size_t next = 0;
    for (std::size_t i = 0; i < docs.size(); ++i) {
        const bool keep_unlabeled = next < unlabeled.size() && unlabeled[next] == i;
        if (keep_unlabeled) ++next;
        if (!docs[i].labels.empty() || keep_unlabeled) out.push_back(docs[i]);
    }
    return out;
}

void write_lookup_tsv(const std::filesystem::path& path, const CommunityLookup& lookup) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open file for writing: " + path.string());
    for (const auto& [tag, cid] : lookup.table) {
        out << tag << '\t' << cid << '\n';
    }
    if (!out) throw std::runtime_error("write failed: " + path.string());
}

CommunityLookup read_lookup_tsv(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open file: " + path.string());
    CommunityLookup lookup;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ss(line);
        std::string tag;
        int cid = 0;
        if (!std::getline(ss, tag, '\t') || !(ss >> cid)) {
            throw std::runtime_error("bad lookup line in " + path.string() + ": " + line);
        }
        lookup.table.emplace(tag, cid);
        lookup.num_selected = std::max(lookup.num_selected, cid + 1);
    }
    return lookup;
}

void write_constraint_coordinate(const std::filesystem::path& path,
                                 const ConstraintMatrix& matrix) {
    std::ostringstream body;
    std::int64_t lines = 0;
    for (Eigen::Index i = 0; i < matrix.rows(); ++i) {
        if (!matrix.labeled_mask[static_cast<std::size_t>(i)]) {
            body << i << " *\n";
            ++lines;
            continue;
        }
        for (Eigen::Index j = 0; j < matrix.cols(); ++j) {
            if (matrix.entries(i, j) != 0.0) {
                body << i << ' ' << j << " 1\n";
                ++lines;
            }
        }
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open file for writing: " + path.string());
    out << matrix.rows() << ' ' << matrix.cols() << ' ' << lines << '\n' << body.str();
    if (!out) throw std::runtime_error("write failed: " + path.string());
}

ConstraintMatrix read_constraint_coordinate(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open file: " + path.string());
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("empty constraint file: " + path.string());
    std::istringstream header(line);
    Eigen::Index n = 0, k = 0;
    std::int64_t lines = 0;
    if (!(header >> n >> k >> lines) || n < 0 || k < 1 || lines < 0) {
        throw std::runtime_error("bad constraint header in " + path.string());
    }
    ConstraintMatrix m;
    m.entries = Eigen::MatrixXd::Zero(n, k);
    m.labeled_mask.assign(static_cast<std::size_t>(n), false);
    for (std::int64_t l = 0; l < lines; ++l) {
        if (!std::getline(in, line)) {
            throw std::runtime_error("truncated constraint file: " + path.string());
        }
        std::istringstream ss(line);
        Eigen::Index row = 0;
        std::string col;
        if (!(ss >> row >> col) || row < 0 || row >= n) {
            throw std::runtime_error("bad constraint line in " + path.string() + ": " + line);
        }
        if (col == "*") {
            m.entries.row(row).setOnes();
            continue;
        }
        const Eigen::Index j = static_cast<Eigen::Index>(std::stoll(col));
        if (j < 0 || j >= k) {
            throw std::runtime_error("bad constraint column in " + path.string() + ": " + line);
        }
        m.entries(row, j) = 1.0;
        m.labeled_mask[static_cast<std::size_t>(row)] = true;
    }
    return m;
}

}  // namespace hashtopics
