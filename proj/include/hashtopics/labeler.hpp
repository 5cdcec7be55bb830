// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 hashtopics contributors

#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "hashtopics/corpus.hpp"
#include "hashtopics/hashgraph.hpp"

namespace hashtopics {

// Hashtag -> community id, restricted to the selected top communities.
// Every stored id is in [0, num_selected).
struct CommunityLookup {
    std::map<std::string, int> table;
    int num_selected = 0;
};

// Binary constraint matrix L over n documents and k components.
// Unlabeled rows are all ones; labeled rows are the indicator of the
// document's label set.
struct ConstraintMatrix {
    Eigen::MatrixXd entries;
    std::vector<bool> labeled_mask;

    Eigen::Index rows() const { return entries.rows(); }
    Eigen::Index cols() const { return entries.cols(); }
};

// Restricts the partition to its c largest communities (ids 0..c-1 after
// renumbering) and keys every member hashtag by its community id.
CommunityLookup make_lookup(const Partition& partition, int c);

// Sets labels(d) = { lookup[h] : h in hashtags(d), h in lookup } on every
// document. A document can end up with zero, one or several labels.
std::vector<Document> label_documents(std::vector<Document> docs, const CommunityLookup& lookup);

// L[i][j] = 1 iff j is a label of document i or the document is unlabeled.
// Throws if any label id is outside [0, k).
ConstraintMatrix build_constraint_matrix(const std::vector<Document>& docs, int k);

// Keeps all labeled documents plus a seeded uniform subset of
// floor(n_labeled * (1 - r) / r) unlabeled ones so the labeled fraction
// reaches at least target_ratio; input order is preserved. Returns the
// input unchanged when the fraction already meets the target.
std::vector<Document> downsample_unlabeled(const std::vector<Document>& docs, double target_ratio,
                                           std::uint64_t seed);

// TSV lines `tag<TAB>community_id`.
void write_lookup_tsv(const std::filesystem::path& path, const CommunityLookup& lookup);
CommunityLookup read_lookup_tsv(const std::filesystem::path& path);

// Coordinate text of the 1-entries: header `n k nnz` where nnz counts the
// data lines, then `row col 1` per labeled entry and the sentinel
// `row *` for each all-ones (unlabeled) row.
void write_constraint_coordinate(const std::filesystem::path& path, const ConstraintMatrix& matrix);
ConstraintMatrix read_constraint_coordinate(const std::filesystem::path& path);

}  // namespace hashtopics
