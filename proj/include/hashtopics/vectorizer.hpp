// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 hashtopics contributors

#pragma once

#include <Eigen/SparseCore>

#include <cstdint>
#include <filesystem>
#include <string>
#include <unordered_map>
#include <vector>

#include "hashtopics/corpus.hpp"

namespace hashtopics {

/// Token <-> column-index mapping with per-token document frequencies.
/// Indices follow ascending lexicographic token order.
struct Vocabulary {
    std::vector<std::string> index_to_token;
    std::unordered_map<std::string, int> token_to_index;
    std::vector<std::int64_t> doc_frequency;

    int size() const { return static_cast<int>(index_to_token.size()); }
};

using SparseRowMatrix = Eigen::SparseMatrix<double, Eigen::RowMajor>;

/// Sparse document-feature matrix. kind=counts holds raw term counts,
/// kind=tfidf the reweighted and row-normalized variant.
struct DocTermMatrix {
    enum class Kind { counts, tfidf };

    Kind kind = Kind::counts;
    SparseRowMatrix values;  // n x w

    Eigen::Index rows() const { return values.rows(); }
    Eigen::Index cols() const { return values.cols(); }
};

/// Tokens appearing in at least `min_df` documents, indexed in ascending
/// lexicographic order. Throws "empty vocabulary" when nothing survives.
Vocabulary build_vocabulary(const std::vector<Document>& docs, int min_df);

/// X[i][j] = occurrences of token j in document i. Out-of-vocabulary
/// tokens are skipped; documents with none produce all-zero rows.
DocTermMatrix count_matrix(const std::vector<Document>& docs, const Vocabulary& vocab);

/// X~[i][j] = X[i][j] * idf(j) with idf(j) = ln((1+n)/(1+df_j)) + 1,
/// followed by Euclidean normalization of every non-zero row. Document
/// frequencies are taken from the column support of X itself.
DocTermMatrix tfidf(const DocTermMatrix& counts);

/// Coordinate text export: header "n w nnz", then "row col value" lines in
/// row-major order.
void write_matrix_coordinate(const std::filesystem::path& path, const SparseRowMatrix& m);
SparseRowMatrix read_matrix_coordinate(const std::filesystem::path& path);

/// TSV export: token<TAB>index<TAB>doc_frequency, in index order.
void write_vocabulary_tsv(const std::filesystem::path& path, const Vocabulary& vocab);
Vocabulary read_vocabulary_tsv(const std::filesystem::path& path);

}  // namespace hashtopics
