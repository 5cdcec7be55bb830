// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 hashtopics contributors

#include "hashtopics/vectorizer.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include "hashtopics/io.hpp"

namespace hashtopics {

Vocabulary build_vocabulary(const std::vector<Document>& docs, int min_df) {
    if (min_df < 1) throw std::invalid_argument("min_df must be positive");

    std::map<std::string, std::int64_t> df;
    for (const auto& doc : docs) {
        std::set<std::string> uniq(doc.tokens.begin(), doc.tokens.end());
        for (const auto& tok : uniq) ++df[tok];
    }

    Vocabulary vocab;
    for (const auto& [tok, count] : df) {
        if (count >= min_df) {
            vocab.token_to_index.emplace(tok, static_cast<int>(vocab.index_to_token.size()));
            vocab.index_to_token.push_back(tok);
            vocab.doc_frequency.push_back(count);
        }
    }
    if (vocab.index_to_token.empty()) throw std::runtime_error("empty vocabulary");
    return vocab;
}

DocTermMatrix count_matrix(const std::vector<Document>& docs, const Vocabulary& vocab) {
    const Eigen::Index n = static_cast<Eigen::Index>(docs.size());
    const Eigen::Index w = vocab.size();

    std::vector<Eigen::Triplet<double>> triplets;
    for (Eigen::Index i = 0; i < n; ++i) {
        for (const auto& tok : docs[static_cast<std::size_t>(i)].tokens) {
            auto it = vocab.token_to_index.find(tok);
            if (it != vocab.token_to_index.end()) {
                triplets.emplace_back(i, it->second, 1.0);
            }
        }
    }

    DocTermMatrix X;
    X.kind = DocTermMatrix::Kind::counts;
    X.values.resize(n, w);
    X.values.setFromTriplets(triplets.begin(), triplets.end());  // sums duplicates
    X.values.makeCompressed();
    return X;
}

DocTermMatrix tfidf(const DocTermMatrix& counts) {
    if (counts.kind != DocTermMatrix::Kind::counts) {
        throw std::invalid_argument("tfidf expects a counts matrix");
    }
    const Eigen::Index n = counts.rows();
    const Eigen::Index w = counts.cols();

    std::vector<std::int64_t> df(static_cast<std::size_t>(w), 0);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (SparseRowMatrix::InnerIterator it(counts.values, i); it; ++it) {
            ++df[static_cast<std::size_t>(it.col())];
        }
    }
    std::vector<double> idf(static_cast<std::size_t>(w), 0.0);
    for (Eigen::Index j = 0; j < w; ++j) {
        idf[static_cast<std::size_t>(j)] =
            std::log((1.0 + static_cast<double>(n)) / (1.0 + static_cast<double>(df[static_cast<std::size_t>(j)]))) + 1.0;
    }

    DocTermMatrix out;
    out.kind = DocTermMatrix::Kind::tfidf;
    out.values = counts.values;
    for (Eigen::Index i = 0; i < n; ++i) {
        double sq = 0.0;
        for (SparseRowMatrix::InnerIterator it(out.values, i); it; ++it) {
            it.valueRef() *= idf[static_cast<std::size_t>(it.col())];
            sq += it.value() * it.value();
        }
        if (sq > 0.0) {
            const double inv = 1.0 / std::sqrt(sq);
            for (SparseRowMatrix::InnerIterator it(out.values, i); it; ++it) {
                it.valueRef() *= inv;
            }
        }
    }
    return out;
}

void write_matrix_coordinate(const std::filesystem::path& path, const SparseRowMatrix& m) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open file for writing: " + path.string());
    out << m.rows() << ' ' << m.cols() << ' ' << m.nonZeros() << '\n';
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (SparseRowMatrix::InnerIterator it(m, i); it; ++it) {
            out << it.row() << ' ' << it.col() << ' ' << format_double(it.value()) << '\n';
        }
    }
    if (!out) throw std::runtime_error("write failed: " + path.string());
}

SparseRowMatrix read_matrix_coordinate(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open file: " + path.string());
    Eigen::Index n = 0, w = 0;
    std::size_t nnz = 0;
    if (!(in >> n >> w >> nnz)) {
        throw std::runtime_error("bad coordinate header in " + path.string());
    }
    std::vector<Eigen::Triplet<double>> triplets;
    triplets.reserve(nnz);
    for (std::size_t k = 0; k < nnz; ++k) {
        Eigen::Index i = 0, j = 0;
        double v = 0.0;
        if (!(in >> i >> j >> v)) {
            throw std::runtime_error("truncated coordinate data in " + path.string());
        }
        triplets.emplace_back(i, j, v);
    }
    SparseRowMatrix m(n, w);
    m.setFromTriplets(triplets.begin(), triplets.end());
    m.makeCompressed();
    return m;
}

void write_vocabulary_tsv(const std::filesystem::path& path, const Vocabulary& vocab) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open file for writing: " + path.string());
    for (int j = 0; j < vocab.size(); ++j) {
        out << vocab.index_to_token[static_cast<std::size_t>(j)] << '\t' << j << '\t'
            << vocab.doc_frequency[static_cast<std::size_t>(j)] << '\n';
    }
    if (!out) throw std::runtime_error("write failed: " + path.string());
}

Vocabulary read_vocabulary_tsv(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open file: " + path.string());
    Vocabulary vocab;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ss(line);
        std::string tok;
        int index = 0;
        std::int64_t df = 0;
        if (!std::getline(ss, tok, '\t') || !(ss >> index >> df)) {
            throw std::runtime_error("bad vocabulary line in " + path.string() + ": " + line);
        }
        if (index != static_cast<int>(vocab.index_to_token.size())) {
            throw std::runtime_error("non-contiguous vocabulary indices in " + path.string());
        }
        vocab.token_to_index.emplace(tok, index);
        vocab.index_to_token.push_back(tok);
        vocab.doc_frequency.push_back(df);
    }
    return vocab;
}

}  // namespace hashtopics
