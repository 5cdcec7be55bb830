// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 hashtopics contributors

#include "hashtopics/tsnmf.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>
#include <stdexcept>
#include <string>

#include "hashtopics/io.hpp"
#include "hashtopics/rng.hpp"

namespace hashtopics {

namespace {

// ||X - M H||_F via the Gram identity
// ||X||^2 - 2 <X, MH> + sum((M^T M) .* (H H^T)), which avoids forming the
// dense n x w reconstruction. Cancellation can push the squared value a
// hair below zero near a perfect fit; clamp before the square root.
double product_objective(const SparseRowMatrix& x, double x_sq_norm, const Eigen::MatrixXd& m,
                         const Eigen::MatrixXd& h) {
    double cross = 0.0;
    for (int i = 0; i < x.outerSize(); ++i) {
        for (SparseRowMatrix::InnerIterator it(x, i); it; ++it) {
            cross += it.value() * m.row(it.row()).dot(h.col(it.col()));
        }
    }
    const Eigen::MatrixXd mtm = m.transpose() * m;
    const Eigen::MatrixXd hht = h * h.transpose();
    const double gram = (mtm.array() * hht.array()).sum();
    const double sq = x_sq_norm - 2.0 * cross + gram;
    return std::sqrt(std::max(0.0, sq));
}

double relative_drop(double prev, double curr) {
    if (prev <= 0.0) return 0.0;
    return std::abs(prev - curr) / prev;
}

void check_finite(const Eigen::MatrixXd& w, const Eigen::MatrixXd& h, double obj, int iteration) {
    if (!std::isfinite(obj) || !w.allFinite() || !h.allFinite()) {
        throw std::runtime_error("non-finite value at iteration " + std::to_string(iteration));
    }
}

void write_dense_coordinate(const std::filesystem::path& path, const Eigen::MatrixXd& m) {
    std::ostringstream body;
    std::int64_t nnz = 0;
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            if (m(i, j) != 0.0) {
                body << i << ' ' << j << ' ' << format_double(m(i, j)) << '\n';
                ++nnz;
            }
        }
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open file for writing: " + path.string());
    out << m.rows() << ' ' << m.cols() << ' ' << nnz << '\n' << body.str();
    if (!out) throw std::runtime_error("write failed: " + path.string());
}

Eigen::MatrixXd read_dense_coordinate(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open file: " + path.string());
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("empty matrix file: " + path.string());
    std::istringstream header(line);
    Eigen::Index rows = 0, cols = 0;
    std::int64_t nnz = 0;
    if (!(header >> rows >> cols >> nnz) || rows < 0 || cols < 0 || nnz < 0) {
        throw std::runtime_error("bad matrix header in " + path.string());
    }
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(rows, cols);
    for (std::int64_t e = 0; e < nnz; ++e) {
        if (!std::getline(in, line)) {
            throw std::runtime_error("truncated matrix file: " + path.string());
        }
        std::istringstream ss(line);
        Eigen::Index i = 0, j = 0;
        std::string value;
        if (!(ss >> i >> j >> value) || i < 0 || i >= rows || j < 0 || j >= cols) {
            throw std::runtime_error("bad matrix line in " + path.string() + ": " + line);
        }
        m(i, j) = std::strtod(value.c_str(), nullptr);
    }
    return m;
}

}  // namespace

std::pair<Eigen::MatrixXd, Eigen::MatrixXd> init_factors(const DocTermMatrix& x,
                                                         const ConstraintMatrix& l,
                                                         const SolverConfig& config) {
    if (config.k < 1) throw std::invalid_argument("k must be positive");
    if (l.rows() != x.rows() || l.cols() != config.k) {
        throw std::invalid_argument("constraint matrix dimensions do not match");
    }
    const Eigen::Index n = x.rows();
    const Eigen::Index w = x.cols();
    const double mean = x.values.sum() / (static_cast<double>(n) * static_cast<double>(w));
    const double scale = std::sqrt(mean / static_cast<double>(config.k));

    Rng rng(config.seed);
    Eigen::MatrixXd w0(n, config.k);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < config.k; ++j) w0(i, j) = rng.uniform01() * scale;
    }
    Eigen::MatrixXd h0(config.k, w);
    for (Eigen::Index a = 0; a < config.k; ++a) {
        for (Eigen::Index b = 0; b < w; ++b) h0(a, b) = rng.uniform01() * scale;
    }
    w0 = w0.cwiseProduct(l.entries);
    return {std::move(w0), std::move(h0)};
}

double objective(const DocTermMatrix& x, const Eigen::MatrixXd& w, const ConstraintMatrix& l,
                 const Eigen::MatrixXd& h) {
    if (w.rows() != x.rows() || l.rows() != x.rows() || l.cols() != w.cols() ||
        h.rows() != w.cols() || h.cols() != x.cols()) {
        throw std::invalid_argument("objective dimensions do not match");
    }
    const Eigen::MatrixXd masked = w.cwiseProduct(l.entries);
    return product_objective(x.values, x.values.squaredNorm(), masked, h);
}

Factorization fit(const DocTermMatrix& x, const ConstraintMatrix& l, const SolverConfig& config,
                  const IterationCallback& callback) {
    if (config.max_iter < 1) throw std::invalid_argument("max_iter must be positive");
    if (!(config.tol > 0.0)) throw std::invalid_argument("tol must be positive");
    if (!(config.epsilon > 0.0)) throw std::invalid_argument("epsilon must be positive");

    auto [w, h] = init_factors(x, l, config);
    const double x_sq_norm = x.values.squaredNorm();

    Factorization f;
    f.objective_trace.push_back(product_objective(x.values, x_sq_norm, w, h));
    check_finite(w, h, f.objective_trace.back(), 0);

    for (int t = 1; t <= config.max_iter; ++t) {
        const Eigen::MatrixXd w_num = x.values * h.transpose();
        Eigen::MatrixXd w_den = w * (h * h.transpose());
        w_den.array() += config.epsilon;
        w = (w.array() * w_num.array() / w_den.array()).matrix();
        w = w.cwiseProduct(l.entries);

        const Eigen::MatrixXd h_num = (x.values.transpose() * w).transpose();
        Eigen::MatrixXd h_den = (w.transpose() * w) * h;
        h_den.array() += config.epsilon;
        h = (h.array() * h_num.array() / h_den.array()).matrix();

        const double obj = product_objective(x.values, x_sq_norm, w, h);
        check_finite(w, h, obj, t);
        const double prev = f.objective_trace.back();
        f.objective_trace.push_back(obj);
        f.iterations_run = t;
        if (callback) callback(t, w, h, obj);
        if (relative_drop(prev, obj) < config.tol) {
            f.converged = true;
            break;
        }
    }
    f.W = std::move(w);
    f.H = std::move(h);
    return f;
}

Factorization fit_plain(const DocTermMatrix& x, const SolverConfig& config,
                        const IterationCallback& callback) {
    if (config.max_iter < 1) throw std::invalid_argument("max_iter must be positive");
    if (!(config.tol > 0.0)) throw std::invalid_argument("tol must be positive");
    if (!(config.epsilon > 0.0)) throw std::invalid_argument("epsilon must be positive");

    ConstraintMatrix ones;
    ones.entries = Eigen::MatrixXd::Ones(x.rows(), config.k);
    ones.labeled_mask.assign(static_cast<std::size_t>(x.rows()), false);
    auto [w, h] = init_factors(x, ones, config);
    const double x_sq_norm = x.values.squaredNorm();

    Factorization f;
    f.objective_trace.push_back(product_objective(x.values, x_sq_norm, w, h));
    check_finite(w, h, f.objective_trace.back(), 0);

    for (int t = 1; t <= config.max_iter; ++t) {
        const Eigen::MatrixXd w_num = x.values * h.transpose();
        Eigen::MatrixXd w_den = w * (h * h.transpose());
        w_den.array() += config.epsilon;
        w = (w.array() * w_num.array() / w_den.array()).matrix();

        const Eigen::MatrixXd h_num = (x.values.transpose() * w).transpose();
        Eigen::MatrixXd h_den = (w.transpose() * w) * h;
        h_den.array() += config.epsilon;
        h = (h.array() * h_num.array() / h_den.array()).matrix();

        const double obj = product_objective(x.values, x_sq_norm, w, h);
        check_finite(w, h, obj, t);
        const double prev = f.objective_trace.back();
        f.objective_trace.push_back(obj);
        f.iterations_run = t;
        if (callback) callback(t, w, h, obj);
        if (relative_drop(prev, obj) < config.tol) {
            f.converged = true;
            break;
        }
    }
    f.W = std::move(w);
    f.H = std::move(h);
    return f;
}

void write_factorization(const std::filesystem::path& w_path, const std::filesystem::path& h_path,
                         const std::filesystem::path& meta_path, const Factorization& f) {
    write_dense_coordinate(w_path, f.W);
    write_dense_coordinate(h_path, f.H);
    nlohmann::json meta;
    meta["k"] = f.W.cols();
    meta["iterations_run"] = f.iterations_run;
    meta["converged"] = f.converged;
    meta["objective_trace"] = f.objective_trace;
    write_file(meta_path, meta.dump(2) + "\n");
}

Factorization read_factorization(const std::filesystem::path& w_path,
                                 const std::filesystem::path& h_path,
                                 const std::filesystem::path& meta_path) {
    Factorization f;
    f.W = read_dense_coordinate(w_path);
    f.H = read_dense_coordinate(h_path);
    const nlohmann::json meta = nlohmann::json::parse(read_file(meta_path));
    if (meta.at("k").get<Eigen::Index>() != f.W.cols()) {
        throw std::runtime_error("factorization sidecar k does not match W: " + meta_path.string());
    }
    f.iterations_run = meta.at("iterations_run").get<int>();
    f.converged = meta.at("converged").get<bool>();
    f.objective_trace = meta.at("objective_trace").get<std::vector<double>>();
    return f;
}

}  // namespace hashtopics
