// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 hashtopics contributors

#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <utility>
#include <vector>

#include "hashtopics/labeler.hpp"
#include "hashtopics/vectorizer.hpp"

namespace hashtopics {

struct SolverConfig {
    int k = 80;
    int max_iter = 200;
    double tol = 1e-4;
    double epsilon = 1e-12;
    std::uint64_t seed = 0;
};

// Result of a factorization run. W is n x k, H is k x w; rows of H are
// topics. objective_trace[0] is the objective at initialization, followed
// by one entry per iteration.
struct Factorization {
    Eigen::MatrixXd W;
    Eigen::MatrixXd H;
    std::vector<double> objective_trace;
    int iterations_run = 0;
    bool converged = false;
};

// Called after each iteration with the current factors and objective.
using IterationCallback =
    std::function<void(int iteration, const Eigen::MatrixXd& w, const Eigen::MatrixXd& h,
                       double objective_value)>;

// Seeded uniform (0,1) entries scaled by sqrt(mean(X)/k); W is drawn first
// (row by row), then H, then the mask is applied to W.
std::pair<Eigen::MatrixXd, Eigen::MatrixXd> init_factors(const DocTermMatrix& x,
                                                         const ConstraintMatrix& l,
                                                         const SolverConfig& config);

// Frobenius norm (not squared) of X - (W .* L) H.
double objective(const DocTermMatrix& x, const Eigen::MatrixXd& w, const ConstraintMatrix& l,
                 const Eigen::MatrixXd& h);

// Masked multiplicative updates:
//   W <- (W .* (X H^T) ./ (W (H H^T) + eps)) .* L
//   H <- H .* (W^T X) ./ ((W^T W) H + eps)
// until the relative objective change drops below config.tol or
// config.max_iter is reached. Throws on non-finite values.
Factorization fit(const DocTermMatrix& x, const ConstraintMatrix& l, const SolverConfig& config,
                  const IterationCallback& callback = {});

// Plain NMF: the same updates without the mask. Kept as a separate code
// path so the masked solver's reduction to it is testable.
Factorization fit_plain(const DocTermMatrix& x, const SolverConfig& config,
                        const IterationCallback& callback = {});

// W and H as coordinate text plus a JSON sidecar
// {k, iterations_run, converged, objective_trace}.
void write_factorization(const std::filesystem::path& w_path, const std::filesystem::path& h_path,
                         const std::filesystem::path& meta_path, const Factorization& f);
Factorization read_factorization(const std::filesystem::path& w_path,
                                 const std::filesystem::path& h_path,
                                 const std::filesystem::path& meta_path);

}  // namespace hashtopics
