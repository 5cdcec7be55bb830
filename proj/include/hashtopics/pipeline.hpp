// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 hashtopics contributors

#pragma once

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

namespace hashtopics {

struct PipelineConfig {
    std::string input_path;
    std::string output_dir;
    std::int64_t min_chars = 160;
    bool drop_retweets = true;
    bool drop_replies = true;
    std::int64_t min_df = 5;
    std::int64_t tau = 2;
    double resolution = 0.3;
    int num_communities = 70;
    int k = 80;
    double target_labeled_ratio = 0.5;
    int max_iter = 200;
    double tol = 1e-4;
    std::uint64_t seed = 42;
};

// Error raised by run_pipeline, tagged with the failing stage.
class StageError : public std::runtime_error {
  public:
    StageError(std::string stage, const std::string& message)
        : std::runtime_error(message), stage_(std::move(stage)) {}
    const std::string& stage() const { return stage_; }

  private:
    std::string stage_;
};

// Reads a JSON config; every field is optional and falls back to the
// defaults above.
PipelineConfig load_pipeline_config(const std::filesystem::path& path);

// Throws std::invalid_argument when a field is outside its domain
// (including num_communities > k).
void validate_config(const PipelineConfig& config);

// Runs ingest, vectorize, graph, communities, label, fit (supervised and
// unsupervised) and report, writing all artifacts plus manifest.json into
// config.output_dir. Throws StageError on any stage failure; nothing is
// written before the input file check passes.
void run_pipeline(const PipelineConfig& config);

// The artifact files a pipeline run produces, excluding manifest.json.
const std::vector<std::string>& pipeline_artifact_names();

}  // namespace hashtopics
