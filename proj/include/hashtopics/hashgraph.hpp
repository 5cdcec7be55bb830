// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 hashtopics contributors

#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <tuple>
#include <unordered_map>
#include <utility>
#include <vector>

#include "hashtopics/corpus.hpp"

namespace hashtopics {

/// Weighted undirected hashtag co-occurrence graph. An edge weight counts
/// the documents in which both tags occur (once per document), and only
/// edges with weight >= tau survive. Tags left isolated by the truncation
/// are kept as nodes. Node indices follow ascending lexicographic tag
/// order.
class HashtagGraph {
public:
    HashtagGraph() = default;

    /// Builds the graph over all hashtags occurring in `docs`.
    static HashtagGraph build(const std::vector<Document>& docs, std::int64_t tau);

    /// Reassembles a graph from an explicit node set and pre-truncated
    /// edge list (used when loading exported artifacts and in tests).
    static HashtagGraph from_edges(
        std::vector<std::string> nodes,
        const std::vector<std::tuple<std::string, std::string, double>>& edges,
        std::int64_t tau);

    int num_nodes() const { return static_cast<int>(nodes_.size()); }
    const std::vector<std::string>& nodes() const { return nodes_; }
    std::int64_t tau() const { return tau_; }

    int index_of(const std::string& tag) const;  // -1 when absent

    /// Neighbors of node u as (node index, weight), ascending by index.
    const std::vector<std::pair<int, double>>& neighbors(int u) const {
        return adj_[static_cast<std::size_t>(u)];
    }

    double degree(int u) const { return degree_[static_cast<std::size_t>(u)]; }

    /// Total undirected edge weight m (each edge counted once).
    double total_weight() const { return total_weight_; }

    /// Undirected edges (tag_i, tag_j, weight) with tag_i < tag_j,
    /// sorted lexicographically.
    std::vector<std::tuple<std::string, std::string, double>> edges() const;

private:
    std::vector<std::string> nodes_;
    std::unordered_map<std::string, int> index_;
    std::vector<std::vector<std::pair<int, double>>> adj_;
    std::vector<double> degree_;
    double total_weight_ = 0.0;
    std::int64_t tau_ = 1;

    void finalize_adjacency(const std::map<std::pair<int, int>, double>& edge_weights);
};

/// A node -> community assignment. Community ids produced by louvain() are
/// consecutive, ordered by decreasing community size with ties broken by
/// the lexicographically smallest member tag.
struct Partition {
    std::map<std::string, int> community_of;
    std::map<int, int> sizes;
    int num_communities = 0;
};

struct ModularityParams {
    double resolution = 0.3;
};

/// Resolution-scaled Newman modularity
///   Q = (1/2m) sum_ij [A_ij - gamma k_i k_j / (2m)] 1(c_i = c_j)
/// over ordered node pairs, with m the total undirected edge weight.
/// Returns 0 for an edgeless graph; throws if a node is missing from the
/// partition.
double modularity(const HashtagGraph& graph, const Partition& partition,
                  const ModularityParams& params);

/// Two-phase greedy modularity maximization: seeded-shuffle local moves to
/// exhaustion, community aggregation, repeated until the per-level gain
/// drops below 1e-7. Deterministic for fixed (graph, params, seed).
Partition louvain(const HashtagGraph& graph, const ModularityParams& params, std::uint64_t seed);

/// Ids of the largest min(c, num_communities) communities; with louvain's
/// renumbering this is simply 0..min(c, num)-1.
std::vector<int> top_communities(const Partition& partition, int c);

/// TSV export "tag_i<TAB>tag_j<TAB>weight", tag_i < tag_j, sorted.
void write_graph_tsv(const std::filesystem::path& path, const HashtagGraph& graph);
std::vector<std::tuple<std::string, std::string, double>> read_graph_tsv(
    const std::filesystem::path& path);

/// TSV export "tag<TAB>community_id", sorted by tag.
void write_partition_tsv(const std::filesystem::path& path, const Partition& partition);
Partition read_partition_tsv(const std::filesystem::path& path);

}  // namespace hashtopics
