// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 hashtopics contributors

#include "hashtopics/hashgraph.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "hashtopics/io.hpp"
#include "hashtopics/rng.hpp"

namespace hashtopics {

HashtagGraph HashtagGraph::build(const std::vector<Document>& docs, std::int64_t tau) {
    if (tau < 1) throw std::invalid_argument("tau must be positive");

    HashtagGraph g;
    g.tau_ = tau;

    std::set<std::string> tag_set;
    for (const auto& doc : docs) tag_set.insert(doc.hashtags.begin(), doc.hashtags.end());
    g.nodes_.assign(tag_set.begin(), tag_set.end());
    for (int i = 0; i < static_cast<int>(g.nodes_.size()); ++i) {
        g.index_.emplace(g.nodes_[static_cast<std::size_t>(i)], i);
    }

    // phi_ij: number of documents containing both tags, once per document.
    std::map<std::pair<int, int>, double> counts;
    for (const auto& doc : docs) {
        std::vector<int> ids;
        ids.reserve(doc.hashtags.size());
        for (const auto& tag : doc.hashtags) ids.push_back(g.index_.at(tag));
        for (std::size_t a = 0; a + 1 < ids.size(); ++a) {
            for (std::size_t b = a + 1; b < ids.size(); ++b) {
                counts[{std::min(ids[a], ids[b]), std::max(ids[a], ids[b])}] += 1.0;
            }
        }
    }

    std::map<std::pair<int, int>, double> kept;
    for (const auto& [e, w] : counts) {
        if (w >= static_cast<double>(tau)) kept.emplace(e, w);
    }
    g.finalize_adjacency(kept);
    return g;
}

HashtagGraph HashtagGraph::from_edges(
    std::vector<std::string> nodes,
    const std::vector<std::tuple<std::string, std::string, double>>& edges,
    std::int64_t tau) {
    HashtagGraph g;
    g.tau_ = tau;
    std::sort(nodes.begin(), nodes.end());
    nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
    g.nodes_ = std::move(nodes);
    for (int i = 0; i < static_cast<int>(g.nodes_.size()); ++i) {
        g.index_.emplace(g.nodes_[static_cast<std::size_t>(i)], i);
    }
    std::map<std::pair<int, int>, double> kept;
    for (const auto& [a, b, w] : edges) {
        const int i = g.index_of(a);
        const int j = g.index_of(b);
        if (i < 0 || j < 0) throw std::invalid_argument("edge endpoint not in node list: " + a + "/" + b);
        if (i == j) throw std::invalid_argument("self-edge not allowed: " + a);
        if (w < static_cast<double>(tau)) {
            throw std::invalid_argument("edge weight below tau: " + a + " " + b);
        }
        kept[{std::min(i, j), std::max(i, j)}] = w;
    }
    g.finalize_adjacency(kept);
    return g;
}

void HashtagGraph::finalize_adjacency(const std::map<std::pair<int, int>, double>& edge_weights) {
    adj_.assign(nodes_.size(), {});
    degree_.assign(nodes_.size(), 0.0);
    total_weight_ = 0.0;
    for (const auto& [e, w] : edge_weights) {
        adj_[static_cast<std::size_t>(e.first)].emplace_back(e.second, w);
        adj_[static_cast<std::size_t>(e.second)].emplace_back(e.first, w);
        degree_[static_cast<std::size_t>(e.first)] += w;
        degree_[static_cast<std::size_t>(e.second)] += w;
        total_weight_ += w;
    }
    for (auto& nbrs : adj_) std::sort(nbrs.begin(), nbrs.end());
}

int HashtagGraph::index_of(const std::string& tag) const {
    auto it = index_.find(tag);
    return it == index_.end() ? -1 : it->second;
}

std::vector<std::tuple<std::string, std::string, double>> HashtagGraph::edges() const {
    std::vector<std::tuple<std::string, std::string, double>> out;
    for (int u = 0; u < num_nodes(); ++u) {
        for (const auto& [v, w] : adj_[static_cast<std::size_t>(u)]) {
            if (u < v) out.emplace_back(nodes_[static_cast<std::size_t>(u)],
                                        nodes_[static_cast<std::size_t>(v)], w);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

double modularity(const HashtagGraph& graph, const Partition& partition,
                  const ModularityParams& params) {
    const double m = graph.total_weight();
    if (m == 0.0) return 0.0;

    std::vector<int> comm(static_cast<std::size_t>(graph.num_nodes()));
    int max_comm = -1;
    for (int u = 0; u < graph.num_nodes(); ++u) {
        auto it = partition.community_of.find(graph.nodes()[static_cast<std::size_t>(u)]);
        if (it == partition.community_of.end()) {
            throw std::runtime_error("node missing from partition: " +
                                     graph.nodes()[static_cast<std::size_t>(u)]);
        }
        comm[static_cast<std::size_t>(u)] = it->second;
        max_comm = std::max(max_comm, it->second);
    }

    // Q = sum_c [ w_in(c)/m - gamma (K_c/(2m))^2 ]
    std::vector<double> k_total(static_cast<std::size_t>(max_comm + 1), 0.0);
    std::vector<double> w_in(static_cast<std::size_t>(max_comm + 1), 0.0);
    for (int u = 0; u < graph.num_nodes(); ++u) {
        const int cu = comm[static_cast<std::size_t>(u)];
        k_total[static_cast<std::size_t>(cu)] += graph.degree(u);
        for (const auto& [v, w] : graph.neighbors(u)) {
            if (u < v && comm[static_cast<std::size_t>(v)] == cu) {
                w_in[static_cast<std::size_t>(cu)] += w;
            }
        }
    }
    double q = 0.0;
    for (std::size_t c = 0; c < k_total.size(); ++c) {
        const double frac = k_total[c] / (2.0 * m);
        q += w_in[c] / m - params.resolution * frac * frac;
    }
    return q;
}

namespace {

// Aggregated working graph for the Louvain phases. Adjacency stores every
// undirected edge in both directions; self_weight holds the diagonal
// A_uu of the ordered-pair adjacency (twice the internal undirected
// weight absorbed by an aggregated node).
struct WorkGraph {
    std::vector<std::vector<std::pair<int, double>>> adj;
    std::vector<double> self_weight;
    std::vector<double> degree;  // k_u = sum_v A_uv + A_uu

    int size() const { return static_cast<int>(adj.size()); }
};

double work_modularity(const WorkGraph& g, const std::vector<int>& comm, double m,
                       double resolution) {
    int max_comm = 0;
    for (int c : comm) max_comm = std::max(max_comm, c);
    std::vector<double> k_total(static_cast<std::size_t>(max_comm + 1), 0.0);
    std::vector<double> a_in(static_cast<std::size_t>(max_comm + 1), 0.0);
    for (int u = 0; u < g.size(); ++u) {
        const int cu = comm[static_cast<std::size_t>(u)];
        k_total[static_cast<std::size_t>(cu)] += g.degree[static_cast<std::size_t>(u)];
        a_in[static_cast<std::size_t>(cu)] += g.self_weight[static_cast<std::size_t>(u)];
        for (const auto& [v, w] : g.adj[static_cast<std::size_t>(u)]) {
            if (comm[static_cast<std::size_t>(v)] == cu) a_in[static_cast<std::size_t>(cu)] += w;
        }
    }
    double q = 0.0;
    for (std::size_t c = 0; c < k_total.size(); ++c) {
        const double frac = k_total[c] / (2.0 * m);
        q += a_in[c] / (2.0 * m) - resolution * frac * frac;
    }
    return q;
}

// One round of local moves starting from singletons. Returns the
// node -> community assignment (ids are node indices of move targets).
std::vector<int> one_level(const WorkGraph& g, double m, double resolution, Rng& rng) {
    const int n = g.size();
    std::vector<int> comm(static_cast<std::size_t>(n));
    std::iota(comm.begin(), comm.end(), 0);
    std::vector<double> k_total(g.degree.begin(), g.degree.end());

    std::vector<int> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    rng.shuffle(order);

    std::vector<double> link_weight(static_cast<std::size_t>(n), 0.0);
    std::vector<int> touched;

    bool moved = true;
    int guard = 0;
    while (moved && guard++ < 1000) {
        moved = false;
        for (int u : order) {
            const int a = comm[static_cast<std::size_t>(u)];
            const double k_u = g.degree[static_cast<std::size_t>(u)];

            touched.clear();
            link_weight[static_cast<std::size_t>(a)] = 0.0;
            touched.push_back(a);
            for (const auto& [v, w] : g.adj[static_cast<std::size_t>(u)]) {
                const int c = comm[static_cast<std::size_t>(v)];
                if (link_weight[static_cast<std::size_t>(c)] == 0.0 &&
                    std::find(touched.begin(), touched.end(), c) == touched.end()) {
                    touched.push_back(c);
                }
                link_weight[static_cast<std::size_t>(c)] += w;
            }

            k_total[static_cast<std::size_t>(a)] -= k_u;
            std::sort(touched.begin(), touched.end());

            // gain(c) = k_{u->c} - gamma K_c k_u / (2m), K_c without u
            const double base = link_weight[static_cast<std::size_t>(a)] -
                                resolution * k_total[static_cast<std::size_t>(a)] * k_u / (2.0 * m);
            int best_c = a;
            double best_gain = base;
            for (int c : touched) {
                if (c == a) continue;
                const double gain = link_weight[static_cast<std::size_t>(c)] -
                                    resolution * k_total[static_cast<std::size_t>(c)] * k_u / (2.0 * m);
                if (gain > best_gain) {
                    best_gain = gain;
                    best_c = c;
                }
            }

            k_total[static_cast<std::size_t>(best_c)] += k_u;
            comm[static_cast<std::size_t>(u)] = best_c;
            if (best_c != a) moved = true;

            for (int c : touched) link_weight[static_cast<std::size_t>(c)] = 0.0;
        }
    }
    return comm;
}

// Collapses communities into single nodes, preserving the ordered-pair
// adjacency (A'_CD = sum over A_ij with i in C, j in D).
WorkGraph aggregate(const WorkGraph& g, const std::vector<int>& comm,
                    std::vector<int>& renumbered) {
    const int n = g.size();
    std::vector<int> to_new(static_cast<std::size_t>(n), -1);
    int count = 0;
    for (int u = 0; u < n; ++u) {
        int& slot = to_new[static_cast<std::size_t>(comm[static_cast<std::size_t>(u)])];
        if (slot < 0) slot = count++;
    }
    renumbered.resize(static_cast<std::size_t>(n));
    for (int u = 0; u < n; ++u) {
        renumbered[static_cast<std::size_t>(u)] = to_new[static_cast<std::size_t>(comm[static_cast<std::size_t>(u)])];
    }

    WorkGraph out;
    out.adj.assign(static_cast<std::size_t>(count), {});
    out.self_weight.assign(static_cast<std::size_t>(count), 0.0);
    out.degree.assign(static_cast<std::size_t>(count), 0.0);

    std::vector<std::map<int, double>> merged(static_cast<std::size_t>(count));
    for (int u = 0; u < n; ++u) {
        const int cu = renumbered[static_cast<std::size_t>(u)];
        out.self_weight[static_cast<std::size_t>(cu)] += g.self_weight[static_cast<std::size_t>(u)];
        for (const auto& [v, w] : g.adj[static_cast<std::size_t>(u)]) {
            const int cv = renumbered[static_cast<std::size_t>(v)];
            if (cu == cv) {
                out.self_weight[static_cast<std::size_t>(cu)] += w;
            } else {
                merged[static_cast<std::size_t>(cu)][cv] += w;
            }
        }
    }
    for (int c = 0; c < count; ++c) {
        double k = out.self_weight[static_cast<std::size_t>(c)];
        for (const auto& [d, w] : merged[static_cast<std::size_t>(c)]) {
            out.adj[static_cast<std::size_t>(c)].emplace_back(d, w);
            k += w;
        }
        out.degree[static_cast<std::size_t>(c)] = k;
    }
    return out;
}

}  // namespace

Partition louvain(const HashtagGraph& graph, const ModularityParams& params, std::uint64_t seed) {
    constexpr double kLevelGainThreshold = 1e-7;

    Partition partition;
    const int n = graph.num_nodes();
    if (n == 0) return partition;

    // node -> community over the original graph, refined level by level
    std::vector<int> assignment(static_cast<std::size_t>(n));
    std::iota(assignment.begin(), assignment.end(), 0);

    const double m = graph.total_weight();
    if (m > 0.0) {
        WorkGraph work;
        work.adj.assign(static_cast<std::size_t>(n), {});
        work.self_weight.assign(static_cast<std::size_t>(n), 0.0);
        work.degree.assign(static_cast<std::size_t>(n), 0.0);
        for (int u = 0; u < n; ++u) {
            work.adj[static_cast<std::size_t>(u)] = graph.neighbors(u);
            work.degree[static_cast<std::size_t>(u)] = graph.degree(u);
        }

        Rng rng(seed);
        std::vector<int> singleton(static_cast<std::size_t>(n));
        std::iota(singleton.begin(), singleton.end(), 0);
        double q = work_modularity(work, singleton, m, params.resolution);

        while (true) {
            const std::vector<int> level_comm = one_level(work, m, params.resolution, rng);
            std::vector<int> renumbered;
            WorkGraph next = aggregate(work, level_comm, renumbered);
            const double new_q = work_modularity(work, level_comm, m, params.resolution);

            bool changed = false;
            for (std::size_t u = 0; u < level_comm.size(); ++u) {
                if (level_comm[u] != static_cast<int>(u)) {
                    changed = true;
                    break;
                }
            }
            // Every accepted move has strictly positive gain, so applying the
            // level before testing the threshold never lowers Q.
            for (auto& a : assignment) a = renumbered[static_cast<std::size_t>(a)];
            const double gained = new_q - q;
            work = std::move(next);
            q = new_q;
            if (!changed || gained < kLevelGainThreshold || work.size() <= 1) break;
        }
    }

    // Renumber communities by decreasing size, ties broken by the
    // lexicographically smallest member tag (nodes_ is sorted, so the
    // first member seen is the smallest).
    std::map<int, std::pair<int, int>> stats;  // old id -> (size, first member index)
    for (int u = 0; u < n; ++u) {
        const int c = assignment[static_cast<std::size_t>(u)];
        auto it = stats.find(c);
        if (it == stats.end()) {
            stats.emplace(c, std::make_pair(1, u));
        } else {
            ++it->second.first;
        }
    }
    std::vector<std::pair<int, std::pair<int, int>>> ordered(stats.begin(), stats.end());
    std::sort(ordered.begin(), ordered.end(), [&](const auto& lhs, const auto& rhs) {
        if (lhs.second.first != rhs.second.first) return lhs.second.first > rhs.second.first;
        return lhs.second.second < rhs.second.second;
    });
    std::map<int, int> new_id;
    for (std::size_t r = 0; r < ordered.size(); ++r) {
        new_id.emplace(ordered[r].first, static_cast<int>(r));
    }

    partition.num_communities = static_cast<int>(ordered.size());
    for (int u = 0; u < n; ++u) {
        const int c = new_id.at(assignment[static_cast<std::size_t>(u)]);
        partition.community_of.emplace(graph.nodes()[static_cast<std::size_t>(u)], c);
        ++partition.sizes[c];
    }
    return partition;
}

std::vector<int> top_communities(const Partition& partition, int c) {
    if (c < 1) throw std::invalid_argument("community count must be positive");
    const int take = std::min(c, partition.num_communities);
    std::vector<int> ids(static_cast<std::size_t>(take));
    std::iota(ids.begin(), ids.end(), 0);
    return ids;
}

void write_graph_tsv(const std::filesystem::path& path, const HashtagGraph& graph) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open file for writing: " + path.string());
    for (const auto& [a, b, w] : graph.edges()) {
        out << a << '\t' << b << '\t' << format_double(w) << '\n';
    }
    if (!out) throw std::runtime_error("write failed: " + path.string());
}

std::vector<std::tuple<std::string, std::string, double>> read_graph_tsv(
    const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open file: " + path.string());
    std::vector<std::tuple<std::string, std::string, double>> edges;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ss(line);
        std::string a, b, w;
        if (!std::getline(ss, a, '\t') || !std::getline(ss, b, '\t') || !std::getline(ss, w)) {
            throw std::runtime_error("bad graph line in " + path.string() + ": " + line);
        }
        edges.emplace_back(a, b, std::strtod(w.c_str(), nullptr));
    }
    return edges;
}

void write_partition_tsv(const std::filesystem::path& path, const Partition& partition) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open file for writing: " + path.string());
    for (const auto& [tag, c] : partition.community_of) {
        out << tag << '\t' << c << '\n';
    }
    if (!out) throw std::runtime_error("write failed: " + path.string());
}

Partition read_partition_tsv(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open file: " + path.string());
    Partition p;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ss(line);
        std::string tag;
        int c = 0;
        if (!std::getline(ss, tag, '\t') || !(ss >> c)) {
            throw std::runtime_error("bad partition line in " + path.string() + ": " + line);
        }
        p.community_of.emplace(tag, c);
        ++p.sizes[c];
    }
    p.num_communities = static_cast<int>(p.sizes.size());
    return p;
}

}  // namespace hashtopics
