#include "msc/graph.hpp"

#include <algorithm>
#include <set>
#include <string>

#include "msc/errors.hpp"

namespace msc {

NetworkGraph::NetworkGraph(std::size_t vertex_count,
                           std::vector<std::pair<std::size_t, std::size_t>> edges)
    : n_(vertex_count) {
    if (n_ == 0) throw ValidationError("graph.n", "vertex count must be positive");
    std::set<std::pair<std::size_t, std::size_t>> seen;
    edges_.reserve(edges.size());
    for (auto [i, j] : edges) {
        if (i < 1 || i > n_ || j < 1 || j > n_) {
            throw ValidationError("graph.edges",
                                  "edge (" + std::to_string(i) + "," + std::to_string(j) +
                                      ") references a vertex outside 1.." + std::to_string(n_));
        }
        if (i == j) {
            throw ValidationError("graph.edges", "self-loop at vertex " + std::to_string(i));
        }
        if (i > j) std::swap(i, j);
        if (!seen.insert({i, j}).second) {
            throw ValidationError("graph.edges", "duplicate edge (" + std::to_string(i) + "," +
                                                     std::to_string(j) + ")");
        }
        edges_.push_back({i, j});
    }
    neighbors_.resize(n_);
    for (auto [i, j] : edges_) {
        neighbors_[i - 1].push_back(j);
        neighbors_[j - 1].push_back(i);
    }
    for (auto& nb : neighbors_) std::sort(nb.begin(), nb.end());
}

Matrix NetworkGraph::incidence_matrix() const {
    Matrix h(edges_.size(), n_);
    for (std::size_t k = 0; k < edges_.size(); ++k) {
        h(k, edges_[k].first - 1) = -1.0;
        h(k, edges_[k].second - 1) = 1.0;
    }
    return h;
}

Matrix NetworkGraph::laplacian() const {
    Matrix l(n_, n_);
    for (auto [i, j] : edges_) {
        l(i - 1, i - 1) += 1.0;
        l(j - 1, j - 1) += 1.0;
        l(i - 1, j - 1) -= 1.0;
        l(j - 1, i - 1) -= 1.0;
    }
    return l;
}

bool NetworkGraph::is_connected() const {
    std::vector<bool> visited(n_, false);
    std::vector<std::size_t> stack{1};
    visited[0] = true;
    std::size_t reached = 1;
    while (!stack.empty()) {
        const std::size_t v = stack.back();
        stack.pop_back();
        for (std::size_t w : neighbors_[v - 1]) {
            if (!visited[w - 1]) {
                visited[w - 1] = true;
                ++reached;
                stack.push_back(w);
            }
        }
    }
    return reached == n_;
}

NetworkGraph benchmark_graph_16() {
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    for (std::size_t i = 1; i <= 15; ++i) edges.push_back({i, i + 1});
    edges.push_back({1, 16});
    edges.push_back({1, 9});
    edges.push_back({4, 12});
    edges.push_back({2, 7});
    edges.push_back({10, 15});
    return NetworkGraph(16, edges);
}

NetworkGraph random_connected_graph(std::size_t vertex_count, double edge_probability,
                                    SplitMix64& rng) {
    if (vertex_count == 0) throw ValidationError("graph.n", "vertex count must be positive");
    if (!(edge_probability >= 0.0 && edge_probability <= 1.0)) {
        throw ValidationError("graph.edge_probability", "must lie in [0, 1]");
    }
    for (int attempt = 0; attempt < 1000; ++attempt) {
        std::vector<std::pair<std::size_t, std::size_t>> edges;
        for (std::size_t i = 1; i <= vertex_count; ++i) {
            for (std::size_t j = i + 1; j <= vertex_count; ++j) {
                if (rng.uniform() < edge_probability) edges.push_back({i, j});
            }
        }
        NetworkGraph g(vertex_count, std::move(edges));
        if (g.is_connected()) return g;
    }
    throw ValidationError("graph.edge_probability",
                          "no connected draw in 1000 attempts; probability too low");
}

}  // namespace msc
