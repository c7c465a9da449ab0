#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "msc/matrix.hpp"
#include "msc/rng.hpp"

namespace msc {

// Undirected simple graph on vertices 1..n. Edges are stored with the
// lower-index endpoint first; that endpoint is also the tail of the edge's
// row in the incidence matrix, so orientation is a pure bookkeeping choice.
class NetworkGraph {
public:
    NetworkGraph(std::size_t vertex_count,
                 std::vector<std::pair<std::size_t, std::size_t>> edges);

    std::size_t vertex_count() const { return n_; }
    std::size_t edge_count() const { return edges_.size(); }
    const std::vector<std::pair<std::size_t, std::size_t>>& edges() const { return edges_; }

    // Neighbors of each vertex, ascending; index 0 holds vertex 1.
    const std::vector<std::vector<std::size_t>>& neighbors() const { return neighbors_; }

    // m-by-n matrix H: row k has -1 at the edge's lower endpoint and +1 at
    // the higher one. Entries are exact small integers.
    Matrix incidence_matrix() const;

    // L = H^T H, assembled in integer arithmetic: degrees on the diagonal,
    // -1 per edge off the diagonal.
    Matrix laplacian() const;

    bool is_connected() const;

private:
    std::size_t n_;
    std::vector<std::pair<std::size_t, std::size_t>> edges_;
    std::vector<std::vector<std::size_t>> neighbors_;
};

// Fixed 16-vertex benchmark topology: the cycle 1-2-...-16-1 plus chords
// (1,9), (4,12), (2,7), (10,15); 20 edges, connected, diameter 4.
NetworkGraph benchmark_graph_16();

// Erdos-Renyi draw with the given edge probability, redrawn until connected.
// Throws after 1000 failed draws (probability chosen far too low).
NetworkGraph random_connected_graph(std::size_t vertex_count, double edge_probability,
                                    SplitMix64& rng);

}  // namespace msc
