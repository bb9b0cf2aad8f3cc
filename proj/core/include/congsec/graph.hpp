#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "congsec/errors.hpp"

namespace congsec {

using NodeId = int;

// Simple undirected graph on dense ids 0..n-1. Immutable after
// construction; shared read-only across concurrent trials.
struct Graph {
    int n = 0;
    std::vector<std::pair<NodeId, NodeId>> edges; // u < v, lexicographically sorted
    std::vector<std::vector<NodeId>> adj;         // sorted neighbor lists

    static Graph from_edges(int n, std::vector<std::pair<NodeId, NodeId>> edges);

    bool has_edge(NodeId u, NodeId v) const;
    int edge_index(NodeId u, NodeId v) const; // index into edges, -1 if absent
    int degree(NodeId u) const { return int(adj[u].size()); }
    int max_degree() const;
    int m() const { return int(edges.size()); }
};

bool is_connected(const Graph& g);

// True iff removing any single vertex leaves the rest connected.
// Articulation points via low-link; requires n >= 3.
bool is_two_vertex_connected(const Graph& g);

struct BfsTree {
    NodeId root = 0;
    std::vector<NodeId> parent; // parent[root] == root
    std::vector<int> depth;
    std::vector<NodeId> order;  // visit order
    int max_depth = 0;
};

BfsTree bfs_tree(const Graph& g, NodeId root);

int diameter(const Graph& g);

Graph generate_cycle(int n);
Graph generate_complete(int n);
Graph generate_torus(int rows, int cols);
// Seeded Hamiltonian cycle plus `extra` random chords; 2-vertex connected
// by construction.
Graph generate_random_two_connected(int n, int extra, uint64_t seed);

struct GenerateParams {
    int n = 0;
    int rows = 0, cols = 0; // torus
    int extra = 0;          // random-2vc chords
};
Graph generate(const std::string& family, const GenerateParams& p, uint64_t seed);

// Edge-list text format: first line "n m", then m lines "u v" with
// 0 <= u < v < n. Rejects duplicates and self-loops with line numbers.
Graph parse_edge_list(std::istream& in);
Graph load_edge_list(const std::string& path);
void write_edge_list(const Graph& g, std::ostream& out);

} // namespace congsec
