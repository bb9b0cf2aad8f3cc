#include "congsec/graph.hpp"

#include <algorithm>
#include <deque>
#include <fstream>
#include <set>
#include <sstream>

#include "congsec/rng.hpp"

namespace congsec {

Graph Graph::from_edges(int n, std::vector<std::pair<NodeId, NodeId>> edges) {
    if (n < 1) throw invalid_input("graph needs at least one node");
    for (auto& [u, v] : edges) {
        if (u == v) throw invalid_input("self-loop on node " + std::to_string(u));
        if (u > v) std::swap(u, v);
        if (u < 0 || v >= n) throw invalid_input("edge endpoint out of range");
    }
    std::sort(edges.begin(), edges.end());
    for (size_t i = 1; i < edges.size(); ++i)
        if (edges[i] == edges[i - 1])
            throw invalid_input("parallel edge (" + std::to_string(edges[i].first) + "," +
                                std::to_string(edges[i].second) + ")");
    Graph g;
    g.n = n;
    g.edges = std::move(edges);
    g.adj.assign(n, {});
    for (auto [u, v] : g.edges) {
        g.adj[u].push_back(v);
        g.adj[v].push_back(u);
    }
    for (auto& a : g.adj) std::sort(a.begin(), a.end());
    return g;
}

bool Graph::has_edge(NodeId u, NodeId v) const {
    if (u < 0 || v < 0 || u >= n || v >= n || u == v) return false;
    const auto& a = adj[u];
    return std::binary_search(a.begin(), a.end(), v);
}

int Graph::edge_index(NodeId u, NodeId v) const {
    if (u > v) std::swap(u, v);
    auto it = std::lower_bound(edges.begin(), edges.end(), std::make_pair(u, v));
    if (it == edges.end() || *it != std::make_pair(u, v)) return -1;
    return int(it - edges.begin());
}

int Graph::max_degree() const {
    int d = 0;
    for (const auto& a : adj) d = std::max<int>(d, int(a.size()));
    return d;
}

bool is_connected(const Graph& g) {
    if (g.n == 0) return false;
    std::vector<char> seen(g.n, 0);
    std::deque<NodeId> q{0};
    seen[0] = 1;
    int cnt = 1;
    while (!q.empty()) {
        NodeId u = q.front();
        q.pop_front();
        for (NodeId v : g.adj[u])
            if (!seen[v]) { seen[v] = 1; ++cnt; q.push_back(v); }
    }
    return cnt == g.n;
}

namespace {

// Iterative low-link articulation point search.
bool has_articulation_point(const Graph& g) {
    const int n = g.n;
    std::vector<int> tin(n, -1), low(n, 0), it(n, 0), parent(n, -1);
    int timer = 0;
    for (int s = 0; s < n; ++s) {
        if (tin[s] != -1) continue;
        std::vector<int> stack{s};
        tin[s] = low[s] = timer++;
        int root_children = 0;
        while (!stack.empty()) {
            int u = stack.back();
            if (it[u] < int(g.adj[u].size())) {
                int v = g.adj[u][it[u]++];
                if (v == parent[u]) continue;
                if (tin[v] != -1) {
                    low[u] = std::min(low[u], tin[v]);
                } else {
                    parent[v] = u;
                    tin[v] = low[v] = timer++;
                    if (u == s) ++root_children;
                    stack.push_back(v);
                }
            } else {
                stack.pop_back();
                if (!stack.empty()) {
                    int p = stack.back();
                    low[p] = std::min(low[p], low[u]);
                    if (p != s && low[u] >= tin[p]) return true;
                }
            }
        }
        if (root_children > 1) return true;
    }
    return false;
}

} // namespace

bool is_two_vertex_connected(const Graph& g) {
    if (g.n < 3) throw invalid_input("2-vertex-connectivity requires n >= 3");
    if (!is_connected(g)) return false;
    return !has_articulation_point(g);
}

BfsTree bfs_tree(const Graph& g, NodeId root) {
    if (root < 0 || root >= g.n) throw invalid_input("bfs root out of range");
    BfsTree t;
    t.root = root;
    t.parent.assign(g.n, -1);
    t.depth.assign(g.n, -1);
    t.parent[root] = root;
    t.depth[root] = 0;
    std::deque<NodeId> q{root};
    while (!q.empty()) {
        NodeId u = q.front();
        q.pop_front();
        t.order.push_back(u);
        for (NodeId v : g.adj[u]) {
            if (t.depth[v] == -1) {
                t.depth[v] = t.depth[u] + 1;
                t.parent[v] = u;
                t.max_depth = std::max(t.max_depth, t.depth[v]);
                q.push_back(v);
            }
        }
    }
    for (NodeId v = 0; v < g.n; ++v)
        if (t.depth[v] == -1)
            throw invalid_input("graph disconnected: node " + std::to_string(v) +
                                " unreachable from " + std::to_string(root));
    return t;
}

int diameter(const Graph& g) {
    int d = 0;
    for (NodeId s = 0; s < g.n; ++s) {
        BfsTree t = bfs_tree(g, s);
        d = std::max(d, t.max_depth);
    }
    return d;
}

Graph generate_cycle(int n) {
    if (n < 3) throw invalid_input("cycle needs n >= 3");
    std::vector<std::pair<NodeId, NodeId>> e;
    for (int i = 0; i < n; ++i) e.push_back({i, (i + 1) % n});
    return Graph::from_edges(n, std::move(e));
}

Graph generate_complete(int n) {
    if (n < 3) throw invalid_input("complete graph needs n >= 3");
    std::vector<std::pair<NodeId, NodeId>> e;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) e.push_back({i, j});
    return Graph::from_edges(n, std::move(e));
}

Graph generate_torus(int rows, int cols) {
    if (rows < 3 || cols < 3) throw invalid_input("torus needs rows, cols >= 3");
    auto id = [cols](int r, int c) { return r * cols + c; };
    std::set<std::pair<NodeId, NodeId>> e;
    for (int r = 0; r < rows; ++r) {
        for (int c = 0; c < cols; ++c) {
            auto add = [&](int u, int v) {
                if (u > v) std::swap(u, v);
                e.insert({u, v});
            };
            add(id(r, c), id(r, (c + 1) % cols));
            add(id(r, c), id((r + 1) % rows, c));
        }
    }
    return Graph::from_edges(rows * cols, {e.begin(), e.end()});
}

Graph generate_random_two_connected(int n, int extra, uint64_t seed) {
    if (n < 3) throw invalid_input("random-2vc needs n >= 3");
    if (extra < 0) throw invalid_input("random-2vc extra edge count must be >= 0");
    long long max_extra = (long long)n * (n - 1) / 2 - n;
    if (extra > max_extra)
        throw invalid_input("random-2vc: not enough non-cycle node pairs for requested chords");
    CounterRng rng(seed);
    // Seeded permutation via Fisher-Yates.
    std::vector<NodeId> perm(n);
    for (int i = 0; i < n; ++i) perm[i] = i;
    for (int i = n - 1; i > 0; --i) {
        int j = int(rng.below({1, i, 0, 0}, uint64_t(i) + 1));
        std::swap(perm[i], perm[j]);
    }
    std::set<std::pair<NodeId, NodeId>> e;
    auto norm = [](NodeId a, NodeId b) {
        if (a > b) std::swap(a, b);
        return std::make_pair(a, b);
    };
    for (int i = 0; i < n; ++i) e.insert(norm(perm[i], perm[(i + 1) % n]));
    int placed = 0;
    uint64_t stream = 0;
    while (placed < extra) {
        NodeId a = NodeId(rng.below({2, 0, 0, 0}, uint64_t(n), stream));
        NodeId b = NodeId(rng.below({3, 0, 0, 0}, uint64_t(n), stream));
        ++stream;
        if (a == b) continue;
        auto p = norm(a, b);
        if (e.count(p)) continue;
        e.insert(p);
        ++placed;
    }
    return Graph::from_edges(n, {e.begin(), e.end()});
}

Graph generate(const std::string& family, const GenerateParams& p, uint64_t seed) {
    if (family == "cycle") return generate_cycle(p.n);
    if (family == "complete") return generate_complete(p.n);
    if (family == "torus") {
        int rows = p.rows, cols = p.cols;
        if (rows == 0 && cols == 0 && p.n > 0) {
            // square-ish torus from a node count
            int r = 3;
            while ((r + 1) * (r + 1) <= p.n) ++r;
            rows = cols = r;
        }
        return generate_torus(rows, cols);
    }
    if (family == "random-2vc") return generate_random_two_connected(p.n, p.extra, seed);
    throw invalid_input("unknown graph family: " + family);
}

Graph parse_edge_list(std::istream& in) {
    std::string line;
    int lineno = 0;
    auto next_line = [&]() -> bool {
        while (std::getline(in, line)) {
            ++lineno;
            if (line.find_first_not_of(" \t\r") != std::string::npos) return true;
        }
        return false;
    };
    if (!next_line()) throw invalid_input("edge list: empty input");
    std::istringstream hdr(line);
    int n = 0, m = 0;
    if (!(hdr >> n >> m)) throw invalid_input("edge list line 1: expected \"n m\"");
    if (n < 1 || m < 0) throw invalid_input("edge list line 1: invalid counts");
    std::set<std::pair<NodeId, NodeId>> seen;
    std::vector<std::pair<NodeId, NodeId>> edges;
    for (int i = 0; i < m; ++i) {
        if (!next_line())
            throw invalid_input("edge list: expected " + std::to_string(m) +
                                " edges, input ended after " + std::to_string(i));
        std::istringstream ls(line);
        NodeId u, v;
        if (!(ls >> u >> v))
            throw invalid_input("edge list line " + std::to_string(lineno) + ": expected \"u v\"");
        if (u == v)
            throw invalid_input("edge list line " + std::to_string(lineno) + ": self-loop on " +
                                std::to_string(u));
        if (u < 0 || v < 0 || u >= n || v >= n)
            throw invalid_input("edge list line " + std::to_string(lineno) +
                                ": endpoint out of range");
        auto p = u < v ? std::make_pair(u, v) : std::make_pair(v, u);
        if (!seen.insert(p).second)
            throw invalid_input("edge list line " + std::to_string(lineno) + ": duplicate edge (" +
                                std::to_string(p.first) + "," + std::to_string(p.second) + ")");
        edges.push_back(p);
    }
    return Graph::from_edges(n, std::move(edges));
}

Graph load_edge_list(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw invalid_input("cannot open graph file: " + path);
    return parse_edge_list(f);
}

void write_edge_list(const Graph& g, std::ostream& out) {
    out << g.n << " " << g.m() << "\n";
    for (auto [u, v] : g.edges) out << u << " " << v << "\n";
}

} // namespace congsec
