#include "congsec/cycle_cover.hpp"

#include <algorithm>
#include <map>
#include <set>

#include <json.hpp>

namespace congsec {

Cycle Cycle::canonical() const {
    const size_t len = nodes.size();
    Cycle best;
    best.nodes = nodes;
    auto consider = [&](const std::vector<NodeId>& cand) {
        if (cand < best.nodes) best.nodes = cand;
    };
    std::vector<NodeId> fwd = nodes, rev(nodes.rbegin(), nodes.rend());
    for (size_t r = 0; r < len; ++r) {
        std::rotate(fwd.begin(), fwd.begin() + 1, fwd.end());
        std::rotate(rev.begin(), rev.begin() + 1, rev.end());
        consider(fwd);
        consider(rev);
    }
    return best;
}

namespace {

struct EulerTimes {
    std::vector<int> tin, tout;
};

EulerTimes euler_times(const Graph& g, const BfsTree& t) {
    // Children lists from the BFS parent map, then an iterative DFS for
    // subtree intervals.
    std::vector<std::vector<NodeId>> children(g.n);
    for (NodeId v = 0; v < g.n; ++v)
        if (v != t.root) children[t.parent[v]].push_back(v);
    EulerTimes et;
    et.tin.assign(g.n, 0);
    et.tout.assign(g.n, 0);
    int timer = 0;
    std::vector<std::pair<NodeId, size_t>> stack{{t.root, 0}};
    et.tin[t.root] = timer++;
    while (!stack.empty()) {
        auto& [u, idx] = stack.back();
        if (idx < children[u].size()) {
            NodeId c = children[u][idx++];
            et.tin[c] = timer++;
            stack.push_back({c, 0});
        } else {
            et.tout[u] = timer++;
            stack.pop_back();
        }
    }
    return et;
}

std::vector<NodeId> path_to_ancestor(const BfsTree& t, NodeId from, NodeId anc) {
    std::vector<NodeId> p;
    NodeId x = from;
    while (x != anc) {
        p.push_back(x);
        x = t.parent[x];
    }
    p.push_back(anc);
    return p;
}

NodeId lca(const BfsTree& t, NodeId a, NodeId b) {
    while (t.depth[a] > t.depth[b]) a = t.parent[a];
    while (t.depth[b] > t.depth[a]) b = t.parent[b];
    while (a != b) {
        a = t.parent[a];
        b = t.parent[b];
    }
    return a;
}

} // namespace

CycleCover build_cycle_cover(const Graph& g) {
    if (g.n < 3) throw invalid_input("cycle cover needs n >= 3");
    BfsTree t = bfs_tree(g, 0);
    EulerTimes et = euler_times(g, t);
    auto in_subtree = [&](NodeId x, NodeId c) {
        return et.tin[c] <= et.tin[x] && et.tout[x] <= et.tout[c];
    };

    std::vector<std::pair<NodeId, NodeId>> nontree;
    for (auto [u, v] : g.edges)
        if (t.parent[u] != v && t.parent[v] != u) nontree.push_back({u, v});

    // Bridge check doubles as the coverage argument: a tree edge is on some
    // fundamental cycle iff a non-tree edge crosses its subtree cut.
    for (NodeId c = 0; c < g.n; ++c) {
        if (c == t.root) continue;
        bool crossed = false;
        for (auto [x, y] : nontree)
            if (in_subtree(x, c) != in_subtree(y, c)) { crossed = true; break; }
        if (!crossed)
            throw invalid_input("bridge edge (" + std::to_string(std::min(t.parent[c], c)) + "," +
                                std::to_string(std::max(t.parent[c], c)) + ")");
    }

    std::set<std::vector<NodeId>> seen;
    CycleCover cc;
    for (auto [u, v] : nontree) {
        NodeId a = lca(t, u, v);
        std::vector<NodeId> up = path_to_ancestor(t, u, a);   // u .. a
        std::vector<NodeId> down = path_to_ancestor(t, v, a); // v .. a
        Cycle cyc;
        cyc.nodes = up;                                       // u .. a
        for (size_t i = down.size() - 1; i-- > 0;) cyc.nodes.push_back(down[i]); // a+1 .. v
        Cycle canon = cyc.canonical();
        if (seen.insert(canon.nodes).second) cc.cycles.push_back(std::move(cyc));
    }

    CoverReport rep = verify_cycle_cover(g, cc);
    if (!rep.covered)
        throw internal_error("cycle cover construction left edges uncovered");
    cc.dilation = rep.dilation;
    cc.congestion = rep.congestion;
    return cc;
}

CoverReport verify_cycle_cover(const Graph& g, const CycleCover& cc) {
    CoverReport r;
    std::vector<int> load(g.edges.size(), 0);
    size_t maxlen = 0;
    for (const Cycle& c : cc.cycles) {
        if (c.nodes.size() < 3)
            throw structural_error("cycle shorter than 3 nodes");
        std::set<NodeId> uniq(c.nodes.begin(), c.nodes.end());
        if (uniq.size() != c.nodes.size())
            throw structural_error("cycle repeats a node");
        maxlen = std::max(maxlen, c.nodes.size());
        for (size_t i = 0; i < c.nodes.size(); ++i) {
            NodeId a = c.nodes[i], b = c.nodes[(i + 1) % c.nodes.size()];
            int idx = g.edge_index(a, b);
            if (idx < 0)
                throw structural_error("cycle uses non-edge (" + std::to_string(a) + "," +
                                       std::to_string(b) + ")");
            ++load[idx];
        }
    }
    r.dilation = int(maxlen);
    for (size_t i = 0; i < load.size(); ++i) {
        r.congestion = std::max(r.congestion, load[i]);
        if (load[i] == 0) r.uncovered.push_back(g.edges[i]);
    }
    r.covered = r.uncovered.empty();
    return r;
}

std::string cover_to_json(const CycleCover& cc) {
    nlohmann::json j = nlohmann::json::array();
    for (const Cycle& c : cc.cycles) j.push_back(c.nodes);
    return j.dump();
}

CycleCover cover_from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    CycleCover cc;
    for (const auto& arr : j) {
        Cycle c;
        for (const auto& v : arr) c.nodes.push_back(v.get<NodeId>());
        cc.cycles.push_back(std::move(c));
    }
    return cc;
}

std::string cover_report_to_json(const CoverReport& r) {
    nlohmann::json j;
    j["covered"] = r.covered;
    j["dilation"] = r.dilation;
    j["congestion"] = r.congestion;
    nlohmann::json unc = nlohmann::json::array();
    for (auto [u, v] : r.uncovered) unc.push_back({u, v});
    j["uncovered"] = unc;
    return j.dump();
}

} // namespace congsec
