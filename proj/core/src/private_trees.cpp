#include "congsec/private_trees.hpp"

#include <algorithm>
#include <deque>
#include <set>

#include <json.hpp>

namespace congsec {

int RootedTree::depth_of(NodeId v) const {
    int d = 0;
    NodeId x = v;
    while (x != root) {
        auto it = parent.find(x);
        if (it == parent.end()) throw structural_error("node not in tree");
        x = it->second;
        ++d;
        if (d > int(parent.size())) throw structural_error("parent cycle in tree");
    }
    return d;
}

int RootedTree::max_depth() const {
    int d = 0;
    for (const auto& [v, p] : parent) d = std::max(d, depth_of(v));
    return d;
}

std::vector<std::pair<NodeId, NodeId>> RootedTree::tree_edges() const {
    std::vector<std::pair<NodeId, NodeId>> e;
    for (const auto& [v, p] : parent)
        if (v != root) e.push_back(v < p ? std::make_pair(v, p) : std::make_pair(p, v));
    return e;
}

AuxGraph build_auxiliary_graph(const Graph& g, const std::vector<NeighborhoodForest>& forests) {
    if (int(forests.size()) != g.n) throw invalid_input("need one forest per node");
    // comp_of[u][v] = index of the component of u's forest containing neighbor v
    std::vector<std::map<NodeId, int>> comp_of(g.n);
    for (NodeId u = 0; u < g.n; ++u) {
        const auto& f = forests[u];
        if (f.owner != u) throw invalid_input("forest owner mismatch");
        std::set<NodeId> members;
        for (size_t ci = 0; ci < f.components.size(); ++ci) {
            for (NodeId v : f.components[ci]) {
                if (v == u)
                    throw structural_error("forest of node " + std::to_string(u) +
                                           " contains its owner");
                if (!members.insert(v).second)
                    throw structural_error("node " + std::to_string(v) +
                                           " in two components of forest " + std::to_string(u));
                comp_of[u][v] = int(ci);
            }
        }
        for (NodeId v : g.adj[u])
            if (!comp_of[u].count(v))
                throw structural_error("neighbor " + std::to_string(v) +
                                       " missing from forest of " + std::to_string(u));
    }

    AuxGraph a;
    a.hub.assign(g.n, -1);
    a.virt.assign(g.n, {});
    auto add_node = [&](NodeId real, int comp) {
        a.info.push_back({real, comp});
        return NodeId(a.info.size() - 1);
    };
    for (NodeId u = 0; u < g.n; ++u) {
        a.hub[u] = add_node(u, -1);
        if (forests[u].component_count() >= 2)
            for (int ci = 0; ci < forests[u].component_count(); ++ci)
                a.virt[u].push_back(add_node(u, ci));
    }
    std::vector<std::pair<NodeId, NodeId>> aux_edges;
    for (NodeId u = 0; u < g.n; ++u)
        for (NodeId x : a.virt[u]) aux_edges.push_back({a.hub[u], x});
    auto endpoint = [&](NodeId u, NodeId v) {
        // aux endpoint on u's side of host edge (u,v)
        if (a.virt[u].empty()) return a.hub[u];
        return a.virt[u][comp_of[u].at(v)];
    };
    for (auto [u, v] : g.edges) aux_edges.push_back({endpoint(u, v), endpoint(v, u)});
    a.aux = Graph::from_edges(int(a.info.size()), std::move(aux_edges));
    return a;
}

std::vector<NodeId> project_cycle(const Cycle& aux_cycle, const AuxGraph& aux) {
    std::vector<NodeId> walk;
    for (size_t i = 0; i < aux_cycle.nodes.size(); ++i) {
        NodeId x = aux_cycle.nodes[i];
        NodeId y = aux_cycle.nodes[(i + 1) % aux_cycle.nodes.size()];
        if (!aux.aux.has_edge(x, y))
            throw structural_error("aux cycle uses non-edge (" + std::to_string(x) + "," +
                                   std::to_string(y) + ")");
        NodeId rx = aux.info[x].real;
        if (walk.empty() || walk.back() != rx) walk.push_back(rx);
    }
    while (walk.size() > 1 && walk.front() == walk.back()) walk.pop_back();
    return walk;
}

namespace {

// Spanning forest of the subgraph (nodes/edges minus the owner) covering
// the owner's neighborhood: BFS from the lowest-id neighbor per component.
NeighborhoodForest extract_forest(const Graph& g, NodeId owner,
                                  const std::set<std::pair<NodeId, NodeId>>& edge_set) {
    std::map<NodeId, std::vector<NodeId>> adj;
    for (auto [x, y] : edge_set) {
        if (x == owner || y == owner) continue;
        adj[x].push_back(y);
        adj[y].push_back(x);
    }
    for (auto& [k, v] : adj) std::sort(v.begin(), v.end());

    NeighborhoodForest f;
    f.owner = owner;
    std::set<NodeId> visited;
    for (NodeId s : g.adj[owner]) {
        if (visited.count(s)) continue;
        std::vector<NodeId> comp{s};
        visited.insert(s);
        std::deque<NodeId> q{s};
        while (!q.empty()) {
            NodeId x = q.front();
            q.pop_front();
            auto it = adj.find(x);
            if (it == adj.end()) continue;
            for (NodeId y : it->second) {
                if (visited.count(y)) continue;
                visited.insert(y);
                comp.push_back(y);
                f.edges.push_back(x < y ? std::make_pair(x, y) : std::make_pair(y, x));
                q.push_back(y);
            }
        }
        std::sort(comp.begin(), comp.end());
        f.components.push_back(std::move(comp));
    }
    std::sort(f.components.begin(), f.components.end(),
              [](const auto& a, const auto& b) { return a.front() < b.front(); });
    return f;
}

int ceil_log2(int x) {
    int l = 0;
    while ((1 << l) < x) ++l;
    return l;
}

} // namespace

PrivateTrees build_private_trees(const Graph& g) {
    if (!is_two_vertex_connected(g))
        throw invalid_input("private trees require a 2-vertex-connected graph");

    // Phase 0: forests hold the bare neighborhoods, one singleton component
    // per neighbor.
    std::vector<NeighborhoodForest> forests(g.n);
    std::vector<std::set<std::pair<NodeId, NodeId>>> accum(g.n); // edges of G_t(u)
    for (NodeId u = 0; u < g.n; ++u) {
        forests[u].owner = u;
        for (NodeId v : g.adj[u]) forests[u].components.push_back({v});
    }

    PrivateTrees pt;
    const int phases = std::max(1, ceil_log2(g.max_degree()));
    for (int t = 1; t <= phases; ++t) {
        bool any = false;
        for (NodeId u = 0; u < g.n; ++u)
            if (forests[u].component_count() >= 2) any = true;
        if (!any) break;

        AuxGraph aux = build_auxiliary_graph(g, forests);
        CycleCover cover = build_cycle_cover(aux.aux);

        std::vector<int> before(g.n);
        for (NodeId u = 0; u < g.n; ++u) before[u] = forests[u].component_count();

        PhaseStats st;
        std::map<std::pair<NodeId, NodeId>, int> edge_mult;
        for (const Cycle& ac : cover.cycles) {
            std::vector<NodeId> walk = project_cycle(ac, aux);
            if (walk.size() < 2) continue;
            st.cover_dilation = std::max<int>(st.cover_dilation, int(walk.size()));
            std::set<NodeId> walk_nodes(walk.begin(), walk.end());
            std::vector<std::pair<NodeId, NodeId>> walk_edges;
            for (size_t i = 0; i < walk.size(); ++i) {
                NodeId x = walk[i], y = walk[(i + 1) % walk.size()];
                auto p = x < y ? std::make_pair(x, y) : std::make_pair(y, x);
                walk_edges.push_back(p);
                ++edge_mult[p];
            }
            for (NodeId u : walk_nodes) {
                if (forests[u].component_count() < 2) continue;
                for (auto p : walk_edges) accum[u].insert(p);
            }
        }
        for (const auto& [e, c] : edge_mult) st.cover_congestion = std::max(st.cover_congestion, c);
        pt.phase_stats.push_back(st);
        pt.cover_dilation = std::max(pt.cover_dilation, st.cover_dilation);
        pt.cover_congestion = std::max(pt.cover_congestion, st.cover_congestion);
        ++pt.phases;

        for (NodeId u = 0; u < g.n; ++u) {
            if (before[u] < 2) continue;
            forests[u] = extract_forest(g, u, accum[u]);
            int after = forests[u].component_count();
            if (after > before[u] / 2)
                throw internal_error("phase " + std::to_string(t) + ": components of node " +
                                     std::to_string(u) + " went " + std::to_string(before[u]) +
                                     " -> " + std::to_string(after) + ", halving violated");
        }
    }

    for (NodeId u = 0; u < g.n; ++u) {
        if (forests[u].component_count() != 1)
            throw internal_error("node " + std::to_string(u) +
                                 " still has several components after all phases");
        // Root the single component at the lowest-id neighbor.
        RootedTree tree;
        tree.root = g.adj[u].front();
        std::map<NodeId, std::vector<NodeId>> adj;
        for (auto [x, y] : forests[u].edges) {
            adj[x].push_back(y);
            adj[y].push_back(x);
        }
        for (auto& [k, v] : adj) std::sort(v.begin(), v.end());
        tree.parent[tree.root] = tree.root;
        std::deque<NodeId> q{tree.root};
        while (!q.empty()) {
            NodeId x = q.front();
            q.pop_front();
            for (NodeId y : adj[x]) {
                if (tree.parent.count(y)) continue;
                tree.parent[y] = x;
                q.push_back(y);
            }
        }
        pt.trees[u] = std::move(tree);
    }

    TreesReport rep = verify_private_trees(g, pt);
    if (!rep.valid)
        throw internal_error("private tree construction produced invalid trees: " +
                             (rep.violations.empty() ? std::string("?") : rep.violations.front()));
    pt.dilation = rep.dilation;
    pt.congestion = rep.congestion;
    return pt;
}

TreesReport verify_private_trees(const Graph& g, const PrivateTrees& pt) {
    TreesReport r;
    std::map<std::pair<NodeId, NodeId>, int> edge_trees;
    int max_depth = 0;
    for (NodeId u = 0; u < g.n; ++u) {
        auto it = pt.trees.find(u);
        if (it == pt.trees.end()) {
            r.violations.push_back("missing tree for node " + std::to_string(u));
            continue;
        }
        const RootedTree& t = it->second;
        if (t.contains(u))
            r.violations.push_back("root-in-tree at u=" + std::to_string(u));
        for (NodeId v : g.adj[u])
            if (!t.contains(v))
                r.violations.push_back("neighbor " + std::to_string(v) +
                                       " missing from tree of " + std::to_string(u));
        if (!t.contains(t.root)) {
            r.violations.push_back("root missing from tree of " + std::to_string(u));
            continue;
        }
        if (t.parent.at(t.root) != t.root)
            r.violations.push_back("root of tree " + std::to_string(u) + " has a parent");
        bool edges_ok = true;
        for (const auto& [v, p] : t.parent) {
            if (v == t.root) continue;
            if (!g.has_edge(v, p)) {
                r.violations.push_back("tree of " + std::to_string(u) + " uses non-edge (" +
                                       std::to_string(v) + "," + std::to_string(p) + ")");
                edges_ok = false;
            }
        }
        if (!edges_ok) continue;
        // Acyclic + connected: every member must reach the root through
        // parent links without revisiting.
        bool shape_ok = true;
        for (const auto& [v, p] : t.parent) {
            std::set<NodeId> seen;
            NodeId x = v;
            while (x != t.root) {
                if (!seen.insert(x).second || !t.parent.count(x)) {
                    r.violations.push_back("broken parent chain in tree of " + std::to_string(u));
                    shape_ok = false;
                    break;
                }
                x = t.parent.at(x);
            }
            if (!shape_ok) break;
        }
        if (!shape_ok) continue;
        max_depth = std::max(max_depth, t.max_depth());
        for (auto e : t.tree_edges()) ++edge_trees[e];
    }
    r.dilation = 2 * max_depth;
    for (const auto& [e, c] : edge_trees) r.congestion = std::max(r.congestion, c);
    r.valid = r.violations.empty();
    return r;
}

std::string trees_to_json(const PrivateTrees& pt) {
    nlohmann::json j;
    nlohmann::json trees = nlohmann::json::object();
    for (const auto& [u, t] : pt.trees) {
        nlohmann::json jt;
        jt["root"] = t.root;
        nlohmann::json pairs = nlohmann::json::array();
        for (const auto& [v, p] : t.parent)
            if (v != t.root) pairs.push_back({v, p});
        jt["parents"] = pairs;
        trees[std::to_string(u)] = jt;
    }
    j["trees"] = trees;
    j["dilation"] = pt.dilation;
    j["congestion"] = pt.congestion;
    j["phases"] = pt.phases;
    j["coverDilation"] = pt.cover_dilation;
    j["coverCongestion"] = pt.cover_congestion;
    return j.dump();
}

PrivateTrees trees_from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    PrivateTrees pt;
    for (auto it = j["trees"].begin(); it != j["trees"].end(); ++it) {
        NodeId u = std::stoi(it.key());
        RootedTree t;
        t.root = (*it)["root"].get<NodeId>();
        t.parent[t.root] = t.root;
        for (const auto& pr : (*it)["parents"])
            t.parent[pr[0].get<NodeId>()] = pr[1].get<NodeId>();
        pt.trees[u] = std::move(t);
    }
    pt.dilation = j.value("dilation", 0);
    pt.congestion = j.value("congestion", 0);
    pt.phases = j.value("phases", 0);
    pt.cover_dilation = j.value("coverDilation", 0);
    pt.cover_congestion = j.value("coverCongestion", 0);
    return pt;
}

std::string trees_report_to_json(const TreesReport& r) {
    nlohmann::json j;
    j["valid"] = r.valid;
    j["dilation"] = r.dilation;
    j["congestion"] = r.congestion;
    j["violations"] = r.violations;
    return j.dump();
}

} // namespace congsec
