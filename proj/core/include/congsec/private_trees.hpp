#pragma once

#include <map>
#include <string>
#include <vector>

#include "congsec/cycle_cover.hpp"
#include "congsec/graph.hpp"

namespace congsec {

struct RootedTree {
    NodeId root = -1;
    std::map<NodeId, NodeId> parent; // members; root maps to itself
    bool contains(NodeId v) const { return parent.count(v) != 0; }
    int size() const { return int(parent.size()); }
    int depth_of(NodeId v) const;
    int max_depth() const;
    std::vector<std::pair<NodeId, NodeId>> tree_edges() const;
};

// Partition of a superset of the owner's neighborhood into components,
// grown phase by phase until a single spanning tree remains.
struct NeighborhoodForest {
    NodeId owner = -1;
    std::vector<std::vector<NodeId>> components;   // sorted, indexed by lowest member ascending
    std::vector<std::pair<NodeId, NodeId>> edges;  // forest edges in the host graph
    int component_count() const { return int(components.size()); }
};

// Auxiliary graph for one halving phase: nodes with >= 2 components are
// replaced by a hub plus one virtual copy per component; single-component
// nodes enter as themselves so no bridge appears.
struct AuxGraph {
    struct NodeRef {
        NodeId real = -1;
        int comp = -1; // -1: the real node itself (hub or identity)
    };
    Graph aux;
    std::vector<NodeRef> info;            // per aux id
    std::vector<NodeId> hub;              // real node -> aux id of its real presence
    std::vector<std::vector<NodeId>> virt; // real node -> aux ids of virtual copies (empty if identity)
};

AuxGraph build_auxiliary_graph(const Graph& g, const std::vector<NeighborhoodForest>& forests);

// Contract hub-virtual edges and map virtual-virtual edges back to host
// edges. Result is a closed walk (may revisit nodes).
std::vector<NodeId> project_cycle(const Cycle& aux_cycle, const AuxGraph& aux);

struct PhaseStats {
    int cover_dilation = 0;   // max projected walk length
    int cover_congestion = 0; // max host-edge multiplicity over projected cycles
};

struct PrivateTrees {
    std::map<NodeId, RootedTree> trees;
    int dilation = 0;   // 2 * max tree depth (diameter bound)
    int congestion = 0; // max over host edges of containing-tree count
    int phases = 0;
    int cover_dilation = 0;   // max over phases
    int cover_congestion = 0; // max over phases
    std::vector<PhaseStats> phase_stats;
};

// Halving construction: log(max degree) phases of cycle covers on
// auxiliary graphs; every tree spans the owner's neighborhood while
// avoiding the owner.
PrivateTrees build_private_trees(const Graph& g);

struct TreesReport {
    bool valid = false;
    int dilation = 0;
    int congestion = 0;
    std::vector<std::string> violations;
};

TreesReport verify_private_trees(const Graph& g, const PrivateTrees& pt);

std::string trees_to_json(const PrivateTrees& pt);
PrivateTrees trees_from_json(const std::string& text);
std::string trees_report_to_json(const TreesReport& r);

} // namespace congsec
