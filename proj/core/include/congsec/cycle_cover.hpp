#pragma once

#include <string>
#include <vector>

#include "congsec/graph.hpp"

namespace congsec {

// Simple cycle given as the ordered node sequence of a closed walk
// (first node not repeated at the end).
struct Cycle {
    std::vector<NodeId> nodes;

    size_t length() const { return nodes.size(); }
    // Rotation/reflection canonical form, used for deduplication.
    Cycle canonical() const;
};

struct CycleCover {
    std::vector<Cycle> cycles;
    int dilation = 0;   // max cycle length
    int congestion = 0; // max over edges of containing-cycle count
};

struct CoverReport {
    bool covered = false;
    int dilation = 0;
    int congestion = 0;
    std::vector<std::pair<NodeId, NodeId>> uncovered;
};

// BFS-tree fundamental-cycle cover. Every non-tree edge contributes the
// cycle through its tree paths to the lca; a tree edge with no crossing
// non-tree edge is a bridge and makes construction fail. All cycle
// lengths are at most 2*(BFS depth)+1.
CycleCover build_cycle_cover(const Graph& g);

// Recomputes coverage, dilation and congestion from scratch. A cycle
// stepping over a non-edge raises structural_error naming the pair.
CoverReport verify_cycle_cover(const Graph& g, const CycleCover& cc);

std::string cover_to_json(const CycleCover& cc);
CycleCover cover_from_json(const std::string& text);
std::string cover_report_to_json(const CoverReport& r);

} // namespace congsec
