#pragma once

#include <vector>

#include "congsec/sim.hpp"

namespace congsec {

// Extended-state layout used by the gate-by-gate decomposition. One
// original round becomes a block of sub-rounds; the state carries the
// original state plus captured inbound records, captured randomness and
// the values of already-computed gates.
struct ExtLayout {
    int S = 0;   // original state width
    int d = 0;   // node degree
    int Wm = 0;  // stored message record width (presence + payload)
    int rho = 0; // max per-round randomness
    int T = 0;   // stored gate slots

    int msgs_off() const { return S; }
    int rand_off() const { return S + d * Wm; }
    int gates_off() const { return S + d * Wm + rho; }
    int width() const { return S + d * Wm + rho + T; }
};

struct SubroundInfo {
    int orig_round = 0; // 1-based
    int gate_index = 0; // 0-based within the block
    int block_len = 0;
    bool block_first = false;
    bool block_last = false;
};

struct DecomposedAlgorithm {
    AlgorithmSpec spec;   // runnable sub-round algorithm
    AlgorithmSpec source; // the round-per-circuit original
    std::vector<SubroundInfo> sub;
    std::vector<int> block_len; // per original round
    int msg_record_bits = 0;    // Wm
    int rho_max = 0;

    ExtLayout layout(const Graph& g, NodeId u) const;
};

// Split every round into sub-rounds computing one gate each; the final
// sub-round of a block packs the round outputs. Output distribution is
// identical to the source algorithm for every seed.
DecomposedAlgorithm gate_decompose(const AlgorithmSpec& algo, const Graph& g);

// One communication exchange: broadcast the color, then flag whether all
// neighbor colors differ.
AlgorithmSpec example_verify_coloring(int color_bits);

// Aggregate values up a BFS tree; the root ends with the sum, everyone
// else with zero.
AlgorithmSpec example_sum_to_root(const Graph& g, NodeId root, int value_bits);

// Randomized maximal independent set with per-iteration priorities and a
// fixed id tie-break; budget of `iterations` (3 rounds each).
AlgorithmSpec example_luby_mis(int n, int iterations);

// r rounds of state negation; the smallest compilable algorithm, used by
// the exact privacy checks.
AlgorithmSpec example_toggle(int rounds);

// Two rounds: send the node id, then collect neighbor ids into the state.
AlgorithmSpec example_echo(int n, int max_degree);

AlgorithmSpec example_by_name(const std::string& name, const Graph& g);

} // namespace congsec
