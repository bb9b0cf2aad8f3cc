#pragma once

#include <deque>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "congsec/bits.hpp"
#include "congsec/circuit.hpp"
#include "congsec/graph.hpp"
#include "congsec/private_trees.hpp"
#include "congsec/rng.hpp"

namespace congsec {

// Structured message label; drives transcript scans and view extraction.
struct MsgTag {
    uint32_t kind = 0;
    int32_t a = 0, b = 0, c = 0;

    friend bool operator==(const MsgTag& x, const MsgTag& y) {
        return x.kind == y.kind && x.a == y.a && x.b == y.b && x.c == y.c;
    }
    friend bool operator<(const MsgTag& x, const MsgTag& y) {
        return std::tie(x.kind, x.a, x.b, x.c) < std::tie(y.kind, y.a, y.b, y.c);
    }
};

namespace tag {
// kinds used across the stack; a/b/c carry (node, subround, neighbor) context
enum : uint32_t {
    Algo = 1,          // plain algorithm message: a=round
    InputShare = 2,    // a=dealer node
    StateCipher = 3,   // a=server node, b=subround
    TreeRand = 4,      // a=tree owner, b=subround
    MsgKeyHandoff = 5, // a=sender of the covered message, b=subround, c=receiver node
    PsmMsg = 6,        // a=server node, b=subround, c=party index
    FinalKey = 7,      // a=server node
    Multicast = 8,     // a=job id
    LeakProbe = 9,     // deliberate mutation traffic, a=server node, b=subround
};
}

struct Message {
    int round = 0; // engine round of final frame
    NodeId src = -1, dst = -1;
    MsgTag tag;
    BitString payload;
};

struct RoundReport {
    int rounds = 0;                      // rounds that carried at least one bit
    int total_rounds = 0;                // all rounds stepped
    int64_t max_edge_load = 0;           // max total bits over directed edges
    std::map<std::pair<NodeId, NodeId>, int64_t> per_edge_bits;
};

std::string round_report_to_json(const RoundReport& r, bool include_edges = false);

// Frame-switched synchronous network. Every directed edge carries at most
// beta bits per round; larger payloads are split into sequenced packets
// with a 16-bit header counted against the budget.
class Engine {
public:
    static constexpr int kFrameHeaderBits = 16;

    Engine(const Graph& g, int beta);

    int beta() const { return beta_; }
    const Graph& graph() const { return *g_; }

    // Queue a logical message. Payloads above beta require beta > header.
    void post(NodeId src, NodeId dst, const MsgTag& tag, BitString payload);

    // Advance one round; returns logical messages fully delivered in it.
    std::vector<Message> step();

    // Keep stepping until queues drain; delivered messages are appended to
    // the per-node inboxes retrievable via take_inbox.
    void run_until_idle(int max_rounds = 1 << 22);

    bool idle() const;
    std::vector<Message> take_inbox(NodeId u);

    int rounds_total() const { return rounds_total_; }
    int rounds_busy() const { return rounds_busy_; }
    RoundReport report() const;

    void set_recording(bool on) { recording_ = on; }
    bool recording() const { return recording_; }
    const std::vector<Message>& transcript() const { return transcript_; }

    // Conservation check: bits posted but not yet delivered.
    int64_t undelivered_bits() const;

private:
    struct Frame {
        MsgTag tag;
        uint64_t msg_id;
        BitString chunk;
        int wire_bits; // chunk + header when framed
        bool last;
    };
    struct Assembly {
        BitString acc;
    };

    const Graph* g_;
    int beta_;
    std::map<std::pair<NodeId, NodeId>, std::deque<Frame>> queues_;
    std::map<uint64_t, Assembly> partial_;
    std::vector<std::vector<Message>> inbox_;
    std::vector<Message> transcript_;
    std::map<std::pair<NodeId, NodeId>, int64_t> edge_bits_;
    uint64_t next_msg_id_ = 1;
    int rounds_total_ = 0;
    int rounds_busy_ = 0;
    bool recording_ = false;
};

struct NaturalityCertificate {
    int polylog_exponent = 1;  // state <= max_degree * ceil(log2 n)^c
    int max_circuit_size = 0;  // per-round gate bound (0 = unchecked)
};

// Distributed algorithm as one circuit per (round, node). Input wires per
// round i at node u of degree d:
//   [ state | d slots of (presence bit + in_width(i) payload) | rand ]
// with in_width(i) = msg width of round i-1 (0 for round 1 or after a
// silent round). Outputs: [ state' | d * msg payload if the round sends ].
struct AlgorithmSpec {
    std::string name;
    int rounds = 0;
    int state_bits = 0;
    int msg_bits = 0;
    int input_bits = 0;
    int output_bits = 0;
    std::vector<int> rand_bits; // per round
    std::vector<char> sends;    // per round
    std::function<GateCircuit(const Graph&, int, NodeId)> circuit_for;
    // per-node state width; defaults to the uniform bound
    std::function<int(const Graph&, NodeId)> state_width_for;
    NaturalityCertificate cert;

    int state_width(const Graph& g, NodeId u) const {
        return state_width_for ? state_width_for(g, u) : state_bits;
    }
    int in_width(int round) const { // payload width arriving at round (1-based)
        if (round <= 1) return 0;
        return sends[round - 2] ? msg_bits : 0;
    }
    int out_width(int round) const { return sends[round - 1] ? msg_bits : 0; }
};

bool check_naturality(const AlgorithmSpec& algo, const Graph& g);

struct RunResult {
    std::vector<BitString> outputs;      // per node, output_bits wide
    std::vector<BitString> final_states; // per node, full state
    RoundReport report;
    std::vector<Message> transcript;     // when recording
};

// Execute the algorithm round-accurately. Bandwidth defaults to
// 4*ceil(log2 n) bits per direction per round when beta == 0.
RunResult run(const Graph& g, const AlgorithmSpec& algo, const std::vector<BitString>& inputs,
              uint64_t seed, int beta = 0, bool record = false);

struct MulticastJob {
    RootedTree tree;
    int payload_bits = 0;
    std::vector<NodeId> recipients; // subset of tree members
};

enum class Strategy { FifoPipeline, RandomDelay };

// Deliver every job's payload from its tree root to its recipients.
// fifo-pipeline relays store-and-forward through shared per-edge queues;
// random-delay starts each job at a seeded offset and retries with fresh
// offsets when some edge-round exceeds beta.
RoundReport schedule_multicasts(const Graph& g, const std::vector<MulticastJob>& jobs, int beta,
                                Strategy strategy, uint64_t seed = 0, int max_attempts = 20);

} // namespace congsec
