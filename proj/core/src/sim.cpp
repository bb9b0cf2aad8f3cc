#include "congsec/sim.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include <json.hpp>

namespace congsec {

std::string round_report_to_json(const RoundReport& r, bool include_edges) {
    nlohmann::json j;
    j["rounds"] = r.rounds;
    j["totalRounds"] = r.total_rounds;
    j["maxEdgeLoad"] = r.max_edge_load;
    if (include_edges) {
        nlohmann::json e = nlohmann::json::array();
        for (const auto& [edge, bits] : r.per_edge_bits)
            e.push_back({edge.first, edge.second, bits});
        j["perEdgeBits"] = e;
    }
    return j.dump();
}

Engine::Engine(const Graph& g, int beta) : g_(&g), beta_(beta) {
    if (beta_ <= 0) throw invalid_input("bandwidth must be positive");
    inbox_.resize(g.n);
}

void Engine::post(NodeId src, NodeId dst, const MsgTag& tag, BitString payload) {
    if (!g_->has_edge(src, dst))
        throw invalid_input("post over non-edge (" + std::to_string(src) + "," +
                            std::to_string(dst) + ")");
    uint64_t id = next_msg_id_++;
    auto& q = queues_[{src, dst}];
    if (int(payload.size()) <= beta_) {
        q.push_back({tag, id, std::move(payload), 0, true});
        q.back().wire_bits = int(q.back().chunk.size());
        return;
    }
    if (beta_ <= kFrameHeaderBits)
        throw bandwidth_violation("bandwidth " + std::to_string(beta_) +
                                  " too small to frame a payload of " +
                                  std::to_string(payload.size()) + " bits");
    const int chunk_bits = beta_ - kFrameHeaderBits;
    size_t off = 0;
    while (off < payload.size()) {
        size_t len = std::min<size_t>(chunk_bits, payload.size() - off);
        Frame f;
        f.tag = tag;
        f.msg_id = id;
        f.chunk = payload.slice(off, len);
        f.wire_bits = int(len) + kFrameHeaderBits;
        off += len;
        f.last = off == payload.size();
        q.push_back(std::move(f));
    }
}

std::vector<Message> Engine::step() {
    ++rounds_total_;
    bool busy = false;
    std::vector<Message> delivered;
    for (auto& [edge, q] : queues_) {
        int used = 0;
        while (!q.empty() && used + q.front().wire_bits <= beta_) {
            Frame f = std::move(q.front());
            q.pop_front();
            used += f.wire_bits;
            busy = true;
            auto& acc = partial_[f.msg_id].acc;
            acc.append(f.chunk);
            if (f.last) {
                Message m;
                m.round = rounds_total_;
                m.src = edge.first;
                m.dst = edge.second;
                m.tag = f.tag;
                m.payload = std::move(acc);
                partial_.erase(f.msg_id);
                delivered.push_back(m);
            }
        }
        if (used > beta_) throw internal_error("edge exceeded bandwidth");
        edge_bits_[edge] += used;
    }
    if (busy) ++rounds_busy_;
    for (Message& m : delivered) {
        if (recording_) transcript_.push_back(m);
        inbox_[m.dst].push_back(m);
    }
    return delivered;
}

void Engine::run_until_idle(int max_rounds) {
    int guard = 0;
    while (!idle()) {
        step();
        if (++guard > max_rounds) throw internal_error("engine did not drain");
    }
}

bool Engine::idle() const {
    for (const auto& [e, q] : queues_)
        if (!q.empty()) return false;
    return true;
}

std::vector<Message> Engine::take_inbox(NodeId u) {
    std::vector<Message> r = std::move(inbox_[u]);
    inbox_[u].clear();
    return r;
}

RoundReport Engine::report() const {
    RoundReport r;
    r.rounds = rounds_busy_;
    r.total_rounds = rounds_total_;
    r.per_edge_bits = edge_bits_;
    for (const auto& [e, b] : edge_bits_) r.max_edge_load = std::max(r.max_edge_load, b);
    return r;
}

int64_t Engine::undelivered_bits() const {
    int64_t b = 0;
    for (const auto& [e, q] : queues_)
        for (const Frame& f : q) b += f.chunk.size();
    for (const auto& [id, a] : partial_) b += a.acc.size();
    return b;
}

bool check_naturality(const AlgorithmSpec& algo, const Graph& g) {
    int delta = g.max_degree();
    int logn = 1;
    while ((1 << logn) < g.n) ++logn;
    int64_t bound = delta;
    for (int i = 0; i < algo.cert.polylog_exponent; ++i) bound *= logn;
    if (algo.state_bits > bound) return false;
    if (algo.cert.max_circuit_size > 0) {
        for (int i = 1; i <= algo.rounds; ++i)
            for (NodeId u = 0; u < g.n; ++u)
                if (int(algo.circuit_for(g, i, u).size()) > algo.cert.max_circuit_size)
                    return false;
    }
    return true;
}

namespace {
int default_beta(int n) {
    int logn = 1;
    while ((1 << logn) < n) ++logn;
    return 4 * logn;
}
} // namespace

RunResult run(const Graph& g, const AlgorithmSpec& algo, const std::vector<BitString>& inputs,
              uint64_t seed, int beta, bool record) {
    if (int(inputs.size()) != g.n) throw invalid_input("need one input per node");
    for (const BitString& x : inputs)
        if (int(x.size()) != algo.input_bits)
            throw invalid_input("input width mismatch");
    if (int(algo.rand_bits.size()) != algo.rounds || int(algo.sends.size()) != algo.rounds)
        throw invalid_input("per-round width vectors must match round count");

    if (beta == 0) beta = default_beta(g.n);
    Engine eng(g, beta);
    eng.set_recording(record);
    SeededSource tape(seed);

    std::vector<BitString> state(g.n);
    for (NodeId u = 0; u < g.n; ++u) {
        state[u] = BitString(algo.state_width(g, u));
        for (int b = 0; b < algo.input_bits; ++b) state[u].set(b, inputs[u].get(b));
    }

    // inbound[u][j] = payload received from the j-th neighbor (ascending)
    std::vector<std::vector<BitString>> inbound(g.n);
    std::vector<std::vector<char>> present(g.n);
    for (NodeId u = 0; u < g.n; ++u) {
        inbound[u].assign(g.degree(u), BitString());
        present[u].assign(g.degree(u), 0);
    }

    for (int round = 1; round <= algo.rounds; ++round) {
        const int w_in = algo.in_width(round);
        const int w_out = algo.out_width(round);
        std::vector<BitString> next_state(g.n);
        for (NodeId u = 0; u < g.n; ++u) {
            const int d = g.degree(u);
            BitString in;
            in.append(state[u]);
            for (int j = 0; j < d; ++j) {
                in.push_back(present[u][j]);
                if (present[u][j]) {
                    if (int(inbound[u][j].size()) != w_in)
                        throw internal_error("inbound width mismatch");
                    in.append(inbound[u][j]);
                } else {
                    in.append(BitString(w_in));
                }
            }
            in.append(tape.draw({uint32_t(tag::Algo), u, round, 0}, algo.rand_bits[round - 1]));

            GateCircuit c = algo.circuit_for(g, round, u);
            if (int(c.n_inputs) != int(in.size()))
                throw invalid_input("round " + std::to_string(round) + " circuit at node " +
                                    std::to_string(u) + " expects " + std::to_string(c.n_inputs) +
                                    " inputs, engine supplies " + std::to_string(in.size()));
            BitString out = c.eval(in);
            const int sw = algo.state_width(g, u);
            int expect = sw + d * w_out;
            if (int(out.size()) != expect)
                throw invalid_input("round circuit output width mismatch at node " +
                                    std::to_string(u));
            next_state[u] = out.slice(0, sw);
            if (w_out > 0) {
                for (int j = 0; j < d; ++j) {
                    BitString payload = out.slice(sw + size_t(j) * w_out, w_out);
                    if (int(payload.size()) > beta)
                        throw bandwidth_violation(
                            "round " + std::to_string(round) + ": message on edge (" +
                            std::to_string(u) + "," + std::to_string(g.adj[u][j]) +
                            ") exceeds bandwidth");
                    eng.post(u, g.adj[u][j], {uint32_t(tag::Algo), round, u, j},
                             std::move(payload));
                }
            }
            present[u].assign(d, 0);
        }
        state = std::move(next_state);

        auto delivered = eng.step();
        if (!eng.idle())
            throw bandwidth_violation("round " + std::to_string(round) +
                                      ": messages did not fit a single round");
        for (const Message& m : delivered) {
            const auto& a = g.adj[m.dst];
            int j = int(std::lower_bound(a.begin(), a.end(), m.src) - a.begin());
            inbound[m.dst][j] = m.payload;
            present[m.dst][j] = 1;
        }
    }

    if (eng.undelivered_bits() != 0)
        throw internal_error("bits left undelivered at termination");

    RunResult r;
    r.final_states = state;
    r.outputs.resize(g.n);
    for (NodeId u = 0; u < g.n; ++u) r.outputs[u] = state[u].slice(0, algo.output_bits);
    r.report = eng.report();
    if (record) r.transcript = eng.transcript();
    return r;
}

namespace {

struct TreeChildren {
    std::map<NodeId, std::vector<NodeId>> children;
};

TreeChildren children_of(const RootedTree& t) {
    TreeChildren tc;
    for (const auto& [v, p] : t.parent)
        if (v != t.root) tc.children[p].push_back(v);
    for (auto& [k, v] : tc.children) std::sort(v.begin(), v.end());
    return tc;
}

RoundReport fifo_multicasts(const Graph& g, const std::vector<MulticastJob>& jobs, int beta) {
    Engine eng(g, beta);
    std::vector<TreeChildren> kids;
    kids.reserve(jobs.size());
    for (const auto& j : jobs) kids.push_back(children_of(j.tree));

    // Root payloads enter the network as one message per child edge;
    // arriving messages are relayed onwards, store-and-forward.
    for (size_t ji = 0; ji < jobs.size(); ++ji) {
        const auto& job = jobs[ji];
        if (job.payload_bits == 0) continue;
        BitString payload(job.payload_bits);
        for (NodeId c : kids[ji].children[job.tree.root])
            eng.post(job.tree.root, c, {uint32_t(tag::Multicast), int32_t(ji), 0, 0}, payload);
    }
    std::set<std::pair<int, NodeId>> done; // (job, recipient) pairs delivered
    int guard = 0;
    while (!eng.idle()) {
        auto delivered = eng.step();
        for (const Message& m : delivered) {
            int ji = m.tag.a;
            done.insert({ji, m.dst});
            for (NodeId c : kids[ji].children[m.dst]) eng.post(m.dst, c, m.tag, m.payload);
        }
        if (++guard > (1 << 22)) throw internal_error("multicast did not drain");
    }
    for (size_t ji = 0; ji < jobs.size(); ++ji) {
        if (jobs[ji].payload_bits == 0) continue;
        for (NodeId r : jobs[ji].recipients)
            if (r != jobs[ji].tree.root && !done.count({int(ji), r}))
                throw internal_error("recipient missed a multicast payload");
    }
    return eng.report();
}

RoundReport random_delay_multicasts(const Graph& g, const std::vector<MulticastJob>& jobs,
                                    int beta, uint64_t seed, int max_attempts) {
    if (beta <= Engine::kFrameHeaderBits)
        throw bandwidth_violation("bandwidth too small for framed multicast");
    const int chunk = beta - Engine::kFrameHeaderBits;
    int logn = 1;
    while ((1 << logn) < g.n) ++logn;

    // per-edge total packet congestion for the offset range
    std::map<std::pair<NodeId, NodeId>, int64_t> packets_per_edge;
    std::vector<int> packets(jobs.size(), 0);
    std::vector<std::map<NodeId, int>> depth(jobs.size());
    for (size_t ji = 0; ji < jobs.size(); ++ji) {
        packets[ji] = (jobs[ji].payload_bits + chunk - 1) / chunk;
        const RootedTree& t = jobs[ji].tree;
        for (const auto& [v, p] : t.parent) depth[ji][v] = t.depth_of(v);
        for (const auto& [v, p] : t.parent)
            if (v != t.root) packets_per_edge[{p, v}] += packets[ji];
    }
    int64_t congestion = 0;
    for (const auto& [e, c] : packets_per_edge) congestion = std::max(congestion, c);
    const int64_t offset_range = (congestion + logn - 1) / logn + 1;

    CounterRng rng(seed);
    for (int attempt = 0; attempt < max_attempts; ++attempt) {
        // packet q of job ji crosses the edge into node v at round
        // offset + depth(v) + q (store-and-forward pipeline, no queuing)
        std::map<std::pair<std::pair<NodeId, NodeId>, int64_t>, int64_t> load;
        int64_t last_round = 0;
        int64_t overload = 0;
        for (size_t ji = 0; ji < jobs.size(); ++ji) {
            if (packets[ji] == 0) continue;
            int64_t off = int64_t(
                rng.below({uint32_t(tag::Multicast), int32_t(ji), attempt, 0}, offset_range));
            const RootedTree& t = jobs[ji].tree;
            for (const auto& [v, p] : t.parent) {
                if (v == t.root) continue;
                for (int q = 0; q < packets[ji]; ++q) {
                    int64_t round = off + depth[ji].at(v) + q;
                    int64_t bits = std::min<int64_t>(chunk, jobs[ji].payload_bits - q * chunk) +
                                   Engine::kFrameHeaderBits;
                    auto& l = load[{{p, v}, round}];
                    l += bits;
                    overload = std::max(overload, l - beta);
                    last_round = std::max(last_round, round);
                }
            }
        }
        if (overload <= 0) {
            RoundReport r;
            r.rounds = int(last_round);
            r.total_rounds = int(last_round);
            for (const auto& [key, bits] : load) {
                r.per_edge_bits[key.first] += bits;
            }
            for (const auto& [e, b] : r.per_edge_bits)
                r.max_edge_load = std::max(r.max_edge_load, b);
            return r;
        }
    }
    throw scheduling_failure("random-delay scheduling failed after " +
                             std::to_string(max_attempts) + " attempts");
}

} // namespace

RoundReport schedule_multicasts(const Graph& g, const std::vector<MulticastJob>& jobs, int beta,
                                Strategy strategy, uint64_t seed, int max_attempts) {
    for (const auto& j : jobs) {
        for (auto [a, b] : j.tree.tree_edges())
            if (!g.has_edge(a, b))
                throw invalid_input("multicast tree uses non-edge (" + std::to_string(a) + "," +
                                    std::to_string(b) + ")");
        for (NodeId r : j.recipients)
            if (!j.tree.contains(r)) throw invalid_input("recipient outside multicast tree");
    }
    if (strategy == Strategy::FifoPipeline) return fifo_multicasts(g, jobs, beta);
    return random_delay_multicasts(g, jobs, beta, seed, max_attempts);
}

} // namespace congsec
