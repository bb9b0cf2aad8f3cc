#include "congsec/circuit.hpp"

#include <json.hpp>

#include "congsec/errors.hpp"

namespace congsec {

void GateCircuit::validate() const {
    for (size_t k = 0; k < gates.size(); ++k) {
        const Gate& g = gates[k];
        int self = n_inputs + int(k);
        auto check = [&](int w) {
            if (w < 0 || w >= self)
                throw invalid_input("gate " + std::to_string(k) + " reads undefined wire " +
                                    std::to_string(w));
        };
        switch (g.op) {
            case Gate::And:
            case Gate::Xor:
                check(g.a);
                check(g.b);
                break;
            case Gate::Not:
                check(g.a);
                break;
            case Gate::Const0:
            case Gate::Const1:
                break;
        }
    }
    for (int w : outputs)
        if (w < 0 || w >= n_wires())
            throw invalid_input("output references undefined wire " + std::to_string(w));
}

BitString GateCircuit::eval(const BitString& inputs) const {
    if (int(inputs.size()) != n_inputs)
        throw invalid_input("circuit expects " + std::to_string(n_inputs) + " input bits, got " +
                            std::to_string(inputs.size()));
    std::vector<char> w(n_wires(), 0);
    for (int i = 0; i < n_inputs; ++i) w[i] = inputs.get(i);
    for (size_t k = 0; k < gates.size(); ++k) {
        const Gate& g = gates[k];
        char v = 0;
        switch (g.op) {
            case Gate::And: v = w[g.a] & w[g.b]; break;
            case Gate::Xor: v = w[g.a] ^ w[g.b]; break;
            case Gate::Not: v = !w[g.a]; break;
            case Gate::Const0: v = 0; break;
            case Gate::Const1: v = 1; break;
        }
        w[n_inputs + k] = v;
    }
    BitString out(outputs.size());
    for (size_t i = 0; i < outputs.size(); ++i) out.set(i, w[outputs[i]]);
    return out;
}

std::vector<int> CircuitBuilder::xor_vec(const std::vector<int>& a, const std::vector<int>& b) {
    std::vector<int> r;
    for (size_t i = 0; i < a.size(); ++i) r.push_back(bxor(a[i], b[i]));
    return r;
}

int CircuitBuilder::equal_vec(const std::vector<int>& a, const std::vector<int>& b) {
    std::vector<int> eq;
    for (size_t i = 0; i < a.size(); ++i) eq.push_back(bxnor(a[i], b[i]));
    return and_all(eq);
}

int CircuitBuilder::nonequal_vec(const std::vector<int>& a, const std::vector<int>& b) {
    return bnot(equal_vec(a, b));
}

int CircuitBuilder::greater_vec(const std::vector<int>& a, const std::vector<int>& b) {
    // scan from the most significant bit; gt accumulates strictly-greater
    int gt = const0();
    int eq = const1();
    for (size_t i = a.size(); i-- > 0;) {
        int here = band(band(eq, a[i]), bnot(b[i]));
        gt = bxor(gt, here); // disjoint events, xor acts as or
        eq = band(eq, bxnor(a[i], b[i]));
    }
    return gt;
}

std::vector<int> CircuitBuilder::add_vec(const std::vector<int>& a, const std::vector<int>& b) {
    std::vector<int> sum;
    int carry = const0();
    for (size_t i = 0; i < a.size(); ++i) {
        int axb = bxor(a[i], b[i]);
        sum.push_back(bxor(axb, carry));
        carry = bxor(band(a[i], b[i]), band(axb, carry));
    }
    return sum;
}

int CircuitBuilder::and_all(const std::vector<int>& xs) {
    if (xs.empty()) return const1();
    int r = xs[0];
    for (size_t i = 1; i < xs.size(); ++i) r = band(r, xs[i]);
    return r;
}

int CircuitBuilder::or_all(const std::vector<int>& xs) {
    if (xs.empty()) return const0();
    int r = xs[0];
    for (size_t i = 1; i < xs.size(); ++i) r = bor(r, xs[i]);
    return r;
}

namespace {
const char* op_name(Gate::Op op) {
    switch (op) {
        case Gate::And: return "and";
        case Gate::Xor: return "xor";
        case Gate::Not: return "not";
        case Gate::Const0: return "const0";
        case Gate::Const1: return "const1";
    }
    return "?";
}
Gate::Op op_from(const std::string& s) {
    if (s == "and") return Gate::And;
    if (s == "xor") return Gate::Xor;
    if (s == "not") return Gate::Not;
    if (s == "const0") return Gate::Const0;
    if (s == "const1") return Gate::Const1;
    throw invalid_input("unknown gate op: " + s);
}
} // namespace

std::string circuit_to_json(const GateCircuit& c) {
    nlohmann::json j;
    j["inputs"] = c.n_inputs;
    nlohmann::json gs = nlohmann::json::array();
    for (size_t k = 0; k < c.gates.size(); ++k) {
        nlohmann::json g;
        g["op"] = op_name(c.gates[k].op);
        if (c.gates[k].a >= 0) g["in1"] = c.gates[k].a;
        if (c.gates[k].b >= 0) g["in2"] = c.gates[k].b;
        g["out"] = c.n_inputs + int(k);
        gs.push_back(g);
    }
    j["gates"] = gs;
    j["outputs"] = c.outputs;
    return j.dump();
}

GateCircuit circuit_from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    GateCircuit c;
    c.n_inputs = j["inputs"].get<int>();
    for (const auto& g : j["gates"]) {
        Gate gate;
        gate.op = op_from(g["op"].get<std::string>());
        gate.a = g.value("in1", -1);
        gate.b = g.value("in2", -1);
        c.gates.push_back(gate);
    }
    for (const auto& o : j["outputs"]) c.outputs.push_back(o.get<int>());
    c.validate();
    return c;
}

} // namespace congsec
