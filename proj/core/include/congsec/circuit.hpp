#pragma once

#include <string>
#include <vector>

#include "congsec/bits.hpp"

namespace congsec {

// Boolean circuit over a flat input wire space. Wire ids 0..n_inputs-1 are
// inputs; gate k defines wire n_inputs+k. Outputs may reference input wires
// directly, which makes pass-through free.
struct Gate {
    enum Op { And, Xor, Not, Const0, Const1 };
    Op op = Const0;
    int a = -1;
    int b = -1;
};

struct GateCircuit {
    int n_inputs = 0;
    std::vector<Gate> gates;
    std::vector<int> outputs;

    int n_wires() const { return n_inputs + int(gates.size()); }
    void validate() const; // throws invalid_input on undefined or out-of-order wires
    BitString eval(const BitString& inputs) const;
    size_t size() const { return gates.size(); }
};

// Incremental builder with the usual combinational helpers. All helpers
// return wire ids.
class CircuitBuilder {
public:
    explicit CircuitBuilder(int n_inputs) { c_.n_inputs = n_inputs; }

    int input(int i) const { return i; }
    int const0() { return gate(Gate::Const0, -1, -1); }
    int const1() { return gate(Gate::Const1, -1, -1); }
    int band(int a, int b) { return gate(Gate::And, a, b); }
    int bxor(int a, int b) { return gate(Gate::Xor, a, b); }
    int bnot(int a) { return gate(Gate::Not, a, -1); }
    int bor(int a, int b) { return bnot(band(bnot(a), bnot(b))); }
    int bxnor(int a, int b) { return bnot(bxor(a, b)); }
    int mux(int sel, int when0, int when1) {
        return bxor(band(bnot(sel), when0), band(sel, when1));
    }

    // wide helpers over equal-length wire vectors
    std::vector<int> xor_vec(const std::vector<int>& a, const std::vector<int>& b);
    int equal_vec(const std::vector<int>& a, const std::vector<int>& b);
    int nonequal_vec(const std::vector<int>& a, const std::vector<int>& b);
    // strict unsigned greater-than, most significant bit last
    int greater_vec(const std::vector<int>& a, const std::vector<int>& b);
    // ripple-carry sum, result width = input width (carry dropped)
    std::vector<int> add_vec(const std::vector<int>& a, const std::vector<int>& b);
    int and_all(const std::vector<int>& xs);
    int or_all(const std::vector<int>& xs);

    void output(int wire) { c_.outputs.push_back(wire); }
    void output_vec(const std::vector<int>& ws) {
        for (int w : ws) c_.outputs.push_back(w);
    }

    GateCircuit take() {
        c_.validate();
        return std::move(c_);
    }

private:
    int gate(Gate::Op op, int a, int b) {
        c_.gates.push_back({op, a, b});
        return c_.n_inputs + int(c_.gates.size()) - 1;
    }
    GateCircuit c_;
};

std::string circuit_to_json(const GateCircuit& c);
GateCircuit circuit_from_json(const std::string& text);

} // namespace congsec
