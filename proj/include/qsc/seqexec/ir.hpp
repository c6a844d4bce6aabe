// Copyright 2026 The QSC Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/**
 * @file
 * Intermediate representation of a clocked sequential circuit.
 *
 * Declarations (transistors, combinational qubits, ebit links, loops, input
 * preparations) have no time tag. Actions (gates, signals, refreshes,
 * readouts) carry a cycle number >= 1 and run in cycle order; within a cycle
 * they must touch disjoint resources.
 */
#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "qsc/core/measure.hpp"
#include "qsc/transistor/transistor.hpp"

namespace qsc {

/// Reference to a transistor leg (`t.in[j]`, `t.out[j]`, or all legs when no
/// index is given) or to a combinational qubit.
struct ModeRef {
    enum class Kind { in, out, qubit };
    std::string node;
    Kind kind = Kind::qubit;
    std::optional<std::size_t> index;

    friend bool operator==(const ModeRef &, const ModeRef &) = default;

    [[nodiscard]] std::string to_string() const {
        if (kind == Kind::qubit) {
            return node;
        }
        std::string s = node + (kind == Kind::in ? ".in" : ".out");
        if (index) {
            s += "[" + std::to_string(*index) + "]";
        }
        return s;
    }
};

/// A prepared state and the text it came from ("0", "+", "file:PATH").
struct StateSpec {
    std::string text;
    StateVector state;

    friend bool operator==(const StateSpec &a, const StateSpec &b) { return a.text == b.text; }
};

enum class InjectMode { teleport, measure };

struct TransistorDecl {
    std::string id;
    GateKind kind = GateKind::wire(1);
    std::string kind_text; ///< Canonical kind spelling used by the serializer.
    bool backward = false;
    std::size_t line = 0;

    friend bool operator==(const TransistorDecl &a, const TransistorDecl &b) {
        return a.id == b.id && a.kind_text == b.kind_text && a.backward == b.backward;
    }
};

struct QubitDecl {
    std::string id;
    StateSpec state;
    std::size_t line = 0;
    friend bool operator==(const QubitDecl &a, const QubitDecl &b) { return a.id == b.id && a.state == b.state; }
};

/// Ebit between a source (transistor output or combinational qubit) and a
/// transistor input; realized by teleportation when the consumer is signaled.
struct EbitLink {
    std::string id;
    ModeRef a;
    ModeRef b;
    std::size_t line = 0;
    friend bool operator==(const EbitLink &x, const EbitLink &y) { return x.id == y.id && x.a == y.a && x.b == y.b; }
};

/// Ebit from a transistor's output back to its own input.
struct LoopDecl {
    std::string id;
    std::size_t line = 0;
    friend bool operator==(const LoopDecl &a, const LoopDecl &b) { return a.id == b.id; }
};

/// Input for the first signal of a transistor. Labels apply to every leg; a
/// file state must cover all legs.
struct InputPrep {
    std::string id;
    StateSpec state;
    InjectMode mode = InjectMode::teleport;
    std::size_t line = 0;
    friend bool operator==(const InputPrep &a, const InputPrep &b) {
        return a.id == b.id && a.state == b.state && a.mode == b.mode;
    }
};

struct GateAction {
    std::string name;
    std::vector<ModeRef> targets;
    std::optional<std::string> condition; ///< Apply only if this readout gave 1.
    friend bool operator==(const GateAction &, const GateAction &) = default;
};
struct SignalAction {
    std::string id;
    friend bool operator==(const SignalAction &, const SignalAction &) = default;
};
struct RefreshAction {
    std::string id;
    friend bool operator==(const RefreshAction &, const RefreshAction &) = default;
};
struct ReadoutAction {
    ModeRef target;
    Basis::Kind basis = Basis::Kind::Z;
    friend bool operator==(const ReadoutAction &, const ReadoutAction &) = default;
};

struct Action {
    int cycle = 1;
    std::size_t line = 0;
    std::variant<GateAction, SignalAction, RefreshAction, ReadoutAction> op;
    friend bool operator==(const Action &a, const Action &b) { return a.cycle == b.cycle && a.op == b.op; }
};

struct CircuitIR {
    int format = 1;
    std::optional<std::size_t> budget;
    bool no_frame_correction = false; ///< Negative-control switch.
    std::vector<TransistorDecl> transistors;
    std::vector<QubitDecl> qubits;
    std::vector<EbitLink> links;
    std::vector<LoopDecl> loops;
    std::vector<InputPrep> inputs;
    std::vector<Action> actions;

    friend bool operator==(const CircuitIR &, const CircuitIR &) = default;

    [[nodiscard]] int cycle_count() const {
        int c = 0;
        for (const auto &a : actions) {
            c = std::max(c, a.cycle);
        }
        return c;
    }

    [[nodiscard]] const TransistorDecl *find_transistor(const std::string &id) const {
        for (const auto &t : transistors) {
            if (t.id == id) return &t;
        }
        return nullptr;
    }
    [[nodiscard]] const QubitDecl *find_qubit(const std::string &id) const {
        for (const auto &q : qubits) {
            if (q.id == id) return &q;
        }
        return nullptr;
    }
};

/// Links combinational qubits to transistor input legs, one ebit per pair.
inline CircuitIR connect_hybrid(CircuitIR ir, const std::vector<std::string> &qubits,
                                const std::vector<ModeRef> &inputs) {
    require(qubits.size() == inputs.size(), Errc::dimension_mismatch, "connect_hybrid needs one input per qubit");
    for (std::size_t i = 0; i < qubits.size(); ++i) {
        require(ir.find_qubit(qubits[i]) != nullptr, Errc::validation, "unknown qubit " + qubits[i]);
        require(inputs[i].kind == ModeRef::Kind::in && ir.find_transistor(inputs[i].node) != nullptr,
                Errc::validation, "connect_hybrid target must be a transistor input");
        for (const auto &l : ir.links) {
            require(!(l.b == inputs[i]) && !(l.a.kind == ModeRef::Kind::qubit && l.a.node == qubits[i]),
                    Errc::validation, "connect_hybrid endpoints must be unused");
        }
        ir.links.push_back({"h" + std::to_string(ir.links.size()), ModeRef{qubits[i], ModeRef::Kind::qubit, {}},
                            inputs[i], 0});
    }
    return ir;
}

} // namespace qsc
