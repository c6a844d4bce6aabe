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
 * Clifford/T pipelines. A circuit is split into maximal Clifford blocks
 * separated by layers of T gates. Every Clifford gate is teleported through a
 * stored-gate transistor; its Bell byproducts are pushed through the rest of
 * the block symbolically and corrected once, before the next T layer.
 */
#pragma once

#include <string>
#include <vector>

#include "qsc/transistor/transistor.hpp"

namespace qsc {

struct GateOp {
    std::string name;
    std::vector<std::size_t> targets;
    friend bool operator==(const GateOp &, const GateOp &) = default;
};

struct PipelineBlock {
    bool t_layer = false;
    std::vector<GateOp> gates;
};

struct PipelinePlan {
    std::size_t qubits = 0;
    std::vector<PipelineBlock> blocks;

    /// Gate sequence obtained by concatenating the blocks.
    [[nodiscard]] std::vector<GateOp> flatten() const {
        std::vector<GateOp> g;
        for (const auto &b : blocks) g.insert(g.end(), b.gates.begin(), b.gates.end());
        return g;
    }
};

namespace detail {

inline bool is_t_gate(const std::string &n) { return n == "T" || n == "TDG"; }

inline bool is_clifford_gate(const std::string &n) {
    return n == "I" || n == "X" || n == "Y" || n == "Z" || n == "H" || n == "S" || n == "SDG" || n == "CZ" ||
           n == "CNOT";
}

inline void check_op(const GateOp &g, std::size_t n) {
    require(is_t_gate(g.name) || is_clifford_gate(g.name), Errc::invalid_argument,
            "unsupported pipeline gate '" + g.name + "'");
    const std::size_t arity = (g.name == "CZ" || g.name == "CNOT") ? 2 : 1;
    require(g.targets.size() == arity, Errc::dimension_mismatch, "gate " + g.name + " has the wrong arity");
    for (auto t : g.targets) require(t < n, Errc::out_of_range, "pipeline target out of range");
    require(arity == 1 || g.targets[0] != g.targets[1], Errc::invalid_argument, "repeated pipeline target");
}

} // namespace detail

inline PipelinePlan plan_pipeline(const std::vector<GateOp> &circuit, std::size_t qubits) {
    require(qubits >= 1 && qubits <= kMaxQubits, Errc::invalid_argument, "pipeline width out of range");
    PipelinePlan plan{qubits, {}};
    for (const auto &g : circuit) {
        detail::check_op(g, qubits);
        const bool t = detail::is_t_gate(g.name);
        if (plan.blocks.empty() || plan.blocks.back().t_layer != t) {
            plan.blocks.push_back({t, {}});
        }
        plan.blocks.back().gates.push_back(g);
    }
    return plan;
}

/// C p C† for one Clifford gate, tracked symbolically (phase in quarter turns).
inline PauliOperator conjugate_pauli(const GateOp &g, PauliOperator p) {
    const std::size_t a = g.targets.at(0);
    const int xa = p.x(a), za = p.z(a);
    if (g.name == "I") {
        return p;
    } else if (g.name == "H") {
        p.set(a, za, xa);
        p.add_phase(2 * (xa & za));
    } else if (g.name == "S") {
        p.add_phase(xa);
        p.set(a, xa, za ^ xa);
    } else if (g.name == "SDG") {
        p.add_phase(3 * xa);
        p.set(a, xa, za ^ xa);
    } else if (g.name == "X") {
        p.add_phase(2 * za);
    } else if (g.name == "Z") {
        p.add_phase(2 * xa);
    } else if (g.name == "Y") {
        p.add_phase(2 * (xa ^ za));
    } else if (g.name == "CNOT") {
        const std::size_t b = g.targets.at(1);
        const int xb = p.x(b), zb = p.z(b);
        p.set(b, xb ^ xa, zb);
        p.set(a, xa, za ^ zb);
    } else if (g.name == "CZ") {
        const std::size_t b = g.targets.at(1);
        const int xb = p.x(b), zb = p.z(b);
        p.set(a, xa, za ^ xb);
        p.set(b, xb, zb ^ xa);
        p.add_phase(2 * (xa & xb));
    } else {
        fail(Errc::invalid_argument, "cannot propagate a Pauli through '" + g.name + "'");
    }
    return p;
}

inline PauliOperator propagate_pauli(const std::vector<GateOp> &block, PauliOperator p) {
    for (const auto &g : block) {
        p = conjugate_pauli(g, std::move(p));
    }
    return p;
}

inline PauliOperator propagate_pauli(const PipelineBlock &block, const PauliOperator &p) {
    require(!block.t_layer, Errc::invalid_argument, "T layers do not map Paulis to Paulis");
    return propagate_pauli(block.gates, p);
}

enum class ByproductMode { eager, deferred };

struct PipelineRun {
    StateVector output;
    std::vector<PauliOperator> net_byproducts; ///< One per Clifford block.
    std::size_t teleports = 0;
    std::size_t corrections = 0; ///< Physical Pauli corrections applied.
};

namespace detail {

inline UnitarySpec pipeline_unitary(const std::string &name) { return *gates::by_name(name); }

/// Applies frame† qubit by qubit; returns the number of non-trivial factors.
inline std::size_t correct_frame(Register &reg, const std::vector<QubitId> &data, PauliOperator &frame) {
    std::size_t n = 0;
    for (std::size_t q = 0; q < data.size(); ++q) {
        if (frame.x(q) || frame.z(q)) {
            const auto leg = PauliOperator::single(1, 0, frame.x(q), frame.z(q));
            reg.apply(UnitarySpec(leg.matrix().adjoint()), {data[q]});
            ++n;
        }
    }
    frame = PauliOperator::identity(data.size());
    return n;
}

} // namespace detail

/// Runs the plan on `input`. Eager mode corrects after every teleported gate;
/// deferred mode accumulates the net byproduct of a block and corrects it once
/// before the next T layer (and at the end).
inline PipelineRun execute_pipeline(const PipelinePlan &plan, const StateVector &input, ByproductMode mode,
                                    RngPolicy &rng) {
    require(input.qubit_count() == plan.qubits, Errc::dimension_mismatch, "input width does not match the plan");
    Register reg;
    std::vector<QubitId> data = reg.allocate(input);
    PauliOperator frame = PauliOperator::identity(plan.qubits);
    PipelineRun run;
    for (const auto &block : plan.blocks) {
        if (block.t_layer) {
            for (const auto &g : block.gates) {
                (void)inject_magic_T(reg, data[g.targets[0]], rng, g.name == "TDG");
            }
            continue;
        }
        for (const auto &g : block.gates) {
            Transistor t = build_choi_transistor(detail::pipeline_unitary(g.name), reg);
            std::vector<QubitId> in;
            for (auto q : g.targets) in.push_back(data[q]);
            (void)inject_input_by_teleport(t, reg, in, rng);
            (void)activate(t, reg, rng);
            ++run.teleports;
            const auto local = t.frame.pauli();
            require(local.has_value(), Errc::invalid_argument, "Clifford teleport left a non-Pauli byproduct");
            PauliOperator b = PauliOperator::identity(plan.qubits);
            for (std::size_t j = 0; j < g.targets.size(); ++j) {
                b.set(g.targets[j], local->x(j), local->z(j));
                data[g.targets[j]] = t.right[j];
            }
            b.add_phase(local->phase());
            frame = b * conjugate_pauli(g, frame);
            if (mode == ByproductMode::eager) {
                run.corrections += detail::correct_frame(reg, data, frame);
            }
        }
        run.net_byproducts.push_back(frame);
        run.corrections += detail::correct_frame(reg, data, frame);
    }
    run.output = reg.state_in_order(data);
    return run;
}

/// Dense reference: the circuit applied gate by gate.
inline StateVector simulate_circuit(const std::vector<GateOp> &circuit, StateVector s) {
    for (const auto &g : circuit) {
        s.apply(*gates::by_name(g.name), g.targets);
    }
    return s;
}

} // namespace qsc
