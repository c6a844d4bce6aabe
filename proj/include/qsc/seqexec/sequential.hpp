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
 * Reusable gates, quantum shift registers and quantum finite state machines.
 */
#pragma once

#include <vector>

#include "qsc/seqexec/executor.hpp"

namespace qsc {

/// Applies a stored gate k times with one physical transistor slot:
///
///  1. teleport the input into the left mode;
///  2. measure the bulk, moving the data to the right mode;
///  3. refresh the left mode and bulk (and a new right mode);
///  4-5. join the old right mode to the new left mode by an ebit and
///       Bell-measure, teleporting the data (with its frame) back to the input;
///  6. the old right mode is consumed by that measurement;
///  7. repeat from 2.
///
/// Returns U^k |input> with the frame removed.
inline StateVector iterate_gate(const GateKind &kind, const StateVector &input, std::size_t k, RngPolicy &rng,
                                std::size_t capacity = kMaxQubits) {
    require(input.qubit_count() == kind.arity(), Errc::dimension_mismatch, "input width does not match the gate");
    if (k == 0) {
        return input;
    }
    Register reg(capacity);
    const auto data = reg.allocate(input);
    Transistor t = build_transistor(kind, reg);
    (void)inject_input_by_teleport(t, reg, data, rng);
    for (std::size_t round = 1;; ++round) {
        (void)activate(t, reg, rng);
        if (round == k) {
            break;
        }
        Transistor next = refresh(t, reg);
        (void)inject_input_by_teleport(next, reg, t.right, rng, t.frame);
        t = std::move(next);
    }
    resolve_frame(t, reg);
    return reg.reduced_pure_state(t.right);
}

// ---------------------------------------------------------------------------

enum class StageKind { identity, h, s };

struct ShiftRegisterSpec {
    std::size_t m = 1;
    std::vector<StageKind> stages; ///< Empty means every stage is an identity.

    [[nodiscard]] GateKind kind_of(std::size_t stage) const {
        const StageKind k = stages.empty() ? StageKind::identity : stages.at(stage);
        switch (k) {
            case StageKind::h: return GateKind::wire(1);
            case StageKind::s: return GateKind::schain();
            case StageKind::identity: break;
        }
        return GateKind::choi(gates::I());
    }
};

/// A chain of one-qubit stages living in a shared Register. Data moves between
/// stages by teleportation through a stage transistor; each stage's frame is
/// resolved at every shift, so stages always hold their data exactly.
class ShiftRegister {
  public:
    ShiftRegister(ShiftRegisterSpec spec, Register &reg, std::vector<QubitId> contents)
        : spec_(std::move(spec)), reg_(reg), stages_(std::move(contents)) {
        require(spec_.m >= 1, Errc::invalid_argument, "shift register needs at least one stage");
        require(spec_.stages.empty() || spec_.stages.size() == spec_.m, Errc::dimension_mismatch,
                "stage kinds must match the stage count");
        require(stages_.size() == spec_.m, Errc::dimension_mismatch, "initial contents must fill every stage");
    }

    /// Builds a register whose stages start in the given one-qubit states.
    static ShiftRegister with_states(ShiftRegisterSpec spec, Register &reg, const std::vector<StateVector> &init) {
        std::vector<QubitId> q;
        for (const auto &s : init) {
            require(s.qubit_count() == 1, Errc::dimension_mismatch, "stages hold one qubit");
            q.push_back(reg.allocate(s).front());
        }
        return ShiftRegister(std::move(spec), reg, std::move(q));
    }

    /// Moves every stage one step right and loads `incoming` into stage 1.
    /// Returns the qubit evicted from the last stage (still live).
    QubitId shift(QubitId incoming, RngPolicy &rng) {
        const QubitId evicted = stages_.back();
        for (std::size_t j = spec_.m - 1; j >= 1; --j) {
            stages_[j] = pass(stages_[j - 1], j, rng);
        }
        stages_[0] = pass(incoming, 0, rng);
        return evicted;
    }

    /// Convenience wrapper: allocates `data`, shifts it in, and returns the
    /// evicted state (which must not be entangled with anything else).
    StateVector shift_state(const StateVector &data, RngPolicy &rng) {
        const QubitId evicted = shift(reg_.allocate(data).front(), rng);
        const QubitId keep[] = {evicted};
        auto s = reg_.reduced_pure_state(keep);
        (void)reg_.measure(evicted, Basis::z(), rng, "discard");
        return s;
    }

    [[nodiscard]] const std::vector<QubitId> &stages() const noexcept { return stages_; }
    [[nodiscard]] const ShiftRegisterSpec &spec() const noexcept { return spec_; }

  private:
    QubitId pass(QubitId q, std::size_t stage, RngPolicy &rng) {
        Transistor t = build_transistor(spec_.kind_of(stage), reg_);
        const QubitId d[] = {q};
        (void)inject_input_by_teleport(t, reg_, d, rng);
        (void)activate(t, reg_, rng);
        resolve_frame(t, reg_);
        return t.right.front();
    }

    ShiftRegisterSpec spec_;
    Register &reg_;
    std::vector<QubitId> stages_;
};

// ---------------------------------------------------------------------------

enum class MachineStyle { moore, mealy };

/// Quantum finite state machine. Qubit order for the maps:
///   transition: [register (k), input (M)]
///   output_map: [register (k), output (N)]            (Moore)
///               [register (k), input (M), output (N)] (Mealy)
/// Output qubits start in |0> every cycle and are read out in Z.
struct QFSMSpec {
    std::size_t k = 1;
    std::size_t M = 1;
    std::size_t N = 1;
    UnitarySpec transition = gates::CNOT();
    UnitarySpec output_map = gates::CNOT();
    MachineStyle style = MachineStyle::moore;
    StateVector initial = StateVector::zeros(1);
};

struct QFSMOptions {
    bool measure = true;            ///< Otherwise inputs and outputs stay live.
    bool teleport_register = false; ///< Move the register through identity transistors each cycle.
};

struct QFSMCycle {
    std::vector<int> outputs;       ///< Empty when not measuring.
    double probability = 1.0;
    std::vector<double> distribution;
    Matrix register_density;        ///< Reduced register state after the cycle.
};

inline std::vector<QFSMCycle> run_qfsm(const QFSMSpec &spec, const std::vector<StateVector> &inputs, RngPolicy &rng,
                                       QFSMOptions opt = {}) {
    require(!inputs.empty(), Errc::invalid_argument, "qfsm needs at least one input");
    require(spec.transition.arity() == spec.k + spec.M, Errc::dimension_mismatch, "transition must act on k+M qubits");
    const std::size_t out_arity = spec.k + (spec.style == MachineStyle::mealy ? spec.M : 0) + spec.N;
    require(spec.output_map.arity() == out_arity, Errc::dimension_mismatch, "output map has the wrong arity");
    require(spec.initial.qubit_count() == spec.k, Errc::dimension_mismatch, "initial register has the wrong width");

    Register reg;
    std::vector<QubitId> regq = reg.allocate(spec.initial);
    std::vector<QFSMCycle> out;
    for (const auto &in : inputs) {
        require(in.qubit_count() == spec.M, Errc::dimension_mismatch, "input has the wrong width");
        const auto inq = reg.allocate(in);
        auto cat = [](std::vector<QubitId> a, const std::vector<QubitId> &b) {
            a.insert(a.end(), b.begin(), b.end());
            return a;
        };
        std::vector<QubitId> outq;
        auto emit = [&] {
            outq = reg.allocate(StateVector::zeros(spec.N));
            const auto on = spec.style == MachineStyle::mealy ? cat(cat(regq, inq), outq) : cat(regq, outq);
            reg.apply(spec.output_map, on);
        };
        if (spec.style == MachineStyle::mealy) {
            emit();
            reg.apply(spec.transition, cat(regq, inq));
        } else {
            reg.apply(spec.transition, cat(regq, inq));
            emit();
        }
        QFSMCycle c;
        c.distribution = readout_distribution(reg.reduced_density(outq), Basis::Kind::Z);
        if (opt.measure) {
            for (auto q : outq) {
                const auto rec = reg.measure(q, Basis::z(), rng, "qfsm output");
                c.outputs.push_back(rec.outcome[0]);
                c.probability *= rec.probability;
            }
            for (auto q : inq) {
                (void)reg.measure(q, Basis::z(), rng, "qfsm input discard");
            }
        }
        if (opt.teleport_register) {
            for (auto &q : regq) {
                Transistor t = build_choi_transistor(gates::I(), reg);
                const QubitId d[] = {q};
                (void)inject_input_by_teleport(t, reg, d, rng);
                (void)activate(t, reg, rng);
                resolve_frame(t, reg);
                q = t.right.front();
            }
        }
        c.register_density = reg.reduced_density(regq);
        out.push_back(std::move(c));
    }
    return out;
}

} // namespace qsc
