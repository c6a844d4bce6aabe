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
 * Streaming (n, k, m) quantum convolutional encoder.
 *
 * Cycle-local qubit layout seen by the cycle circuit:
 *   [0, k)                 the k inputs of this cycle
 *   [k + (s-1)k, k + sk)   memory stage s = 1..m
 *   [k + mk, n + mk)       n - k fresh |0> ancillas
 * After the circuit, the inputs become stage 1, stage s becomes stage s+1,
 * and stage m together with the ancillas is emitted (n qubits). For m = 0 the
 * inputs are emitted directly.
 *
 * Result states list every emitted qubit in cycle order followed by the final
 * memory, stage 1 first.
 */
#pragma once

#include <vector>

#include "qsc/algos/fourier.hpp"
#include "qsc/seqexec/sequential.hpp"

namespace qsc {

struct ConvCodeSpec {
    std::size_t n = 1;
    std::size_t k = 1;
    std::size_t m = 0;
    std::vector<CircuitStep> cycle; ///< Gates on the n + mk cycle-local qubits.

    [[nodiscard]] std::size_t memory_qubits() const noexcept { return m * k; }
    [[nodiscard]] std::size_t cycle_width() const noexcept { return n + m * k; }

    void validate() const {
        require(k >= 1 && n >= k, Errc::invalid_argument, "code parameters must satisfy n >= k >= 1");
        require(cycle_width() <= kMaxQubits, Errc::capacity_exceeded, "cycle circuit is too wide");
        for (const auto &g : cycle) {
            require(g.gate.arity() == g.targets.size(), Errc::dimension_mismatch,
                    "cycle gate " + g.label + " has the wrong arity");
            for (auto t : g.targets) {
                require(t < cycle_width(), Errc::dimension_mismatch, "cycle gate " + g.label + " target out of range");
            }
        }
    }

    /// The cycle circuit as one unitary on n + mk qubits.
    [[nodiscard]] UnitarySpec cycle_unitary() const {
        const std::size_t w = cycle_width();
        const std::size_t d = std::size_t{1} << w;
        Matrix u(d, d);
        for (std::size_t col = 0; col < d; ++col) {
            const auto s = run_circuit(cycle, StateVector::basis(w, col));
            for (std::size_t row = 0; row < d; ++row) {
                u(row, col) = s[row];
            }
        }
        return UnitarySpec(u);
    }

    /// Qubits needed to keep every emitted qubit plus the memory (transient
    /// teleportation qubits not included).
    [[nodiscard]] std::size_t footprint(std::size_t cycles) const { return cycles * n + m * k; }
};

struct EncodeTrace {
    std::vector<std::vector<std::size_t>> emitted; ///< Per cycle, positions in the result state.
    std::vector<std::size_t> memory;               ///< Final memory positions, stage 1 first.
    std::size_t cycles = 0;
};

struct EncodeResult {
    StateVector state;
    EncodeTrace trace;
};

namespace detail {

inline EncodeTrace standard_trace(const ConvCodeSpec &spec, std::size_t cycles) {
    EncodeTrace tr;
    tr.cycles = cycles;
    std::size_t pos = 0;
    for (std::size_t c = 0; c < cycles; ++c) {
        std::vector<std::size_t> e;
        for (std::size_t j = 0; j < spec.n; ++j) e.push_back(pos++);
        tr.emitted.push_back(std::move(e));
    }
    for (std::size_t j = 0; j < spec.memory_qubits(); ++j) tr.memory.push_back(pos++);
    return tr;
}

inline void check_stream(const ConvCodeSpec &spec, const StateVector &inputs, std::size_t cycles) {
    spec.validate();
    require(cycles >= 1, Errc::invalid_argument, "at least one cycle is required");
    require(inputs.qubit_count() == cycles * spec.k, Errc::dimension_mismatch,
            "input stream must hold k qubits per cycle");
    require(spec.footprint(cycles) + (spec.m > 0 ? 2 : 0) <= kMaxQubits, Errc::capacity_exceeded,
            "encoding exceeds the qubit budget");
}

/// Runs the cycle circuit gate by gate on `local` (cycle-local layout).
inline void apply_cycle(Register &reg, const ConvCodeSpec &spec, const std::vector<QubitId> &local) {
    for (const auto &g : spec.cycle) {
        std::vector<QubitId> t;
        for (auto q : g.targets) t.push_back(local[q]);
        reg.apply(g.gate, t);
    }
}

} // namespace detail

/// Product input stream: cycle c's k qubits come from per_cycle[c].
inline StateVector stream_inputs(const std::vector<StateVector> &per_cycle) {
    require(!per_cycle.empty(), Errc::invalid_argument, "empty input stream");
    StateVector s = per_cycle.front();
    for (std::size_t c = 1; c < per_cycle.size(); ++c) s = s.tensor(per_cycle[c]);
    return s;
}

/// Streaming encoder. Memory lives in k parallel identity shift registers of
/// m stages; `inputs` holds cycle c on qubits [ck, ck + k) and may be
/// entangled across cycles.
inline EncodeResult encode_stream(const ConvCodeSpec &spec, const StateVector &inputs, std::size_t cycles,
                                  RngPolicy &rng) {
    detail::check_stream(spec, inputs, cycles);
    const std::size_t k = spec.k, m = spec.m;
    Register reg;
    const auto in = reg.allocate(inputs);
    std::vector<ShiftRegister> lanes;
    for (std::size_t j = 0; j < k && m > 0; ++j) {
        lanes.push_back(ShiftRegister::with_states({m, {}}, reg, std::vector<StateVector>(m, StateVector::zeros(1))));
    }
    std::vector<QubitId> emitted;
    for (std::size_t c = 0; c < cycles; ++c) {
        // Shift: stage 1 <- inputs, evicted <- old stage m.
        std::vector<QubitId> evicted;
        for (std::size_t j = 0; j < lanes.size(); ++j) {
            evicted.push_back(lanes[j].shift(in[c * k + j], rng));
        }
        const auto anc = reg.allocate(StateVector::zeros(spec.n - k));
        std::vector<QubitId> local;
        if (m == 0) {
            for (std::size_t j = 0; j < k; ++j) local.push_back(in[c * k + j]);
        } else {
            for (std::size_t j = 0; j < k; ++j) local.push_back(lanes[j].stages()[0]);
            for (std::size_t s = 1; s < m; ++s) {
                for (std::size_t j = 0; j < k; ++j) local.push_back(lanes[j].stages()[s]);
            }
            local.insert(local.end(), evicted.begin(), evicted.end());
        }
        local.insert(local.end(), anc.begin(), anc.end());
        detail::apply_cycle(reg, spec, local);
        // Emitted: old stage m (or the inputs when m = 0), then the ancillas.
        for (std::size_t j = 0; j < k; ++j) emitted.push_back(local[m * k + j]);
        emitted.insert(emitted.end(), anc.begin(), anc.end());
    }
    std::vector<QubitId> order = emitted;
    for (std::size_t s = 0; s < m; ++s) {
        for (std::size_t j = 0; j < k; ++j) order.push_back(lanes[j].stages()[s]);
    }
    return {reg.state_in_order(order), detail::standard_trace(spec, cycles)};
}

/// One combinational circuit equivalent to `cycles` encoder cycles.
struct UnrolledCode {
    std::size_t qubits = 0;
    std::vector<CircuitStep> steps;
    std::vector<std::size_t> input_qubits;   ///< Cycle c at [ck, ck + k).
    std::vector<std::size_t> ancilla_qubits; ///< Cycle c at [c(n-k), (c+1)(n-k)).
    std::vector<std::size_t> memory_qubits;  ///< Initial memory, stage 1 first.
    std::vector<std::size_t> output_order;   ///< Emitted qubits then final memory.
};

inline UnrolledCode unroll(const ConvCodeSpec &spec, std::size_t cycles) {
    spec.validate();
    require(cycles >= 1, Errc::invalid_argument, "at least one cycle is required");
    require(spec.footprint(cycles) <= kMaxQubits, Errc::capacity_exceeded, "unrolled code exceeds the qubit budget");
    const std::size_t n = spec.n, k = spec.k, m = spec.m;
    UnrolledCode u;
    std::size_t next = 0;
    for (std::size_t i = 0; i < cycles * k; ++i) u.input_qubits.push_back(next++);
    for (std::size_t i = 0; i < cycles * (n - k); ++i) u.ancilla_qubits.push_back(next++);
    for (std::size_t i = 0; i < m * k; ++i) u.memory_qubits.push_back(next++);
    u.qubits = next;
    std::vector<std::size_t> memory = u.memory_qubits; // current holders, stage 1 first
    for (std::size_t c = 0; c < cycles; ++c) {
        std::vector<std::size_t> local;
        for (std::size_t j = 0; j < k; ++j) local.push_back(u.input_qubits[c * k + j]);
        local.insert(local.end(), memory.begin(), memory.end());
        for (std::size_t j = 0; j < n - k; ++j) local.push_back(u.ancilla_qubits[c * (n - k) + j]);
        for (const auto &g : spec.cycle) {
            std::vector<std::size_t> t;
            for (auto q : g.targets) t.push_back(local[q]);
            u.steps.push_back({g.label, g.gate, std::move(t)});
        }
        for (std::size_t j = 0; j < k; ++j) u.output_order.push_back(local[m * k + j]);
        for (std::size_t j = 0; j < n - k; ++j) u.output_order.push_back(local[k + m * k + j]);
        std::vector<std::size_t> next_memory(local.begin(), local.begin() + static_cast<std::ptrdiff_t>(m * k));
        memory = std::move(next_memory);
    }
    u.output_order.insert(u.output_order.end(), memory.begin(), memory.end());
    return u;
}

/// Dense evaluation of the unrolled circuit, reordered like encode_stream.
inline StateVector run_unrolled(const UnrolledCode &u, const StateVector &inputs) {
    StateVector s = inputs.tensor(StateVector::zeros(u.qubits - inputs.qubit_count()));
    s = run_circuit(u.steps, std::move(s));
    return s.permuted(u.output_order);
}

/// Encoder with the memory carried between cycles by ebit loops: after each
/// cycle every memory qubit is Bell-measured against one half of a fresh ebit,
/// and the Pauli byproduct is corrected just before the next cycle circuit.
inline EncodeResult memory_loop_variant(const ConvCodeSpec &spec, const StateVector &inputs, std::size_t cycles,
                                        RngPolicy &rng) {
    detail::check_stream(spec, inputs, cycles);
    const std::size_t k = spec.k, m = spec.m, mk = spec.memory_qubits();
    Register reg;
    const auto in = reg.allocate(inputs);
    std::vector<QubitId> memory = reg.allocate(StateVector::zeros(mk));
    std::vector<std::pair<int, int>> byproduct(mk, {0, 0});
    std::vector<QubitId> emitted;
    for (std::size_t c = 0; c < cycles; ++c) {
        for (std::size_t q = 0; q < mk; ++q) {
            const auto [a, b] = byproduct[q];
            if (b) reg.apply(gates::Z(), {memory[q]});
            if (a) reg.apply(gates::X(), {memory[q]});
            byproduct[q] = {0, 0};
        }
        const auto anc = reg.allocate(StateVector::zeros(spec.n - k));
        std::vector<QubitId> local;
        for (std::size_t j = 0; j < k; ++j) local.push_back(in[c * k + j]);
        local.insert(local.end(), memory.begin(), memory.end());
        local.insert(local.end(), anc.begin(), anc.end());
        detail::apply_cycle(reg, spec, local);
        for (std::size_t j = 0; j < k; ++j) emitted.push_back(local[m * k + j]);
        emitted.insert(emitted.end(), anc.begin(), anc.end());
        std::vector<QubitId> carried(local.begin(), local.begin() + static_cast<std::ptrdiff_t>(mk));
        for (std::size_t q = 0; q < mk; ++q) {
            const auto pair = reg.allocate(ebit());
            const auto rec = reg.bell_measure(carried[q], pair[0], rng, "memory loop");
            byproduct[q] = {rec.a, rec.b};
            carried[q] = pair[1];
        }
        memory = std::move(carried);
    }
    for (std::size_t q = 0; q < mk; ++q) {
        const auto [a, b] = byproduct[q];
        if (b) reg.apply(gates::Z(), {memory[q]});
        if (a) reg.apply(gates::X(), {memory[q]});
    }
    std::vector<QubitId> order = emitted;
    order.insert(order.end(), memory.begin(), memory.end());
    return {reg.state_in_order(order), detail::standard_trace(spec, cycles)};
}

/// The cycle map (inputs + memory) -> (emitted + memory) with the ancillas
/// fixed to |0>, as a 2^{n+mk} x 2^{k+mk} matrix in the cycle-local layout.
inline Matrix cycle_isometry(const ConvCodeSpec &spec) {
    spec.validate();
    const std::size_t w = spec.cycle_width(), win = spec.k + spec.memory_qubits();
    const UnitarySpec u = spec.cycle_unitary();
    Matrix v(std::size_t{1} << w, std::size_t{1} << win);
    for (std::size_t col = 0; col < v.cols(); ++col) {
        for (std::size_t row = 0; row < v.rows(); ++row) {
            v(row, col) = u.matrix()(row, col);
        }
    }
    return v;
}

} // namespace qsc
