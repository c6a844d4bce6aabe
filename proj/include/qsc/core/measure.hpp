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
 * Destructive projective measurements, Bell measurements, and resource-state
 * preparation (ebits, graph/cluster states).
 *
 * Every measurement removes the measured qubits; qubits above them shift down.
 */
#pragma once

#include <array>
#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "qsc/core/pauli.hpp"
#include "qsc/core/rng.hpp"
#include "qsc/core/state_vector.hpp"

namespace qsc {

/// Single-qubit measurement basis. `rotated(θ)` projects on
/// (|0> ± e^{iθ}|1>)/√2, outcome 0 ↔ '+'. X is rotated(0).
struct Basis {
    enum class Kind { Z, X, Rotated };
    Kind kind = Kind::Z;
    double theta = 0.0;

    static Basis z() { return {Kind::Z, 0.0}; }
    static Basis x() { return {Kind::X, 0.0}; }
    static Basis rotated(double theta) { return {Kind::Rotated, theta}; }

    /// Basis vector for `outcome`.
    [[nodiscard]] std::vector<cplx> vector(int outcome) const {
        if (kind == Kind::Z) {
            return outcome == 0 ? std::vector<cplx>{1.0, 0.0} : std::vector<cplx>{0.0, 1.0};
        }
        const double r = 1.0 / std::sqrt(2.0);
        const double th = kind == Kind::X ? 0.0 : theta;
        const cplx ph = std::polar(1.0, th);
        return outcome == 0 ? std::vector<cplx>{r, r * ph} : std::vector<cplx>{r, -r * ph};
    }

    [[nodiscard]] std::string label() const {
        switch (kind) {
            case Kind::Z: return "Z";
            case Kind::X: return "X";
            case Kind::Rotated: return "rotated(" + std::to_string(theta) + ")";
        }
        return "?";
    }
};

struct MeasurementRecord {
    std::vector<std::size_t> qubits;
    std::string basis;
    std::vector<int> outcome;
    double probability = 0.0;
    std::string label;
};

namespace detail {

inline std::pair<std::size_t, StateVector> collapse(const StateVector &state, std::span<const std::size_t> positions,
                                                    const std::vector<std::vector<cplx>> &basis_vectors,
                                                    std::size_t bits, RngPolicy &rng, std::string_view label,
                                                    std::vector<double> &probs_out) {
    std::vector<std::vector<cplx>> branches;
    std::vector<double> probs;
    for (const auto &v : basis_vectors) {
        auto b = state.project_out(positions, v);
        double p = 0.0;
        for (const auto &a : b) {
            p += std::norm(a);
        }
        branches.push_back(std::move(b));
        probs.push_back(p);
    }
    const std::size_t idx = rng.choose(probs, bits, label);
    probs_out = probs;
    return {idx, StateVector::from_amplitudes(std::move(branches[idx]))};
}

inline const std::array<std::vector<cplx>, 4> &bell_vectors() {
    static const double r = 1.0 / std::sqrt(2.0);
    // (X^a Z^b ⊗ I)|ω>, index a + 2b, first qubit is bit 0.
    static const std::array<std::vector<cplx>, 4> v = {
        std::vector<cplx>{r, 0, 0, r},
        std::vector<cplx>{0, r, r, 0},
        std::vector<cplx>{r, 0, 0, -r},
        std::vector<cplx>{0, r, -r, 0},
    };
    return v;
}

} // namespace detail

/// Destructive single-qubit measurement. The record carries the Born
/// probability of the observed outcome.
inline std::pair<MeasurementRecord, StateVector> measure(const StateVector &state, std::size_t qubit,
                                                         const Basis &basis, RngPolicy &rng,
                                                         std::string_view label = "measure") {
    require(qubit < state.qubit_count(), Errc::out_of_range, "measured qubit out of range");
    const std::size_t pos[1] = {qubit};
    std::vector<double> probs;
    auto [idx, post] = detail::collapse(state, pos, {basis.vector(0), basis.vector(1)}, 1, rng, label, probs);
    MeasurementRecord rec{{qubit}, basis.label(), {static_cast<int>(idx)}, probs[idx], std::string(label)};
    return {std::move(rec), std::move(post)};
}

/// Outcome probabilities of measuring `qubit` in `basis`, without collapsing.
inline std::array<double, 2> outcome_probabilities(const StateVector &state, std::size_t qubit, const Basis &basis) {
    const std::size_t pos[1] = {qubit};
    std::array<double, 2> p{};
    for (int o = 0; o < 2; ++o) {
        for (const auto &a : state.project_out(pos, basis.vector(o))) {
            p[o] += std::norm(a);
        }
    }
    return p;
}

struct BellRecord {
    int a = 0; ///< X exponent of the identified Bell Pauli.
    int b = 0; ///< Z exponent.
    double probability = 0.0;
};

/// Projects (q1, q2) onto the Bell basis {(X^a Z^b ⊗ I)|ω>} with the Pauli on
/// q1. Both qubits are removed. The teleportation receiver is corrected by
/// applying X^a Z^b.
inline std::pair<BellRecord, StateVector> bell_measure(const StateVector &state, std::size_t q1, std::size_t q2,
                                                       RngPolicy &rng, std::string_view label = "bell") {
    require(q1 != q2, Errc::invalid_argument, "bell measurement needs two distinct qubits");
    require(q1 < state.qubit_count() && q2 < state.qubit_count(), Errc::out_of_range, "bell qubit out of range");
    const std::size_t pos[2] = {q1, q2};
    const auto &bv = detail::bell_vectors();
    std::vector<double> probs;
    auto [idx, post] =
        detail::collapse(state, pos, std::vector<std::vector<cplx>>(bv.begin(), bv.end()), 2, rng, label, probs);
    BellRecord rec{static_cast<int>(idx & 1U), static_cast<int>((idx >> 1U) & 1U), probs[idx]};
    return {rec, std::move(post)};
}

/// |ω> = (|00> + |11>)/√2.
inline StateVector ebit() {
    const double r = 1.0 / std::sqrt(2.0);
    return StateVector::from_amplitudes({r, 0, 0, r});
}

/// Appends an ebit on two new qubits (the highest two indices).
inline StateVector make_ebit(const StateVector &state) { return state.tensor(ebit()); }

/// Appends graph-state qubits: each new vertex in |+>, CZ per edge. Edge
/// endpoints index the new vertices 0..vertices-1.
inline StateVector make_cluster(const StateVector &state, std::size_t vertices,
                                const std::vector<std::pair<std::size_t, std::size_t>> &edges) {
    StateVector s = state.tensor(StateVector::plus(vertices));
    const std::size_t base = state.qubit_count();
    const UnitarySpec cz = gates::CZ();
    for (const auto &[u, v] : edges) {
        require(u != v, Errc::invalid_argument, "cluster graph has a self-loop");
        require(u < vertices && v < vertices, Errc::out_of_range, "cluster edge endpoint out of range");
        s.apply(cz, {base + u, base + v});
    }
    return s;
}

/// Path graph 0-1-...-(n-1).
inline std::vector<std::pair<std::size_t, std::size_t>> path_edges(std::size_t n) {
    std::vector<std::pair<std::size_t, std::size_t>> e;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        e.emplace_back(i, i + 1);
    }
    return e;
}

/// <ψ|P|ψ> for a Pauli string (character j on qubit j).
inline double expectation(const StateVector &state, const PauliOperator &p) {
    const auto v = p.matrix() * state.amplitudes();
    cplx s = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        s += std::conj(state[i]) * v[i];
    }
    return std::real(s);
}

} // namespace qsc
