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
 * Brickwork Trotter layers on reusable transistors.
 *
 * One layer is (⊗_i U_i)(⊗_j V_j): the V gates act first. Every term owns one
 * transistor slot that is refreshed and re-entered each layer, so time is
 * folded into the loop between a slot's output and its next input.
 */
#pragma once

#include <optional>
#include <vector>

#include "qsc/transistor/transistor.hpp"

namespace qsc {

struct LayerTerm {
    UnitarySpec gate;
    std::vector<std::size_t> targets;
};

namespace detail {

inline void check_layer(const std::vector<LayerTerm> &layer, std::size_t n) {
    std::vector<bool> used(n, false);
    for (const auto &t : layer) {
        require(t.gate.arity() == t.targets.size(), Errc::dimension_mismatch, "term arity does not match its targets");
        for (auto q : t.targets) {
            require(q < n, Errc::out_of_range, "term target out of range");
            require(!used[q], Errc::invalid_argument, "overlapping targets within a layer");
            used[q] = true;
        }
    }
}

} // namespace detail

inline StateVector trotter_brickwork(const std::vector<LayerTerm> &even, const std::vector<LayerTerm> &odd,
                                     std::size_t layers, const StateVector &input, RngPolicy &rng) {
    const std::size_t n = input.qubit_count();
    detail::check_layer(even, n);
    detail::check_layer(odd, n);
    Register reg;
    std::vector<QubitId> data = reg.allocate(input);
    struct Slot {
        const LayerTerm *term;
        std::optional<Transistor> t;
    };
    std::vector<Slot> slots;
    for (const auto &v : odd) slots.push_back({&v, std::nullopt});
    for (const auto &u : even) slots.push_back({&u, std::nullopt});
    for (std::size_t l = 0; l < layers; ++l) {
        for (auto &s : slots) {
            Transistor t = s.t ? refresh(*s.t, reg) : build_choi_transistor(s.term->gate, reg);
            std::vector<QubitId> in;
            for (auto q : s.term->targets) in.push_back(data[q]);
            (void)inject_input_by_teleport(t, reg, in, rng);
            (void)activate(t, reg, rng);
            resolve_frame(t, reg);
            for (std::size_t j = 0; j < in.size(); ++j) data[s.term->targets[j]] = t.right[j];
            s.t = std::move(t);
        }
    }
    return reg.state_in_order(data);
}

/// Dense reference: L applications of (⊗U)(⊗V).
inline StateVector trotter_reference(const std::vector<LayerTerm> &even, const std::vector<LayerTerm> &odd,
                                     std::size_t layers, StateVector s) {
    for (std::size_t l = 0; l < layers; ++l) {
        for (const auto &v : odd) s.apply(v.gate, v.targets);
        for (const auto &u : even) s.apply(u.gate, u.targets);
    }
    return s;
}

} // namespace qsc
