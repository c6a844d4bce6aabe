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

#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "qsc/core/measure.hpp"

namespace qsc {

/// Stable handle to a qubit inside a Register. Positions shift as other
/// qubits are measured away; ids do not.
struct QubitId {
    std::uint32_t value = 0;
    friend auto operator<=>(QubitId, QubitId) = default;
};

/// A StateVector whose qubits are addressed by stable ids. This is the
/// single owner of quantum state during execution; transistors and wires
/// only hold ids.
class Register {
  public:
    explicit Register(std::size_t capacity = kMaxQubits) : capacity_(std::min(capacity, kMaxQubits)) {}

    [[nodiscard]] std::size_t size() const noexcept { return order_.size(); }
    [[nodiscard]] std::size_t capacity() const noexcept { return capacity_; }
    [[nodiscard]] std::size_t peak() const noexcept { return peak_; }
    [[nodiscard]] const StateVector &state() const noexcept { return state_; }
    [[nodiscard]] const std::vector<QubitId> &ids() const noexcept { return order_; }

    [[nodiscard]] bool contains(QubitId q) const { return std::find(order_.begin(), order_.end(), q) != order_.end(); }

    [[nodiscard]] std::size_t position(QubitId q) const {
        const auto it = std::find(order_.begin(), order_.end(), q);
        require(it != order_.end(), Errc::out_of_range, "qubit id " + std::to_string(q.value) + " is not live");
        return static_cast<std::size_t>(it - order_.begin());
    }

    [[nodiscard]] std::vector<std::size_t> positions(std::span<const QubitId> qs) const {
        std::vector<std::size_t> p;
        p.reserve(qs.size());
        for (auto q : qs) {
            p.push_back(position(q));
        }
        return p;
    }

    /// Appends `s`; returned ids[j] is qubit j of `s`.
    std::vector<QubitId> allocate(const StateVector &s) {
        require(size() + s.qubit_count() <= capacity_, Errc::capacity_exceeded,
                "qubit budget of " + std::to_string(capacity_) + " exceeded");
        state_ = state_.tensor(s);
        std::vector<QubitId> ids;
        for (std::size_t j = 0; j < s.qubit_count(); ++j) {
            ids.push_back(QubitId{next_++});
            order_.push_back(ids.back());
        }
        peak_ = std::max(peak_, order_.size());
        return ids;
    }

    QubitId allocate_label(char label) { return allocate(StateVector::from_label(label)).front(); }

    void apply(const UnitarySpec &u, std::span<const QubitId> targets) {
        const auto p = positions(targets);
        state_.apply(u, p);
    }
    void apply(const UnitarySpec &u, std::initializer_list<QubitId> targets) {
        apply(u, std::span<const QubitId>(targets.begin(), targets.size()));
    }

    MeasurementRecord measure(QubitId q, const Basis &basis, RngPolicy &rng, std::string_view label = "measure") {
        const std::size_t p = position(q);
        auto [rec, post] = qsc::measure(state_, p, basis, rng, label);
        state_ = std::move(post);
        order_.erase(order_.begin() + static_cast<std::ptrdiff_t>(p));
        rec.qubits = {q.value};
        return rec;
    }

    BellRecord bell_measure(QubitId q1, QubitId q2, RngPolicy &rng, std::string_view label = "bell") {
        const std::size_t p1 = position(q1), p2 = position(q2);
        auto [rec, post] = qsc::bell_measure(state_, p1, p2, rng, label);
        state_ = std::move(post);
        std::erase(order_, q1);
        std::erase(order_, q2);
        return rec;
    }

    /// Drops qubits that are in a pure product state with the rest of the
    /// register; no measurement record or randomness is involved.
    void release(std::span<const QubitId> qs) { release(qs, reduced_pure_state(qs)); }

    /// As above, with the factor state given; the remaining state keeps its
    /// phase relative to `factor`.
    void release(std::span<const QubitId> qs, const StateVector &factor) {
        require(factor.qubit_count() == qs.size(), Errc::dimension_mismatch, "factor width does not match");
        const auto rest = state_.project_out(positions(qs), factor.amplitudes());
        double nrm = 0.0;
        for (const auto &a : rest) {
            nrm += std::norm(a);
        }
        require(std::abs(nrm - 1.0) <= 1e-9, Errc::invalid_argument, "released qubits are entangled");
        state_ = StateVector::from_amplitudes(rest);
        for (auto q : qs) {
            std::erase(order_, q);
        }
    }

    /// Full state with qubits reordered so that `order` (covering every live
    /// qubit) becomes qubits 0..n-1.
    [[nodiscard]] StateVector state_in_order(std::span<const QubitId> order) const {
        require(order.size() == size(), Errc::dimension_mismatch, "ordering must cover every live qubit");
        return state_.permuted(positions(order));
    }

    [[nodiscard]] Matrix reduced_density(std::span<const QubitId> keep) const {
        return state_.reduced_density(positions(keep));
    }

    /// Pure reduced state of `keep`; fails if the subsystem is entangled with
    /// the rest (purity below 1 - 1e-9).
    [[nodiscard]] StateVector reduced_pure_state(std::span<const QubitId> keep) const {
        const Matrix rho = reduced_density(keep);
        double purity = 0.0;
        for (std::size_t i = 0; i < rho.rows(); ++i) {
            for (std::size_t j = 0; j < rho.cols(); ++j) {
                purity += std::norm(rho(i, j));
            }
        }
        require(purity > 1.0 - 1e-9, Errc::invalid_argument, "subsystem is not in a pure state");
        std::size_t k = 0;
        for (std::size_t i = 1; i < rho.rows(); ++i) {
            if (std::real(rho(i, i)) > std::real(rho(k, k))) {
                k = i;
            }
        }
        std::vector<cplx> amps(rho.rows());
        for (std::size_t i = 0; i < rho.rows(); ++i) {
            amps[i] = rho(i, k);
        }
        return StateVector::from_amplitudes(std::move(amps));
    }

  private:
    std::size_t capacity_;
    StateVector state_;
    std::vector<QubitId> order_;
    std::uint32_t next_ = 0;
    std::size_t peak_ = 0;
};

} // namespace qsc
