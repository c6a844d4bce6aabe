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
 * History states with a domain-wall clock.
 *
 * The clock has T qubits (0..T-1, low qubits of the result) and encodes time
 * t as |0>^t |1>^{T-t}: qubits below t read 0, the rest read 1. The data
 * register sits above the clock.
 */
#pragma once

#include <cmath>
#include <vector>

#include "qsc/core/gates.hpp"
#include "qsc/core/state_vector.hpp"

namespace qsc {

inline constexpr std::size_t kMaxClockSteps = 5;

struct HistorySpec {
    std::vector<UnitarySpec> gates; ///< U_1 … U_T.
    StateVector initial = StateVector::zeros(1);

    [[nodiscard]] std::size_t depth() const noexcept { return gates.size(); }
};

/// Basis index of clock value t.
inline std::size_t domain_wall_index(std::size_t t, std::size_t T) {
    require(t <= T, Errc::out_of_range, "clock value exceeds the depth");
    return ((std::size_t{1} << T) - 1) ^ ((std::size_t{1} << t) - 1);
}

/// Angles θ_ℓ = 2 arccos(1/√(T-ℓ+2)), ℓ = 0..T-1, as published for the
/// controlled-rotation clock cascade.
inline std::vector<double> clock_angles(std::size_t T) {
    require(T <= kMaxClockSteps, Errc::out_of_range, "clock depth must be at most 5");
    std::vector<double> a;
    for (std::size_t l = 0; l < T; ++l) {
        a.push_back(2 * std::acos(1.0 / std::sqrt(static_cast<double>(T - l + 2))));
    }
    return a;
}

/// Angles θ_ℓ = 2 arccos(√((T-ℓ)/(T-ℓ+1))): the wall moves past qubit ℓ with
/// probability (T-ℓ)/(T-ℓ+1), which makes every clock value equally likely.
inline std::vector<double> derived_clock_angles(std::size_t T) {
    require(T <= kMaxClockSteps, Errc::out_of_range, "clock depth must be at most 5");
    std::vector<double> a;
    for (std::size_t l = 0; l < T; ++l) {
        const double r = static_cast<double>(T - l) / static_cast<double>(T - l + 1);
        a.push_back(2 * std::acos(std::sqrt(r)));
    }
    return a;
}

namespace detail {

/// diag(U, 1) on [control, target]: U acts when the control reads 0.
inline UnitarySpec controlled_on_zero(const UnitarySpec &u) {
    const Matrix x = kron(Matrix::identity(u.dim()), gates::X().matrix());
    return UnitarySpec(x * gates::controlled(u).matrix() * x);
}

} // namespace detail

/// Cascade from |0>^T: Ry(θ_0) on qubit 0, then for ℓ >= 1 Ry(θ_ℓ) on qubit ℓ
/// when qubit ℓ-1 reads 0 and a flip of qubit ℓ when it reads 1.
inline StateVector clock_state(std::size_t T, const std::vector<double> &angles) {
    require(T <= kMaxClockSteps, Errc::out_of_range, "clock depth must be at most 5");
    require(angles.size() == T, Errc::dimension_mismatch, "one angle per clock qubit is required");
    if (T == 0) {
        return StateVector::from_amplitudes({1.0});
    }
    StateVector s = StateVector::zeros(T);
    s.apply(gates::Ry(angles[0]), {0});
    for (std::size_t l = 1; l < T; ++l) {
        s.apply(detail::controlled_on_zero(gates::Ry(angles[l])), {l - 1, l});
        s.apply(gates::CNOT(), {l - 1, l});
    }
    return s;
}

/// Largest amplitude deviation from (1/√(T+1)) Σ_t |t>.
inline double clock_deviation(const StateVector &clock, std::size_t T) {
    std::vector<cplx> target(std::size_t{1} << T, 0.0);
    for (std::size_t t = 0; t <= T; ++t) {
        target[domain_wall_index(t, T)] = 1.0 / std::sqrt(static_cast<double>(T + 1));
    }
    double dev = 0.0;
    for (std::size_t i = 0; i < target.size(); ++i) {
        dev = std::max(dev, std::abs(clock[i] - target[i]));
    }
    return dev;
}

/// (1/√(T+1)) Σ_t |t>_clock ⊗ U_t…U_1|ψ_0>.
inline StateVector history_state(const HistorySpec &spec) {
    const std::size_t T = spec.depth();
    require(T <= kMaxClockSteps, Errc::out_of_range, "history depth must be at most 5");
    const std::size_t m = spec.initial.qubit_count();
    for (const auto &u : spec.gates) {
        require(u.arity() == m, Errc::dimension_mismatch, "every step must act on the whole data register");
    }
    StateVector s = clock_state(T, derived_clock_angles(T)).tensor(spec.initial);
    if (T == 0) {
        return spec.initial;
    }
    for (std::size_t t = 1; t <= T; ++t) {
        std::vector<std::size_t> on = {t - 1};
        for (std::size_t q = 0; q < m; ++q) on.push_back(T + q);
        s.apply(detail::controlled_on_zero(spec.gates[t - 1]), on);
    }
    return s;
}

struct HistoryBranch {
    std::size_t t = 0;
    double probability = 0.0;
    StateVector data;
};

/// Splits a history state into its clock branches.
inline std::vector<HistoryBranch> history_branches(const StateVector &s, std::size_t T) {
    const std::size_t m = s.qubit_count() - T;
    std::vector<std::size_t> pos(T);
    for (std::size_t j = 0; j < T; ++j) pos[j] = j;
    std::vector<HistoryBranch> out;
    for (std::size_t t = 0; t <= T; ++t) {
        std::vector<cplx> e(std::size_t{1} << T, 0.0);
        e[domain_wall_index(t, T)] = 1.0;
        const auto part = T == 0 ? s.amplitudes() : s.project_out(pos, e);
        double p = 0.0;
        for (const auto &a : part) p += std::norm(a);
        out.push_back({t, p, p > 0 ? StateVector::from_amplitudes(part) : StateVector::zeros(m)});
    }
    return out;
}

} // namespace qsc
