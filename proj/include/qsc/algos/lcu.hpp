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
 * Linear combination of unitaries and the gradient step built on it.
 *
 * The control register starts uniform, a QMUX applies U_i on branch |i>, and
 * Wᵀ mixes the branches so that the |0> branch carries Σ_i w_{i0} U_i|ψ>.
 */
#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "qsc/algos/controlled.hpp"

namespace qsc {

/// Unitary whose first column is `first` (normalized). The remaining columns
/// come from Gram-Schmidt over the standard basis vectors in index order.
inline UnitarySpec complete_unitary(const std::vector<cplx> &first) {
    const std::size_t d = first.size();
    (void)log2_exact(d);
    std::vector<std::vector<cplx>> cols;
    auto add = [&](std::vector<cplx> v) {
        for (const auto &c : cols) {
            cplx ov = 0.0;
            for (std::size_t i = 0; i < d; ++i) ov += std::conj(c[i]) * v[i];
            for (std::size_t i = 0; i < d; ++i) v[i] -= ov * c[i];
        }
        double n = 0.0;
        for (const auto &x : v) n += std::norm(x);
        n = std::sqrt(n);
        if (n < 1e-8) {
            return;
        }
        for (auto &x : v) x /= n;
        cols.push_back(std::move(v));
    };
    add(first);
    require(cols.size() == 1, Errc::invalid_argument, "first column must be nonzero");
    for (std::size_t e = 0; e < d && cols.size() < d; ++e) {
        std::vector<cplx> v(d, 0.0);
        v[e] = 1.0;
        add(std::move(v));
    }
    Matrix m(d, d);
    for (std::size_t j = 0; j < d; ++j) {
        for (std::size_t i = 0; i < d; ++i) {
            m(i, j) = cols[j][i];
        }
    }
    return UnitarySpec(m);
}

struct LcuResult {
    StateVector state;              ///< Normalized post-selected data state.
    double success_probability = 0.0;
    std::optional<UnitarySpec> w;   ///< Mixing unitary (absent for a single term).
    std::size_t control_qubits = 0;
};

/// Post-selected Σ_i w_{i0} U_i|ψ> (normalized). Without `w`, W is completed
/// from c/|c|. The unitary list is padded with identities (coefficient 0) up
/// to a power of two.
inline LcuResult lcu(std::vector<cplx> c, std::vector<UnitarySpec> u, const StateVector &psi, RngPolicy &rng,
                     std::optional<UnitarySpec> w = std::nullopt) {
    require(!u.empty() && c.size() == u.size(), Errc::dimension_mismatch, "one coefficient per unitary is required");
    const std::size_t m = u.front().arity();
    require(psi.qubit_count() == m, Errc::dimension_mismatch, "data width does not match the unitaries");
    std::size_t d = 1;
    while (d < u.size()) d *= 2;
    while (u.size() < d) {
        u.push_back(UnitarySpec(Matrix::identity(std::size_t{1} << m)));
        c.push_back(0.0);
    }
    double norm = 0.0;
    for (const auto &x : c) norm += std::norm(x);
    norm = std::sqrt(norm);
    require(norm > 1e-12, Errc::invalid_argument, "coefficients must not all vanish");
    std::vector<cplx> col(d);
    for (std::size_t i = 0; i < d; ++i) col[i] = c[i] / norm;
    std::optional<UnitarySpec> wm = w;
    if (!wm && d > 1) {
        wm = complete_unitary(col);
    }
    if (wm) {
        require(wm->dim() == d, Errc::dimension_mismatch, "W must act on the control register");
        cplx ov = 0.0;
        for (std::size_t i = 0; i < d; ++i) ov += std::conj(col[i]) * wm->matrix()(i, 0);
        require(std::abs(std::abs(ov) - 1.0) <= 1e-9, Errc::invalid_argument,
                "first column of W must be proportional to the coefficients");
    }
    const std::size_t k = log2_exact(d);

    Register reg;
    const auto ctrl = reg.allocate(StateVector::plus(k));
    const auto data = reg.allocate(psi);
    QmuxSpec spec{u, std::vector<cplx>(d, 1.0 / std::sqrt(static_cast<double>(d))), false};
    apply_qmux(reg, ctrl, data, spec, rng);
    if (wm) {
        reg.apply(wm->transpose(), ctrl);
    }
    std::vector<QubitId> order = ctrl;
    order.insert(order.end(), data.begin(), data.end());
    const StateVector full = reg.state_in_order(order);
    std::vector<std::size_t> pos(k);
    for (std::size_t j = 0; j < k; ++j) pos[j] = j;
    std::vector<cplx> zero(d, 0.0);
    zero[0] = 1.0;
    const auto branch = full.project_out(pos, zero);
    double p = 0.0;
    for (const auto &a : branch) p += std::norm(a);
    require(p > kProbTol, Errc::invalid_argument, "post-selected branch has zero norm");
    return {StateVector::from_amplitudes(branch), p, wm, k};
}

struct GradientResult {
    StateVector direction; ///< H|ψ> / |H|ψ>|.
    double norm = 0.0;     ///< |H|ψ>|.
    double success_probability = 0.0;
};

/// H|ψ> for H = Σ c_i U_i with real c_i; signs are folded into the unitaries.
inline GradientResult gradient_step(const std::vector<std::pair<double, UnitarySpec>> &terms, const StateVector &psi,
                                    RngPolicy &rng) {
    std::vector<cplx> c;
    std::vector<UnitarySpec> u;
    double l2 = 0.0;
    for (const auto &[ci, ui] : terms) {
        c.push_back(std::abs(ci));
        u.push_back(ci < 0 ? UnitarySpec(cplx(-1.0) * ui.matrix()) : ui);
        l2 += ci * ci;
    }
    const auto r = lcu(c, u, psi, rng);
    const double d = static_cast<double>(std::size_t{1} << r.control_qubits);
    return {r.state, std::sqrt(r.success_probability * d * l2), r.success_probability};
}

} // namespace qsc
