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
 * Controlled stored gates and quantum multiplexers.
 *
 * A stored gate cannot be controlled directly. Instead the data is swapped
 * into the transistor only when the control is |1>; when the control is |0>
 * the transistor acts on an eigenstate |λ> of U, which only picks up the
 * eigenphase e^{iφ}. The gate diag(e^{-iφ}, 1) on the control removes that
 * phase, leaving exactly ∧_U.
 */
#pragma once

#include <Eigen/Eigenvalues>

#include <cmath>
#include <complex>
#include <vector>

#include "qsc/transistor/transistor.hpp"

namespace qsc {

/// Eigenphase φ with U|λ> = e^{iφ}|λ>; throws not_eigenstate otherwise.
inline double eigenphase(const UnitarySpec &u, const StateVector &lambda, double tol = 1e-8) {
    require(lambda.qubit_count() == u.arity(), Errc::dimension_mismatch, "eigenstate width does not match the gate");
    const auto v = u.matrix() * lambda.amplitudes();
    cplx overlap = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        overlap += std::conj(lambda[i]) * v[i];
    }
    double residual = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        residual += std::norm(v[i] - overlap * lambda[i]);
    }
    require(std::sqrt(residual) <= tol && std::abs(std::abs(overlap) - 1.0) <= tol, Errc::not_eigenstate,
            "state is not an eigenstate of the stored gate");
    return std::arg(overlap);
}

/// Some eigenvector of `u` (the one Eigen lists first).
inline StateVector any_eigenstate(const UnitarySpec &u) {
    const std::size_t d = u.dim();
    Eigen::MatrixXcd m(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < d; ++j) {
            m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = u.matrix()(i, j);
        }
    }
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(m);
    require(solver.info() == Eigen::Success, Errc::invalid_argument, "eigen decomposition failed");
    std::vector<cplx> v(d);
    for (std::size_t i = 0; i < d; ++i) {
        v[i] = solver.eigenvectors()(static_cast<Eigen::Index>(i), 0);
    }
    return StateVector::from_amplitudes(std::move(v));
}

/// Applies ∧_G on (control, data) inside `reg`, with G = U (or Uᵀ when the
/// transistor is run backward). Data qubit ids are unchanged afterwards.
inline void apply_controlled_stored(Register &reg, QubitId control, std::span<const QubitId> data,
                                    const UnitarySpec &u, const StateVector &lambda, RngPolicy &rng,
                                    bool backward = false) {
    require(data.size() == u.arity(), Errc::dimension_mismatch, "data width does not match the gate");
    const UnitarySpec g = backward ? u.transpose() : u;
    const double phi = eigenphase(g, lambda);
    const auto anc = reg.allocate(lambda);
    for (std::size_t j = 0; j < data.size(); ++j) {
        reg.apply(gates::CSWAP(), {control, data[j], anc[j]});
    }
    Transistor t = build_choi_transistor(u, reg);
    if (backward) {
        t = run_backward(t);
    }
    (void)inject_input_by_teleport(t, reg, anc, rng);
    (void)activate(t, reg, rng);
    resolve_frame(t, reg);
    for (std::size_t j = 0; j < data.size(); ++j) {
        reg.apply(gates::CSWAP(), {control, data[j], t.right[j]});
    }
    reg.apply(UnitarySpec(Matrix::diagonal({std::polar(1.0, -phi), 1.0})), {control});
    reg.release(t.right, lambda);
}

/// ∧_U on `input` = control (qubit 0) ⊗ data (qubits 1..m).
inline StateVector controlled_u_via_transistor(const UnitarySpec &u, const StateVector &lambda,
                                               const StateVector &input, RngPolicy &rng, bool backward = false) {
    require(input.qubit_count() == u.arity() + 1, Errc::dimension_mismatch, "input must be control plus data");
    Register reg;
    const auto q = reg.allocate(input);
    apply_controlled_stored(reg, q[0], std::span<const QubitId>(q).subspan(1), u, lambda, rng, backward);
    return reg.state_in_order(q);
}

struct QmuxSpec {
    std::vector<UnitarySpec> unitaries; ///< U_0 … U_{d_c-1}, d_c = 2^k.
    std::vector<cplx> coefficients;     ///< Control amplitudes c_i.
    bool backward = false;              ///< Run every stored gate backward (realizes diag(U_iᵀ)).

    [[nodiscard]] std::size_t control_qubits() const { return log2_exact(unitaries.size()); }
    [[nodiscard]] std::size_t data_qubits() const { return unitaries.front().arity(); }

    void validate() const {
        require(!unitaries.empty(), Errc::invalid_argument, "qmux needs at least one unitary");
        require(coefficients.size() == unitaries.size(), Errc::dimension_mismatch,
                "one coefficient per unitary is required");
        require((unitaries.size() & (unitaries.size() - 1)) == 0, Errc::dimension_mismatch,
                "qmux size must be a power of two");
        for (const auto &u : unitaries) {
            require(u.arity() == unitaries.front().arity(), Errc::dimension_mismatch,
                    "qmux unitaries must share an arity");
        }
        double n = 0.0;
        for (const auto &c : coefficients) {
            n += std::norm(c);
        }
        require(std::abs(n - 1.0) <= 1e-12, Errc::invalid_argument, "qmux coefficients must be normalized");
    }
};

namespace detail {

/// X on `flag` iff the control register reads `value` (little endian).
inline UnitarySpec match_flip(std::size_t k, std::size_t value) {
    const std::size_t d = std::size_t{2} << k;
    Matrix m(d, d);
    const std::size_t flag = std::size_t{1} << k;
    for (std::size_t i = 0; i < d; ++i) {
        const bool hit = (i & (flag - 1)) == value;
        m(hit ? i ^ flag : i, i) = 1.0;
    }
    return UnitarySpec(m);
}

} // namespace detail

/// Applies diag(U_0, …) to (control, data) in `reg`: for each i a flag qubit
/// marks "control == i" and drives one controlled stored gate.
inline void apply_qmux(Register &reg, std::span<const QubitId> control, std::span<const QubitId> data,
                       const QmuxSpec &spec, RngPolicy &rng) {
    const std::size_t k = control.size();
    const QubitId flag = reg.allocate_label('0');
    std::vector<QubitId> on(control.begin(), control.end());
    on.push_back(flag);
    for (std::size_t i = 0; i < spec.unitaries.size(); ++i) {
        const UnitarySpec &u = spec.unitaries[i];
        const UnitarySpec g = spec.backward ? u.transpose() : u;
        const auto flip = detail::match_flip(k, i);
        reg.apply(flip, on);
        apply_controlled_stored(reg, flag, data, u, any_eigenstate(g), rng, spec.backward);
        reg.apply(flip, on);
    }
    const QubitId f[] = {flag};
    reg.release(f, StateVector::zeros(1));
}

/// Σ c_i |i> U_i|ψ>: control register on the low qubits, data above.
inline StateVector qmux(const QmuxSpec &spec, const StateVector &psi, RngPolicy &rng) {
    spec.validate();
    require(psi.qubit_count() == spec.data_qubits(), Errc::dimension_mismatch, "data width does not match the qmux");
    Register reg;
    const auto c = reg.allocate(StateVector::from_amplitudes(spec.coefficients));
    const auto d = reg.allocate(psi);
    apply_qmux(reg, c, d, spec, rng);
    std::vector<QubitId> order = c;
    order.insert(order.end(), d.begin(), d.end());
    return reg.state_in_order(order);
}

/// Parallel query Σ c_i |i>|D_i> with items D_i = U_i|ψ>.
inline StateVector qram_query(const std::vector<cplx> &addresses, const std::vector<UnitarySpec> &items,
                              const StateVector &psi, RngPolicy &rng) {
    return qmux(QmuxSpec{items, addresses, false}, psi, rng);
}

} // namespace qsc
