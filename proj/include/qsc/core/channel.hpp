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
 * Channel–state duality and superchannels.
 *
 * Choi states pair input leg j with output leg arity + j: input legs occupy
 * the low qubits, output legs the high ones. For a unitary U of arity n,
 *
 *     |U> = (I ⊗ U) |ω>^{⊗n},   amplitude(in = i, out = o) = U[o][i] / √(2^n).
 */
#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <span>
#include <vector>

#include "qsc/core/state_vector.hpp"

namespace qsc {

struct ChoiState {
    std::size_t arity = 0;
    StateVector state;
};

inline ChoiState choi_of_unitary(const UnitarySpec &u) {
    const std::size_t n = u.arity(), d = u.dim();
    std::vector<cplx> amps(d * d);
    const double scale = 1.0 / std::sqrt(static_cast<double>(d));
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t o = 0; o < d; ++o) {
            amps[i | (o << n)] = u.matrix()(o, i) * scale;
        }
    }
    return {n, StateVector::from_amplitudes(std::move(amps))};
}

/// Inverse of choi_of_unitary. Rejects states whose input marginal is not
/// maximally mixed (tolerance 1e-8) or whose reconstruction is not unitary.
inline UnitarySpec unitary_of_choi(const ChoiState &c) {
    const std::size_t n = c.arity;
    require(c.state.qubit_count() == 2 * n && n >= 1, Errc::dimension_mismatch, "choi state has the wrong width");
    const std::size_t d = std::size_t{1} << n;
    std::vector<std::size_t> in_legs;
    for (std::size_t j = 0; j < n; ++j) {
        in_legs.push_back(j);
    }
    const Matrix rho_in = c.state.reduced_density(in_legs);
    require(rho_in.max_abs_diff((1.0 / static_cast<double>(d)) * Matrix::identity(d)) <= 1e-8, Errc::not_unitary,
            "choi input marginal is not maximally mixed");
    Matrix m(d, d);
    const double scale = std::sqrt(static_cast<double>(d));
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t o = 0; o < d; ++o) {
            m(o, i) = c.state[i | (o << n)] * scale;
        }
    }
    require(m.is_unitary(1e-8), Errc::not_unitary, "choi state does not encode a unitary");
    return UnitarySpec(m, 1e-8);
}

/// A trace-preserving channel in Kraus form.
class ChannelSpec {
  public:
    ChannelSpec(std::size_t input_arity, std::size_t output_arity, std::vector<Matrix> kraus)
        : in_(input_arity), out_(output_arity), kraus_(std::move(kraus)) {
        require(!kraus_.empty(), Errc::invalid_argument, "channel needs at least one Kraus operator");
        const std::size_t din = std::size_t{1} << in_, dout = std::size_t{1} << out_;
        Matrix sum(din, din);
        for (const auto &k : kraus_) {
            require(k.rows() == dout && k.cols() == din, Errc::dimension_mismatch, "Kraus operator has the wrong shape");
            sum = sum + k.adjoint() * k;
        }
        require(sum.max_abs_diff(Matrix::identity(din)) <= kStateTol, Errc::invalid_argument,
                "Kraus operators are not trace preserving");
    }

    static ChannelSpec identity(std::size_t arity) {
        return ChannelSpec(arity, arity, {Matrix::identity(std::size_t{1} << arity)});
    }
    static ChannelSpec unitary(const UnitarySpec &u) { return ChannelSpec(u.arity(), u.arity(), {u.matrix()}); }

    [[nodiscard]] std::size_t input_arity() const noexcept { return in_; }
    [[nodiscard]] std::size_t output_arity() const noexcept { return out_; }
    [[nodiscard]] const std::vector<Matrix> &kraus() const noexcept { return kraus_; }

    [[nodiscard]] Matrix apply(const Matrix &rho) const {
        const std::size_t dout = std::size_t{1} << out_;
        Matrix r(dout, dout);
        for (const auto &k : kraus_) {
            r = r + k * rho * k.adjoint();
        }
        return r;
    }

  private:
    std::size_t in_;
    std::size_t out_;
    std::vector<Matrix> kraus_;
};

/// Choi matrix Σ_k |K_k>><<K_k| on (input legs, output legs), trace 1.
inline Matrix choi_of_channel(const ChannelSpec &phi) {
    const std::size_t n = phi.input_arity();
    const std::size_t din = std::size_t{1} << n, dout = std::size_t{1} << phi.output_arity();
    Matrix rho(din * dout, din * dout);
    for (const auto &k : phi.kraus()) {
        std::vector<cplx> v(din * dout);
        for (std::size_t i = 0; i < din; ++i) {
            for (std::size_t o = 0; o < dout; ++o) {
                v[i | (o << n)] = k(o, i) / std::sqrt(static_cast<double>(din));
            }
        }
        rho = rho + Matrix::outer(v, v);
    }
    return rho;
}

inline Matrix density(const StateVector &s) { return Matrix::outer(s.amplitudes(), s.amplitudes()); }

/// Traces out every qubit of an n-qubit density matrix not listed in `keep`;
/// keep[j] becomes qubit j of the result.
inline Matrix partial_trace(const Matrix &rho, std::span<const std::size_t> keep) {
    const std::size_t n = log2_exact(rho.rows());
    std::size_t kmask = 0;
    for (auto q : keep) {
        require(q < n, Errc::out_of_range, "partial trace qubit out of range");
        kmask |= std::size_t{1} << q;
    }
    const std::size_t dk = std::size_t{1} << keep.size();
    Matrix out(dk, dk);
    auto kept_index = [&](std::size_t idx) {
        std::size_t s = 0;
        for (std::size_t j = 0; j < keep.size(); ++j) {
            s |= ((idx >> keep[j]) & 1U) << j;
        }
        return s;
    };
    for (std::size_t i = 0; i < rho.rows(); ++i) {
        for (std::size_t j = 0; j < rho.cols(); ++j) {
            if ((i & ~kmask) != (j & ~kmask)) {
                continue;
            }
            out(kept_index(i), kept_index(j)) += rho(i, j);
        }
    }
    return out;
}

/// (1/2)‖a - b‖₁ for Hermitian a, b.
inline double trace_distance(const Matrix &a, const Matrix &b) {
    require(a.rows() == b.rows() && a.cols() == b.cols() && a.is_square(), Errc::dimension_mismatch,
            "trace distance needs equal square matrices");
    const std::size_t d = a.rows();
    Eigen::MatrixXcd m(d, d);
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < d; ++j) {
            m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = a(i, j) - b(i, j);
        }
    }
    const Eigen::MatrixXcd herm = 0.5 * (m + m.adjoint());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(herm, Eigen::EigenvaluesOnly);
    return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

/// Superchannel action tr_a V Φ U (ρ ⊗ |0><0|_a).
///
/// The ancilla width is arity(U) - width(ρ) and sits on the high qubits. Φ must
/// map arity(U) qubits to arity(V) qubits; the ancilla is the top block of V's
/// output and is traced out.
inline Matrix apply_superchannel(const UnitarySpec &pre, const UnitarySpec &post, const ChannelSpec &phi,
                                 const Matrix &rho) {
    require(rho.is_square(), Errc::dimension_mismatch, "density matrix must be square");
    const std::size_t nd = log2_exact(rho.rows());
    require(pre.arity() >= nd, Errc::dimension_mismatch, "pre-unitary is narrower than the data");
    const std::size_t na = pre.arity() - nd;
    require(phi.input_arity() == pre.arity(), Errc::dimension_mismatch, "channel input does not match pre-unitary");
    require(phi.output_arity() == post.arity(), Errc::dimension_mismatch,
            "channel output does not match post-unitary");
    require(post.arity() >= na, Errc::dimension_mismatch, "post-unitary is narrower than the ancilla");

    const std::size_t dfull = pre.dim();
    Matrix joint(dfull, dfull);
    for (std::size_t i = 0; i < rho.rows(); ++i) {
        for (std::size_t j = 0; j < rho.cols(); ++j) {
            joint(i, j) = rho(i, j); // ancilla index 0 is the low block
        }
    }
    const Matrix after_pre = pre.matrix() * joint * pre.matrix().adjoint();
    const Matrix after_phi = phi.apply(after_pre);
    const Matrix after_post = post.matrix() * after_phi * post.matrix().adjoint();
    std::vector<std::size_t> keep;
    for (std::size_t q = 0; q < post.arity() - na; ++q) {
        keep.push_back(q);
    }
    return partial_trace(after_post, keep);
}

} // namespace qsc
