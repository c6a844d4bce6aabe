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
 * Superchannel comparison in the Liouville (transfer matrix) picture.
 *
 * vec stacks columns: vec(A X B) = (Bᵀ ⊗ A) vec(X).
 */
#pragma once

#include <vector>

#include "qsc/core/channel.hpp"
#include "qsc/core/random.hpp"

namespace qsc {

inline std::vector<cplx> vec(const Matrix &m) {
    std::vector<cplx> v;
    v.reserve(m.rows() * m.cols());
    for (std::size_t j = 0; j < m.cols(); ++j) {
        for (std::size_t i = 0; i < m.rows(); ++i) {
            v.push_back(m(i, j));
        }
    }
    return v;
}

inline Matrix unvec(const std::vector<cplx> &v, std::size_t rows) {
    const std::size_t cols = v.size() / rows;
    Matrix m(rows, cols);
    for (std::size_t j = 0; j < cols; ++j) {
        for (std::size_t i = 0; i < rows; ++i) {
            m(i, j) = v[j * rows + i];
        }
    }
    return m;
}

/// Σ_k conj(K_k) ⊗ K_k.
inline Matrix liouville(const std::vector<Matrix> &kraus) {
    Matrix l;
    for (std::size_t k = 0; k < kraus.size(); ++k) {
        const Matrix term = kron(kraus[k].conjugate(), kraus[k]);
        l = k == 0 ? term : l + term;
    }
    return l;
}

/// Superchannel action computed by multiplying transfer matrices; ancilla
/// conventions match apply_superchannel.
inline Matrix superchannel_by_liouville(const UnitarySpec &pre, const UnitarySpec &post, const ChannelSpec &phi,
                                        const Matrix &rho) {
    const std::size_t dd = rho.rows();
    const std::size_t dfull = pre.dim();
    Matrix joint(dfull, dfull);
    for (std::size_t i = 0; i < dd; ++i) {
        for (std::size_t j = 0; j < dd; ++j) {
            joint(i, j) = rho(i, j);
        }
    }
    const Matrix l = liouville({post.matrix()}) * liouville(phi.kraus()) * liouville({pre.matrix()});
    const Matrix out = unvec(l * vec(joint), post.dim());
    const std::size_t na = pre.arity() - log2_exact(dd);
    const std::size_t keep_dim = post.dim() >> na;
    Matrix r(keep_dim, keep_dim);
    for (std::size_t a = 0; a < (std::size_t{1} << na); ++a) {
        for (std::size_t i = 0; i < keep_dim; ++i) {
            for (std::size_t j = 0; j < keep_dim; ++j) {
                r(i, j) += out(a * keep_dim + i, a * keep_dim + j);
            }
        }
    }
    return r;
}

/// Random channel on n qubits with k Kraus operators: the blocks of a random
/// (k·2^n) x 2^n isometry.
inline ChannelSpec random_channel(std::size_t n, std::size_t k, GaussianSource &g) {
    require(k >= 1, Errc::invalid_argument, "a channel needs at least one Kraus operator");
    const std::size_t d = std::size_t{1} << n;
    Matrix v = random_matrix(k * d, d, g);
    for (std::size_t j = 0; j < d; ++j) {
        for (std::size_t p = 0; p < j; ++p) {
            cplx dot = 0.0;
            for (std::size_t i = 0; i < k * d; ++i) dot += std::conj(v(i, p)) * v(i, j);
            for (std::size_t i = 0; i < k * d; ++i) v(i, j) -= dot * v(i, p);
        }
        double nrm = 0.0;
        for (std::size_t i = 0; i < k * d; ++i) nrm += std::norm(v(i, j));
        nrm = std::sqrt(nrm);
        for (std::size_t i = 0; i < k * d; ++i) v(i, j) /= nrm;
    }
    std::vector<Matrix> kraus;
    for (std::size_t b = 0; b < k; ++b) {
        Matrix m(d, d);
        for (std::size_t i = 0; i < d; ++i) {
            for (std::size_t j = 0; j < d; ++j) {
                m(i, j) = v(b * d + i, j);
            }
        }
        kraus.push_back(std::move(m));
    }
    return ChannelSpec(n, n, std::move(kraus));
}

} // namespace qsc
