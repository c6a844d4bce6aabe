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

#include <cmath>
#include <numbers>
#include <random>

#include "qsc/core/state_vector.hpp"

namespace qsc {

/// Deterministic Gaussian draws built on raw engine output (Box–Muller), so
/// results do not depend on the standard library's distribution code.
class GaussianSource {
  public:
    explicit GaussianSource(std::uint64_t seed) : engine_(seed) {}

    double next() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        double u1 = 0.0;
        do {
            u1 = uniform();
        } while (u1 <= 0.0);
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        spare_ = r * std::sin(2.0 * std::numbers::pi * u2);
        has_spare_ = true;
        return r * std::cos(2.0 * std::numbers::pi * u2);
    }

    double uniform() { return static_cast<double>(engine_() >> 11U) * 0x1.0p-53; }
    cplx complex_normal() { return {next(), next()}; }

  private:
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

inline StateVector random_state(std::size_t n, GaussianSource &g) {
    std::vector<cplx> a(std::size_t{1} << n);
    for (auto &v : a) {
        v = g.complex_normal();
    }
    return StateVector::from_amplitudes(std::move(a));
}

/// Haar-distributed unitary: Gram–Schmidt on a complex Gaussian matrix.
inline UnitarySpec random_unitary(std::size_t n, GaussianSource &g) {
    const std::size_t d = std::size_t{1} << n;
    std::vector<std::vector<cplx>> cols(d, std::vector<cplx>(d));
    for (auto &c : cols) {
        for (auto &v : c) {
            v = g.complex_normal();
        }
    }
    for (std::size_t j = 0; j < d; ++j) {
        for (std::size_t k = 0; k < j; ++k) {
            cplx dot = 0.0;
            for (std::size_t i = 0; i < d; ++i) {
                dot += std::conj(cols[k][i]) * cols[j][i];
            }
            for (std::size_t i = 0; i < d; ++i) {
                cols[j][i] -= dot * cols[k][i];
            }
        }
        double nrm = 0.0;
        for (auto &v : cols[j]) {
            nrm += std::norm(v);
        }
        nrm = std::sqrt(nrm);
        for (auto &v : cols[j]) {
            v /= nrm;
        }
    }
    Matrix m(d, d);
    for (std::size_t j = 0; j < d; ++j) {
        for (std::size_t i = 0; i < d; ++i) {
            m(i, j) = cols[j][i];
        }
    }
    return UnitarySpec(m);
}

inline Matrix random_matrix(std::size_t rows, std::size_t cols, GaussianSource &g) {
    Matrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t j = 0; j < cols; ++j) {
            m(i, j) = g.complex_normal();
        }
    }
    return m;
}

} // namespace qsc
