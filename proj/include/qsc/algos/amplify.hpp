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
 * Amplitude amplification with a stored, reusable walk operator.
 *
 * Qubit 0 is the flag; the good subspace is flag = |0>.
 */
#pragma once

#include <cmath>

#include "qsc/seqexec/sequential.hpp"

namespace qsc {

struct QaaSpec {
    UnitarySpec a = gates::H(); ///< State preparation A on 1 or 2 qubits.

    /// A|0…0>.
    [[nodiscard]] StateVector prepared() const {
        return StateVector::from_amplitudes(a.matrix() * StateVector::zeros(a.arity()).amplitudes());
    }

    /// Weight of the good subspace in A|0…0>.
    [[nodiscard]] double probability() const { return good_weight(prepared()); }

    [[nodiscard]] double theta() const { return std::asin(std::sqrt(probability())); }

    static double good_weight(const StateVector &s) {
        double p = 0.0;
        for (std::size_t i = 0; i < s.dim(); i += 2) {
            p += std::norm(s[i]);
        }
        return p;
    }

    /// A single-qubit preparation with good-state weight p.
    static QaaSpec for_probability(double p) {
        require(p >= 0.0 && p <= 1.0, Errc::out_of_range, "probability must lie in [0, 1]");
        return QaaSpec{gates::Ry(2 * std::acos(std::sqrt(p)))};
    }
};

/// Q = -A S_0 A† S_good, with S_0 = 1 - 2|0><0| and S_good = 1 - 2Π_good.
inline UnitarySpec walk_operator(const QaaSpec &spec) {
    const std::size_t d = spec.a.dim();
    std::vector<cplx> s0(d, 1.0), sg(d, 1.0);
    s0[0] = -1.0;
    for (std::size_t i = 0; i < d; i += 2) {
        sg[i] = -1.0;
    }
    const Matrix q = spec.a.matrix() * Matrix::diagonal(s0) * spec.a.matrix().adjoint() * Matrix::diagonal(sg);
    return UnitarySpec(cplx(-1.0) * q);
}

struct QaaResult {
    StateVector state;
    double success_probability = 0.0;
    double closed_form = 0.0; ///< sin²((2n+1)θ).
};

/// Q^n A|0…0>, with Q stored in one transistor and iterated n times.
inline QaaResult qaa(const QaaSpec &spec, std::size_t n, RngPolicy &rng) {
    require(spec.a.arity() <= 2, Errc::out_of_range, "the preparation must act on at most two qubits");
    const double p = spec.probability();
    require(p > kProbTol && p < 1.0 - kProbTol, Errc::out_of_range, "good-state probability must lie in (0, 1)");
    QaaResult r;
    r.state = iterate_gate(GateKind::choi(walk_operator(spec)), spec.prepared(), n, rng);
    r.success_probability = QaaSpec::good_weight(r.state);
    const double s = std::sin((2.0 * static_cast<double>(n) + 1.0) * spec.theta());
    r.closed_form = s * s;
    return r;
}

} // namespace qsc
