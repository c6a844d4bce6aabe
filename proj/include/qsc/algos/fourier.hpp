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
 * Quantum Fourier transform and phase estimation.
 *
 * Integers are little endian over qubits. Bit strings in results are written
 * most significant bit first, so phase 1/4 with t = 2 reads "01".
 */
#pragma once

#include <map>
#include <string>
#include <vector>

#include "qsc/algos/controlled.hpp"

namespace qsc {

struct CircuitStep {
    std::string label;
    UnitarySpec gate;
    std::vector<std::size_t> targets;
};

/// H / controlled-R_k ladder followed by the bit-reversal swaps.
inline std::vector<CircuitStep> qft_circuit(std::size_t n) {
    require(n >= 1 && n <= 6, Errc::out_of_range, "qft width must be in 1..6");
    std::vector<CircuitStep> c;
    for (std::size_t i = n; i-- > 0;) {
        c.push_back({"H", gates::H(), {i}});
        for (std::size_t l = i; l-- > 0;) {
            const int k = static_cast<int>(i - l) + 1;
            c.push_back({"CR" + std::to_string(k), gates::controlled(gates::Rk(k)), {l, i}});
        }
    }
    for (std::size_t q = 0; q < n / 2; ++q) {
        c.push_back({"SWAP", gates::SWAP(), {q, n - 1 - q}});
    }
    return c;
}

inline StateVector run_circuit(const std::vector<CircuitStep> &c, StateVector s) {
    for (const auto &g : c) {
        s.apply(g.gate, g.targets);
    }
    return s;
}

/// F|j> = 2^{-n/2} Σ_k e^{2πi jk/2^n} |k>.
inline UnitarySpec qft(std::size_t n) {
    const auto c = qft_circuit(n);
    const std::size_t d = std::size_t{1} << n;
    Matrix m(d, d);
    for (std::size_t col = 0; col < d; ++col) {
        const auto s = run_circuit(c, StateVector::basis(n, col));
        for (std::size_t row = 0; row < d; ++row) {
            m(row, col) = s[row];
        }
    }
    return UnitarySpec(m);
}

/// Integer `value` as a t-bit string, most significant bit first.
inline std::string bitstring(std::size_t value, std::size_t t) {
    std::string s(t, '0');
    for (std::size_t b = 0; b < t; ++b) {
        if ((value >> b) & 1U) {
            s[t - 1 - b] = '1';
        }
    }
    return s;
}

struct QpeRecord {
    std::size_t t = 0;
    double eigenphase = 0.0;                  ///< φ / 2π in [0, 1).
    std::string readout;                      ///< Sampled counting-register string.
    double probability = 0.0;                 ///< Probability of `readout`.
    std::map<std::string, double> distribution; ///< Full counting-register distribution.
};

/// Phase estimation with t counting qubits. Counting qubit r controls a stored
/// U^{2^r}; an inverse QFT and a Z readout follow.
inline QpeRecord qpe(const UnitarySpec &u, const StateVector &eigenstate, std::size_t t, RngPolicy &rng) {
    require(t >= 1 && t <= 4, Errc::out_of_range, "qpe needs 1..4 counting qubits");
    const double phi = eigenphase(u, eigenstate);
    Register reg;
    const auto count = reg.allocate(StateVector::plus(t));
    const auto data = reg.allocate(eigenstate);
    UnitarySpec power = u;
    for (std::size_t r = 0; r < t; ++r) {
        apply_controlled_stored(reg, count[r], data, power, eigenstate, rng);
        power = UnitarySpec(power.matrix() * power.matrix(), 1e-8);
    }
    reg.apply(qft(t).adjoint(), count);

    QpeRecord rec;
    rec.t = t;
    rec.eigenphase = phi / (2 * std::numbers::pi);
    if (rec.eigenphase < 0) {
        rec.eigenphase += 1.0;
    }
    const Matrix rho = reg.reduced_density(count);
    for (std::size_t j = 0; j < rho.rows(); ++j) {
        rec.distribution[bitstring(j, t)] = std::real(rho(j, j));
    }
    std::size_t value = 0;
    rec.probability = 1.0;
    for (std::size_t r = 0; r < t; ++r) {
        const auto m = reg.measure(count[r], Basis::z(), rng, "qpe readout");
        value |= static_cast<std::size_t>(m.outcome[0]) << r;
        rec.probability *= m.probability;
    }
    rec.readout = bitstring(value, t);
    return rec;
}

} // namespace qsc
