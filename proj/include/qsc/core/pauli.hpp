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

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qsc/core/gates.hpp"

namespace qsc {

/// i^phase · ⊗_q X^{x_q} Z^{z_q}. Within a qubit, X is to the left of Z.
class PauliOperator {
  public:
    PauliOperator() = default;
    explicit PauliOperator(std::size_t n) : x_(n, 0), z_(n, 0) {}
    PauliOperator(std::vector<std::uint8_t> x, std::vector<std::uint8_t> z, int phase = 0)
        : x_(std::move(x)), z_(std::move(z)), phase_(((phase % 4) + 4) % 4) {
        require(x_.size() == z_.size(), Errc::dimension_mismatch, "pauli bit vectors differ in length");
    }

    static PauliOperator identity(std::size_t n) { return PauliOperator(n); }

    /// Single-qubit factor on qubit q of an n-qubit operator.
    static PauliOperator single(std::size_t n, std::size_t q, bool x, bool z) {
        PauliOperator p(n);
        p.x_.at(q) = x;
        p.z_.at(q) = z;
        return p;
    }

    /// Parses strings like "+XZ", "-iY_", "ZI" (character j acts on qubit j).
    static PauliOperator parse(const std::string &text) {
        std::size_t i = 0;
        int phase = 0;
        if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
            phase = text[i] == '-' ? 2 : 0;
            ++i;
        }
        if (i < text.size() && text[i] == 'i') {
            phase += 1;
            ++i;
        }
        PauliOperator p;
        for (; i < text.size(); ++i) {
            const char c = text[i];
            std::uint8_t x = 0, z = 0;
            if (c == 'X') {
                x = 1;
            } else if (c == 'Z') {
                z = 1;
            } else if (c == 'Y') {
                x = 1;
                z = 1;
                phase += 1; // Y = iXZ
            } else if (c != 'I' && c != '_') {
                fail(Errc::invalid_argument, "bad pauli character in '" + text + "'");
            }
            p.x_.push_back(x);
            p.z_.push_back(z);
        }
        p.phase_ = phase % 4;
        return p;
    }

    [[nodiscard]] std::size_t size() const noexcept { return x_.size(); }
    [[nodiscard]] int phase() const noexcept { return phase_; }
    [[nodiscard]] bool x(std::size_t q) const { return x_.at(q) != 0; }
    [[nodiscard]] bool z(std::size_t q) const { return z_.at(q) != 0; }
    void set(std::size_t q, bool x, bool z) {
        x_.at(q) = x;
        z_.at(q) = z;
    }
    void add_phase(int quarter_turns) { phase_ = (((phase_ + quarter_turns) % 4) + 4) % 4; }

    [[nodiscard]] bool is_identity_up_to_phase() const {
        for (std::size_t q = 0; q < size(); ++q) {
            if (x_[q] || z_[q]) {
                return false;
            }
        }
        return true;
    }

    /// Product this · other.
    friend PauliOperator operator*(const PauliOperator &a, const PauliOperator &b) {
        require(a.size() == b.size(), Errc::dimension_mismatch, "pauli size mismatch");
        PauliOperator r(a.size());
        int phase = a.phase_ + b.phase_;
        for (std::size_t q = 0; q < a.size(); ++q) {
            // X^a Z^b X^c Z^d = (-1)^{bc} X^{a+c} Z^{b+d}
            if (a.z_[q] && b.x_[q]) {
                phase += 2;
            }
            r.x_[q] = a.x_[q] ^ b.x_[q];
            r.z_[q] = a.z_[q] ^ b.z_[q];
        }
        r.phase_ = phase % 4;
        return r;
    }

    friend bool operator==(const PauliOperator &, const PauliOperator &) = default;

    /// Equality modulo phase.
    [[nodiscard]] bool same_up_to_phase(const PauliOperator &o) const { return x_ == o.x_ && z_ == o.z_; }

    [[nodiscard]] PauliOperator adjoint() const {
        // (i^k P)† = i^{-k} P† and (X Z)† = Z X = -X Z per qubit.
        PauliOperator r = *this;
        int phase = -phase_;
        for (std::size_t q = 0; q < size(); ++q) {
            if (x_[q] && z_[q]) {
                phase += 2;
            }
        }
        r.phase_ = ((phase % 4) + 4) % 4;
        return r;
    }

    /// Dense matrix in the little-endian convention (qubit 0 lowest).
    [[nodiscard]] Matrix matrix() const {
        const Matrix x{{0, 1}, {1, 0}}, z{{1, 0}, {0, -1}}, id = Matrix::identity(2);
        std::vector<Matrix> ops;
        for (std::size_t q = 0; q < size(); ++q) {
            ops.push_back((x_[q] ? x : id) * (z_[q] ? z : id));
        }
        static const cplx kPhases[4] = {1.0, cplx(0, 1), -1.0, cplx(0, -1)};
        return kPhases[phase_] * tensor_low_to_high(ops);
    }

    /// Decomposes `m` as a Pauli operator with a unit-modulus global factor.
    /// Returns nullopt when `m` is not proportional to a Pauli string.
    static std::optional<PauliOperator> from_matrix(const Matrix &m, double tol = 1e-9) {
        if (!m.is_square() || m.rows() == 0) {
            return std::nullopt;
        }
        const std::size_t n = log2_exact(m.rows());
        const std::size_t d = m.rows();
        // A Pauli string X^x Z^z maps |j> to ±|j ^ x> with sign (-1)^{z·j}.
        const std::size_t xmask = [&] {
            for (std::size_t r = 0; r < d; ++r) {
                if (std::abs(m(r, 0)) > 0.5) {
                    return r;
                }
            }
            return d;
        }();
        if (xmask == d) {
            return std::nullopt;
        }
        const cplx c0 = m(xmask, 0);
        if (std::abs(std::abs(c0) - 1.0) > tol) {
            return std::nullopt;
        }
        std::size_t zmask = 0;
        for (std::size_t q = 0; q < n; ++q) {
            const std::size_t col = std::size_t{1} << q;
            const cplx v = m(col ^ xmask, col);
            if (std::abs(v + c0) <= tol) {
                zmask |= col;
            } else if (std::abs(v - c0) > tol) {
                return std::nullopt;
            }
        }
        PauliOperator p(n);
        for (std::size_t q = 0; q < n; ++q) {
            p.x_[q] = (xmask >> q) & 1U;
            p.z_[q] = (zmask >> q) & 1U;
        }
        // Match the global factor to the nearest quarter turn, then verify.
        const Matrix base = p.matrix();
        const cplx ratio = c0 / base(xmask, 0);
        int best = 0;
        static const cplx kPhases[4] = {1.0, cplx(0, 1), -1.0, cplx(0, -1)};
        double best_d = 1e9;
        for (int k = 0; k < 4; ++k) {
            const double dd = std::abs(ratio - kPhases[k]);
            if (dd < best_d) {
                best_d = dd;
                best = k;
            }
        }
        if (!equal_up_to_phase(m, base, tol)) {
            return std::nullopt;
        }
        p.phase_ = best_d < 1e-6 ? best : 0;
        return p;
    }

    /// Human-readable form, e.g. "+iXZ" or "-XI" (character j ↔ qubit j).
    [[nodiscard]] std::string to_string() const {
        // Express with Y where x=z=1: X Z = -i Y.
        int phase = phase_;
        std::string body;
        for (std::size_t q = 0; q < size(); ++q) {
            if (x_[q] && z_[q]) {
                body += 'Y';
                phase += 3;
            } else if (x_[q]) {
                body += 'X';
            } else if (z_[q]) {
                body += 'Z';
            } else {
                body += 'I';
            }
        }
        static const char *kPrefix[4] = {"+", "+i", "-", "-i"};
        return kPrefix[phase % 4] + body;
    }

  private:
    std::vector<std::uint8_t> x_;
    std::vector<std::uint8_t> z_;
    int phase_ = 0;
};

} // namespace qsc
