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

#include <optional>
#include <string>

#include "qsc/core/pauli.hpp"

namespace qsc {

/// Correction owed by a group of qubits: physical = frame · logical.
///
/// Frames are usually Pauli operators. A non-Clifford stored gate conjugates a
/// Pauli into a general unitary, so the frame is kept as a dense matrix (at
/// most two qubits in practice) and only reported as a Pauli when it is one.
class PauliFrame {
  public:
    PauliFrame() : m_(Matrix::identity(1)) {}

    static PauliFrame identity(std::size_t n) { return PauliFrame(Matrix::identity(std::size_t{1} << n)); }
    static PauliFrame from_pauli(const PauliOperator &p) { return PauliFrame(p.matrix()); }
    static PauliFrame from_matrix(Matrix m) {
        require(m.is_unitary(1e-8), Errc::not_unitary, "frame must be unitary");
        return PauliFrame(std::move(m));
    }

    [[nodiscard]] std::size_t size() const { return log2_exact(m_.rows()); }
    [[nodiscard]] const Matrix &matrix() const noexcept { return m_; }

    [[nodiscard]] bool is_identity() const { return equal_up_to_phase(m_, Matrix::identity(m_.rows()), 1e-9); }
    [[nodiscard]] std::optional<PauliOperator> pauli() const { return PauliOperator::from_matrix(m_); }
    [[nodiscard]] bool is_pauli() const { return pauli().has_value(); }

    [[nodiscard]] PauliFrame operator*(const PauliFrame &o) const { return PauliFrame(m_ * o.m_); }

    /// This frame on the low qubits, `high` above it.
    [[nodiscard]] PauliFrame tensor(const PauliFrame &high) const { return PauliFrame(kron(high.m_, m_)); }

    [[nodiscard]] std::string to_string() const {
        if (auto p = pauli()) {
            return p->to_string();
        }
        return "U" + std::to_string(size());
    }

  private:
    explicit PauliFrame(Matrix m) : m_(std::move(m)) {}
    Matrix m_;
};

} // namespace qsc
