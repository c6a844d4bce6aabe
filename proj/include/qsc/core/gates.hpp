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
#include <optional>
#include <string>
#include <string_view>

#include "qsc/core/matrix.hpp"

namespace qsc {

/// A unitary on `arity` qubits. Construction validates U†U = I.
class UnitarySpec {
  public:
    UnitarySpec() : arity_(1), matrix_(Matrix::identity(2)) {}
    explicit UnitarySpec(Matrix m, double tol = kStateTol) : matrix_(std::move(m)) {
        require(matrix_.is_square(), Errc::dimension_mismatch, "unitary must be square");
        arity_ = log2_exact(matrix_.rows());
        require(arity_ >= 1, Errc::dimension_mismatch, "unitary arity must be at least 1");
        require(matrix_.is_unitary(tol), Errc::not_unitary, "matrix is not unitary");
    }

    [[nodiscard]] std::size_t arity() const noexcept { return arity_; }
    [[nodiscard]] std::size_t dim() const noexcept { return matrix_.rows(); }
    [[nodiscard]] const Matrix &matrix() const noexcept { return matrix_; }

    [[nodiscard]] UnitarySpec adjoint() const { return UnitarySpec(matrix_.adjoint()); }
    [[nodiscard]] UnitarySpec transpose() const { return UnitarySpec(matrix_.transpose()); }
    [[nodiscard]] UnitarySpec conjugate() const { return UnitarySpec(matrix_.conjugate()); }
    [[nodiscard]] UnitarySpec power(std::size_t k) const { return UnitarySpec(matrix_power(matrix_, k), 1e-8); }

    friend UnitarySpec operator*(const UnitarySpec &a, const UnitarySpec &b) {
        return UnitarySpec(a.matrix_ * b.matrix_, 1e-8);
    }

  private:
    std::size_t arity_;
    Matrix matrix_;
};

namespace gates {

inline const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

inline UnitarySpec I() { return UnitarySpec(Matrix::identity(2)); }
inline UnitarySpec X() { return UnitarySpec(Matrix{{0, 1}, {1, 0}}); }
inline UnitarySpec Y() { return UnitarySpec(Matrix{{0, cplx(0, -1)}, {cplx(0, 1), 0}}); }
inline UnitarySpec Z() { return UnitarySpec(Matrix{{1, 0}, {0, -1}}); }
inline UnitarySpec H() { return UnitarySpec(Matrix{{kInvSqrt2, kInvSqrt2}, {kInvSqrt2, -kInvSqrt2}}); }
inline UnitarySpec S() { return UnitarySpec(Matrix{{1, 0}, {0, cplx(0, 1)}}); }
inline UnitarySpec Sdg() { return UnitarySpec(Matrix{{1, 0}, {0, cplx(0, -1)}}); }
inline UnitarySpec T() { return UnitarySpec(Matrix{{1, 0}, {0, std::polar(1.0, std::numbers::pi / 4)}}); }
inline UnitarySpec Tdg() { return UnitarySpec(Matrix{{1, 0}, {0, std::polar(1.0, -std::numbers::pi / 4)}}); }

/// R_k = diag(1, e^{2πi/2^k}).
inline UnitarySpec Rk(int k) {
    return UnitarySpec(Matrix{{1, 0}, {0, std::polar(1.0, 2.0 * std::numbers::pi / std::ldexp(1.0, k))}});
}

inline UnitarySpec Ry(double theta) {
    const double c = std::cos(theta / 2), s = std::sin(theta / 2);
    return UnitarySpec(Matrix{{c, -s}, {s, c}});
}

inline UnitarySpec Rz(double theta) {
    return UnitarySpec(Matrix{{std::polar(1.0, -theta / 2), 0}, {0, std::polar(1.0, theta / 2)}});
}

inline UnitarySpec Phase(double phi) { return UnitarySpec(Matrix{{1, 0}, {0, std::polar(1.0, phi)}}); }

inline UnitarySpec CZ() { return UnitarySpec(Matrix::diagonal({1, 1, 1, -1})); }

/// Targets {control, target}: control is bit 0.
inline UnitarySpec CNOT() {
    Matrix m(4, 4);
    m(0, 0) = 1;
    m(2, 2) = 1;
    m(3, 1) = 1;
    m(1, 3) = 1;
    return UnitarySpec(m);
}

inline UnitarySpec SWAP() {
    Matrix m(4, 4);
    m(0, 0) = 1;
    m(1, 2) = 1;
    m(2, 1) = 1;
    m(3, 3) = 1;
    return UnitarySpec(m);
}

/// Block-diagonal diag(I, U): the lowest target is the control.
inline UnitarySpec controlled(const UnitarySpec &u) {
    const std::size_t d = u.dim();
    Matrix m(2 * d, 2 * d);
    for (std::size_t i = 0; i < d; ++i) {
        m(2 * i, 2 * i) = 1;
        for (std::size_t j = 0; j < d; ++j) {
            m(2 * i + 1, 2 * j + 1) = u.matrix()(i, j);
        }
    }
    return UnitarySpec(m);
}

/// Controlled swap on targets {control, a, b}.
inline UnitarySpec CSWAP() {
    Matrix m(8, 8);
    for (std::size_t i = 0; i < 8; ++i) {
        std::size_t j = i;
        if (i & 1U) {
            const std::size_t a = (i >> 1U) & 1U, b = (i >> 2U) & 1U;
            j = 1U | (b << 1U) | (a << 2U);
        }
        m(j, i) = 1;
    }
    return UnitarySpec(m);
}

/// Named gate lookup for text front ends. Names are case-sensitive upper case.
inline std::optional<UnitarySpec> by_name(std::string_view name) {
    if (name == "I") return I();
    if (name == "X") return X();
    if (name == "Y") return Y();
    if (name == "Z") return Z();
    if (name == "H") return H();
    if (name == "S") return S();
    if (name == "SDG") return Sdg();
    if (name == "T") return T();
    if (name == "TDG") return Tdg();
    if (name == "CZ") return CZ();
    if (name == "CNOT") return CNOT();
    if (name == "SWAP") return SWAP();
    return std::nullopt;
}

} // namespace gates
} // namespace qsc
