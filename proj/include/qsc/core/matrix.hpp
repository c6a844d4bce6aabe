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
 * Dense complex matrices, row-major.
 *
 * Multi-qubit operators follow the library-wide little-endian convention:
 * bit j of a row/column index addresses qubit j of the operand, so for a gate
 * applied to targets {t0, t1, ...} bit 0 of the matrix index is t0.
 */
#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <vector>

#include "qsc/core/error.hpp"

namespace qsc {

using cplx = std::complex<double>;

/// Equality tolerance for states and matrices.
inline constexpr double kStateTol = 1e-10;
/// Tolerance for norms and probabilities.
inline constexpr double kProbTol = 1e-12;
/// Hard ceiling on register width.
inline constexpr std::size_t kMaxQubits = 20;

class Matrix {
  public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
    Matrix(std::size_t rows, std::size_t cols, std::vector<cplx> data)
        : rows_(rows), cols_(cols), data_(std::move(data)) {
        require(data_.size() == rows * cols, Errc::dimension_mismatch, "matrix data size mismatch");
    }
    /// Square matrix from nested rows.
    Matrix(std::initializer_list<std::initializer_list<cplx>> rows) {
        rows_ = rows.size();
        cols_ = rows_ == 0 ? 0 : rows.begin()->size();
        data_.reserve(rows_ * cols_);
        for (const auto &r : rows) {
            require(r.size() == cols_, Errc::dimension_mismatch, "ragged matrix literal");
            data_.insert(data_.end(), r.begin(), r.end());
        }
    }

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) {
            m(i, i) = 1.0;
        }
        return m;
    }

    static Matrix diagonal(const std::vector<cplx> &d) {
        Matrix m(d.size(), d.size());
        for (std::size_t i = 0; i < d.size(); ++i) {
            m(i, i) = d[i];
        }
        return m;
    }

    /// |v><w|
    static Matrix outer(const std::vector<cplx> &v, const std::vector<cplx> &w) {
        Matrix m(v.size(), w.size());
        for (std::size_t i = 0; i < v.size(); ++i) {
            for (std::size_t j = 0; j < w.size(); ++j) {
                m(i, j) = v[i] * std::conj(w[j]);
            }
        }
        return m;
    }

    [[nodiscard]] std::size_t rows() const noexcept { return rows_; }
    [[nodiscard]] std::size_t cols() const noexcept { return cols_; }
    [[nodiscard]] bool is_square() const noexcept { return rows_ == cols_; }
    [[nodiscard]] const std::vector<cplx> &data() const noexcept { return data_; }

    cplx &operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const cplx &operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    [[nodiscard]] Matrix adjoint() const {
        Matrix m(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i) {
            for (std::size_t j = 0; j < cols_; ++j) {
                m(j, i) = std::conj((*this)(i, j));
            }
        }
        return m;
    }

    [[nodiscard]] Matrix transpose() const {
        Matrix m(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i) {
            for (std::size_t j = 0; j < cols_; ++j) {
                m(j, i) = (*this)(i, j);
            }
        }
        return m;
    }

    [[nodiscard]] Matrix conjugate() const {
        Matrix m = *this;
        for (auto &v : m.data_) {
            v = std::conj(v);
        }
        return m;
    }

    [[nodiscard]] cplx trace() const {
        cplx t = 0.0;
        for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) {
            t += (*this)(i, i);
        }
        return t;
    }

    friend Matrix operator*(const Matrix &a, const Matrix &b) {
        require(a.cols_ == b.rows_, Errc::dimension_mismatch, "matrix product shape mismatch");
        Matrix m(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i) {
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const cplx aik = a(i, k);
                if (aik == cplx{}) {
                    continue;
                }
                for (std::size_t j = 0; j < b.cols_; ++j) {
                    m(i, j) += aik * b(k, j);
                }
            }
        }
        return m;
    }

    friend std::vector<cplx> operator*(const Matrix &a, const std::vector<cplx> &v) {
        require(a.cols_ == v.size(), Errc::dimension_mismatch, "matrix-vector shape mismatch");
        std::vector<cplx> out(a.rows_);
        for (std::size_t i = 0; i < a.rows_; ++i) {
            cplx s = 0.0;
            for (std::size_t j = 0; j < a.cols_; ++j) {
                s += a(i, j) * v[j];
            }
            out[i] = s;
        }
        return out;
    }

    friend Matrix operator+(Matrix a, const Matrix &b) {
        require(a.rows_ == b.rows_ && a.cols_ == b.cols_, Errc::dimension_mismatch, "matrix sum shape mismatch");
        for (std::size_t i = 0; i < a.data_.size(); ++i) {
            a.data_[i] += b.data_[i];
        }
        return a;
    }

    friend Matrix operator-(Matrix a, const Matrix &b) {
        require(a.rows_ == b.rows_ && a.cols_ == b.cols_, Errc::dimension_mismatch, "matrix difference shape mismatch");
        for (std::size_t i = 0; i < a.data_.size(); ++i) {
            a.data_[i] -= b.data_[i];
        }
        return a;
    }

    friend Matrix operator*(cplx s, Matrix a) {
        for (auto &v : a.data_) {
            v *= s;
        }
        return a;
    }

    /// Largest absolute entry difference.
    [[nodiscard]] double max_abs_diff(const Matrix &o) const {
        require(rows_ == o.rows_ && cols_ == o.cols_, Errc::dimension_mismatch, "matrix shape mismatch");
        double d = 0.0;
        for (std::size_t i = 0; i < data_.size(); ++i) {
            d = std::max(d, std::abs(data_[i] - o.data_[i]));
        }
        return d;
    }

    [[nodiscard]] bool is_unitary(double tol = kStateTol) const {
        if (!is_square() || rows_ == 0) {
            return false;
        }
        return (adjoint() * *this).max_abs_diff(identity(rows_)) <= tol;
    }

  private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<cplx> data_;
};

/// Kronecker product a ⊗ b. In little-endian qubit order `b` occupies the
/// low qubits and `a` the high ones.
inline Matrix kron(const Matrix &a, const Matrix &b) {
    Matrix m(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            for (std::size_t k = 0; k < b.rows(); ++k) {
                for (std::size_t l = 0; l < b.cols(); ++l) {
                    m(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
                }
            }
        }
    }
    return m;
}

/// Operator acting on qubit blocks listed low-to-high: ops[0] on the lowest.
inline Matrix tensor_low_to_high(const std::vector<Matrix> &ops) {
    Matrix m = Matrix::identity(1);
    for (const auto &op : ops) {
        m = kron(op, m);
    }
    return m;
}

inline Matrix matrix_power(const Matrix &m, std::size_t k) {
    Matrix r = Matrix::identity(m.rows());
    Matrix b = m;
    while (k > 0) {
        if (k & 1U) {
            r = r * b;
        }
        b = b * b;
        k >>= 1U;
    }
    return r;
}

/// Distance between two operators modulo a global phase, using the phase that
/// maximizes their overlap: min_φ max_ij |a_ij - e^{iφ} b_ij| evaluated at
/// the overlap-optimal φ.
inline double phase_invariant_distance(const Matrix &a, const Matrix &b) {
    require(a.rows() == b.rows() && a.cols() == b.cols(), Errc::dimension_mismatch, "matrix shape mismatch");
    cplx overlap = 0.0;
    for (std::size_t i = 0; i < a.data().size(); ++i) {
        overlap += std::conj(b.data()[i]) * a.data()[i];
    }
    const cplx phase = std::abs(overlap) > 0 ? overlap / std::abs(overlap) : cplx{1.0};
    return a.max_abs_diff(phase * b);
}

inline bool equal_up_to_phase(const Matrix &a, const Matrix &b, double tol = kStateTol) {
    return phase_invariant_distance(a, b) <= tol;
}

inline std::size_t log2_exact(std::size_t dim) {
    std::size_t n = 0;
    while ((std::size_t{1} << n) < dim) {
        ++n;
    }
    require((std::size_t{1} << n) == dim, Errc::dimension_mismatch, "dimension is not a power of two");
    return n;
}

} // namespace qsc
