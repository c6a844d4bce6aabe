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
 * Pure-state amplitudes over an indexed qubit set. Qubit 0 is the least
 * significant bit of the basis index.
 */
#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "qsc/core/gates.hpp"

namespace qsc {

class StateVector {
  public:
    /// The empty register: a single amplitude 1.
    StateVector() : qubits_(0), amps_{1.0} {}

    /// |0...0> on n qubits.
    static StateVector zeros(std::size_t n) {
        check_width(n);
        StateVector s;
        s.qubits_ = n;
        s.amps_.assign(std::size_t{1} << n, 0.0);
        s.amps_[0] = 1.0;
        return s;
    }

    static StateVector basis(std::size_t n, std::size_t index) {
        StateVector s = zeros(n);
        require(index < s.amps_.size(), Errc::out_of_range, "basis index out of range");
        s.amps_[0] = 0.0;
        s.amps_[index] = 1.0;
        return s;
    }

    static StateVector plus(std::size_t n) {
        StateVector s = zeros(n);
        const double a = 1.0 / std::sqrt(static_cast<double>(s.amps_.size()));
        for (auto &v : s.amps_) {
            v = a;
        }
        return s;
    }

    /// Takes amplitudes as given and normalizes them; zero vectors are rejected.
    static StateVector from_amplitudes(std::vector<cplx> amps) {
        const std::size_t n = log2_exact(amps.size());
        check_width(n);
        StateVector s;
        s.qubits_ = n;
        s.amps_ = std::move(amps);
        const double nrm = s.norm();
        require(nrm > 1e-300, Errc::invalid_argument, "cannot normalize a zero vector");
        for (auto &v : s.amps_) {
            v /= nrm;
        }
        return s;
    }

    /// Single-qubit state from a label: 0, 1, +, -.
    static StateVector from_label(char label) {
        const double r = 1.0 / std::sqrt(2.0);
        switch (label) {
            case '0': return from_amplitudes({1.0, 0.0});
            case '1': return from_amplitudes({0.0, 1.0});
            case '+': return from_amplitudes({r, r});
            case '-': return from_amplitudes({r, -r});
            default: fail(Errc::invalid_argument, std::string("unknown state label '") + label + "'");
        }
    }

    [[nodiscard]] std::size_t qubit_count() const noexcept { return qubits_; }
    [[nodiscard]] std::size_t dim() const noexcept { return amps_.size(); }
    [[nodiscard]] const std::vector<cplx> &amplitudes() const noexcept { return amps_; }
    [[nodiscard]] cplx operator[](std::size_t i) const { return amps_[i]; }

    [[nodiscard]] double norm() const {
        double s = 0.0;
        for (const auto &v : amps_) {
            s += std::norm(v);
        }
        return std::sqrt(s);
    }

    /// this ⊗ other with `other` on the new, higher qubits.
    [[nodiscard]] StateVector tensor(const StateVector &other) const {
        check_width(qubits_ + other.qubits_);
        StateVector s;
        s.qubits_ = qubits_ + other.qubits_;
        s.amps_.assign(std::size_t{1} << s.qubits_, 0.0);
        for (std::size_t hi = 0; hi < other.amps_.size(); ++hi) {
            if (other.amps_[hi] == cplx{}) {
                continue;
            }
            for (std::size_t lo = 0; lo < amps_.size(); ++lo) {
                s.amps_[(hi << qubits_) | lo] = other.amps_[hi] * amps_[lo];
            }
        }
        return s;
    }

    /// In-place application of `u` on `targets` (targets[j] ↔ bit j of u's index).
    void apply(const UnitarySpec &u, std::span<const std::size_t> targets) {
        require(targets.size() == u.arity(), Errc::dimension_mismatch,
                "gate arity " + std::to_string(u.arity()) + " does not match " + std::to_string(targets.size()) +
                    " targets");
        std::size_t mask = 0;
        for (auto t : targets) {
            require(t < qubits_, Errc::out_of_range, "target qubit " + std::to_string(t) + " out of range");
            require((mask & (std::size_t{1} << t)) == 0, Errc::invalid_argument, "duplicate target qubit");
            mask |= std::size_t{1} << t;
        }
        const std::size_t k = targets.size();
        const std::size_t sub = std::size_t{1} << k;
        std::vector<std::size_t> offsets(sub, 0);
        for (std::size_t s = 0; s < sub; ++s) {
            for (std::size_t j = 0; j < k; ++j) {
                if ((s >> j) & 1U) {
                    offsets[s] |= std::size_t{1} << targets[j];
                }
            }
        }
        const Matrix &m = u.matrix();
        std::vector<cplx> in(sub), out(sub);
        for (std::size_t base = 0; base < amps_.size(); ++base) {
            if (base & mask) {
                continue;
            }
            for (std::size_t s = 0; s < sub; ++s) {
                in[s] = amps_[base | offsets[s]];
            }
            for (std::size_t r = 0; r < sub; ++r) {
                cplx acc = 0.0;
                for (std::size_t c = 0; c < sub; ++c) {
                    acc += m(r, c) * in[c];
                }
                out[r] = acc;
            }
            for (std::size_t s = 0; s < sub; ++s) {
                amps_[base | offsets[s]] = out[s];
            }
        }
    }

    void apply(const UnitarySpec &u, std::initializer_list<std::size_t> targets) {
        apply(u, std::span<const std::size_t>(targets.begin(), targets.size()));
    }

    /// Reorders qubits: new qubit j is old qubit order[j].
    [[nodiscard]] StateVector permuted(std::span<const std::size_t> order) const {
        require(order.size() == qubits_, Errc::dimension_mismatch, "permutation size mismatch");
        StateVector s = *this;
        for (std::size_t idx = 0; idx < amps_.size(); ++idx) {
            std::size_t nidx = 0;
            for (std::size_t j = 0; j < qubits_; ++j) {
                if ((idx >> order[j]) & 1U) {
                    nidx |= std::size_t{1} << j;
                }
            }
            s.amps_[nidx] = amps_[idx];
        }
        return s;
    }

    /// Projects the qubits at `positions` onto (unnormalized) vector `v`
    /// (v index bit j ↔ positions[j]) and drops them. Returns the
    /// unnormalized remainder: amplitudes are <v|ψ> on the remaining qubits.
    [[nodiscard]] std::vector<cplx> project_out(std::span<const std::size_t> positions,
                                                const std::vector<cplx> &v) const {
        const std::size_t k = positions.size();
        require(v.size() == (std::size_t{1} << k), Errc::dimension_mismatch, "projector size mismatch");
        std::size_t mask = 0;
        for (auto p : positions) {
            require(p < qubits_, Errc::out_of_range, "measured qubit out of range");
            require((mask & (std::size_t{1} << p)) == 0, Errc::invalid_argument, "duplicate measured qubit");
            mask |= std::size_t{1} << p;
        }
        std::vector<std::pair<std::size_t, cplx>> terms;
        for (std::size_t sv = 0; sv < v.size(); ++sv) {
            if (v[sv] == cplx{}) {
                continue;
            }
            std::size_t off = 0;
            for (std::size_t j = 0; j < k; ++j) {
                off |= ((sv >> j) & 1U) << positions[j];
            }
            terms.emplace_back(off, std::conj(v[sv]));
        }
        // Walk the complement indices in increasing order with a masked increment.
        std::vector<cplx> out(std::size_t{1} << (qubits_ - k), 0.0);
        std::size_t base = 0;
        for (auto &o : out) {
            cplx acc = 0.0;
            for (const auto &[off, c] : terms) {
                acc += c * amps_[base | off];
            }
            o = acc;
            base = ((base | mask) + 1) & ~mask;
        }
        return out;
    }

    /// Density matrix of the qubits at `keep` (keep[j] becomes qubit j).
    [[nodiscard]] Matrix reduced_density(std::span<const std::size_t> keep) const {
        std::size_t mask = 0;
        for (auto p : keep) {
            require(p < qubits_, Errc::out_of_range, "qubit out of range");
            require((mask & (std::size_t{1} << p)) == 0, Errc::invalid_argument, "duplicate qubit");
            mask |= std::size_t{1} << p;
        }
        const std::size_t d = std::size_t{1} << keep.size();
        // Group amplitudes by the traced-out index.
        std::vector<std::size_t> kept_of(amps_.size()), env_of(amps_.size());
        for (std::size_t idx = 0; idx < amps_.size(); ++idx) {
            std::size_t s = 0;
            for (std::size_t j = 0; j < keep.size(); ++j) {
                s |= ((idx >> keep[j]) & 1U) << j;
            }
            kept_of[idx] = s;
            env_of[idx] = idx & ~mask;
        }
        Matrix rho(d, d);
        const std::size_t env_dim = amps_.size();
        std::vector<std::vector<std::pair<std::size_t, cplx>>> by_env;
        std::vector<std::size_t> slot(env_dim, static_cast<std::size_t>(-1));
        for (std::size_t idx = 0; idx < amps_.size(); ++idx) {
            if (amps_[idx] == cplx{}) {
                continue;
            }
            auto &sl = slot[env_of[idx]];
            if (sl == static_cast<std::size_t>(-1)) {
                sl = by_env.size();
                by_env.emplace_back();
            }
            by_env[sl].emplace_back(kept_of[idx], amps_[idx]);
        }
        for (const auto &group : by_env) {
            for (const auto &[i, a] : group) {
                for (const auto &[j, b] : group) {
                    rho(i, j) += a * std::conj(b);
                }
            }
        }
        return rho;
    }

  private:
    static void check_width(std::size_t n) {
        require(n <= kMaxQubits, Errc::capacity_exceeded,
                "register of " + std::to_string(n) + " qubits exceeds the " + std::to_string(kMaxQubits) +
                    "-qubit limit");
    }

    friend class Register;
    std::size_t qubits_;
    std::vector<cplx> amps_;
};

inline cplx inner(const StateVector &a, const StateVector &b) {
    require(a.qubit_count() == b.qubit_count(), Errc::dimension_mismatch, "state size mismatch");
    cplx s = 0.0;
    for (std::size_t i = 0; i < a.dim(); ++i) {
        s += std::conj(a[i]) * b[i];
    }
    return s;
}

/// |<a|b>|^2.
inline double fidelity(const StateVector &a, const StateVector &b) { return std::norm(inner(a, b)); }

/// <ψ|ρ|ψ>, the fidelity of a pure state with a density matrix.
inline double fidelity(const StateVector &psi, const Matrix &rho) {
    require(rho.rows() == psi.dim() && rho.cols() == psi.dim(), Errc::dimension_mismatch,
            "state/density size mismatch");
    const auto rv = rho * psi.amplitudes();
    cplx s = 0.0;
    for (std::size_t i = 0; i < rv.size(); ++i) {
        s += std::conj(psi[i]) * rv[i];
    }
    return std::real(s);
}

/// Free-function form: returns a fresh state with `u` applied.
inline StateVector apply_gate(StateVector state, const UnitarySpec &u, std::span<const std::size_t> targets) {
    state.apply(u, targets);
    return state;
}

inline StateVector apply_gate(StateVector state, const UnitarySpec &u, std::initializer_list<std::size_t> targets) {
    state.apply(u, targets);
    return state;
}

} // namespace qsc
