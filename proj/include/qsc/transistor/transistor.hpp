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
 * Quantum transistors: gates stored as resource states with a left (input)
 * mode, a right (output) mode and a measurable bulk.
 *
 * Four kinds are supported:
 *
 *  - Wire(N): path cluster L - b1 - ... - bN - R. Measuring the bulk in the X
 *    basis from left to right applies H Z^{s_N} ... H Z^{s_1}, i.e. H^N up to
 *    a Pauli byproduct.
 *  - SChain: the Wire(2) state with b1 measured in rotated(-π/2), giving
 *    X^{s_2} Z^{s_1} S.
 *  - ChoiStored(U): (I ⊗ U)|ω>^{⊗n}, L = input halves, R = output halves.
 *  - MagicT: an ebit (L, R) plus a bulk ancilla T|+> with CNOT(R → ancilla)
 *    already applied; activation measures the ancilla and applies the adaptive
 *    S or S† correction.
 *
 * Data is teleported into a chain by a Bell measurement with L after an H on
 * L, which turns the L - b1 bond into |ω>. After activation the transistor's
 * frame F satisfies right = F · G · input for the logical gate G.
 */
#pragma once

#include <algorithm>
#include <numbers>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qsc/core/channel.hpp"
#include "qsc/core/register.hpp"
#include "qsc/transistor/frame.hpp"

namespace qsc {

class GateKind {
  public:
    enum class Tag { wire, schain, choi, magic_t };

    static GateKind wire(std::size_t n) {
        require(n >= 1, Errc::invalid_argument, "Wire(N) needs N >= 1");
        GateKind k(Tag::wire);
        k.n_ = n;
        return k;
    }
    static GateKind schain(bool dagger = false) {
        GateKind k(Tag::schain);
        k.n_ = 2;
        k.dagger_ = dagger;
        return k;
    }
    static GateKind choi(const UnitarySpec &u) {
        require(u.arity() >= 1 && u.arity() <= 2, Errc::invalid_argument, "stored gates act on one or two qubits");
        GateKind k(Tag::choi);
        k.u_ = u;
        return k;
    }
    static GateKind magic_t(bool dagger = false) {
        GateKind k(Tag::magic_t);
        k.n_ = 1;
        k.dagger_ = dagger;
        return k;
    }

    [[nodiscard]] Tag tag() const noexcept { return tag_; }
    [[nodiscard]] std::size_t bulk_length() const noexcept { return n_; }
    [[nodiscard]] bool dagger() const noexcept { return dagger_; }
    [[nodiscard]] std::size_t arity() const { return tag_ == Tag::choi ? u_->arity() : 1; }
    [[nodiscard]] const UnitarySpec &unitary() const {
        require(u_.has_value(), Errc::invalid_argument, "only stored gates carry a unitary");
        return *u_;
    }

    /// Gate applied to the logical data once the frame is removed.
    [[nodiscard]] UnitarySpec logical_gate() const {
        switch (tag_) {
            case Tag::wire: return n_ % 2 == 1 ? gates::H() : gates::I();
            case Tag::schain: return dagger_ ? gates::Sdg() : gates::S();
            case Tag::choi: return *u_;
            case Tag::magic_t: return dagger_ ? gates::Tdg() : gates::T();
        }
        return gates::I();
    }

    [[nodiscard]] std::string name() const {
        switch (tag_) {
            case Tag::wire: return "wire(" + std::to_string(n_) + ")";
            case Tag::schain: return dagger_ ? "schain_dg" : "schain";
            case Tag::choi: return "choi(" + std::to_string(u_->arity()) + ")";
            case Tag::magic_t: return dagger_ ? "magic_tdg" : "magic_t";
        }
        return "?";
    }

  private:
    explicit GateKind(Tag t) : tag_(t) {}
    Tag tag_;
    std::size_t n_ = 0;
    bool dagger_ = false;
    std::optional<UnitarySpec> u_;
};

enum class Status { fresh, consumed };

struct Transistor {
    GateKind kind = GateKind::wire(1);
    std::vector<QubitId> left;
    std::vector<QubitId> right;
    std::vector<QubitId> bulk;
    Status status = Status::fresh;
    bool reversed = false;
    bool injected = false;
    PauliFrame input_frame;
    PauliFrame frame;

    [[nodiscard]] UnitarySpec logical_gate() const {
        return reversed ? kind.logical_gate().transpose() : kind.logical_gate();
    }
    [[nodiscard]] std::size_t arity() const { return left.size(); }
};

/// Bulk outcomes in measurement order; site 1 is adjacent to the left mode.
using WireBasisOutcome = std::vector<int>;

/// Resource state of a transistor in qubit order [left..., bulk..., right...].
inline StateVector construction_state(const GateKind &kind, bool reversed = false) {
    switch (kind.tag()) {
        case GateKind::Tag::wire:
        case GateKind::Tag::schain: {
            const std::size_t n = kind.bulk_length() + 2;
            return make_cluster(StateVector(), n, path_edges(n));
        }
        case GateKind::Tag::choi:
            return choi_of_unitary(reversed ? kind.unitary().transpose() : kind.unitary()).state;
        case GateKind::Tag::magic_t: {
            auto s = StateVector::zeros(3);
            s.apply(gates::H(), {0});
            s.apply(gates::CNOT(), {0, 2});
            s.apply(gates::H(), {1});
            s.apply(gates::T(), {1});
            s.apply(gates::CNOT(), {2, 1});
            return s;
        }
    }
    return {};
}

namespace detail {

inline Transistor allocate_transistor(const GateKind &kind, Register &reg) {
    const auto ids = reg.allocate(construction_state(kind));
    Transistor t{kind};
    const std::size_t a = kind.arity(), nb = kind.bulk_length();
    t.left.assign(ids.begin(), ids.begin() + static_cast<std::ptrdiff_t>(a));
    t.bulk.assign(ids.begin() + static_cast<std::ptrdiff_t>(a), ids.begin() + static_cast<std::ptrdiff_t>(a + nb));
    t.right.assign(ids.begin() + static_cast<std::ptrdiff_t>(a + nb), ids.end());
    t.input_frame = PauliFrame::identity(a);
    t.frame = PauliFrame::identity(a);
    return t;
}

inline bool is_chain(const GateKind &k) { return k.tag() == GateKind::Tag::wire || k.tag() == GateKind::Tag::schain; }

inline void require_fresh(const Transistor &t, std::string_view what) {
    require(t.status == Status::fresh, Errc::consumed, std::string(what) + ": transistor already consumed");
}

} // namespace detail

inline Transistor build_chain_transistor(const GateKind &kind, Register &reg) {
    require(detail::is_chain(kind), Errc::invalid_argument, "chain transistors are Wire(N) or SChain");
    return detail::allocate_transistor(kind, reg);
}

inline Transistor build_choi_transistor(const UnitarySpec &u, Register &reg) {
    return detail::allocate_transistor(GateKind::choi(u), reg);
}

inline Transistor build_magic_transistor(Register &reg, bool dagger = false) {
    return detail::allocate_transistor(GateKind::magic_t(dagger), reg);
}

inline Transistor build_transistor(const GateKind &kind, Register &reg) { return detail::allocate_transistor(kind, reg); }

/// Fidelity of the live (left, bulk, right) qubits with the kind's resource
/// state. Only meaningful before injection.
inline double construction_fidelity(const Transistor &t, const Register &reg) {
    std::vector<QubitId> order = t.left;
    order.insert(order.end(), t.bulk.begin(), t.bulk.end());
    order.insert(order.end(), t.right.begin(), t.right.end());
    return fidelity(construction_state(t.kind, t.reversed), reg.reduced_density(order));
}

struct InjectionRecord {
    std::vector<MeasurementRecord> records;
    /// Logical input for outcome 0 on every leg; the actual input is
    /// t.input_frame applied to it.
    StateVector logical_input;
};

/// Prepares the input by measuring the left modes. For a chain the bond
/// receives H|v*> for measured vector v; for ebit-based kinds the right mode
/// receives |v*>.
inline InjectionRecord inject_input_by_measurement(Transistor &t, Register &reg, const Basis &basis, RngPolicy &rng) {
    detail::require_fresh(t, "inject");
    require(!t.injected, Errc::validation, "input already injected");
    const bool chain = detail::is_chain(t.kind);
    InjectionRecord out;
    PauliFrame frame;
    for (std::size_t j = 0; j < t.left.size(); ++j) {
        auto rec = reg.measure(t.left[j], basis, rng, "inject");
        const int s = rec.outcome[0];
        auto v0 = basis.vector(0);
        for (auto &c : v0) {
            c = std::conj(c);
        }
        StateVector leg = StateVector::from_amplitudes(v0);
        if (chain) {
            leg.apply(gates::H(), {0});
        }
        // Z outcome flips |v*> by X, X/rotated outcomes by Z; H swaps the two.
        const bool flip_x = (basis.kind == Basis::Kind::Z) != chain;
        const auto p = PauliOperator::single(1, 0, flip_x && s == 1, !flip_x && s == 1);
        const auto leg_frame = PauliFrame::from_pauli(p);
        frame = j == 0 ? leg_frame : frame.tensor(leg_frame);
        out.logical_input = j == 0 ? leg : out.logical_input.tensor(leg);
        out.records.push_back(std::move(rec));
    }
    t.input_frame = frame;
    t.injected = true;
    return out;
}

/// Teleports `data` (carrying `data_frame`) into the left modes. A non-Pauli
/// data frame is removed physically first.
inline std::vector<BellRecord> inject_input_by_teleport(Transistor &t, Register &reg, std::span<const QubitId> data,
                                                        RngPolicy &rng, PauliFrame data_frame = {}) {
    detail::require_fresh(t, "teleport");
    require(!t.injected, Errc::validation, "input already injected");
    require(data.size() == t.left.size(), Errc::dimension_mismatch, "data width does not match the left modes");
    if (data_frame.size() != data.size()) {
        data_frame = PauliFrame::identity(data.size());
    }
    if (!data_frame.is_pauli()) {
        reg.apply(UnitarySpec(data_frame.matrix().adjoint(), 1e-8), data);
        data_frame = PauliFrame::identity(data.size());
    }
    if (detail::is_chain(t.kind)) {
        reg.apply(gates::H(), {t.left[0]});
    }
    std::vector<BellRecord> out;
    PauliFrame bell;
    for (std::size_t j = 0; j < data.size(); ++j) {
        const auto rec = reg.bell_measure(data[j], t.left[j], rng, "teleport");
        // Receiver holds (X^a Z^b)† ψ = Z^b X^a ψ.
        const auto p = PauliOperator::single(1, 0, rec.a == 1, rec.b == 1).adjoint();
        const auto leg = PauliFrame::from_pauli(p);
        bell = j == 0 ? leg : bell.tensor(leg);
        out.push_back(rec);
    }
    t.input_frame = bell * data_frame;
    t.injected = true;
    return out;
}

/// Measures the bulk and updates t.frame so that right = frame · G · input.
inline WireBasisOutcome activate(Transistor &t, Register &reg, RngPolicy &rng) {
    require(t.status == Status::fresh, Errc::consumed, "transistor already activated; refresh it first");
    require(t.injected, Errc::validation, "activate called before an input was injected");
    WireBasisOutcome bits;
    Matrix m = Matrix::identity(std::size_t{1} << t.arity());
    switch (t.kind.tag()) {
        case GateKind::Tag::wire:
        case GateKind::Tag::schain:
            for (std::size_t i = 0; i < t.bulk.size(); ++i) {
                const bool rotated = t.kind.tag() == GateKind::Tag::schain && i == 0;
                const Basis b = rotated ? Basis::rotated(-std::numbers::pi / 2) : Basis::x();
                const int s = reg.measure(t.bulk[i], b, rng, "bulk").outcome[0];
                Matrix f = s ? gates::Z().matrix() : gates::I().matrix();
                if (rotated) {
                    f = f * gates::S().matrix();
                }
                m = gates::H().matrix() * f * m;
                bits.push_back(s);
            }
            break;
        case GateKind::Tag::choi: m = t.logical_gate().matrix(); break;
        case GateKind::Tag::magic_t: {
            const auto p = t.input_frame.pauli();
            require(p.has_value(), Errc::invalid_argument, "magic activation needs a Pauli input frame");
            const bool a = p->x(0), dg = t.kind.dagger();
            const int mbit = reg.measure(t.bulk[0], Basis::z(), rng, "magic").outcome[0];
            m = mbit == 0 ? gates::T().matrix() : gates::Tdg().matrix();
            if ((mbit ^ static_cast<int>(a)) == (dg ? 0 : 1)) {
                const UnitarySpec c = a == dg ? gates::S() : gates::Sdg();
                reg.apply(c, {t.right[0]});
                m = c.matrix() * m;
            }
            bits.push_back(mbit);
            break;
        }
    }
    t.frame = PauliFrame::from_matrix(m * t.input_frame.matrix() * t.logical_gate().matrix().adjoint());
    t.status = Status::consumed;
    return bits;
}

/// Classical Eq.-(3)-style bookkeeping: splits the physical product induced by
/// `o` into (logical gate, Pauli byproduct) with physical = byproduct · logical.
inline std::pair<UnitarySpec, PauliOperator> induced_gate(const WireBasisOutcome &o, const GateKind &kind) {
    require(o.size() == kind.bulk_length(), Errc::dimension_mismatch, "outcome length does not match the bulk");
    if (kind.tag() == GateKind::Tag::choi) {
        return {kind.unitary(), PauliOperator::identity(kind.arity())};
    }
    if (kind.tag() == GateKind::Tag::magic_t) {
        return {kind.logical_gate(), PauliOperator::identity(1)};
    }
    Matrix m = Matrix::identity(2);
    for (std::size_t i = 0; i < o.size(); ++i) {
        Matrix f = o[i] ? gates::Z().matrix() : gates::I().matrix();
        if (kind.tag() == GateKind::Tag::schain && i == 0) {
            f = f * gates::S().matrix();
        }
        m = gates::H().matrix() * f * m;
    }
    const auto g = kind.logical_gate();
    auto p = PauliOperator::from_matrix(m * g.matrix().adjoint());
    require(p.has_value(), Errc::invalid_argument, "byproduct is not a Pauli operator");
    return {g, *p};
}

/// Standalone injection: CNOT(target → ancilla T|+>), Z measurement, then S on
/// outcome 1 (for T†: S† on outcome 0). Net effect T (T†) on the target.
inline MeasurementRecord inject_magic_T(Register &reg, QubitId target, RngPolicy &rng, bool dagger = false) {
    auto anc = StateVector::plus(1);
    anc.apply(gates::T(), {0});
    const QubitId a = reg.allocate(anc).front();
    reg.apply(gates::CNOT(), {target, a});
    auto rec = reg.measure(a, Basis::z(), rng, "magic");
    if (!dagger && rec.outcome[0] == 1) {
        reg.apply(gates::S(), {target});
    } else if (dagger && rec.outcome[0] == 0) {
        reg.apply(gates::Sdg(), {target});
    }
    return rec;
}

/// Exchanges the roles of the left and right modes; activation then
/// implements the transpose of the stored gate.
inline Transistor run_backward(const Transistor &t) {
    detail::require_fresh(t, "run_backward");
    require(!t.injected, Errc::validation, "cannot reverse a transistor after injection");
    Transistor r = t;
    std::swap(r.left, r.right);
    std::reverse(r.bulk.begin(), r.bulk.end());
    r.reversed = !t.reversed;
    return r;
}

/// S ↔ S† (same measurements, one extra Z in the frame) and T ↔ T† (swapped
/// feedforward).
inline GateKind conjugate_variant(const GateKind &kind) {
    switch (kind.tag()) {
        case GateKind::Tag::schain: return GateKind::schain(!kind.dagger());
        case GateKind::Tag::magic_t: return GateKind::magic_t(!kind.dagger());
        default: fail(Errc::invalid_argument, "only SChain and MagicT have conjugate variants");
    }
}

/// Rebuilds a consumed transistor on fresh qubits. The old right modes stay
/// live in the register; they carry the output data.
inline Transistor refresh(const Transistor &t, Register &reg) {
    require(t.status == Status::consumed, Errc::validation, "refresh of a fresh transistor");
    Transistor r = detail::allocate_transistor(t.kind, reg);
    return t.reversed ? run_backward(r) : r;
}

/// Applies frame† to the right modes so that they hold G · input exactly.
inline void resolve_frame(Transistor &t, Register &reg) {
    const Matrix &f = t.frame.matrix();
    if (f.max_abs_diff(Matrix::identity(f.rows())) > 1e-14) {
        reg.apply(UnitarySpec(f.adjoint(), 1e-8), t.right);
    }
    t.frame = PauliFrame::identity(t.right.size());
}

} // namespace qsc
