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
 * Cycle-by-cycle execution of a CircuitIR.
 *
 * A ScheduleWalker turns the IR into operations on logical wires (one wire per
 * qubit of data) and forwards them to a Backend:
 *
 *  - PhysicalBackend runs the transistors on a Register and tracks a Pauli
 *    frame per wire;
 *  - OracleBackend applies each transistor's logical gate directly, i.e. the
 *    equivalent combinational circuit;
 *  - NullBackend does nothing, so a walk with it is a static validation.
 *
 * Ebit links and loops are resolved when the consuming transistor is
 * signaled: the data is teleported into its input legs at that moment.
 */
#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "qsc/seqexec/ir.hpp"

namespace qsc {

using WireId = std::size_t;

struct ReadoutResult {
    std::vector<int> outcome;
    double probability = 1.0;
    std::vector<double> distribution; ///< Exact, computed before collapse.
};

struct SignalInput {
    const InputPrep *prep = nullptr;
    std::vector<WireId> wires;
};

struct SignalDetail {
    std::vector<int> bell;
    std::vector<int> bulk;
    std::string frame;
};

class Backend {
  public:
    virtual ~Backend() = default;
    virtual void declare(std::size_t t, const TransistorDecl &decl) = 0;
    virtual void new_wires(const std::vector<WireId> &wires, const StateVector &state) = 0;
    virtual SignalDetail signal(std::size_t t, const SignalInput &in, const std::vector<WireId> &outs,
                                RngPolicy &rng) = 0;
    virtual void refresh(std::size_t t) = 0;
    virtual void gate(const UnitarySpec &u, const std::vector<WireId> &wires) = 0;
    virtual ReadoutResult readout(const std::vector<WireId> &wires, Basis::Kind basis, RngPolicy &rng) = 0;
    virtual void end_cycle(int /*cycle*/, const std::vector<WireId> & /*live*/) {}
};

class NullBackend final : public Backend {
  public:
    void declare(std::size_t, const TransistorDecl &) override {}
    void new_wires(const std::vector<WireId> &, const StateVector &) override {}
    SignalDetail signal(std::size_t, const SignalInput &, const std::vector<WireId> &, RngPolicy &) override {
        return {};
    }
    void refresh(std::size_t) override {}
    void gate(const UnitarySpec &, const std::vector<WireId> &) override {}
    ReadoutResult readout(const std::vector<WireId> &w, Basis::Kind, RngPolicy &) override {
        return {std::vector<int>(w.size(), 0), 1.0, {}};
    }
};

/// Joint outcome distribution of a density matrix measured qubit-wise in
/// `basis`; outcome bit j belongs to qubit j.
inline std::vector<double> readout_distribution(const Matrix &rho, Basis::Kind basis) {
    const std::size_t k = log2_exact(rho.rows());
    const Basis b{basis, 0.0};
    std::vector<double> p(rho.rows());
    for (std::size_t o = 0; o < rho.rows(); ++o) {
        std::vector<cplx> v{1.0};
        for (std::size_t j = 0; j < k; ++j) {
            const auto bj = b.vector(static_cast<int>((o >> j) & 1U));
            std::vector<cplx> w(v.size() * 2);
            for (std::size_t hi = 0; hi < 2; ++hi) {
                for (std::size_t lo = 0; lo < v.size(); ++lo) {
                    w[hi * v.size() + lo] = bj[hi] * v[lo];
                }
            }
            v = std::move(w);
        }
        const auto rv = rho * v;
        cplx s = 0.0;
        for (std::size_t i = 0; i < v.size(); ++i) {
            s += std::conj(v[i]) * rv[i];
        }
        p[o] = std::max(0.0, s.real());
    }
    return p;
}

inline StateVector label_product(char label, std::size_t n) {
    StateVector s;
    for (std::size_t j = 0; j < n; ++j) {
        s = s.tensor(StateVector::from_label(label));
    }
    return s;
}

/// State requested by an input preparation for a transistor of `arity` legs.
inline StateVector prep_state(const InputPrep &p, std::size_t arity) {
    if (p.state.text.size() == 1) {
        return label_product(p.state.text[0], arity);
    }
    return p.state.state;
}

// ---------------------------------------------------------------------------

class PhysicalBackend : public Backend {
  public:
    explicit PhysicalBackend(std::size_t capacity = kMaxQubits, bool correct_frames = true)
        : reg_(capacity), correct_(correct_frames) {}

    void declare(std::size_t t, const TransistorDecl &decl) override {
        if (ts_.size() <= t) {
            ts_.resize(t + 1);
        }
        auto tr = build_transistor(decl.kind, reg_);
        ts_[t] = decl.backward ? run_backward(tr) : tr;
    }

    void new_wires(const std::vector<WireId> &wires, const StateVector &state) override {
        const auto ids = reg_.allocate(state);
        for (std::size_t j = 0; j < wires.size(); ++j) {
            qubit_[wires[j]] = ids[j];
            frame_[wires[j]] = PauliOperator::identity(1);
        }
    }

    SignalDetail signal(std::size_t t, const SignalInput &in, const std::vector<WireId> &outs,
                        RngPolicy &rng) override {
        Transistor &tr = *ts_.at(t);
        SignalDetail d;
        const std::size_t n = tr.arity();
        if (in.prep != nullptr && in.prep->mode == InjectMode::measure) {
            inject_by_measurement(tr, *in.prep, rng, d);
        } else if (in.prep != nullptr) {
            const auto data = reg_.allocate(prep_state(*in.prep, n));
            for (const auto &b : inject_input_by_teleport(tr, reg_, data, rng)) {
                d.bell.push_back(b.a);
                d.bell.push_back(b.b);
            }
        } else {
            std::vector<QubitId> data;
            PauliFrame f;
            for (std::size_t j = 0; j < in.wires.size(); ++j) {
                data.push_back(qubit_.at(in.wires[j]));
                const auto leg = PauliFrame::from_pauli(correct_ ? frame_.at(in.wires[j]) : PauliOperator::identity(1));
                f = j == 0 ? leg : f.tensor(leg);
                forget(in.wires[j]);
            }
            for (const auto &b : inject_input_by_teleport(tr, reg_, data, rng, f)) {
                d.bell.push_back(b.a);
                d.bell.push_back(b.b);
            }
        }
        if (!correct_) {
            tr.input_frame = PauliFrame::identity(n);
        }
        d.bulk = activate(tr, reg_, rng);
        if (!tr.frame.is_pauli()) {
            resolve_frame(tr, reg_);
        }
        d.frame = tr.frame.to_string();
        const auto p = *tr.frame.pauli();
        for (std::size_t j = 0; j < outs.size(); ++j) {
            qubit_[outs[j]] = tr.right[j];
            frame_[outs[j]] =
                correct_ ? PauliOperator::single(1, 0, p.x(j), p.z(j)) : PauliOperator::identity(1);
        }
        return d;
    }

    void refresh(std::size_t t) override { ts_.at(t) = qsc::refresh(*ts_.at(t), reg_); }

    void gate(const UnitarySpec &u, const std::vector<WireId> &wires) override {
        std::vector<QubitId> q;
        for (auto w : wires) {
            resolve(w);
            q.push_back(qubit_.at(w));
        }
        reg_.apply(u, q);
    }

    ReadoutResult readout(const std::vector<WireId> &wires, Basis::Kind basis, RngPolicy &rng) override {
        std::vector<QubitId> q;
        for (auto w : wires) {
            resolve(w);
            q.push_back(qubit_.at(w));
        }
        ReadoutResult r;
        r.distribution = readout_distribution(reg_.reduced_density(q), basis);
        for (std::size_t j = 0; j < q.size(); ++j) {
            const auto rec = reg_.measure(q[j], Basis{basis, 0.0}, rng, "readout");
            r.outcome.push_back(rec.outcome[0]);
            r.probability *= rec.probability;
            forget(wires[j]);
        }
        return r;
    }

    /// Density matrix of `wires` (in that order) with every frame removed.
    [[nodiscard]] Matrix corrected_density(const std::vector<WireId> &wires) const {
        StateVector s = reg_.state();
        std::vector<std::size_t> pos;
        for (auto w : wires) {
            const std::size_t p = reg_.position(qubit_.at(w));
            const auto &f = frame_.at(w);
            if (!f.is_identity_up_to_phase()) {
                s.apply(UnitarySpec(f.matrix().adjoint()), {p});
            }
            pos.push_back(p);
        }
        return s.reduced_density(pos);
    }

    [[nodiscard]] const Register &reg() const noexcept { return reg_; }
    [[nodiscard]] const PauliOperator &wire_frame(WireId w) const { return frame_.at(w); }

  private:
    void inject_by_measurement(Transistor &tr, const InputPrep &prep, RngPolicy &rng, SignalDetail &d) {
        const char label = prep.state.text.at(0);
        const bool chain = tr.kind.tag() == GateKind::Tag::wire || tr.kind.tag() == GateKind::Tag::schain;
        const bool computational = label == '0' || label == '1';
        const Basis basis = computational != chain ? Basis::z() : Basis::x();
        const auto rec = inject_input_by_measurement(tr, reg_, basis, rng);
        for (const auto &r : rec.records) {
            d.bell.push_back(r.outcome[0]);
        }
        // The canonical input is |0> or |+>; '1' and '-' add an X or Z.
        if (label == '1' || label == '-') {
            PauliFrame flip;
            for (std::size_t j = 0; j < tr.arity(); ++j) {
                const auto leg = PauliFrame::from_pauli(PauliOperator::single(1, 0, label == '1', label == '-'));
                flip = j == 0 ? leg : flip.tensor(leg);
            }
            tr.input_frame = tr.input_frame * flip;
        }
    }

    void resolve(WireId w) {
        auto &f = frame_.at(w);
        if (correct_ && !f.is_identity_up_to_phase()) {
            reg_.apply(UnitarySpec(f.matrix().adjoint()), {qubit_.at(w)});
        }
        f = PauliOperator::identity(1);
    }

    void forget(WireId w) {
        qubit_.erase(w);
        frame_.erase(w);
    }

    Register reg_;
    bool correct_;
    std::vector<std::optional<Transistor>> ts_;
    std::map<WireId, QubitId> qubit_;
    std::map<WireId, PauliOperator> frame_;
};

// ---------------------------------------------------------------------------

class OracleBackend : public Backend {
  public:
    void declare(std::size_t t, const TransistorDecl &decl) override {
        if (gates_.size() <= t) {
            gates_.resize(t + 1);
        }
        gates_[t] = decl.backward ? decl.kind.logical_gate().transpose() : decl.kind.logical_gate();
    }

    void new_wires(const std::vector<WireId> &wires, const StateVector &state) override {
        state_ = state_.tensor(state);
        order_.insert(order_.end(), wires.begin(), wires.end());
    }

    SignalDetail signal(std::size_t t, const SignalInput &in, const std::vector<WireId> &outs,
                        RngPolicy &) override {
        const UnitarySpec &g = *gates_.at(t);
        if (in.prep != nullptr) {
            new_wires(outs, prep_state(*in.prep, g.arity()));
        } else {
            for (std::size_t j = 0; j < in.wires.size(); ++j) {
                *std::find(order_.begin(), order_.end(), in.wires[j]) = outs[j];
            }
        }
        state_.apply(g, positions(outs));
        return {};
    }

    void refresh(std::size_t) override {}

    void gate(const UnitarySpec &u, const std::vector<WireId> &wires) override { state_.apply(u, positions(wires)); }

    ReadoutResult readout(const std::vector<WireId> &wires, Basis::Kind basis, RngPolicy &rng) override {
        ReadoutResult r;
        r.distribution = readout_distribution(state_.reduced_density(positions(wires)), basis);
        for (auto w : wires) {
            const auto p = static_cast<std::size_t>(std::find(order_.begin(), order_.end(), w) - order_.begin());
            auto [rec, post] = measure(state_, p, Basis{basis, 0.0}, rng, "oracle readout");
            state_ = std::move(post);
            order_.erase(order_.begin() + static_cast<std::ptrdiff_t>(p));
            r.outcome.push_back(rec.outcome[0]);
            r.probability *= rec.probability;
        }
        return r;
    }

    [[nodiscard]] StateVector state_of(const std::vector<WireId> &wires) const {
        require(wires.size() == order_.size(), Errc::dimension_mismatch, "oracle wire set mismatch");
        return state_.permuted(positions(wires));
    }

  private:
    [[nodiscard]] std::vector<std::size_t> positions(const std::vector<WireId> &wires) const {
        std::vector<std::size_t> p;
        for (auto w : wires) {
            const auto it = std::find(order_.begin(), order_.end(), w);
            require(it != order_.end(), Errc::validation, "oracle lost track of a wire");
            p.push_back(static_cast<std::size_t>(it - order_.begin()));
        }
        return p;
    }

    std::vector<std::optional<UnitarySpec>> gates_;
    StateVector state_;
    std::vector<WireId> order_;
};

// ---------------------------------------------------------------------------

/// Runs the physical backend and the oracle side by side. After every cycle
/// the frame-corrected live wires are compared with the oracle state; every
/// readout distribution is compared by total-variation distance, with the
/// oracle forced to the physical outcome.
class VerifyBackend final : public Backend {
  public:
    VerifyBackend(std::size_t capacity, bool correct_frames) : phys_(capacity, correct_frames) {}

    void declare(std::size_t t, const TransistorDecl &d) override {
        phys_.declare(t, d);
        oracle_.declare(t, d);
    }
    void new_wires(const std::vector<WireId> &w, const StateVector &s) override {
        phys_.new_wires(w, s);
        oracle_.new_wires(w, s);
    }
    SignalDetail signal(std::size_t t, const SignalInput &in, const std::vector<WireId> &outs,
                        RngPolicy &rng) override {
        auto d = phys_.signal(t, in, outs, rng);
        if (!diverged_) {
            (void)oracle_.signal(t, in, outs, rng);
        }
        return d;
    }
    void refresh(std::size_t t) override { phys_.refresh(t); }
    void gate(const UnitarySpec &u, const std::vector<WireId> &w) override {
        phys_.gate(u, w);
        if (!diverged_) {
            oracle_.gate(u, w);
        }
    }
    ReadoutResult readout(const std::vector<WireId> &w, Basis::Kind b, RngPolicy &rng) override {
        auto r = phys_.readout(w, b, rng);
        if (!diverged_) {
            auto forced = RngPolicy::forced(r.outcome);
            try {
                const auto o = oracle_.readout(w, b, forced);
                double tv = 0.0;
                for (std::size_t i = 0; i < o.distribution.size(); ++i) {
                    tv += std::abs(o.distribution[i] - r.distribution[i]);
                }
                max_tv_ = std::max(max_tv_, 0.5 * tv);
            } catch (const Error &e) {
                if (e.code() != Errc::forced_zero_probability) {
                    throw;
                }
                diverged_ = true;
                max_tv_ = std::max(max_tv_, 1.0);
                max_deficit_ = 1.0;
            }
        }
        return r;
    }
    void end_cycle(int, const std::vector<WireId> &live) override {
        if (diverged_ || live.empty()) {
            return;
        }
        const Matrix rho = phys_.corrected_density(live);
        const double f = fidelity(oracle_.state_of(live), rho);
        max_deficit_ = std::max(max_deficit_, 1.0 - f);
        ++checks_;
    }

    [[nodiscard]] double max_deficit() const noexcept { return max_deficit_; }
    [[nodiscard]] double max_tv() const noexcept { return max_tv_; }
    [[nodiscard]] std::size_t checks() const noexcept { return checks_; }
    [[nodiscard]] bool diverged() const noexcept { return diverged_; }
    [[nodiscard]] const PhysicalBackend &physical() const noexcept { return phys_; }

  private:
    PhysicalBackend phys_;
    OracleBackend oracle_;
    double max_deficit_ = 0.0;
    double max_tv_ = 0.0;
    std::size_t checks_ = 0;
    bool diverged_ = false;
};

// ---------------------------------------------------------------------------

struct ActionLog {
    int cycle = 0;
    std::size_t line = 0;
    std::string action;
    std::string target;
    std::vector<int> bell;
    std::vector<int> bulk;
    std::string frame;
};

struct ReadoutRecord {
    int cycle = 0;
    std::string target;
    std::string basis;
    std::vector<int> outcome;
    double probability = 1.0;
    std::vector<double> distribution;
};

struct WalkResult {
    std::vector<ActionLog> log;
    std::vector<ReadoutRecord> readouts;
    std::vector<WireId> live;
};

namespace detail {

[[noreturn]] inline void invalid(std::size_t line, const std::string &what) {
    fail(Errc::validation, (line ? "line " + std::to_string(line) + ": " : std::string()) + what);
}

} // namespace detail

/// Validates the IR and drives `backend` through it cycle by cycle.
class ScheduleWalker {
  public:
    ScheduleWalker(const CircuitIR &ir, Backend &backend, RngPolicy &rng) : ir_(ir), be_(backend), rng_(rng) {}

    WalkResult run() {
        validate_declarations();
        for (std::size_t i = 0; i < ir_.transistors.size(); ++i) {
            be_.declare(i, ir_.transistors[i]);
        }
        for (const auto &q : ir_.qubits) {
            require(q.state.state.qubit_count() == 1, Errc::validation, "qubit " + q.id + " must hold one qubit");
            const WireId w = next_++;
            be_.new_wires({w}, q.state.state);
            qubit_wire_[q.id] = w;
            result_.live.push_back(w);
        }
        std::vector<const Action *> order;
        for (const auto &a : ir_.actions) {
            if (a.cycle < 1) {
                detail::invalid(a.line, "cycle must be >= 1");
            }
            order.push_back(&a);
        }
        std::stable_sort(order.begin(), order.end(), [](auto *a, auto *b) { return a->cycle < b->cycle; });
        std::size_t i = 0;
        while (i < order.size()) {
            const int c = order[i]->cycle;
            std::map<std::string, std::size_t> touched;
            for (; i < order.size() && order[i]->cycle == c; ++i) {
                for (const auto &r : resources(*order[i])) {
                    const auto [it, inserted] = touched.emplace(r, order[i]->line);
                    if (!inserted) {
                        detail::invalid(order[i]->line, "cycle " + std::to_string(c) + " touches " + r +
                                                            " twice (also line " + std::to_string(it->second) +
                                                            ")");
                    }
                }
                step(*order[i]);
            }
            be_.end_cycle(c, result_.live);
        }
        return result_;
    }

  private:
    struct Source {
        enum class Kind { none, out, qubit, loop } kind = Kind::none;
        std::size_t t = 0;
        std::size_t leg = 0;
        std::string qubit;
    };
    struct TState {
        std::size_t arity = 1;
        bool fresh = true;
        int rounds = 0;
        std::vector<std::optional<WireId>> outputs;
        std::vector<Source> sources;
        const InputPrep *prep = nullptr;
    };

    std::size_t tindex(const std::string &id, std::size_t line) const {
        for (std::size_t i = 0; i < ir_.transistors.size(); ++i) {
            if (ir_.transistors[i].id == id) return i;
        }
        detail::invalid(line, "unknown transistor '" + id + "'");
    }

    /// Expands a transistor leg reference into leg indices.
    std::vector<std::size_t> legs(const ModeRef &m, std::size_t line) const {
        const auto &t = ts_[tindex(m.node, line)];
        if (m.index) {
            if (*m.index >= t.arity) {
                detail::invalid(line, "leg index out of range in " + m.to_string());
            }
            return {*m.index};
        }
        std::vector<std::size_t> v(t.arity);
        for (std::size_t j = 0; j < t.arity; ++j) v[j] = j;
        return v;
    }

    void validate_declarations() {
        if (ir_.format != 1) {
            detail::invalid(0, "unsupported format " + std::to_string(ir_.format));
        }
        if (ir_.budget && *ir_.budget > kMaxQubits) {
            detail::invalid(0, "budget exceeds " + std::to_string(kMaxQubits) + " qubits");
        }
        std::set<std::string> names;
        for (const auto &t : ir_.transistors) {
            if (!names.insert(t.id).second) detail::invalid(t.line, "duplicate id '" + t.id + "'");
        }
        for (const auto &q : ir_.qubits) {
            if (!names.insert(q.id).second) detail::invalid(q.line, "duplicate id '" + q.id + "'");
        }
        ts_.resize(ir_.transistors.size());
        for (std::size_t i = 0; i < ts_.size(); ++i) {
            ts_[i].arity = ir_.transistors[i].kind.arity();
            ts_[i].outputs.assign(ts_[i].arity, std::nullopt);
            ts_[i].sources.assign(ts_[i].arity, Source{});
        }
        std::set<std::string> linked_qubits;
        for (const auto &l : ir_.links) {
            if (l.b.kind != ModeRef::Kind::in) {
                detail::invalid(l.line, "ebit b= must be a transistor input");
            }
            const std::size_t tb = tindex(l.b.node, l.line);
            const auto bl = legs(l.b, l.line);
            std::vector<Source> src;
            if (l.a.kind == ModeRef::Kind::qubit) {
                if (ir_.find_qubit(l.a.node) == nullptr) detail::invalid(l.line, "unknown qubit '" + l.a.node + "'");
                if (!linked_qubits.insert(l.a.node).second) {
                    detail::invalid(l.line, "qubit '" + l.a.node + "' is linked twice");
                }
                src.push_back({Source::Kind::qubit, 0, 0, l.a.node});
            } else if (l.a.kind == ModeRef::Kind::out) {
                const std::size_t ta = tindex(l.a.node, l.line);
                if (ta == tb) detail::invalid(l.line, "ebit from a transistor to itself; use loop");
                for (auto j : legs(l.a, l.line)) src.push_back({Source::Kind::out, ta, j, {}});
            } else {
                detail::invalid(l.line, "ebit a= must be a transistor output or a qubit");
            }
            if (src.size() != bl.size()) detail::invalid(l.line, "ebit endpoints have different widths");
            for (std::size_t j = 0; j < bl.size(); ++j) {
                auto &slot = ts_[tb].sources[bl[j]];
                if (slot.kind != Source::Kind::none) detail::invalid(l.line, "input leg already has a source");
                slot = src[j];
            }
        }
        for (const auto &lp : ir_.loops) {
            auto &t = ts_[tindex(lp.id, lp.line)];
            for (auto &s : t.sources) {
                if (s.kind != Source::Kind::none) detail::invalid(lp.line, "loop on a leg that already has a source");
                s.kind = Source::Kind::loop;
            }
        }
        for (const auto &in : ir_.inputs) {
            auto &t = ts_[tindex(in.id, in.line)];
            if (t.prep != nullptr) detail::invalid(in.line, "second input for '" + in.id + "'");
            for (const auto &s : t.sources) {
                if (s.kind == Source::Kind::out || s.kind == Source::Kind::qubit) {
                    detail::invalid(in.line, "input on a leg that is fed by an ebit");
                }
            }
            const bool label = in.state.text.size() == 1;
            if (in.mode == InjectMode::measure && !label) {
                detail::invalid(in.line, "mode=measure needs a label state");
            }
            if (!label && in.state.state.qubit_count() != t.arity) {
                detail::invalid(in.line, "input state width does not match the transistor");
            }
            t.prep = &in;
        }
        for (std::size_t i = 0; i < ts_.size(); ++i) {
            for (std::size_t j = 0; j < ts_[i].arity; ++j) {
                if (ts_[i].sources[j].kind == Source::Kind::none && ts_[i].prep == nullptr) {
                    detail::invalid(ir_.transistors[i].line,
                                    "input leg " + ir_.transistors[i].id + ".in[" + std::to_string(j) + "] has no source");
                }
            }
        }
    }

    std::vector<std::string> resources(const Action &a) const {
        std::vector<std::string> r;
        auto leg_names = [&](const ModeRef &m) {
            if (m.kind == ModeRef::Kind::qubit) {
                r.push_back(m.node);
                return;
            }
            for (auto j : legs(m, a.line)) r.push_back(m.node + ".out[" + std::to_string(j) + "]");
        };
        std::visit(
            [&](const auto &op) {
                using T = std::decay_t<decltype(op)>;
                if constexpr (std::is_same_v<T, SignalAction>) {
                    const std::size_t t = tindex(op.id, a.line);
                    r.push_back(op.id);
                    for (std::size_t j = 0; j < ts_[t].arity; ++j) {
                        r.push_back(op.id + ".out[" + std::to_string(j) + "]");
                        const auto &s = ts_[t].sources[j];
                        if (s.kind == Source::Kind::out) {
                            r.push_back(ir_.transistors[s.t].id + ".out[" + std::to_string(s.leg) + "]");
                        } else if (s.kind == Source::Kind::qubit) {
                            r.push_back(s.qubit);
                        }
                    }
                } else if constexpr (std::is_same_v<T, RefreshAction>) {
                    (void)tindex(op.id, a.line);
                    r.push_back(op.id);
                } else if constexpr (std::is_same_v<T, GateAction>) {
                    for (const auto &m : op.targets) leg_names(m);
                    if (op.condition) r.push_back("readout:" + *op.condition);
                } else {
                    leg_names(op.target);
                    r.push_back("readout:" + op.target.to_string());
                }
            },
            a.op);
        std::sort(r.begin(), r.end());
        r.erase(std::unique(r.begin(), r.end()), r.end());
        return r;
    }

    /// Wires addressed by a gate or readout target.
    std::vector<WireId> wires_of(const ModeRef &m, std::size_t line) {
        std::vector<WireId> w;
        if (m.kind == ModeRef::Kind::qubit) {
            if (ir_.find_qubit(m.node) == nullptr) detail::invalid(line, "unknown qubit '" + m.node + "'");
            const auto it = qubit_wire_.find(m.node);
            if (it == qubit_wire_.end()) detail::invalid(line, "qubit '" + m.node + "' no longer holds data");
            w.push_back(it->second);
            return w;
        }
        if (m.kind == ModeRef::Kind::in) detail::invalid(line, "inputs cannot be addressed directly");
        const auto &t = ts_[tindex(m.node, line)];
        for (auto j : legs(m, line)) {
            if (!t.outputs[j]) detail::invalid(line, m.to_string() + " holds no data");
            w.push_back(*t.outputs[j]);
        }
        return w;
    }

    void drop(const ModeRef &m, std::size_t line) {
        for (auto w : wires_of(m, line)) {
            std::erase(result_.live, w);
        }
        if (m.kind == ModeRef::Kind::qubit) {
            qubit_wire_.erase(m.node);
        } else {
            auto &t = ts_[tindex(m.node, line)];
            for (auto j : legs(m, line)) t.outputs[j].reset();
        }
    }

    void step(const Action &a) {
        ActionLog entry{a.cycle, a.line, "", "", {}, {}, ""};
        std::visit(
            [&](const auto &op) {
                using T = std::decay_t<decltype(op)>;
                if constexpr (std::is_same_v<T, SignalAction>) {
                    entry.action = "signal";
                    entry.target = op.id;
                    do_signal(tindex(op.id, a.line), a.line, entry);
                } else if constexpr (std::is_same_v<T, RefreshAction>) {
                    entry.action = "refresh";
                    entry.target = op.id;
                    auto &t = ts_[tindex(op.id, a.line)];
                    if (t.fresh) detail::invalid(a.line, "refresh of fresh transistor '" + op.id + "'");
                    be_.refresh(tindex(op.id, a.line));
                    t.fresh = true;
                } else if constexpr (std::is_same_v<T, GateAction>) {
                    entry.action = "gate " + op.name;
                    const auto u = gates::by_name(op.name);
                    if (!u) detail::invalid(a.line, "unknown gate '" + op.name + "'");
                    std::vector<WireId> w;
                    for (const auto &m : op.targets) {
                        for (auto x : wires_of(m, a.line)) {
                            if (std::find(w.begin(), w.end(), x) != w.end()) {
                                detail::invalid(a.line, "repeated gate target");
                            }
                            w.push_back(x);
                        }
                        entry.target += (entry.target.empty() ? "" : ",") + m.to_string();
                    }
                    if (w.size() != u->arity()) detail::invalid(a.line, "gate " + op.name + " has the wrong arity");
                    bool apply = true;
                    if (op.condition) {
                        const auto it = readout_values_.find(*op.condition);
                        if (it == readout_values_.end()) {
                            detail::invalid(a.line, "condition '" + *op.condition + "' has not been read out");
                        }
                        apply = it->second == 1;
                        entry.action += " if " + *op.condition;
                    }
                    if (apply) {
                        be_.gate(*u, w);
                    } else {
                        entry.action += " (skipped)";
                    }
                } else {
                    entry.action = "readout";
                    entry.target = op.target.to_string();
                    const auto w = wires_of(op.target, a.line);
                    ReadoutResult r;
                    try {
                        r = be_.readout(w, op.basis, rng_);
                    } catch (const Error &e) {
                        if (e.code() != Errc::forced_zero_probability && e.code() != Errc::forced_exhausted) throw;
                        fail(e.code(), std::string(e.what()) + " (readout " + entry.target + ", line " +
                                           std::to_string(a.line) + ", cycle " + std::to_string(a.cycle) + ")");
                    }
                    drop(op.target, a.line);
                    if (r.outcome.size() == 1) {
                        readout_values_[op.target.to_string()] = r.outcome[0];
                    }
                    entry.bulk = r.outcome;
                    result_.readouts.push_back({a.cycle, entry.target, op.basis == Basis::Kind::Z ? "Z" : "X",
                                                r.outcome, r.probability, r.distribution});
                }
            },
            a.op);
        result_.log.push_back(std::move(entry));
    }

    void do_signal(std::size_t ti, std::size_t line, ActionLog &entry) {
        auto &t = ts_[ti];
        const auto &id = ir_.transistors[ti].id;
        if (!t.fresh) detail::invalid(line, "transistor '" + id + "' signaled twice without refresh");
        SignalInput in;
        const bool use_prep = t.prep != nullptr && t.rounds == 0;
        if (use_prep) {
            in.prep = t.prep;
        } else {
            for (std::size_t j = 0; j < t.arity; ++j) {
                const auto &s = t.sources[j];
                std::optional<WireId> w;
                switch (s.kind) {
                    case Source::Kind::out: w = ts_[s.t].outputs[s.leg]; break;
                    case Source::Kind::loop: w = t.outputs[j]; break;
                    case Source::Kind::qubit: {
                        const auto it = qubit_wire_.find(s.qubit);
                        if (it != qubit_wire_.end()) w = it->second;
                        break;
                    }
                    case Source::Kind::none: detail::invalid(line, "input of '" + id + "' was already used");
                }
                if (!w) {
                    detail::invalid(line, "input leg " + id + ".in[" + std::to_string(j) +
                                              "] has no data yet (a signal cannot read a later cycle)");
                }
                in.wires.push_back(*w);
            }
        }
        std::vector<WireId> outs;
        for (std::size_t j = 0; j < t.arity; ++j) outs.push_back(next_++);
        const auto d = be_.signal(ti, in, outs, rng_);
        // Consume the sources.
        if (!use_prep) {
            for (std::size_t j = 0; j < t.arity; ++j) {
                const auto &s = t.sources[j];
                if (s.kind == Source::Kind::out) ts_[s.t].outputs[s.leg].reset();
                if (s.kind == Source::Kind::qubit) qubit_wire_.erase(s.qubit);
                std::erase(result_.live, in.wires[j]);
            }
        }
        for (std::size_t j = 0; j < t.arity; ++j) {
            t.outputs[j] = outs[j];
            result_.live.push_back(outs[j]);
        }
        t.fresh = false;
        ++t.rounds;
        entry.bell = d.bell;
        entry.bulk = d.bulk;
        entry.frame = d.frame;
    }

    const CircuitIR &ir_;
    Backend &be_;
    RngPolicy &rng_;
    std::vector<TState> ts_;
    std::map<std::string, WireId> qubit_wire_;
    std::map<std::string, int> readout_values_;
    WireId next_ = 0;
    WalkResult result_;
};

/// Static validation: walks the schedule without touching any state.
inline void validate(const CircuitIR &ir) {
    NullBackend nb;
    auto rng = RngPolicy::seeded(0);
    (void)ScheduleWalker(ir, nb, rng).run();
}

struct ExecutionResult {
    std::vector<ActionLog> log;
    std::vector<ReadoutRecord> readouts;
    std::size_t live_wires = 0;
    std::optional<StateVector> final_state; ///< Frame-corrected live wires, when pure.
    std::size_t peak_qubits = 0;
};

inline std::optional<StateVector> pure_state_of(const Matrix &rho) {
    double purity = 0.0;
    for (const auto &v : rho.data()) purity += std::norm(v);
    if (purity < 1.0 - 1e-9) return std::nullopt;
    std::size_t k = 0;
    for (std::size_t i = 1; i < rho.rows(); ++i) {
        if (rho(i, i).real() > rho(k, k).real()) k = i;
    }
    std::vector<cplx> a(rho.rows());
    for (std::size_t i = 0; i < rho.rows(); ++i) a[i] = rho(i, k);
    return StateVector::from_amplitudes(std::move(a));
}

inline ExecutionResult execute(const CircuitIR &ir, RngPolicy &rng) {
    validate(ir);
    PhysicalBackend be(ir.budget.value_or(kMaxQubits), !ir.no_frame_correction);
    auto w = ScheduleWalker(ir, be, rng).run();
    ExecutionResult r{std::move(w.log), std::move(w.readouts), w.live.size(), std::nullopt, be.reg().peak()};
    if (!w.live.empty() && w.live.size() <= 10) {
        r.final_state = pure_state_of(be.corrected_density(w.live));
    }
    return r;
}

struct VerifyResult {
    double max_deficit = 0.0;
    double max_tv = 0.0;
    std::size_t checks = 0;
    bool diverged = false;
    std::vector<ReadoutRecord> readouts;

    [[nodiscard]] bool ok(double tol = kStateTol) const { return !diverged && max_deficit <= tol && max_tv <= tol; }
};

/// Compares the sequential execution against the equivalent combinational
/// circuit (every transistor replaced by its logical gate).
inline VerifyResult verify(const CircuitIR &ir, RngPolicy &rng, bool force_no_correction = false) {
    validate(ir);
    VerifyBackend be(ir.budget.value_or(kMaxQubits), !(ir.no_frame_correction || force_no_correction));
    auto w = ScheduleWalker(ir, be, rng).run();
    return {be.max_deficit(), be.max_tv(), be.checks(), be.diverged(), std::move(w.readouts)};
}

} // namespace qsc
