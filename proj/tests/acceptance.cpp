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

// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails. Oracles here are dense computations written independently
// of the library code paths under test.

#include <array>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "qsc/qsc.hpp"

using namespace qsc;
namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string fmt(double v) {
    char b[32];
    std::snprintf(b, sizeof b, "%.3g", v);
    return b;
}

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

StateVector dense(const Matrix &m, const StateVector &s) { return StateVector::from_amplitudes(m * s.amplitudes()); }

Matrix mpow(const Matrix &m, std::size_t k) {
    Matrix r = Matrix::identity(m.rows());
    for (std::size_t i = 0; i < k; ++i) r = r * m;
    return r;
}

/// Calls `run` once per measurement branch: scripts are extended bit by bit
/// whenever they run out, and branches of probability zero are skipped.
std::size_t for_each_branch(const std::function<void(RngPolicy &)> &run, std::size_t limit = 1U << 14) {
    std::vector<std::vector<int>> stack{{}};
    std::size_t done = 0;
    while (!stack.empty()) {
        auto script = std::move(stack.back());
        stack.pop_back();
        auto rng = RngPolicy::forced(script);
        try {
            run(rng);
            ++done;
        } catch (const Error &e) {
            if (e.code() == Errc::forced_exhausted) {
                require(script.size() < 64 && stack.size() < limit, Errc::out_of_range, "branch tree too large");
                for (int b : {1, 0}) {
                    auto next = script;
                    next.push_back(b);
                    stack.push_back(std::move(next));
                }
            } else if (e.code() != Errc::forced_zero_probability) {
                throw;
            }
        }
    }
    return done;
}

StateVector run_transistor(const GateKind &kind, const StateVector &psi, RngPolicy &rng, bool backward = false) {
    Register reg;
    const auto data = reg.allocate(psi);
    auto t = build_transistor(kind, reg);
    if (backward) t = run_backward(t);
    (void)inject_input_by_teleport(t, reg, data, rng);
    (void)activate(t, reg, rng);
    resolve_frame(t, reg);
    return reg.reduced_pure_state(t.right);
}

std::vector<int> random_bits(std::size_t n, std::mt19937_64 &g) {
    std::vector<int> b(n);
    for (auto &v : b) v = static_cast<int>(g() & 1U);
    return b;
}

// 1. Wire gate law.
Outcome wire_gate_law() {
    const auto t0 = Clock::now();
    GaussianSource g(1);
    std::mt19937_64 bits(1);
    double worst = 0.0;
    for (std::size_t n = 1; n <= 6; ++n) {
        const Matrix want = n % 2 ? Matrix{{std::numbers::sqrt2 / 2, std::numbers::sqrt2 / 2},
                                           {std::numbers::sqrt2 / 2, -std::numbers::sqrt2 / 2}}
                                  : Matrix::identity(2);
        for (int s = 0; s < 20; ++s) {
            const auto psi = random_state(1, g);
            auto rng = RngPolicy::forced(random_bits(2 + n, bits));
            worst = std::max(worst, 1 - fidelity(run_transistor(GateKind::wire(n), psi, rng), dense(want, psi)));
        }
    }
    const double secs = seconds_since(t0);
    return {worst <= 1e-10 && secs < 5.0, "max deficit " + fmt(worst) + " over 120 runs in " + fmt(secs) + " s"};
}

// 2. Gate-set soundness over every measurement branch.
Outcome gate_set() {
    GaussianSource g(2);
    double worst = 0.0;
    std::size_t branches = 0;
    auto check = [&](const GateKind &kind, const Matrix &want, bool backward) {
        for (int trial = 0; trial < 3; ++trial) {
            const auto psi = random_state(kind.arity(), g);
            const auto target = dense(want, psi);
            branches += for_each_branch([&](RngPolicy &rng) {
                worst = std::max(worst, 1 - fidelity(run_transistor(kind, psi, rng, backward), target));
            });
        }
    };
    const Matrix s = {{1, 0}, {0, cplx(0, 1)}};
    const Matrix t = {{1, 0}, {0, std::polar(1.0, std::numbers::pi / 4)}};
    check(GateKind::schain(), s, false);
    check(GateKind::choi(gates::CZ()), Matrix::diagonal({1, 1, 1, -1}), false);
    check(GateKind::magic_t(), t, false);
    for (int i = 0; i < 3; ++i) {
        const auto u = random_unitary(1 + static_cast<std::size_t>(i % 2), g);
        check(GateKind::choi(u), u.matrix().transpose(), true);
    }
    return {worst <= 1e-10, "max deficit " + fmt(worst) + " over " + std::to_string(branches) + " branches"};
}

// 3. Reused gate through a loop.
Outcome loop_iteration() {
    GaussianSource g(3);
    const std::vector<std::pair<GateKind, Matrix>> cases = {
        {GateKind::choi(gates::X()), Matrix{{0, 1}, {1, 0}}},
        {GateKind::choi(gates::H()), Matrix{{std::numbers::sqrt2 / 2, std::numbers::sqrt2 / 2},
                                            {std::numbers::sqrt2 / 2, -std::numbers::sqrt2 / 2}}},
        {GateKind::schain(), Matrix{{1, 0}, {0, cplx(0, 1)}}},
        {GateKind::magic_t(), Matrix{{1, 0}, {0, std::polar(1.0, std::numbers::pi / 4)}}}};
    double worst = 0.0;
    std::size_t branches = 0, sampled = 0;
    for (const auto &[kind, u] : cases) {
        for (std::size_t k = 1; k <= 2; ++k) {
            const auto psi = random_state(1, g);
            const auto want = dense(mpow(u, k), psi);
            branches += for_each_branch([&](RngPolicy &rng) {
                worst = std::max(worst, 1 - fidelity(iterate_gate(kind, psi, k, rng), want));
            });
        }
        for (int s = 0; s < 50; ++s) {
            const std::size_t k = 1 + static_cast<std::size_t>(s % 8);
            const auto psi = random_state(1, g);
            auto rng = RngPolicy::seeded(static_cast<std::uint64_t>(1000 + s));
            worst = std::max(worst, 1 - fidelity(iterate_gate(kind, psi, k, rng), dense(mpow(u, k), psi)));
            ++sampled;
        }
    }
    return {worst <= 1e-10, "max deficit " + fmt(worst) + " over " + std::to_string(branches) +
                                " exhaustive branches and " + std::to_string(sampled) + " random runs"};
}

std::vector<fs::path> fixtures() {
    std::vector<fs::path> out;
    for (const auto &e : fs::directory_iterator(QSC_FIXTURE_DIR)) {
        if (e.path().extension() == ".qsc") out.push_back(e.path());
    }
    std::sort(out.begin(), out.end());
    return out;
}

// 4. Sequential vs combinational equivalence on the fixture corpus.
Outcome corpus_verify() {
    const auto files = fixtures();
    double deficit = 0.0, tv = 0.0;
    std::size_t hybrid = 0, loops = 0, checks = 0;
    bool ok = files.size() >= 15;
    for (const auto &f : files) {
        const auto ir = cli::parse_file(f);
        cli::check(ir);
        hybrid += !ir.qubits.empty() && !ir.transistors.empty();
        loops += !ir.loops.empty();
        for (std::uint64_t seed = 0; seed < 4; ++seed) {
            auto rng = RngPolicy::seeded(seed);
            const auto v = verify(ir, rng);
            ok = ok && !v.diverged && v.checks > 0;
            deficit = std::max(deficit, v.max_deficit);
            tv = std::max(tv, v.max_tv);
            checks += v.checks;
        }
    }
    ok = ok && hybrid > 0 && loops > 0 && deficit <= 1e-10 && tv <= 1e-10;
    return {ok, std::to_string(files.size()) + " files (" + std::to_string(hybrid) + " hybrid, " +
                    std::to_string(loops) + " with loops), " + std::to_string(checks) + " checks, max deficit " +
                    fmt(deficit) + ", max TV " + fmt(tv)};
}

// 5. Deferred byproducts in the Clifford/T pipeline.
Outcome pipeline() {
    std::mt19937_64 g(5);
    GaussianSource gs(5);
    const char *names[] = {"H", "S", "SDG", "CZ", "CNOT", "X", "Y", "Z", "T", "TDG"};
    double worst = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = 1 + g() % 5;
        const std::size_t len = 1 + g() % 20;
        std::vector<GateOp> c;
        for (std::size_t i = 0; i < len; ++i) {
            std::string name = names[g() % 10];
            const std::size_t a = g() % n;
            if (name == "CZ" || name == "CNOT") {
                if (n == 1) {
                    c.push_back({"H", {a}});
                    continue;
                }
                c.push_back({name, {a, (a + 1 + g() % (n - 1)) % n}});
            } else {
                c.push_back({name, {a}});
            }
        }
        const auto psi = random_state(n, gs);
        auto oracle = psi;
        for (const auto &op : c) oracle.apply(*gates::by_name(op.name), op.targets);
        const auto plan = plan_pipeline(c, n);
        auto r1 = RngPolicy::seeded(static_cast<std::uint64_t>(trial));
        auto r2 = RngPolicy::seeded(static_cast<std::uint64_t>(trial) + 7777);
        const auto eager = execute_pipeline(plan, psi, ByproductMode::eager, r1);
        const auto deferred = execute_pipeline(plan, psi, ByproductMode::deferred, r2);
        worst = std::max({worst, 1 - fidelity(eager.output, deferred.output), 1 - fidelity(deferred.output, oracle)});
    }
    return {worst <= 1e-10, "max deficit " + fmt(worst) + " over 100 random circuits"};
}

// 6. Amplitude amplification closed form.
Outcome amplification() {
    double worst = 0.0, quarter = 0.0;
    for (double p : {0.1, 0.25, 0.5}) {
        for (std::size_t n = 0; n <= 5; ++n) {
            auto rng = RngPolicy::seeded(n);
            const auto r = qaa(QaaSpec::for_probability(p), n, rng);
            const double want = std::pow(std::sin((2.0 * static_cast<double>(n) + 1.0) * std::asin(std::sqrt(p))), 2);
            worst = std::max(worst, std::abs(r.success_probability - want));
            if (p == 0.25 && n == 1) quarter = r.success_probability;
        }
    }
    return {worst <= 1e-9 && std::abs(quarter - 1.0) <= 1e-9,
            "max error " + fmt(worst) + ", p=1/4 n=1 gives " + fmt(quarter)};
}

// 7. Phase estimation of dyadic phases.
Outcome phase_estimation() {
    GaussianSource g(7);
    double worst_p = 1.0;
    bool ok = true;
    std::size_t cases = 0;
    for (std::size_t t = 1; t <= 4; ++t) {
        const std::size_t T = std::size_t{1} << t;
        for (std::size_t j = 0; j < T; ++j) {
            const double phase = 2 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(T);
            // Single qubit: diag(1, e^{iφ}) on |1>.
            const UnitarySpec p1(Matrix{{1, 0}, {0, std::polar(1.0, phase)}});
            // Two qubits: random eigenbasis with the target phase on column 0.
            const auto v = random_unitary(2, g).matrix();
            const UnitarySpec p2(v * Matrix::diagonal({std::polar(1.0, phase), std::polar(1.0, 0.4), std::polar(1.0, 1.3),
                                                       std::polar(1.0, -2.1)}) *
                                 v.adjoint());
            std::vector<cplx> col(4);
            for (std::size_t r = 0; r < 4; ++r) col[r] = v(r, 0);
            for (const auto &[u, psi] : {std::pair{p1, StateVector::basis(1, 1)}, std::pair{p2, StateVector::from_amplitudes(col)}}) {
                auto rng = RngPolicy::seeded(j + 31 * t);
                const auto rec = qpe(u, psi, t, rng);
                std::string want(t, '0');
                for (std::size_t b = 0; b < t; ++b) want[t - 1 - b] = ((j >> b) & 1U) ? '1' : '0';
                ok = ok && rec.readout == want;
                worst_p = std::min(worst_p, rec.distribution.count(want) ? rec.distribution.at(want) : 0.0);
                ++cases;
            }
        }
    }
    ok = ok && worst_p >= 1 - 1e-9;
    return {ok, std::to_string(cases) + " cases, min probability of the correct string " + fmt(worst_p)};
}

// 8. Linear combination of unitaries and the gradient step.
Outcome lcu_gradient() {
    GaussianSource g(8);
    double worst_f = 0.0, worst_p = 0.0, worst_n = 0.0;
    std::size_t instances = 0;
    for (int trial = 0; trial < 24; ++trial) {
        const std::size_t terms = 1 + static_cast<std::size_t>(trial % 4);
        const std::size_t m = 1 + static_cast<std::size_t>(trial % 2);
        std::vector<cplx> c;
        std::vector<UnitarySpec> us;
        for (std::size_t i = 0; i < terms; ++i) {
            c.push_back(trial % 3 == 0 ? g.complex_normal() : cplx(std::abs(g.complex_normal())));
            us.push_back(random_unitary(m, g));
        }
        const auto psi = random_state(m, g);
        std::vector<cplx> want(psi.dim(), 0.0);
        double c2 = 0.0, w2 = 0.0;
        for (std::size_t i = 0; i < terms; ++i) {
            const auto ui = us[i].matrix() * psi.amplitudes();
            for (std::size_t x = 0; x < want.size(); ++x) want[x] += c[i] * ui[x];
            c2 += std::norm(c[i]);
        }
        for (const auto &a : want) w2 += std::norm(a);
        std::size_t d = 1;
        while (d < terms) d *= 2;
        auto rng = RngPolicy::seeded(static_cast<std::uint64_t>(trial));
        const auto r = lcu(c, us, psi, rng);
        worst_f = std::max(worst_f, 1 - fidelity(r.state, StateVector::from_amplitudes(want)));
        worst_p = std::max(worst_p, std::abs(r.success_probability - w2 / (static_cast<double>(d) * c2)));
        ++instances;
    }
    for (int trial = 0; trial < 10; ++trial) {
        std::vector<std::pair<double, UnitarySpec>> terms;
        Matrix h(2, 2);
        for (int i = 0; i < 3; ++i) {
            const double ci = g.complex_normal().real();
            const auto u = random_unitary(1, g);
            terms.emplace_back(ci, u);
            h = h + cplx(ci) * u.matrix();
        }
        const auto psi = random_state(1, g);
        const auto hp = h * psi.amplitudes();
        double nrm = 0.0;
        for (const auto &a : hp) nrm += std::norm(a);
        auto rng = RngPolicy::seeded(static_cast<std::uint64_t>(trial));
        const auto r = gradient_step(terms, psi, rng);
        worst_f = std::max(worst_f, 1 - fidelity(r.direction, StateVector::from_amplitudes(hp)));
        worst_n = std::max(worst_n, std::abs(r.norm - std::sqrt(nrm)));
        ++instances;
    }
    return {worst_f <= 1e-10 && worst_p <= 1e-10 && worst_n <= 1e-9,
            std::to_string(instances) + " instances, max deficit " + fmt(worst_f) + ", max probability error " +
                fmt(worst_p) + ", max norm error " + fmt(worst_n)};
}

// 9. History state and clock preparation.
Outcome history() {
    GaussianSource g(9);
    double worst_p = 0.0, worst_d = 0.0, worst_clock = 0.0;
    std::string published;
    for (std::size_t T = 1; T <= 5; ++T) {
        HistorySpec spec;
        spec.initial = random_state(1, g);
        for (std::size_t t = 0; t < T; ++t) spec.gates.push_back(random_unitary(1, g));
        const auto s = history_state(spec);
        StateVector prefix = spec.initial;
        for (std::size_t t = 0; t <= T; ++t) {
            if (t > 0) prefix = dense(spec.gates[t - 1].matrix(), prefix);
            // Clock qubits 0..T-1 hold a domain wall: qubits t..T-1 set.
            const std::size_t clock = ((std::size_t{1} << T) - 1) & ~((std::size_t{1} << t) - 1);
            double p = 0.0;
            std::vector<cplx> branch(2);
            for (std::size_t x = 0; x < 2; ++x) {
                branch[x] = s[(x << T) | clock];
                p += std::norm(branch[x]);
            }
            worst_p = std::max(worst_p, std::abs(p - 1.0 / static_cast<double>(T + 1)));
            worst_d = std::max(worst_d, 1 - fidelity(StateVector::from_amplitudes(branch), prefix));
        }
        const auto derived = clock_state(T, derived_clock_angles(T));
        worst_clock = std::max(worst_clock, clock_deviation(derived, T));
        published += (T > 1 ? ", " : "") + fmt(clock_deviation(clock_state(T, clock_angles(T)), T));
    }
    std::printf("INFO  9  published clock angles: amplitude deviation from uniform for T=1..5: %s\n",
                published.c_str());
    return {worst_p <= 1e-10 && worst_d <= 1e-10 && worst_clock <= 1e-10,
            "max branch probability error " + fmt(worst_p) + ", max data deficit " + fmt(worst_d) +
                ", derived clock deviation " + fmt(worst_clock)};
}

// 10. Superchannel vs the dense composed map.
Outcome superchannel() {
    GaussianSource g(10);
    double worst = 0.0;
    for (int trial = 0; trial < 24; ++trial) {
        const auto pre = random_unitary(2, g), post = random_unitary(2, g);
        const auto phi = random_channel(2, 1 + static_cast<std::size_t>(trial % 2), g);
        const auto rho = density(random_state(1, g));
        // Ancilla |0> on the high qubit: pre, Φ, post, then trace the ancilla.
        Matrix full = kron(Matrix{{1, 0}, {0, 0}}, rho);
        full = pre.matrix() * full * pre.matrix().adjoint();
        Matrix mid(4, 4);
        for (const auto &k : phi.kraus()) mid = mid + k * full * k.adjoint();
        full = post.matrix() * mid * post.matrix().adjoint();
        Matrix want(2, 2);
        for (std::size_t i = 0; i < 2; ++i) {
            for (std::size_t j = 0; j < 2; ++j) want(i, j) = full(i, j) + full(i + 2, j + 2);
        }
        worst = std::max(worst, trace_distance(apply_superchannel(pre, post, phi, rho), want));
    }
    return {worst <= 1e-10, "max trace distance " + fmt(worst) + " over 24 instances"};
}

ConvCodeSpec random_code(std::size_t n, std::size_t k, std::size_t m, GaussianSource &g) {
    ConvCodeSpec s{n, k, m, {}};
    const std::size_t w = s.cycle_width();
    if (w <= 6) {
        std::vector<std::size_t> all(w);
        for (std::size_t q = 0; q < w; ++q) all[q] = q;
        s.cycle.push_back({"U", random_unitary(w, g), all});
        return s;
    }
    for (std::size_t off = 0; off < 2; ++off) {
        for (std::size_t q = off; q + 3 <= w; q += 3) s.cycle.push_back({"U", random_unitary(3, g), {q, q + 1, q + 2}});
    }
    s.cycle.push_back({"U", random_unitary(3, g), {w - 1, 0, w / 2}});
    return s;
}

ConvCodeSpec feed_forward_code(std::size_t n, std::size_t k, std::size_t m, GaussianSource &g) {
    ConvCodeSpec s{n, k, m, {}};
    const std::size_t ctrl = k + m * k, anc = n - k;
    const std::size_t dc = std::size_t{1} << ctrl, da = std::size_t{1} << anc;
    Matrix u(dc * da, dc * da);
    for (std::size_t x = 0; x < dc; ++x) {
        const auto block = random_unitary(anc, g).matrix();
        for (std::size_t r = 0; r < da; ++r) {
            for (std::size_t c = 0; c < da; ++c) u((r << ctrl) | x, (c << ctrl) | x) = block(r, c);
        }
    }
    std::vector<std::size_t> all(s.cycle_width());
    for (std::size_t q = 0; q < all.size(); ++q) all[q] = q;
    s.cycle.push_back({"F", UnitarySpec(u), all});
    return s;
}

// 11. Convolutional encoder.
Outcome convolutional() {
    GaussianSource g(11);
    double stream = 0.0, loop = 0.0, memory = 0.0;
    std::size_t configs = 0;
    for (std::size_t n = 1; n <= 3; ++n) {
        for (std::size_t k = 1; k <= n; ++k) {
            for (std::size_t m = 0; m <= 2; ++m) {
                for (std::size_t C = 1; C <= 4; ++C) {
                    const auto spec = random_code(n, k, m, g);
                    const auto in = random_state(C * k, g);
                    auto rng = RngPolicy::seeded(C + 10 * n);
                    stream = std::max(stream, 1 - fidelity(encode_stream(spec, in, C, rng).state,
                                                           run_unrolled(unroll(spec, C), in)));
                    ++configs;
                }
            }
        }
    }
    const auto small = random_code(2, 1, 1, g);
    const auto in = random_state(2, g);
    auto r0 = RngPolicy::seeded(0);
    const auto want = encode_stream(small, in, 2, r0).state;
    const std::size_t branches = for_each_branch([&](RngPolicy &rng) {
        loop = std::max(loop, 1 - fidelity(memory_loop_variant(small, in, 2, rng).state, want));
    });
    bool visible = true;
    for (const auto &nkm : std::vector<std::array<std::size_t, 3>>{{2, 1, 1}, {3, 1, 2}, {3, 2, 1}}) {
        const auto [n, k, m] = nkm;
        const auto spec = feed_forward_code(n, k, m, g);
        const std::size_t C = m + 3;
        const std::size_t rest = static_cast<std::size_t>(g.uniform() * 1e6) % (std::size_t{1} << ((C - 1) * k));
        auto ra = RngPolicy::seeded(1), rb = RngPolicy::seeded(2);
        const auto sa = encode_stream(spec, StateVector::basis(C * k, rest << k), C, ra);
        const auto sb = encode_stream(spec, StateVector::basis(C * k, (rest << k) | 1U), C, rb);
        for (std::size_t c = m + 1; c < C; ++c) {
            const auto &keep = sa.trace.emitted[c];
            memory = std::max(memory, trace_distance(sa.state.reduced_density(keep), sb.state.reduced_density(keep)));
        }
        const auto &first = sa.trace.emitted[m];
        visible = visible && trace_distance(sa.state.reduced_density(first), sb.state.reduced_density(first)) > 0.1;
    }
    return {stream <= 1e-10 && loop <= 1e-10 && branches == 16 && memory <= 1e-9 && visible,
            std::to_string(configs) + " streaming configs max deficit " + fmt(stream) + "; memory loop " +
                std::to_string(branches) + " Bell branches max deficit " + fmt(loop) +
                "; beyond-memory trace distance " + fmt(memory)};
}

// 12. Determinism and parser robustness.
Outcome determinism(Clock::time_point start) {
    bool identical = true;
    for (const auto &f : fixtures()) {
        std::ostringstream a, b, e;
        const int ca = cli::run_app({"run", f.string(), "--seed", "42"}, a, e, nullptr);
        const int cb = cli::run_app({"run", f.string(), "--seed", "42"}, b, e, nullptr);
        identical = identical && ca == 0 && cb == 0 && a.str() == b.str();
    }
    for (const char *demo : {"qpe", "qaa", "lcu", "qmux", "history", "qconv", "trotter", "superchannel"}) {
        std::ostringstream a, b, e;
        (void)cli::run_app({"demo", demo, "--seed", "9"}, a, e, nullptr);
        (void)cli::run_app({"demo", demo, "--seed", "9"}, b, e, nullptr);
        identical = identical && a.str() == b.str() && !a.str().empty();
    }
    std::mt19937_64 g(12);
    std::size_t diagnostics = 0, parsed = 0;
    bool structured = true;
    for (int i = 0; i < 10000; ++i) {
        std::string s(g() % 256, '\0');
        for (auto &c : s) c = static_cast<char>(g() & 0xFF);
        if (i % 2) s = "format=1\n" + s;
        try {
            cli::check(cli::parse(s));
            ++parsed;
        } catch (const cli::ParseError &e) {
            structured = structured && e.diagnostic().line >= 1 && !e.diagnostic().message.empty();
            ++diagnostics;
        } catch (...) {
            structured = false;
        }
    }
    const double secs = seconds_since(start);
    return {identical && structured && diagnostics + parsed == 10000 && secs < 60.0,
            std::string(identical ? "byte-identical reports" : "reports differ") + "; 10000 fuzz inputs gave " +
                std::to_string(diagnostics) + " diagnostics, " + std::to_string(parsed) +
                " parses; total elapsed " + fmt(secs) + " s"};
}

} // namespace

int main() {
    const auto start = Clock::now();
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
        {"wire gate law", wire_gate_law},
        {"gate-set soundness", gate_set},
        {"reused gate loop", loop_iteration},
        {"sequential equals combinational", corpus_verify},
        {"deferred pipeline byproducts", pipeline},
        {"amplitude amplification", amplification},
        {"phase estimation", phase_estimation},
        {"linear combination of unitaries", lcu_gradient},
        {"history state", history},
        {"superchannel", superchannel},
        {"convolutional encoder", convolutional},
        {"determinism and robustness", [start] { return determinism(start); }},
    };
    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception &e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        failures += !o.pass;
        std::printf("%s  %2zu  %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(), o.detail.c_str());
        std::fflush(stdout);
    }
    return failures == 0 ? 0 : 1;
}
