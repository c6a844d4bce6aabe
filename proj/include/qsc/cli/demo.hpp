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
 * Algorithm demos. Each demo echoes its parameters, reports the simulated
 * result and compares it with a dense computation ("residuals").
 */
#pragma once

#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <numbers>
#include <set>
#include <string>
#include <vector>

#include "qsc/algos/amplify.hpp"
#include "qsc/algos/controlled.hpp"
#include "qsc/algos/fourier.hpp"
#include "qsc/algos/history.hpp"
#include "qsc/algos/lcu.hpp"
#include "qsc/algos/superchannel.hpp"
#include "qsc/algos/trotter.hpp"
#include "qsc/cli/report.hpp"
#include "qsc/core/random.hpp"
#include "qsc/qconv/encoder.hpp"

namespace qsc::cli {

inline const std::vector<std::string> &demo_names() {
    static const std::vector<std::string> names = {"qpe",     "qaa",   "lcu",     "qmux",
                                                   "history", "qconv", "trotter", "superchannel"};
    return names;
}

/// key=value demo parameters with range-checked accessors. Every problem is
/// a validation error.
class DemoParams {
  public:
    DemoParams(const std::vector<std::string> &args, std::set<std::string> allowed) {
        for (const auto &a : args) {
            const auto eq = a.find('=');
            require(eq != std::string::npos && eq > 0, Errc::validation, "demo parameters are key=value, got '" + a + "'");
            const auto key = a.substr(0, eq);
            require(allowed.count(key) > 0, Errc::validation, "unknown demo parameter '" + key + "'");
            require(values_.emplace(key, a.substr(eq + 1)).second, Errc::validation, "repeated parameter '" + key + "'");
        }
    }

    [[nodiscard]] bool has(const std::string &k) const { return values_.count(k) > 0; }

    [[nodiscard]] std::string text(const std::string &k, const std::string &def) const {
        const auto it = values_.find(k);
        return it == values_.end() ? def : it->second;
    }

    [[nodiscard]] double real(const std::string &k, double def, double lo, double hi) const {
        if (!has(k)) return def;
        return checked_real(k, values_.at(k), lo, hi);
    }

    [[nodiscard]] std::size_t integer(const std::string &k, std::size_t def, std::size_t lo, std::size_t hi) const {
        if (!has(k)) return def;
        const auto &s = values_.at(k);
        std::size_t v = 0;
        const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        require(ec == std::errc() && p == s.data() + s.size(), Errc::validation, k + " must be an integer");
        require(v >= lo && v <= hi, Errc::validation,
                k + " must be in " + std::to_string(lo) + ".." + std::to_string(hi));
        return v;
    }

    [[nodiscard]] UnitarySpec gate(const std::string &k, const std::string &def, std::size_t arity = 1) const {
        return named_gate(k, text(k, def), arity);
    }

    [[nodiscard]] std::vector<UnitarySpec> gate_list(const std::string &k, const std::string &def) const {
        std::vector<UnitarySpec> out;
        for (const auto &n : split(text(k, def))) out.push_back(named_gate(k, n, 1));
        return out;
    }

    [[nodiscard]] std::vector<double> real_list(const std::string &k, const std::string &def) const {
        std::vector<double> out;
        for (const auto &n : split(text(k, def))) out.push_back(checked_real(k, n, -1e6, 1e6));
        return out;
    }

    /// Product state from a string of labels 0/1/+/-; character j is qubit j.
    [[nodiscard]] StateVector labels(const std::string &k, const std::string &def, std::size_t lo, std::size_t hi) const {
        const auto s = text(k, def);
        require(s.size() >= lo && s.size() <= hi, Errc::validation,
                k + " needs " + std::to_string(lo) + ".." + std::to_string(hi) + " labels");
        StateVector v;
        for (char c : s) {
            require(c == '0' || c == '1' || c == '+' || c == '-', Errc::validation, k + " labels must be 0, 1, + or -");
            v = v.tensor(StateVector::from_label(c));
        }
        return v;
    }

  private:
    static std::vector<std::string> split(const std::string &s) {
        std::vector<std::string> out;
        std::size_t start = 0;
        while (true) {
            const auto c = s.find(',', start);
            out.push_back(s.substr(start, c == std::string::npos ? std::string::npos : c - start));
            if (c == std::string::npos) break;
            start = c + 1;
        }
        return out;
    }

    static double checked_real(const std::string &k, const std::string &s, double lo, double hi) {
        double v = 0.0;
        const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        require(ec == std::errc() && p == s.data() + s.size() && std::isfinite(v), Errc::validation,
                k + " must be a number");
        require(v >= lo && v <= hi, Errc::validation, k + " is out of range");
        return v;
    }

    static UnitarySpec named_gate(const std::string &k, const std::string &n, std::size_t arity) {
        const auto g = gates::by_name(n);
        require(g.has_value(), Errc::validation, k + ": unknown gate '" + n + "'");
        require(g->arity() == arity, Errc::validation, k + ": gate '" + n + "' has the wrong arity");
        return *g;
    }

    std::map<std::string, std::string> values_;
};

namespace detail {

inline double deficit(const StateVector &a, const StateVector &b) { return std::max(0.0, 1.0 - fidelity(a, b)); }

inline StateVector dense_apply(const Matrix &m, const StateVector &s) { return StateVector::from_amplitudes(m * s.amplitudes()); }

inline json demo_qpe(const DemoParams &p, RngPolicy &rng) {
    const auto u = p.gate("u", "S");
    const std::size_t t = p.integer("t", 2, 1, 4);
    const auto psi = p.labels("state", "1", 1, 1);
    const auto r = qpe(u, psi, t, rng);
    // P(j) = |2^-t Σ_k exp(2πi k (φ - j/2^t))|².
    const double T = std::ldexp(1.0, static_cast<int>(t));
    double res = 0.0;
    json oracle = json::object();
    for (std::size_t j = 0; j < static_cast<std::size_t>(T); ++j) {
        cplx s = 0.0;
        for (std::size_t k = 0; k < static_cast<std::size_t>(T); ++k) {
            s += std::polar(1.0, 2 * std::numbers::pi * static_cast<double>(k) * (r.eigenphase - static_cast<double>(j) / T));
        }
        const double pj = std::norm(s) / (T * T);
        const auto key = bitstring(j, t);
        oracle[key] = pj;
        const auto it = r.distribution.find(key);
        res = std::max(res, std::abs((it == r.distribution.end() ? 0.0 : it->second) - pj));
    }
    json dist = json::object();
    for (const auto &[k, v] : r.distribution) dist[k] = v;
    return {{"params", {{"u", p.text("u", "S")}, {"t", t}, {"state", p.text("state", "1")}}},
            {"eigenphase", r.eigenphase},
            {"distribution", dist},
            {"readout", r.readout},
            {"readout_probability", r.probability},
            {"residuals", {{"max_distribution_error", res}}}};
}

inline json demo_qaa(const DemoParams &p, RngPolicy &rng) {
    const double prob = p.real("p", 0.25, 1e-6, 1.0 - 1e-6);
    const std::size_t n = p.integer("n", 1, 0, 50);
    const auto r = qaa(QaaSpec::for_probability(prob), n, rng);
    const double closed = std::pow(std::sin((2.0 * static_cast<double>(n) + 1.0) * std::asin(std::sqrt(prob))), 2);
    return {{"params", {{"p", prob}, {"n", n}}},
            {"success_probability", r.success_probability},
            {"closed_form", closed},
            {"residuals", {{"success_probability_error", std::abs(r.success_probability - closed)}}}};
}

inline json demo_lcu(const DemoParams &p, RngPolicy &rng) {
    const auto c = p.real_list("c", "0.5,0.5");
    const auto u = p.gate_list("u", "X,Z");
    require(c.size() == u.size() && c.size() <= 8, Errc::validation, "c and u need the same length (at most 8)");
    for (double x : c) require(x >= 0.0, Errc::validation, "lcu coefficients must be nonnegative");
    const auto psi = p.labels("state", "0", 1, 1);
    const auto r = lcu(std::vector<cplx>(c.begin(), c.end()), u, psi, rng);
    Matrix m(2, 2);
    double c2 = 0.0;
    for (std::size_t i = 0; i < c.size(); ++i) {
        m = m + cplx(c[i]) * u[i].matrix();
        c2 += c[i] * c[i];
    }
    const auto raw = m * psi.amplitudes();
    double nrm = 0.0;
    for (const auto &a : raw) nrm += std::norm(a);
    const double d = std::ldexp(1.0, static_cast<int>(r.control_qubits));
    const double want_p = nrm / (d * c2);
    return {{"params", {{"c", c}, {"u", p.text("u", "X,Z")}, {"state", p.text("state", "0")}}},
            {"state", state_json(r.state)},
            {"success_probability", r.success_probability},
            {"residuals",
             {{"fidelity_deficit", deficit(r.state, StateVector::from_amplitudes(raw))},
              {"success_probability_error", std::abs(r.success_probability - want_p)}}}};
}

inline json demo_qmux(const DemoParams &p, RngPolicy &rng) {
    const auto u = p.gate_list("u", "I,X");
    std::size_t k = 0;
    while ((std::size_t{1} << k) < u.size()) ++k;
    require((std::size_t{1} << k) == u.size() && k >= 1 && k <= 3, Errc::validation, "qmux needs 2, 4 or 8 gates");
    const auto ctrl = p.labels("control", std::string(k, '+'), k, k);
    const auto psi = p.labels("state", "0", 1, 1);
    const auto out = qmux(QmuxSpec{u, ctrl.amplitudes(), false}, psi, rng);
    // Σ_i c_i |i> ⊗ U_i|ψ>, control on the low qubits.
    std::vector<cplx> want(out.dim(), 0.0);
    for (std::size_t i = 0; i < u.size(); ++i) {
        const auto ui = u[i].matrix() * psi.amplitudes();
        for (std::size_t x = 0; x < 2; ++x) want[i | (x << k)] += ctrl[i] * ui[x];
    }
    return {{"params", {{"u", p.text("u", "I,X")}, {"control", p.text("control", std::string(k, '+'))}, {"state", p.text("state", "0")}}},
            {"state", state_json(out)},
            {"residuals", {{"fidelity_deficit", deficit(out, StateVector::from_amplitudes(want))}}}};
}

inline json demo_history(const DemoParams &p) {
    const std::size_t T = p.integer("T", 1, 1, kMaxClockSteps);
    HistorySpec spec;
    json echo = {{"T", T}};
    for (std::size_t t = 1; t <= T; ++t) {
        const auto key = "u" + std::to_string(t);
        spec.gates.push_back(p.gate(key, "I"));
        echo[key] = p.text(key, "I");
    }
    for (std::size_t t = T + 1; t <= kMaxClockSteps; ++t) {
        require(!p.has("u" + std::to_string(t)), Errc::validation, "gate index exceeds T");
    }
    spec.initial = p.labels("initial", "0", 1, 1);
    echo["initial"] = p.text("initial", "0");
    const auto s = history_state(spec);
    const auto branches = history_branches(s, T);
    json out = json::array();
    double prob_err = 0.0, data_def = 0.0;
    StateVector prefix = spec.initial;
    for (const auto &b : branches) {
        if (b.t > 0) prefix = dense_apply(spec.gates[b.t - 1].matrix(), prefix);
        prob_err = std::max(prob_err, std::abs(b.probability - 1.0 / static_cast<double>(T + 1)));
        data_def = std::max(data_def, deficit(b.data, prefix));
        out.push_back({{"t", b.t}, {"probability", b.probability}, {"amplitude", std::sqrt(b.probability)},
                       {"data", amplitudes_json(b.data)}});
    }
    return {{"params", echo},
            {"branches", out},
            {"residuals", {{"max_probability_error", prob_err}, {"max_data_deficit", data_def}}},
            {"published_angle_clock_deviation", clock_deviation(clock_state(T, clock_angles(T)), T)}};
}

inline ConvCodeSpec code_from_json(const std::string &path) {
    std::ifstream f(path);
    require(static_cast<bool>(f), Errc::validation, "cannot open code spec " + path);
    try {
        const auto j = nlohmann::json::parse(f);
        ConvCodeSpec s{j.at("n").get<std::size_t>(), j.at("k").get<std::size_t>(), j.at("m").get<std::size_t>(), {}};
        for (const auto &g : j.at("cycle")) {
            const auto name = g.at("gate").get<std::string>();
            const auto u = gates::by_name(name);
            require(u.has_value(), Errc::validation, "unknown gate '" + name + "' in code spec");
            s.cycle.push_back({name, *u, g.at("targets").get<std::vector<std::size_t>>()});
        }
        return s;
    } catch (const nlohmann::json::exception &e) {
        fail(Errc::validation, std::string("malformed code spec: ") + e.what());
    }
}

inline json demo_qconv(const DemoParams &p, RngPolicy &rng) {
    ConvCodeSpec spec = p.has("spec") ? code_from_json(p.text("spec", ""))
                                      : ConvCodeSpec{2, 1, 1, {{"CNOT", gates::CNOT(), {0, 2}}, {"CNOT", gates::CNOT(), {1, 2}}}};
    try {
        spec.validate();
    } catch (const Error &e) {
        fail(Errc::validation, e.what());
    }
    require(spec.n <= 4 && spec.m <= 3, Errc::validation, "qconv demo supports n <= 4, m <= 3");
    const auto text = p.text("input", "101");
    require(!text.empty() && text.size() % spec.k == 0, Errc::validation, "input length must be a multiple of k");
    const std::size_t C = text.size() / spec.k;
    require(C >= 1 && spec.footprint(C) + 2 <= kMaxQubits, Errc::validation, "input stream is too long");
    const auto in = p.labels("input", "101", 1, text.size());
    const auto r = encode_stream(spec, in, C, rng);
    const auto ref = run_unrolled(unroll(spec, C), in);
    json out = {{"params", {{"n", spec.n}, {"k", spec.k}, {"m", spec.m}, {"cycles", C}, {"input", text},
                            {"spec", p.has("spec") ? json(p.text("spec", "")) : json("parity")}}},
                {"emitted", r.trace.emitted},
                {"memory", r.trace.memory}};
    json res = {{"streaming_vs_unrolled_deficit", deficit(r.state, ref)}};
    if (spec.footprint(C) + 2 * spec.memory_qubits() <= kMaxQubits) {
        res["memory_loop_deficit"] = deficit(memory_loop_variant(spec, in, C, rng).state, r.state);
    }
    if (r.state.qubit_count() <= 12) out["state"] = state_json(r.state);
    out["residuals"] = res;
    return out;
}

inline json demo_trotter(const DemoParams &p, RngPolicy &rng) {
    const std::size_t n = p.integer("n", 4, 2, 8);
    const std::size_t layers = p.integer("layers", 2, 1, 8);
    const double theta = p.real("theta", 0.3, -10.0, 10.0);
    const auto psi = p.labels("state", std::string(n, '+'), n, n);
    // exp(-iθ(XX + ZZ)) = exp(-iθ XX) exp(-iθ ZZ), the two commute.
    const Matrix xx = kron(gates::X().matrix(), gates::X().matrix());
    const Matrix zz = kron(gates::Z().matrix(), gates::Z().matrix());
    const cplx c = std::cos(theta), s(0.0, -std::sin(theta));
    const Matrix term = (c * Matrix::identity(4) + s * xx) * (c * Matrix::identity(4) + s * zz);
    std::vector<LayerTerm> even, odd;
    for (std::size_t q = 0; q + 1 < n; ++q) (q % 2 == 0 ? even : odd).push_back({UnitarySpec(term), {q, q + 1}});
    const auto out = trotter_brickwork(even, odd, layers, psi, rng);
    const auto ref = trotter_reference(even, odd, layers, psi);
    return {{"params", {{"n", n}, {"layers", layers}, {"theta", theta}, {"state", p.text("state", std::string(n, '+'))}}},
            {"state", state_json(out)},
            {"residuals", {{"fidelity_deficit", deficit(out, ref)}}}};
}

inline json demo_superchannel(const DemoParams &p, std::uint64_t seed) {
    const std::size_t kraus = p.integer("kraus", 2, 1, 4);
    const std::size_t instances = p.integer("instances", 5, 1, 100);
    GaussianSource g(seed);
    double worst = 0.0;
    json outputs = json::array();
    for (std::size_t i = 0; i < instances; ++i) {
        const auto pre = random_unitary(2, g), post = random_unitary(2, g);
        const auto phi = random_channel(2, kraus, g);
        const auto rho = density(random_state(1, g));
        const auto a = apply_superchannel(pre, post, phi, rho);
        worst = std::max(worst, trace_distance(a, superchannel_by_liouville(pre, post, phi, rho)));
        json m = json::array();
        for (std::size_t r = 0; r < a.rows(); ++r) {
            for (std::size_t c = 0; c < a.cols(); ++c) m.push_back({a(r, c).real(), a(r, c).imag()});
        }
        outputs.push_back({{"rows", a.rows()}, {"cols", a.cols()}, {"data", m}});
    }
    return {{"params", {{"kraus", kraus}, {"instances", instances}}},
            {"outputs", outputs},
            {"residuals", {{"max_trace_distance", worst}}}};
}

} // namespace detail

/// Runs the named demo; the result carries schema, name and seed.
inline json run_demo(const std::string &name, const std::vector<std::string> &args, std::uint64_t seed) {
    static const std::map<std::string, std::set<std::string>> keys = {
        {"qpe", {"u", "t", "state"}},
        {"qaa", {"p", "n"}},
        {"lcu", {"c", "u", "state"}},
        {"qmux", {"u", "control", "state"}},
        {"history", {"T", "u1", "u2", "u3", "u4", "u5", "initial"}},
        {"qconv", {"spec", "input"}},
        {"trotter", {"n", "layers", "theta", "state"}},
        {"superchannel", {"kraus", "instances"}},
    };
    const auto it = keys.find(name);
    require(it != keys.end(), Errc::validation, "unknown demo '" + name + "'");
    const DemoParams p(args, it->second);
    auto rng = RngPolicy::seeded(seed);
    json body;
    if (name == "qpe") body = detail::demo_qpe(p, rng);
    else if (name == "qaa") body = detail::demo_qaa(p, rng);
    else if (name == "lcu") body = detail::demo_lcu(p, rng);
    else if (name == "qmux") body = detail::demo_qmux(p, rng);
    else if (name == "history") body = detail::demo_history(p);
    else if (name == "qconv") body = detail::demo_qconv(p, rng);
    else if (name == "trotter") body = detail::demo_trotter(p, rng);
    else body = detail::demo_superchannel(p, seed);
    json out = {{"schema", "qsc.demo/1"}, {"demo", name}, {"seed", seed}};
    out.update(body);
    return out;
}

} // namespace qsc::cli
