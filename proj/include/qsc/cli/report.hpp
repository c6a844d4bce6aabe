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
 * JSON reports (schema "qsc.run/1", "qsc.verify/1", "qsc.demo/1").
 *
 * Amplitudes are [re, im] pairs. Distribution keys are bit strings whose
 * character j is qubit (or leg) j. Doubles use the shortest text that reads
 * back to the same value.
 */
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "qsc/seqexec/executor.hpp"

namespace qsc::cli {

using json = nlohmann::ordered_json;

inline std::string index_bits(std::size_t idx, std::size_t n) {
    std::string s(n, '0');
    for (std::size_t j = 0; j < n; ++j) {
        if ((idx >> j) & 1U) s[j] = '1';
    }
    return s;
}

inline json amplitudes_json(const StateVector &s) {
    json a = json::array();
    for (const auto &v : s.amplitudes()) a.push_back({v.real(), v.imag()});
    return a;
}

inline json distribution_json(const std::vector<double> &p, std::size_t n) {
    json d = json::object();
    for (std::size_t i = 0; i < p.size(); ++i) d[index_bits(i, n)] = p[i];
    return d;
}

inline json state_json(const StateVector &s) {
    std::vector<double> p(s.dim());
    for (std::size_t i = 0; i < s.dim(); ++i) p[i] = std::norm(s[i]);
    return {{"qubits", s.qubit_count()},
            {"amplitudes", amplitudes_json(s)},
            {"distribution", distribution_json(p, s.qubit_count())}};
}

inline json readouts_json(const std::vector<ReadoutRecord> &rs) {
    json out = json::array();
    for (const auto &r : rs) {
        std::size_t n = 0;
        while ((std::size_t{1} << n) < r.distribution.size()) ++n;
        out.push_back({{"cycle", r.cycle},
                       {"target", r.target},
                       {"basis", r.basis},
                       {"outcome", r.outcome},
                       {"probability", r.probability},
                       {"distribution", distribution_json(r.distribution, n)}});
    }
    return out;
}

inline json circuit_json(const CircuitIR &ir, const std::string &file) {
    return {{"file", file},
            {"format", ir.format},
            {"transistors", ir.transistors.size()},
            {"qubits", ir.qubits.size()},
            {"ebits", ir.links.size()},
            {"loops", ir.loops.size()},
            {"inputs", ir.inputs.size()},
            {"actions", ir.actions.size()},
            {"cycles", ir.cycle_count()},
            {"budget", ir.budget ? json(*ir.budget) : json(nullptr)},
            {"frame_correction", !ir.no_frame_correction}};
}

/// How measurement outcomes were chosen.
struct SeedInfo {
    std::optional<std::uint64_t> seed;
    std::optional<std::vector<int>> forced;

    [[nodiscard]] json to_json() const {
        return {{"seed", seed ? json(*seed) : json(nullptr)}, {"forced_outcomes", forced ? json(*forced) : json(nullptr)}};
    }
    [[nodiscard]] RngPolicy policy() const { return forced ? RngPolicy::forced(*forced) : RngPolicy::seeded(seed.value_or(0)); }
};

inline json run_report(const CircuitIR &ir, const std::string &file, const SeedInfo &seed, const ExecutionResult &r,
                       const std::optional<VerifyResult> &oracle) {
    json log = json::array();
    for (const auto &a : r.log) {
        json e = {{"cycle", a.cycle}, {"line", a.line}, {"action", a.action}, {"target", a.target}};
        if (!a.bell.empty()) e["bell"] = a.bell;
        if (!a.bulk.empty()) e["bulk"] = a.bulk;
        if (!a.frame.empty()) e["frame"] = a.frame;
        log.push_back(std::move(e));
    }
    json rep = {{"schema", "qsc.run/1"}, {"circuit", circuit_json(ir, file)}};
    rep.update(seed.to_json());
    rep["log"] = std::move(log);
    rep["readouts"] = readouts_json(r.readouts);
    rep["live_qubits"] = r.live_wires;
    rep["final"] = r.final_state ? state_json(*r.final_state) : json(nullptr);
    rep["peak_qubits"] = r.peak_qubits;
    if (oracle) {
        rep["oracle"] = {{"max_fidelity_deficit", oracle->max_deficit},
                         {"max_total_variation", oracle->max_tv},
                         {"checks", oracle->checks},
                         {"ok", oracle->ok()}};
    }
    return rep;
}

inline json verify_report(const CircuitIR &ir, const std::string &file, const SeedInfo &seed, const VerifyResult &v,
                          double tol) {
    json rep = {{"schema", "qsc.verify/1"}, {"circuit", circuit_json(ir, file)}};
    rep.update(seed.to_json());
    rep["max_fidelity_deficit"] = v.max_deficit;
    rep["max_total_variation"] = v.max_tv;
    rep["checks"] = v.checks;
    rep["diverged"] = v.diverged;
    rep["tolerance"] = tol;
    rep["ok"] = v.ok(tol);
    rep["readouts"] = readouts_json(v.readouts);
    return rep;
}

} // namespace qsc::cli
