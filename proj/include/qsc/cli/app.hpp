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
 * The `qsc` command line: run, verify and demo.
 *
 * Exit codes: 0 success, 2 validation error (bad file, bad flags, bad demo
 * parameters), 3 runtime error, 4 verification failure.
 */
#pragma once

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qsc/cli/demo.hpp"
#include "qsc/cli/parser.hpp"
#include "qsc/cli/report.hpp"

namespace qsc::cli {

enum ExitCode : int { kOk = 0, kValidation = 2, kRuntime = 3, kVerifyFailed = 4 };

namespace detail {

inline std::vector<int> parse_outcomes(const std::string &s) {
    std::vector<int> out;
    for (char c : s) {
        if (c == ',' || c == ' ') continue;
        require(c == '0' || c == '1', Errc::validation, "--force-outcomes takes 0/1 digits");
        out.push_back(c - '0');
    }
    return out;
}

inline std::uint64_t parse_seed(const std::string &s, const char *what) {
    std::uint64_t v = 0;
    const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    require(!s.empty() && ec == std::errc() && p == s.data() + s.size(), Errc::validation,
            std::string(what) + " must be a nonnegative integer");
    return v;
}

inline void emit(const json &j, const std::string &path, std::ostream &out) {
    const std::string text = j.dump(2) + "\n";
    if (path.empty()) {
        out << text;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    require(static_cast<bool>(f), Errc::validation, "cannot write " + path);
    f << text;
}

} // namespace detail

/// Runs the command line with `args` (without the program name). Output
/// goes to `out`, diagnostics to `err`; the return value is the exit code.
inline int run_app(const std::vector<std::string> &args, std::ostream &out, std::ostream &err,
                   const char *env_seed = std::getenv("QSC_SEED")) {
    CLI::App app{"Quantum sequential circuit simulator", "qsc"};
    app.require_subcommand(1);
    std::string json_path, seed_text, forced_text;
    bool no_frame = false, oracle = false;
    double tol = kStateTol;
    std::string file, demo_name;
    std::vector<std::string> demo_args;

    auto add_common = [&](CLI::App *c) {
        c->add_option("--json", json_path, "Write the JSON report to this path instead of stdout");
        c->add_option("--seed", seed_text, "Measurement seed (default: $QSC_SEED, else 0)");
        c->add_option("--force-outcomes", forced_text, "Scripted measurement bits, e.g. 0,1,1");
    };
    auto *run = app.add_subcommand("run", "Execute a circuit file");
    run->add_option("file", file, "Circuit file")->required();
    add_common(run);
    run->add_flag("--no-frame-correction", no_frame, "Skip Pauli frame correction (negative control)");
    run->add_flag("--oracle", oracle, "Also report residuals against the combinational oracle");
    auto *verify_cmd = app.add_subcommand("verify", "Compare a circuit with its combinational equivalent");
    verify_cmd->add_option("file", file, "Circuit file")->required();
    add_common(verify_cmd);
    verify_cmd->add_flag("--no-frame-correction", no_frame, "Skip Pauli frame correction (negative control)");
    verify_cmd->add_option("--tolerance", tol, "Allowed fidelity deficit and total variation");
    auto *demo = app.add_subcommand("demo", "Run an algorithm demo");
    demo->add_option("name", demo_name, "qpe|qaa|lcu|qmux|history|qconv|trotter|superchannel")->required();
    demo->add_option("params", demo_args, "key=value parameters");
    demo->add_option("--json", json_path, "Write the JSON report to this path instead of stdout");
    demo->add_option("--seed", seed_text, "Seed (default: $QSC_SEED, else 0)");

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::CallForHelp &) {
        out << app.help();
        return kOk;
    } catch (const CLI::ParseError &e) {
        err << "error: " << e.what() << "\n";
        return kValidation;
    }

    try {
        SeedInfo seed;
        if (!forced_text.empty()) {
            require(seed_text.empty(), Errc::validation, "--seed and --force-outcomes are exclusive");
            seed.forced = detail::parse_outcomes(forced_text);
        } else if (!seed_text.empty()) {
            seed.seed = detail::parse_seed(seed_text, "--seed");
        } else {
            seed.seed = env_seed && *env_seed ? detail::parse_seed(env_seed, "QSC_SEED") : 0;
        }

        if (demo->parsed()) {
            require(!seed.forced, Errc::validation, "demos take --seed only");
            detail::emit(run_demo(demo_name, demo_args, *seed.seed), json_path, out);
            return kOk;
        }

        CircuitIR ir = parse_file(file);
        check(ir);
        if (run->parsed()) {
            if (no_frame) ir.no_frame_correction = true;
            auto rng = seed.policy();
            const auto r = execute(ir, rng);
            std::optional<VerifyResult> v;
            if (oracle) {
                auto vrng = seed.policy();
                v = qsc::verify(ir, vrng);
            }
            detail::emit(run_report(ir, file, seed, r, v), json_path, out);
            return kOk;
        }
        auto rng = seed.policy();
        const auto v = qsc::verify(ir, rng, no_frame);
        detail::emit(verify_report(ir, file, seed, v, tol), json_path, out);
        if (!v.ok(tol)) {
            err << "verify: deficit " << v.max_deficit << ", total variation " << v.max_tv << " exceed " << tol << "\n";
            return kVerifyFailed;
        }
        return kOk;
    } catch (const ParseError &e) {
        err << file << ":" << e.what() << "\n";
        return kValidation;
    } catch (const Error &e) {
        err << "error [" << errc_name(e.code()) << "]: " << e.what() << "\n";
        return e.code() == Errc::validation ? kValidation : kRuntime;
    } catch (const std::exception &e) {
        err << "error: " << e.what() << "\n";
        return kRuntime;
    }
}

inline int main(int argc, char **argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return run_app(args, std::cout, std::cerr);
}

} // namespace qsc::cli
