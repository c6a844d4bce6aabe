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

#include <sys/wait.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "gtest/gtest.h"
#include "qsc/cli/app.hpp"

using namespace qsc;
using namespace qsc::cli;
namespace fs = std::filesystem;

namespace {

const fs::path kFixtures = QSC_FIXTURE_DIR;

std::vector<fs::path> fixture_files() {
    std::vector<fs::path> out;
    for (const auto &e : fs::directory_iterator(kFixtures)) {
        if (e.path().extension() == ".qsc") out.push_back(e.path());
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::string read(const fs::path &p) {
    std::ifstream f(p, std::ios::binary);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

struct CliRun {
    int code;
    std::string out, err;
};

CliRun invoke(std::vector<std::string> args, const char *env_seed = nullptr) {
    std::ostringstream out, err;
    const int code = run_app(args, out, err, env_seed);
    return {code, out.str(), err.str()};
}

Diagnostic diagnose(const std::string &text) {
    try {
        (void)parse(text);
    } catch (const ParseError &e) {
        return e.diagnostic();
    }
    ADD_FAILURE() << "expected a diagnostic for:\n" << text;
    return {};
}

const char *kMinimal = "format=1\n"
                       "transistor t kind=wire\n"
                       "input t.in state=0 mode=measure\n"
                       "signal t cycle=1\n"
                       "readout t.out basis=Z cycle=2\n";

} // namespace

TEST(Parse, MinimalProgramUsesThreeQubits) {
    const auto ir = parse(kMinimal);
    ASSERT_EQ(ir.transistors.size(), 1u);
    EXPECT_EQ(ir.transistors[0].kind.tag(), GateKind::Tag::wire);
    EXPECT_EQ(ir.inputs[0].mode, InjectMode::measure);
    EXPECT_EQ(ir.actions.size(), 2u);
    EXPECT_NO_THROW(check(ir));
    auto rng = RngPolicy::seeded(3);
    EXPECT_EQ(execute(ir, rng).peak_qubits, 3u);
}

TEST(Parse, LoopEndpointsMustShareTransistor) {
    const auto d = diagnose("format=1\ntransistor t1 kind=wire\ntransistor t2 kind=wire\nloop t1.out -> t2.in\n");
    EXPECT_EQ(d.code, DiagCode::loop_endpoints);
    EXPECT_EQ(d.message, "loop endpoints must share a transistor");
    EXPECT_EQ(d.line, 4u);
    EXPECT_EQ(d.column, 16u);
}

TEST(Parse, DiagnosticsCarryPositionAndCode) {
    struct Case {
        std::string text;
        DiagCode code;
        std::size_t line, column;
    };
    const std::vector<Case> cases = {
        {"", DiagCode::bad_header, 1, 1},
        {"transistor t kind=wire\n", DiagCode::bad_header, 1, 1},
        {"format=2\n", DiagCode::bad_header, 1, 1},
        {"format=1\nformat=1\n", DiagCode::bad_header, 2, 1},
        {"format=1\n  frobnicate x\n", DiagCode::unknown_directive, 2, 3},
        {"format=1\ntransistor 9t kind=wire\n", DiagCode::syntax, 2, 12},
        {"format=1\ntransistor t kind=wire colour=red\n", DiagCode::bad_key, 2, 24},
        {"format=1\ntransistor t kind=wire kind=wire\n", DiagCode::bad_key, 2, 24},
        {"format=1\ntransistor t kind=laser\n", DiagCode::bad_value, 2, 19},
        {"format=1\ntransistor t kind=wire length=0\n", DiagCode::bad_value, 2, 31},
        {"format=1\ntransistor t kind=schain length=2\n", DiagCode::bad_key, 2, 33},
        {"format=1\ntransistor t kind=choi:FOO\n", DiagCode::bad_value, 2, 24},
        {"format=1\ntransistor t kind=wire\ntransistor t kind=wire\n", DiagCode::duplicate_id, 3, 12},
        {"format=1\nsignal ghost cycle=1\n", DiagCode::bad_reference, 2, 8},
        {"format=1\ntransistor t kind=wire\nsignal t cycle=0\n", DiagCode::cycle_violation, 3, 16},
        {"format=1\ntransistor t kind=wire\nsignal t cycle=x\n", DiagCode::syntax, 3, 16},
        {"format=1\ntransistor t kind=wire\nreadout t.out basis=Y cycle=1\n", DiagCode::bad_value, 3, 21},
        {"format=1\ntransistor t kind=wire\nreadout t.side basis=Z cycle=1\n", DiagCode::syntax, 3, 11},
        {"format=1\ntransistor t kind=wire\nreadout t.out[3] basis=Z cycle=1\n", DiagCode::bad_reference, 3, 9},
        {"format=1\nqubit q state=0\nreadout q.out basis=Z cycle=1\n", DiagCode::bad_reference, 3, 9},
        {"format=1\ntransistor t kind=wire\ninput t.in state=2\n", DiagCode::bad_value, 3, 18},
        {"format=1\ntransistor t kind=wire\ninput t.in state=file:missing.json\n", DiagCode::state_file, 3, 18},
        {"format=1\ntransistor t kind=wire\nloop t.out t.in\n", DiagCode::syntax, 3, 16},
        {"format=1\ntransistor t kind=wire\ngate FOO targets=t.out cycle=1\n", DiagCode::bad_value, 3, 6},
        {"format=1\nbudget 99\n", DiagCode::bad_value, 2, 8},
        {"format=1\npragma fast\n", DiagCode::bad_value, 2, 8},
        {"format=1\n\x01\n", DiagCode::encoding, 2, 1},
        {"format=1\n# caf\xC3\n", DiagCode::encoding, 2, 6},
    };
    for (const auto &c : cases) {
        const auto d = diagnose(c.text);
        EXPECT_EQ(d.code, c.code) << c.text << " -> " << d.to_string();
        EXPECT_EQ(d.line, c.line) << c.text << " -> " << d.to_string();
        EXPECT_EQ(d.column, c.column) << c.text << " -> " << d.to_string();
        EXPECT_EQ(d.to_string().find(diag_code_name(c.code)), d.to_string().find("QSC"));
    }
}

TEST(Parse, ScheduleErrorsBecomeDiagnostics) {
    const auto ir = parse("format=1\ntransistor t kind=wire\ninput t.in state=0\nsignal t cycle=1\nsignal t cycle=2\n");
    try {
        check(ir);
        FAIL() << "expected a schedule diagnostic";
    } catch (const ParseError &e) {
        EXPECT_EQ(e.diagnostic().code, DiagCode::schedule);
        EXPECT_EQ(e.diagnostic().line, 5u);
    }
}

TEST(Parse, CommentsAndWhitespace) {
    const auto a = parse(kMinimal);
    const auto b = parse("# leading comment\n\nformat=1   # header\n\ttransistor  t kind=wire\r\n"
                         "input t.in state=0 mode=measure\nsignal t cycle=1 # go\nreadout t.out basis=Z cycle=2");
    EXPECT_EQ(a, b);
}

TEST(Parse, RoundTripOnFixtures) {
    const auto files = fixture_files();
    ASSERT_GE(files.size(), 15u);
    for (const auto &f : files) {
        const auto ir = parse_file(f);
        const auto text = serialize(ir);
        const auto again = parse(text, {f.parent_path()});
        EXPECT_EQ(again, ir) << f;
        EXPECT_EQ(serialize(again), text) << f;
    }
}

TEST(Parse, SerializeRejectsUnnamedStoredGate) {
    CircuitIR ir;
    ir.transistors.push_back({"g", GateKind::choi(gates::Ry(0.3)), "choi", false, 0});
    EXPECT_THROW((void)serialize(ir), Error);
}

TEST(Parse, FuzzRandomBytes) {
    std::mt19937_64 g(2026);
    std::size_t parsed = 0;
    for (int i = 0; i < 10000; ++i) {
        std::string s(g() % 200, '\0');
        for (auto &c : s) c = static_cast<char>(g() & 0xFF);
        if (i % 2 == 0) s = "format=1\n" + s;
        try {
            check(parse(s));
            ++parsed;
        } catch (const ParseError &e) {
            EXPECT_GE(e.diagnostic().line, 1u);
            EXPECT_FALSE(e.diagnostic().message.empty());
        }
    }
    RecordProperty("parsed", static_cast<int>(parsed));
}

TEST(Parse, FuzzMutatedFixtures) {
    std::mt19937_64 g(7);
    std::vector<std::string> texts;
    for (const auto &f : fixture_files()) texts.push_back(read(f));
    const std::string alphabet = "abcdefghijklmnopqrstuvwxyz0123456789=.,[]#-> \n+:_";
    std::size_t parsed = 0;
    for (int i = 0; i < 10000; ++i) {
        std::string s = texts[g() % texts.size()];
        const int edits = 1 + static_cast<int>(g() % 4);
        for (int e = 0; e < edits && !s.empty(); ++e) {
            const std::size_t at = g() % s.size();
            switch (g() % 4) {
                case 0: s.erase(at, 1 + g() % 6); break;
                case 1: s.insert(at, 1, alphabet[g() % alphabet.size()]); break;
                case 2: s[at] = alphabet[g() % alphabet.size()]; break;
                default: s.insert(at, s.substr(g() % s.size(), g() % 30)); break;
            }
        }
        try {
            const auto ir = parse(s, {kFixtures});
            check(ir);
            ++parsed;
        } catch (const ParseError &e) {
            EXPECT_GE(e.diagnostic().line, 1u) << e.what();
        } catch (const Error &e) {
            // Construction failures surface as typed errors, never crashes.
            EXPECT_NE(std::string(e.what()), "");
        }
    }
    RecordProperty("parsed", static_cast<int>(parsed));
}

TEST(Cli, WireHadamardDistribution) {
    const auto r = invoke({"run", (kFixtures / "minimal.qsc").string(), "--seed", "5"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto j = nlohmann::json::parse(r.out);
    EXPECT_EQ(j["schema"], "qsc.run/1");
    const auto &d = j["readouts"][0]["distribution"];
    EXPECT_NEAR(d["0"].get<double>(), 0.5, 1e-12);
    EXPECT_NEAR(d["1"].get<double>(), 0.5, 1e-12);
    EXPECT_EQ(j["peak_qubits"], 3);
}

TEST(Cli, ReportsAreByteIdenticalForEqualSeeds) {
    for (const auto &f : fixture_files()) {
        const auto a = invoke({"run", f.string(), "--seed", "11"});
        const auto b = invoke({"run", f.string(), "--seed", "11"});
        ASSERT_EQ(a.code, 0) << f << a.err;
        EXPECT_EQ(a.out, b.out) << f;
    }
    const auto file = (kFixtures / "loop_t_k3.qsc").string();
    EXPECT_EQ(invoke({"run", file}, "11").out, invoke({"run", file, "--seed", "11"}).out);
    EXPECT_EQ(invoke({"run", file}).out, invoke({"run", file, "--seed", "0"}).out);
    EXPECT_EQ(invoke({"demo", "superchannel"}, "4").out, invoke({"demo", "superchannel", "--seed", "4"}).out);
}

TEST(Cli, ReadoutDistributionsSumToOne) {
    for (const auto &f : fixture_files()) {
        const auto r = invoke({"run", f.string(), "--seed", "2"});
        ASSERT_EQ(r.code, 0) << f;
        const auto j = nlohmann::json::parse(r.out);
        for (const auto &ro : j["readouts"]) {
            double s = 0.0;
            for (const auto &[k, v] : ro["distribution"].items()) s += v.get<double>();
            EXPECT_NEAR(s, 1.0, 1e-9) << f;
        }
        if (!j["final"].is_null()) {
            double s = 0.0;
            for (const auto &[k, v] : j["final"]["distribution"].items()) s += v.get<double>();
            EXPECT_NEAR(s, 1.0, 1e-9) << f;
        }
    }
}

TEST(Cli, ExitCodes) {
    const auto dir = fs::temp_directory_path() / "qsc_cli_test";
    fs::create_directories(dir);
    auto write = [&](const std::string &name, const std::string &text) {
        std::ofstream(dir / name) << text;
        return (dir / name).string();
    };
    const auto ok = (kFixtures / "wire_length2.qsc").string();
    EXPECT_EQ(invoke({"run", ok}).code, kOk);
    EXPECT_EQ(invoke({"verify", ok}).code, kOk);
    EXPECT_EQ(invoke({"run", write("syntax.qsc", "format=1\nwat\n")}).code, kValidation);
    EXPECT_EQ(invoke({"run", write("sched.qsc", "format=1\ntransistor t kind=wire\nsignal t cycle=1\n")}).code,
              kValidation);
    EXPECT_EQ(invoke({"run", (dir / "absent.qsc").string()}).code, kValidation);
    EXPECT_EQ(invoke({"run"}).code, kValidation);
    EXPECT_EQ(invoke({"run", ok, "--bogus"}).code, kValidation);
    EXPECT_EQ(invoke({"run", ok, "--seed", "-3"}).code, kValidation);
    EXPECT_EQ(invoke({"run", ok, "--seed", "1", "--force-outcomes", "0"}).code, kValidation);
    EXPECT_EQ(invoke({"demo", "nope"}).code, kValidation);
    EXPECT_EQ(invoke({"demo", "qaa", "p=1.5"}).code, kValidation);
    EXPECT_EQ(invoke({"demo", "qpe", "t=9"}).code, kValidation);
    EXPECT_EQ(invoke({"demo", "history", "T=2", "u3=X"}).code, kValidation);
    // The state |1> read as 0 is impossible.
    const auto impossible = invoke({"run", ok, "--force-outcomes", "0,0,0,0,0"});
    EXPECT_EQ(impossible.code, kRuntime);
    EXPECT_NE(impossible.err.find("readout w.out"), std::string::npos) << impossible.err;
    EXPECT_EQ(invoke({"run", ok, "--force-outcomes", "0,0,0,0,1"}).code, kOk);
    EXPECT_EQ(invoke({"run", ok, "--force-outcomes", "0"}).code, kRuntime);
    const auto neg = (kFixtures / "negative" / "no_frame_correction.qsc").string();
    EXPECT_EQ(invoke({"verify", neg}).code, kVerifyFailed);
    EXPECT_EQ(invoke({"verify", (kFixtures / "loop_h_k2.qsc").string(), "--no-frame-correction", "--seed", "3"}).code,
              kVerifyFailed);
    fs::remove_all(dir);
}

TEST(Cli, JsonPathOutput) {
    const auto path = fs::temp_directory_path() / "qsc_cli_report.json";
    const auto r = invoke({"run", (kFixtures / "chain.qsc").string(), "--json", path.string()});
    ASSERT_EQ(r.code, 0);
    EXPECT_TRUE(r.out.empty());
    EXPECT_EQ(read(path), invoke({"run", (kFixtures / "chain.qsc").string()}).out);
    fs::remove(path);
}

TEST(Cli, VerifyCorpusAndOracleResiduals) {
    for (const auto &f : fixture_files()) {
        for (const char *seed : {"0", "1", "2"}) {
            const auto r = invoke({"verify", f.string(), "--seed", seed});
            ASSERT_EQ(r.code, 0) << f << r.err;
            const auto j = nlohmann::json::parse(r.out);
            EXPECT_LE(j["max_fidelity_deficit"].get<double>(), 1e-10) << f;
            EXPECT_LE(j["max_total_variation"].get<double>(), 1e-10) << f;
            EXPECT_GT(j["checks"].get<int>(), 0) << f;
        }
    }
    const auto r = invoke({"run", (kFixtures / "hybrid_bell_cz.qsc").string(), "--oracle"});
    EXPECT_TRUE(nlohmann::json::parse(r.out)["oracle"]["ok"].get<bool>());
}

TEST(Cli, NegativeControlFailsForMostSeeds) {
    const auto neg = (kFixtures / "negative" / "no_frame_correction.qsc").string();
    int failed = 0;
    for (int s = 0; s < 10; ++s) failed += invoke({"verify", neg, "--seed", std::to_string(s)}).code == kVerifyFailed;
    EXPECT_GE(failed, 5);
}

TEST(Demo, DocumentedOutputs) {
    const auto qaa = nlohmann::json::parse(invoke({"demo", "qaa", "p=0.25", "n=1"}).out);
    EXPECT_NEAR(qaa["success_probability"].get<double>(), 1.0, 1e-9);
    const auto qpe = nlohmann::json::parse(invoke({"demo", "qpe", "u=S", "t=2"}).out);
    EXPECT_NEAR(qpe["distribution"]["01"].get<double>(), 1.0, 1e-9);
    EXPECT_EQ(qpe["readout"], "01");
    const auto hist = nlohmann::json::parse(invoke({"demo", "history", "T=1", "u1=X"}).out);
    ASSERT_EQ(hist["branches"].size(), 2u);
    for (const auto &b : hist["branches"]) EXPECT_NEAR(b["probability"].get<double>(), 0.5, 1e-10);
    EXPECT_NEAR(hist["branches"][1]["data"][1][0].get<double>(), 1.0, 1e-10);
}

TEST(Demo, EveryDemoMatchesItsOracle) {
    const std::vector<std::vector<std::string>> runs = {
        {"qpe", "u=T", "t=3"},
        {"qpe", "u=Z", "t=1", "state=1"},
        {"qaa", "p=0.1", "n=3"},
        {"lcu", "c=1,2,3", "u=X,Y,Z", "state=+"},
        {"qmux", "u=I,X,Y,Z", "control=+-"},
        {"history", "T=3", "u1=H", "u2=T", "u3=X", "initial=+"},
        {"qconv", "input=0110"},
        {"trotter", "n=5", "layers=3", "theta=0.7"},
        {"superchannel", "kraus=2", "instances=3"},
    };
    for (const auto &args : runs) {
        std::vector<std::string> a = {"demo"};
        a.insert(a.end(), args.begin(), args.end());
        const auto r = invoke(a);
        ASSERT_EQ(r.code, 0) << args[0] << ": " << r.err;
        const auto j = nlohmann::json::parse(r.out);
        EXPECT_EQ(j["demo"], args[0]);
        for (const auto &[k, v] : j["residuals"].items()) EXPECT_LE(v.get<double>(), 1e-9) << args[0] << " " << k;
    }
}

TEST(Binary, ExitCodeContract) {
    const std::string exe = QSC_CLI_PATH;
    auto status = [&](const std::string &args) {
        const int s = std::system((exe + " " + args + " >/dev/null 2>&1").c_str());
        return WIFEXITED(s) ? WEXITSTATUS(s) : -1;
    };
    EXPECT_EQ(status("run " + (kFixtures / "schain.qsc").string()), 0);
    EXPECT_EQ(status("demo qaa p=0.25 n=1"), 0);
    EXPECT_EQ(status("demo nope"), 2);
    EXPECT_EQ(status("run " + (kFixtures / "wire_length2.qsc").string() + " --force-outcomes 00000"), 3);
    EXPECT_EQ(status("verify " + (kFixtures / "negative" / "no_frame_correction.qsc").string()), 4);
}
