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
 * Line-oriented circuit text format (version 1).
 *
 *   format=1
 *   budget <N>
 *   pragma no_frame_correction
 *   transistor <id> kind=<wire|schain|schain_dg|choi:<gate>|magict|magictdg> [length=<N>] [dir=forward|backward]
 *   qubit <id> state=<0|1|+|-|file:PATH>
 *   ebit <id> a=<ref> b=<id>.in[idx]
 *   loop <id>.out -> <id>.in
 *   input <id>.in state=<0|1|+|-|file:PATH> [mode=measure|teleport]
 *   gate <name> targets=<ref>,<ref>... cycle=<c> [if=<ref>]
 *   signal <id> cycle=<c>
 *   refresh <id> cycle=<c>
 *   readout <ref> basis=<Z|X> cycle=<c>
 *
 * A <ref> is a qubit id or `<id>.in` / `<id>.out` with an optional `[idx]`.
 * `#` starts a comment. File states are JSON arrays of [re, im] pairs, read
 * relative to the circuit file.
 */
#pragma once

#include <cctype>
#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "qsc/seqexec/executor.hpp"

namespace qsc::cli {

/// Stable diagnostic codes; the numeric values never change meaning.
enum class DiagCode {
    bad_header = 1,      ///< Missing or unsupported `format=` line.
    unknown_directive,   ///< First word is not a directive.
    syntax,              ///< Malformed or missing argument.
    bad_key,             ///< Unknown or repeated key=value field.
    bad_value,           ///< Value outside its domain.
    duplicate_id,        ///< Identifier declared twice.
    bad_reference,       ///< Reference to an undeclared or wrong-kind node.
    cycle_violation,     ///< Cycle number out of range.
    loop_endpoints,      ///< Loop between different transistors.
    state_file,          ///< State file missing or malformed.
    encoding,            ///< Invalid UTF-8 or control character.
    schedule = 20,       ///< Rejected by the schedule validator.
};

inline std::string diag_code_name(DiagCode c) {
    char buf[8];
    std::snprintf(buf, sizeof buf, "QSC%03d", static_cast<int>(c));
    return buf;
}

struct Diagnostic {
    std::size_t line = 0;
    std::size_t column = 0;
    DiagCode code = DiagCode::syntax;
    std::string message;

    [[nodiscard]] std::string to_string() const {
        return std::to_string(line) + ":" + std::to_string(column) + ": " + diag_code_name(code) + ": " + message;
    }
};

class ParseError : public Error {
  public:
    explicit ParseError(Diagnostic d) : Error(Errc::validation, d.to_string()), diag_(std::move(d)) {}
    [[nodiscard]] const Diagnostic &diagnostic() const noexcept { return diag_; }

  private:
    Diagnostic diag_;
};

struct ParseOptions {
    std::filesystem::path base_dir = ".";
};

namespace detail {

struct Token {
    std::string text;
    std::size_t column = 1;
};

[[noreturn]] inline void diag(std::size_t line, std::size_t col, DiagCode code, const std::string &msg) {
    throw ParseError({line, col, code, msg});
}

inline void check_utf8(std::string_view text) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < text.size();) {
        const auto c = static_cast<unsigned char>(text[i]);
        std::size_t len = 1;
        if (c == '\n') {
            ++line;
            col = 1;
            ++i;
            continue;
        }
        if (c < 0x20 && c != '\t' && c != '\r') {
            diag(line, col, DiagCode::encoding, "control character in input");
        }
        if (c >= 0x80) {
            if ((c & 0xE0) == 0xC0 && c >= 0xC2) len = 2;
            else if ((c & 0xF0) == 0xE0) len = 3;
            else if ((c & 0xF8) == 0xF0 && c <= 0xF4) len = 4;
            else diag(line, col, DiagCode::encoding, "invalid UTF-8 byte");
            if (i + len > text.size()) diag(line, col, DiagCode::encoding, "truncated UTF-8 sequence");
            for (std::size_t j = 1; j < len; ++j) {
                if ((static_cast<unsigned char>(text[i + j]) & 0xC0) != 0x80) {
                    diag(line, col, DiagCode::encoding, "invalid UTF-8 continuation byte");
                }
            }
        }
        i += len;
        ++col;
    }
}

inline std::vector<Token> tokenize(std::string_view line) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < line.size()) {
        if (line[i] == '#') break;
        if (line[i] == ' ' || line[i] == '\t' || line[i] == '\r') {
            ++i;
            continue;
        }
        const std::size_t start = i;
        while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r' && line[i] != '#') ++i;
        out.push_back({std::string(line.substr(start, i - start)), start + 1});
    }
    return out;
}

inline bool is_ident(std::string_view s) {
    if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
    for (char c : s) {
        if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_')) return false;
    }
    return true;
}

inline std::optional<long long> to_int(std::string_view s) {
    long long v = 0;
    const auto *end = s.data() + s.size();
    const auto [p, ec] = std::from_chars(s.data(), end, v);
    if (ec != std::errc() || p != end) return std::nullopt;
    return v;
}

/// key=value fields after the positional arguments.
class Fields {
  public:
    Fields(std::size_t line, const std::vector<Token> &toks, std::size_t first, const std::set<std::string> &allowed)
        : line_(line) {
        for (std::size_t i = first; i < toks.size(); ++i) {
            const auto &t = toks[i];
            const auto eq = t.text.find('=');
            if (eq == std::string::npos || eq == 0) {
                diag(line, t.column, DiagCode::syntax, "expected key=value, got '" + t.text + "'");
            }
            const std::string key = t.text.substr(0, eq);
            if (!allowed.count(key)) diag(line, t.column, DiagCode::bad_key, "unknown key '" + key + "'");
            if (map_.count(key)) diag(line, t.column, DiagCode::bad_key, "repeated key '" + key + "'");
            map_[key] = {t.text.substr(eq + 1), t.column + eq + 1};
        }
    }

    [[nodiscard]] bool has(const std::string &k) const { return map_.count(k) > 0; }
    [[nodiscard]] const Token &get(const std::string &k, std::size_t col) const {
        const auto it = map_.find(k);
        if (it == map_.end()) diag(line_, col, DiagCode::syntax, "missing " + k + "=");
        return it->second;
    }

  private:
    std::size_t line_;
    std::map<std::string, Token> map_;
};

inline StateVector load_state_file(const std::filesystem::path &p, std::size_t line, std::size_t col) {
    std::ifstream f(p);
    if (!f) diag(line, col, DiagCode::state_file, "cannot open state file " + p.string());
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(f);
    } catch (const std::exception &) {
        diag(line, col, DiagCode::state_file, "state file is not valid JSON");
    }
    if (!j.is_array() || j.empty() || j.size() > (std::size_t{1} << 10) || (j.size() & (j.size() - 1)) != 0) {
        diag(line, col, DiagCode::state_file, "state file must hold 2^n [re, im] pairs");
    }
    std::vector<cplx> a;
    double nrm = 0.0;
    for (const auto &e : j) {
        if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number()) {
            diag(line, col, DiagCode::state_file, "amplitudes must be [re, im] pairs");
        }
        a.emplace_back(e[0].get<double>(), e[1].get<double>());
        nrm += std::norm(a.back());
    }
    if (std::abs(nrm - 1.0) > 1e-9) diag(line, col, DiagCode::state_file, "state file is not normalized");
    if (a.size() == 1) diag(line, col, DiagCode::state_file, "state file must hold at least one qubit");
    return StateVector::from_amplitudes(std::move(a));
}

inline StateSpec parse_state(const Token &t, std::size_t line, const ParseOptions &opt) {
    if (t.text == "0" || t.text == "1" || t.text == "+" || t.text == "-") {
        return {t.text, StateVector::from_label(t.text[0])};
    }
    if (t.text.rfind("file:", 0) == 0 && t.text.size() > 5) {
        return {t.text, load_state_file(opt.base_dir / t.text.substr(5), line, t.column)};
    }
    diag(line, t.column, DiagCode::bad_value, "state must be 0, 1, +, - or file:PATH");
}

struct PendingRef {
    ModeRef ref;
    std::size_t line, column;
    bool must_be_input = false;
};

inline ModeRef parse_ref(const Token &t, std::size_t line) {
    std::string_view s = t.text;
    ModeRef r;
    std::optional<std::size_t> idx;
    if (!s.empty() && s.back() == ']') {
        const auto open = s.rfind('[');
        if (open == std::string_view::npos) diag(line, t.column, DiagCode::syntax, "unbalanced index in '" + t.text + "'");
        const auto v = to_int(s.substr(open + 1, s.size() - open - 2));
        if (!v || *v < 0 || *v > 64) diag(line, t.column, DiagCode::bad_value, "bad leg index in '" + t.text + "'");
        idx = static_cast<std::size_t>(*v);
        s = s.substr(0, open);
    }
    const auto dot = s.find('.');
    if (dot == std::string_view::npos) {
        if (idx) diag(line, t.column, DiagCode::syntax, "qubit references take no index");
        r.node = std::string(s);
        r.kind = ModeRef::Kind::qubit;
    } else {
        r.node = std::string(s.substr(0, dot));
        const auto leg = s.substr(dot + 1);
        if (leg == "in") r.kind = ModeRef::Kind::in;
        else if (leg == "out") r.kind = ModeRef::Kind::out;
        else diag(line, t.column + dot + 1, DiagCode::syntax, "expected .in or .out");
        r.index = idx;
    }
    if (!is_ident(r.node)) diag(line, t.column, DiagCode::syntax, "bad identifier in '" + t.text + "'");
    return r;
}

inline int parse_cycle(const Token &t, std::size_t line) {
    const auto v = to_int(t.text);
    if (!v) diag(line, t.column, DiagCode::syntax, "cycle must be an integer");
    if (*v < 1 || *v > 100000) diag(line, t.column, DiagCode::cycle_violation, "cycle must be in 1..100000");
    return static_cast<int>(*v);
}

inline std::string ident_arg(const std::vector<Token> &toks, std::size_t i, std::size_t line, const char *what) {
    if (toks.size() <= i) diag(line, toks.back().column + toks.back().text.size(), DiagCode::syntax,
                               std::string("missing ") + what);
    if (!is_ident(toks[i].text)) diag(line, toks[i].column, DiagCode::syntax, std::string("bad ") + what + " '" + toks[i].text + "'");
    return toks[i].text;
}

inline GateKind parse_kind(const Token &t, const Fields &f, std::size_t line, std::string &canon) {
    const std::string &k = t.text;
    if (f.has("length") && k != "wire") {
        diag(line, f.get("length", 0).column, DiagCode::bad_key, "length= applies only to wire");
    }
    if (k == "wire") {
        std::size_t n = 1;
        if (f.has("length")) {
            const auto &lt = f.get("length", 0);
            const auto v = to_int(lt.text);
            if (!v || *v < 1 || *v > 8) diag(line, lt.column, DiagCode::bad_value, "length must be in 1..8");
            n = static_cast<std::size_t>(*v);
        }
        canon = "wire";
        return GateKind::wire(n);
    }
    canon = k;
    if (k == "schain") return GateKind::schain(false);
    if (k == "schain_dg") return GateKind::schain(true);
    if (k == "magict") return GateKind::magic_t(false);
    if (k == "magictdg") return GateKind::magic_t(true);
    if (k.rfind("choi:", 0) == 0) {
        const auto g = gates::by_name(k.substr(5));
        if (!g) diag(line, t.column + 5, DiagCode::bad_value, "unknown gate '" + k.substr(5) + "'");
        return GateKind::choi(*g);
    }
    diag(line, t.column, DiagCode::bad_value, "unknown transistor kind '" + k + "'");
}

} // namespace detail

/// Parses circuit text into IR. Every failure is a ParseError carrying the
/// line, column and a stable code.
inline CircuitIR parse(std::string_view text, const ParseOptions &opt = {}) {
    using namespace detail;
    check_utf8(text);
    CircuitIR ir;
    bool header = false;
    std::map<std::string, std::pair<std::size_t, std::size_t>> nodes; // id -> (line, arity or 0 for qubit)
    std::set<std::string> ebit_ids, looped, prepped;
    std::vector<PendingRef> refs;
    std::vector<std::tuple<std::string, std::size_t, std::size_t>> transistor_refs; // signal/refresh/input/loop

    std::size_t line_no = 0, last_line = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto nl = text.find('\n', pos);
        const auto line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
        pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
        ++line_no;
        const auto toks = tokenize(line);
        if (toks.empty()) continue;
        last_line = line_no;
        const auto &head = toks[0];
        if (!header) {
            if (head.text != "format=1" || toks.size() != 1) {
                diag(line_no, head.column, DiagCode::bad_header,
                     head.text.rfind("format=", 0) == 0 ? "unsupported format version" : "expected 'format=1' header");
            }
            header = true;
            continue;
        }
        const std::string &d = head.text;
        auto need = [&](std::size_t n, const char *usage) {
            if (toks.size() < n) {
                diag(line_no, toks.back().column + toks.back().text.size(), DiagCode::syntax,
                     std::string("usage: ") + usage);
            }
        };
        auto declare = [&](const std::string &id, std::size_t col, std::size_t arity) {
            if (nodes.count(id)) diag(line_no, col, DiagCode::duplicate_id, "'" + id + "' is already declared");
            nodes[id] = {line_no, arity};
        };

        if (d == "format=1" || d.rfind("format=", 0) == 0) {
            diag(line_no, head.column, DiagCode::bad_header, "format header must appear once, first");
        } else if (d == "budget") {
            need(2, "budget <N>");
            if (toks.size() > 2) diag(line_no, toks[2].column, DiagCode::syntax, "unexpected argument");
            const auto v = to_int(toks[1].text);
            if (!v || *v < 1 || *v > static_cast<long long>(kMaxQubits)) {
                diag(line_no, toks[1].column, DiagCode::bad_value, "budget must be in 1..20");
            }
            if (ir.budget) diag(line_no, head.column, DiagCode::duplicate_id, "budget given twice");
            ir.budget = static_cast<std::size_t>(*v);
        } else if (d == "pragma") {
            need(2, "pragma no_frame_correction");
            if (toks[1].text != "no_frame_correction" || toks.size() > 2) {
                diag(line_no, toks[1].column, DiagCode::bad_value, "unknown pragma '" + toks[1].text + "'");
            }
            ir.no_frame_correction = true;
        } else if (d == "transistor") {
            need(3, "transistor <id> kind=<kind>");
            const std::string id = ident_arg(toks, 1, line_no, "transistor id");
            const Fields f(line_no, toks, 2, {"kind", "length", "dir"});
            TransistorDecl t;
            t.id = id;
            t.line = line_no;
            t.kind = parse_kind(f.get("kind", toks[1].column), f, line_no, t.kind_text);
            if (t.kind.tag() == GateKind::Tag::wire) t.kind_text = "wire:" + std::to_string(t.kind.bulk_length());
            if (f.has("dir")) {
                const auto &dt = f.get("dir", 0);
                if (dt.text != "forward" && dt.text != "backward") {
                    diag(line_no, dt.column, DiagCode::bad_value, "dir must be forward or backward");
                }
                t.backward = dt.text == "backward";
            }
            declare(id, toks[1].column, t.kind.arity());
            ir.transistors.push_back(std::move(t));
        } else if (d == "qubit") {
            need(3, "qubit <id> state=<s>");
            const std::string id = ident_arg(toks, 1, line_no, "qubit id");
            const Fields f(line_no, toks, 2, {"state"});
            const auto &st = f.get("state", toks[1].column);
            auto s = parse_state(st, line_no, opt);
            if (s.state.qubit_count() != 1) diag(line_no, st.column, DiagCode::bad_value, "a qubit holds one qubit");
            declare(id, toks[1].column, 0);
            ir.qubits.push_back({id, std::move(s), line_no});
        } else if (d == "ebit") {
            need(4, "ebit <id> a=<ref> b=<id>.in");
            const std::string id = ident_arg(toks, 1, line_no, "ebit id");
            if (!ebit_ids.insert(id).second) diag(line_no, toks[1].column, DiagCode::duplicate_id, "ebit '" + id + "' is already declared");
            const Fields f(line_no, toks, 2, {"a", "b"});
            const auto &ta = f.get("a", toks[1].column), &tb = f.get("b", toks[1].column);
            EbitLink e{id, parse_ref(ta, line_no), parse_ref(tb, line_no), line_no};
            if (e.a.kind == ModeRef::Kind::in) diag(line_no, ta.column, DiagCode::bad_reference, "ebit source must be an output or a qubit");
            if (e.b.kind != ModeRef::Kind::in) diag(line_no, tb.column, DiagCode::bad_reference, "ebit target must be a transistor input");
            refs.push_back({e.a, line_no, ta.column});
            refs.push_back({e.b, line_no, tb.column, true});
            ir.links.push_back(std::move(e));
        } else if (d == "loop") {
            need(4, "loop <id>.out -> <id>.in");
            if (toks.size() != 4 || toks[2].text != "->") diag(line_no, toks[2].column, DiagCode::syntax, "usage: loop <id>.out -> <id>.in");
            const auto a = parse_ref(toks[1], line_no), b = parse_ref(toks[3], line_no);
            if (a.kind != ModeRef::Kind::out || a.index) diag(line_no, toks[1].column, DiagCode::bad_reference, "loop must start at <id>.out");
            if (b.kind != ModeRef::Kind::in || b.index) diag(line_no, toks[3].column, DiagCode::bad_reference, "loop must end at <id>.in");
            if (a.node != b.node) diag(line_no, toks[3].column, DiagCode::loop_endpoints, "loop endpoints must share a transistor");
            if (!looped.insert(a.node).second) diag(line_no, toks[1].column, DiagCode::duplicate_id, "'" + a.node + "' already has a loop");
            transistor_refs.emplace_back(a.node, line_no, toks[1].column);
            ir.loops.push_back({a.node, line_no});
        } else if (d == "input") {
            need(3, "input <id>.in state=<s>");
            const auto r = parse_ref(toks[1], line_no);
            if (r.kind != ModeRef::Kind::in || r.index) diag(line_no, toks[1].column, DiagCode::bad_reference, "input target must be <id>.in");
            if (!prepped.insert(r.node).second) diag(line_no, toks[1].column, DiagCode::duplicate_id, "'" + r.node + "' already has an input");
            const Fields f(line_no, toks, 2, {"state", "mode"});
            InputPrep p{r.node, parse_state(f.get("state", toks[1].column), line_no, opt), InjectMode::teleport, line_no};
            if (f.has("mode")) {
                const auto &mt = f.get("mode", 0);
                if (mt.text == "measure") p.mode = InjectMode::measure;
                else if (mt.text != "teleport") diag(line_no, mt.column, DiagCode::bad_value, "mode must be measure or teleport");
            }
            transistor_refs.emplace_back(r.node, line_no, toks[1].column);
            ir.inputs.push_back(std::move(p));
        } else if (d == "gate") {
            need(4, "gate <name> targets=<refs> cycle=<c>");
            const auto g = gates::by_name(toks[1].text);
            if (!g) diag(line_no, toks[1].column, DiagCode::bad_value, "unknown gate '" + toks[1].text + "'");
            const Fields f(line_no, toks, 2, {"targets", "cycle", "if"});
            const auto &tt = f.get("targets", toks[1].column);
            GateAction ga{toks[1].text, {}, std::nullopt};
            std::size_t start = 0;
            while (start <= tt.text.size()) {
                const auto comma = tt.text.find(',', start);
                const auto piece = tt.text.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
                const Token pt{piece, tt.column + start};
                ga.targets.push_back(parse_ref(pt, line_no));
                refs.push_back({ga.targets.back(), line_no, pt.column});
                if (comma == std::string::npos) break;
                start = comma + 1;
            }
            if (ga.targets.size() > 8) diag(line_no, tt.column, DiagCode::bad_value, "too many targets");
            if (f.has("if")) {
                const auto &ct = f.get("if", 0);
                const auto r = parse_ref(ct, line_no);
                refs.push_back({r, line_no, ct.column});
                ga.condition = r.to_string();
            }
            ir.actions.push_back({parse_cycle(f.get("cycle", toks[1].column), line_no), line_no, std::move(ga)});
        } else if (d == "signal" || d == "refresh") {
            need(3, "signal|refresh <id> cycle=<c>");
            const std::string id = ident_arg(toks, 1, line_no, "transistor id");
            const Fields f(line_no, toks, 2, {"cycle"});
            const int c = parse_cycle(f.get("cycle", toks[1].column), line_no);
            transistor_refs.emplace_back(id, line_no, toks[1].column);
            if (d == "signal") ir.actions.push_back({c, line_no, SignalAction{id}});
            else ir.actions.push_back({c, line_no, RefreshAction{id}});
        } else if (d == "readout") {
            need(4, "readout <ref> basis=<Z|X> cycle=<c>");
            const auto r = parse_ref(toks[1], line_no);
            refs.push_back({r, line_no, toks[1].column});
            const Fields f(line_no, toks, 2, {"basis", "cycle"});
            const auto &bt = f.get("basis", toks[1].column);
            if (bt.text != "Z" && bt.text != "X") diag(line_no, bt.column, DiagCode::bad_value, "basis must be Z or X");
            ir.actions.push_back({parse_cycle(f.get("cycle", toks[1].column), line_no), line_no,
                                  ReadoutAction{r, bt.text == "Z" ? Basis::Kind::Z : Basis::Kind::X}});
        } else {
            diag(line_no, head.column, DiagCode::unknown_directive, "unknown directive '" + d + "'");
        }
    }
    if (!header) diag(last_line ? last_line : 1, 1, DiagCode::bad_header, "expected 'format=1' header");

    for (const auto &[id, line, col] : transistor_refs) {
        const auto it = nodes.find(id);
        if (it == nodes.end() || it->second.second == 0) {
            diag(line, col, DiagCode::bad_reference, "'" + id + "' is not a declared transistor");
        }
    }
    for (const auto &p : refs) {
        const auto it = nodes.find(p.ref.node);
        if (it == nodes.end()) diag(p.line, p.column, DiagCode::bad_reference, "'" + p.ref.node + "' is not declared");
        const std::size_t arity = it->second.second;
        if (p.ref.kind == ModeRef::Kind::qubit && arity != 0) {
            diag(p.line, p.column, DiagCode::bad_reference, "'" + p.ref.node + "' is a transistor; use .in or .out");
        }
        if (p.ref.kind != ModeRef::Kind::qubit && arity == 0) {
            diag(p.line, p.column, DiagCode::bad_reference, "'" + p.ref.node + "' is a qubit and has no legs");
        }
        if (p.ref.index && *p.ref.index >= arity) {
            diag(p.line, p.column, DiagCode::bad_reference, "leg index out of range for '" + p.ref.node + "'");
        }
    }
    return ir;
}

/// Runs the schedule validator and reports its first complaint as a
/// diagnostic (column 1 of the offending line).
inline void check(const CircuitIR &ir) {
    try {
        validate(ir);
    } catch (const Error &e) {
        if (e.code() != Errc::validation) throw;
        std::string msg = e.what();
        std::size_t line = 0;
        if (msg.rfind("line ", 0) == 0) {
            const auto colon = msg.find(": ");
            if (const auto v = detail::to_int(std::string_view(msg).substr(5, colon - 5)); v && colon != std::string::npos) {
                line = static_cast<std::size_t>(*v);
                msg = msg.substr(colon + 2);
            }
        }
        throw ParseError({line, 1, DiagCode::schedule, msg});
    }
}

namespace detail {

inline std::string kind_spelling(const TransistorDecl &t) {
    const auto &k = t.kind;
    switch (k.tag()) {
        case GateKind::Tag::wire:
            return "kind=wire" + (k.bulk_length() == 1 ? std::string() : " length=" + std::to_string(k.bulk_length()));
        case GateKind::Tag::schain: return k.dagger() ? "kind=schain_dg" : "kind=schain";
        case GateKind::Tag::magic_t: return k.dagger() ? "kind=magictdg" : "kind=magict";
        case GateKind::Tag::choi:
            for (const char *n : {"I", "X", "Y", "Z", "H", "S", "SDG", "T", "TDG", "CZ", "CNOT", "SWAP"}) {
                const auto g = gates::by_name(n);
                if (g->dim() == k.unitary().dim() && g->matrix().max_abs_diff(k.unitary().matrix()) <= 1e-14) {
                    return std::string("kind=choi:") + n;
                }
            }
            fail(Errc::invalid_argument, "stored gate of '" + t.id + "' has no text name");
    }
    return {};
}

} // namespace detail

/// Canonical text for `ir`; parse(serialize(ir)) == ir for parsed IR.
inline std::string serialize(const CircuitIR &ir) {
    std::ostringstream o;
    o << "format=1\n";
    if (ir.budget) o << "budget " << *ir.budget << "\n";
    if (ir.no_frame_correction) o << "pragma no_frame_correction\n";
    for (const auto &t : ir.transistors) {
        o << "transistor " << t.id << " " << detail::kind_spelling(t) << (t.backward ? " dir=backward" : "") << "\n";
    }
    for (const auto &q : ir.qubits) o << "qubit " << q.id << " state=" << q.state.text << "\n";
    for (const auto &e : ir.links) o << "ebit " << e.id << " a=" << e.a.to_string() << " b=" << e.b.to_string() << "\n";
    for (const auto &l : ir.loops) o << "loop " << l.id << ".out -> " << l.id << ".in\n";
    for (const auto &p : ir.inputs) {
        o << "input " << p.id << ".in state=" << p.state.text << (p.mode == InjectMode::measure ? " mode=measure" : "")
          << "\n";
    }
    for (const auto &a : ir.actions) {
        std::visit(
            [&](const auto &op) {
                using T = std::decay_t<decltype(op)>;
                if constexpr (std::is_same_v<T, GateAction>) {
                    o << "gate " << op.name << " targets=";
                    for (std::size_t i = 0; i < op.targets.size(); ++i) o << (i ? "," : "") << op.targets[i].to_string();
                    o << " cycle=" << a.cycle;
                    if (op.condition) o << " if=" << *op.condition;
                } else if constexpr (std::is_same_v<T, SignalAction>) {
                    o << "signal " << op.id << " cycle=" << a.cycle;
                } else if constexpr (std::is_same_v<T, RefreshAction>) {
                    o << "refresh " << op.id << " cycle=" << a.cycle;
                } else {
                    o << "readout " << op.target.to_string() << " basis=" << (op.basis == Basis::Kind::Z ? "Z" : "X")
                      << " cycle=" << a.cycle;
                }
            },
            a.op);
        o << "\n";
    }
    return o.str();
}

/// Reads and parses a circuit file; file states resolve next to it.
inline CircuitIR parse_file(const std::filesystem::path &p) {
    std::ifstream f(p, std::ios::binary);
    if (!f) throw ParseError({0, 0, DiagCode::state_file, "cannot open " + p.string()});
    std::stringstream ss;
    ss << f.rdbuf();
    return parse(ss.str(), {p.parent_path().empty() ? std::filesystem::path(".") : p.parent_path()});
}

} // namespace qsc::cli
