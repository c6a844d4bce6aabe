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

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace qsc {

/// Coarse classification of failures. The CLI maps `validation` to exit
/// code 2 and everything else to exit code 3.
enum class Errc {
    invalid_argument,
    dimension_mismatch,
    out_of_range,
    capacity_exceeded,
    forced_zero_probability,
    forced_exhausted,
    consumed,
    not_eigenstate,
    not_unitary,
    validation,
};

inline std::string_view errc_name(Errc c) {
    switch (c) {
        case Errc::invalid_argument: return "invalid_argument";
        case Errc::dimension_mismatch: return "dimension_mismatch";
        case Errc::out_of_range: return "out_of_range";
        case Errc::capacity_exceeded: return "capacity_exceeded";
        case Errc::forced_zero_probability: return "forced_zero_probability";
        case Errc::forced_exhausted: return "forced_exhausted";
        case Errc::consumed: return "consumed";
        case Errc::not_eigenstate: return "not_eigenstate";
        case Errc::not_unitary: return "not_unitary";
        case Errc::validation: return "validation";
    }
    return "unknown";
}

class Error : public std::runtime_error {
  public:
    Error(Errc code, const std::string &what) : std::runtime_error(what), code_(code) {}
    [[nodiscard]] Errc code() const noexcept { return code_; }

  private:
    Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string &what) { throw Error(code, what); }

inline void require(bool cond, Errc code, const std::string &what) {
    if (!cond) {
        fail(code, what);
    }
}

} // namespace qsc
