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

#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qsc/core/matrix.hpp"

namespace qsc {

/// Source of measurement outcomes: either a seeded generator or a scripted
/// list of outcome bits. A k-bit outcome consumes k scripted entries, least
/// significant bit first.
class RngPolicy {
  public:
    static RngPolicy seeded(std::uint64_t seed) {
        RngPolicy p;
        p.forced_mode_ = false;
        p.seed_ = seed;
        p.engine_.seed(seed);
        return p;
    }

    static RngPolicy forced(std::vector<int> outcomes) {
        RngPolicy p;
        p.forced_mode_ = true;
        p.script_ = std::move(outcomes);
        return p;
    }

    [[nodiscard]] bool is_forced() const noexcept { return forced_mode_; }
    [[nodiscard]] std::uint64_t seed() const noexcept { return seed_; }
    [[nodiscard]] std::size_t consumed() const noexcept { return cursor_; }
    [[nodiscard]] std::size_t remaining() const noexcept { return script_.size() - cursor_; }

    /// Uniform double in [0, 1) with 53 random bits; independent of the
    /// standard library's distribution implementations.
    double uniform() { return static_cast<double>(engine_() >> 11U) * 0x1.0p-53; }

    std::mt19937_64 &engine() { return engine_; }

    /// Picks an outcome index among `probs` (size 2^bits).
    std::size_t choose(std::span<const double> probs, std::size_t bits, std::string_view label) {
        if (forced_mode_) {
            std::size_t idx = 0;
            for (std::size_t j = 0; j < bits; ++j) {
                require(cursor_ < script_.size(), Errc::forced_exhausted,
                        "forced outcome list exhausted at measurement '" + std::string(label) + "'");
                const int b = script_[cursor_++];
                require(b == 0 || b == 1, Errc::invalid_argument, "forced outcomes must be 0 or 1");
                idx |= static_cast<std::size_t>(b) << j;
            }
            require(idx < probs.size(), Errc::out_of_range, "forced outcome index out of range");
            if (probs[idx] < kProbTol) {
                fail(Errc::forced_zero_probability, "forced outcome " + std::to_string(idx) + " at measurement '" +
                                                        std::string(label) + "' has probability " +
                                                        std::to_string(probs[idx]));
            }
            return idx;
        }
        const double u = uniform();
        double acc = 0.0;
        std::size_t last_nonzero = 0;
        for (std::size_t i = 0; i < probs.size(); ++i) {
            if (probs[i] < kProbTol) {
                continue;
            }
            last_nonzero = i;
            acc += probs[i];
            if (u < acc) {
                return i;
            }
        }
        return last_nonzero;
    }

  private:
    RngPolicy() = default;
    bool forced_mode_ = false;
    std::uint64_t seed_ = 0;
    std::mt19937_64 engine_{0};
    std::vector<int> script_;
    std::size_t cursor_ = 0;
};

} // namespace qsc
