// Copyright 2026 The SQAV Authors
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

#ifndef SQAV_SCENARIO_H
#define SQAV_SCENARIO_H

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "sqav/adversary.h"
#include "sqav/amc.h"
#include "sqav/attack.h"
#include "sqav/protocol_types.h"
#include "sqav/theorems.h"

namespace sqav {

/// Parses JSON text; syntax errors become ConfigError with line and column.
nlohmann::json parse_config_text(const std::string &text);

struct VoteScenario {
    ProtocolConfig config;
    std::vector<int> votes;
    std::optional<AttackSpec> attack;
    std::optional<BallotMatrix> fixture_ballots;
    std::optional<IndexArray> fixture_indices;
};

VoteScenario parse_vote_scenario(const nlohmann::json &j);

struct AmcScenario {
    AmcInputs inputs;
    AmcConfig config;
    bool ranking = false;
};

AmcScenario parse_amc_scenario(const nlohmann::json &j);

enum class SweepKind { intercept, replace };

struct SweepSpec {
    SweepKind kind = SweepKind::intercept;
    int n = 0;
    int m = 2;
    std::vector<int> deltas;
    std::vector<int> xs;  ///< intercept only
    InterceptOptions intercept;
    nlohmann::json state;  ///< replace only: "zeros" or a state dump
};

struct AttackScenario {
    std::uint64_t seed = 0;
    std::uint64_t trials = 10000;
    std::vector<SweepSpec> sweeps;
};

AttackScenario parse_attack_scenario(const nlohmann::json &j);

/// Executes every sweep point. Seeds for each point are derived from the
/// scenario seed and the point's position in the grid.
std::vector<SweepRow> run_attack_scenario(const AttackScenario &s);

VerifyOptions parse_verify_scenario(const nlohmann::json &j);

}  // namespace sqav

#endif
