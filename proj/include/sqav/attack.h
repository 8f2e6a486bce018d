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

#ifndef SQAV_ATTACK_H
#define SQAV_ATTACK_H

#include <string_view>
#include <variant>
#include <vector>

#include "json.hpp"
#include "sqav/qstate.h"

namespace sqav {

enum class ProtocolStep { ballots = 1, indices = 2 };

/// What Eve does to a particle she intercepts before forwarding it.
enum class DisturbanceModel {
    measure_resend_computational,
    measure_resend_fourier,
};

/// Eve intercepts x particles of one voter's sequence in the given step.
struct InterceptSubset {
    int x = 1;
    ProtocolStep target = ProtocolStep::ballots;
    int victim = 1;
    DisturbanceModel model = DisturbanceModel::measure_resend_computational;
};

/// One distributed copy is swapped for an arbitrary state.
struct ReplaceCopy {
    size_t row = 0;
    SparseState state;
    ProtocolStep target = ProtocolStep::ballots;
};

/// Passive coalition that pools its private data. Its view is recorded in the
/// transcript; it does not perturb the run.
struct Collusion {
    std::vector<int> dishonest;
};

/// A voter adds an extra vote into a second box.
struct DoubleVote {
    int attacker = 0;
    int box = 0;
    int extra = 1;
};

/// A voter never commits its column to the broadcast.
struct WithholdColumn {
    int voter = 0;
};

using AttackSpec = std::variant<InterceptSubset, ReplaceCopy, Collusion, DoubleVote, WithholdColumn>;

/// Throws ConfigError when the attack is inconsistent with (n, m).
void validate_attack(const AttackSpec &attack, int n, int m);

std::string_view attack_kind(const AttackSpec &attack);

nlohmann::json attack_to_json(const AttackSpec &attack);
AttackSpec attack_from_json(const nlohmann::json &j);

}  // namespace sqav

#endif
