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

#ifndef SQAV_AMC_H
#define SQAV_AMC_H

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "sqav/protocol_types.h"
#include "sqav/transcript.h"

namespace sqav {

inline constexpr const char *kAmcSchema = "sqav.amc/1";

/// Exact simulation stores |S_nbar>, which has nbar! terms.
inline constexpr int kAmcExactMaxInputs = 7;

struct AmcInputs {
    int m = 2;
    std::vector<std::vector<int>> values;  ///< values[k] are party k's inputs

    int parties() const { return static_cast<int>(values.size()); }
    int total_inputs() const;
    void validate() const;
};

enum class AmcMode {
    exact,  ///< quantum resources simulated and tested
    ideal,  ///< ballots and permutation sampled classically, no tests
};

std::string_view amc_mode_name(AmcMode mode);
AmcMode parse_amc_mode(std::string_view text);

struct AmcConfig {
    int delta2 = 1;
    int delta3 = 1;
    std::uint64_t seed = 0;
    AmcMode mode = AmcMode::exact;

    void validate() const;
};

struct AmcResult {
    AmcInputs inputs;
    AmcConfig config;
    std::vector<int> column_owner;
    std::vector<TestRound> ballot_tests;
    std::vector<TestRound> index_tests;
    std::optional<BallotMatrix> ballots;
    std::optional<IndexArray> indices;
    std::optional<VoteMatrix> vote_matrix;
    std::vector<int> data;  ///< R_j, a permutation of all inputs
    std::vector<bool> verified;
    EventLog log;
    AbortReason abort_reason = AbortReason::none;
    std::string abort_detail;

    bool completed() const { return abort_reason == AbortReason::none && !data.empty(); }
};

/// Party k owns a contiguous block of input_counts[k] columns, in party order.
std::vector<int> amc_column_owners(const AmcInputs &inputs);

AmcResult run_amc(const AmcInputs &inputs, const AmcConfig &config);

nlohmann::json amc_to_json(const AmcResult &r);

struct AnonymousBroadcastResult {
    AmcResult run;
    std::vector<int> messages;  ///< revealed non-abstain values, ascending
    int abstentions = 0;
};

/// Each party sends one value in 0..m-2 or abstains (sends m-1).
AnonymousBroadcastResult anonymous_broadcast(const std::vector<std::optional<int>> &messages, int m,
                                             const AmcConfig &config);

struct RankingResult {
    AmcResult run;
    std::vector<int> ranked;  ///< data sorted descending, ties in box order
    /// rank[k][i]: 0-based position of party k's i-th input in `ranked`
    std::vector<std::vector<int>> rank;
};

RankingResult anonymous_ranking(const AmcInputs &inputs, const AmcConfig &config);

}  // namespace sqav

#endif
