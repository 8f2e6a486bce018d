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

#ifndef SQAV_TRANSCRIPT_H
#define SQAV_TRANSCRIPT_H

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "sqav/attack.h"
#include "sqav/protocol_types.h"

namespace sqav {

inline constexpr const char *kTranscriptSchema = "sqav.transcript/1";

/// Who may observe an event's payload.
enum class Visibility {
    owner,         ///< only the acting party
    synchronizer,  ///< the broadcast synchronizer, no payload content
    all,           ///< every party
};

std::string_view visibility_name(Visibility v);

struct Event {
    size_t seq = 0;
    std::string kind;
    int actor = -1;  ///< -1 for the environment
    Visibility visibility = Visibility::all;
    nlohmann::json payload;
};

/// Append-only event sequence with monotone sequence numbers.
class EventLog {
   public:
    const Event &append(std::string kind, int actor, Visibility visibility, nlohmann::json payload = {});
    const std::vector<Event> &events() const { return events_; }
    /// Sequence number of the first event of the given kind, if any.
    std::optional<size_t> first(std::string_view kind) const;

   private:
    std::vector<Event> events_;
};

/// Complete record of one protocol run. Private values (ballots, indices,
/// votes) are kept because the transcript is the simulator's view, not any
/// single party's.
struct Transcript {
    ProtocolConfig config;
    std::vector<int> votes;
    std::optional<AttackSpec> attack;
    bool fixture = false;  ///< ballots and indices were injected, tests skipped

    size_t ballot_rows = 0;
    size_t index_rows = 0;
    std::vector<TestRound> ballot_tests;
    std::vector<TestRound> index_tests;
    std::optional<BallotMatrix> ballots;
    std::optional<IndexArray> indices;
    std::optional<VoteMatrix> vote_matrix;
    std::optional<Tally> tally;
    std::vector<bool> verified;
    nlohmann::json adversary_log = nlohmann::json::array();
    EventLog log;

    AbortReason abort_reason = AbortReason::none;
    std::string abort_detail;

    bool completed() const { return abort_reason == AbortReason::none && tally.has_value(); }
};

nlohmann::json transcript_to_json(const Transcript &t);

}  // namespace sqav

#endif
