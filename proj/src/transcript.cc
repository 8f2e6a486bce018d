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

#include "sqav/transcript.h"

namespace sqav {

std::string_view visibility_name(Visibility v) {
    switch (v) {
        case Visibility::owner:
            return "owner";
        case Visibility::synchronizer:
            return "synchronizer";
        case Visibility::all:
            return "all";
    }
    return "unknown";
}

const Event &EventLog::append(std::string kind, int actor, Visibility visibility, nlohmann::json payload) {
    events_.push_back({events_.size(), std::move(kind), actor, visibility, std::move(payload)});
    return events_.back();
}

std::optional<size_t> EventLog::first(std::string_view kind) const {
    for (const auto &e : events_) {
        if (e.kind == kind) {
            return e.seq;
        }
    }
    return std::nullopt;
}

namespace {

nlohmann::json rounds_json(const std::vector<TestRound> &rounds) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto &r : rounds) {
        nlohmann::json rows = nlohmann::json::array();
        for (const auto &rt : r.rows) {
            rows.push_back({{"row", rt.row},
                            {"basis", basis_name(rt.basis)},
                            {"outcomes", rt.outcomes},
                            {"passed", rt.passed}});
        }
        out.push_back({{"checker", r.checker}, {"passed", r.passed}, {"rows", std::move(rows)}});
    }
    return out;
}

template <typename T>
nlohmann::json opt_json(const std::optional<T> &v, auto &&fn) {
    return v ? fn(*v) : nlohmann::json(nullptr);
}

}  // namespace

nlohmann::json transcript_to_json(const Transcript &t) {
    nlohmann::json events = nlohmann::json::array();
    for (const auto &e : t.log.events()) {
        nlohmann::json ev = {{"seq", e.seq},
                             {"kind", e.kind},
                             {"actor", e.actor},
                             {"visibility", visibility_name(e.visibility)}};
        if (!e.payload.is_null()) {
            ev["payload"] = e.payload;
        }
        events.push_back(std::move(ev));
    }
    std::vector<int> verified(t.verified.begin(), t.verified.end());
    nlohmann::json verified_json = nlohmann::json::array();
    for (bool b : t.verified) {
        verified_json.push_back(b);
    }
    return {
        {"schema", kTranscriptSchema},
        {"seed", t.config.seed},
        {"config",
         {{"n", t.config.n},
          {"m", t.config.m},
          {"delta0", t.config.delta0},
          {"delta1", t.config.delta1},
          {"seed", t.config.seed},
          {"distributor", t.config.distributor}}},
        {"votes", t.votes},
        {"attack", t.attack ? attack_to_json(*t.attack) : nlohmann::json(nullptr)},
        {"fixture", t.fixture},
        {"ballot_rows", t.ballot_rows},
        {"index_rows", t.index_rows},
        {"ballot_tests", rounds_json(t.ballot_tests)},
        {"index_tests", rounds_json(t.index_tests)},
        {"ballots", opt_json(t.ballots, [](const BallotMatrix &b) { return nlohmann::json(b.cells); })},
        {"indices", opt_json(t.indices, [](const IndexArray &a) { return nlohmann::json(a.d); })},
        {"vote_matrix", opt_json(t.vote_matrix, [](const VoteMatrix &v) { return nlohmann::json(v.cells); })},
        {"tally", opt_json(t.tally, [](const Tally &x) { return nlohmann::json{{"R", x.R}, {"N", x.N}}; })},
        {"verified", verified_json},
        {"adversary", t.adversary_log},
        {"abort", {{"reason", abort_reason_name(t.abort_reason)}, {"detail", t.abort_detail}}},
        {"events", std::move(events)},
    };
}

}  // namespace sqav
