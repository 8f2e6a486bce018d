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

#include "sqav/amc.h"

#include <algorithm>
#include <numeric>

#include "sqav/broadcast.h"
#include "sqav/errors.h"
#include "sqav/protocol.h"

namespace sqav {

int AmcInputs::total_inputs() const {
    int total = 0;
    for (const auto &v : values) {
        total += static_cast<int>(v.size());
    }
    return total;
}

void AmcInputs::validate() const {
    if (m < 2) {
        throw ConfigError("amc: m must be at least 2");
    }
    if (values.empty()) {
        throw ConfigError("amc: need at least one party");
    }
    for (size_t k = 0; k < values.size(); k++) {
        if (values[k].empty()) {
            throw ConfigError("amc: party " + std::to_string(k) + " has no inputs");
        }
        for (int y : values[k]) {
            if (y < 0 || y >= m) {
                throw PreconditionError("amc: input " + std::to_string(y) + " of party " + std::to_string(k) +
                                        " outside 0.." + std::to_string(m - 1));
            }
        }
    }
    if (total_inputs() < 2) {
        throw ConfigError("amc: need at least two inputs in total");
    }
}

std::string_view amc_mode_name(AmcMode mode) {
    return mode == AmcMode::exact ? "exact" : "ideal";
}

AmcMode parse_amc_mode(std::string_view text) {
    if (text == "exact") {
        return AmcMode::exact;
    }
    if (text == "ideal") {
        return AmcMode::ideal;
    }
    throw ConfigError("amc: mode must be 'exact' or 'ideal'");
}

void AmcConfig::validate() const {
    if (delta2 < 1 || delta3 < 1) {
        throw ConfigError("amc: delta2 and delta3 must be at least 1");
    }
}

std::vector<int> amc_column_owners(const AmcInputs &inputs) {
    std::vector<int> owner;
    for (int k = 0; k < inputs.parties(); k++) {
        owner.insert(owner.end(), inputs.values[static_cast<size_t>(k)].size(), k);
    }
    return owner;
}

namespace {

BallotMatrix ideal_ballots(int nbar, int m, SeededRng &rng) {
    BallotMatrix b;
    b.modulus = m;
    for (int j = 0; j < nbar; j++) {
        std::vector<int> row(static_cast<size_t>(nbar));
        int sum = 0;
        for (int c = 0; c + 1 < nbar; c++) {
            row[static_cast<size_t>(c)] = static_cast<int>(rng.below(static_cast<std::uint64_t>(m)));
            sum += row[static_cast<size_t>(c)];
        }
        row.back() = ((-sum) % m + m) % m;
        b.cells.push_back(std::move(row));
    }
    return b;
}

IndexArray ideal_indices(int nbar, SeededRng &rng) {
    IndexArray a;
    a.d.resize(static_cast<size_t>(nbar));
    std::iota(a.d.begin(), a.d.end(), 0);
    for (size_t i = a.d.size(); i > 1; i--) {
        std::swap(a.d[i - 1], a.d[rng.below(i)]);
    }
    return a;
}

bool run_tests(AmcResult &r, ParticleMatrix &matrix, const SeededRng &master, std::uint64_t step,
               std::vector<TestRound> &rounds) {
    for (int k = 0; k < matrix.checkers(); k++) {
        SeededRng rng = master.derive({streams::kVoter, static_cast<std::uint64_t>(k), step});
        TestRound round = run_security_test(matrix, k, rng);
        r.log.append("test", k, Visibility::all, {{"step", step}, {"passed", round.passed}});
        bool passed = round.passed;
        rounds.push_back(std::move(round));
        if (!passed) {
            r.abort_reason = step == 1 ? AbortReason::ballot_test_failed : AbortReason::index_test_failed;
            r.abort_detail = "step " + std::to_string(step) + " test failed for party " + std::to_string(k);
            return false;
        }
    }
    return true;
}

}  // namespace

AmcResult run_amc(const AmcInputs &inputs, const AmcConfig &config) {
    inputs.validate();
    config.validate();
    const int n = inputs.parties();
    const int nbar = inputs.total_inputs();
    const int m = inputs.m;
    if (config.mode == AmcMode::exact && nbar > kAmcExactMaxInputs) {
        throw ResourceError("amc: " + std::to_string(nbar) + " inputs exceed the exact-simulation cap of " +
                            std::to_string(kAmcExactMaxInputs) + "; use mode \"ideal\"");
    }

    AmcResult r;
    r.inputs = inputs;
    r.config = config;
    r.column_owner = amc_column_owners(inputs);
    SeededRng master(config.seed);
    SeededRng ballot_rng = master.derive(streams::kBallotStep);
    SeededRng index_rng = master.derive(streams::kIndexStep);

    if (config.mode == AmcMode::exact) {
        ParticleMatrix chi = distribute(ResourceKind::chi, nbar, m,
                                        static_cast<size_t>(nbar) + static_cast<size_t>(n * config.delta2), n,
                                        config.delta2);
        r.log.append("distribute", 0, Visibility::all, {{"resource", "chi"}, {"rows", chi.rows()}});
        if (!run_tests(r, chi, master, 1, r.ballot_tests)) {
            return r;
        }
        r.ballots = generate_ballots(chi, ballot_rng);

        ParticleMatrix singlet = distribute(ResourceKind::singlet, nbar, nbar,
                                            1 + static_cast<size_t>(n * config.delta3), n, config.delta3);
        r.log.append("distribute", 0, Visibility::all, {{"resource", "singlet"}, {"rows", singlet.rows()}});
        if (!run_tests(r, singlet, master, 2, r.index_tests)) {
            return r;
        }
        r.indices = generate_indices(singlet, index_rng);
    } else {
        r.log.append("ideal_resources", -1, Visibility::all, {{"inputs", nbar}});
        r.ballots = ideal_ballots(nbar, m, ballot_rng);
        r.indices = ideal_indices(nbar, index_rng);
    }

    // Data addition: column c carries one input at row d_c.
    SimultaneousBroadcast channel(m, nbar, r.column_owner, &r.log);
    size_t c = 0;
    for (int k = 0; k < n; k++) {
        std::map<int, std::vector<int>> cols;
        for (int y : inputs.values[static_cast<size_t>(k)]) {
            cols[static_cast<int>(c)] = cast_vote(r.ballots->column(static_cast<int>(c)), r.indices->d[c], y, m);
            c++;
        }
        channel.commit(k, cols);
    }
    r.vote_matrix = channel.release();
    r.data = r.vote_matrix->row_sums();
    r.log.append("data", -1, Visibility::all, {{"R", r.data}});

    c = 0;
    for (int k = 0; k < n; k++) {
        bool ok = true;
        for (int y : inputs.values[static_cast<size_t>(k)]) {
            ok = ok && r.data[static_cast<size_t>(r.indices->d[c])] == y;
            c++;
        }
        r.verified.push_back(ok);
        r.log.append("verify", k, Visibility::all, {{"passed", ok}});
        if (!ok) {
            r.abort_reason = AbortReason::verification_failed;
            r.abort_detail += (r.abort_detail.empty() ? "inputs misplaced for party " : ",") + std::to_string(k);
        }
    }
    return r;
}

nlohmann::json amc_to_json(const AmcResult &r) {
    nlohmann::json verified = nlohmann::json::array();
    for (bool b : r.verified) {
        verified.push_back(b);
    }
    nlohmann::json events = nlohmann::json::array();
    for (const auto &e : r.log.events()) {
        nlohmann::json ev = {{"seq", e.seq},
                             {"kind", e.kind},
                             {"actor", e.actor},
                             {"visibility", visibility_name(e.visibility)}};
        if (!e.payload.is_null()) {
            ev["payload"] = e.payload;
        }
        events.push_back(std::move(ev));
    }
    auto tests = [](const std::vector<TestRound> &rounds) {
        nlohmann::json out = nlohmann::json::array();
        for (const auto &t : rounds) {
            out.push_back({{"checker", t.checker}, {"passed", t.passed}, {"rows", t.rows.size()}});
        }
        return out;
    };
    return {
        {"schema", kAmcSchema},
        {"seed", r.config.seed},
        {"mode", amc_mode_name(r.config.mode)},
        {"config", {{"m", r.inputs.m}, {"delta2", r.config.delta2}, {"delta3", r.config.delta3}}},
        {"parties", r.inputs.parties()},
        {"column_owner", r.column_owner},
        {"ballot_tests", tests(r.ballot_tests)},
        {"index_tests", tests(r.index_tests)},
        {"ballots", r.ballots ? nlohmann::json(r.ballots->cells) : nlohmann::json(nullptr)},
        {"indices", r.indices ? nlohmann::json(r.indices->d) : nlohmann::json(nullptr)},
        {"vote_matrix", r.vote_matrix ? nlohmann::json(r.vote_matrix->cells) : nlohmann::json(nullptr)},
        {"data", r.data},
        {"verified", verified},
        {"abort", {{"reason", abort_reason_name(r.abort_reason)}, {"detail", r.abort_detail}}},
        {"events", events},
    };
}

AnonymousBroadcastResult anonymous_broadcast(const std::vector<std::optional<int>> &messages, int m,
                                             const AmcConfig &config) {
    if (m < 3) {
        throw ConfigError("anonymous broadcast: m must be at least 3 (one symbol is reserved)");
    }
    AmcInputs inputs;
    inputs.m = m;
    for (size_t k = 0; k < messages.size(); k++) {
        const auto &msg = messages[k];
        if (msg && (*msg < 0 || *msg > m - 2)) {
            throw PreconditionError("anonymous broadcast: party " + std::to_string(k) + " message " +
                                    std::to_string(*msg) + " outside 0.." + std::to_string(m - 2) +
                                    (*msg == m - 1 ? " (m-1 is the abstain symbol)" : ""));
        }
        inputs.values.push_back({msg.value_or(m - 1)});
    }
    AnonymousBroadcastResult out{run_amc(inputs, config), {}, 0};
    for (int y : out.run.data) {
        if (y == m - 1) {
            out.abstentions++;
        } else {
            out.messages.push_back(y);
        }
    }
    std::sort(out.messages.begin(), out.messages.end());
    return out;
}

RankingResult anonymous_ranking(const AmcInputs &inputs, const AmcConfig &config) {
    RankingResult out{run_amc(inputs, config), {}, {}};
    const AmcResult &r = out.run;
    if (!r.completed()) {
        return out;
    }
    std::vector<int> order(r.data.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        return r.data[static_cast<size_t>(a)] > r.data[static_cast<size_t>(b)];
    });
    std::vector<int> position(order.size());
    for (size_t p = 0; p < order.size(); p++) {
        out.ranked.push_back(r.data[static_cast<size_t>(order[p])]);
        position[static_cast<size_t>(order[p])] = static_cast<int>(p);
    }
    // Each party knows its own boxes d_c and can read off its ranks.
    size_t c = 0;
    for (int k = 0; k < inputs.parties(); k++) {
        std::vector<int> ranks;
        for (size_t i = 0; i < inputs.values[static_cast<size_t>(k)].size(); i++, c++) {
            ranks.push_back(position[static_cast<size_t>(r.indices->d[c])]);
        }
        out.rank.push_back(std::move(ranks));
    }
    return out;
}

}  // namespace sqav
