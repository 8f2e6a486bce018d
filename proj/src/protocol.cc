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

#include "sqav/protocol.h"

#include <algorithm>
#include <numeric>
#include <string>

#include "sqav/broadcast.h"
#include "sqav/errors.h"
#include "sqav/permutation.h"

namespace sqav {

// ---------------------------------------------------------------------------
// Types

void ProtocolConfig::validate() const {
    if (n < 2) {
        throw ConfigError("config: need at least 2 voters, got n=" + std::to_string(n));
    }
    if (m < 2) {
        throw ConfigError("config: need at least 2 candidates, got m=" + std::to_string(m));
    }
    if (delta0 < 1 || delta1 < 1) {
        throw ConfigError("config: delta0 and delta1 must be at least 1");
    }
    if (distributor < 0 || distributor >= n) {
        throw ConfigError("config: distributor " + std::to_string(distributor) + " is not a voter");
    }
}

std::string_view resource_name(ResourceKind kind) {
    return kind == ResourceKind::chi ? "chi" : "singlet";
}

std::vector<int> NumberMatrix::column(int k) const {
    std::vector<int> out;
    out.reserve(cells.size());
    for (const auto &row : cells) {
        out.push_back(row.at(k));
    }
    return out;
}

std::vector<int> NumberMatrix::row_sums() const {
    std::vector<int> out;
    for (const auto &row : cells) {
        long long s = std::accumulate(row.begin(), row.end(), 0LL);
        out.push_back(static_cast<int>(s % modulus));
    }
    return out;
}

bool BallotMatrix::rows_sum_to_zero() const {
    auto sums = row_sums();
    return std::all_of(sums.begin(), sums.end(), [](int s) { return s == 0; });
}

BallotMatrix make_ballot_matrix(int m, std::vector<std::vector<int>> rows) {
    if (m < 2) {
        throw ConfigError("ballot matrix: modulus must be at least 2");
    }
    for (const auto &row : rows) {
        if (row.size() != rows.front().size()) {
            throw ConfigError("ballot matrix: ragged rows");
        }
        for (int v : row) {
            if (v < 0 || v >= m) {
                throw ConfigError("ballot matrix: entry " + std::to_string(v) + " outside Z_" + std::to_string(m));
            }
        }
    }
    BallotMatrix b;
    b.modulus = m;
    b.cells = std::move(rows);
    return b;
}

bool IndexArray::is_permutation() const {
    return is_full_permutation(d);
}

std::string_view abort_reason_name(AbortReason r) {
    switch (r) {
        case AbortReason::none:
            return "none";
        case AbortReason::ballot_test_failed:
            return "ballot_test_failed";
        case AbortReason::index_test_failed:
            return "index_test_failed";
        case AbortReason::broadcast_timeout:
            return "broadcast_timeout";
        case AbortReason::verification_failed:
            return "verification_failed";
    }
    return "unknown";
}

// ---------------------------------------------------------------------------
// ParticleMatrix

ParticleMatrix::ParticleMatrix(ResourceKind kind, int checkers, int delta, std::vector<SparseState> copies)
    : kind_(kind), checkers_(checkers), delta_(delta), copies_(std::move(copies)), consumed_(copies_.size(), false) {
    if (copies_.empty()) {
        throw ConfigError("ParticleMatrix: no copies");
    }
    for (const auto &c : copies_) {
        if (c.n() != copies_.front().n() || c.m() != copies_.front().m()) {
            throw DimensionError("ParticleMatrix: copies must share one shape");
        }
    }
}

void ParticleMatrix::set_copy(size_t row, SparseState state) {
    const SparseState &old = copies_.at(row);
    if (state.n() != old.n() || state.m() != old.m()) {
        throw DimensionError("ParticleMatrix::set_copy: shape (" + std::to_string(state.n()) + ", " +
                             std::to_string(state.m()) + ") does not match (" + std::to_string(old.n()) + ", " +
                             std::to_string(old.m()) + ")");
    }
    copies_[row] = std::move(state);
}

std::vector<size_t> ParticleMatrix::untested_rows() const {
    std::vector<size_t> out;
    for (size_t j = 0; j < copies_.size(); j++) {
        if (!consumed_[j]) {
            out.push_back(j);
        }
    }
    return out;
}

std::vector<ParticleHandle> ParticleMatrix::column(int k) const {
    if (k < 0 || k >= columns()) {
        throw DimensionError("ParticleMatrix::column: index out of range");
    }
    std::vector<ParticleHandle> out;
    for (size_t j = 0; j < copies_.size(); j++) {
        out.push_back({j, k});
    }
    return out;
}

// ---------------------------------------------------------------------------
// Shared machinery

ParticleMatrix distribute(ResourceKind kind, int columns, int m, size_t rows, int checkers, int delta,
                          ResourceBudget budget) {
    SparseState proto = kind == ResourceKind::chi ? make_chi_state(columns, m, budget)
                                                  : make_singlet_state(columns, budget);
    std::vector<SparseState> copies(rows, proto);
    return ParticleMatrix(kind, checkers, delta, std::move(copies));
}

std::vector<size_t> select_test_rows(std::span<const size_t> available, int delta, SeededRng &rng) {
    if (delta < 0 || static_cast<size_t>(delta) > available.size()) {
        throw ConfigError("select_test_rows: need " + std::to_string(delta) + " rows but only " +
                          std::to_string(available.size()) + " remain untested");
    }
    std::vector<size_t> pool(available.begin(), available.end());
    for (int i = 0; i < delta; i++) {
        size_t j = static_cast<size_t>(i) + rng.below(pool.size() - static_cast<size_t>(i));
        std::swap(pool[static_cast<size_t>(i)], pool[j]);
    }
    pool.resize(static_cast<size_t>(delta));
    return pool;
}

bool row_test_passes(ResourceKind kind, Basis basis, std::span<const int> outcomes, int m) {
    if (kind == ResourceKind::singlet) {
        return is_full_permutation(outcomes);
    }
    if (basis == Basis::computational) {
        long long s = std::accumulate(outcomes.begin(), outcomes.end(), 0LL);
        return s % m == 0;
    }
    return std::adjacent_find(outcomes.begin(), outcomes.end(), std::not_equal_to<>()) == outcomes.end();
}

TestRound run_security_test(ParticleMatrix &matrix, int checker, SeededRng &rng) {
    if (matrix.finished_) {
        throw SequencingError("security test after the remaining copies were measured");
    }
    if (checker < 0 || checker >= matrix.checkers_) {
        throw ConfigError("security test: checker " + std::to_string(checker) + " out of range");
    }
    if (std::find(matrix.checked_by_.begin(), matrix.checked_by_.end(), checker) != matrix.checked_by_.end()) {
        throw SequencingError("security test: checker " + std::to_string(checker) + " already tested");
    }
    auto available = matrix.untested_rows();
    auto chosen = select_test_rows(available, matrix.delta_, rng);
    std::vector<Basis> bases;
    for (size_t i = 0; i < chosen.size(); i++) {
        bases.push_back(rng.coin() ? Basis::fourier : Basis::computational);
    }

    TestRound round;
    round.checker = checker;
    round.kind = matrix.kind_;
    round.passed = true;
    const int m = matrix.copies_.front().m();
    for (size_t i = 0; i < chosen.size(); i++) {
        const size_t row = chosen[i];
        SeededRng row_rng = rng.derive(row);
        JointMeasurement meas = measure_all(matrix.copies_[row], bases[i], row_rng);
        RowTest rt;
        rt.row = row;
        rt.basis = bases[i];
        rt.passed = row_test_passes(matrix.kind_, bases[i], meas.outcomes, m);
        rt.outcomes = std::move(meas.outcomes);
        round.passed = round.passed && rt.passed;
        matrix.copies_[row] = std::move(meas.collapsed);
        matrix.consumed_[row] = true;
        round.rows.push_back(std::move(rt));
    }
    matrix.checked_by_.push_back(checker);
    matrix.completed_checks_++;
    return round;
}

std::vector<std::vector<int>> measure_remaining(ParticleMatrix &matrix, SeededRng &rng) {
    if (matrix.finished_) {
        throw SequencingError("remaining copies were already measured");
    }
    if (matrix.completed_checks_ != matrix.checkers_) {
        throw SequencingError("remaining copies measured before all " + std::to_string(matrix.checkers_) +
                              " checkers finished (" + std::to_string(matrix.completed_checks_) + " done)");
    }
    std::vector<std::vector<int>> out;
    for (size_t row : matrix.untested_rows()) {
        SeededRng row_rng = rng.derive(row);
        JointMeasurement meas = measure_all(matrix.copies_[row], Basis::computational, row_rng);
        out.push_back(std::move(meas.outcomes));
        matrix.copies_[row] = std::move(meas.collapsed);
        matrix.consumed_[row] = true;
    }
    matrix.finished_ = true;
    return out;
}

// ---------------------------------------------------------------------------
// Voting steps

ParticleMatrix distribute_chi(const ProtocolConfig &config, ResourceBudget budget) {
    config.validate();
    const size_t rows = static_cast<size_t>(config.n) * static_cast<size_t>(1 + config.delta0);
    return distribute(ResourceKind::chi, config.n, config.m, rows, config.n, config.delta0, budget);
}

ParticleMatrix distribute_singlet(const ProtocolConfig &config, ResourceBudget budget) {
    config.validate();
    const size_t rows = 1 + static_cast<size_t>(config.n) * static_cast<size_t>(config.delta1);
    return distribute(ResourceKind::singlet, config.n, config.n, rows, config.n, config.delta1, budget);
}

TestRound security_test_chi(ParticleMatrix &matrix, int checker, SeededRng &rng) {
    if (matrix.kind() != ResourceKind::chi) {
        throw SequencingError("security_test_chi: matrix holds singlet copies");
    }
    return run_security_test(matrix, checker, rng);
}

TestRound security_test_singlet(ParticleMatrix &matrix, int checker, SeededRng &rng) {
    if (matrix.kind() != ResourceKind::singlet) {
        throw SequencingError("security_test_singlet: matrix holds chi copies");
    }
    return run_security_test(matrix, checker, rng);
}

BallotMatrix generate_ballots(ParticleMatrix &matrix, SeededRng &rng) {
    if (matrix.kind() != ResourceKind::chi) {
        throw SequencingError("generate_ballots: matrix holds singlet copies");
    }
    if (matrix.untested_rows().size() != static_cast<size_t>(matrix.columns())) {
        throw SequencingError("generate_ballots: expected " + std::to_string(matrix.columns()) +
                              " untested rows, found " + std::to_string(matrix.untested_rows().size()));
    }
    BallotMatrix b;
    b.modulus = matrix.copy(0).m();
    b.cells = measure_remaining(matrix, rng);
    return b;
}

IndexArray generate_indices(ParticleMatrix &matrix, SeededRng &rng) {
    if (matrix.kind() != ResourceKind::singlet) {
        throw SequencingError("generate_indices: matrix holds chi copies");
    }
    if (matrix.untested_rows().size() != 1) {
        throw SequencingError("generate_indices: expected exactly one untested row, found " +
                              std::to_string(matrix.untested_rows().size()));
    }
    auto rows = measure_remaining(matrix, rng);
    return IndexArray{std::move(rows.front())};
}

std::vector<int> cast_vote(std::span<const int> ballots, int d, int v, int m) {
    if (v < 0 || v >= m) {
        throw PreconditionError("cast_vote: vote " + std::to_string(v) + " outside Z_" + std::to_string(m));
    }
    if (d < 0 || static_cast<size_t>(d) >= ballots.size()) {
        throw PreconditionError("cast_vote: index " + std::to_string(d) + " is not a ballot box");
    }
    std::vector<int> out(ballots.begin(), ballots.end());
    out[static_cast<size_t>(d)] = (out[static_cast<size_t>(d)] + v) % m;
    return out;
}

VoteMatrix broadcast_votes(const std::vector<std::optional<std::vector<int>>> &columns, int m, EventLog *log) {
    const int n = static_cast<int>(columns.size());
    int rows = 0;
    for (const auto &c : columns) {
        if (c) {
            rows = static_cast<int>(c->size());
            break;
        }
    }
    std::vector<int> owners(static_cast<size_t>(n));
    std::iota(owners.begin(), owners.end(), 0);
    SimultaneousBroadcast channel(m, rows, owners, log);
    for (int k = 0; k < n; k++) {
        if (columns[static_cast<size_t>(k)]) {
            channel.commit(k, {{k, *columns[static_cast<size_t>(k)]}});
        }
    }
    return channel.release();
}

Tally tally(const VoteMatrix &votes) {
    Tally t;
    t.R = votes.row_sums();
    t.N.assign(static_cast<size_t>(votes.modulus), 0);
    for (int r : t.R) {
        t.N[static_cast<size_t>(r)]++;
    }
    return t;
}

bool verify_own_vote(const Tally &t, int d, int v) {
    return d >= 0 && static_cast<size_t>(d) < t.R.size() && t.R[static_cast<size_t>(d)] == v;
}

// ---------------------------------------------------------------------------
// Whole runs

namespace {

nlohmann::json round_summary(const TestRound &r) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto &rt : r.rows) {
        rows.push_back({{"row", rt.row}, {"basis", basis_name(rt.basis)}, {"passed", rt.passed}});
    }
    return {{"resource", resource_name(r.kind)}, {"rows", rows}, {"passed", r.passed}};
}

void apply_channel_attack(const std::optional<AttackSpec> &attack, ProtocolStep step, ParticleMatrix &matrix,
                          SeededRng &eve, Transcript &t) {
    if (!attack) {
        return;
    }
    if (const auto *ic = std::get_if<InterceptSubset>(&*attack); ic && ic->target == step) {
        if (static_cast<size_t>(ic->x) > matrix.rows()) {
            throw ConfigError("intercept: x=" + std::to_string(ic->x) + " exceeds " + std::to_string(matrix.rows()) +
                              " distributed copies");
        }
        auto rows = select_test_rows(matrix.untested_rows(), ic->x, eve);
        nlohmann::json hits = nlohmann::json::array();
        const Basis b = ic->model == DisturbanceModel::measure_resend_fourier ? Basis::fourier : Basis::computational;
        for (size_t row : rows) {
            ParticleMeasurement pm = measure_particle(matrix.copy(row), ic->victim, b, eve);
            matrix.set_copy(row, std::move(pm.collapsed));
            hits.push_back({{"row", row}, {"outcome", pm.outcome}});
        }
        t.adversary_log.push_back({{"kind", "intercept"}, {"step", static_cast<int>(step)}, {"victim", ic->victim},
                                   {"particles", hits}});
    }
    if (const auto *rc = std::get_if<ReplaceCopy>(&*attack); rc && rc->target == step) {
        if (rc->row >= matrix.rows()) {
            throw ConfigError("replace: row " + std::to_string(rc->row) + " out of range");
        }
        matrix.set_copy(rc->row, rc->state);
        t.adversary_log.push_back({{"kind", "replace"}, {"step", static_cast<int>(step)}, {"row", rc->row}});
    }
}

// Step 3 on given ballots and indices; appends to the transcript.
void run_casting(Transcript &t, const BallotMatrix &ballots, const IndexArray &indices) {
    const int n = t.config.n;
    const int m = t.config.m;
    const auto *dv = t.attack ? std::get_if<DoubleVote>(&*t.attack) : nullptr;
    const auto *wh = t.attack ? std::get_if<WithholdColumn>(&*t.attack) : nullptr;

    std::vector<int> owners(static_cast<size_t>(n));
    std::iota(owners.begin(), owners.end(), 0);
    SimultaneousBroadcast channel(m, n, owners, &t.log);
    for (int k = 0; k < n; k++) {
        std::vector<int> col = cast_vote(ballots.column(k), indices.d[static_cast<size_t>(k)],
                                         t.votes[static_cast<size_t>(k)], m);
        if (dv && dv->attacker == k) {
            col = cast_vote(col, dv->box, dv->extra, m);
            t.adversary_log.push_back({{"kind", "double_vote"}, {"attacker", k}, {"box", dv->box},
                                       {"extra", dv->extra}});
        }
        t.log.append("cast", k, Visibility::owner, {{"column", col}});
        if (wh && wh->voter == k) {
            t.adversary_log.push_back({{"kind", "withhold"}, {"voter", k}});
            continue;
        }
        channel.commit(k, {{k, col}});
    }
    try {
        t.vote_matrix = channel.release();
    } catch (const BroadcastTimeout &e) {
        t.abort_reason = AbortReason::broadcast_timeout;
        t.abort_detail = e.what();
        return;
    }
    t.tally = tally(*t.vote_matrix);
    t.log.append("tally", -1, Visibility::all, {{"R", t.tally->R}, {"N", t.tally->N}});

    std::vector<int> failed;
    for (int k = 0; k < n; k++) {
        bool ok = verify_own_vote(*t.tally, indices.d[static_cast<size_t>(k)], t.votes[static_cast<size_t>(k)]);
        t.verified.push_back(ok);
        t.log.append("verify", k, Visibility::all, {{"passed", ok}});
        if (!ok) {
            failed.push_back(k);
        }
    }
    if (!failed.empty()) {
        t.abort_reason = AbortReason::verification_failed;
        std::string who;
        for (int k : failed) {
            who += (who.empty() ? "" : ",") + std::to_string(k);
        }
        t.abort_detail = "vote not counted correctly for voter(s) " + who;
    }
}

void validate_votes(const ProtocolConfig &config, std::span<const int> votes) {
    if (votes.size() != static_cast<size_t>(config.n)) {
        throw ConfigError("votes: expected " + std::to_string(config.n) + " votes, got " +
                          std::to_string(votes.size()));
    }
    for (int v : votes) {
        if (v < 0 || v >= config.m) {
            throw ConfigError("votes: candidate " + std::to_string(v) + " outside Z_" + std::to_string(config.m));
        }
    }
}

Transcript start_transcript(const ProtocolConfig &config, std::span<const int> votes,
                            const std::optional<AttackSpec> &attack) {
    config.validate();
    validate_votes(config, votes);
    if (attack) {
        validate_attack(*attack, config.n, config.m);
    }
    Transcript t;
    t.config = config;
    t.votes.assign(votes.begin(), votes.end());
    t.attack = attack;
    return t;
}

void record_collusion_view(Transcript &t) {
    if (!t.attack || !t.ballots) {
        return;
    }
    const auto *col = std::get_if<Collusion>(&*t.attack);
    if (!col) {
        return;
    }
    // Pooling their own ballot numbers, the coalition learns each box's honest
    // sum, and nothing finer.
    nlohmann::json sums = nlohmann::json::array();
    for (const auto &row : t.ballots->cells) {
        int own = 0;
        for (int k : col->dishonest) {
            own += row[static_cast<size_t>(k)];
        }
        sums.push_back(((-own) % t.config.m + t.config.m) % t.config.m);
    }
    t.adversary_log.push_back({{"kind", "collusion_view"}, {"dishonest", col->dishonest}, {"honest_box_sums", sums}});
}

}  // namespace

Transcript run_full_protocol(const ProtocolConfig &config, std::span<const int> votes,
                             const std::optional<AttackSpec> &attack) {
    Transcript t = start_transcript(config, votes, attack);
    const int n = config.n;
    SeededRng master(config.seed);
    SeededRng eve = master.derive(streams::kAdversary);

    // Step 1: ballot boxes.
    ParticleMatrix chi = distribute_chi(config);
    t.ballot_rows = chi.rows();
    t.log.append("distribute", config.distributor, Visibility::all,
                 {{"resource", "chi"}, {"rows", chi.rows()}, {"columns", n}});
    apply_channel_attack(attack, ProtocolStep::ballots, chi, eve, t);
    for (int k = 0; k < n; k++) {
        SeededRng rng = master.derive({streams::kVoter, static_cast<std::uint64_t>(k), 1});
        TestRound round = security_test_chi(chi, k, rng);
        t.log.append("test", k, Visibility::all, round_summary(round));
        bool passed = round.passed;
        t.ballot_tests.push_back(std::move(round));
        if (!passed) {
            t.abort_reason = AbortReason::ballot_test_failed;
            t.abort_detail = "ballot-step test failed for checker " + std::to_string(k);
            return t;
        }
    }
    SeededRng ballot_rng = master.derive(streams::kBallotStep);
    t.ballots = generate_ballots(chi, ballot_rng);
    for (int k = 0; k < n; k++) {
        t.log.append("ballots", k, Visibility::owner, {{"column", t.ballots->column(k)}});
    }
    record_collusion_view(t);

    // Step 2: index numbers.
    ParticleMatrix singlet = distribute_singlet(config);
    t.index_rows = singlet.rows();
    t.log.append("distribute", config.distributor, Visibility::all,
                 {{"resource", "singlet"}, {"rows", singlet.rows()}, {"columns", n}});
    apply_channel_attack(attack, ProtocolStep::indices, singlet, eve, t);
    for (int k = 0; k < n; k++) {
        SeededRng rng = master.derive({streams::kVoter, static_cast<std::uint64_t>(k), 2});
        TestRound round = security_test_singlet(singlet, k, rng);
        t.log.append("test", k, Visibility::all, round_summary(round));
        bool passed = round.passed;
        t.index_tests.push_back(std::move(round));
        if (!passed) {
            t.abort_reason = AbortReason::index_test_failed;
            t.abort_detail = "index-step test failed for checker " + std::to_string(k);
            return t;
        }
    }
    SeededRng index_rng = master.derive(streams::kIndexStep);
    t.indices = generate_indices(singlet, index_rng);
    for (int k = 0; k < n; k++) {
        t.log.append("index", k, Visibility::owner, {{"d", t.indices->d[static_cast<size_t>(k)]}});
    }

    // Step 3: casting, broadcast, self-tally, verification.
    run_casting(t, *t.ballots, *t.indices);
    return t;
}

Transcript run_from_fixtures(const ProtocolConfig &config, const BallotMatrix &ballots, const IndexArray &indices,
                             std::span<const int> votes, const std::optional<AttackSpec> &attack) {
    Transcript t = start_transcript(config, votes, attack);
    if (ballots.rows() != config.n || ballots.columns() != config.n || ballots.modulus != config.m) {
        throw ConfigError("fixture: ballot matrix must be n x n over Z_m");
    }
    if (!ballots.rows_sum_to_zero()) {
        throw ConfigError("fixture: ballot rows must sum to 0 mod m");
    }
    if (indices.d.size() != static_cast<size_t>(config.n) || !indices.is_permutation()) {
        throw ConfigError("fixture: index array must be a permutation of 0..n-1");
    }
    t.fixture = true;
    t.ballots = ballots;
    t.indices = indices;
    for (int k = 0; k < config.n; k++) {
        t.log.append("ballots", k, Visibility::owner, {{"column", ballots.column(k)}});
    }
    record_collusion_view(t);
    for (int k = 0; k < config.n; k++) {
        t.log.append("index", k, Visibility::owner, {{"d", indices.d[static_cast<size_t>(k)]}});
    }
    run_casting(t, ballots, indices);
    return t;
}

}  // namespace sqav
