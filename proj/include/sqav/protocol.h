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

#ifndef SQAV_PROTOCOL_H
#define SQAV_PROTOCOL_H

#include <map>
#include <optional>
#include <span>
#include <vector>

#include "sqav/attack.h"
#include "sqav/protocol_types.h"
#include "sqav/qstate.h"
#include "sqav/rng.h"
#include "sqav/transcript.h"

namespace sqav {

struct ParticleHandle {
    size_t row;
    int column;
};

/// Copies of one resource state, row j holding particles p_{j,0..columns-1}.
/// Column k is the particle sequence held by its owner. Rows are consumed as
/// checkers test them.
class ParticleMatrix {
   public:
    ParticleMatrix(ResourceKind kind, int checkers, int delta, std::vector<SparseState> copies);

    ResourceKind kind() const { return kind_; }
    size_t rows() const { return copies_.size(); }
    int columns() const { return copies_.empty() ? 0 : copies_.front().n(); }
    int checkers() const { return checkers_; }
    int delta() const { return delta_; }

    const SparseState &copy(size_t row) const { return copies_.at(row); }
    /// Replaces the state of one row (tampering or collapse). Shape must match.
    void set_copy(size_t row, SparseState state);
    bool consumed(size_t row) const { return consumed_.at(row); }
    std::vector<size_t> untested_rows() const;
    std::vector<ParticleHandle> column(int k) const;

    int completed_checks() const { return completed_checks_; }
    const std::vector<int> &checked_by() const { return checked_by_; }

   private:
    friend TestRound run_security_test(ParticleMatrix &, int, SeededRng &);
    friend std::vector<std::vector<int>> measure_remaining(ParticleMatrix &, SeededRng &);

    ResourceKind kind_;
    int checkers_;
    int delta_;
    std::vector<SparseState> copies_;
    std::vector<bool> consumed_;
    std::vector<int> checked_by_;
    int completed_checks_ = 0;
    bool finished_ = false;
};

// ---------------------------------------------------------------------------
// Machinery shared by the voting protocol and the multi-input generalization.

/// `rows` fresh copies of the resource over `columns` particles. For chi the
/// level count is m; the singlet is always columns-level.
ParticleMatrix distribute(ResourceKind kind, int columns, int m, size_t rows, int checkers, int delta,
                          ResourceBudget budget = {});

/// Uniform delta-subset of `available`, in the order drawn.
std::vector<size_t> select_test_rows(std::span<const size_t> available, int delta, SeededRng &rng);

/// Whether a row of announced outcomes satisfies the resource's test condition.
bool row_test_passes(ResourceKind kind, Basis basis, std::span<const int> outcomes, int m);

/// One checker's round: picks delta untested rows with `rng`, a fair-coin basis
/// per row, and has every holder measure its particle of that row in that
/// basis. Measurement randomness for row j comes from rng.derive(j).
TestRound run_security_test(ParticleMatrix &matrix, int checker, SeededRng &rng);

/// Computational measurement of every untested row once every checker has
/// tested. Returns one outcome row per remaining copy in row order.
std::vector<std::vector<int>> measure_remaining(ParticleMatrix &matrix, SeededRng &rng);

// ---------------------------------------------------------------------------
// Voting protocol steps

ParticleMatrix distribute_chi(const ProtocolConfig &config, ResourceBudget budget = {});
TestRound security_test_chi(ParticleMatrix &matrix, int checker, SeededRng &rng);
BallotMatrix generate_ballots(ParticleMatrix &matrix, SeededRng &rng);

ParticleMatrix distribute_singlet(const ProtocolConfig &config, ResourceBudget budget = {});
TestRound security_test_singlet(ParticleMatrix &matrix, int checker, SeededRng &rng);
IndexArray generate_indices(ParticleMatrix &matrix, SeededRng &rng);

/// r'_j = r_j + v (mod m) at j = d, unchanged elsewhere.
std::vector<int> cast_vote(std::span<const int> ballots, int d, int v, int m);

/// Commits every present column and releases. A missing column raises
/// BroadcastTimeout.
VoteMatrix broadcast_votes(const std::vector<std::optional<std::vector<int>>> &columns, int m,
                           EventLog *log = nullptr);

/// Self-tally from the public vote matrix alone.
Tally tally(const VoteMatrix &votes);

/// True iff R[d] == v.
bool verify_own_vote(const Tally &t, int d, int v);

// ---------------------------------------------------------------------------
// Whole runs

/// Steps 1-3 with quantum tests, all randomness derived from config.seed.
Transcript run_full_protocol(const ProtocolConfig &config, std::span<const int> votes,
                             const std::optional<AttackSpec> &attack = std::nullopt);

/// Step 3 only, with the ballot matrix and index array supplied.
Transcript run_from_fixtures(const ProtocolConfig &config, const BallotMatrix &ballots, const IndexArray &indices,
                             std::span<const int> votes, const std::optional<AttackSpec> &attack = std::nullopt);

/// Stream labels under the master seed. Exposed so that callers reproducing a
/// run can derive the same streams.
namespace streams {
inline constexpr std::uint64_t kVoter = 1;
inline constexpr std::uint64_t kAdversary = 2;
inline constexpr std::uint64_t kBallotStep = 3;
inline constexpr std::uint64_t kIndexStep = 4;
}  // namespace streams

}  // namespace sqav

#endif
