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

#ifndef SQAV_PROTOCOL_TYPES_H
#define SQAV_PROTOCOL_TYPES_H

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sqav/qstate.h"

namespace sqav {

struct ProtocolConfig {
    int n = 0;           ///< voters
    int m = 0;           ///< candidates
    int delta0 = 1;      ///< test copies per checker, ballot step
    int delta1 = 1;      ///< test copies per checker, index step
    std::uint64_t seed = 0;
    int distributor = 0;

    /// Throws ConfigError on n < 2, m < 2, delta < 1 or a bad distributor.
    void validate() const;
};

enum class ResourceKind { chi, singlet };

std::string_view resource_name(ResourceKind kind);

struct RowTest {
    size_t row = 0;
    Basis basis = Basis::computational;
    std::vector<int> outcomes;  ///< one per column, as announced to the checker
    bool passed = false;
};

struct TestRound {
    int checker = 0;
    ResourceKind kind = ResourceKind::chi;
    std::vector<RowTest> rows;
    bool passed = false;
};

/// Rows are boxes, columns are voters (or, in the multi-input setting, input
/// slots). Entries live in Z_modulus.
struct NumberMatrix {
    int modulus = 0;
    std::vector<std::vector<int>> cells;  ///< cells[row][column]

    int rows() const { return static_cast<int>(cells.size()); }
    int columns() const { return cells.empty() ? 0 : static_cast<int>(cells.front().size()); }
    std::vector<int> column(int k) const;
    /// Per-row sums mod modulus.
    std::vector<int> row_sums() const;
    bool operator==(const NumberMatrix &) const = default;
};

/// Output of the ballot step: r[j][k].
struct BallotMatrix : NumberMatrix {
    /// Every row sums to 0 mod m.
    bool rows_sum_to_zero() const;
};

/// Broadcast matrix r'[j][k] after every voter has cast.
struct VoteMatrix : NumberMatrix {};

/// Builds a BallotMatrix from explicit rows; throws ConfigError on ragged
/// input or out-of-range entries.
BallotMatrix make_ballot_matrix(int m, std::vector<std::vector<int>> rows);

struct IndexArray {
    std::vector<int> d;
    bool is_permutation() const;
};

struct Tally {
    std::vector<int> R;  ///< per-box sums mod m
    std::vector<int> N;  ///< per-candidate counts
};

enum class AbortReason {
    none,
    ballot_test_failed,
    index_test_failed,
    broadcast_timeout,
    verification_failed,
};

std::string_view abort_reason_name(AbortReason r);

}  // namespace sqav

#endif
