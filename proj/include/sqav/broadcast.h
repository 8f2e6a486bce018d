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

#ifndef SQAV_BROADCAST_H
#define SQAV_BROADCAST_H

#include <map>
#include <optional>
#include <vector>

#include "sqav/errors.h"
#include "sqav/protocol_types.h"
#include "sqav/transcript.h"

namespace sqav {

/// Raised when release is attempted before every party has committed.
class BroadcastTimeout : public Error {
   public:
    BroadcastTimeout(std::vector<int> missing);
    const std::vector<int> &missing() const { return missing_; }

   private:
    std::vector<int> missing_;
};

/// Trusted collect-then-release channel. Parties commit columns; nothing is
/// observable until release(), which reveals the whole matrix at once.
///
/// A party may own several columns (multi-input computation); `column_owner`
/// maps each column to its party.
class SimultaneousBroadcast {
   public:
    SimultaneousBroadcast(int modulus, int rows, std::vector<int> column_owner, EventLog *log = nullptr);

    /// Commits all columns owned by `party`. Each column must have `rows`
    /// entries in Z_modulus. Committing twice is an error.
    void commit(int party, const std::map<int, std::vector<int>> &columns);

    bool ready() const;
    std::vector<int> missing_parties() const;

    /// Throws BroadcastTimeout if any party has not committed.
    VoteMatrix release();

   private:
    int modulus_;
    int rows_;
    std::vector<int> owner_;
    int parties_;
    std::vector<std::optional<std::vector<int>>> columns_;
    std::vector<bool> committed_;
    bool released_ = false;
    EventLog *log_;
};

}  // namespace sqav

#endif
