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

#include "sqav/broadcast.h"

#include <algorithm>
#include <string>

namespace sqav {

namespace {

std::string missing_message(const std::vector<int> &missing) {
    std::string s = "broadcast timed out waiting for part";
    s += missing.size() == 1 ? "y" : "ies";
    for (size_t i = 0; i < missing.size(); i++) {
        s += (i == 0 ? " " : ",") + std::to_string(missing[i]);
    }
    return s;
}

}  // namespace

BroadcastTimeout::BroadcastTimeout(std::vector<int> missing)
    : Error(missing_message(missing)), missing_(std::move(missing)) {}

SimultaneousBroadcast::SimultaneousBroadcast(int modulus, int rows, std::vector<int> column_owner, EventLog *log)
    : modulus_(modulus), rows_(rows), owner_(std::move(column_owner)), columns_(owner_.size()), log_(log) {
    if (owner_.empty() || rows_ < 1 || modulus_ < 2) {
        throw ConfigError("broadcast: need at least one column, one row and modulus >= 2");
    }
    parties_ = *std::max_element(owner_.begin(), owner_.end()) + 1;
    committed_.assign(static_cast<size_t>(parties_), false);
}

void SimultaneousBroadcast::commit(int party, const std::map<int, std::vector<int>> &columns) {
    if (released_) {
        throw SequencingError("broadcast: commit after release");
    }
    if (party < 0 || party >= parties_) {
        throw ConfigError("broadcast: unknown party " + std::to_string(party));
    }
    if (committed_[static_cast<size_t>(party)]) {
        throw SequencingError("broadcast: party " + std::to_string(party) + " committed twice");
    }
    size_t owned = 0;
    for (int c : owner_) {
        owned += c == party;
    }
    if (columns.size() != owned) {
        throw ConfigError("broadcast: party " + std::to_string(party) + " must commit exactly its " +
                          std::to_string(owned) + " column(s)");
    }
    for (const auto &[c, col] : columns) {
        if (c < 0 || static_cast<size_t>(c) >= owner_.size() || owner_[static_cast<size_t>(c)] != party) {
            throw ConfigError("broadcast: party " + std::to_string(party) + " does not own column " +
                              std::to_string(c));
        }
        if (static_cast<int>(col.size()) != rows_) {
            throw ConfigError("broadcast: column " + std::to_string(c) + " has wrong length");
        }
        for (int v : col) {
            if (v < 0 || v >= modulus_) {
                throw ConfigError("broadcast: entry outside Z_" + std::to_string(modulus_));
            }
        }
    }
    for (const auto &[c, col] : columns) {
        columns_[static_cast<size_t>(c)] = col;
    }
    committed_[static_cast<size_t>(party)] = true;
    if (log_) {
        log_->append("commit", party, Visibility::synchronizer);
    }
}

bool SimultaneousBroadcast::ready() const {
    return std::all_of(committed_.begin(), committed_.end(), [](bool b) { return b; });
}

std::vector<int> SimultaneousBroadcast::missing_parties() const {
    std::vector<int> out;
    for (int p = 0; p < parties_; p++) {
        if (!committed_[static_cast<size_t>(p)]) {
            out.push_back(p);
        }
    }
    return out;
}

VoteMatrix SimultaneousBroadcast::release() {
    if (released_) {
        throw SequencingError("broadcast: already released");
    }
    if (!ready()) {
        auto missing = missing_parties();
        if (log_) {
            log_->append("broadcast_timeout", -1, Visibility::all, {{"missing", missing}});
        }
        throw BroadcastTimeout(std::move(missing));
    }
    VoteMatrix vm;
    vm.modulus = modulus_;
    vm.cells.assign(static_cast<size_t>(rows_), std::vector<int>(owner_.size(), 0));
    for (size_t c = 0; c < owner_.size(); c++) {
        for (int j = 0; j < rows_; j++) {
            vm.cells[static_cast<size_t>(j)][c] = (*columns_[c])[static_cast<size_t>(j)];
        }
    }
    released_ = true;
    if (log_) {
        log_->append("release", -1, Visibility::all, {{"matrix", vm.cells}});
    }
    return vm;
}

}  // namespace sqav
