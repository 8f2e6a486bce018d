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

#ifndef SQAV_STATE_IO_H
#define SQAV_STATE_IO_H

#include <string>

#include "json.hpp"
#include "sqav/qstate.h"

namespace sqav {

/// {"n": .., "m": .., "terms": [{"digits": [..], "re": .., "im": ..}, ...]}
/// Terms are emitted in packed-key order. Doubles are written with
/// round-trip precision, so dump -> load reproduces amplitudes bit for bit.
nlohmann::json state_to_json(const SparseState &state);

/// Parses the dump format. The state must already be normalized.
SparseState state_from_json(const nlohmann::json &j);

}  // namespace sqav

#endif
