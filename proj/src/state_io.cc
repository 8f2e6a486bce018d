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

#include "sqav/state_io.h"

#include "sqav/errors.h"

namespace sqav {

nlohmann::json state_to_json(const SparseState &state) {
    nlohmann::json terms = nlohmann::json::array();
    for (const auto &[key, amp] : state.terms()) {
        terms.push_back({{"digits", state.digits_of(key)}, {"re", amp.real()}, {"im", amp.imag()}});
    }
    return {{"n", state.n()}, {"m", state.m()}, {"terms", std::move(terms)}};
}

SparseState state_from_json(const nlohmann::json &j) {
    try {
        const int n = j.at("n").get<int>();
        const int m = j.at("m").get<int>();
        std::vector<std::pair<std::vector<int>, ComplexAmp>> terms;
        for (const auto &t : j.at("terms")) {
            terms.emplace_back(t.at("digits").get<std::vector<int>>(),
                               ComplexAmp{t.at("re").get<double>(), t.value("im", 0.0)});
        }
        return SparseState::from_terms(n, m, terms, SparseState::Normalize::require);
    } catch (const nlohmann::json::exception &e) {
        throw ConfigError(std::string("state JSON: ") + e.what());
    }
}

}  // namespace sqav
