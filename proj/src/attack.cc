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

#include "sqav/attack.h"

#include <algorithm>
#include <string>

#include "sqav/errors.h"
#include "sqav/state_io.h"

namespace sqav {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};

ProtocolStep parse_step(const nlohmann::json &j) {
    int s = j.get<int>();
    if (s != 1 && s != 2) {
        throw ConfigError("attack: step must be 1 or 2");
    }
    return static_cast<ProtocolStep>(s);
}

DisturbanceModel parse_model(const std::string &s) {
    if (s == "measure_resend_computational") {
        return DisturbanceModel::measure_resend_computational;
    }
    if (s == "measure_resend_fourier") {
        return DisturbanceModel::measure_resend_fourier;
    }
    throw ConfigError("attack: unknown disturbance model '" + s + "'");
}

std::string model_name(DisturbanceModel m) {
    return m == DisturbanceModel::measure_resend_computational ? "measure_resend_computational"
                                                               : "measure_resend_fourier";
}

}  // namespace

void validate_attack(const AttackSpec &attack, int n, int m) {
    std::visit(overloaded{
                   [&](const InterceptSubset &a) {
                       if (a.x < 1) {
                           throw ConfigError("intercept: x must be at least 1");
                       }
                       if (a.victim < 0 || a.victim >= n) {
                           throw ConfigError("intercept: victim is not a voter");
                       }
                   },
                   [&](const ReplaceCopy &a) {
                       const int levels = a.target == ProtocolStep::ballots ? m : n;
                       if (a.state.n() != n || a.state.m() != levels) {
                           throw ConfigError("replace: state shape does not match the targeted resource");
                       }
                   },
                   [&](const Collusion &a) {
                       if (a.dishonest.empty() || static_cast<int>(a.dishonest.size()) >= n) {
                           throw ConfigError("collusion: need between 1 and n-1 dishonest voters");
                       }
                       for (int k : a.dishonest) {
                           if (k < 0 || k >= n) {
                               throw ConfigError("collusion: dishonest voter out of range");
                           }
                       }
                   },
                   [&](const DoubleVote &a) {
                       if (a.attacker < 0 || a.attacker >= n || a.box < 0 || a.box >= n) {
                           throw ConfigError("double_vote: attacker or box out of range");
                       }
                       if (a.extra < 1 || a.extra >= m) {
                           throw ConfigError("double_vote: extra vote must be in 1..m-1");
                       }
                   },
                   [&](const WithholdColumn &a) {
                       if (a.voter < 0 || a.voter >= n) {
                           throw ConfigError("withhold: voter out of range");
                       }
                   },
               },
               attack);
}

std::string_view attack_kind(const AttackSpec &attack) {
    return std::visit(overloaded{
                          [](const InterceptSubset &) { return std::string_view("intercept"); },
                          [](const ReplaceCopy &) { return std::string_view("replace"); },
                          [](const Collusion &) { return std::string_view("collusion"); },
                          [](const DoubleVote &) { return std::string_view("double_vote"); },
                          [](const WithholdColumn &) { return std::string_view("withhold"); },
                      },
                      attack);
}

nlohmann::json attack_to_json(const AttackSpec &attack) {
    nlohmann::json j = std::visit(
        overloaded{
            [](const InterceptSubset &a) {
                return nlohmann::json{{"x", a.x},
                                      {"step", static_cast<int>(a.target)},
                                      {"victim", a.victim},
                                      {"model", model_name(a.model)}};
            },
            [](const ReplaceCopy &a) {
                return nlohmann::json{
                    {"row", a.row}, {"step", static_cast<int>(a.target)}, {"state", state_to_json(a.state)}};
            },
            [](const Collusion &a) { return nlohmann::json{{"dishonest", a.dishonest}}; },
            [](const DoubleVote &a) {
                return nlohmann::json{{"attacker", a.attacker}, {"box", a.box}, {"extra", a.extra}};
            },
            [](const WithholdColumn &a) { return nlohmann::json{{"voter", a.voter}}; },
        },
        attack);
    j["kind"] = attack_kind(attack);
    return j;
}

AttackSpec attack_from_json(const nlohmann::json &j) {
    try {
        const std::string kind = j.at("kind").get<std::string>();
        if (kind == "intercept") {
            InterceptSubset a;
            a.x = j.at("x").get<int>();
            a.target = parse_step(j.value("step", nlohmann::json(1)));
            a.victim = j.value("victim", 1);
            a.model = parse_model(j.value("model", std::string("measure_resend_computational")));
            return a;
        }
        if (kind == "replace") {
            return ReplaceCopy{j.at("row").get<size_t>(), state_from_json(j.at("state")),
                               parse_step(j.value("step", nlohmann::json(1)))};
        }
        if (kind == "collusion") {
            return Collusion{j.at("dishonest").get<std::vector<int>>()};
        }
        if (kind == "double_vote") {
            return DoubleVote{j.at("attacker").get<int>(), j.at("box").get<int>(), j.value("extra", 1)};
        }
        if (kind == "withhold") {
            return WithholdColumn{j.at("voter").get<int>()};
        }
        throw ConfigError("attack: unknown kind '" + kind + "'");
    } catch (const nlohmann::json::exception &e) {
        throw ConfigError(std::string("attack: ") + e.what());
    }
}

}  // namespace sqav
