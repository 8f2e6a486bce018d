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

#include <gtest/gtest.h>

#include "sqav/errors.h"
#include "sqav/scenario.h"

namespace sqav {
namespace {

using nlohmann::json;

TEST(ParseConfigText, ReportsLine) {
    try {
        parse_config_text("{\n  \"n\": 3,\n  \"m\": ,\n}");
        FAIL();
    } catch (const ConfigError &e) {
        EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos) << e.what();
    }
}

TEST(VoteScenario, ParsesAndValidates) {
    VoteScenario s = parse_vote_scenario(json::parse(R"({"n":3,"m":2,"votes":[0,1,1],"seed":5,
        "attack":{"kind":"intercept","x":2}})"));
    EXPECT_EQ(s.config.seed, 5u);
    EXPECT_TRUE(s.attack.has_value());
    EXPECT_THROW(parse_vote_scenario(json::parse(R"({"n":1,"m":2,"votes":[0]})")), ConfigError);
    EXPECT_THROW(parse_vote_scenario(json::parse(R"({"n":3,"m":2,"votez":[0,1,1]})")), ConfigError);
    try {
        parse_vote_scenario(json::parse(R"({"n":3,"m":"two","votes":[0,1,1]})"));
        FAIL();
    } catch (const ConfigError &e) {
        EXPECT_NE(std::string(e.what()).find("'m'"), std::string::npos);
    }
}

TEST(AmcScenario, FlatAndNestedValues) {
    AmcScenario a = parse_amc_scenario(
        json::parse(R"({"parties":2,"input_counts":[2,1],"values":[1,2,3],"m":5})"));
    EXPECT_EQ(a.inputs.values, (std::vector<std::vector<int>>{{1, 2}, {3}}));
    AmcScenario b = parse_amc_scenario(json::parse(R"({"parties":2,"values":[[1,2],[3]],"m":5,"mode":"ideal"})"));
    EXPECT_EQ(b.inputs.values, a.inputs.values);
    EXPECT_EQ(b.config.mode, AmcMode::ideal);
    EXPECT_THROW(parse_amc_scenario(json::parse(R"({"parties":2,"input_counts":[2,2],"values":[1,2,3],"m":5})")),
                 ConfigError);
    EXPECT_THROW(parse_amc_scenario(json::parse(R"({"parties":3,"values":[1,2],"m":5})")), ConfigError);
}

TEST(AttackScenario, EmptyGridRejected) {
    EXPECT_THROW(parse_attack_scenario(json::parse(R"({"sweeps":[]})")), ConfigError);
    EXPECT_THROW(parse_attack_scenario(json::parse(R"({"sweeps":[{"attack":"intercept","n":4,"delta0":[],"x":[1]}]})")),
                 ConfigError);
    EXPECT_THROW(parse_attack_scenario(json::parse(R"({"sweeps":[{"attack":"bogus","n":4,"delta0":1}]})")),
                 ConfigError);
}

TEST(AttackScenario, RunsGrid) {
    AttackScenario s = parse_attack_scenario(json::parse(
        R"({"seed":2,"trials":500,"sweeps":[{"attack":"intercept","n":4,"delta0":2,"x":[1,2,3]},
            {"attack":"replace","n":3,"m":2,"delta0":[1,2]}]})"));
    std::vector<SweepRow> rows = run_attack_scenario(s);
    ASSERT_EQ(rows.size(), 6u + 6u);
    EXPECT_NEAR(rows[0].predicted, 1.0 / 3, 1e-12);
    EXPECT_NEAR(rows[2].predicted, 1.0 / 11, 1e-12);
    EXPECT_NEAR(rows[4].predicted, 1.0 / 55, 1e-12);
    EXPECT_EQ(rows[6].attack, "replace_test");
    EXPECT_NEAR(rows[6].predicted, 0.625, 1e-12);
    // Same seed, same rows.
    std::vector<SweepRow> again = run_attack_scenario(s);
    EXPECT_EQ(sweep_csv(rows), sweep_csv(again));
}

TEST(VerifyScenario, Ranges) {
    VerifyOptions o = parse_verify_scenario(json::parse(R"({"n_max":3,"seed":4})"));
    EXPECT_EQ(o.n_max, 3);
    EXPECT_EQ(o.seed, 4u);
    EXPECT_THROW(parse_verify_scenario(json::parse(R"({"n_min":1})")), ConfigError);
    EXPECT_THROW(parse_verify_scenario(json::parse(R"({"injected":[{"check":"theorem3","state":{}}]})")),
                 ConfigError);
}

}  // namespace
}  // namespace sqav
