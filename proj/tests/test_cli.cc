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

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "commands.h"
#include "json.hpp"

namespace sqav::cli {
namespace {

namespace fs = std::filesystem;

fs::path fixture(const std::string &name) { return fs::path(SQAV_TEST_DATA) / "fixtures" / name; }

std::string slurp(const fs::path &p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

class CliTest : public ::testing::Test {
   protected:
    void SetUp() override {
        dir_ = fs::temp_directory_path() /
               ("sqav_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
        fs::remove_all(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }

    int run_cmd(const std::string &cmd, const std::string &config, std::optional<std::uint64_t> seed = {},
                std::optional<std::string> format = {}, std::string *out_text = nullptr) {
        RunManifest m;
        m.command = cmd;
        m.config = fixture(config);
        m.seed = seed;
        m.out_dir = dir_;
        m.format = format;
        std::ostringstream out, err;
        int code = run(m, out, err);
        if (out_text) {
            *out_text = out.str() + err.str();
        }
        return code;
    }

    fs::path dir_;
};

TEST_F(CliTest, VoteWorkedExample) {
    std::string text;
    EXPECT_EQ(run_cmd("vote", "worked_example_vote.json", {}, {}, &text), kExitOk);
    EXPECT_NE(text.find("R = (2,1,0,1)"), std::string::npos) << text;
    EXPECT_NE(text.find("N = (1,2,1)"), std::string::npos);
    nlohmann::json t = nlohmann::json::parse(slurp(dir_ / "transcript.json"));
    EXPECT_EQ(t.at("schema"), "sqav.transcript/1");
    EXPECT_TRUE(t.contains("seed"));
    EXPECT_EQ(slurp(dir_ / "transcript.json"), slurp(fs::path(SQAV_TEST_DATA) / "golden" / "worked_example_transcript.json"));
}

TEST_F(CliTest, VoteIsDeterministic) {
    ASSERT_EQ(run_cmd("vote", "honest_vote.json", 17), kExitOk);
    std::string first = slurp(dir_ / "transcript.json");
    ASSERT_EQ(run_cmd("vote", "honest_vote.json", 17), kExitOk);
    EXPECT_EQ(slurp(dir_ / "transcript.json"), first);
    ASSERT_EQ(run_cmd("vote", "honest_vote.json", 18), kExitOk);
    EXPECT_NE(slurp(dir_ / "transcript.json"), first);
    EXPECT_EQ(nlohmann::json::parse(first).at("seed"), 17u);
}

TEST_F(CliTest, VoteValidationAndAbort) {
    EXPECT_EQ(run_cmd("vote", "invalid_n1.json"), kExitValidation);
    EXPECT_EQ(run_cmd("vote", "withhold_vote.json"), kExitAbort);
    EXPECT_EQ(run_cmd("vote", "worked_example_vote.json", {}, "csv"), kExitValidation);
}

TEST_F(CliTest, Amc) {
    std::string text;
    EXPECT_EQ(run_cmd("amc", "amc_example.json", {}, {}, &text), kExitOk);
    EXPECT_NE(text.find("multiset = (2,3,6)"), std::string::npos) << text;
    EXPECT_NE(text.find("sum = 11"), std::string::npos);
    EXPECT_NE(text.find("ranking = (6,3,2)"), std::string::npos);
    EXPECT_EQ(run_cmd("amc", "amc_too_many.json", {}, {}, &text), kExitValidation);
    EXPECT_NE(text.find("ideal"), std::string::npos);
}

TEST_F(CliTest, Attack) {
    EXPECT_EQ(run_cmd("attack", "attack_small.json"), kExitOk);
    std::string csv = slurp(dir_ / "sweep.csv");
    EXPECT_EQ(csv.substr(0, csv.find('\n')), "attack,n,m,delta,x,predicted,measured,stderr,trials");
    nlohmann::json rep = nlohmann::json::parse(slurp(dir_ / "attack_report.json"));
    EXPECT_EQ(rep.at("schema"), "sqav.attack/1");
    EXPECT_EQ(rep.at("verdict"), "pass");
    EXPECT_EQ(run_cmd("attack", "attack_small.json", {}, "json"), kExitOk);
    EXPECT_EQ(nlohmann::json::parse(slurp(dir_ / "attack_report.json")).at("rows").size(), 6u);
    EXPECT_EQ(run_cmd("attack", "attack_empty.json"), kExitValidation);
}

TEST_F(CliTest, Verify) {
    EXPECT_EQ(run_cmd("verify", "verify_small.json"), kExitOk);
    nlohmann::json rep = nlohmann::json::parse(slurp(dir_ / "verify_report.json"));
    EXPECT_EQ(rep.at("schema"), "sqav.verify/1");
    EXPECT_EQ(run_cmd("verify", "verify_injected_bad.json"), kExitVerification);
    EXPECT_EQ(run_cmd("verify", "verify_n1.json"), kExitValidation);
}

TEST_F(CliTest, MissingConfig) {
    RunManifest m;
    m.command = "vote";
    m.config = dir_ / "nope.json";
    m.out_dir = dir_;
    std::ostringstream out, err;
    EXPECT_EQ(run(m, out, err), kExitValidation);
}

TEST_F(CliTest, OutDirFromEnvironment) {
    RunManifest m;
    ::setenv(kOutDirEnv, "/tmp/sqav_env_dir", 1);
    EXPECT_EQ(resolve_out_dir(m), fs::path("/tmp/sqav_env_dir"));
    m.out_dir = "/elsewhere";
    EXPECT_EQ(resolve_out_dir(m), fs::path("/elsewhere"));
    ::unsetenv(kOutDirEnv);
}

TEST_F(CliTest, AtomicWriteLeavesNoTemporaries) {
    fs::create_directories(dir_);
    write_atomic(dir_ / "a.txt", "hello");
    write_atomic(dir_ / "a.txt", "world");
    EXPECT_EQ(slurp(dir_ / "a.txt"), "world");
    int files = 0;
    for ([[maybe_unused]] const auto &e : fs::directory_iterator(dir_)) {
        files++;
    }
    EXPECT_EQ(files, 1);
}

}  // namespace
}  // namespace sqav::cli
