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

#include "commands.h"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <ostream>
#include <sstream>
#include <unistd.h>

#include "json.hpp"
#include "sqav/adversary.h"
#include "sqav/amc.h"
#include "sqav/errors.h"
#include "sqav/protocol.h"
#include "sqav/scenario.h"
#include "sqav/theorems.h"
#include "sqav/transcript.h"

namespace sqav::cli {

namespace fs = std::filesystem;

namespace {

inline constexpr const char *kAttackSchema = "sqav.attack/1";

nlohmann::json load_config(const fs::path &path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot read config file '" + path.string() + "'");
    }
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config_text(ss.str());
}

std::string format_of(const RunManifest &m, const char *fallback) {
    std::string f = m.format.value_or(fallback);
    if (f != "json" && f != "csv") {
        throw ConfigError("--format must be json or csv");
    }
    return f;
}

void require_json_format(const RunManifest &m) {
    if (format_of(m, "json") != "json") {
        throw ConfigError("--format csv is only available for the attack command");
    }
}

fs::path prepare_out_dir(const RunManifest &m) {
    fs::path dir = resolve_out_dir(m);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) {
        throw ConfigError("cannot create output directory '" + dir.string() + "': " + ec.message());
    }
    return dir;
}

std::string join(const std::vector<int> &v) {
    std::string s = "(";
    for (size_t i = 0; i < v.size(); i++) {
        s += (i ? "," : "") + std::to_string(v[i]);
    }
    return s + ")";
}

}  // namespace

fs::path resolve_out_dir(const RunManifest &m) {
    if (m.out_dir) {
        return *m.out_dir;
    }
    if (const char *env = std::getenv(kOutDirEnv); env && *env) {
        return env;
    }
    return fs::current_path();
}

void write_atomic(const fs::path &path, const std::string &content) {
    fs::path tmp = path;
    tmp += ".tmp." + std::to_string(::getpid());
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw ConfigError("cannot write '" + tmp.string() + "'");
        }
        out << content;
        out.flush();
        if (!out) {
            throw ConfigError("write to '" + tmp.string() + "' failed");
        }
    }
    fs::rename(tmp, path);
}

int cmd_vote(const RunManifest &m, std::ostream &out) {
    require_json_format(m);
    nlohmann::json cfg = load_config(m.config);
    if (m.seed) {
        cfg["seed"] = *m.seed;
    }
    VoteScenario s = parse_vote_scenario(cfg);
    Transcript t = s.fixture_ballots ? run_from_fixtures(s.config, *s.fixture_ballots, *s.fixture_indices, s.votes,
                                                         s.attack)
                                     : run_full_protocol(s.config, s.votes, s.attack);
    const fs::path dir = prepare_out_dir(m);

    std::ostringstream summary;
    summary << "seed: " << s.config.seed << "\n"
            << "voters: " << s.config.n << ", candidates: " << s.config.m << "\n";
    if (t.tally) {
        summary << "R = " << join(t.tally->R) << "\n"
                << "N = " << join(t.tally->N) << "\n";
    }
    summary << "status: " << (t.completed() ? "completed" : "aborted") << "\n";
    if (t.abort_reason != AbortReason::none) {
        summary << "abort: " << abort_reason_name(t.abort_reason) << " (" << t.abort_detail << ")\n";
    }
    write_atomic(dir / "transcript.json", transcript_to_json(t).dump(2) + "\n");
    write_atomic(dir / "summary.txt", summary.str());
    out << summary.str();
    return t.completed() ? kExitOk : kExitAbort;
}

int cmd_amc(const RunManifest &m, std::ostream &out) {
    require_json_format(m);
    nlohmann::json cfg = load_config(m.config);
    if (m.seed) {
        cfg["seed"] = *m.seed;
    }
    AmcScenario s = parse_amc_scenario(cfg);
    const fs::path dir = prepare_out_dir(m);

    RankingResult rr = s.ranking ? anonymous_ranking(s.inputs, s.config) : RankingResult{run_amc(s.inputs, s.config), {}, {}};
    const AmcResult &r = rr.run;
    nlohmann::json doc = amc_to_json(r);
    std::ostringstream summary;
    summary << "seed: " << s.config.seed << "\nmode: " << amc_mode_name(s.config.mode) << "\n";
    if (r.completed()) {
        std::vector<int> multiset = r.data;
        std::sort(multiset.begin(), multiset.end());
        long long sum = 0;
        for (int y : multiset) {
            sum += y;
        }
        doc["multiset"] = multiset;
        doc["sum"] = sum;
        summary << "data = " << join(r.data) << "\nmultiset = " << join(multiset) << "\nsum = " << sum << "\n";
        if (s.ranking) {
            doc["ranking"] = {{"ranked", rr.ranked}, {"rank", rr.rank}};
            summary << "ranking = " << join(rr.ranked) << "\n";
        }
    }
    summary << "status: " << (r.completed() ? "completed" : "aborted") << "\n";
    if (r.abort_reason != AbortReason::none) {
        summary << "abort: " << abort_reason_name(r.abort_reason) << " (" << r.abort_detail << ")\n";
    }
    write_atomic(dir / "amc.json", doc.dump(2) + "\n");
    write_atomic(dir / "amc_summary.txt", summary.str());
    out << summary.str();
    return r.completed() ? kExitOk : kExitAbort;
}

int cmd_attack(const RunManifest &m, std::ostream &out) {
    const std::string format = format_of(m, "csv");
    nlohmann::json cfg = load_config(m.config);
    if (m.seed) {
        cfg["seed"] = *m.seed;
    }
    AttackScenario s = parse_attack_scenario(cfg);
    std::vector<SweepRow> rows = run_attack_scenario(s);
    const fs::path dir = prepare_out_dir(m);

    bool agree = true;
    nlohmann::json jrows = nlohmann::json::array();
    for (const auto &r : rows) {
        agree = agree && r.agrees();
        jrows.push_back({{"attack", r.attack},
                         {"n", r.n},
                         {"m", r.m},
                         {"delta", r.delta},
                         {"x", r.x},
                         {"predicted", r.predicted},
                         {"measured", r.measured},
                         {"stderr", r.stderr_},
                         {"trials", r.trials},
                         {"agrees", r.agrees()}});
    }
    nlohmann::json report = {{"schema", kAttackSchema},
                             {"seed", s.seed},
                             {"trials", s.trials},
                             {"verdict", agree ? "pass" : "fail"}};
    if (format == "csv") {
        write_atomic(dir / "sweep.csv", sweep_csv(rows));
        report["csv"] = "sweep.csv";
    } else {
        report["rows"] = jrows;
    }
    write_atomic(dir / "attack_report.json", report.dump(2) + "\n");

    out << "seed: " << s.seed << "\n" << sweep_csv(rows) << "verdict: " << (agree ? "pass" : "fail") << "\n";
    return agree ? kExitOk : kExitVerification;
}

int cmd_verify(const RunManifest &m, std::ostream &out) {
    require_json_format(m);
    nlohmann::json cfg = load_config(m.config);
    if (m.seed) {
        cfg["seed"] = *m.seed;
    }
    VerifyOptions o = parse_verify_scenario(cfg);
    VerificationReport rep = run_verification_suite(o);
    const fs::path dir = prepare_out_dir(m);
    write_atomic(dir / "verify_report.json", rep.to_json().dump(2) + "\n");
    size_t failed = 0;
    for (const auto &c : rep.checks) {
        if (!c.passed) {
            failed++;
            out << "FAIL " << c.name << " " << c.params.dump() << "\n";
        }
    }
    out << "seed: " << rep.seed << "\nchecks: " << rep.checks.size() << ", failed: " << failed << "\n";
    return rep.all_passed() ? kExitOk : kExitVerification;
}

int run(const RunManifest &m, std::ostream &out, std::ostream &err) {
    try {
        if (m.command == "vote") {
            return cmd_vote(m, out);
        }
        if (m.command == "amc") {
            return cmd_amc(m, out);
        }
        if (m.command == "attack") {
            return cmd_attack(m, out);
        }
        if (m.command == "verify") {
            return cmd_verify(m, out);
        }
        err << "error: unknown command '" << m.command << "'\n";
        return kExitValidation;
    } catch (const SequencingError &e) {
        err << "internal error: " << e.what() << "\n";
        return kExitInternal;
    } catch (const Error &e) {
        err << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::exception &e) {
        err << "internal error: " << e.what() << "\n";
        return kExitInternal;
    }
}

}  // namespace sqav::cli
