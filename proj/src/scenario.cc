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

#include "sqav/scenario.h"

#include "sqav/errors.h"
#include "sqav/state_io.h"

namespace sqav {

namespace {

using nlohmann::json;

// Reads a field and reports the dotted path on failure.
template <typename T>
T field(const json &j, const std::string &path, const std::string &key) {
    const std::string where = path.empty() ? key : path + "." + key;
    if (!j.is_object() || !j.contains(key)) {
        throw ConfigError("config field '" + where + "' is missing");
    }
    try {
        return j.at(key).get<T>();
    } catch (const json::exception &) {
        throw ConfigError("config field '" + where + "' has the wrong type (got " +
                          std::string(j.at(key).type_name()) + ")");
    }
}

template <typename T>
T field_or(const json &j, const std::string &path, const std::string &key, T fallback) {
    if (!j.is_object() || !j.contains(key)) {
        return fallback;
    }
    return field<T>(j, path, key);
}

std::vector<int> int_or_list(const json &j, const std::string &path, const std::string &key) {
    if (j.contains(key) && j.at(key).is_number_integer()) {
        return {field<int>(j, path, key)};
    }
    return field<std::vector<int>>(j, path, key);
}

void reject_unknown(const json &j, const std::string &path, std::initializer_list<const char *> known) {
    if (!j.is_object()) {
        throw ConfigError("config '" + (path.empty() ? std::string("<root>") : path) + "' must be an object");
    }
    for (const auto &[key, value] : j.items()) {
        bool ok = false;
        for (const char *k : known) {
            ok = ok || key == k;
        }
        if (!ok) {
            throw ConfigError("config field '" + (path.empty() ? key : path + "." + key) + "' is not recognised");
        }
    }
}

}  // namespace

json parse_config_text(const std::string &text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error &e) {
        size_t line = 1, col = 1;
        for (size_t i = 0; i + 1 < e.byte && i < text.size(); i++) {
            if (text[i] == '\n') {
                line++;
                col = 1;
            } else {
                col++;
            }
        }
        throw ConfigError("config is not valid JSON at line " + std::to_string(line) + ", column " +
                          std::to_string(col));
    }
}

VoteScenario parse_vote_scenario(const json &j) {
    reject_unknown(j, "", {"n", "m", "delta0", "delta1", "seed", "distributor", "votes", "attack", "fixture"});
    VoteScenario s;
    s.config.n = field<int>(j, "", "n");
    s.config.m = field<int>(j, "", "m");
    s.config.delta0 = field_or<int>(j, "", "delta0", 1);
    s.config.delta1 = field_or<int>(j, "", "delta1", 1);
    s.config.seed = field_or<std::uint64_t>(j, "", "seed", 0);
    s.config.distributor = field_or<int>(j, "", "distributor", 0);
    s.votes = field<std::vector<int>>(j, "", "votes");
    s.config.validate();
    if (j.contains("attack") && !j.at("attack").is_null()) {
        s.attack = attack_from_json(j.at("attack"));
    }
    if (j.contains("fixture")) {
        const json &f = j.at("fixture");
        reject_unknown(f, "fixture", {"ballots", "indices"});
        s.fixture_ballots = make_ballot_matrix(s.config.m, field<std::vector<std::vector<int>>>(f, "fixture", "ballots"));
        s.fixture_indices = IndexArray{field<std::vector<int>>(f, "fixture", "indices")};
    }
    return s;
}

AmcScenario parse_amc_scenario(const json &j) {
    reject_unknown(j, "", {"parties", "input_counts", "values", "m", "delta2", "delta3", "seed", "mode", "ranking"});
    AmcScenario s;
    s.inputs.m = field<int>(j, "", "m");
    const int parties = field<int>(j, "", "parties");
    if (parties < 1) {
        throw ConfigError("config field 'parties' must be at least 1");
    }
    const json &values = j.contains("values") ? j.at("values") : json();
    if (values.is_array() && !values.empty() && values.front().is_array()) {
        s.inputs.values = field<std::vector<std::vector<int>>>(j, "", "values");
    } else {
        // Flat list split by input_counts (default: one input per party).
        std::vector<int> flat = field<std::vector<int>>(j, "", "values");
        std::vector<int> counts = field_or<std::vector<int>>(j, "", "input_counts", std::vector<int>(
                                                                                        static_cast<size_t>(parties), 1));
        size_t pos = 0;
        for (int c : counts) {
            if (c < 1 || pos + static_cast<size_t>(c) > flat.size()) {
                throw ConfigError("config field 'input_counts' does not match 'values'");
            }
            s.inputs.values.emplace_back(flat.begin() + static_cast<std::ptrdiff_t>(pos),
                                         flat.begin() + static_cast<std::ptrdiff_t>(pos + static_cast<size_t>(c)));
            pos += static_cast<size_t>(c);
        }
        if (pos != flat.size()) {
            throw ConfigError("config field 'input_counts' does not account for every value");
        }
    }
    if (s.inputs.parties() != parties) {
        throw ConfigError("config field 'parties' is " + std::to_string(parties) + " but inputs describe " +
                          std::to_string(s.inputs.parties()) + " parties");
    }
    if (j.contains("input_counts")) {
        auto counts = field<std::vector<int>>(j, "", "input_counts");
        for (size_t k = 0; k < counts.size() && k < s.inputs.values.size(); k++) {
            if (static_cast<size_t>(counts[k]) != s.inputs.values[k].size()) {
                throw ConfigError("config field 'input_counts[" + std::to_string(k) + "]' does not match 'values'");
            }
        }
    }
    s.config.delta2 = field_or<int>(j, "", "delta2", 1);
    s.config.delta3 = field_or<int>(j, "", "delta3", 1);
    s.config.seed = field_or<std::uint64_t>(j, "", "seed", 0);
    s.config.mode = parse_amc_mode(field_or<std::string>(j, "", "mode", "exact"));
    s.ranking = field_or<bool>(j, "", "ranking", false);
    s.inputs.validate();
    s.config.validate();
    return s;
}

AttackScenario parse_attack_scenario(const json &j) {
    reject_unknown(j, "", {"seed", "trials", "sweeps"});
    AttackScenario s;
    s.seed = field_or<std::uint64_t>(j, "", "seed", 0);
    s.trials = field_or<std::uint64_t>(j, "", "trials", 10000);
    if (s.trials == 0) {
        throw ConfigError("config field 'trials' must be positive");
    }
    const json sweeps = field<json>(j, "", "sweeps");
    if (!sweeps.is_array() || sweeps.empty()) {
        throw ConfigError("config field 'sweeps' must be a non-empty list");
    }
    for (size_t i = 0; i < sweeps.size(); i++) {
        const std::string path = "sweeps[" + std::to_string(i) + "]";
        const json &sj = sweeps[i];
        reject_unknown(sj, path, {"attack", "n", "m", "delta0", "x", "step", "victim", "model", "state"});
        SweepSpec sp;
        const std::string kind = field<std::string>(sj, path, "attack");
        if (kind == "intercept") {
            sp.kind = SweepKind::intercept;
            sp.xs = int_or_list(sj, path, "x");
            if (sp.xs.empty()) {
                throw ConfigError("config field '" + path + ".x' is empty");
            }
            int step = field_or<int>(sj, path, "step", 1);
            if (step != 1 && step != 2) {
                throw ConfigError("config field '" + path + ".step' must be 1 or 2");
            }
            sp.intercept.target = static_cast<ProtocolStep>(step);
            sp.intercept.victim = field_or<int>(sj, path, "victim", 1);
            const std::string model = field_or<std::string>(sj, path, "model", "measure_resend_computational");
            if (model == "measure_resend_fourier") {
                sp.intercept.model = DisturbanceModel::measure_resend_fourier;
            } else if (model != "measure_resend_computational") {
                throw ConfigError("config field '" + path + ".model' is not a known disturbance model");
            }
        } else if (kind == "replace") {
            sp.kind = SweepKind::replace;
            sp.state = sj.contains("state") ? sj.at("state") : json("zeros");
        } else {
            throw ConfigError("config field '" + path + ".attack' must be 'intercept' or 'replace'");
        }
        sp.n = field<int>(sj, path, "n");
        sp.m = field_or<int>(sj, path, "m", 2);
        sp.deltas = int_or_list(sj, path, "delta0");
        if (sp.deltas.empty()) {
            throw ConfigError("config field '" + path + ".delta0' is empty");
        }
        s.sweeps.push_back(std::move(sp));
    }
    return s;
}

std::vector<SweepRow> run_attack_scenario(const AttackScenario &s) {
    std::vector<SweepRow> rows;
    SeededRng master(s.seed);
    for (size_t i = 0; i < s.sweeps.size(); i++) {
        const SweepSpec &sp = s.sweeps[i];
        for (size_t di = 0; di < sp.deltas.size(); di++) {
            const int delta = sp.deltas[di];
            if (sp.kind == SweepKind::intercept) {
                ProtocolConfig c;
                c.n = sp.n;
                c.m = sp.m;
                c.delta0 = c.delta1 = delta;
                for (size_t xi = 0; xi < sp.xs.size(); xi++) {
                    SeededRng rng = master.derive({i, di, xi});
                    DetectionReport r = simulate_intercept(c, sp.xs[xi], s.trials, rng, sp.intercept);
                    rows.push_back({"intercept", sp.n, sp.m, delta, sp.xs[xi], r.predicted_pass, r.measured_pass,
                                    r.stderr_pass, r.trials});
                    rows.push_back({"intercept_escape", sp.n, sp.m, delta, sp.xs[xi], r.predicted_escape,
                                    r.measured_escape, r.escape_stderr, r.escape_trials});
                }
            } else {
                SparseState phi = sp.state.is_string() && sp.state.get<std::string>() == "zeros"
                                      ? SparseState::basis_state(sp.n, sp.m, std::vector<int>(static_cast<size_t>(sp.n), 0))
                                      : state_from_json(sp.state);
                SeededRng rng = master.derive({i, di});
                DetectionReport r = detection_stats_replacement(phi, sp.n, sp.m, delta, s.trials, rng);
                rows.push_back({"replace_test", sp.n, sp.m, delta, 1, r.predicted_pass, r.measured_pass,
                                r.stderr_pass, r.trials});
                rows.push_back({"replace_escape", sp.n, sp.m, delta, 1, r.predicted_escape, r.measured_escape,
                                r.escape_stderr, r.escape_trials});
                rows.push_back({"replace_closed_form", sp.n, sp.m, delta, 1, r.closed_form_prediction, r.closed_form_measured,
                                r.closed_form_stderr, r.closed_form_trials});
            }
        }
    }
    return rows;
}

VerifyOptions parse_verify_scenario(const json &j) {
    reject_unknown(j, "", {"n_min", "n_max", "m_max", "property1_n_max", "unitaries", "samples", "vector_dim", "seed",
                           "injected"});
    VerifyOptions o;
    o.n_min = field_or<int>(j, "", "n_min", o.n_min);
    o.n_max = field_or<int>(j, "", "n_max", o.n_max);
    o.m_max = field_or<int>(j, "", "m_max", o.m_max);
    o.property1_n_max = field_or<int>(j, "", "property1_n_max", o.property1_n_max);
    o.unitaries = field_or<int>(j, "", "unitaries", o.unitaries);
    o.samples = field_or<int>(j, "", "samples", o.samples);
    o.vector_dim = field_or<int>(j, "", "vector_dim", o.vector_dim);
    o.seed = field_or<std::uint64_t>(j, "", "seed", o.seed);
    if (o.n_min < 2) {
        throw ConfigError("config field 'n_min' must be at least 2");
    }
    if (o.n_max < o.n_min || o.m_max < 2) {
        throw ConfigError("config fields 'n_min'/'n_max'/'m_max' describe an empty range");
    }
    if (j.contains("injected")) {
        const json inj = field<json>(j, "", "injected");
        for (size_t i = 0; i < inj.size(); i++) {
            const std::string path = "injected[" + std::to_string(i) + "]";
            std::string check = field<std::string>(inj[i], path, "check");
            if (check != "theorem1" && check != "theorem2") {
                throw ConfigError("config field '" + path + ".check' must be 'theorem1' or 'theorem2'");
            }
            o.injected.push_back({check, state_from_json(field<json>(inj[i], path, "state"))});
        }
    }
    return o;
}

}  // namespace sqav
