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

#include "sqav/adversary.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <numeric>
#include <sstream>

#include "sqav/errors.h"
#include "sqav/permutation.h"
#include "sqav/stats.h"
#include "sqav/theorems.h"

namespace sqav {

namespace {

Rational reduced(std::uint64_t num, std::uint64_t den) {
    if (num == 0) {
        return {0, 1};
    }
    std::uint64_t g = std::gcd(num, den);
    return {num / g, den / g};
}

bool within(double measured, double predicted, double stderr_, double sigmas) {
    if (stderr_ == 0) {
        return std::abs(measured - predicted) < 1e-12;
    }
    return std::abs(measured - predicted) <= sigmas * stderr_;
}

ComplexAmp omega(long long k, int m) {
    const double t = 2.0 * std::numbers::pi * static_cast<double>(k % m) / m;
    return {std::cos(t), std::sin(t)};
}

// Splits the state on `keep` particles into one vector over the remaining
// particles per outcome of `keep`. Outcome index and residual index are
// little-endian in the order the particles are listed.
std::vector<Eigen::VectorXcd> conditional_vectors(const SparseState &s, const std::vector<int> &keep) {
    std::vector<int> rest;
    for (int p = 0; p < s.n(); p++) {
        if (std::find(keep.begin(), keep.end(), p) == keep.end()) {
            rest.push_back(p);
        }
    }
    const auto pow_m = [&](size_t k) {
        std::uint64_t v = 1;
        for (size_t i = 0; i < k; i++) {
            v *= static_cast<std::uint64_t>(s.m());
        }
        return v;
    };
    std::vector<Eigen::VectorXcd> out(pow_m(keep.size()), Eigen::VectorXcd::Zero(pow_m(rest.size())));
    for (const auto &[key, amp] : s.terms()) {
        std::uint64_t ki = 0, ri = 0, stride = 1;
        for (int p : keep) {
            ki += static_cast<std::uint64_t>(s.digit(key, p)) * stride;
            stride *= static_cast<std::uint64_t>(s.m());
        }
        stride = 1;
        for (int p : rest) {
            ri += static_cast<std::uint64_t>(s.digit(key, p)) * stride;
            stride *= static_cast<std::uint64_t>(s.m());
        }
        out[ki](static_cast<Eigen::Index>(ri)) += amp;
    }
    return out;
}

std::vector<int> index_digits(std::uint64_t idx, int m, size_t count) {
    std::vector<int> d(count);
    for (size_t i = 0; i < count; i++) {
        d[i] = static_cast<int>(idx % static_cast<std::uint64_t>(m));
        idx /= static_cast<std::uint64_t>(m);
    }
    return d;
}

// Distance between the rays of two vectors, minimised over a global phase.
double ray_distance(const Eigen::VectorXcd &a, const Eigen::VectorXcd &b) {
    const double na = a.norm(), nb = b.norm();
    if (na < 1e-14 || nb < 1e-14) {
        return (na < 1e-14 && nb < 1e-14) ? 0.0 : std::sqrt(2.0);
    }
    // Align the phase and take the norm directly; sqrt(2 - 2|<a,b>|) loses
    // half the digits when the rays coincide.
    const ComplexAmp overlap = b.dot(a);
    const ComplexAmp phase = std::abs(overlap) > 0 ? overlap / std::abs(overlap) : ComplexAmp(1.0);
    return (a / na - phase * (b / nb)).norm();
}

double mass_where(const SparseState &s, Basis basis, const std::vector<int> &particles,
                  const std::function<bool(const std::vector<int> &)> &pred) {
    SparseState r = in_basis(s, basis);
    double total = 0;
    std::vector<int> sub(particles.size());
    for (const auto &[key, amp] : r.terms()) {
        for (size_t i = 0; i < particles.size(); i++) {
            sub[i] = r.digit(key, particles[i]);
        }
        if (pred(sub)) {
            total += std::norm(amp);
        }
    }
    return total;
}

std::vector<int> complement(int n, const std::vector<int> &set) {
    std::vector<int> out;
    for (int k = 0; k < n; k++) {
        if (std::find(set.begin(), set.end(), k) == set.end()) {
            out.push_back(k);
        }
    }
    return out;
}

std::vector<int> checked_voter_set(int n, std::vector<int> dishonest, int min_honest) {
    std::sort(dishonest.begin(), dishonest.end());
    if (std::adjacent_find(dishonest.begin(), dishonest.end()) != dishonest.end()) {
        throw ConfigError("collusion: repeated dishonest voter");
    }
    for (int k : dishonest) {
        if (k < 0 || k >= n) {
            throw ConfigError("collusion: dishonest voter out of range");
        }
    }
    if (n - static_cast<int>(dishonest.size()) < min_honest) {
        throw ConfigError("collusion: need at least " + std::to_string(min_honest) + " honest voters");
    }
    return dishonest;
}

struct ClassSummary {
    int classes = 0;
    double min_separation = 0;
    int distinguishable = 0;
};

// Pairwise ray distances between one representative per class.
ClassSummary summarize_classes(const std::vector<Eigen::VectorXcd> &reps) {
    ClassSummary cs;
    cs.classes = static_cast<int>(reps.size());
    cs.min_separation = reps.size() < 2 ? 0.0 : std::numeric_limits<double>::infinity();
    std::vector<bool> separated(reps.size(), true);
    for (size_t a = 0; a < reps.size(); a++) {
        for (size_t b = a + 1; b < reps.size(); b++) {
            double d = ray_distance(reps[a], reps[b]);
            cs.min_separation = std::min(cs.min_separation, d);
            if (d < 1e-6) {
                separated[a] = separated[b] = false;
            }
        }
    }
    cs.distinguishable = static_cast<int>(std::count(separated.begin(), separated.end(), true));
    return cs;
}

}  // namespace

Rational untested_probability(int rows, int untested, int x) {
    if (x < 1 || x > rows) {
        throw ConfigError("intercept: x must lie in 1.." + std::to_string(rows));
    }
    if (x > untested) {
        return {0, 1};
    }
    // prod_{i<x} (untested - i) / (rows - i), reduced as we go
    Rational r{1, 1};
    for (int i = 0; i < x; i++) {
        Rational f = reduced(static_cast<std::uint64_t>(untested - i), static_cast<std::uint64_t>(rows - i));
        std::uint64_t g1 = std::gcd(r.num, f.den), g2 = std::gcd(f.num, r.den);
        r = {(r.num / g1) * (f.num / g2), (r.den / g2) * (f.den / g1)};
    }
    return r;
}

Rational pass_probability_intercept(int n, int delta0, int x) {
    if (n < 1 || delta0 < 0) {
        throw ConfigError("intercept: need n >= 1 and delta0 >= 0");
    }
    return untested_probability(n + n * delta0, n, x);
}

BasisPass exact_test_pass(const SparseState &row, ResourceKind kind) {
    std::vector<int> all(static_cast<size_t>(row.n()));
    std::iota(all.begin(), all.end(), 0);
    const int m = row.m();
    BasisPass p;
    p.p_c = mass_where(row, Basis::computational, all, [&](const std::vector<int> &d) {
        return row_test_passes(kind, Basis::computational, d, m);
    });
    p.p_f = mass_where(row, Basis::fourier, all,
                       [&](const std::vector<int> &d) { return row_test_passes(kind, Basis::fourier, d, m); });
    return p;
}

BasisPass disturbed_row_pass(ResourceKind kind, int n, int m, int victim, DisturbanceModel model) {
    if (victim < 0 || victim >= n) {
        throw ConfigError("intercept: victim out of range");
    }
    SparseState fresh = kind == ResourceKind::chi ? make_chi_state(n, m) : make_singlet_state(n);
    const int levels = fresh.m();
    const bool fourier = model == DisturbanceModel::measure_resend_fourier;
    const LocalUnitary f = fourier_matrix(levels);
    SparseState rotated = fourier ? apply_local_unitary(fresh, f.adjoint(), victim) : fresh;

    BasisPass avg{0, 0};
    for (int a = 0; a < levels; a++) {
        std::vector<SparseState::Term> kept;
        double weight = 0;
        for (const auto &[key, amp] : rotated.terms()) {
            if (rotated.digit(key, victim) == a) {
                kept.emplace_back(key, amp);
                weight += std::norm(amp);
            }
        }
        if (weight < kPruneThreshold) {
            continue;
        }
        SparseState post = SparseState::from_keyed(n, levels, std::move(kept));
        if (fourier) {
            post = apply_local_unitary(post, f, victim);
        }
        BasisPass p = exact_test_pass(post, kind);
        avg.p_c += weight * p.p_c;
        avg.p_f += weight * p.p_f;
    }
    return avg;
}

bool DetectionReport::pass_agrees(double sigmas) const {
    return within(measured_pass, predicted_pass, bernoulli_stderr(predicted_pass, trials), sigmas);
}

bool DetectionReport::escape_agrees(double sigmas) const {
    return within(measured_escape, predicted_escape, bernoulli_stderr(predicted_escape, escape_trials), sigmas);
}

bool DetectionReport::closed_form_agrees(double sigmas) const {
    return within(closed_form_measured, closed_form_prediction, bernoulli_stderr(closed_form_prediction, closed_form_trials), sigmas);
}

DetectionReport simulate_intercept(const ProtocolConfig &config, int x, std::uint64_t trials, const SeededRng &rng,
                                   const InterceptOptions &options) {
    config.validate();
    const bool ballots = options.target == ProtocolStep::ballots;
    const ResourceKind kind = ballots ? ResourceKind::chi : ResourceKind::singlet;
    const int delta = ballots ? config.delta0 : config.delta1;
    const int rows = ballots ? config.n * (1 + delta) : 1 + config.n * delta;
    const int untested = ballots ? config.n : 1;
    const std::uint64_t step = ballots ? 1 : 2;

    DetectionReport rep;
    rep.trials = rep.escape_trials = trials;
    if (x < 0 || x > rows) {
        throw ConfigError("intercept: x must lie in 0.." + std::to_string(rows));
    }
    if (x == 0) {
        rep.predicted_pass = rep.measured_pass = 1.0;
        rep.predicted_escape = rep.measured_escape = 1.0;
        rep.closed_form_prediction = rep.closed_form_measured = 1.0;
        return rep;
    }
    rep.per_basis = disturbed_row_pass(kind, config.n, config.m, options.victim, options.model);
    rep.predicted_pass = untested_probability(rows, untested, x).value();
    rep.closed_form_prediction = rep.predicted_pass;

    // The union of all test selections is a uniform subset of size
    // rows - untested, so the number of disturbed rows tested is
    // hypergeometric.
    const double p = rep.per_basis.per_test();
    const int tested = rows - untested;
    for (int k = 0; k <= x; k++) {
        if (k > tested || x - k > untested) {
            continue;
        }
        double hyper = static_cast<double>(binomial(x, k)) * static_cast<double>(binomial(rows - x, tested - k)) /
                       static_cast<double>(binomial(rows, tested));
        rep.predicted_escape += hyper * std::pow(p, k);
    }

    std::uint64_t all_untested = 0, escaped = 0;
    const Basis eve_basis =
        options.model == DisturbanceModel::measure_resend_fourier ? Basis::fourier : Basis::computational;
    for (std::uint64_t t = 0; t < trials; t++) {
        SeededRng master = rng.derive(t);
        ParticleMatrix matrix = ballots ? distribute_chi(config) : distribute_singlet(config);
        SeededRng eve = master.derive(streams::kAdversary);
        std::vector<size_t> hit = select_test_rows(matrix.untested_rows(), x, eve);
        for (size_t row : hit) {
            ParticleMeasurement pm = measure_particle(matrix.copy(row), options.victim, eve_basis, eve);
            matrix.set_copy(row, std::move(pm.collapsed));
        }
        bool touched = false, passed = true;
        for (int k = 0; k < config.n; k++) {
            SeededRng checker = master.derive({streams::kVoter, static_cast<std::uint64_t>(k), step});
            TestRound round = run_security_test(matrix, k, checker);
            passed = passed && round.passed;
            for (const RowTest &rt : round.rows) {
                touched = touched || std::find(hit.begin(), hit.end(), rt.row) != hit.end();
            }
        }
        all_untested += !touched;
        escaped += passed;
    }
    rep.measured_pass = static_cast<double>(all_untested) / static_cast<double>(trials);
    rep.stderr_pass = bernoulli_stderr(rep.measured_pass, trials);
    rep.measured_escape = static_cast<double>(escaped) / static_cast<double>(trials);
    rep.escape_stderr = bernoulli_stderr(rep.measured_escape, trials);
    rep.closed_form_measured = rep.measured_pass;
    rep.closed_form_stderr = rep.stderr_pass;
    rep.closed_form_trials = trials;
    return rep;
}

DetectionReport detection_stats_replacement(const SparseState &phi_e, int n, int m, int delta0,
                                            std::uint64_t trials, const SeededRng &rng) {
    if (phi_e.n() != n || phi_e.m() != m) {
        throw DimensionError("replacement state has shape (" + std::to_string(phi_e.n()) + ", " +
                             std::to_string(phi_e.m()) + "), expected (" + std::to_string(n) + ", " +
                             std::to_string(m) + ")");
    }
    if (std::abs(phi_e.norm_squared() - 1.0) > kStateTolerance) {
        throw PreconditionError("replacement state is not normalized");
    }
    ProtocolConfig config;
    config.n = n;
    config.m = m;
    config.delta0 = delta0;
    config.validate();

    DetectionReport rep;
    rep.per_basis = exact_test_pass(phi_e, ResourceKind::chi);
    const double pass = rep.per_basis.per_test();
    const int rows = n * (1 + delta0);
    const double q = static_cast<double>(n * delta0) / rows;
    rep.predicted_pass = pass;
    rep.predicted_escape = 1.0 - q * (1.0 - pass);
    rep.closed_form_prediction = std::pow(pass, n * delta0);

    // Protocol run: row 0 carries phi_e. Rows are chosen uniformly, so the
    // position does not matter.
    std::uint64_t tested = 0, tested_passed = 0, escaped = 0;
    for (std::uint64_t t = 0; t < trials; t++) {
        SeededRng master = rng.derive(t);
        ParticleMatrix matrix = distribute_chi(config);
        matrix.set_copy(0, phi_e);
        bool passed = true;
        for (int k = 0; k < n; k++) {
            SeededRng checker = master.derive({streams::kVoter, static_cast<std::uint64_t>(k), 1});
            TestRound round = run_security_test(matrix, k, checker);
            passed = passed && round.passed;
            for (const RowTest &rt : round.rows) {
                if (rt.row == 0) {
                    tested++;
                    tested_passed += rt.passed;
                }
            }
        }
        escaped += passed;
    }
    rep.trials = tested;
    rep.measured_pass = tested ? static_cast<double>(tested_passed) / static_cast<double>(tested) : 0.0;
    rep.stderr_pass = bernoulli_stderr(rep.measured_pass, tested);
    rep.escape_trials = trials;
    rep.measured_escape = static_cast<double>(escaped) / static_cast<double>(trials);
    rep.escape_stderr = bernoulli_stderr(rep.measured_escape, trials);

    // The closed form assumes every one of the n*delta0 tests probes phi_e.
    BornSampler comp(phi_e, Basis::computational), four(phi_e, Basis::fourier);
    SeededRng closed_form_rng = rng.derive(streams::kAdversary);
    std::uint64_t closed_form_pass = 0;
    for (std::uint64_t t = 0; t < trials; t++) {
        bool ok = true;
        for (int i = 0; i < n * delta0 && ok; i++) {
            const Basis b = closed_form_rng.coin() ? Basis::fourier : Basis::computational;
            std::vector<int> outcome = (b == Basis::fourier ? four : comp).sample(closed_form_rng);
            ok = row_test_passes(ResourceKind::chi, b, outcome, m);
        }
        closed_form_pass += ok;
    }
    rep.closed_form_trials = trials;
    rep.closed_form_measured = static_cast<double>(closed_form_pass) / static_cast<double>(trials);
    rep.closed_form_stderr = bernoulli_stderr(rep.closed_form_measured, trials);
    return rep;
}

bool SweepRow::agrees(double sigmas) const {
    return within(measured, predicted, bernoulli_stderr(predicted, trials), sigmas);
}

std::string sweep_csv(const std::vector<SweepRow> &rows) {
    std::ostringstream os;
    os.precision(10);
    os << "attack,n,m,delta,x,predicted,measured,stderr,trials\n";
    for (const auto &r : rows) {
        os << r.attack << ',' << r.n << ',' << r.m << ',' << r.delta << ',' << r.x << ',' << r.predicted << ','
           << r.measured << ',' << r.stderr_ << ',' << r.trials << '\n';
    }
    return os.str();
}

// ---------------------------------------------------------------------------
// Ballot collusion

BallotCollusion build_ballot_collusion_state(int n, int m, std::vector<int> dishonest,
                                             const std::vector<SparseState> &phi) {
    dishonest = checked_voter_set(n, std::move(dishonest), 2);
    if (dishonest.empty()) {
        throw ConfigError("collusion: need at least one dishonest voter");
    }
    if (n > 4) {
        throw ResourceError("ballot collusion analysis is limited to n <= 4");
    }
    if (static_cast<int>(phi.size()) != m) {
        throw DimensionError("collusion: need one attacker ket per j in Z_m");
    }
    const int l = static_cast<int>(dishonest.size());
    const int width = phi.front().n();
    for (const auto &p : phi) {
        if (p.m() != m || p.n() != width || width < l) {
            throw DimensionError("collusion: attacker kets must share shape (l + ancilla, m)");
        }
    }
    const int ancilla = width - l;
    const std::vector<int> honest = complement(n, dishonest);
    const int h = static_cast<int>(honest.size());

    std::uint64_t honest_count = 1;
    for (int i = 0; i < h; i++) {
        honest_count *= static_cast<std::uint64_t>(m);
    }
    const double scale = 1.0 / std::sqrt(static_cast<double>(m)) / std::pow(std::sqrt(static_cast<double>(m)), h);

    std::vector<std::pair<std::vector<int>, ComplexAmp>> terms;
    std::vector<int> digits(static_cast<size_t>(n + ancilla));
    for (int j = 0; j < m; j++) {
        for (std::uint64_t hi = 0; hi < honest_count; hi++) {
            std::vector<int> k = index_digits(hi, m, honest.size());
            long long sum = std::accumulate(k.begin(), k.end(), 0LL);
            const ComplexAmp coef = scale * omega(static_cast<long long>(j) * sum, m);
            for (int i = 0; i < h; i++) {
                digits[static_cast<size_t>(honest[static_cast<size_t>(i)])] = k[static_cast<size_t>(i)];
            }
            for (const auto &[key, amp] : phi[static_cast<size_t>(j)].terms()) {
                for (int i = 0; i < l; i++) {
                    digits[static_cast<size_t>(dishonest[static_cast<size_t>(i)])] =
                        phi[static_cast<size_t>(j)].digit(key, i);
                }
                for (int a = 0; a < ancilla; a++) {
                    digits[static_cast<size_t>(n + a)] = phi[static_cast<size_t>(j)].digit(key, l + a);
                }
                terms.emplace_back(digits, coef * amp);
            }
        }
    }
    SparseState state = SparseState::from_terms(n + ancilla, m, terms);
    return BallotCollusion{n, m, std::move(dishonest), ancilla, std::move(state)};
}

BallotCollusion build_ballot_collusion_state(int n, int m, std::vector<int> dishonest, AncillaChoice choice,
                                             SeededRng &rng) {
    const int l = static_cast<int>(dishonest.size());
    if (l < 1) {
        throw ConfigError("collusion: need at least one dishonest voter");
    }
    const LocalUnitary f = fourier_matrix(m);
    SparseState fixed = random_state(l, m, rng);
    std::vector<SparseState> phi;
    for (int j = 0; j < m; j++) {
        std::vector<int> jd(static_cast<size_t>(l), j);
        SparseState chi = choice == AncillaChoice::degenerate ? fixed
                          : choice == AncillaChoice::generic  ? random_state(l, m, rng)
                                                              : SparseState::basis_state(l, m, [&] {
                                                                    std::vector<int> d(static_cast<size_t>(l), 0);
                                                                    d[0] = j;
                                                                    return d;
                                                                }());
        // F|j>^{l} (x) chi_j
        std::vector<std::pair<std::vector<int>, ComplexAmp>> terms;
        SparseState attackers = apply_to_all(SparseState::basis_state(l, m, jd), f);
        for (const auto &[ka, aa] : attackers.terms()) {
            for (const auto &[kc, ac] : chi.terms()) {
                std::vector<int> d = attackers.digits_of(ka);
                std::vector<int> c = chi.digits_of(kc);
                d.insert(d.end(), c.begin(), c.end());
                terms.emplace_back(std::move(d), aa * ac);
            }
        }
        phi.push_back(SparseState::from_terms(2 * l, m, terms));
    }
    return build_ballot_collusion_state(n, m, std::move(dishonest), phi);
}

BallotLeakage analyze_ballot_leakage(const BallotCollusion &c) {
    const std::vector<int> honest = complement(c.n, c.dishonest);
    BallotLeakage out;
    out.fourier_pass = mass_where(c.state, Basis::fourier, honest, [](const std::vector<int> &d) {
        return std::adjacent_find(d.begin(), d.end(), std::not_equal_to<>()) == d.end();
    });

    std::vector<Eigen::VectorXcd> cond = conditional_vectors(c.state, honest);
    std::map<int, std::vector<size_t>> classes;
    for (size_t i = 0; i < cond.size(); i++) {
        std::vector<int> k = index_digits(i, c.m, honest.size());
        classes[static_cast<int>(std::accumulate(k.begin(), k.end(), 0LL) % c.m)].push_back(i);
    }
    std::vector<Eigen::VectorXcd> reps;
    for (const auto &[sum, members] : classes) {
        const Eigen::VectorXcd &rep = cond[members.front()];
        for (size_t i : members) {
            out.within_class_deviation = std::max(out.within_class_deviation, (cond[i] - rep).norm());
        }
        reps.push_back(rep);
    }
    ClassSummary cs = summarize_classes(reps);
    out.classes = cs.classes;
    out.min_cross_class_separation = cs.min_separation;
    out.distinguishable_classes = cs.distinguishable;
    return out;
}

// ---------------------------------------------------------------------------
// Index collusion

IndexCollusion build_index_collusion_state(int n, std::vector<int> dishonest, IndexKets kets, SeededRng &rng) {
    if (n < 2 || n > 4) {
        throw ResourceError("index collusion analysis is limited to 2 <= n <= 4");
    }
    dishonest = checked_voter_set(n, std::move(dishonest), 2);
    const int l = static_cast<int>(dishonest.size());
    if (l > 2) {
        throw ResourceError("index collusion analysis is limited to l <= 2");
    }
    const std::vector<int> honest = complement(n, dishonest);
    const int h = static_cast<int>(honest.size());

    // E_1: the l attacker particles followed by an l-qudit ancilla.
    const int e1 = 2 * l;
    int e1_dim = 1;
    for (int i = 0; i < e1; i++) {
        e1_dim *= n;
    }
    auto combos = all_combinations(n, h);
    if (static_cast<int>(combos.size()) > e1_dim) {
        throw ResourceError("index collusion: too few attacker dimensions for orthogonal class kets");
    }
    // Orthonormal class kets: columns of a Haar unitary.
    Eigen::MatrixXcd basis = e1_dim > 1 ? random_unitary(e1_dim, rng).matrix() : Eigen::MatrixXcd::Ones(1, 1);

    const auto arrangements = all_arrangements(n, h);
    const double scale =
        1.0 / std::sqrt(static_cast<double>(arrangements.size())) / std::pow(std::sqrt(static_cast<double>(n)), h);
    std::uint64_t t_count = 1;
    for (int i = 0; i < h; i++) {
        t_count *= static_cast<std::uint64_t>(n);
    }

    std::map<std::vector<int>, std::complex<double>> terms;
    std::vector<int> digits(static_cast<size_t>(n + l));
    for (const auto &s : arrangements) {
        std::vector<int> w = s;
        std::sort(w.begin(), w.end());
        const size_t cls = static_cast<size_t>(std::find(combos.begin(), combos.end(), w) - combos.begin());
        Eigen::VectorXcd u = basis.col(static_cast<Eigen::Index>(cls));
        if (kets == IndexKets::phase_scrambled) {
            u *= std::polar(1.0, 2.0 * std::numbers::pi * rng.uniform());
        }
        const double sign = permutation_sign(s);
        for (std::uint64_t ti = 0; ti < t_count; ti++) {
            std::vector<int> t = index_digits(ti, n, static_cast<size_t>(h));
            long long phase = 0;
            for (int i = 0; i < h; i++) {
                phase += static_cast<long long>(s[static_cast<size_t>(i)]) * t[static_cast<size_t>(i)];
                digits[static_cast<size_t>(honest[static_cast<size_t>(i)])] = t[static_cast<size_t>(i)];
            }
            const ComplexAmp coef = sign * scale * omega(phase, n);
            for (int e = 0; e < e1_dim; e++) {
                if (std::abs(u(e)) < 1e-15) {
                    continue;
                }
                std::vector<int> ed = index_digits(static_cast<std::uint64_t>(e), n, static_cast<size_t>(e1));
                for (int i = 0; i < l; i++) {
                    digits[static_cast<size_t>(dishonest[static_cast<size_t>(i)])] = ed[static_cast<size_t>(i)];
                    digits[static_cast<size_t>(n + i)] = ed[static_cast<size_t>(l + i)];
                }
                terms[digits] += coef * u(e);
            }
        }
    }
    std::vector<std::pair<std::vector<int>, ComplexAmp>> list(terms.begin(), terms.end());
    SparseState state = SparseState::from_terms(n + l, n, list);
    return IndexCollusion{n, std::move(dishonest), std::move(state)};
}

IndexLeakage analyze_index_leakage(const IndexCollusion &c) {
    const std::vector<int> honest = complement(c.n, c.dishonest);
    const auto distinct = [](const std::vector<int> &d) { return all_distinct(d); };
    IndexLeakage out;
    out.fourier_pass = mass_where(c.state, Basis::fourier, honest, distinct);
    out.q_mass = mass_where(c.state, Basis::computational, honest,
                            [&](const std::vector<int> &d) { return !distinct(d); });
    out.singlet_fidelity = c.dishonest.empty()
                               ? std::norm(inner_product(make_singlet_state(c.n), c.state))
                               : std::numeric_limits<double>::quiet_NaN();

    std::vector<Eigen::VectorXcd> cond = conditional_vectors(c.state, honest);
    std::map<std::vector<int>, std::vector<size_t>> classes;
    for (size_t i = 0; i < cond.size(); i++) {
        std::vector<int> t = index_digits(i, c.n, honest.size());
        if (!distinct(t)) {
            continue;
        }
        std::sort(t.begin(), t.end());
        classes[t].push_back(i);
    }
    std::vector<Eigen::VectorXcd> reps;
    for (const auto &[w, members] : classes) {
        // Sign of the permutation taking the sorted tuple to T.
        std::vector<Eigen::VectorXcd> signed_members;
        for (size_t i : members) {
            std::vector<int> t = index_digits(i, c.n, honest.size());
            signed_members.push_back(permutation_sign(t) * cond[i]);
        }
        for (size_t a = 0; a < members.size(); a++) {
            out.within_class_signed_deviation =
                std::max(out.within_class_signed_deviation, (signed_members[a] - signed_members[0]).norm());
            out.within_class_ray_deviation =
                std::max(out.within_class_ray_deviation, ray_distance(cond[members[a]], cond[members[0]]));
        }
        reps.push_back(signed_members[0]);
    }
    ClassSummary cs = summarize_classes(reps);
    out.classes = cs.classes;
    out.min_cross_class_separation = cs.min_separation;
    out.distinguishable_classes = cs.distinguishable;
    return out;
}

IndexLeakage analyze_index_leakage(int n, int l, IndexKets kets, SeededRng &rng) {
    std::vector<int> dishonest;
    for (int k = n - l; k < n; k++) {
        dishonest.push_back(k);
    }
    return analyze_index_leakage(build_index_collusion_state(n, std::move(dishonest), kets, rng));
}

}  // namespace sqav
