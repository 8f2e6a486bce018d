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

#include <cmath>
#include <functional>
#include <numbers>

#include "sqav/adversary.h"
#include "sqav/theorems.h"
#include "sqav/errors.h"
#include "sqav/permutation.h"

namespace sqav {
namespace {

// Oracle: walk the actual sequential selection process (each checker picks
// delta rows uniformly from those not yet tested) and return the exact
// probability that none of the first x rows is ever picked.
double enumerate_untouched(int rows, int checkers, int delta, int x) {
    std::function<double(std::vector<bool> &, int)> walk = [&](std::vector<bool> &used, int k) -> double {
        if (k == checkers) {
            for (int i = 0; i < x; i++) {
                if (used[static_cast<size_t>(i)]) {
                    return 0.0;
                }
            }
            return 1.0;
        }
        std::vector<int> free;
        for (int i = 0; i < rows; i++) {
            if (!used[static_cast<size_t>(i)]) {
                free.push_back(i);
            }
        }
        const auto picks = all_combinations(static_cast<int>(free.size()), delta);
        double acc = 0;
        for (const auto &p : picks) {
            bool hits = false;
            for (int i : p) {
                hits = hits || free[static_cast<size_t>(i)] < x;
            }
            if (hits) {
                continue;  // an untouched outcome is impossible below this node
            }
            for (int i : p) {
                used[static_cast<size_t>(free[static_cast<size_t>(i)])] = true;
            }
            acc += walk(used, k + 1);
            for (int i : p) {
                used[static_cast<size_t>(free[static_cast<size_t>(i)])] = false;
            }
        }
        return acc / static_cast<double>(picks.size());
    };
    std::vector<bool> used(static_cast<size_t>(rows), false);
    return walk(used, 0);
}

TEST(InterceptCombinatorics, ExactValues) {
    EXPECT_EQ(pass_probability_intercept(4, 2, 1), (Rational{1, 3}));
    EXPECT_EQ(pass_probability_intercept(4, 2, 2), (Rational{1, 11}));
    EXPECT_EQ(pass_probability_intercept(4, 2, 3), (Rational{1, 55}));
    EXPECT_EQ(pass_probability_intercept(4, 2, 5), (Rational{0, 1}));
    EXPECT_THROW(pass_probability_intercept(4, 2, 0), ConfigError);
    EXPECT_THROW(pass_probability_intercept(4, 2, 13), ConfigError);
}

TEST(InterceptCombinatorics, MatchesProcessEnumeration) {
    for (int x = 1; x <= 4; x++) {
        EXPECT_NEAR(pass_probability_intercept(4, 2, x).value(), enumerate_untouched(12, 4, 2, x), 1e-12) << x;
    }
    for (int x = 1; x <= 3; x++) {
        EXPECT_NEAR(pass_probability_intercept(3, 1, x).value(), enumerate_untouched(6, 3, 1, x), 1e-12);
    }
}

TEST(InterceptCombinatorics, MonotoneInDeltaAndX) {
    for (int n = 2; n <= 5; n++) {
        for (int d = 1; d < 6; d++) {
            for (int x = 1; x <= n; x++) {
                EXPECT_GE(pass_probability_intercept(n, d, x).value(), pass_probability_intercept(n, d + 1, x).value());
                if (x < n) {
                    EXPECT_GE(pass_probability_intercept(n, d, x).value(),
                              pass_probability_intercept(n, d, x + 1).value());
                }
            }
        }
    }
}

TEST(DisturbedRow, MeasureResendStatistics) {
    for (int m = 2; m <= 4; m++) {
        BasisPass c = disturbed_row_pass(ResourceKind::chi, 3, m, 1, DisturbanceModel::measure_resend_computational);
        EXPECT_NEAR(c.p_c, 1.0, 1e-12);
        EXPECT_NEAR(c.p_f, 1.0 / m, 1e-12);
        BasisPass f = disturbed_row_pass(ResourceKind::chi, 3, m, 1, DisturbanceModel::measure_resend_fourier);
        EXPECT_NEAR(f.p_c, 1.0 / m, 1e-12);
        EXPECT_NEAR(f.p_f, 1.0, 1e-12);
    }
}

TEST(SimulateIntercept, AgreesWithCombinatorics) {
    ProtocolConfig c;
    c.n = 4;
    c.m = 2;
    c.delta0 = 2;
    for (int x = 1; x <= 3; x++) {
        DetectionReport r = simulate_intercept(c, x, 4000, SeededRng(100 + x));
        EXPECT_NEAR(r.predicted_pass, pass_probability_intercept(4, 2, x).value(), 1e-15);
        EXPECT_TRUE(r.pass_agrees()) << x << " " << r.measured_pass;
        EXPECT_TRUE(r.escape_agrees()) << x << " " << r.measured_escape;
    }
}

TEST(SimulateIntercept, ZeroParticlesAlwaysEscape) {
    ProtocolConfig c;
    c.n = 3;
    c.m = 2;
    DetectionReport r = simulate_intercept(c, 0, 100, SeededRng(1));
    EXPECT_EQ(r.measured_escape, 1.0);
    EXPECT_EQ(r.predicted_escape, 1.0);
}

TEST(SimulateIntercept, EscapeDecreasesWithDelta) {
    ProtocolConfig c;
    c.n = 3;
    c.m = 2;
    double prev = 1.0;
    for (int d = 1; d <= 6; d++) {
        c.delta0 = d;
        DetectionReport r = simulate_intercept(c, 2, 1, SeededRng(d));
        EXPECT_LT(r.predicted_escape, prev);
        EXPECT_LT(r.predicted_pass, d == 1 ? 1.0 : pass_probability_intercept(3, d - 1, 2).value());
        prev = r.predicted_escape;
    }
}

TEST(SimulateIntercept, IndexStep) {
    ProtocolConfig c;
    c.n = 3;
    c.m = 2;
    c.delta1 = 2;
    InterceptOptions o;
    o.target = ProtocolStep::indices;
    DetectionReport r = simulate_intercept(c, 1, 3000, SeededRng(5), o);
    EXPECT_NEAR(r.predicted_pass, 1.0 / 7, 1e-12);
    EXPECT_TRUE(r.pass_agrees());
    EXPECT_TRUE(r.escape_agrees());
}

// Oracle for the replacement statistics: plain sums over amplitudes, using
// the Fourier vectors F|j> written out directly.
struct PlainStats {
    double p_c;
    double p_f;
};

PlainStats plain_replacement_stats(const SparseState &phi) {
    const int n = phi.n(), m = phi.m();
    PlainStats s{0, 0};
    for (const auto &[key, amp] : phi.terms()) {
        int sum = 0;
        for (int p = 0; p < n; p++) {
            sum += phi.digit(key, p);
        }
        if (sum % m == 0) {
            s.p_c += std::norm(amp);
        }
    }
    for (int j = 0; j < m; j++) {
        ComplexAmp overlap = 0;
        for (const auto &[key, amp] : phi.terms()) {
            ComplexAmp fj = 1;  // prod_p <k_p|F|j> = prod_p exp(2 pi i j k_p / m) / sqrt(m)
            for (int p = 0; p < n; p++) {
                fj *= std::polar(1 / std::sqrt(double(m)), 2 * std::numbers::pi * j * phi.digit(key, p) / m);
            }
            overlap += std::conj(amp) * fj;
        }
        s.p_f += std::norm(overlap);
    }
    return s;
}

TEST(Replacement, ZerosState) {
    SparseState zeros = SparseState::basis_state(3, 2, std::vector<int>{0, 0, 0});
    PlainStats oracle = plain_replacement_stats(zeros);
    EXPECT_NEAR(oracle.p_c, 1.0, 1e-12);
    EXPECT_NEAR(oracle.p_f, 0.25, 1e-12);

    DetectionReport r = detection_stats_replacement(zeros, 3, 2, 2, 4000, SeededRng(3));
    EXPECT_NEAR(r.per_basis.p_c, oracle.p_c, 1e-12);
    EXPECT_NEAR(r.per_basis.p_f, oracle.p_f, 1e-12);
    EXPECT_NEAR(r.predicted_pass, 0.625, 1e-12);
    EXPECT_NEAR(r.closed_form_prediction, std::pow(0.625, 6), 1e-12);
    EXPECT_NEAR(r.predicted_escape, 1 - (2.0 / 3) * 0.375, 1e-12);
    EXPECT_TRUE(r.pass_agrees());
    EXPECT_TRUE(r.escape_agrees());
    EXPECT_TRUE(r.closed_form_agrees());
}

TEST(Replacement, UntamperedNeverDetected) {
    DetectionReport r = detection_stats_replacement(make_chi_state(3, 3), 3, 3, 1, 300, SeededRng(4));
    EXPECT_NEAR(r.per_basis.p_c, 1.0, 1e-12);
    EXPECT_NEAR(r.per_basis.p_f, 1.0, 1e-12);
    EXPECT_EQ(r.measured_escape, 1.0);
}

TEST(Replacement, RandomStatesMatchOracleAndDecay) {
    SeededRng rng(6);
    for (int i = 0; i < 10; i++) {
        SparseState phi = random_state(3, 3, rng);
        PlainStats oracle = plain_replacement_stats(phi);
        BasisPass exact = exact_test_pass(phi, ResourceKind::chi);
        EXPECT_NEAR(exact.p_c, oracle.p_c, 1e-12);
        EXPECT_NEAR(exact.p_f, oracle.p_f, 1e-12);
        EXPECT_LT(oracle.p_c + oracle.p_f, 2.0);
        double prev = 1.0;
        for (int d = 1; d <= 8; d++) {
            DetectionReport r = detection_stats_replacement(phi, 3, 3, d, 1, SeededRng(d));
            EXPECT_LT(r.closed_form_prediction, prev);
            EXPECT_LE(r.predicted_escape, d == 1 ? 1.0 : detection_stats_replacement(phi, 3, 3, d - 1, 1, rng).predicted_escape);
            prev = r.closed_form_prediction;
        }
    }
}

TEST(Replacement, ShapeMismatch) {
    EXPECT_THROW(detection_stats_replacement(make_chi_state(3, 2), 4, 2, 1, 10, SeededRng(1)), DimensionError);
}

TEST(SweepCsv, Header) {
    std::string csv = sweep_csv({{"intercept", 4, 2, 2, 1, 1.0 / 3, 0.33, 0.01, 100}});
    EXPECT_EQ(csv.substr(0, csv.find('\n')), "attack,n,m,delta,x,predicted,measured,stderr,trials");
}

TEST(BallotCollusion, GenericAncillaLeaksOnlyTheSum) {
    SeededRng rng(8);
    for (int m = 2; m <= 3; m++) {
        BallotCollusion c = build_ballot_collusion_state(3, m, {2}, AncillaChoice::generic, rng);
        BallotLeakage l = analyze_ballot_leakage(c);
        EXPECT_NEAR(l.fourier_pass, 1.0, 1e-10);
        EXPECT_LT(l.within_class_deviation, 1e-10);
        EXPECT_EQ(l.classes, m);
        EXPECT_EQ(l.distinguishable_classes, m);
        EXPECT_GT(l.min_cross_class_separation, 1e-6);
    }
}

TEST(BallotCollusion, LabelledAncilla) {
    SeededRng rng(9);
    BallotCollusion c = build_ballot_collusion_state(3, 2, {1}, AncillaChoice::labelled, rng);
    BallotLeakage l = analyze_ballot_leakage(c);
    EXPECT_NEAR(l.fourier_pass, 1.0, 1e-10);
    EXPECT_LT(l.within_class_deviation, 1e-10);
}

TEST(BallotCollusion, DegenerateAncillaIsChiTimesAncilla) {
    SeededRng rng(10);
    BallotCollusion c = build_ballot_collusion_state(3, 2, {2}, AncillaChoice::degenerate, rng);
    // Project out the ancilla: the voter part must be |X_3>.
    const SparseState chi = make_chi_state(3, 2);
    double overlap = 0;
    for (int a = 0; a < 2; a++) {
        ComplexAmp s = 0;
        for (const auto &[key, amp] : chi.terms()) {
            std::vector<int> d = chi.digits_of(key);
            d.push_back(a);
            s += std::conj(amp) * c.state.amplitude(d);
        }
        overlap += std::norm(s);
    }
    EXPECT_NEAR(overlap, 1.0, 1e-10);
}

TEST(BallotCollusion, Preconditions) {
    SeededRng rng(1);
    EXPECT_THROW(build_ballot_collusion_state(3, 2, {}, AncillaChoice::generic, rng), ConfigError);
    EXPECT_THROW(build_ballot_collusion_state(3, 2, {1, 2}, AncillaChoice::generic, rng), ConfigError);
    EXPECT_THROW(build_ballot_collusion_state(5, 2, {1}, AncillaChoice::generic, rng), ResourceError);
}

TEST(IndexCollusion, ClassEqualKetsLeakOnlyTheCombination) {
    SeededRng rng(12);
    IndexLeakage l = analyze_index_leakage(3, 1, IndexKets::class_equal, rng);
    EXPECT_NEAR(l.q_mass, 0.0, 1e-10);
    EXPECT_NEAR(l.fourier_pass, 1.0, 1e-10);
    EXPECT_LT(l.within_class_signed_deviation, 1e-10);
    EXPECT_LT(l.within_class_ray_deviation, 1e-10);
    EXPECT_EQ(l.classes, 3);
    EXPECT_EQ(l.distinguishable_classes, 3);
}

TEST(IndexCollusion, ScrambledKetsFailTheComputationalTest) {
    SeededRng rng(13);
    IndexLeakage l = analyze_index_leakage(3, 1, IndexKets::phase_scrambled, rng);
    EXPECT_GT(l.q_mass, 1e-4);
    EXPECT_NEAR(l.fourier_pass, 1.0, 1e-10);
}

TEST(IndexCollusion, NoAttackersGivesSinglet) {
    SeededRng rng(14);
    for (int n = 2; n <= 4; n++) {
        IndexLeakage l = analyze_index_leakage(n, 0, IndexKets::class_equal, rng);
        EXPECT_NEAR(l.singlet_fidelity, 1.0, 1e-10);
        EXPECT_NEAR(l.q_mass, 0.0, 1e-10);
    }
}

TEST(IndexCollusion, LargerCases) {
    SeededRng rng(15);
    for (auto [n, l] : {std::pair{4, 1}, std::pair{4, 2}}) {
        IndexLeakage r = analyze_index_leakage(n, l, IndexKets::class_equal, rng);
        EXPECT_NEAR(r.q_mass, 0.0, 1e-10) << n << l;
        EXPECT_LT(r.within_class_ray_deviation, 1e-10);
        EXPECT_EQ(r.classes, static_cast<int>(binomial(n, n - l)));
    }
}

}  // namespace
}  // namespace sqav
