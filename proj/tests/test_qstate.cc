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
#include <map>
#include <numbers>

#include "sqav/errors.h"
#include "sqav/permutation.h"
#include "sqav/qstate.h"
#include "sqav/state_io.h"
#include "sqav/stats.h"

namespace sqav {
namespace {

constexpr double kTol = 1e-12;

TEST(FourierMatrix, SmallCases) {
    LocalUnitary f2 = fourier_matrix(2);
    const double h = 1 / std::sqrt(2.0);
    EXPECT_NEAR(std::abs(f2(0, 0) - h), 0, kTol);
    EXPECT_NEAR(std::abs(f2(0, 1) - h), 0, kTol);
    EXPECT_NEAR(std::abs(f2(1, 0) - h), 0, kTol);
    EXPECT_NEAR(std::abs(f2(1, 1) + h), 0, kTol);

    LocalUnitary f3 = fourier_matrix(3);
    const ComplexAmp want = std::polar(1 / std::sqrt(3.0), 4 * std::numbers::pi / 3);
    EXPECT_NEAR(std::abs(f3(1, 2) - want), 0, kTol);
    for (int m = 2; m <= 6; m++) {
        LocalUnitary f = fourier_matrix(m);
        for (int r = 0; r < m; r++) {
            EXPECT_NEAR(std::abs(f(r, 0) - 1 / std::sqrt(double(m))), 0, kTol);
        }
    }
    EXPECT_THROW(fourier_matrix(1), DimensionError);
}

TEST(LocalUnitary, RejectsNonUnitary) {
    Eigen::MatrixXcd a = Eigen::MatrixXcd::Identity(2, 2);
    a(0, 1) = 0.5;
    EXPECT_THROW(LocalUnitary{a}, Error);
}

TEST(ChiState, Enumerated) {
    SparseState x22 = make_chi_state(2, 2);
    EXPECT_EQ(x22.support_size(), 2u);
    EXPECT_NEAR(std::abs(x22.amplitude(std::vector<int>{0, 0}) - 1 / std::sqrt(2.0)), 0, kTol);
    EXPECT_NEAR(std::abs(x22.amplitude(std::vector<int>{1, 1}) - 1 / std::sqrt(2.0)), 0, kTol);

    SparseState x32 = make_chi_state(3, 2);
    EXPECT_EQ(x32.support_size(), 4u);
    for (auto d : {std::vector<int>{0, 0, 0}, {0, 1, 1}, {1, 0, 1}, {1, 1, 0}}) {
        EXPECT_NEAR(std::abs(x32.amplitude(d) - 0.5), 0, kTol);
    }
    SparseState x23 = make_chi_state(2, 3);
    EXPECT_EQ(x23.support_size(), 3u);
    for (auto d : {std::vector<int>{0, 0}, {1, 2}, {2, 1}}) {
        EXPECT_NEAR(std::abs(x23.amplitude(d) - 1 / std::sqrt(3.0)), 0, kTol);
    }
}

TEST(ChiState, BudgetExceeded) {
    EXPECT_THROW(make_chi_state(6, 4, ResourceBudget{100}), ResourceError);
}

TEST(SingletState, Amplitudes) {
    SparseState s2 = make_singlet_state(2);
    EXPECT_NEAR(std::abs(s2.amplitude(std::vector<int>{0, 1}) - 1 / std::sqrt(2.0)), 0, kTol);
    EXPECT_NEAR(std::abs(s2.amplitude(std::vector<int>{1, 0}) + 1 / std::sqrt(2.0)), 0, kTol);

    SparseState s3 = make_singlet_state(3);
    EXPECT_EQ(s3.support_size(), 6u);
    EXPECT_NEAR(std::abs(s3.amplitude(std::vector<int>{2, 1, 0}) + 1 / std::sqrt(6.0)), 0, kTol);
    EXPECT_NEAR(make_singlet_state(4).norm_squared(), 1.0, 1e-12);
}

TEST(SparseState, PackingIsLittleEndian) {
    SparseState s = SparseState::basis_state(3, 3, std::vector<int>{2, 0, 1});
    const auto key = s.terms().front().first;
    EXPECT_EQ(key, 2u + 0u * 3u + 1u * 9u);
    EXPECT_EQ(s.digits_of(key), (std::vector<int>{2, 0, 1}));
}

TEST(SparseState, RejectsBadShapesAndUnnormalized) {
    EXPECT_THROW(SparseState::basis_state(2, 1, std::vector<int>{0, 0}), Error);
    EXPECT_THROW(SparseState::basis_state(2, 3, std::vector<int>{0, 3}), Error);
    std::vector<std::pair<std::vector<int>, ComplexAmp>> terms{{{0, 0}, 0.5}};
    EXPECT_THROW(SparseState::from_terms(2, 2, terms, SparseState::Normalize::require), Error);
}

TEST(LocalUnitaryApplication, Identity) {
    SparseState x = make_chi_state(3, 3);
    EXPECT_LT(distance(apply_local_unitary(x, LocalUnitary::identity(3), 1), x), kTol);
}

TEST(LocalUnitaryApplication, FourierOnSingleQubit) {
    SparseState zero = SparseState::basis_state(1, 2, std::vector<int>{0});
    SparseState plus = apply_local_unitary(zero, fourier_matrix(2), 0);
    EXPECT_NEAR(std::abs(plus.amplitude(std::vector<int>{0}) - 1 / std::sqrt(2.0)), 0, kTol);
    EXPECT_NEAR(std::abs(plus.amplitude(std::vector<int>{1}) - 1 / std::sqrt(2.0)), 0, kTol);
}

TEST(LocalUnitaryApplication, DimensionMismatch) {
    EXPECT_THROW(apply_local_unitary(make_chi_state(2, 3), fourier_matrix(2), 0), DimensionError);
}

TEST(LocalUnitaryApplication, ChiBecomesGhz) {
    SparseState g = apply_to_all(make_chi_state(3, 2), fourier_matrix(2));
    EXPECT_EQ(g.support_size(), 2u);
    EXPECT_NEAR(std::abs(g.amplitude(std::vector<int>{0, 0, 0}) - 1 / std::sqrt(2.0)), 0, 1e-12);
    EXPECT_NEAR(std::abs(g.amplitude(std::vector<int>{1, 1, 1}) - 1 / std::sqrt(2.0)), 0, 1e-12);
}

// The dense and sparse application paths must agree.
TEST(LocalUnitaryApplication, SparseAndDensePathsAgree) {
    SparseState x = make_chi_state(4, 3);
    SparseState dense = apply_to_all(x, fourier_matrix(3));
    SparseState sparse = x;
    for (int p = 0; p < 4; p++) {
        sparse = apply_local_unitary(sparse, fourier_matrix(3), p);
    }
    EXPECT_LT(distance(dense, sparse), 1e-12);
}

TEST(InnerProduct, Examples) {
    EXPECT_NEAR(std::abs(inner_product(make_chi_state(4, 3), make_chi_state(4, 3)) - 1.0), 0, 1e-12);
    EXPECT_NEAR(std::abs(inner_product(make_chi_state(2, 2), make_singlet_state(2))), 0, 1e-12);
    for (int n = 2; n <= 4; n++) {
        for (int m = 2; m <= 4; m++) {
            SparseState zero = SparseState::basis_state(n, m, std::vector<int>(static_cast<size_t>(n), 0));
            EXPECT_NEAR(std::abs(inner_product(zero, make_chi_state(n, m))), std::pow(m, -(n - 1) / 2.0), 1e-12);
        }
    }
    EXPECT_THROW(inner_product(make_chi_state(2, 2), make_chi_state(3, 2)), DimensionError);
}

TEST(Measurement, ChiConditionsAlwaysHold) {
    SeededRng rng(3);
    for (int n = 2; n <= 4; n++) {
        for (int m = 2; m <= 4; m++) {
            SparseState x = make_chi_state(n, m);
            for (int t = 0; t < 50; t++) {
                auto c = measure_all(x, Basis::computational, rng);
                int s = 0;
                for (int d : c.outcomes) {
                    s += d;
                }
                ASSERT_EQ(s % m, 0);
                auto f = measure_all(x, Basis::fourier, rng);
                for (int d : f.outcomes) {
                    ASSERT_EQ(d, f.outcomes.front());
                }
            }
        }
    }
}

TEST(Measurement, SingletAlwaysPermutation) {
    SeededRng rng(4);
    for (int n = 2; n <= 4; n++) {
        SparseState s = make_singlet_state(n);
        for (int t = 0; t < 50; t++) {
            ASSERT_TRUE(is_full_permutation(measure_all(s, Basis::computational, rng).outcomes));
            ASSERT_TRUE(is_full_permutation(measure_all(s, Basis::fourier, rng).outcomes));
        }
    }
}

TEST(Measurement, CollapseIsAnEigenstate) {
    SeededRng rng(5);
    SparseState x = make_chi_state(3, 3);
    auto c = measure_all(x, Basis::fourier, rng);
    // Measuring the collapsed state again in the same basis repeats the outcome.
    for (int i = 0; i < 10; i++) {
        EXPECT_EQ(measure_all(c.collapsed, Basis::fourier, rng).outcomes, c.outcomes);
    }
}

TEST(MeasureParticle, BellPair) {
    SeededRng rng(6);
    SparseState bell = make_chi_state(2, 2);
    int zeros = 0;
    for (int i = 0; i < 2000; i++) {
        auto pm = measure_particle(bell, 0, Basis::computational, rng);
        std::vector<int> both(2, pm.outcome);
        EXPECT_NEAR(std::abs(pm.collapsed.amplitude(both)), 1.0, 1e-12);
        zeros += pm.outcome == 0;
    }
    EXPECT_NEAR(zeros / 2000.0, 0.5, 3 * bernoulli_stderr(0.5, 2000));
}

TEST(MeasureParticle, SingletCollapse) {
    SparseState s2 = make_singlet_state(2);
    for (std::uint64_t seed = 0; seed < 20; seed++) {
        SeededRng rng(seed);
        auto pm = measure_particle(s2, 0, Basis::computational, rng);
        if (pm.outcome == 0) {
            EXPECT_NEAR(std::abs(pm.collapsed.amplitude(std::vector<int>{0, 1})), 1.0, 1e-12);
        }
    }
}

// Chained single-particle measurements reproduce the joint Born distribution.
TEST(MeasureParticle, ChainedMatchesJointDistribution) {
    SparseState x = make_chi_state(3, 2);
    BornSampler sampler(x, Basis::fourier);
    std::map<SparseState::Key, size_t> cell;
    std::vector<double> probs;
    for (const auto &[key, p] : sampler.distribution()) {
        cell[key] = probs.size();
        probs.push_back(p);
    }
    std::vector<std::uint64_t> counts(probs.size(), 0);
    SeededRng rng(8);
    const int trials = 10000;
    for (int t = 0; t < trials; t++) {
        SparseState s = x;
        std::vector<int> out;
        for (int p = 0; p < 3; p++) {
            auto pm = measure_particle(s, p, Basis::fourier, rng);
            out.push_back(pm.outcome);
            s = pm.collapsed;
        }
        auto it = cell.find(x.key_of(out));
        ASSERT_NE(it, cell.end());
        counts[it->second]++;
    }
    const int dof = static_cast<int>(probs.size()) - 1;
    EXPECT_LE(chi_squared(counts, probs, trials), chi_squared_3sigma(dof));
}

TEST(StateIo, RoundTripIsBitExact) {
    SeededRng rng(1);
    SparseState s = apply_to_all(make_singlet_state(3), fourier_matrix(3));
    SparseState back = state_from_json(nlohmann::json::parse(state_to_json(s).dump()));
    ASSERT_EQ(back.support_size(), s.support_size());
    for (size_t i = 0; i < s.support_size(); i++) {
        EXPECT_EQ(back.terms()[i].first, s.terms()[i].first);
        EXPECT_LE(std::abs(back.terms()[i].second.real() - s.terms()[i].second.real()), 1e-15);
        EXPECT_LE(std::abs(back.terms()[i].second.imag() - s.terms()[i].second.imag()), 1e-15);
    }
}

TEST(StateIo, MalformedInputIsConfigError) {
    EXPECT_THROW(state_from_json(nlohmann::json::parse(R"({"n": 2})")), ConfigError);
}

}  // namespace
}  // namespace sqav
