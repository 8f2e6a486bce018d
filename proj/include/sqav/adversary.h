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

#ifndef SQAV_ADVERSARY_H
#define SQAV_ADVERSARY_H

#include <cstdint>
#include <string>
#include <vector>

#include "sqav/attack.h"
#include "sqav/protocol.h"
#include "sqav/qstate.h"
#include "sqav/rng.h"

namespace sqav {

struct Rational {
    std::uint64_t num = 0;
    std::uint64_t den = 1;

    double value() const { return static_cast<double>(num) / static_cast<double>(den); }
    std::string str() const { return std::to_string(num) + "/" + std::to_string(den); }
    bool operator==(const Rational &) const = default;
};

/// Probability that x particles chosen uniformly among the n + n*delta0
/// copies of one voter all survive the checkers' test selections.
Rational pass_probability_intercept(int n, int delta0, int x);

/// Same quantity for a matrix with `untested` rows kept out of `rows`.
Rational untested_probability(int rows, int untested, int x);

struct BasisPass {
    double p_c = 1.0;
    double p_f = 1.0;
    double per_test() const { return 0.5 * (p_c + p_f); }
};

/// Exact probability that one row in the given state passes a test in
/// each basis.
BasisPass exact_test_pass(const SparseState &row, ResourceKind kind);

/// Exact per-basis pass probability of a fresh resource row after a
/// measure-and-resend on one particle, averaged over the eavesdropper's
/// outcome.
BasisPass disturbed_row_pass(ResourceKind kind, int n, int m, int victim, DisturbanceModel model);

struct DetectionReport {
    double predicted_pass = 0;
    double measured_pass = 0;
    double stderr_pass = 0;
    std::uint64_t trials = 0;
    BasisPass per_basis;

    double predicted_escape = 0;
    double measured_escape = 0;
    double escape_stderr = 0;
    std::uint64_t escape_trials = 0;

    /// Closed-form value assuming every test probes the tampered copy, with its own Monte Carlo.
    double closed_form_prediction = 0;
    double closed_form_measured = 0;
    double closed_form_stderr = 0;
    std::uint64_t closed_form_trials = 0;

    bool pass_agrees(double sigmas = 3.0) const;
    bool escape_agrees(double sigmas = 3.0) const;
    bool closed_form_agrees(double sigmas = 3.0) const;
};

struct InterceptOptions {
    ProtocolStep target = ProtocolStep::ballots;
    int victim = 1;
    DisturbanceModel model = DisturbanceModel::measure_resend_computational;
};

/// Runs the real distribution and test steps `trials` times with Eve
/// measuring x rows of one column before the tests. `measured_pass` is the
/// fraction of trials in which no disturbed row was selected for testing;
/// `measured_escape` the fraction with no failed test.
DetectionReport simulate_intercept(const ProtocolConfig &config, int x, std::uint64_t trials, const SeededRng &rng,
                                   const InterceptOptions &options = {});

/// Exact and sampled statistics for one ballot row replaced by phi_e.
/// Per-test pass is measured on the replaced row whenever the protocol
/// happens to test it.
DetectionReport detection_stats_replacement(const SparseState &phi_e, int n, int m, int delta0,
                                            std::uint64_t trials, const SeededRng &rng);

struct SweepRow {
    std::string attack;
    int n = 0;
    int m = 0;
    int delta = 0;
    int x = 0;
    double predicted = 0;
    double measured = 0;
    double stderr_ = 0;
    std::uint64_t trials = 0;

    bool agrees(double sigmas = 3.0) const;
};

std::string sweep_csv(const std::vector<SweepRow> &rows);

// Collusion analyses. Particles 0..n-1 belong to the voters; any further
// qudits are the attackers' ancilla.

enum class AncillaChoice {
    generic,     ///< independent random ancilla kets
    degenerate,  ///< the same ancilla ket for every j
    labelled,    ///< ancilla |j, 0, ...>
};

struct BallotCollusion {
    int n = 0;
    int m = 0;
    std::vector<int> dishonest;
    int ancilla = 0;
    SparseState state;
};

/// State sum_j F|j>^{honest} (x) phi_j / sqrt(m); each phi_j lives on the
/// dishonest particles (in increasing voter order) followed by the ancilla.
BallotCollusion build_ballot_collusion_state(int n, int m, std::vector<int> dishonest,
                                             const std::vector<SparseState> &phi);

/// phi_j = F|j>^{l} (x) chi_j with an l-qudit ancilla chi_j.
BallotCollusion build_ballot_collusion_state(int n, int m, std::vector<int> dishonest, AncillaChoice choice,
                                             SeededRng &rng);

struct BallotLeakage {
    int classes = 0;
    double fourier_pass = 0;                ///< honest outcomes all equal in the Fourier basis
    double within_class_deviation = 0;      ///< max |phi_k - phi_k'| for equal sums
    double min_cross_class_separation = 0;  ///< min ray distance between classes
    int distinguishable_classes = 0;
};

BallotLeakage analyze_ballot_leakage(const BallotCollusion &c);

enum class IndexKets {
    class_equal,      ///< u_S equal within each combination class
    phase_scrambled,  ///< u_S = exp(i theta_S) u_w, violating the equality
};

struct IndexCollusion {
    int n = 0;
    std::vector<int> dishonest;
    SparseState state;
};

IndexCollusion build_index_collusion_state(int n, std::vector<int> dishonest, IndexKets kets, SeededRng &rng);

struct IndexLeakage {
    int classes = 0;
    double q_mass = 0;        ///< honest computational outcomes with a repeat
    double fourier_pass = 0;  ///< honest Fourier outcomes all distinct
    /// max |v_T - sgn(pi) v_T'| within a class, pi carrying T' to T
    double within_class_signed_deviation = 0;
    /// max ray distance within a class
    double within_class_ray_deviation = 0;
    double min_cross_class_separation = 0;
    int distinguishable_classes = 0;
    /// |<S_n|state>|^2 when there are no attackers, else NaN
    double singlet_fidelity = 0;
};

IndexLeakage analyze_index_leakage(const IndexCollusion &c);

/// Convenience: attackers are the last l voters.
IndexLeakage analyze_index_leakage(int n, int l, IndexKets kets, SeededRng &rng);

}  // namespace sqav

#endif
