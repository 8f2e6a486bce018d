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

#ifndef SQAV_THEOREMS_H
#define SQAV_THEOREMS_H

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "json.hpp"
#include "sqav/qstate.h"
#include "sqav/rng.h"

namespace sqav {

/// Exact (amplitude-derived) violation masses for the two measurement
/// conditions characterizing a resource state, plus overlap with the target.
struct ViolationReport {
    double epsilon_c = 0;  ///< mass of forbidden outcomes, computational basis
    double epsilon_f = 0;  ///< mass of forbidden outcomes, Fourier basis
    double fidelity = 0;   ///< |<target|state>|

    bool satisfied(double tol = kStateTolerance) const { return epsilon_c <= tol && epsilon_f <= tol; }
};

/// Conditions for |X_n>: computational digit sum 0 mod m; Fourier digits all equal.
ViolationReport check_theorem1(const SparseState &state);

/// Conditions for |S_n>: outcomes form a permutation of Z_n in both bases.
/// Requires n == m.
ViolationReport check_theorem2(const SparseState &state);

struct Property1Result {
    double residual = 0;  ///< ||U^{(x)n}|S_n> - det(U)|S_n>||
    ComplexAmp determinant;
};

/// Applies U to every particle of |S_n> (n = U.dim()) and compares against
/// det(U)|S_n>.
Property1Result check_property1(const LocalUnitary &u);

/// Haar-distributed unitary: QR of a complex Gaussian matrix, with the
/// diagonal phases of R folded back into Q.
LocalUnitary random_unitary(int dim, SeededRng &rng);

/// Complex Gaussian amplitudes over the full (Z_m)^n, normalized.
SparseState random_state(int n, int m, SeededRng &rng);

/// Threshold, relative to the largest singular value, below which a singular
/// value counts as zero.
inline constexpr double kRankTolerance = 1e-8;

int numerical_rank(const Eigen::MatrixXcd &a, double rel_tol = kRankTolerance);

/// The n x q matrix A_{jk} = exp(2 pi i j s_k / n).
Eigen::MatrixXcd fourier_vandermonde(int n, std::span<const int> s);

/// True iff fourier_vandermonde(n, s) has full column rank.
bool lemma1_check(int n, std::span<const int> s);

/// Null space of the homogeneous system over tuples with a repeated entry,
/// with one unknown per ordering of the chosen m-subset.
struct SolutionSpace {
    int dimension = 0;
    /// Orderings S of the subset, indexing the coefficient vectors.
    std::vector<std::vector<int>> orderings;
    /// Orthonormal basis of the null space.
    std::vector<Eigen::VectorXcd> basis_vectors;
    int constraint_rows = 0;

    /// True iff the space is one-dimensional and spanned by the all-ones vector.
    bool spanned_by_all_equal(double tol = kRankTolerance) const;
    /// First basis vector with its global phase removed (sum made real positive).
    Eigen::VectorXcd normalized_solution() const;
};

/// Coefficient matrix of the system: rows indexed by tuples t in Z_n^m with a
/// repeated entry, columns by orderings S of w, entries
/// (-1)^tau(S) prod_j exp(2 pi i s_j t_j / n).
Eigen::MatrixXcd repeated_tuple_system(int n, int m, std::span<const int> w,
                                       std::vector<std::vector<int>> *orderings = nullptr);

SolutionSpace lemma2_solution_space(int n, int m, std::span<const int> w);

/// Vector-valued coefficients: solves the block system (one copy of the
/// scalar system per coordinate, coupled into one matrix) and checks that
/// every solution assigns the same vector to every ordering.
bool corollary1_check(int n, int m, std::span<const int> w, int vector_dim);

// ---------------------------------------------------------------------------
// Batch verification

struct CheckRecord {
    std::string name;
    nlohmann::json params;
    nlohmann::json metrics;
    bool passed = false;
};

struct InjectedState {
    std::string check;  ///< "theorem1" or "theorem2"
    SparseState state;
};

struct VerifyOptions {
    int n_min = 2;
    int n_max = 5;
    int m_max = 4;
    int property1_n_max = 4;
    int unitaries = 20;
    int samples = 2000;
    int vector_dim = 2;
    std::uint64_t seed = 1;
    std::vector<InjectedState> injected;
};

struct VerificationReport {
    std::uint64_t seed = 0;
    std::vector<CheckRecord> checks;

    bool all_passed() const;
    nlohmann::json to_json() const;
};

VerificationReport run_verification_suite(const VerifyOptions &options);

}  // namespace sqav

#endif
