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

#ifndef SQAV_QSTATE_H
#define SQAV_QSTATE_H

#include <complex>
#include <cstdint>
#include <functional>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "sqav/rng.h"

namespace sqav {

using ComplexAmp = std::complex<double>;

/// Tolerance used for normalization and unitarity checks.
inline constexpr double kStateTolerance = 1e-10;
/// Amplitudes smaller than this are dropped after a unitary is applied.
inline constexpr double kPruneThreshold = 1e-12;
/// Default cap on the number of stored terms in any constructed state.
inline constexpr std::uint64_t kDefaultMaxTerms = std::uint64_t{1} << 21;

enum class Basis { computational, fourier };

std::string_view basis_name(Basis basis);
/// Accepts "computational"/"C" and "fourier"/"F".
Basis parse_basis(std::string_view text);

struct ResourceBudget {
    std::uint64_t max_terms = kDefaultMaxTerms;
};

/// An m x m unitary acting on a single particle. Construction validates
/// U U^dagger = I within kStateTolerance.
class LocalUnitary {
   public:
    explicit LocalUnitary(Eigen::MatrixXcd entries);

    static LocalUnitary identity(int m);

    int dim() const { return static_cast<int>(entries_.rows()); }
    const Eigen::MatrixXcd &matrix() const { return entries_; }
    ComplexAmp operator()(int row, int col) const { return entries_(row, col); }
    LocalUnitary adjoint() const;
    ComplexAmp determinant() const;

   private:
    Eigen::MatrixXcd entries_;
};

/// Discrete Fourier transform with entries exp(2 pi i j k / m) / sqrt(m).
/// Column j is the Fourier basis vector |j'>.
LocalUnitary fourier_matrix(int m);

/// Sparse amplitude vector over (Z_m)^n. Basis tuples are packed into a
/// 64-bit key with particle 0 as the least significant base-m digit.
///
/// A SparseState is always normalized: every factory either renormalizes or
/// rejects input whose squared norm differs from 1 by more than
/// kStateTolerance.
class SparseState {
   public:
    using Key = std::uint64_t;
    using Term = std::pair<Key, ComplexAmp>;

    enum class Normalize { renormalize, require };

    /// Builds a state from (digits, amplitude) pairs. Repeated tuples are summed.
    static SparseState from_terms(int n, int m, std::span<const std::pair<std::vector<int>, ComplexAmp>> terms,
                                  Normalize mode = Normalize::renormalize);
    /// Builds a state from packed-key terms. Repeated keys are summed.
    static SparseState from_keyed(int n, int m, std::vector<Term> terms, Normalize mode = Normalize::renormalize);
    static SparseState basis_state(int n, int m, std::span<const int> digits);

    int n() const { return n_; }
    int m() const { return m_; }
    size_t support_size() const { return terms_.size(); }
    std::span<const Term> terms() const { return terms_; }

    ComplexAmp amplitude(std::span<const int> digits) const;
    ComplexAmp amplitude_at(Key key) const;
    double norm_squared() const;

    Key key_of(std::span<const int> digits) const;
    std::vector<int> digits_of(Key key) const;
    int digit(Key key, int particle) const;
    /// m^particle, the stride of the given particle in a packed key.
    Key stride(int particle) const;

    bool operator==(const SparseState &other) const = default;

   private:
    SparseState(int n, int m, std::vector<Term> terms);
    static void check_shape(int n, int m);

    int n_;
    int m_;
    std::vector<Term> terms_;  // sorted by key, no duplicates
};

/// |X_n> : uniform amplitude over tuples whose digit sum is 0 mod m.
SparseState make_chi_state(int n, int m, ResourceBudget budget = {});

/// |S_n> : n-level n-particle totally antisymmetric state.
SparseState make_singlet_state(int n, ResourceBudget budget = {});

/// (1/sqrt(m)) sum_j |j j ... j>.
SparseState make_ghz_state(int n, int m);

SparseState apply_local_unitary(const SparseState &state, const LocalUnitary &u, int particle,
                                ResourceBudget budget = {});
SparseState apply_to_all(const SparseState &state, const LocalUnitary &u, ResourceBudget budget = {});

/// Amplitudes of the state expressed in the requested basis, i.e. F^dagger
/// applied to every particle for the Fourier basis.
SparseState in_basis(const SparseState &state, Basis basis);

ComplexAmp inner_product(const SparseState &a, const SparseState &b);

/// ||a - b||, computed over the union of supports.
double distance(const SparseState &a, const SparseState &b);

/// Total |amplitude|^2 over computational tuples satisfying `pred`.
double probability_mass(const SparseState &state, const std::function<bool(std::span<const int>)> &pred);

/// Exact outcome distribution of measuring every particle in one basis.
/// Precomputes the cumulative table once so repeated draws are cheap.
class BornSampler {
   public:
    BornSampler(const SparseState &state, Basis basis);

    std::vector<int> sample(SeededRng &rng) const;
    /// (outcome key, probability) pairs in key order.
    std::span<const std::pair<SparseState::Key, double>> distribution() const { return dist_; }
    const SparseState &rotated() const { return rotated_; }

   private:
    SparseState rotated_;
    std::vector<std::pair<SparseState::Key, double>> dist_;
    std::vector<double> cumulative_;
};

struct JointMeasurement {
    std::vector<int> outcomes;
    SparseState collapsed;
};

struct ParticleMeasurement {
    int outcome;
    SparseState collapsed;
};

/// Measures every particle in `basis`. The collapsed state is the product of
/// the measured basis vectors, expressed in computational amplitudes.
JointMeasurement measure_all(const SparseState &state, Basis basis, SeededRng &rng);

/// Measures one particle in `basis` and renormalizes the remainder.
ParticleMeasurement measure_particle(const SparseState &state, int particle, Basis basis, SeededRng &rng);

/// Samples an index from `weights` (non-negative, summing to ~1) by inverse CDF.
size_t sample_index(std::span<const double> weights, SeededRng &rng);

}  // namespace sqav

#endif
