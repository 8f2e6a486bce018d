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

#include "sqav/qstate.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "sqav/errors.h"
#include "sqav/permutation.h"

namespace sqav {

namespace {

// Returns base^exp, or 0 if the result exceeds `limit`.
std::uint64_t bounded_pow(std::uint64_t base, int exp, std::uint64_t limit) {
    std::uint64_t r = 1;
    for (int i = 0; i < exp; i++) {
        if (r > limit / base) {
            return 0;
        }
        r *= base;
    }
    return r;
}

void sort_and_merge(std::vector<SparseState::Term> &terms) {
    std::sort(terms.begin(), terms.end(), [](const auto &a, const auto &b) { return a.first < b.first; });
    size_t out = 0;
    for (size_t i = 0; i < terms.size();) {
        SparseState::Key key = terms[i].first;
        ComplexAmp sum = 0;
        while (i < terms.size() && terms[i].first == key) {
            sum += terms[i].second;
            i++;
        }
        terms[out++] = {key, sum};
    }
    terms.resize(out);
}

// Hilbert-space dimension up to which apply_to_all works on a dense buffer.
constexpr std::uint64_t kDenseLimit = std::uint64_t{1} << 18;

void check_budget(std::uint64_t terms, ResourceBudget budget, const char *what) {
    if (terms > budget.max_terms) {
        throw ResourceError(std::string(what) + ": " + std::to_string(terms) + " terms exceeds budget of " +
                            std::to_string(budget.max_terms));
    }
}

}  // namespace

std::string_view basis_name(Basis basis) {
    return basis == Basis::computational ? "computational" : "fourier";
}

Basis parse_basis(std::string_view text) {
    if (text == "computational" || text == "C") {
        return Basis::computational;
    }
    if (text == "fourier" || text == "F") {
        return Basis::fourier;
    }
    throw ConfigError("unknown basis: " + std::string(text));
}

// ---------------------------------------------------------------------------
// LocalUnitary

LocalUnitary::LocalUnitary(Eigen::MatrixXcd entries) : entries_(std::move(entries)) {
    if (entries_.rows() != entries_.cols() || entries_.rows() < 1) {
        throw DimensionError("LocalUnitary: matrix must be square and non-empty");
    }
    if (!entries_.allFinite()) {
        throw PreconditionError("LocalUnitary: non-finite entry");
    }
    Eigen::MatrixXcd gram = entries_ * entries_.adjoint();
    double dev = (gram - Eigen::MatrixXcd::Identity(dim(), dim())).cwiseAbs().maxCoeff();
    if (dev > kStateTolerance) {
        throw PreconditionError("LocalUnitary: matrix is not unitary (max deviation " + std::to_string(dev) + ")");
    }
}

LocalUnitary LocalUnitary::identity(int m) {
    return LocalUnitary(Eigen::MatrixXcd::Identity(m, m));
}

LocalUnitary LocalUnitary::adjoint() const {
    return LocalUnitary(entries_.adjoint());
}

ComplexAmp LocalUnitary::determinant() const {
    return entries_.determinant();
}

LocalUnitary fourier_matrix(int m) {
    if (m < 2) {
        throw DimensionError("fourier_matrix: dimension must be at least 2, got " + std::to_string(m));
    }
    Eigen::MatrixXcd f(m, m);
    const double scale = 1.0 / std::sqrt(static_cast<double>(m));
    for (int k = 0; k < m; k++) {
        for (int j = 0; j < m; j++) {
            // Reduce jk mod m before taking the angle to keep phases exact at
            // multiples of 2 pi.
            double angle = 2.0 * std::numbers::pi * static_cast<double>((j * k) % m) / m;
            f(k, j) = std::polar(scale, angle);
        }
    }
    return LocalUnitary(std::move(f));
}

// ---------------------------------------------------------------------------
// SparseState

void SparseState::check_shape(int n, int m) {
    if (n < 1 || m < 2) {
        throw DimensionError("SparseState: need n >= 1 and m >= 2, got n=" + std::to_string(n) +
                             " m=" + std::to_string(m));
    }
    if (bounded_pow(static_cast<std::uint64_t>(m), n, std::uint64_t{1} << 62) == 0) {
        throw ResourceError("SparseState: m^n = " + std::to_string(m) + "^" + std::to_string(n) +
                            " does not fit a packed 64-bit key");
    }
}

SparseState::SparseState(int n, int m, std::vector<Term> terms) : n_(n), m_(m), terms_(std::move(terms)) {}

SparseState SparseState::from_keyed(int n, int m, std::vector<Term> terms, Normalize mode) {
    check_shape(n, m);
    const Key dim = bounded_pow(static_cast<std::uint64_t>(m), n, std::uint64_t{1} << 62);
    for (const auto &[key, amp] : terms) {
        if (key >= dim) {
            throw DimensionError("SparseState: key out of range");
        }
        if (!std::isfinite(amp.real()) || !std::isfinite(amp.imag())) {
            throw PreconditionError("SparseState: non-finite amplitude");
        }
    }
    sort_and_merge(terms);
    std::erase_if(terms, [](const Term &t) { return std::abs(t.second) < kPruneThreshold; });
    double norm2 = 0;
    for (const auto &t : terms) {
        norm2 += std::norm(t.second);
    }
    if (mode == Normalize::require) {
        if (std::abs(norm2 - 1.0) > kStateTolerance) {
            throw PreconditionError("SparseState: state is not normalized (norm^2 = " + std::to_string(norm2) + ")");
        }
    } else {
        if (norm2 <= 0) {
            throw PreconditionError("SparseState: zero vector cannot be normalized");
        }
        const double inv = 1.0 / std::sqrt(norm2);
        for (auto &t : terms) {
            t.second *= inv;
        }
    }
    return SparseState(n, m, std::move(terms));
}

SparseState SparseState::from_terms(int n, int m, std::span<const std::pair<std::vector<int>, ComplexAmp>> terms,
                                    Normalize mode) {
    check_shape(n, m);
    SparseState shape(n, m, {});
    std::vector<Term> keyed;
    keyed.reserve(terms.size());
    for (const auto &[digits, amp] : terms) {
        keyed.emplace_back(shape.key_of(digits), amp);
    }
    return from_keyed(n, m, std::move(keyed), mode);
}

SparseState SparseState::basis_state(int n, int m, std::span<const int> digits) {
    check_shape(n, m);
    SparseState shape(n, m, {});
    return SparseState(n, m, {{shape.key_of(digits), ComplexAmp{1.0, 0.0}}});
}

SparseState::Key SparseState::stride(int particle) const {
    Key s = 1;
    for (int i = 0; i < particle; i++) {
        s *= static_cast<Key>(m_);
    }
    return s;
}

SparseState::Key SparseState::key_of(std::span<const int> digits) const {
    if (static_cast<int>(digits.size()) != n_) {
        throw DimensionError("SparseState: tuple length " + std::to_string(digits.size()) + " != n=" +
                             std::to_string(n_));
    }
    Key key = 0;
    for (int k = n_ - 1; k >= 0; k--) {
        if (digits[k] < 0 || digits[k] >= m_) {
            throw DimensionError("SparseState: digit " + std::to_string(digits[k]) + " outside Z_" +
                                 std::to_string(m_));
        }
        key = key * static_cast<Key>(m_) + static_cast<Key>(digits[k]);
    }
    return key;
}

std::vector<int> SparseState::digits_of(Key key) const {
    std::vector<int> d(n_);
    for (int k = 0; k < n_; k++) {
        d[k] = static_cast<int>(key % static_cast<Key>(m_));
        key /= static_cast<Key>(m_);
    }
    return d;
}

int SparseState::digit(Key key, int particle) const {
    return static_cast<int>((key / stride(particle)) % static_cast<Key>(m_));
}

ComplexAmp SparseState::amplitude_at(Key key) const {
    auto it = std::lower_bound(terms_.begin(), terms_.end(), key,
                               [](const Term &t, Key k) { return t.first < k; });
    if (it != terms_.end() && it->first == key) {
        return it->second;
    }
    return 0;
}

ComplexAmp SparseState::amplitude(std::span<const int> digits) const {
    return amplitude_at(key_of(digits));
}

double SparseState::norm_squared() const {
    double s = 0;
    for (const auto &t : terms_) {
        s += std::norm(t.second);
    }
    return s;
}

// ---------------------------------------------------------------------------
// Constructors

SparseState make_chi_state(int n, int m, ResourceBudget budget) {
    if (n < 2 || m < 2) {
        throw DimensionError("make_chi_state: need n >= 2 and m >= 2, got n=" + std::to_string(n) +
                             " m=" + std::to_string(m));
    }
    const std::uint64_t count = bounded_pow(static_cast<std::uint64_t>(m), n - 1, budget.max_terms);
    if (count == 0) {
        throw ResourceError("make_chi_state: m^(n-1) = " + std::to_string(m) + "^" + std::to_string(n - 1) +
                            " terms exceeds budget of " + std::to_string(budget.max_terms));
    }
    const double amp = std::pow(static_cast<double>(m), -(n - 1) / 2.0);
    std::vector<SparseState::Term> terms;
    terms.reserve(count);
    std::vector<int> digits(n, 0);
    for (std::uint64_t c = 0; c < count; c++) {
        std::uint64_t rest = c;
        int sum = 0;
        for (int k = 0; k < n - 1; k++) {
            digits[k] = static_cast<int>(rest % static_cast<std::uint64_t>(m));
            rest /= static_cast<std::uint64_t>(m);
            sum += digits[k];
        }
        digits[n - 1] = (m - sum % m) % m;
        std::uint64_t key = 0;
        for (int k = n - 1; k >= 0; k--) {
            key = key * static_cast<std::uint64_t>(m) + static_cast<std::uint64_t>(digits[k]);
        }
        terms.emplace_back(key, ComplexAmp{amp, 0.0});
    }
    return SparseState::from_keyed(n, m, std::move(terms), SparseState::Normalize::renormalize);
}

SparseState make_singlet_state(int n, ResourceBudget budget) {
    if (n < 2) {
        throw DimensionError("make_singlet_state: need n >= 2, got n=" + std::to_string(n));
    }
    if (n > 20) {
        throw ResourceError("make_singlet_state: n! for n=" + std::to_string(n) + " exceeds any budget");
    }
    check_budget(factorial(n), budget, "make_singlet_state");
    std::vector<int> ident(n);
    for (int i = 0; i < n; i++) {
        ident[i] = i;
    }
    const double amp = 1.0 / std::sqrt(static_cast<double>(factorial(n)));
    std::vector<std::pair<std::vector<int>, ComplexAmp>> terms;
    for (auto &perm : all_permutations(ident)) {
        double sign = permutation_sign(perm);
        terms.emplace_back(std::move(perm), ComplexAmp{sign * amp, 0.0});
    }
    return SparseState::from_terms(n, n, terms, SparseState::Normalize::renormalize);
}

SparseState make_ghz_state(int n, int m) {
    std::vector<std::pair<std::vector<int>, ComplexAmp>> terms;
    for (int j = 0; j < m; j++) {
        terms.emplace_back(std::vector<int>(n, j), ComplexAmp{1.0, 0.0});
    }
    return SparseState::from_terms(n, m, terms);
}

// ---------------------------------------------------------------------------
// Unitaries and basis changes

SparseState apply_local_unitary(const SparseState &state, const LocalUnitary &u, int particle, ResourceBudget budget) {
    if (u.dim() != state.m()) {
        throw DimensionError("apply_local_unitary: unitary dimension " + std::to_string(u.dim()) +
                             " != m=" + std::to_string(state.m()));
    }
    if (particle < 0 || particle >= state.n()) {
        throw DimensionError("apply_local_unitary: particle index " + std::to_string(particle) + " out of range");
    }
    const int m = state.m();
    const SparseState::Key stride = state.stride(particle);
    std::vector<SparseState::Term> out;
    out.reserve(state.support_size() * static_cast<size_t>(m));
    for (const auto &[key, amp] : state.terms()) {
        const int d = state.digit(key, particle);
        const SparseState::Key base = key - static_cast<SparseState::Key>(d) * stride;
        for (int r = 0; r < m; r++) {
            ComplexAmp coeff = u(r, d);
            if (coeff != ComplexAmp{0.0, 0.0}) {
                out.emplace_back(base + static_cast<SparseState::Key>(r) * stride, coeff * amp);
            }
        }
    }
    sort_and_merge(out);
    check_budget(out.size(), budget, "apply_local_unitary");
    return SparseState::from_keyed(state.n(), m, std::move(out), SparseState::Normalize::renormalize);
}

SparseState apply_to_all(const SparseState &state, const LocalUnitary &u, ResourceBudget budget) {
    if (u.dim() != state.m()) {
        throw DimensionError("apply_to_all: unitary dimension " + std::to_string(u.dim()) +
                             " != m=" + std::to_string(state.m()));
    }
    const int n = state.n();
    const int m = state.m();
    const std::uint64_t dim = bounded_pow(static_cast<std::uint64_t>(m), n, kDenseLimit);
    if (dim == 0 || dim > budget.max_terms) {
        SparseState cur = state;
        for (int k = 0; k < n; k++) {
            cur = apply_local_unitary(cur, u, k, budget);
        }
        return cur;
    }
    // Small Hilbert spaces: rotate a dense copy in place, then re-sparsify.
    std::vector<ComplexAmp> dense(dim, ComplexAmp{0.0, 0.0});
    for (const auto &[key, amp] : state.terms()) {
        dense[key] = amp;
    }
    std::vector<ComplexAmp> gather(m);
    const Eigen::MatrixXcd &mat = u.matrix();
    std::uint64_t stride = 1;
    for (int k = 0; k < n; k++) {
        const std::uint64_t block = stride * static_cast<std::uint64_t>(m);
        for (std::uint64_t hi = 0; hi < dim; hi += block) {
            for (std::uint64_t lo = 0; lo < stride; lo++) {
                const std::uint64_t base = hi + lo;
                for (int d = 0; d < m; d++) {
                    gather[d] = dense[base + static_cast<std::uint64_t>(d) * stride];
                }
                for (int r = 0; r < m; r++) {
                    ComplexAmp acc = 0;
                    for (int d = 0; d < m; d++) {
                        acc += mat(r, d) * gather[d];
                    }
                    dense[base + static_cast<std::uint64_t>(r) * stride] = acc;
                }
            }
        }
        stride = block;
    }
    std::vector<SparseState::Term> out;
    for (std::uint64_t key = 0; key < dim; key++) {
        if (std::abs(dense[key]) >= kPruneThreshold) {
            out.emplace_back(key, dense[key]);
        }
    }
    return SparseState::from_keyed(n, m, std::move(out), SparseState::Normalize::renormalize);
}

SparseState in_basis(const SparseState &state, Basis basis) {
    if (basis == Basis::computational) {
        return state;
    }
    return apply_to_all(state, fourier_matrix(state.m()).adjoint());
}

ComplexAmp inner_product(const SparseState &a, const SparseState &b) {
    if (a.n() != b.n() || a.m() != b.m()) {
        throw DimensionError("inner_product: shape mismatch");
    }
    ComplexAmp sum = 0;
    auto ta = a.terms();
    auto tb = b.terms();
    size_t i = 0, j = 0;
    while (i < ta.size() && j < tb.size()) {
        if (ta[i].first < tb[j].first) {
            i++;
        } else if (tb[j].first < ta[i].first) {
            j++;
        } else {
            sum += std::conj(ta[i].second) * tb[j].second;
            i++;
            j++;
        }
    }
    return sum;
}

double distance(const SparseState &a, const SparseState &b) {
    if (a.n() != b.n() || a.m() != b.m()) {
        throw DimensionError("distance: shape mismatch");
    }
    auto ta = a.terms();
    auto tb = b.terms();
    size_t i = 0, j = 0;
    double s = 0;
    while (i < ta.size() || j < tb.size()) {
        if (j == tb.size() || (i < ta.size() && ta[i].first < tb[j].first)) {
            s += std::norm(ta[i++].second);
        } else if (i == ta.size() || tb[j].first < ta[i].first) {
            s += std::norm(tb[j++].second);
        } else {
            s += std::norm(ta[i++].second - tb[j++].second);
        }
    }
    return std::sqrt(s);
}

double probability_mass(const SparseState &state, const std::function<bool(std::span<const int>)> &pred) {
    double s = 0;
    for (const auto &[key, amp] : state.terms()) {
        auto d = state.digits_of(key);
        if (pred(d)) {
            s += std::norm(amp);
        }
    }
    return s;
}

// ---------------------------------------------------------------------------
// Measurement

size_t sample_index(std::span<const double> weights, SeededRng &rng) {
    double total = 0;
    for (double w : weights) {
        total += w;
    }
    if (weights.empty() || !(total > 0)) {
        throw PreconditionError("sample_index: empty or zero distribution");
    }
    double u = rng.uniform() * total;
    double acc = 0;
    for (size_t i = 0; i < weights.size(); i++) {
        acc += weights[i];
        if (u < acc) {
            return i;
        }
    }
    // Rounding can leave u just above the final partial sum.
    for (size_t i = weights.size(); i-- > 0;) {
        if (weights[i] > 0) {
            return i;
        }
    }
    return weights.size() - 1;
}

namespace {

void require_normalized(const SparseState &state, const char *what) {
    double n2 = state.norm_squared();
    if (std::abs(n2 - 1.0) > kStateTolerance) {
        throw PreconditionError(std::string(what) + ": input state is not normalized (norm^2 = " +
                                std::to_string(n2) + ")");
    }
}

}  // namespace

BornSampler::BornSampler(const SparseState &state, Basis basis) : rotated_(in_basis(state, basis)) {
    require_normalized(state, "BornSampler");
    dist_.reserve(rotated_.support_size());
    cumulative_.reserve(rotated_.support_size());
    double acc = 0;
    for (const auto &[key, amp] : rotated_.terms()) {
        double p = std::norm(amp);
        dist_.emplace_back(key, p);
        acc += p;
        cumulative_.push_back(acc);
    }
}

std::vector<int> BornSampler::sample(SeededRng &rng) const {
    const double u = rng.uniform() * cumulative_.back();
    auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
    size_t idx = it == cumulative_.end() ? cumulative_.size() - 1 : static_cast<size_t>(it - cumulative_.begin());
    return rotated_.digits_of(dist_[idx].first);
}

JointMeasurement measure_all(const SparseState &state, Basis basis, SeededRng &rng) {
    BornSampler sampler(state, basis);
    std::vector<int> outcomes = sampler.sample(rng);
    SparseState collapsed = SparseState::basis_state(state.n(), state.m(), outcomes);
    if (basis == Basis::fourier) {
        collapsed = apply_to_all(collapsed, fourier_matrix(state.m()));
    }
    return {std::move(outcomes), std::move(collapsed)};
}

ParticleMeasurement measure_particle(const SparseState &state, int particle, Basis basis, SeededRng &rng) {
    require_normalized(state, "measure_particle");
    if (particle < 0 || particle >= state.n()) {
        throw DimensionError("measure_particle: particle index " + std::to_string(particle) + " out of range");
    }
    const int m = state.m();
    SparseState rotated = state;
    if (basis == Basis::fourier) {
        rotated = apply_local_unitary(state, fourier_matrix(m).adjoint(), particle);
    }
    std::vector<double> marginal(m, 0.0);
    for (const auto &[key, amp] : rotated.terms()) {
        marginal[rotated.digit(key, particle)] += std::norm(amp);
    }
    const int outcome = static_cast<int>(sample_index(marginal, rng));
    std::vector<SparseState::Term> kept;
    for (const auto &t : rotated.terms()) {
        if (rotated.digit(t.first, particle) == outcome) {
            kept.push_back(t);
        }
    }
    SparseState collapsed = SparseState::from_keyed(state.n(), m, std::move(kept));
    if (basis == Basis::fourier) {
        collapsed = apply_local_unitary(collapsed, fourier_matrix(m), particle);
    }
    return {outcome, std::move(collapsed)};
}

}  // namespace sqav
