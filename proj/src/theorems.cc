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

#include "sqav/theorems.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>

#include <Eigen/QR>
#include <Eigen/SVD>

#include "sqav/errors.h"
#include "sqav/permutation.h"
#include "sqav/stats.h"

namespace sqav {

namespace {

bool digit_sum_zero(std::span<const int> d, int m) {
    int s = 0;
    for (int x : d) {
        s += x;
    }
    return s % m == 0;
}

bool all_equal(std::span<const int> d) {
    return std::adjacent_find(d.begin(), d.end(), std::not_equal_to<>()) == d.end();
}

ComplexAmp root_of_unity(long long exponent, int n) {
    long long r = ((exponent % n) + n) % n;
    return std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(r) / n);
}

Eigen::MatrixXcd null_space(const Eigen::MatrixXcd &a, double rel_tol) {
    Eigen::BDCSVD<Eigen::MatrixXcd> svd(a, Eigen::ComputeFullV);
    const auto &sv = svd.singularValues();
    const double smax = sv.size() > 0 ? sv(0) : 0.0;
    int rank = 0;
    for (int i = 0; i < sv.size(); i++) {
        if (sv(i) > rel_tol * smax) {
            rank++;
        }
    }
    const int cols = static_cast<int>(a.cols());
    return svd.matrixV().rightCols(cols - rank);
}

}  // namespace

// ---------------------------------------------------------------------------
// Theorems 1 and 2

ViolationReport check_theorem1(const SparseState &state) {
    const int m = state.m();
    ViolationReport r;
    r.epsilon_c = probability_mass(state, [m](std::span<const int> d) { return !digit_sum_zero(d, m); });
    SparseState f = in_basis(state, Basis::fourier);
    r.epsilon_f = probability_mass(f, [](std::span<const int> d) { return !all_equal(d); });
    r.fidelity = std::min(1.0, std::abs(inner_product(make_chi_state(state.n(), m), state)));
    r.epsilon_c = std::clamp(r.epsilon_c, 0.0, 1.0);
    r.epsilon_f = std::clamp(r.epsilon_f, 0.0, 1.0);
    return r;
}

ViolationReport check_theorem2(const SparseState &state) {
    if (state.n() != state.m()) {
        throw DimensionError("check_theorem2: singlet conditions need n == m, got n=" + std::to_string(state.n()) +
                             " m=" + std::to_string(state.m()));
    }
    auto not_perm = [](std::span<const int> d) { return !is_full_permutation(d); };
    ViolationReport r;
    r.epsilon_c = std::clamp(probability_mass(state, not_perm), 0.0, 1.0);
    r.epsilon_f = std::clamp(probability_mass(in_basis(state, Basis::fourier), not_perm), 0.0, 1.0);
    r.fidelity = std::min(1.0, std::abs(inner_product(make_singlet_state(state.n()), state)));
    return r;
}

// ---------------------------------------------------------------------------
// Property 1

Property1Result check_property1(const LocalUnitary &u) {
    const int n = u.dim();
    SparseState singlet = make_singlet_state(n);
    SparseState rotated = apply_to_all(singlet, u);
    const ComplexAmp det = u.determinant();
    std::vector<SparseState::Term> scaled(singlet.terms().begin(), singlet.terms().end());
    for (auto &t : scaled) {
        t.second *= det;
    }
    SparseState expected = SparseState::from_keyed(n, n, std::move(scaled), SparseState::Normalize::require);
    return {distance(rotated, expected), det};
}

LocalUnitary random_unitary(int dim, SeededRng &rng) {
    if (dim < 1) {
        throw DimensionError("random_unitary: dimension must be positive");
    }
    Eigen::MatrixXcd g(dim, dim);
    for (int i = 0; i < dim; i++) {
        for (int j = 0; j < dim; j++) {
            double re = rng.gaussian();
            double im = rng.gaussian();
            g(i, j) = ComplexAmp(re, im) / std::sqrt(2.0);
        }
    }
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(g);
    Eigen::MatrixXcd q = qr.householderQ();
    Eigen::MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int k = 0; k < dim; k++) {
        ComplexAmp d = r(k, k);
        if (std::abs(d) > 0) {
            q.col(k) *= d / std::abs(d);
        }
    }
    return LocalUnitary(std::move(q));
}

SparseState random_state(int n, int m, SeededRng &rng) {
    SparseState shape = SparseState::basis_state(n, m, std::vector<int>(n, 0));
    const SparseState::Key dim = shape.stride(n - 1) * static_cast<SparseState::Key>(m);
    std::vector<SparseState::Term> terms;
    terms.reserve(dim);
    for (SparseState::Key k = 0; k < dim; k++) {
        double re = rng.gaussian();
        double im = rng.gaussian();
        terms.emplace_back(k, ComplexAmp(re, im));
    }
    return SparseState::from_keyed(n, m, std::move(terms));
}

// ---------------------------------------------------------------------------
// Linear-algebra lemmas

int numerical_rank(const Eigen::MatrixXcd &a, double rel_tol) {
    if (a.size() == 0) {
        return 0;
    }
    Eigen::BDCSVD<Eigen::MatrixXcd> svd(a);
    const auto &sv = svd.singularValues();
    int rank = 0;
    for (int i = 0; i < sv.size(); i++) {
        if (sv(i) > rel_tol * sv(0)) {
            rank++;
        }
    }
    return rank;
}

Eigen::MatrixXcd fourier_vandermonde(int n, std::span<const int> s) {
    if (n < 1) {
        throw DimensionError("fourier_vandermonde: n must be positive");
    }
    if (s.empty() || static_cast<int>(s.size()) > n) {
        throw PreconditionError("fourier_vandermonde: need 1 <= |s| <= n");
    }
    for (int v : s) {
        if (v < 0 || v >= n) {
            throw DimensionError("fourier_vandermonde: entry " + std::to_string(v) + " outside Z_" + std::to_string(n));
        }
    }
    if (!all_distinct(s)) {
        throw PermutationError("fourier_vandermonde: entries must be distinct");
    }
    Eigen::MatrixXcd a(n, static_cast<Eigen::Index>(s.size()));
    for (int j = 0; j < n; j++) {
        for (size_t k = 0; k < s.size(); k++) {
            a(j, static_cast<Eigen::Index>(k)) = root_of_unity(static_cast<long long>(j) * s[k], n);
        }
    }
    return a;
}

bool lemma1_check(int n, std::span<const int> s) {
    Eigen::MatrixXcd a = fourier_vandermonde(n, s);
    return numerical_rank(a) == static_cast<int>(s.size());
}

Eigen::MatrixXcd repeated_tuple_system(int n, int m, std::span<const int> w,
                                       std::vector<std::vector<int>> *orderings) {
    if (m < 2 || m > n) {
        throw PreconditionError("repeated_tuple_system: need 2 <= m <= n, got n=" + std::to_string(n) +
                                " m=" + std::to_string(m));
    }
    if (static_cast<int>(w.size()) != m) {
        throw PreconditionError("repeated_tuple_system: subset has " + std::to_string(w.size()) +
                                " entries, expected m=" + std::to_string(m));
    }
    for (int v : w) {
        if (v < 0 || v >= n) {
            throw DimensionError("repeated_tuple_system: subset entry outside Z_n");
        }
    }
    if (!all_distinct(w)) {
        throw PermutationError("repeated_tuple_system: subset entries must be distinct");
    }
    auto perms = all_permutations(std::vector<int>(w.begin(), w.end()));
    std::vector<int> signs;
    for (const auto &p : perms) {
        signs.push_back(permutation_sign(p));
    }

    // Enumerate every t in Z_n^m that has a repeated entry.
    std::vector<std::vector<int>> rows;
    std::vector<int> t(m, 0);
    while (true) {
        if (!all_distinct(t)) {
            rows.push_back(t);
        }
        int k = 0;
        while (k < m && ++t[k] == n) {
            t[k] = 0;
            k++;
        }
        if (k == m) {
            break;
        }
    }

    Eigen::MatrixXcd a(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(perms.size()));
    for (size_t r = 0; r < rows.size(); r++) {
        for (size_t c = 0; c < perms.size(); c++) {
            long long e = 0;
            for (int j = 0; j < m; j++) {
                e += static_cast<long long>(perms[c][j]) * rows[r][j];
            }
            a(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
                static_cast<double>(signs[c]) * root_of_unity(e, n);
        }
    }
    if (orderings != nullptr) {
        *orderings = std::move(perms);
    }
    return a;
}

bool SolutionSpace::spanned_by_all_equal(double tol) const {
    if (dimension != 1) {
        return false;
    }
    const auto &v = basis_vectors.front();
    Eigen::VectorXcd ones = Eigen::VectorXcd::Ones(v.size()) / std::sqrt(static_cast<double>(v.size()));
    return std::abs(std::abs(ones.dot(v)) - 1.0) <= tol;
}

Eigen::VectorXcd SolutionSpace::normalized_solution() const {
    if (basis_vectors.empty()) {
        return {};
    }
    Eigen::VectorXcd v = basis_vectors.front().normalized();
    ComplexAmp s = v.sum();
    if (std::abs(s) > 0) {
        v *= std::conj(s) / std::abs(s);
    }
    return v;
}

SolutionSpace lemma2_solution_space(int n, int m, std::span<const int> w) {
    SolutionSpace out;
    Eigen::MatrixXcd a = repeated_tuple_system(n, m, w, &out.orderings);
    out.constraint_rows = static_cast<int>(a.rows());
    Eigen::MatrixXcd ns = null_space(a, kRankTolerance);
    out.dimension = static_cast<int>(ns.cols());
    for (int c = 0; c < ns.cols(); c++) {
        out.basis_vectors.push_back(ns.col(c));
    }
    return out;
}

bool corollary1_check(int n, int m, std::span<const int> w, int vector_dim) {
    if (vector_dim < 1) {
        throw PreconditionError("corollary1_check: vector_dim must be positive");
    }
    Eigen::MatrixXcd a = repeated_tuple_system(n, m, w);
    const Eigen::Index rows = a.rows();
    const Eigen::Index cols = a.cols();
    // Unknown (S, c) sits at column S * vector_dim + c; constraint (t, c) at row t * vector_dim + c.
    Eigen::MatrixXcd block = Eigen::MatrixXcd::Zero(rows * vector_dim, cols * vector_dim);
    for (Eigen::Index r = 0; r < rows; r++) {
        for (Eigen::Index s = 0; s < cols; s++) {
            for (int c = 0; c < vector_dim; c++) {
                block(r * vector_dim + c, s * vector_dim + c) = a(r, s);
            }
        }
    }
    Eigen::MatrixXcd ns = null_space(block, kRankTolerance);
    if (ns.cols() != vector_dim) {
        return false;
    }
    for (Eigen::Index k = 0; k < ns.cols(); k++) {
        Eigen::VectorXcd v = ns.col(k);
        for (int c = 0; c < vector_dim; c++) {
            const ComplexAmp first = v(c);
            for (Eigen::Index s = 1; s < cols; s++) {
                if (std::abs(v(s * vector_dim + c) - first) > kRankTolerance) {
                    return false;
                }
            }
        }
    }
    return true;
}

// ---------------------------------------------------------------------------
// Batch verification

bool VerificationReport::all_passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckRecord &c) { return c.passed; });
}

nlohmann::json VerificationReport::to_json() const {
    nlohmann::json list = nlohmann::json::array();
    for (const auto &c : checks) {
        list.push_back({{"name", c.name}, {"params", c.params}, {"metrics", c.metrics}, {"pass", c.passed}});
    }
    return {{"schema", "sqav.verify/1"}, {"seed", seed}, {"pass", all_passed()}, {"checks", std::move(list)}};
}

namespace {

void record_violation(VerificationReport &rep, const std::string &name, nlohmann::json params,
                      const ViolationReport &v) {
    bool ok = v.epsilon_c <= kStateTolerance && v.epsilon_f <= kStateTolerance &&
              std::abs(v.fidelity - 1.0) <= kStateTolerance;
    rep.checks.push_back({name,
                          std::move(params),
                          {{"epsilon_c", v.epsilon_c}, {"epsilon_f", v.epsilon_f}, {"fidelity", v.fidelity}},
                          ok});
}

}  // namespace

VerificationReport run_verification_suite(const VerifyOptions &opt) {
    if (opt.n_min < 2 || opt.n_max < opt.n_min) {
        throw ConfigError("verify: need 2 <= n_min <= n_max");
    }
    if (opt.m_max < 2) {
        throw ConfigError("verify: need m_max >= 2");
    }
    if (opt.property1_n_max < 2 || opt.unitaries < 0 || opt.samples < 0 || opt.vector_dim < 1) {
        throw ConfigError("verify: invalid property1_n_max, unitaries, samples or vector_dim");
    }
    VerificationReport rep;
    rep.seed = opt.seed;
    SeededRng master(opt.seed);

    for (int n = opt.n_min; n <= opt.n_max; n++) {
        for (int m = 2; m <= opt.m_max; m++) {
            SparseState chi = make_chi_state(n, m);
            record_violation(rep, "theorem1_forward", {{"n", n}, {"m", m}}, check_theorem1(chi));

            SeededRng rng = master.derive({1, static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(m)});
            std::uint64_t violations = 0;
            for (Basis b : {Basis::computational, Basis::fourier}) {
                BornSampler sampler(chi, b);
                for (int s = 0; s < opt.samples; s++) {
                    auto d = sampler.sample(rng);
                    bool ok = b == Basis::computational ? digit_sum_zero(d, m) : all_equal(d);
                    violations += !ok;
                }
            }
            rep.checks.push_back({"theorem1_sampling",
                                  {{"n", n}, {"m", m}, {"samples_per_basis", opt.samples}},
                                  {{"violations", violations}},
                                  violations == 0});
        }
    }

    for (int n = opt.n_min; n <= opt.n_max; n++) {
        SparseState singlet = make_singlet_state(n);
        record_violation(rep, "theorem2_forward", {{"n", n}}, check_theorem2(singlet));
        if (n > 4) {
            continue;
        }
        SeededRng rng = master.derive({2, static_cast<std::uint64_t>(n)});
        const std::uint64_t cells = factorial(n);
        for (Basis b : {Basis::computational, Basis::fourier}) {
            BornSampler sampler(singlet, b);
            std::map<std::vector<int>, std::uint64_t> counts;
            std::uint64_t violations = 0;
            for (int s = 0; s < opt.samples; s++) {
                auto d = sampler.sample(rng);
                violations += !is_full_permutation(d);
                counts[d]++;
            }
            std::vector<std::uint64_t> obs;
            for (const auto &p : all_permutations([&] {
                     std::vector<int> v(n);
                     for (int i = 0; i < n; i++) v[i] = i;
                     return v;
                 }())) {
                obs.push_back(counts[p]);
            }
            std::vector<double> expect(obs.size(), 1.0 / static_cast<double>(cells));
            double chi = chi_squared(obs, expect, static_cast<std::uint64_t>(opt.samples));
            double limit = chi_squared_3sigma(static_cast<int>(cells) - 1);
            rep.checks.push_back({"theorem2_sampling",
                                  {{"n", n}, {"basis", basis_name(b)}, {"samples", opt.samples}},
                                  {{"violations", violations}, {"chi_squared", chi}, {"limit", limit}},
                                  violations == 0 && (opt.samples == 0 || chi <= limit)});
        }
    }

    {
        Property1Result exact = check_property1(fourier_matrix(2));
        bool ok = exact.residual < 1e-10 && std::abs(exact.determinant - ComplexAmp(-1.0, 0.0)) < 1e-10;
        rep.checks.push_back({"property1_fourier2",
                              {{"n", 2}},
                              {{"residual", exact.residual},
                               {"det_re", exact.determinant.real()},
                               {"det_im", exact.determinant.imag()}},
                              ok});
    }
    for (int n = 2; n <= opt.property1_n_max; n++) {
        SeededRng rng = master.derive({3, static_cast<std::uint64_t>(n)});
        double worst = 0;
        for (int k = 0; k < opt.unitaries; k++) {
            worst = std::max(worst, check_property1(random_unitary(n, rng)).residual);
        }
        rep.checks.push_back({"property1_random",
                              {{"n", n}, {"unitaries", opt.unitaries}},
                              {{"max_residual", worst}},
                              worst < 1e-9});
    }

    for (int n = opt.n_min; n <= opt.n_max; n++) {
        int tested = 0;
        int failures = 0;
        for (int q = 1; q <= n; q++) {
            for (const auto &s : all_combinations(n, q)) {
                tested++;
                failures += !lemma1_check(n, s);
            }
        }
        rep.checks.push_back(
            {"lemma1", {{"n", n}}, {{"subsets", tested}, {"rank_deficient", failures}}, failures == 0});
    }

    for (int n = opt.n_min; n <= opt.n_max; n++) {
        for (int m = 2; m <= n; m++) {
            int subsets = 0;
            int bad = 0;
            int bad_corollary = 0;
            double coeff_dev = 0;
            for (const auto &w : all_combinations(n, m)) {
                subsets++;
                SolutionSpace space = lemma2_solution_space(n, m, w);
                bad += !space.spanned_by_all_equal();
                if (space.dimension == 1) {
                    Eigen::VectorXcd v = space.normalized_solution();
                    const double expect = 1.0 / std::sqrt(static_cast<double>(factorial(m)));
                    for (Eigen::Index i = 0; i < v.size(); i++) {
                        coeff_dev = std::max(coeff_dev, std::abs(v(i) - ComplexAmp(expect, 0.0)));
                    }
                }
                bad_corollary += !corollary1_check(n, m, w, opt.vector_dim);
            }
            rep.checks.push_back({"lemma2",
                                  {{"n", n}, {"m", m}},
                                  {{"subsets", subsets}, {"failures", bad}, {"max_coefficient_deviation", coeff_dev}},
                                  bad == 0 && coeff_dev < 1e-8});
            rep.checks.push_back({"corollary1",
                                  {{"n", n}, {"m", m}, {"vector_dim", opt.vector_dim}},
                                  {{"subsets", subsets}, {"failures", bad_corollary}},
                                  bad_corollary == 0});
        }
    }

    for (size_t i = 0; i < opt.injected.size(); i++) {
        const auto &inj = opt.injected[i];
        nlohmann::json params = {{"index", i}, {"n", inj.state.n()}, {"m", inj.state.m()}};
        if (inj.check == "theorem1") {
            record_violation(rep, "injected_theorem1", params, check_theorem1(inj.state));
        } else if (inj.check == "theorem2") {
            record_violation(rep, "injected_theorem2", params, check_theorem2(inj.state));
        } else {
            throw ConfigError("verify: unknown injected check '" + inj.check + "'");
        }
    }
    return rep;
}

}  // namespace sqav
