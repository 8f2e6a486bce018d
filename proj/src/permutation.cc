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

#include "sqav/permutation.h"

#include <algorithm>
#include <string>

#include "sqav/errors.h"

namespace sqav {

bool all_distinct(std::span<const int> seq) {
    std::vector<int> sorted(seq.begin(), seq.end());
    std::sort(sorted.begin(), sorted.end());
    return std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end();
}

std::uint64_t inverse_number(std::span<const int> seq) {
    if (!all_distinct(seq)) {
        throw PermutationError("inverse_number: sequence has a repeated entry");
    }
    std::uint64_t count = 0;
    for (size_t i = 0; i < seq.size(); i++) {
        for (size_t j = i + 1; j < seq.size(); j++) {
            count += seq[i] > seq[j];
        }
    }
    return count;
}

int permutation_sign(std::span<const int> seq) {
    return (inverse_number(seq) & 1) ? -1 : 1;
}

bool is_full_permutation(std::span<const int> seq) {
    std::vector<bool> seen(seq.size(), false);
    for (int v : seq) {
        if (v < 0 || static_cast<size_t>(v) >= seq.size() || seen[v]) {
            return false;
        }
        seen[v] = true;
    }
    return true;
}

std::vector<std::vector<int>> all_permutations(std::vector<int> values) {
    std::sort(values.begin(), values.end());
    std::vector<std::vector<int>> out;
    do {
        out.push_back(values);
    } while (std::next_permutation(values.begin(), values.end()));
    return out;
}

std::vector<std::vector<int>> all_combinations(int n, int k) {
    std::vector<std::vector<int>> out;
    if (k < 0 || k > n) {
        return out;
    }
    std::vector<int> cur(k);
    for (int i = 0; i < k; i++) {
        cur[i] = i;
    }
    while (true) {
        out.push_back(cur);
        int i = k - 1;
        while (i >= 0 && cur[i] == n - k + i) {
            i--;
        }
        if (i < 0) {
            break;
        }
        cur[i]++;
        for (int j = i + 1; j < k; j++) {
            cur[j] = cur[j - 1] + 1;
        }
    }
    return out;
}

std::vector<std::vector<int>> all_arrangements(int n, int k) {
    std::vector<std::vector<int>> out;
    for (const auto &combo : all_combinations(n, k)) {
        for (auto &p : all_permutations(combo)) {
            out.push_back(std::move(p));
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::uint64_t factorial(int n) {
    if (n < 0 || n > 20) {
        throw PreconditionError("factorial: argument out of range: " + std::to_string(n));
    }
    std::uint64_t r = 1;
    for (int i = 2; i <= n; i++) {
        r *= static_cast<std::uint64_t>(i);
    }
    return r;
}

std::uint64_t binomial(int n, int k) {
    if (k < 0 || k > n) {
        return 0;
    }
    k = std::min(k, n - k);
    unsigned __int128 r = 1;
    for (int i = 1; i <= k; i++) {
        r = r * static_cast<unsigned>(n - k + i) / static_cast<unsigned>(i);
    }
    return static_cast<std::uint64_t>(r);
}

}  // namespace sqav
