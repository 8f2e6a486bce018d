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

#ifndef SQAV_PERMUTATION_H
#define SQAV_PERMUTATION_H

#include <cstdint>
#include <span>
#include <vector>

namespace sqav {

/// Number of pairs (i < j) with seq[i] > seq[j]. Throws PermutationError if
/// seq contains a repeated entry.
std::uint64_t inverse_number(std::span<const int> seq);

/// +1 or -1 according to the parity of inverse_number(seq).
int permutation_sign(std::span<const int> seq);

/// True iff seq is a permutation of {0, 1, ..., n-1} with n = seq.size().
bool is_full_permutation(std::span<const int> seq);

/// True iff the entries of seq are pairwise distinct.
bool all_distinct(std::span<const int> seq);

/// All orderings of `values` in lexicographic order of positions within the
/// sorted input.
std::vector<std::vector<int>> all_permutations(std::vector<int> values);

/// All k-element subsets of {0..n-1}, each sorted ascending, in
/// lexicographic order.
std::vector<std::vector<int>> all_combinations(int n, int k);

/// All length-k tuples over {0..n-1} with pairwise distinct entries.
std::vector<std::vector<int>> all_arrangements(int n, int k);

std::uint64_t factorial(int n);
std::uint64_t binomial(int n, int k);

}  // namespace sqav

#endif
