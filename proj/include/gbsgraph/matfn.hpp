// Copyright 2026 The gbsgraph Authors
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

#pragma once

#include <cstddef>
#include <span>

#include "gbsgraph/graph.hpp"
#include "gbsgraph/matrix.hpp"

namespace gbsgraph {

inline constexpr std::size_t kMaxHafnianDimension = 24;
inline constexpr std::size_t kMaxTorontonianModes = 16;

/// Sum over all perfect matchings of {0..n-1} of the product of matched
/// entries. The diagonal is ignored. The 0x0 Hafnian is 1.
///
/// Evaluated by pairing contraction (the lowest unmatched index is paired
/// with every partner) with memoization over the set of unmatched indices.
Complex hafnian(const ComplexMatrix& m);

/// |Haf(adjacency restricted to subset)|^2. Requires an even subset size.
double hafnian_sq_mod(const Graph& graph, std::span<const std::size_t> subset);

/// Tor(o) = sum over Z of (-1)^(m-|Z|) / sqrt(det(I - o_Z)), with o of size
/// 2m in (first block, second block) ordering and o_Z keeping rows and columns
/// {i, i+m : i in Z}. Requires m <= kMaxTorontonianModes. Each det(I - o_Z)
/// must be real positive (relative imaginary part below 1e-8); otherwise
/// NumericalError.
double torontonian(const ComplexMatrix& o);

/// Inclusion-exclusion over vacuum probabilities used by threshold detection:
///
///   sum over Z subset of `modes` of (-1)^(|modes|-|Z|) / sqrt(det b_Z),
///
/// where b is a 2M x 2M Hermitian positive-definite matrix and b_Z keeps rows
/// and columns {i, i+M : i in Z}. Subset determinants are obtained from a
/// depth-first walk that extends one Cholesky factor per added mode, so each
/// subset costs O(|Z|^2). No cap on |modes| beyond 64; callers guard cost.
double threshold_inclusion_exclusion(const ComplexMatrix& b, std::span<const std::size_t> modes);

}  // namespace gbsgraph
