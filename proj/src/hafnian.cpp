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

#include <bit>
#include <cstdint>
#include <string>
#include <unordered_map>

#include "gbsgraph/error.hpp"
#include "gbsgraph/linalg.hpp"
#include "gbsgraph/matfn.hpp"

namespace gbsgraph {
namespace {

class PairingContraction {
   public:
    explicit PairingContraction(const ComplexMatrix& m) : m_(m) {}

    Complex eval(std::uint32_t unmatched) {
        if (unmatched == 0) {
            return 1.0;
        }
        const auto i = static_cast<std::size_t>(std::countr_zero(unmatched));
        const std::uint32_t rest = unmatched & (unmatched - 1);
        if (std::popcount(rest) == 1) {
            return m_(i, static_cast<std::size_t>(std::countr_zero(rest)));
        }
        if (auto it = memo_.find(unmatched); it != memo_.end()) {
            return it->second;
        }
        Complex sum{0.0, 0.0};
        for (std::uint32_t partners = rest; partners != 0; partners &= partners - 1) {
            const std::uint32_t bit = partners & (~partners + 1);
            const Complex w = m_(i, static_cast<std::size_t>(std::countr_zero(bit)));
            if (w == Complex{}) {
                continue;
            }
            sum += w * eval(rest & ~bit);
        }
        memo_.emplace(unmatched, sum);
        return sum;
    }

   private:
    const ComplexMatrix& m_;
    std::unordered_map<std::uint32_t, Complex> memo_;
};

}  // namespace

Complex hafnian(const ComplexMatrix& m) {
    if (!m.is_square()) {
        throw ValidationError("hafnian: matrix is not square");
    }
    const std::size_t n = m.rows();
    if (n % 2 != 0) {
        throw ValidationError("hafnian: odd dimension " + std::to_string(n));
    }
    if (n > kMaxHafnianDimension) {
        throw CostGuardError("hafnian: dimension " + std::to_string(n) + " exceeds the limit of " +
                             std::to_string(kMaxHafnianDimension));
    }
    if (!is_symmetric(m, 1e-10)) {
        throw ValidationError("hafnian: matrix is not symmetric");
    }
    if (n == 0) {
        return 1.0;
    }
    PairingContraction contraction(m);
    return contraction.eval(static_cast<std::uint32_t>((std::uint64_t{1} << n) - 1));
}

double hafnian_sq_mod(const Graph& graph, std::span<const std::size_t> subset) {
    validate_subset(subset, graph.vertex_count());
    if (subset.size() % 2 != 0) {
        throw ValidationError("hafnian_sq_mod: subset size must be even");
    }
    return std::norm(hafnian(graph.induced(subset)));
}

}  // namespace gbsgraph
