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

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "gbsgraph/error.hpp"
#include "gbsgraph/linalg.hpp"
#include "gbsgraph/matfn.hpp"
#include "gbsgraph/parallel.hpp"

namespace gbsgraph {
namespace {

constexpr double kDetImagTolerance = 1e-8;
// Below this many modes the chunked walk runs inline.
constexpr std::size_t kParallelModes = 10;

double sign_for(std::size_t missing) { return missing % 2 == 0 ? 1.0 : -1.0; }

// Depth-first walk over subsets of {0..s-1} in lexicographic order. Row pair
// (2d, 2d+1) of `chol_` holds the Cholesky rows of the mode added at depth d,
// so extending a subset by one mode costs two triangular solves.
class CholeskyWalk {
   public:
    CholeskyWalk(const std::vector<Complex>& h, std::size_t s, double pivot_floor)
        : h_(h), s_(s), dim_(2 * s), chol_(dim_ * dim_), chosen_(s), y_(2 * dim_), pivot_floor_(pivot_floor) {}

    // Sum of signed terms over all subsets whose smallest element is `first`.
    double chunk(std::size_t first) {
        sum_ = 0.0;
        const double f = extend(0, first);
        const double term = 1.0 / f;
        sum_ += sign_for(s_ - 1) * term;
        descend(1, first, term);
        return sum_;
    }

   private:
    Complex h(std::size_t r, std::size_t c) const { return h_[r * dim_ + c]; }
    Complex& l(std::size_t r, std::size_t c) { return chol_[r * dim_ + c]; }

    void descend(std::size_t depth, std::size_t last, double inv_sqrt_det) {
        for (std::size_t e = last + 1; e < s_; ++e) {
            const double f = extend(depth, e);
            const double term = inv_sqrt_det / f;
            sum_ += sign_for(s_ - depth - 1) * term;
            descend(depth + 1, e, term);
        }
    }

    // Appends mode e at `depth`; returns the product of the two new diagonal
    // entries of the factor, i.e. sqrt of the determinant ratio.
    double extend(std::size_t depth, std::size_t e) {
        chosen_[depth] = e;
        const std::size_t p = 2 * depth;
        Complex* y0 = y_.data();
        Complex* y1 = y_.data() + dim_;
        for (std::size_t t = 0; t < p; ++t) {
            const std::size_t row = 2 * chosen_[t / 2] + t % 2;
            Complex a = h(row, 2 * e);
            Complex b = h(row, 2 * e + 1);
            for (std::size_t u = 0; u < t; ++u) {
                const Complex luv = l(t, u);
                a -= luv * y0[u];
                b -= luv * y1[u];
            }
            const double d = l(t, t).real();
            y0[t] = a / d;
            y1[t] = b / d;
        }
        Complex s00 = h(2 * e, 2 * e);
        Complex s10 = h(2 * e + 1, 2 * e);
        Complex s11 = h(2 * e + 1, 2 * e + 1);
        for (std::size_t t = 0; t < p; ++t) {
            s00 -= std::norm(y0[t]);
            s10 -= std::conj(y1[t]) * y0[t];
            s11 -= std::norm(y1[t]);
            l(p, t) = std::conj(y0[t]);
            l(p + 1, t) = std::conj(y1[t]);
        }
        if (!(s00.real() > pivot_floor_)) {
            throw NumericalError("threshold detection: subset determinant is not positive");
        }
        const double l00 = std::sqrt(s00.real());
        const Complex l10 = s10 / l00;
        const double rem = s11.real() - std::norm(l10);
        if (!(rem > pivot_floor_)) {
            throw NumericalError("threshold detection: subset determinant is not positive");
        }
        const double l11 = std::sqrt(rem);
        l(p, p) = l00;
        l(p, p + 1) = 0.0;
        l(p + 1, p) = l10;
        l(p + 1, p + 1) = l11;
        return l00 * l11;
    }

    const std::vector<Complex>& h_;
    std::size_t s_;
    std::size_t dim_;
    std::vector<Complex> chol_;
    std::vector<std::size_t> chosen_;
    std::vector<Complex> y_;
    double pivot_floor_;
    double sum_ = 0.0;
};

// Reference route: one LU determinant per subset, valid for any complex o.
double torontonian_by_lu(const ComplexMatrix& b, std::size_t m) {
    double total = 0.0;
    std::vector<std::size_t> idx;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
        idx.clear();
        for (std::size_t i = 0; i < m; ++i) {
            if ((mask >> i) & 1U) {
                idx.push_back(i);
            }
        }
        const std::size_t z = idx.size();
        for (std::size_t q = 0; q < z; ++q) {
            idx.push_back(idx[q] + m);
        }
        const Complex d = idx.empty() ? Complex{1.0} : det(b.principal(idx));
        if (!(d.real() > 0.0) || std::abs(d.imag()) > kDetImagTolerance * std::abs(d)) {
            throw NumericalError("torontonian: det(I - o_Z) is not real positive");
        }
        total += sign_for(m - z) / std::sqrt(d.real());
    }
    return total;
}

}  // namespace

double threshold_inclusion_exclusion(const ComplexMatrix& b, std::span<const std::size_t> modes) {
    if (!b.is_square() || b.rows() % 2 != 0) {
        throw ValidationError("threshold detection: matrix must be square with even dimension");
    }
    const std::size_t big_m = b.rows() / 2;
    const std::size_t s = modes.size();
    if (s > 64) {
        throw CostGuardError("threshold detection: too many modes");
    }
    for (const std::size_t mode : modes) {
        if (mode >= big_m) {
            throw ValidationError("threshold detection: mode index out of range");
        }
    }
    if (s == 0) {
        return 1.0;
    }
    // Interleaved compact copy: rows (2p, 2p+1) are modes[p] and modes[p]+M.
    const std::size_t dim = 2 * s;
    std::vector<Complex> h(dim * dim);
    double diag_scale = 0.0;
    for (std::size_t p = 0; p < dim; ++p) {
        const std::size_t rp = modes[p / 2] + (p % 2) * big_m;
        for (std::size_t q = 0; q < dim; ++q) {
            const std::size_t rq = modes[q / 2] + (q % 2) * big_m;
            h[p * dim + q] = b(rp, rq);
        }
        diag_scale = std::max(diag_scale, std::abs(h[p * dim + p]));
    }
    const double pivot_floor = 1e-14 * std::max(1.0, diag_scale);

    std::vector<double> partial(s, 0.0);
    auto run_chunk = [&](std::size_t first) {
        CholeskyWalk walk(h, s, pivot_floor);
        partial[first] = walk.chunk(first);
    };
    if (s >= kParallelModes) {
        parallel::for_each_index(s, run_chunk);
    } else {
        for (std::size_t first = 0; first < s; ++first) {
            run_chunk(first);
        }
    }
    double total = sign_for(s);
    for (const double x : partial) {
        total += x;
    }
    return total;
}

double torontonian(const ComplexMatrix& o) {
    if (!o.is_square() || o.rows() % 2 != 0) {
        throw ValidationError("torontonian: matrix must be square with even dimension");
    }
    const std::size_t m = o.rows() / 2;
    if (m > kMaxTorontonianModes) {
        throw CostGuardError("torontonian: " + std::to_string(m) + " modes exceeds the limit of " +
                             std::to_string(kMaxTorontonianModes));
    }
    const ComplexMatrix b = ComplexMatrix::identity(2 * m) - o;
    if (is_hermitian(b, 1e-12)) {
        std::vector<std::size_t> all(m);
        std::iota(all.begin(), all.end(), std::size_t{0});
        try {
            return threshold_inclusion_exclusion(b, all);
        } catch (const NumericalError&) {
            // Hermitian but indefinite: fall through to the general route, which
            // accepts any positive subset determinants.
        }
    }
    return torontonian_by_lu(b, m);
}

}  // namespace gbsgraph
