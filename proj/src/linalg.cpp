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

#include "gbsgraph/linalg.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <utility>

#include "gbsgraph/error.hpp"

namespace gbsgraph {
namespace {

constexpr double kPivotFloor = 1e-12;

void require_square(const ComplexMatrix& m, const char* what) {
    if (!m.is_square()) {
        throw ValidationError(std::string(what) + ": matrix is not square");
    }
}

// In-place LU with partial pivoting. Returns the permutation sign, or 0 when an
// exactly zero column is met.
int lu_in_place(ComplexMatrix& a, std::vector<std::size_t>& perm) {
    const std::size_t n = a.rows();
    perm.resize(n);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    int sign = 1;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = k;
        double best = std::abs(a(k, k));
        for (std::size_t r = k + 1; r < n; ++r) {
            const double v = std::abs(a(r, k));
            if (v > best) {
                best = v;
                p = r;
            }
        }
        if (best == 0.0) {
            return 0;
        }
        if (p != k) {
            for (std::size_t c = 0; c < n; ++c) {
                std::swap(a(k, c), a(p, c));
            }
            std::swap(perm[k], perm[p]);
            sign = -sign;
        }
        const Complex pivot = a(k, k);
        for (std::size_t r = k + 1; r < n; ++r) {
            const Complex f = a(r, k) / pivot;
            a(r, k) = f;
            if (f == Complex{}) {
                continue;
            }
            for (std::size_t c = k + 1; c < n; ++c) {
                a(r, c) -= f * a(k, c);
            }
        }
    }
    return sign;
}

Eigen::MatrixXcd to_eigen(const ComplexMatrix& m) {
    Eigen::MatrixXcd e(m.rows(), m.cols());
    for (std::size_t r = 0; r < m.rows(); ++r) {
        for (std::size_t c = 0; c < m.cols(); ++c) {
            e(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = m(r, c);
        }
    }
    return e;
}

ComplexMatrix from_eigen(const Eigen::MatrixXcd& e) {
    ComplexMatrix m(static_cast<std::size_t>(e.rows()), static_cast<std::size_t>(e.cols()));
    for (Eigen::Index r = 0; r < e.rows(); ++r) {
        for (Eigen::Index c = 0; c < e.cols(); ++c) {
            m(static_cast<std::size_t>(r), static_cast<std::size_t>(c)) = e(r, c);
        }
    }
    return m;
}

// Principal-style square root of a (numerically) normal unitary matrix with the
// branch cut in the widest angular gap of its spectrum.
Eigen::MatrixXcd unitary_sqrt(const Eigen::MatrixXcd& q) {
    const Eigen::Index n = q.rows();
    Eigen::ComplexSchur<Eigen::MatrixXcd> schur(q);
    const Eigen::MatrixXcd& t = schur.matrixT();
    const Eigen::MatrixXcd& z = schur.matrixU();

    std::vector<double> angles(static_cast<std::size_t>(n));
    for (Eigen::Index i = 0; i < n; ++i) {
        angles[static_cast<std::size_t>(i)] = std::arg(t(i, i));
    }
    std::vector<double> sorted = angles;
    std::sort(sorted.begin(), sorted.end());
    double cut = std::numbers::pi;
    if (!sorted.empty()) {
        double widest = -1.0;
        for (std::size_t i = 0; i < sorted.size(); ++i) {
            const double next = i + 1 < sorted.size() ? sorted[i + 1] : sorted[0] + 2.0 * std::numbers::pi;
            const double gap = next - sorted[i];
            if (gap > widest) {
                widest = gap;
                cut = sorted[i] + 0.5 * gap;
            }
        }
    }

    Eigen::VectorXcd roots(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        // Angle measured from the cut, in [0, 2pi).
        double offset = std::fmod(angles[static_cast<std::size_t>(i)] - cut, 2.0 * std::numbers::pi);
        if (offset < 0.0) {
            offset += 2.0 * std::numbers::pi;
        }
        roots(i) = std::polar(1.0, 0.5 * (cut + offset));
    }
    return z * roots.asDiagonal() * z.adjoint();
}

}  // namespace

Complex det(const ComplexMatrix& m) {
    require_square(m, "det");
    ComplexMatrix a = m;
    std::vector<std::size_t> perm;
    const int sign = lu_in_place(a, perm);
    if (sign == 0) {
        return Complex{0.0, 0.0};
    }
    Complex d = static_cast<double>(sign);
    for (std::size_t i = 0; i < a.rows(); ++i) {
        d *= a(i, i);
    }
    return d;
}

ComplexMatrix inverse(const ComplexMatrix& m) {
    require_square(m, "inverse");
    const std::size_t n = m.rows();
    const double scale = m.max_abs();
    ComplexMatrix a = m;
    std::vector<std::size_t> perm;
    const int sign = lu_in_place(a, perm);
    bool singular = sign == 0;
    for (std::size_t i = 0; i < n && !singular; ++i) {
        singular = std::abs(a(i, i)) < kPivotFloor * scale;
    }
    if (singular) {
        throw NumericalError("inverse: matrix is singular to working precision");
    }
    ComplexMatrix inv(n, n);
    std::vector<Complex> col(n);
    for (std::size_t j = 0; j < n; ++j) {
        // Solve L U x = P e_j.
        for (std::size_t i = 0; i < n; ++i) {
            col[i] = perm[i] == j ? Complex{1.0} : Complex{};
        }
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t k = 0; k < i; ++k) {
                col[i] -= a(i, k) * col[k];
            }
        }
        for (std::size_t ii = n; ii-- > 0;) {
            for (std::size_t k = ii + 1; k < n; ++k) {
                col[ii] -= a(ii, k) * col[k];
            }
            col[ii] /= a(ii, ii);
        }
        for (std::size_t i = 0; i < n; ++i) {
            inv(i, j) = col[i];
        }
    }
    return inv;
}

bool is_symmetric(const ComplexMatrix& m, double tol) {
    if (!m.is_square()) {
        return false;
    }
    const double bound = tol * std::max(1.0, m.max_abs());
    for (std::size_t r = 0; r < m.rows(); ++r) {
        for (std::size_t c = r + 1; c < m.cols(); ++c) {
            if (std::abs(m(r, c) - m(c, r)) > bound) {
                return false;
            }
        }
    }
    return true;
}

bool is_hermitian(const ComplexMatrix& m, double tol) {
    if (!m.is_square()) {
        return false;
    }
    const double bound = tol * std::max(1.0, m.max_abs());
    for (std::size_t r = 0; r < m.rows(); ++r) {
        for (std::size_t c = r; c < m.cols(); ++c) {
            if (std::abs(m(r, c) - std::conj(m(c, r))) > bound) {
                return false;
            }
        }
    }
    return true;
}

std::vector<double> hermitian_eigenvalues(const ComplexMatrix& m) {
    require_square(m, "hermitian_eigenvalues");
    if (m.rows() == 0) {
        return {};
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(to_eigen(m), Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) {
        throw NumericalError("hermitian eigensolver did not converge");
    }
    const auto& ev = solver.eigenvalues();
    return {ev.data(), ev.data() + ev.size()};
}

std::vector<double> singular_values(const ComplexMatrix& m) {
    if (m.rows() == 0 || m.cols() == 0) {
        return {};
    }
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(to_eigen(m));
    const auto& sv = svd.singularValues();
    return {sv.data(), sv.data() + sv.size()};
}

double spectral_norm(const ComplexMatrix& m) {
    const auto sv = singular_values(m);
    return sv.empty() ? 0.0 : sv.front();
}

TakagiFactorization takagi(const ComplexMatrix& s) {
    require_square(s, "takagi");
    if (!is_symmetric(s, 1e-10)) {
        throw ValidationError("takagi: input is not symmetric");
    }
    const std::size_t n = s.rows();
    if (n == 0) {
        return {ComplexMatrix(0, 0), {}};
    }
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(to_eigen(s), Eigen::ComputeFullU | Eigen::ComputeFullV);
    const Eigen::MatrixXcd& w = svd.matrixU();
    const Eigen::MatrixXcd& v = svd.matrixV();
    const Eigen::MatrixXcd q = w.adjoint() * v.conjugate();
    const Eigen::MatrixXcd u = w * unitary_sqrt(q);

    TakagiFactorization out{from_eigen(u), {}};
    const auto& sv = svd.singularValues();
    out.values.assign(sv.data(), sv.data() + sv.size());
    return out;
}

}  // namespace gbsgraph
