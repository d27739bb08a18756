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

#include "gbsgraph/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "gbsgraph/error.hpp"

namespace gbsgraph {

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), entries_(rows * cols, Complex{0.0, 0.0}) {}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
    if (entries_.size() != rows_ * cols_) {
        throw ValidationError("matrix entry count " + std::to_string(entries_.size()) + " does not match shape " +
                              std::to_string(rows_) + "x" + std::to_string(cols_));
    }
    if (!all_finite()) {
        throw ValidationError("matrix has non-finite entries");
    }
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        m(i, i) = 1.0;
    }
    return m;
}

ComplexMatrix ComplexMatrix::from_rows(std::initializer_list<std::initializer_list<Complex>> rows) {
    const std::size_t r = rows.size();
    const std::size_t c = r == 0 ? 0 : rows.begin()->size();
    std::vector<Complex> entries;
    entries.reserve(r * c);
    for (const auto& row : rows) {
        if (row.size() != c) {
            throw ValidationError("ragged matrix rows");
        }
        entries.insert(entries.end(), row.begin(), row.end());
    }
    return ComplexMatrix(r, c, std::move(entries));
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const Complex> values) {
    ComplexMatrix m(values.size(), values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
        m(i, i) = values[i];
    }
    return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const double> values) {
    ComplexMatrix m(values.size(), values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
        m(i, i) = values[i];
    }
    return m;
}

ComplexMatrix ComplexMatrix::block(const ComplexMatrix& tl, const ComplexMatrix& tr, const ComplexMatrix& bl,
                                   const ComplexMatrix& br) {
    if (tl.rows() != tr.rows() || bl.rows() != br.rows() || tl.cols() != bl.cols() || tr.cols() != br.cols()) {
        throw ValidationError("incompatible block shapes");
    }
    ComplexMatrix m(tl.rows() + bl.rows(), tl.cols() + tr.cols());
    auto place = [&m](const ComplexMatrix& b, std::size_t r0, std::size_t c0) {
        for (std::size_t r = 0; r < b.rows(); ++r) {
            for (std::size_t c = 0; c < b.cols(); ++c) {
                m(r0 + r, c0 + c) = b(r, c);
            }
        }
    };
    place(tl, 0, 0);
    place(tr, 0, tl.cols());
    place(bl, tl.rows(), 0);
    place(br, tl.rows(), tl.cols());
    return m;
}

ComplexMatrix ComplexMatrix::transpose() const {
    ComplexMatrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r) {
        for (std::size_t c = 0; c < cols_; ++c) {
            t(c, r) = (*this)(r, c);
        }
    }
    return t;
}

ComplexMatrix ComplexMatrix::adjoint() const {
    ComplexMatrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r) {
        for (std::size_t c = 0; c < cols_; ++c) {
            t(c, r) = std::conj((*this)(r, c));
        }
    }
    return t;
}

ComplexMatrix ComplexMatrix::conjugate() const {
    ComplexMatrix t = *this;
    for (auto& x : t.entries_) {
        x = std::conj(x);
    }
    return t;
}

ComplexMatrix ComplexMatrix::submatrix(std::span<const std::size_t> rows, std::span<const std::size_t> cols) const {
    ComplexMatrix s(rows.size(), cols.size());
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r] >= rows_) {
            throw ValidationError("submatrix row index out of range");
        }
        for (std::size_t c = 0; c < cols.size(); ++c) {
            if (cols[c] >= cols_) {
                throw ValidationError("submatrix column index out of range");
            }
            s(r, c) = (*this)(rows[r], cols[c]);
        }
    }
    return s;
}

ComplexMatrix ComplexMatrix::slice(std::size_t r0, std::size_t c0, std::size_t rows, std::size_t cols) const {
    if (r0 + rows > rows_ || c0 + cols > cols_) {
        throw ValidationError("slice out of range");
    }
    ComplexMatrix s(rows, cols);
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < cols; ++c) {
            s(r, c) = (*this)(r0 + r, c0 + c);
        }
    }
    return s;
}

double ComplexMatrix::frobenius_norm() const {
    double sum = 0.0;
    for (const auto& x : entries_) {
        sum += std::norm(x);
    }
    return std::sqrt(sum);
}

double ComplexMatrix::max_abs() const {
    double m = 0.0;
    for (const auto& x : entries_) {
        m = std::max(m, std::abs(x));
    }
    return m;
}

bool ComplexMatrix::all_finite() const {
    return std::all_of(entries_.begin(), entries_.end(),
                       [](const Complex& x) { return std::isfinite(x.real()) && std::isfinite(x.imag()); });
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& other) {
    if (rows_ != other.rows_ || cols_ != other.cols_) {
        throw ValidationError("matrix sum shape mismatch");
    }
    for (std::size_t i = 0; i < entries_.size(); ++i) {
        entries_[i] += other.entries_[i];
    }
    return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& other) {
    if (rows_ != other.rows_ || cols_ != other.cols_) {
        throw ValidationError("matrix difference shape mismatch");
    }
    for (std::size_t i = 0; i < entries_.size(); ++i) {
        entries_[i] -= other.entries_[i];
    }
    return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(Complex scalar) {
    for (auto& x : entries_) {
        x *= scalar;
    }
    return *this;
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.cols() != b.rows()) {
        throw ValidationError("matrix product shape mismatch");
    }
    ComplexMatrix p(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const Complex aik = a(i, k);
            if (aik == Complex{}) {
                continue;
            }
            for (std::size_t j = 0; j < b.cols(); ++j) {
                p(i, j) += aik * b(k, j);
            }
        }
    }
    return p;
}

double frobenius_distance(const ComplexMatrix& a, const ComplexMatrix& b) { return (a - b).frobenius_norm(); }

double relative_distance(const ComplexMatrix& a, const ComplexMatrix& b) {
    const double scale = b.frobenius_norm();
    const double d = frobenius_distance(a, b);
    return scale > 0.0 ? d / scale : d;
}

}  // namespace gbsgraph
