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

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace gbsgraph {

using Complex = std::complex<double>;

/// Dense complex matrix stored row-major.
///
/// Construction from explicit entries rejects NaN/Inf. Element access through
/// the mutable operator() is unchecked, so code that writes entries directly is
/// responsible for keeping them finite.
class ComplexMatrix {
   public:
    ComplexMatrix() = default;
    ComplexMatrix(std::size_t rows, std::size_t cols);
    ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries);

    static ComplexMatrix identity(std::size_t n);
    static ComplexMatrix from_rows(std::initializer_list<std::initializer_list<Complex>> rows);
    static ComplexMatrix diagonal(std::span<const Complex> values);
    static ComplexMatrix diagonal(std::span<const double> values);

    /// Assembles [[tl, tr], [bl, br]]; block shapes must be compatible.
    static ComplexMatrix block(const ComplexMatrix& tl, const ComplexMatrix& tr, const ComplexMatrix& bl,
                               const ComplexMatrix& br);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool is_square() const { return rows_ == cols_; }
    bool empty() const { return entries_.empty(); }

    Complex& operator()(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
    const Complex& operator()(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }

    std::span<const Complex> entries() const { return entries_; }
    std::span<const Complex> row(std::size_t r) const { return {entries_.data() + r * cols_, cols_}; }

    ComplexMatrix transpose() const;
    ComplexMatrix adjoint() const;
    ComplexMatrix conjugate() const;

    ComplexMatrix submatrix(std::span<const std::size_t> rows, std::span<const std::size_t> cols) const;
    ComplexMatrix principal(std::span<const std::size_t> indices) const { return submatrix(indices, indices); }
    /// Contiguous block starting at (r0, c0).
    ComplexMatrix slice(std::size_t r0, std::size_t c0, std::size_t rows, std::size_t cols) const;

    double frobenius_norm() const;
    double max_abs() const;
    bool all_finite() const;

    ComplexMatrix& operator+=(const ComplexMatrix& other);
    ComplexMatrix& operator-=(const ComplexMatrix& other);
    ComplexMatrix& operator*=(Complex scalar);

    friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
    friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
    friend ComplexMatrix operator*(ComplexMatrix a, Complex s) { return a *= s; }
    friend ComplexMatrix operator*(Complex s, ComplexMatrix a) { return a *= s; }
    friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);

    bool operator==(const ComplexMatrix& other) const = default;

   private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Complex> entries_;
};

/// Frobenius norm of a - b.
double frobenius_distance(const ComplexMatrix& a, const ComplexMatrix& b);

/// ||a - b||_F / ||b||_F, or the absolute distance when b is zero.
double relative_distance(const ComplexMatrix& a, const ComplexMatrix& b);

}  // namespace gbsgraph
