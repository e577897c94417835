// Copyright 2026 The qkdrep Authors
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
#include <span>
#include <vector>

namespace qkdrep {

using cplx = std::complex<double>;

// Dense row-major complex matrix. Products go through the dispatched kernels.
class Matrix {
  public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols);

    static Matrix identity(std::size_t n);
    // |i><j| in an n-dimensional space.
    static Matrix unit(std::size_t n, std::size_t i, std::size_t j);
    static Matrix diagonal(std::span<const double> values);
    static Matrix outer(std::span<const cplx> ket, std::span<const cplx> bra);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::size_t size() const { return data_.size(); }
    bool empty() const { return data_.empty(); }
    bool is_square() const { return rows_ == cols_; }

    cplx& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const cplx& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    std::span<cplx> data() { return data_; }
    std::span<const cplx> data() const { return data_; }

    Matrix adjoint() const;
    Matrix transpose() const;
    cplx trace() const;
    double frobenius_norm() const;
    double max_abs() const;
    bool is_zero() const;

    Matrix& operator+=(const Matrix& other);
    Matrix& operator-=(const Matrix& other);
    Matrix& operator*=(cplx s);
    // this += s * other
    Matrix& add_scaled(cplx s, const Matrix& other);

    bool operator==(const Matrix& other) const = default;

  private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<cplx> data_;
};

Matrix operator*(const Matrix& a, const Matrix& b);
Matrix operator+(Matrix a, const Matrix& b);
Matrix operator-(Matrix a, const Matrix& b);
Matrix operator*(cplx s, Matrix a);

Matrix kron(const Matrix& a, const Matrix& b);

// Sum_ij a(i,j) * b(i,j); equals tr(a * b^T).
cplx elementwise_dot(const Matrix& a, const Matrix& b);

double max_abs_diff(const Matrix& a, const Matrix& b);

// Reorders a joint operator on modes (a, b) with dimensions (da, db), indexed
// [(a b), (a' b')], into the superoperator layout [(a a'), (b b')]. The same
// map is its own inverse up to swapping the roles of the row/column blocks;
// see realign_inverse.
Matrix realign(const Matrix& joint, std::size_t da, std::size_t db);
Matrix realign_inverse(const Matrix& aligned, std::size_t da, std::size_t db);

// Smallest eigenvalue of a Hermitian matrix (cyclic Jacobi). Intended for
// small matrices in positivity checks.
double min_hermitian_eigenvalue(const Matrix& h);

}  // namespace qkdrep
