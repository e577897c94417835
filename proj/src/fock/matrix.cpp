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

#include "qkdrep/fock/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "qkdrep/kernels/kernels.hpp"

namespace qkdrep {

Matrix::Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

Matrix Matrix::identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        m(i, i) = 1.0;
    }
    return m;
}

Matrix Matrix::unit(std::size_t n, std::size_t i, std::size_t j) {
    Matrix m(n, n);
    m(i, j) = 1.0;
    return m;
}

Matrix Matrix::diagonal(std::span<const double> values) {
    Matrix m(values.size(), values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
        m(i, i) = values[i];
    }
    return m;
}

Matrix Matrix::outer(std::span<const cplx> ket, std::span<const cplx> bra) {
    Matrix m(ket.size(), bra.size());
    for (std::size_t i = 0; i < ket.size(); ++i) {
        for (std::size_t j = 0; j < bra.size(); ++j) {
            m(i, j) = ket[i] * std::conj(bra[j]);
        }
    }
    return m;
}

Matrix Matrix::adjoint() const {
    Matrix m(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r) {
        for (std::size_t c = 0; c < cols_; ++c) {
            m(c, r) = std::conj((*this)(r, c));
        }
    }
    return m;
}

Matrix Matrix::transpose() const {
    Matrix m(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r) {
        for (std::size_t c = 0; c < cols_; ++c) {
            m(c, r) = (*this)(r, c);
        }
    }
    return m;
}

cplx Matrix::trace() const {
    if (!is_square()) {
        throw std::invalid_argument("trace of a non-square matrix");
    }
    cplx t = 0.0;
    for (std::size_t i = 0; i < rows_; ++i) {
        t += (*this)(i, i);
    }
    return t;
}

double Matrix::frobenius_norm() const {
    double s = 0.0;
    for (const cplx& v : data_) {
        s += std::norm(v);
    }
    return std::sqrt(s);
}

double Matrix::max_abs() const {
    double m = 0.0;
    for (const cplx& v : data_) {
        m = std::max(m, std::abs(v));
    }
    return m;
}

bool Matrix::is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](const cplx& v) { return v == cplx{0.0, 0.0}; });
}

Matrix& Matrix::operator+=(const Matrix& other) { return add_scaled(1.0, other); }

Matrix& Matrix::operator-=(const Matrix& other) { return add_scaled(-1.0, other); }

Matrix& Matrix::operator*=(cplx s) {
    for (cplx& v : data_) {
        v *= s;
    }
    return *this;
}

Matrix& Matrix::add_scaled(cplx s, const Matrix& other) {
    if (rows_ != other.rows_ || cols_ != other.cols_) {
        throw std::invalid_argument("matrix shape mismatch");
    }
    kernels::axpy(s, other.data_, data_);
    return *this;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols() != b.rows()) {
        throw std::invalid_argument("matrix product shape mismatch");
    }
    Matrix c(a.rows(), b.cols());
    if (c.size() == 0) {
        return c;
    }
    kernels::gemm(a.rows(), b.cols(), a.cols(), a.data().data(), b.data().data(), c.data().data());
    return c;
}

Matrix operator+(Matrix a, const Matrix& b) { return a += b; }

Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }

Matrix operator*(cplx s, Matrix a) { return a *= s; }

Matrix kron(const Matrix& a, const Matrix& b) {
    Matrix m(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            const cplx aij = a(i, j);
            if (aij == cplx{0.0, 0.0}) {
                continue;
            }
            for (std::size_t k = 0; k < b.rows(); ++k) {
                for (std::size_t l = 0; l < b.cols(); ++l) {
                    m(i * b.rows() + k, j * b.cols() + l) = aij * b(k, l);
                }
            }
        }
    }
    return m;
}

cplx elementwise_dot(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw std::invalid_argument("elementwise_dot shape mismatch");
    }
    return kernels::dotu(a.data(), b.data());
}

double max_abs_diff(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        return std::numeric_limits<double>::infinity();
    }
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        m = std::max(m, std::abs(a.data()[i] - b.data()[i]));
    }
    return m;
}

Matrix realign(const Matrix& joint, std::size_t da, std::size_t db) {
    if (joint.rows() != da * db || joint.cols() != da * db) {
        throw std::invalid_argument("realign: dimension mismatch");
    }
    Matrix out(da * da, db * db);
    for (std::size_t a = 0; a < da; ++a) {
        for (std::size_t b = 0; b < db; ++b) {
            for (std::size_t ap = 0; ap < da; ++ap) {
                for (std::size_t bp = 0; bp < db; ++bp) {
                    out(a * da + ap, b * db + bp) = joint(a * db + b, ap * db + bp);
                }
            }
        }
    }
    return out;
}

Matrix realign_inverse(const Matrix& aligned, std::size_t da, std::size_t db) {
    if (aligned.rows() != da * da || aligned.cols() != db * db) {
        throw std::invalid_argument("realign_inverse: dimension mismatch");
    }
    Matrix out(da * db, da * db);
    for (std::size_t a = 0; a < da; ++a) {
        for (std::size_t b = 0; b < db; ++b) {
            for (std::size_t ap = 0; ap < da; ++ap) {
                for (std::size_t bp = 0; bp < db; ++bp) {
                    out(a * db + b, ap * db + bp) = aligned(a * da + ap, b * db + bp);
                }
            }
        }
    }
    return out;
}

double min_hermitian_eigenvalue(const Matrix& h) {
    if (!h.is_square()) {
        throw std::invalid_argument("eigenvalues of a non-square matrix");
    }
    const std::size_t n = h.rows();
    if (n == 0) {
        return 0.0;
    }
    // Complex Jacobi: each rotation zeroes one off-diagonal pair.
    Matrix a = h;
    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                off += std::norm(a(p, q));
            }
        }
        if (off < 1e-30) {
            break;
        }
        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const cplx apq = a(p, q);
                const double mag = std::abs(apq);
                if (mag < 1e-300) {
                    continue;
                }
                const double app = a(p, p).real();
                const double aqq = a(q, q).real();
                const double theta = 0.5 * std::atan2(2.0 * mag, aqq - app);
                const double c = std::cos(theta);
                const double s = std::sin(theta);
                const cplx phase = apq / mag;
                // Rotation G acting on columns p, q: [c, s*phase; -s*conj(phase), c]
                for (std::size_t k = 0; k < n; ++k) {
                    const cplx akp = a(k, p);
                    const cplx akq = a(k, q);
                    a(k, p) = c * akp - s * std::conj(phase) * akq;
                    a(k, q) = s * phase * akp + c * akq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const cplx apk = a(p, k);
                    const cplx aqk = a(q, k);
                    a(p, k) = c * apk - s * phase * aqk;
                    a(q, k) = s * std::conj(phase) * apk + c * aqk;
                }
            }
        }
    }
    double lo = a(0, 0).real();
    for (std::size_t i = 1; i < n; ++i) {
        lo = std::min(lo, a(i, i).real());
    }
    return lo;
}

}  // namespace qkdrep
