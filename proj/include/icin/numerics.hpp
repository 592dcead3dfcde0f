// Copyright 2026 The icin-feedback Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
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

namespace icin {

using Complex = std::complex<double>;
using CVector = std::vector<Complex>;

// ---------------------------------------------------------------------------
// Special functions
// ---------------------------------------------------------------------------

/// Bessel function of the first kind, order zero. Power series for |x| < 12,
/// Hankel asymptotic expansion beyond. Throws DomainError on non-finite input.
double bessel_j0(double x);

/// ln Gamma(x) for x > 0 (Lanczos, g = 7).
double ln_gamma(double x);

/// ln B(a, b). Stays accurate when one argument is huge (a ~ 2^64) by
/// evaluating ln Gamma(a + b) - ln Gamma(a) through a Stirling difference.
double ln_beta(double a, double b);

/// B(a, b) = Gamma(a) Gamma(b) / Gamma(a + b), a, b > 0.
double beta_fn(double a, double b);

// ---------------------------------------------------------------------------
// Complex vectors
// ---------------------------------------------------------------------------

/// <a, b> = sum conj(a_i) b_i.
Complex inner(std::span<const Complex> a, std::span<const Complex> b);
double norm_sq(std::span<const Complex> v);
double norm(std::span<const Complex> v);
/// v / ||v||; throws DomainError for a zero vector.
CVector normalized(std::span<const Complex> v);

// ---------------------------------------------------------------------------
// Complex matrices
// ---------------------------------------------------------------------------

/// Dense complex matrix, row-major.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(std::size_t rows, std::size_t cols);
  ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries);

  static ComplexMatrix identity(std::size_t n);
  /// Stacks the given vectors as rows; all must have equal length.
  static ComplexMatrix from_rows(std::span<const CVector> rows);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::span<const Complex> entries() const noexcept { return data_; }

  Complex& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Complex& operator()(std::size_t r, std::size_t c) const {
    return data_[r * cols_ + c];
  }

  CVector column(std::size_t c) const;
  ComplexMatrix adjoint() const;
  /// Largest absolute entry.
  double max_abs() const;

  friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
  friend ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b);
  friend ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Complex> data_;
};

inline constexpr double kDefaultConditionCap = 1e12;

/// Right pseudo-inverse A^H (A A^H)^{-1} of a wide, full-row-rank matrix.
///
/// The Gram matrix is factored by Cholesky; its 1-norm condition number is
/// compared against `condition_cap` and a SingularityError carrying the
/// offending value is thrown when exceeded. One step of iterative refinement
/// brings A * pinv(A) to identity at roughly machine precision.
ComplexMatrix right_pseudo_inverse(const ComplexMatrix& a,
                                   double condition_cap = kDefaultConditionCap);

}  // namespace icin
