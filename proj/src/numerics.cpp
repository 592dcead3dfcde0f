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

#include "icin/numerics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <string>

#include "icin/errors.hpp"

namespace icin {
namespace {

constexpr double kBesselSwitch = 12.0;
constexpr double kStirlingSwitch = 10.0;

double bessel_j0_series(double x) {
  const double q = -0.25 * x * x;
  double term = 1.0;
  double sum = 1.0;
  for (int k = 1; k < 200; ++k) {
    term *= q / (static_cast<double>(k) * k);
    sum += term;
    if (std::abs(term) < 1e-17 * std::max(1.0, std::abs(sum)) && k > x) break;
  }
  return sum;
}

double bessel_j0_asymptotic(double x) {
  // Hankel expansion: J0 ~ sqrt(2/(pi x)) (P cos w - Q sin w), w = x - pi/4.
  double p = 1.0;
  double q = 0.0;
  double term = 1.0;  // a_k / x^k
  double previous = std::numeric_limits<double>::infinity();
  for (int k = 1; k < 60; ++k) {
    const double odd = 2.0 * k - 1.0;
    term *= -(odd * odd) / (8.0 * k * x);
    if (std::abs(term) > previous) break;
    previous = std::abs(term);
    if (k % 2 == 0) {
      p += ((k / 2) % 2 == 0 ? 1.0 : -1.0) * term;
    } else {
      q += (((k - 1) / 2) % 2 == 0 ? 1.0 : -1.0) * term;
    }
    if (std::abs(term) < 1e-17) break;
  }
  const double w = x - 0.25 * std::numbers::pi;
  return std::sqrt(2.0 / (std::numbers::pi * x)) * (p * std::cos(w) - q * std::sin(w));
}

// Stirling remainder omega(x) = ln Gamma(x) - [(x - 1/2) ln x - x + ln(2 pi)/2].
double stirling_remainder(double x) {
  const double r = 1.0 / x;
  const double r2 = r * r;
  return r * (1.0 / 12.0 +
              r2 * (-1.0 / 360.0 +
                    r2 * (1.0 / 1260.0 +
                          r2 * (-1.0 / 1680.0 + r2 * (1.0 / 1188.0 + r2 * (-691.0 / 360360.0))))));
}

double ln_gamma_lanczos(double x) {
  static constexpr std::array<double, 9> kCoeff = {
      0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
      771.32342877765313,      -176.61502916214059,   12.507343278686905,
      -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};
  constexpr double kG = 7.0;
  const double z = x - 1.0;
  double a = kCoeff[0];
  for (std::size_t i = 1; i < kCoeff.size(); ++i) a += kCoeff[i] / (z + static_cast<double>(i));
  const double t = z + kG + 0.5;
  return 0.5 * std::log(2.0 * std::numbers::pi) + (z + 0.5) * std::log(t) - t + std::log(a);
}

// ln Gamma(a + b) - ln Gamma(a) for a >= kStirlingSwitch.
double ln_gamma_ratio_large(double a, double b) {
  return (a - 0.5) * std::log1p(b / a) + b * std::log(a + b) - b +
         stirling_remainder(a + b) - stirling_remainder(a);
}

void require_positive(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    std::ostringstream os;
    os << what << " requires a positive finite argument, got " << v;
    throw DomainError(os.str());
  }
}

}  // namespace

double bessel_j0(double x) {
  if (!std::isfinite(x)) throw DomainError("bessel_j0: non-finite argument");
  const double ax = std::abs(x);
  return ax < kBesselSwitch ? bessel_j0_series(ax) : bessel_j0_asymptotic(ax);
}

double ln_gamma(double x) {
  require_positive(x, "ln_gamma");
  if (x < 0.5) return ln_gamma(x + 1.0) - std::log(x);
  if (x < kStirlingSwitch) return ln_gamma_lanczos(x);
  return (x - 0.5) * std::log(x) - x + 0.5 * std::log(2.0 * std::numbers::pi) +
         stirling_remainder(x);
}

double ln_beta(double a, double b) {
  require_positive(a, "ln_beta");
  require_positive(b, "ln_beta");
  const double big = std::max(a, b);
  const double small = std::min(a, b);
  if (big >= kStirlingSwitch) return ln_gamma(small) - ln_gamma_ratio_large(big, small);
  return ln_gamma(a) + ln_gamma(b) - ln_gamma(a + b);
}

double beta_fn(double a, double b) { return std::exp(ln_beta(a, b)); }

Complex inner(std::span<const Complex> a, std::span<const Complex> b) {
  if (a.size() != b.size()) throw DomainError("inner: length mismatch");
  Complex acc{0.0, 0.0};
  for (std::size_t i = 0; i < a.size(); ++i) acc += std::conj(a[i]) * b[i];
  return acc;
}

double norm_sq(std::span<const Complex> v) {
  double acc = 0.0;
  for (const auto& z : v) acc += std::norm(z);
  return acc;
}

double norm(std::span<const Complex> v) { return std::sqrt(norm_sq(v)); }

CVector normalized(std::span<const Complex> v) {
  const double n = norm(v);
  if (!(n > 0.0)) throw DomainError("normalized: zero vector has no direction");
  CVector out(v.begin(), v.end());
  for (auto& z : out) z /= n;
  return out;
}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, Complex{0.0, 0.0}) {}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
  if (data_.size() != rows_ * cols_) throw DomainError("ComplexMatrix: entry count mismatch");
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::from_rows(std::span<const CVector> rows) {
  if (rows.empty()) return {};
  const std::size_t cols = rows.front().size();
  ComplexMatrix m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw DomainError("from_rows: ragged rows");
    std::copy(rows[r].begin(), rows[r].end(), m.data_.begin() + static_cast<std::ptrdiff_t>(r * cols));
  }
  return m;
}

CVector ComplexMatrix::column(std::size_t c) const {
  CVector out(rows_);
  for (std::size_t r = 0; r < rows_; ++r) out[r] = (*this)(r, c);
  return out;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix out(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) out(c, r) = std::conj((*this)(r, c));
  return out;
}

double ComplexMatrix::max_abs() const {
  double m = 0.0;
  for (const auto& z : data_) m = std::max(m, std::abs(z));
  return m;
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols_ != b.rows_) throw DomainError("matrix product: inner dimension mismatch");
  ComplexMatrix out(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Complex aik = a(i, k);
      for (std::size_t j = 0; j < b.cols_; ++j) out(i, j) += aik * b(k, j);
    }
  return out;
}

ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw DomainError("matrix difference: shape mismatch");
  ComplexMatrix out = a;
  for (std::size_t i = 0; i < out.data_.size(); ++i) out.data_[i] -= b.data_[i];
  return out;
}

ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw DomainError("matrix sum: shape mismatch");
  ComplexMatrix out = a;
  for (std::size_t i = 0; i < out.data_.size(); ++i) out.data_[i] += b.data_[i];
  return out;
}

namespace {

double one_norm(const ComplexMatrix& m) {
  double best = 0.0;
  for (std::size_t c = 0; c < m.cols(); ++c) {
    double s = 0.0;
    for (std::size_t r = 0; r < m.rows(); ++r) s += std::abs(m(r, c));
    best = std::max(best, s);
  }
  return best;
}

// Inverse of a Hermitian positive definite matrix via Cholesky. Returns an
// empty matrix when a pivot is not positive.
ComplexMatrix hpd_inverse(const ComplexMatrix& g) {
  const std::size_t n = g.rows();
  ComplexMatrix l(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    double d = g(j, j).real();
    for (std::size_t k = 0; k < j; ++k) d -= std::norm(l(j, k));
    if (!(d > 0.0)) return {};
    const double ljj = std::sqrt(d);
    l(j, j) = ljj;
    for (std::size_t i = j + 1; i < n; ++i) {
      Complex s = g(i, j);
      for (std::size_t k = 0; k < j; ++k) s -= l(i, k) * std::conj(l(j, k));
      l(i, j) = s / ljj;
    }
  }
  // Solve L Y = I, then L^H X = Y.
  ComplexMatrix inv(n, n);
  CVector y(n);
  for (std::size_t col = 0; col < n; ++col) {
    for (std::size_t i = 0; i < n; ++i) {
      Complex s = (i == col) ? Complex{1.0, 0.0} : Complex{0.0, 0.0};
      for (std::size_t k = 0; k < i; ++k) s -= l(i, k) * y[k];
      y[i] = s / l(i, i);
    }
    for (std::size_t ii = n; ii-- > 0;) {
      Complex s = y[ii];
      for (std::size_t k = ii + 1; k < n; ++k) s -= std::conj(l(k, ii)) * inv(k, col);
      inv(ii, col) = s / l(ii, ii).real();
    }
  }
  return inv;
}

}  // namespace

ComplexMatrix right_pseudo_inverse(const ComplexMatrix& a, double condition_cap) {
  if (a.rows() == 0 || a.cols() == 0) throw DomainError("right_pseudo_inverse: empty matrix");
  if (a.rows() > a.cols())
    throw DomainError("right_pseudo_inverse: needs rows <= cols for a right inverse");
  const ComplexMatrix ah = a.adjoint();
  const ComplexMatrix gram = a * ah;
  const ComplexMatrix gram_inv = hpd_inverse(gram);
  const double condition = gram_inv.rows() == 0 ? std::numeric_limits<double>::infinity()
                                                : one_norm(gram) * one_norm(gram_inv);
  if (!(condition <= condition_cap)) {
    std::ostringstream os;
    os << "right_pseudo_inverse: Gram matrix condition number " << condition
       << " exceeds cap " << condition_cap;
    throw SingularityError(os.str(), condition);
  }
  ComplexMatrix p = ah * gram_inv;
  const ComplexMatrix residual = ComplexMatrix::identity(a.rows()) - a * p;
  p = p + ah * (gram_inv * residual);
  return p;
}

}  // namespace icin
