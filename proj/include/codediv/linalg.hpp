// SPDX-License-Identifier: Apache-2.0
//
// codediv: code diversity simulation library for space-time block codes
// Copyright (C) 2026 The codediv authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

// Small dense complex matrices. Every matrix in the library is at most a
// few tens of entries, so storage is a plain row-major vector and all
// algorithms are the textbook ones (LU, cyclic Jacobi).

#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace codediv {

using cplx = std::complex<double>;
using CVec = std::vector<cplx>;

class CMat {
 public:
  CMat() = default;
  CMat(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  CMat(std::size_t rows, std::size_t cols, CVec row_major);
  /// Row-by-row literal, e.g. CMat{{1, 0}, {0, 1}}.
  CMat(std::initializer_list<std::initializer_list<cplx>> rows);

  static CMat identity(std::size_t n);
  static CMat diagonal(std::span<const cplx> d);
  static CMat column(std::span<const cplx> v);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool square() const noexcept { return rows_ == cols_; }

  cplx& operator()(std::size_t r, std::size_t c) noexcept { return data_[r * cols_ + c]; }
  const cplx& operator()(std::size_t r, std::size_t c) const noexcept { return data_[r * cols_ + c]; }

  std::span<const cplx> data() const noexcept { return data_; }
  std::span<cplx> data() noexcept { return data_; }

  CMat adjoint() const;
  CMat transpose() const;
  CMat conj() const;
  CVec col(std::size_t c) const;

  /// Column-major stacking (column 0 first).
  CVec vec() const;

  CMat& operator+=(const CMat& o);
  CMat& operator-=(const CMat& o);
  CMat& operator*=(cplx s);

  friend CMat operator+(CMat a, const CMat& b) { return a += b; }
  friend CMat operator-(CMat a, const CMat& b) { return a -= b; }
  friend CMat operator*(CMat a, cplx s) { return a *= s; }
  friend CMat operator*(cplx s, CMat a) { return a *= s; }
  friend CMat operator*(const CMat& a, const CMat& b);
  friend CVec operator*(const CMat& a, std::span<const cplx> x);
  friend bool operator==(const CMat&, const CMat&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  CVec data_;
};

/// Real spectrum of a positive semidefinite Hermitian matrix, sorted
/// descending. Values at or below `rank_tolerance` count as zero.
struct EigenSpectrum {
  std::vector<double> values;
  double rank_tolerance = 0.0;

  std::size_t rank() const noexcept;
  /// Product of the eigenvalues above tolerance (1 for the zero matrix).
  double nonzero_product() const noexcept;
  /// Natural-log sum of the eigenvalues above tolerance.
  double nonzero_log_sum() const noexcept;
};

struct HermitianEigen {
  std::vector<double> values;  // descending
  CMat vectors;                // column i pairs with values[i]
};

struct SingularValueDecomposition {
  CMat u;                      // rows x k
  std::vector<double> sigma;   // k values, descending
  CMat v;                      // cols x k
};

inline constexpr double kRelativeRankTolerance = 1e-9;

double frobenius_norm(const CMat& a);
double frobenius_norm(std::span<const cplx> v);
/// Relative Hermitian defect ||A - A^H||_F / ||A||_F (0 for the zero matrix).
double hermitian_defect(const CMat& a);
cplx trace(const CMat& a);

cplx det(const CMat& a);
CMat inverse(const CMat& a);

HermitianEigen hermitian_eigen(const CMat& a);
/// Throws ContractViolation unless `a` is square and Hermitian to 1e-9.
EigenSpectrum hermitian_eigenvalues(const CMat& a);

SingularValueDecomposition svd(const CMat& a);
/// Moore-Penrose inverse; singular values below 1e-9 of the largest are
/// treated as zero.
CMat pseudo_inverse(const CMat& a);

/// Columns f_j = (1, w^j, ..., w^{(M-1)j})^T with w = exp(2 pi i / M).
CMat fourier_basis(std::size_t m);

/// Gram matrix A^H A.
CMat gram(const CMat& a);

double max_abs_diff(const CMat& a, const CMat& b);

}  // namespace codediv
