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

#include "codediv/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "codediv/errors.hpp"

namespace codediv {

CMat::CMat(std::size_t rows, std::size_t cols, CVec row_major)
    : rows_(rows), cols_(cols), data_(std::move(row_major)) {
  require(data_.size() == rows_ * cols_, "CMat: entry count does not match shape");
}

CMat::CMat(std::initializer_list<std::initializer_list<cplx>> rows) {
  rows_ = rows.size();
  cols_ = rows_ ? rows.begin()->size() : 0;
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    require(r.size() == cols_, "CMat: ragged initializer");
    data_.insert(data_.end(), r.begin(), r.end());
  }
}

CMat CMat::identity(std::size_t n) {
  CMat m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

CMat CMat::diagonal(std::span<const cplx> d) {
  CMat m(d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return m;
}

CMat CMat::column(std::span<const cplx> v) { return CMat(v.size(), 1, CVec(v.begin(), v.end())); }

CMat CMat::adjoint() const {
  CMat m(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) m(c, r) = std::conj((*this)(r, c));
  return m;
}

CMat CMat::transpose() const {
  CMat m(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) m(c, r) = (*this)(r, c);
  return m;
}

CMat CMat::conj() const {
  CMat m = *this;
  for (auto& z : m.data_) z = std::conj(z);
  return m;
}

CVec CMat::col(std::size_t c) const {
  CVec v(rows_);
  for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
  return v;
}

CVec CMat::vec() const {
  CVec v;
  v.reserve(data_.size());
  for (std::size_t c = 0; c < cols_; ++c)
    for (std::size_t r = 0; r < rows_; ++r) v.push_back((*this)(r, c));
  return v;
}

CMat& CMat::operator+=(const CMat& o) {
  require(rows_ == o.rows_ && cols_ == o.cols_, "CMat +: shape mismatch");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
  return *this;
}

CMat& CMat::operator-=(const CMat& o) {
  require(rows_ == o.rows_ && cols_ == o.cols_, "CMat -: shape mismatch");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
  return *this;
}

CMat& CMat::operator*=(cplx s) {
  for (auto& z : data_) z *= s;
  return *this;
}

CMat operator*(const CMat& a, const CMat& b) {
  require(a.cols_ == b.rows_, "CMat *: inner dimensions differ");
  CMat m(a.rows_, b.cols_);
  for (std::size_t r = 0; r < a.rows_; ++r)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const cplx x = a(r, k);
      for (std::size_t c = 0; c < b.cols_; ++c) m(r, c) += x * b(k, c);
    }
  return m;
}

CVec operator*(const CMat& a, std::span<const cplx> x) {
  require(a.cols_ == x.size(), "CMat * vector: dimension mismatch");
  CVec y(a.rows_);
  for (std::size_t r = 0; r < a.rows_; ++r) {
    cplx s = 0.0;
    for (std::size_t c = 0; c < a.cols_; ++c) s += a(r, c) * x[c];
    y[r] = s;
  }
  return y;
}

std::size_t EigenSpectrum::rank() const noexcept {
  return static_cast<std::size_t>(
      std::count_if(values.begin(), values.end(), [&](double v) { return v > rank_tolerance; }));
}

double EigenSpectrum::nonzero_product() const noexcept {
  double p = 1.0;
  for (double v : values)
    if (v > rank_tolerance) p *= v;
  return p;
}

double EigenSpectrum::nonzero_log_sum() const noexcept {
  double s = 0.0;
  for (double v : values)
    if (v > rank_tolerance) s += std::log(v);
  return s;
}

double frobenius_norm(std::span<const cplx> v) {
  double s = 0.0;
  for (const cplx& z : v) s += std::norm(z);
  return std::sqrt(s);
}

double frobenius_norm(const CMat& a) { return frobenius_norm(a.data()); }

double hermitian_defect(const CMat& a) {
  require(a.square(), "hermitian_defect: matrix must be square");
  const double n = frobenius_norm(a);
  if (n == 0.0) return 0.0;
  double s = 0.0;
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c) s += std::norm(a(r, c) - std::conj(a(c, r)));
  return std::sqrt(s) / n;
}

cplx trace(const CMat& a) {
  require(a.square(), "trace: matrix must be square");
  cplx t = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i) t += a(i, i);
  return t;
}

namespace {

// In-place LU with partial pivoting. Returns the permutation sign, or 0
// when a zero pivot is met (singular matrix).
int lu_decompose(CMat& a, std::vector<std::size_t>& perm) {
  const std::size_t n = a.rows();
  perm.resize(n);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  int sign = 1;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    double best = std::abs(a(k, k));
    for (std::size_t r = k + 1; r < n; ++r) {
      if (std::abs(a(r, k)) > best) {
        best = std::abs(a(r, k));
        p = r;
      }
    }
    if (best == 0.0) return 0;
    if (p != k) {
      for (std::size_t c = 0; c < n; ++c) std::swap(a(k, c), a(p, c));
      std::swap(perm[k], perm[p]);
      sign = -sign;
    }
    for (std::size_t r = k + 1; r < n; ++r) {
      const cplx f = a(r, k) / a(k, k);
      a(r, k) = f;
      for (std::size_t c = k + 1; c < n; ++c) a(r, c) -= f * a(k, c);
    }
  }
  return sign;
}

}  // namespace

cplx det(const CMat& a) {
  require(a.square(), "det: matrix must be square");
  if (a.rows() == 0) return 1.0;
  CMat lu = a;
  std::vector<std::size_t> perm;
  const int sign = lu_decompose(lu, perm);
  if (sign == 0) return 0.0;
  cplx d = static_cast<double>(sign);
  for (std::size_t i = 0; i < lu.rows(); ++i) d *= lu(i, i);
  return d;
}

CMat inverse(const CMat& a) {
  require(a.square(), "inverse: matrix must be square");
  const std::size_t n = a.rows();
  CMat lu = a;
  std::vector<std::size_t> perm;
  if (lu_decompose(lu, perm) == 0) throw IllConditioned("inverse: matrix is singular");
  CMat inv(n, n);
  for (std::size_t col = 0; col < n; ++col) {
    CVec x(n);
    for (std::size_t i = 0; i < n; ++i) {
      cplx s = perm[i] == col ? 1.0 : 0.0;
      for (std::size_t j = 0; j < i; ++j) s -= lu(i, j) * x[j];
      x[i] = s;
    }
    for (std::size_t i = n; i-- > 0;) {
      cplx s = x[i];
      for (std::size_t j = i + 1; j < n; ++j) s -= lu(i, j) * x[j];
      x[i] = s / lu(i, i);
    }
    for (std::size_t i = 0; i < n; ++i) inv(i, col) = x[i];
  }
  return inv;
}

HermitianEigen hermitian_eigen(const CMat& input) {
  require(input.square(), "hermitian_eigen: matrix must be square");
  const std::size_t n = input.rows();
  CMat a = input;
  CMat v = CMat::identity(n);
  const double scale = frobenius_norm(a);

  // Cyclic Jacobi: each rotation U = D P zeroes a(p,q), where D removes the
  // phase of a(p,q) and P is the real Jacobi rotation.
  for (int sweep = 0; sweep < 64; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) off += std::norm(a(p, q));
    if (off == 0.0 || std::sqrt(off) <= 1e-15 * scale) break;

    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double mag = std::abs(a(p, q));
        if (mag == 0.0) continue;
        const cplx phase = a(p, q) / mag;
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        const double zeta = (aqq - app) / (2.0 * mag);
        const double t = (zeta >= 0.0 ? 1.0 : -1.0) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        // U restricted to (p,q): [[phase*c, phase*s], [-s, c]]
        const cplx upp = phase * c, upq = phase * s, uqp = -s, uqq = c;
        for (std::size_t k = 0; k < n; ++k) {
          const cplx akp = a(k, p), akq = a(k, q);
          a(k, p) = akp * upp + akq * uqp;
          a(k, q) = akp * upq + akq * uqq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const cplx apk = a(p, k), aqk = a(q, k);
          a(p, k) = std::conj(upp) * apk + std::conj(uqp) * aqk;
          a(q, k) = std::conj(upq) * apk + std::conj(uqq) * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();
        for (std::size_t k = 0; k < n; ++k) {
          const cplx vkp = v(k, p), vkq = v(k, q);
          v(k, p) = vkp * upp + vkq * uqp;
          v(k, q) = vkp * upq + vkq * uqq;
        }
      }
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [&](std::size_t i, std::size_t j) { return a(i, i).real() > a(j, j).real(); });
  HermitianEigen out{std::vector<double>(n), CMat(n, n)};
  for (std::size_t i = 0; i < n; ++i) {
    out.values[i] = a(order[i], order[i]).real();
    for (std::size_t k = 0; k < n; ++k) out.vectors(k, i) = v(k, order[i]);
  }
  return out;
}

EigenSpectrum hermitian_eigenvalues(const CMat& a) {
  require(a.square(), "hermitian_eigenvalues: matrix must be square");
  require(hermitian_defect(a) <= 1e-9, "hermitian_eigenvalues: matrix is not Hermitian");
  EigenSpectrum s;
  s.values = hermitian_eigen(a).values;
  const double top = s.values.empty() ? 0.0 : std::max(0.0, s.values.front());
  s.rank_tolerance = kRelativeRankTolerance * top;
  return s;
}

SingularValueDecomposition svd(const CMat& input) {
  // One-sided (Hestenes) Jacobi on the columns of A; at convergence
  // A V = U diag(sigma).
  const bool wide = input.cols() > input.rows();
  CMat a = wide ? input.adjoint() : input;
  const std::size_t m = a.rows(), n = a.cols();
  CMat v = CMat::identity(n);

  for (int sweep = 0; sweep < 64; ++sweep) {
    bool rotated = false;
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        double alpha = 0.0, beta = 0.0;
        cplx gamma = 0.0;
        for (std::size_t k = 0; k < m; ++k) {
          alpha += std::norm(a(k, p));
          beta += std::norm(a(k, q));
          gamma += std::conj(a(k, p)) * a(k, q);
        }
        const double g = std::abs(gamma);
        if (g == 0.0 || g <= 1e-15 * std::sqrt(alpha * beta)) continue;
        rotated = true;
        const cplx unphase = std::conj(gamma) / g;
        const double zeta = (beta - alpha) / (2.0 * g);
        const double t = (zeta >= 0.0 ? 1.0 : -1.0) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        for (std::size_t k = 0; k < m; ++k) {
          const cplx ap = a(k, p), aq = a(k, q) * unphase;
          a(k, p) = c * ap - s * aq;
          a(k, q) = s * ap + c * aq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const cplx vp = v(k, p), vq = v(k, q) * unphase;
          v(k, p) = c * vp - s * vq;
          v(k, q) = s * vp + c * vq;
        }
      }
    }
    if (!rotated) break;
  }

  std::vector<double> sig(n);
  for (std::size_t j = 0; j < n; ++j) {
    double s = 0.0;
    for (std::size_t k = 0; k < m; ++k) s += std::norm(a(k, j));
    sig[j] = std::sqrt(s);
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return sig[i] > sig[j]; });

  const std::size_t k = std::min(m, n);
  SingularValueDecomposition out{CMat(m, k), std::vector<double>(k), CMat(n, k)};
  for (std::size_t i = 0; i < k; ++i) {
    const std::size_t j = order[i];
    out.sigma[i] = sig[j];
    for (std::size_t r = 0; r < m; ++r) out.u(r, i) = sig[j] > 0.0 ? a(r, j) / sig[j] : 0.0;
    for (std::size_t r = 0; r < n; ++r) out.v(r, i) = v(r, j);
  }
  if (wide) std::swap(out.u, out.v);
  return out;
}

CMat pseudo_inverse(const CMat& a) {
  const SingularValueDecomposition d = svd(a);
  CMat p(a.cols(), a.rows());
  if (d.sigma.empty()) return p;
  const double tol = kRelativeRankTolerance * d.sigma.front();
  for (std::size_t i = 0; i < d.sigma.size(); ++i) {
    if (d.sigma[i] <= tol || d.sigma[i] == 0.0) continue;
    const double inv = 1.0 / d.sigma[i];
    for (std::size_t r = 0; r < a.cols(); ++r) {
      const cplx vr = d.v(r, i) * inv;
      for (std::size_t c = 0; c < a.rows(); ++c) p(r, c) += vr * std::conj(d.u(c, i));
    }
  }
  return p;
}

CMat fourier_basis(std::size_t m) {
  require(m >= 1, "fourier_basis: order must be at least 1");
  CMat f(m, m);
  for (std::size_t r = 0; r < m; ++r)
    for (std::size_t j = 0; j < m; ++j) {
      // reduce the exponent first so large M keeps full accuracy
      const double angle = 2.0 * std::numbers::pi * static_cast<double>((r * j) % m) / static_cast<double>(m);
      f(r, j) = std::polar(1.0, angle);
    }
  return f;
}

CMat gram(const CMat& a) {
  const std::size_t n = a.cols();
  CMat g(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      cplx s = 0.0;
      for (std::size_t k = 0; k < a.rows(); ++k) s += std::conj(a(k, i)) * a(k, j);
      g(i, j) = s;
      g(j, i) = std::conj(s);
    }
  for (std::size_t i = 0; i < n; ++i) g(i, i) = g(i, i).real();
  return g;
}

double max_abs_diff(const CMat& a, const CMat& b) {
  require(a.rows() == b.rows() && a.cols() == b.cols(), "max_abs_diff: shape mismatch");
  double m = 0.0;
  for (std::size_t i = 0; i < a.data().size(); ++i) m = std::max(m, std::abs(a.data()[i] - b.data()[i]));
  return m;
}

}  // namespace codediv
