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

#include <catch_amalgamated.hpp>

#include <random>

#include "codediv/errors.hpp"
#include "codediv/linalg.hpp"

using namespace codediv;
using Catch::Approx;

namespace {

CMat random_matrix(std::size_t r, std::size_t c, std::mt19937_64& rng) {
  std::normal_distribution<double> n;
  CMat m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = {n(rng), n(rng)};
  return m;
}

CMat random_hermitian(std::size_t n, std::mt19937_64& rng) {
  const CMat a = random_matrix(n, n, rng);
  return a + a.adjoint();
}

// Laplace expansion along the first row.
cplx cofactor_det(const CMat& a) {
  const std::size_t n = a.rows();
  if (n == 1) return a(0, 0);
  cplx acc = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    CMat minor(n - 1, n - 1);
    for (std::size_t r = 1; r < n; ++r)
      for (std::size_t c = 0, cc = 0; c < n; ++c)
        if (c != j) minor(r - 1, cc++) = a(r, c);
    acc += (j % 2 ? -1.0 : 1.0) * a(0, j) * cofactor_det(minor);
  }
  return acc;
}

}  // namespace

TEST_CASE("determinant agrees with cofactor expansion") {
  std::mt19937_64 rng(11);
  for (std::size_t n = 1; n <= 5; ++n) {
    for (int t = 0; t < 20; ++t) {
      const CMat a = random_matrix(n, n, rng);
      const cplx expect = cofactor_det(a);
      CHECK(std::abs(det(a) - expect) <= 1e-10 * std::max(1.0, std::abs(expect)));
    }
  }
}

TEST_CASE("inverse of a random matrix") {
  std::mt19937_64 rng(12);
  const CMat a = random_matrix(4, 4, rng);
  CHECK(max_abs_diff(a * inverse(a), CMat::identity(4)) < 1e-10);
}

TEST_CASE("inverse of a singular matrix throws") {
  const CMat a{{1.0, 2.0}, {2.0, 4.0}};
  CHECK_THROWS_AS(inverse(a), IllConditioned);
}

TEST_CASE("Hermitian eigen decomposition reconstructs the matrix") {
  std::mt19937_64 rng(13);
  for (std::size_t n = 1; n <= 8; ++n) {
    const CMat a = random_hermitian(n, rng);
    const HermitianEigen e = hermitian_eigen(a);
    CHECK(max_abs_diff(e.vectors.adjoint() * e.vectors, CMat::identity(n)) < 1e-10);
    CMat lambda(n, n);
    for (std::size_t i = 0; i < n; ++i) lambda(i, i) = e.values[i];
    CHECK(max_abs_diff(e.vectors * lambda * e.vectors.adjoint(), a) < 1e-9);
    for (std::size_t i = 1; i < n; ++i) CHECK(e.values[i - 1] >= e.values[i]);
  }
}

TEST_CASE("2x2 eigenvalues match the characteristic polynomial") {
  std::mt19937_64 rng(14);
  for (int t = 0; t < 50; ++t) {
    const CMat a = random_hermitian(2, rng);
    const double tr = trace(a).real();
    const double d = det(a).real();
    const double disc = std::sqrt(tr * tr - 4.0 * d);
    const auto s = hermitian_eigenvalues(a);
    CHECK(s.values[0] == Approx((tr + disc) / 2.0).margin(1e-10));
    CHECK(s.values[1] == Approx((tr - disc) / 2.0).margin(1e-10));
  }
}

TEST_CASE("eigenvalue sum and product equal trace and determinant") {
  std::mt19937_64 rng(15);
  for (int t = 0; t < 50; ++t) {
    const CMat g = gram(random_matrix(5, 4, rng));
    const auto s = hermitian_eigenvalues(g);
    double sum = 0.0, prod = 1.0;
    for (double v : s.values) {
      sum += v;
      prod *= v;
    }
    CHECK(sum == Approx(trace(g).real()).epsilon(1e-10));
    CHECK(prod == Approx(det(g).real()).epsilon(1e-8));
    CHECK(s.rank() == 4);
    CHECK(s.nonzero_product() == Approx(prod).epsilon(1e-12));
  }
}

TEST_CASE("numerical rank of a rank-deficient Grammian") {
  std::mt19937_64 rng(16);
  const CMat b = random_matrix(4, 2, rng);
  const CMat c = random_matrix(2, 4, rng);
  const auto s = hermitian_eigenvalues(gram(b * c));
  CHECK(s.rank() == 2);
  CHECK(std::isfinite(s.nonzero_log_sum()));
}

TEST_CASE("non-Hermitian input is rejected") {
  const CMat a{{1.0, 2.0}, {0.0, 1.0}};
  CHECK_THROWS_AS(hermitian_eigenvalues(a), ContractViolation);
}

TEST_CASE("SVD reconstructs tall and wide matrices") {
  std::mt19937_64 rng(17);
  for (auto [r, c] : {std::pair{5, 3}, std::pair{3, 5}, std::pair{4, 4}}) {
    const CMat a = random_matrix(r, c, rng);
    const SingularValueDecomposition d = svd(a);
    CMat s(d.sigma.size(), d.sigma.size());
    for (std::size_t i = 0; i < d.sigma.size(); ++i) s(i, i) = d.sigma[i];
    CHECK(max_abs_diff(d.u * s * d.v.adjoint(), a) < 1e-10);
  }
}

TEST_CASE("pseudo-inverse satisfies the Moore-Penrose conditions") {
  std::mt19937_64 rng(18);
  const CMat full = random_matrix(6, 4, rng);
  const CMat deficient = random_matrix(4, 2, rng) * random_matrix(2, 4, rng);
  for (const CMat& a : {full, deficient}) {
    const CMat p = pseudo_inverse(a);
    CHECK(max_abs_diff(a * p * a, a) < 1e-9);
    CHECK(max_abs_diff(p * a * p, p) < 1e-9);
    const CMat ap = a * p;
    const CMat pa = p * a;
    CHECK(max_abs_diff(ap, ap.adjoint()) < 1e-9);
    CHECK(max_abs_diff(pa, pa.adjoint()) < 1e-9);
  }
}

TEST_CASE("pseudo-inverse of the zero matrix is zero") {
  const CMat z(3, 2);
  CHECK(frobenius_norm(pseudo_inverse(z)) == 0.0);
}

TEST_CASE("Fourier basis columns are orthogonal") {
  for (std::size_t m = 1; m <= 6; ++m) {
    const CMat f = fourier_basis(m);
    CMat expect = CMat::identity(m);
    expect *= static_cast<double>(m);
    CHECK(max_abs_diff(f.adjoint() * f, expect) < 1e-12);
  }
}

TEST_CASE("column-major vec and adjoint") {
  const CMat a{{1.0, 2.0}, {3.0, cplx(0.0, 1.0)}};
  const CVec v = a.vec();
  CHECK(v == CVec{1.0, 3.0, 2.0, cplx(0.0, 1.0)});
  CHECK(a.adjoint()(1, 1) == cplx(0.0, -1.0));
  CHECK(a.adjoint()(0, 1) == cplx(3.0, 0.0));
  CHECK(frobenius_norm(a) == Approx(std::sqrt(15.0)));
}
