// Copyright 2026 the cpdilate authors
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

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <vector>

#include "cpdilate/complex_matrix.hpp"
#include "cpdilate/errors.hpp"

namespace cpdilate {

/// Eigendecomposition of a Hermitian matrix: A = U diag(eigenvalues) U*.
/// Eigenvalues are real and sorted nonincreasing; column alpha of
/// `eigenvectors` pairs with eigenvalue alpha. Eigenvector phases are not
/// canonicalized.
struct HermitianEig {
  std::vector<double> eigenvalues;
  ComplexMatrix eigenvectors;
};

/// Cyclic complex Jacobi eigendecomposition.
///
/// Accepts M with ||M - M*||_max <= herm_tol * (1 + ||M||_max) and works on
/// the symmetrized (M + M*)/2. Each rotation is a 2x2 unitary J = P G with
/// P = diag(e^{i phi}, 1) absorbing the phase of the pivot entry and G a
/// real Jacobi rotation, so J* A J zeroes the pivot. Sweeps run until the
/// off-diagonal Frobenius mass drops below 1e-13 * ||A||_F.
inline HermitianEig hermitian_eig(const ComplexMatrix& m,
                                  double herm_tol = 1e-10) {
  if (m.rows() != m.cols())
    throw NotHermitian("hermitian_eig: matrix not square");
  const std::size_t n = m.rows();

  double dev = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      dev = std::max(dev, std::abs(m(i, j) - std::conj(m(j, i))));
  if (dev > herm_tol * (1.0 + max_abs(m)))
    throw NotHermitian("hermitian_eig: matrix deviates from Hermitian");

  ComplexMatrix a(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      a(i, j) = 0.5 * (m(i, j) + std::conj(m(j, i)));
  ComplexMatrix v = ComplexMatrix::identity(n);

  if (n > 1) {
    const double fnorm = frobenius_norm(a);
    const double off_target = 1e-13 * fnorm;
    // Budget of 100*n^2 sweeps; convergence takes O(10), so hitting the
    // budget signals an implementation bug rather than a hard input.
    const std::size_t max_sweeps = 100 * n * n;
    std::size_t sweep = 0;
    for (;; ++sweep) {
      double off = 0.0;
      for (std::size_t p = 0; p < n; ++p)
        for (std::size_t q = p + 1; q < n; ++q) off += std::norm(a(p, q));
      off = std::sqrt(2.0 * off);
      if (off <= off_target) break;
      if (sweep >= max_sweeps)
        throw NoConvergence("hermitian_eig: sweep budget exhausted");

      for (std::size_t p = 0; p < n; ++p) {
        for (std::size_t q = p + 1; q < n; ++q) {
          const Complex apq = a(p, q);
          const double babs = std::abs(apq);
          if (babs == 0.0) continue;
          const Complex phase = apq / babs;
          const double app = a(p, p).real();
          const double aqq = a(q, q).real();
          const double tau = (aqq - app) / (2.0 * babs);
          const double t =
              (tau >= 0.0 ? 1.0 : -1.0) /
              (std::abs(tau) + std::sqrt(1.0 + tau * tau));
          const double c = 1.0 / std::sqrt(1.0 + t * t);
          const double s = t * c;
          const Complex jpp = phase * c;
          const Complex jpq = phase * s;

          // Columns p, q of A and of the accumulated eigenvectors.
          for (std::size_t k = 0; k < n; ++k) {
            const Complex akp = a(k, p), akq = a(k, q);
            a(k, p) = akp * jpp - akq * s;
            a(k, q) = akp * jpq + akq * c;
            const Complex vkp = v(k, p), vkq = v(k, q);
            v(k, p) = vkp * jpp - vkq * s;
            v(k, q) = vkp * jpq + vkq * c;
          }
          // Rows p, q of A (left-multiplication by J*).
          for (std::size_t k = 0; k < n; ++k) {
            const Complex apk = a(p, k), aqk = a(q, k);
            a(p, k) = std::conj(jpp) * apk - s * aqk;
            a(q, k) = std::conj(jpq) * apk + c * aqk;
          }
          a(p, q) = Complex(0.0, 0.0);
          a(q, p) = Complex(0.0, 0.0);
          a(p, p) = Complex(a(p, p).real(), 0.0);
          a(q, q) = Complex(a(q, q).real(), 0.0);
        }
      }
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x,
                                                   std::size_t y) {
    return a(x, x).real() > a(y, y).real();
  });

  HermitianEig out;
  out.eigenvalues.resize(n);
  out.eigenvectors = ComplexMatrix(n, n);
  for (std::size_t col = 0; col < n; ++col) {
    out.eigenvalues[col] = a(order[col], order[col]).real();
    for (std::size_t row = 0; row < n; ++row)
      out.eigenvectors(row, col) = v(row, order[col]);
  }
  return out;
}

/// Number of eigenvalues above max(rank_atol, rank_rtol * lambda_max),
/// where lambda_max = max(largest eigenvalue, 0). The relative cutoff makes
/// the decision scale-invariant; the absolute floor handles zero matrices.
inline std::size_t psd_rank(const HermitianEig& eig, double rank_rtol = 1e-10,
                            double rank_atol = 1e-12) {
  const double lambda_max =
      eig.eigenvalues.empty() ? 0.0 : std::max(eig.eigenvalues.front(), 0.0);
  const double cutoff = std::max(rank_atol, rank_rtol * lambda_max);
  std::size_t r = 0;
  for (double lambda : eig.eigenvalues)
    if (lambda > cutoff) ++r;
  return r;
}

/// Operator 2-norm as sqrt(lambda_max(M* M)).
inline double operator_norm(const ComplexMatrix& m) {
  if (m.rows() == 0 || m.cols() == 0) return 0.0;
  const HermitianEig eig = hermitian_eig(adjoint(m) * m);
  const double top = eig.eigenvalues.empty() ? 0.0 : eig.eigenvalues.front();
  return std::sqrt(std::max(top, 0.0));
}

}  // namespace cpdilate
