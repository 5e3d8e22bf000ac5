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
#include <utility>
#include <vector>

#include "cpdilate/channel.hpp"
#include "cpdilate/complex_matrix.hpp"
#include "cpdilate/eig.hpp"
#include "cpdilate/errors.hpp"

namespace cpdilate {

// Two scalar positive-definite kernels are attached to a CP map phi.
//
// The dilation kernel lives on (operator, vector) pairs:
//
//   K((S,a),(T,b)) = <a, phi(S* T) b>
//
// and its RKHS is the Stinespring dilation space. The ancilla kernel lives
// on (basis index, vector) pairs:
//
//   Khat((i,a),(j,b)) = <a, phi(E_ij) b>
//
// and its RKHS is the tensor factor carrying the Kraus rank. Neither space
// is materialized as functions; elements are handled as coordinate vectors
// relative to the eigen-ONB of a finite Gram matrix.

/// A point (S, a) in B(H) x H indexing the dilation kernel.
struct DilationPoint {
  ComplexMatrix op;   // d x d
  ComplexMatrix vec;  // d x 1
};

/// A point (i, a) in {0..d-1} x H indexing the ancilla kernel.
struct AncillaPoint {
  std::size_t index = 0;
  ComplexMatrix vec;  // d x 1
};

inline Complex eval_dilation_kernel(const CPMap& phi, const DilationPoint& p,
                                    const DilationPoint& q) {
  const std::size_t d = phi.dim();
  if (p.op.rows() != d || p.op.cols() != d || q.op.rows() != d ||
      q.op.cols() != d || p.vec.rows() != d || p.vec.cols() != 1 ||
      q.vec.rows() != d || q.vec.cols() != 1)
    throw ShapeMismatch("eval_dilation_kernel: point shapes do not match map");
  return inner_product(p.vec, phi.apply(adjoint(p.op) * q.op) * q.vec);
}

inline Complex eval_ancilla_kernel(const CPMap& phi, const AncillaPoint& p,
                                   const AncillaPoint& q) {
  const std::size_t d = phi.dim();
  if (p.index >= d || q.index >= d || p.vec.rows() != d || p.vec.cols() != 1 ||
      q.vec.rows() != d || q.vec.cols() != 1)
    throw ShapeMismatch("eval_ancilla_kernel: point shapes do not match map");
  return inner_product(p.vec, phi.block(p.index, q.index) * q.vec);
}

/// Gram matrix [K(p_i, p_j)] of the dilation kernel over a finite family.
/// The upper triangle is computed and mirrored, so the result is exactly
/// Hermitian with a real diagonal. PSD up to eigensolver noise when phi is
/// completely positive; a genuinely negative eigenvalue witnesses a non-CP
/// table.
inline ComplexMatrix dilation_gram(const CPMap& phi,
                                   const std::vector<DilationPoint>& points) {
  if (points.empty()) throw EmptyFamily("dilation_gram: empty point family");
  const std::size_t n = points.size();
  ComplexMatrix g(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      const Complex kij = eval_dilation_kernel(phi, points[i], points[j]);
      if (i == j) {
        g(i, i) = Complex(kij.real(), 0.0);
      } else {
        g(i, j) = kij;
        g(j, i) = std::conj(kij);
      }
    }
  }
  return g;
}

/// Gram matrix of the ancilla-kernel sections on all d^2 basis points
/// (i, e_k), ordered lexicographically as i*d + k. By the index convention
/// this is entrywise identical to the Choi matrix.
inline ComplexMatrix ancilla_gram_full(const CPMap& phi) {
  return phi.choi();
}

/// Coordinates for the span of kernel sections behind a Gram matrix G.
///
/// `coords` is the r x n matrix X with X* X = G (up to dropped spectrum
/// below `cutoff`): column j holds the coordinates of the j-th section in
/// the orthonormal basis {f_alpha} given by the eigenvectors of G. The
/// basis vector f_alpha itself has coordinate vector = standard basis row
/// alpha. `eigenvalues` keeps the retained spectrum, nonincreasing.
struct GramFactorization {
  ComplexMatrix gram;
  ComplexMatrix coords;
  std::size_t rank = 0;
  double cutoff = 0.0;
  std::vector<double> eigenvalues;
};

/// Kolmogorov factorization of a PSD Gram matrix via eigendecomposition:
/// X = diag(sqrt(lambda_alpha)) U_r*, keeping eigenvalues above the
/// psd_rank cutoff. Eigenvalues negative beyond -1e-10 * (1 + lambda_max)
/// raise NotPSD; smaller negatives are floating noise and are dropped.
inline GramFactorization kolmogorov_factorize(const ComplexMatrix& g,
                                              double rank_rtol = 1e-10,
                                              double rank_atol = 1e-12) {
  const HermitianEig eig = hermitian_eig(g);  // raises NotHermitian
  const std::size_t n = g.rows();
  const double lambda_max =
      eig.eigenvalues.empty() ? 0.0 : std::max(eig.eigenvalues.front(), 0.0);
  const double lambda_min = eig.eigenvalues.empty() ? 0.0 : eig.eigenvalues.back();
  if (lambda_min < -1e-10 * (1.0 + lambda_max))
    throw NotPSD("kolmogorov_factorize: Gram matrix not PSD", lambda_min);

  GramFactorization f;
  f.gram = g;
  f.rank = psd_rank(eig, rank_rtol, rank_atol);
  f.cutoff = std::max(rank_atol, rank_rtol * lambda_max);
  f.eigenvalues.assign(eig.eigenvalues.begin(),
                       eig.eigenvalues.begin() + f.rank);
  f.coords = ComplexMatrix(f.rank, n);
  for (std::size_t alpha = 0; alpha < f.rank; ++alpha) {
    const double w = std::sqrt(eig.eigenvalues[alpha]);
    for (std::size_t j = 0; j < n; ++j)
      f.coords(alpha, j) = w * std::conj(eig.eigenvectors(j, alpha));
  }
  return f;
}

/// Orthonormal basis data for the ancilla space: the Kolmogorov
/// factorization of the full ancilla Gram. rank = ancilla dimension;
/// column i*d + k of `coords` holds the coordinates of the section at
/// (i, e_k).
inline GramFactorization ancilla_basis(const CPMap& phi,
                                       double rank_rtol = 1e-10,
                                       double rank_atol = 1e-12) {
  return kolmogorov_factorize(ancilla_gram_full(phi), rank_rtol, rank_atol);
}

}  // namespace cpdilate
