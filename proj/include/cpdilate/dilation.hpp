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

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "cpdilate/channel.hpp"
#include "cpdilate/complex_matrix.hpp"
#include "cpdilate/eig.hpp"
#include "cpdilate/errors.hpp"
#include "cpdilate/kernel.hpp"

namespace cpdilate {

/// Concrete Stinespring data on H tensor C^r.
///
/// W maps H into H tensor C^r with the H-major flattening: tensor slot
/// (i, alpha) sits at row i*r + alpha. Column k of W stacks, over i, the
/// coordinates of the ancilla-kernel section at (i, e_k), so that
///
///   phi(S) = W* (S tensor I_r) W
///
/// and slicing W along alpha yields the Kraus operators. W* W = phi(I); for
/// unital maps W is an isometry. The zero map gives r = 0 and a 0 x d W.
struct StinespringDilation {
  std::size_t dim = 0;
  std::size_t ancilla_dim = 0;
  ComplexMatrix w;
  GramFactorization basis;
  std::uint64_t source = 0;  // fingerprint of the source map's Choi entries
};

inline StinespringDilation build_dilation(const CPMap& phi,
                                          double rank_rtol = 1e-10,
                                          double rank_atol = 1e-12) {
  const std::size_t d = phi.dim();
  StinespringDilation dil;
  dil.dim = d;
  dil.basis = ancilla_basis(phi, rank_rtol, rank_atol);
  const std::size_t r = dil.basis.rank;
  dil.ancilla_dim = r;
  dil.w = ComplexMatrix(d * r, d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t alpha = 0; alpha < r; ++alpha)
      for (std::size_t k = 0; k < d; ++k)
        dil.w(i * r + alpha, k) = dil.basis.coords(alpha, i * d + k);
  dil.source = fingerprint(phi);
  return dil;
}

/// The lifted representation S tensor I_r on H tensor C^r. A unital
/// *-homomorphism: products, adjoints and operator norm carry over from S.
inline ComplexMatrix lifted_rep(const StinespringDilation& dil,
                                const ComplexMatrix& s) {
  if (s.rows() != dil.dim || s.cols() != dil.dim)
    throw ShapeMismatch("lifted_rep: S is not dim x dim");
  return kron(s, ComplexMatrix::identity(dil.ancilla_dim));
}

/// W* (S tensor I_r) W; reproduces phi(S) for the source map.
inline ComplexMatrix stinespring_apply(const StinespringDilation& dil,
                                       const ComplexMatrix& s) {
  return adjoint(dil.w) * lifted_rep(dil, s) * dil.w;
}

/// Kraus operators read off W along the ancilla index:
/// V_alpha[i, k] = W[i*r + alpha, k]. Ordering follows the (nonincreasing)
/// ancilla eigenvalue ordering, so output is deterministic.
inline KrausSet extract_kraus(const StinespringDilation& dil) {
  KrausSet ks;
  ks.dim = dil.dim;
  ks.ops.reserve(dil.ancilla_dim);
  for (std::size_t alpha = 0; alpha < dil.ancilla_dim; ++alpha) {
    ComplexMatrix v(dil.dim, dil.dim);
    for (std::size_t i = 0; i < dil.dim; ++i)
      for (std::size_t k = 0; k < dil.dim; ++k)
        v(i, k) = dil.w(i * dil.ancilla_dim + alpha, k);
    ks.ops.push_back(std::move(v));
  }
  return ks;
}

/// Coordinates in H tensor C^r of the embedded section for a point (S, a):
/// u = sum_i (S e_i) tensor x_{i,a}, where x_{i,a} = sum_k a[k] X[:, i*d+k]
/// are the ancilla coordinates of the section at (i, a).
inline ComplexMatrix embed_section(const StinespringDilation& dil,
                                   const DilationPoint& p) {
  const std::size_t d = dil.dim;
  const std::size_t r = dil.ancilla_dim;
  if (p.op.rows() != d || p.op.cols() != d || p.vec.rows() != d ||
      p.vec.cols() != 1)
    throw ShapeMismatch("embed_section: point shape does not match dilation");
  ComplexMatrix u(d * r, 1);
  for (std::size_t i = 0; i < d; ++i) {
    // x_{i,a}
    std::vector<Complex> x(r, Complex(0.0, 0.0));
    for (std::size_t k = 0; k < d; ++k) {
      const Complex ak = p.vec(k, 0);
      if (ak == Complex(0.0, 0.0)) continue;
      for (std::size_t alpha = 0; alpha < r; ++alpha)
        x[alpha] += ak * dil.basis.coords(alpha, i * d + k);
    }
    for (std::size_t ip = 0; ip < d; ++ip) {
      const Complex sii = p.op(ip, i);
      if (sii == Complex(0.0, 0.0)) continue;
      for (std::size_t alpha = 0; alpha < r; ++alpha)
        u(ip * r + alpha, 0) += sii * x[alpha];
    }
  }
  return u;
}

/// Max residual of the factorization identity
/// K((S,a),(T,b)) = <u(S,a), u(T,b)> over the given pairs. This is the
/// executable form of the unitary identification between the dilation
/// space and the tensor product.
inline double isometry_residual(
    const CPMap& phi, const StinespringDilation& dil,
    const std::vector<std::pair<DilationPoint, DilationPoint>>& pairs) {
  double worst = 0.0;
  for (const auto& [p, q] : pairs) {
    const Complex lhs = eval_dilation_kernel(phi, p, q);
    const Complex rhs = inner_product(embed_section(dil, p),
                                      embed_section(dil, q));
    worst = std::max(worst, std::abs(lhs - rhs));
  }
  return worst;
}

/// Rank witness for minimality: the span of (E_ij tensor I_r) W e_k over
/// all i, j, k must be the whole of H tensor C^r, i.e. have rank dim * r.
/// Computed as the numerical rank (psd_rank defaults) of M* M where M
/// collects those vectors as columns.
inline std::size_t minimality_rank(const StinespringDilation& dil) {
  const std::size_t d = dil.dim;
  const std::size_t r = dil.ancilla_dim;
  ComplexMatrix m(d * r, d * d * d);
  // (E_ij tensor I_r) W e_k has the alpha-components of W[(j,alpha), k]
  // moved into tensor slot (i, alpha).
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      for (std::size_t k = 0; k < d; ++k) {
        const std::size_t col = (i * d + j) * d + k;
        for (std::size_t alpha = 0; alpha < r; ++alpha)
          m(i * r + alpha, col) = dil.w(j * r + alpha, k);
      }
  return psd_rank(hermitian_eig(adjoint(m) * m));
}

}  // namespace cpdilate
