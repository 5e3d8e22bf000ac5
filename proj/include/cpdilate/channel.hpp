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

#include <cmath>
#include <cstdint>
#include <cstring>
#include <optional>
#include <utility>
#include <vector>

#include "cpdilate/complex_matrix.hpp"
#include "cpdilate/eig.hpp"
#include "cpdilate/errors.hpp"
#include "cpdilate/rng.hpp"

namespace cpdilate {

/// Ordered Kraus operators V_alpha, convention phi(S) = sum V_alpha* S
/// V_alpha. The zero map is the empty list.
struct KrausSet {
  std::size_t dim = 0;
  std::vector<ComplexMatrix> ops;
};

/// sum_alpha V_alpha* S V_alpha. Zero map (empty set) gives the zero matrix.
inline ComplexMatrix apply_kraus(const KrausSet& ks, const ComplexMatrix& s) {
  if (s.rows() != ks.dim || s.cols() != ks.dim)
    throw ShapeMismatch("apply_kraus: S is not dim x dim");
  ComplexMatrix out(ks.dim, ks.dim);
  for (const auto& v : ks.ops) out += adjoint(v) * s * v;
  return out;
}

struct ChannelFlags {
  bool cp = false;
  bool unital = false;
  bool trace_preserving = false;
};

/// Result of a CP certification: the minimum Choi eigenvalue seen and the
/// tolerance it was measured against.
struct CpCertificate {
  double min_eigenvalue = 0.0;
  double tolerance = 0.0;
};

/// A completely positive map phi on B(H) at finite dimension d, stored as
/// the d x d table of blocks phi(E_ij) with E_ij = |e_i><e_j|.
///
/// The d^2 x d^2 Choi matrix assembles the table with row index i*d + k
/// (matrix-unit index major, output index minor):
///
///   C[i*d + k, j*d + l] = phi(E_ij)[k, l]
///
/// Under that convention the Choi matrix is literally the Gram matrix of
/// the ancilla-kernel sections on basis points (see kernel.hpp).
///
/// Immutable after construction; all operations are const.
class CPMap {
 public:
  /// phi(S) = sum_alpha V_alpha* S V_alpha. CP by construction; the
  /// certificate is still measured so that it can be reported. An empty
  /// operator list yields the zero map.
  static CPMap from_kraus(std::size_t dim, const std::vector<ComplexMatrix>& ops,
                          double cp_tol = 1e-10) {
    for (const auto& v : ops)
      if (v.rows() != dim || v.cols() != dim)
        throw ShapeMismatch("from_kraus: operator is not dim x dim");
    CPMap phi(dim);
    // V* E_ij V is the outer product of conj(row i of V) with row j of V.
    for (const auto& v : ops) {
      for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = 0; j < dim; ++j) {
          ComplexMatrix& b = phi.block_ref(i, j);
          for (std::size_t k = 0; k < dim; ++k)
            for (std::size_t l = 0; l < dim; ++l)
              b(k, l) += std::conj(v(i, k)) * v(j, l);
        }
    }
    phi.certify(cp_tol);
    return phi;
  }

  /// Ingest a d^2 x d^2 Choi matrix. Rejects non-Hermitian input and input
  /// whose minimum eigenvalue falls below -cp_tol * (1 + lambda_max).
  static CPMap from_choi(const ComplexMatrix& c, double cp_tol = 1e-10) {
    if (c.rows() != c.cols())
      throw NotSquareOfInteger("from_choi: matrix not square");
    const std::size_t d2 = c.rows();
    const auto d = static_cast<std::size_t>(std::llround(std::sqrt(
        static_cast<double>(d2))));
    if (d == 0 || d * d != d2)
      throw NotSquareOfInteger("from_choi: side length is not a square");

    double dev = 0.0;
    for (std::size_t i = 0; i < d2; ++i)
      for (std::size_t j = 0; j < d2; ++j)
        dev = std::max(dev, std::abs(c(i, j) - std::conj(c(j, i))));
    if (dev > 1e-10 * (1.0 + max_abs(c)))
      throw NotHermitian("from_choi: Choi matrix not Hermitian");

    CPMap phi(d);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) {
        ComplexMatrix& b = phi.block_ref(i, j);
        for (std::size_t k = 0; k < d; ++k)
          for (std::size_t l = 0; l < d; ++l) b(k, l) = c(i * d + k, j * d + l);
      }

    const CpCertificate cert = phi.measure_certificate(cp_tol);
    if (cert.min_eigenvalue < -cert.tolerance)
      throw NotCompletelyPositive(
          "from_choi: Choi matrix has a negative eigenvalue",
          cert.min_eigenvalue);
    phi.validated_ = true;
    phi.certificate_ = cert;
    return phi;
  }

  /// Assemble a map directly from its block table without CP certification.
  /// Intended for studying tables that may fail complete positivity; only
  /// shapes and Hermitian symmetry of the table are enforced.
  static CPMap from_blocks(std::size_t dim,
                           const std::vector<std::vector<ComplexMatrix>>& blocks) {
    if (blocks.size() != dim)
      throw ShapeMismatch("from_blocks: table is not dim x dim");
    CPMap phi(dim);
    double maxnorm = 0.0;
    for (std::size_t i = 0; i < dim; ++i) {
      if (blocks[i].size() != dim)
        throw ShapeMismatch("from_blocks: table is not dim x dim");
      for (std::size_t j = 0; j < dim; ++j) {
        if (blocks[i][j].rows() != dim || blocks[i][j].cols() != dim)
          throw ShapeMismatch("from_blocks: block is not dim x dim");
        phi.block_ref(i, j) = blocks[i][j];
        maxnorm = std::max(maxnorm, max_abs(blocks[i][j]));
      }
    }
    for (std::size_t i = 0; i < dim; ++i)
      for (std::size_t j = 0; j < dim; ++j) {
        const ComplexMatrix adj = adjoint(phi.block(i, j));
        double dev = 0.0;
        for (std::size_t k = 0; k < dim; ++k)
          for (std::size_t l = 0; l < dim; ++l)
            dev = std::max(dev, std::abs(phi.block(j, i)(k, l) - adj(k, l)));
        if (dev > 1e-10 * (1.0 + maxnorm))
          throw NotHermitian("from_blocks: table lacks Hermitian symmetry");
      }
    return phi;
  }

  std::size_t dim() const { return dim_; }

  /// phi(E_ij).
  const ComplexMatrix& block(std::size_t i, std::size_t j) const {
    return blocks_[i * dim_ + j];
  }

  /// The d^2 x d^2 Choi matrix; exact inverse of the from_choi assembly.
  ComplexMatrix choi() const {
    ComplexMatrix c(dim_ * dim_, dim_ * dim_);
    for (std::size_t i = 0; i < dim_; ++i)
      for (std::size_t j = 0; j < dim_; ++j) {
        const ComplexMatrix& b = block(i, j);
        for (std::size_t k = 0; k < dim_; ++k)
          for (std::size_t l = 0; l < dim_; ++l)
            c(i * dim_ + k, j * dim_ + l) = b(k, l);
      }
    return c;
  }

  /// phi(S) = sum_ij S[i,j] * phi(E_ij). Linear in S.
  ComplexMatrix apply(const ComplexMatrix& s) const {
    if (s.rows() != dim_ || s.cols() != dim_)
      throw ShapeMismatch("apply: S is not dim x dim");
    ComplexMatrix out(dim_, dim_);
    for (std::size_t i = 0; i < dim_; ++i)
      for (std::size_t j = 0; j < dim_; ++j) {
        const Complex sij = s(i, j);
        if (sij == Complex(0.0, 0.0)) continue;
        const ComplexMatrix& b = block(i, j);
        for (std::size_t k = 0; k < dim_; ++k)
          for (std::size_t l = 0; l < dim_; ++l) out(k, l) += sij * b(k, l);
      }
    return out;
  }

  ChannelFlags classify(double tol = 1e-10) const {
    ChannelFlags flags;
    const CpCertificate cert = measure_certificate(tol);
    flags.cp = cert.min_eigenvalue >= -cert.tolerance;

    const ComplexMatrix phi_id = apply(ComplexMatrix::identity(dim_));
    double unital_dev = 0.0;
    for (std::size_t k = 0; k < dim_; ++k)
      for (std::size_t l = 0; l < dim_; ++l) {
        const Complex expect = k == l ? Complex(1.0, 0.0) : Complex(0.0, 0.0);
        unital_dev = std::max(unital_dev, std::abs(phi_id(k, l) - expect));
      }
    flags.unital = unital_dev <= tol;

    double tp_dev = 0.0;
    for (std::size_t i = 0; i < dim_; ++i)
      for (std::size_t j = 0; j < dim_; ++j) {
        const Complex expect = i == j ? Complex(1.0, 0.0) : Complex(0.0, 0.0);
        tp_dev = std::max(tp_dev, std::abs(trace(block(i, j)) - expect));
      }
    flags.trace_preserving = tp_dev <= tol;
    return flags;
  }

  bool validated() const { return validated_; }
  const std::optional<CpCertificate>& certificate() const {
    return certificate_;
  }

  /// Choi eigenvalue measurement without mutating the map.
  CpCertificate measure_certificate(double cp_tol) const {
    const HermitianEig eig = hermitian_eig(choi());
    CpCertificate cert;
    const double lambda_max =
        eig.eigenvalues.empty() ? 0.0 : std::max(eig.eigenvalues.front(), 0.0);
    cert.min_eigenvalue =
        eig.eigenvalues.empty() ? 0.0 : eig.eigenvalues.back();
    cert.tolerance = cp_tol * (1.0 + lambda_max);
    return cert;
  }

 private:
  explicit CPMap(std::size_t dim)
      : dim_(dim), blocks_(dim * dim, ComplexMatrix(dim, dim)) {
    if (dim == 0) throw ShapeMismatch("CPMap: dimension must be >= 1");
  }

  ComplexMatrix& block_ref(std::size_t i, std::size_t j) {
    return blocks_[i * dim_ + j];
  }

  void certify(double cp_tol) {
    certificate_ = measure_certificate(cp_tol);
    validated_ = true;
  }

  std::size_t dim_;
  std::vector<ComplexMatrix> blocks_;
  bool validated_ = false;
  std::optional<CpCertificate> certificate_;
};

/// FNV-1a over the raw bytes of the Choi entries; identifies the source map
/// of a dilation within one build.
inline std::uint64_t fingerprint(const CPMap& phi) {
  const ComplexMatrix c = phi.choi();
  std::uint64_t h = 0xCBF29CE484222325ULL;
  auto eat = [&h](double x) {
    std::uint64_t bits;
    std::memcpy(&bits, &x, sizeof(bits));
    for (int byte = 0; byte < 8; ++byte) {
      h ^= (bits >> (8 * byte)) & 0xFFU;
      h *= 0x100000001B3ULL;
    }
  };
  for (const auto& z : c.data()) {
    eat(z.real());
    eat(z.imag());
  }
  return h;
}

/// Seeded random Kraus generators: `rank` operators with i.i.d. standard
/// complex Gaussian entries. With `unital` set, each V_alpha is
/// post-multiplied by M^{-1/2}, M = sum V_alpha* V_alpha (a.s. invertible),
/// which forces phi(I) = I. Identical arguments give bit-identical output.
inline std::vector<ComplexMatrix> random_kraus(std::size_t dim,
                                               std::size_t rank,
                                               std::uint64_t seed,
                                               bool unital = false) {
  if (dim < 1 || rank < 1 || rank > dim * dim)
    throw RankOutOfRange("random_kraus: rank must lie in 1..dim^2");
  SplitMix64 gen(derive_seed(seed, 0x72616E64, dim * dim + rank));
  std::vector<ComplexMatrix> ops;
  ops.reserve(rank);
  for (std::size_t alpha = 0; alpha < rank; ++alpha)
    ops.push_back(gaussian_matrix(gen, dim, dim));

  if (unital) {
    ComplexMatrix m(dim, dim);
    for (const auto& v : ops) m += adjoint(v) * v;
    const HermitianEig eig = hermitian_eig(m);
    ComplexMatrix inv_sqrt(dim, dim);
    for (std::size_t a = 0; a < dim; ++a) {
      const double w = 1.0 / std::sqrt(eig.eigenvalues[a]);
      for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = 0; j < dim; ++j)
          inv_sqrt(i, j) += w * eig.eigenvectors(i, a) *
                            std::conj(eig.eigenvectors(j, a));
    }
    for (auto& v : ops) v = v * inv_sqrt;
  }
  return ops;
}

/// Seeded random CP map built from random_kraus generators.
inline CPMap random_cp(std::size_t dim, std::size_t rank, std::uint64_t seed,
                       bool unital = false) {
  return CPMap::from_kraus(dim, random_kraus(dim, rank, seed, unital));
}

}  // namespace cpdilate
