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
#include <cstdio>
#include <cstdlib>
#include <sys/wait.h>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "cpdilate/cpdilate.hpp"

namespace testutil {

using namespace cpdilate;

inline double max_entry_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (!a.same_shape(b)) return 1e300;
  double d = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      d = std::max(d, std::abs(a(i, j) - b(i, j)));
  return d;
}

/// Random unitary via classical Gram-Schmidt on a Gaussian matrix.
/// Deliberately independent of the library eigensolver so it can serve as
/// an oracle for it.
inline ComplexMatrix random_unitary(SplitMix64& gen, std::size_t n) {
  ComplexMatrix q = gaussian_matrix(gen, n, n);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t prev = 0; prev < j; ++prev) {
      Complex proj(0.0, 0.0);
      for (std::size_t i = 0; i < n; ++i)
        proj += std::conj(q(i, prev)) * q(i, j);
      for (std::size_t i = 0; i < n; ++i) q(i, j) -= proj * q(i, prev);
    }
    double norm = 0.0;
    for (std::size_t i = 0; i < n; ++i) norm += std::norm(q(i, j));
    norm = std::sqrt(norm);
    for (std::size_t i = 0; i < n; ++i) q(i, j) /= norm;
  }
  return q;
}

/// Hermitian matrix with a prescribed spectrum: Q diag(spectrum) Q*.
inline ComplexMatrix hermitian_with_spectrum(SplitMix64& gen,
                                             const std::vector<double>& spec) {
  const std::size_t n = spec.size();
  const ComplexMatrix q = random_unitary(gen, n);
  ComplexMatrix m(n, n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        m(i, j) += spec[a] * q(i, a) * std::conj(q(j, a));
  // enforce exact Hermitian symmetry against rounding
  for (std::size_t i = 0; i < n; ++i) {
    m(i, i) = Complex(m(i, i).real(), 0.0);
    for (std::size_t j = i + 1; j < n; ++j) m(j, i) = std::conj(m(i, j));
  }
  return m;
}

// -- channel fixtures --------------------------------------------------------

inline CPMap identity_channel(std::size_t d) {
  return CPMap::from_kraus(d, {ComplexMatrix::identity(d)});
}

/// p = 1/2 dephasing on d = 2: Kraus {E_00, E_11}.
inline CPMap dephasing_channel() {
  return CPMap::from_kraus(
      2, {ComplexMatrix::unit(2, 0, 0), ComplexMatrix::unit(2, 1, 1)});
}

/// phi(S) = trace(S) I_2, i.e. Choi = I_4.
inline CPMap trace_channel() {
  return CPMap::from_choi(ComplexMatrix::identity(4));
}

/// The transpose map's block table phi(E_ij) = E_ji, assembled without CP
/// validation. Positive but not completely positive.
inline CPMap transpose_table(std::size_t d) {
  std::vector<std::vector<ComplexMatrix>> blocks(d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      blocks[i].push_back(ComplexMatrix::unit(d, j, i));
  return CPMap::from_blocks(d, blocks);
}

/// SWAP on C^2 tensor C^2 in the (i*2+k) flattening: the transpose map's
/// Choi matrix, eigenvalues {1, 1, 1, -1}.
inline ComplexMatrix swap_choi() {
  ComplexMatrix c(4, 4);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t k = 0; k < 2; ++k)
      for (std::size_t j = 0; j < 2; ++j)
        for (std::size_t l = 0; l < 2; ++l)
          if (i == l && j == k) c(i * 2 + k, j * 2 + l) = Complex(1.0, 0.0);
  return c;
}

// -- CLI harness -------------------------------------------------------------

struct CliResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

inline std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// Run the installed CLI binary with the given argument string, capturing
/// stdout/stderr through temp files.
inline CliResult run_cli(const std::string& args, const std::string& tag) {
  const std::string base = std::string("/tmp/cpdilate_test_") + tag;
  const std::string out_path = base + ".out";
  const std::string err_path = base + ".err";
  const std::string cmd = std::string(CPDILATE_CLI_PATH) + " " + args + " >" +
                          out_path + " 2>" + err_path;
  const int status = std::system(cmd.c_str());
  CliResult r;
  r.exit_code = (status >= 0 && WIFEXITED(status)) ? WEXITSTATUS(status) : -1;
  r.out = slurp(out_path);
  r.err = slurp(err_path);
  return r;
}

}  // namespace testutil
