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

#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>

#include "helpers.hpp"

using namespace cpdilate;
using testutil::hermitian_with_spectrum;
using testutil::max_entry_diff;

namespace {

ComplexMatrix reconstruct(const HermitianEig& eig) {
  const std::size_t n = eig.eigenvalues.size();
  ComplexMatrix m(n, n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        m(i, j) += eig.eigenvalues[a] * eig.eigenvectors(i, a) *
                   std::conj(eig.eigenvectors(j, a));
  return m;
}

double unitarity_defect(const ComplexMatrix& u) {
  return max_entry_diff(adjoint(u) * u, ComplexMatrix::identity(u.cols()));
}

}  // namespace

TEST_CASE("diagonal matrix eigendecomposition", "[eig]") {
  const ComplexMatrix m{{Complex(3, 0), Complex(0, 0)},
                        {Complex(0, 0), Complex(1, 0)}};
  const HermitianEig eig = hermitian_eig(m);
  REQUIRE(eig.eigenvalues.size() == 2);
  CHECK(eig.eigenvalues[0] == Catch::Approx(3.0).margin(1e-12));
  CHECK(eig.eigenvalues[1] == Catch::Approx(1.0).margin(1e-12));
  // eigenvectors are the standard axes up to phase
  CHECK(std::abs(eig.eigenvectors(0, 0)) == Catch::Approx(1.0).margin(1e-12));
  CHECK(std::abs(eig.eigenvectors(1, 1)) == Catch::Approx(1.0).margin(1e-12));
  CHECK(std::abs(eig.eigenvectors(1, 0)) < 1e-12);
}

TEST_CASE("Pauli X eigendecomposition", "[eig]") {
  const ComplexMatrix x{{Complex(0, 0), Complex(1, 0)},
                        {Complex(1, 0), Complex(0, 0)}};
  const HermitianEig eig = hermitian_eig(x);
  CHECK(eig.eigenvalues[0] == Catch::Approx(1.0).margin(1e-12));
  CHECK(eig.eigenvalues[1] == Catch::Approx(-1.0).margin(1e-12));

  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  ComplexMatrix plus(2, 1), minus(2, 1);
  plus(0, 0) = plus(1, 0) = Complex(inv_sqrt2, 0);
  minus(0, 0) = Complex(inv_sqrt2, 0);
  minus(1, 0) = Complex(-inv_sqrt2, 0);
  ComplexMatrix c0(2, 1), c1(2, 1);
  for (int i = 0; i < 2; ++i) {
    c0(i, 0) = eig.eigenvectors(i, 0);
    c1(i, 0) = eig.eigenvectors(i, 1);
  }
  // match up to a global phase: |<expected, got>| = 1
  CHECK(std::abs(inner_product(plus, c0)) == Catch::Approx(1.0).margin(1e-10));
  CHECK(std::abs(inner_product(minus, c1)) == Catch::Approx(1.0).margin(1e-10));
}

TEST_CASE("random Hermitian reconstruction against a known spectrum",
          "[eig]") {
  SplitMix64 gen(21);
  for (int t = 0; t < 10; ++t) {
    std::vector<double> spec(5);
    for (auto& s : spec) s = 4.0 * gen.uniform() - 2.0;
    const ComplexMatrix m = hermitian_with_spectrum(gen, spec);
    const HermitianEig eig = hermitian_eig(m);

    std::sort(spec.begin(), spec.end(), std::greater<double>());
    const double scale = 1.0 + std::abs(spec.front());
    for (std::size_t k = 0; k < spec.size(); ++k)
      CHECK(std::abs(eig.eigenvalues[k] - spec[k]) <= 1e-9 * scale);

    CHECK(frobenius_norm(reconstruct(eig) - m) <=
          1e-9 * (1.0 + frobenius_norm(m)));
    CHECK(unitarity_defect(eig.eigenvectors) <= 1e-10);

    // per-column eigenvalue equation
    for (std::size_t a = 0; a < 5; ++a) {
      ComplexMatrix col(5, 1);
      for (std::size_t i = 0; i < 5; ++i) col(i, 0) = eig.eigenvectors(i, a);
      const ComplexMatrix resid = m * col - eig.eigenvalues[a] * col;
      CHECK(max_entry_diff(resid, ComplexMatrix(5, 1)) <=
            1e-9 * (1.0 + std::abs(eig.eigenvalues.front())));
    }
  }
}

TEST_CASE("eigenvalue sum matches the trace", "[eig]") {
  SplitMix64 gen(22);
  for (int t = 0; t < 10; ++t) {
    ComplexMatrix g = gaussian_matrix(gen, 6, 6);
    const ComplexMatrix m = g + adjoint(g);
    const HermitianEig eig = hermitian_eig(m);
    double sum = 0.0;
    for (double lambda : eig.eigenvalues) sum += lambda;
    const double tr = trace(m).real();
    CHECK(std::abs(sum - tr) <= 1e-9 * (1.0 + std::abs(tr)));
  }
}

TEST_CASE("Choi-sized Hermitian matrices converge", "[eig]") {
  SplitMix64 gen(23);
  ComplexMatrix g = gaussian_matrix(gen, 16, 16);
  const ComplexMatrix m = g + adjoint(g);
  const HermitianEig eig = hermitian_eig(m);
  CHECK(frobenius_norm(reconstruct(eig) - m) <=
        1e-9 * (1.0 + frobenius_norm(m)));
  CHECK(unitarity_defect(eig.eigenvectors) <= 1e-10);
  CHECK(std::is_sorted(eig.eigenvalues.begin(), eig.eigenvalues.end(),
                       std::greater<double>()));
}

TEST_CASE("non-Hermitian input is rejected", "[eig]") {
  const ComplexMatrix m{{Complex(0, 0), Complex(1, 0)},
                        {Complex(0, 0), Complex(0, 0)}};
  CHECK_THROWS_AS(hermitian_eig(m), NotHermitian);
  CHECK_THROWS_AS(hermitian_eig(ComplexMatrix(2, 3)), NotHermitian);
}

TEST_CASE("tiny and empty matrices", "[eig]") {
  const HermitianEig empty = hermitian_eig(ComplexMatrix());
  CHECK(empty.eigenvalues.empty());

  const HermitianEig one = hermitian_eig(ComplexMatrix{{Complex(-2.5, 0)}});
  REQUIRE(one.eigenvalues.size() == 1);
  CHECK(one.eigenvalues[0] == Catch::Approx(-2.5));
  CHECK(hermitian_eig(ComplexMatrix(4, 4)).eigenvalues ==
        std::vector<double>{0, 0, 0, 0});
}

TEST_CASE("psd_rank cutoff rules", "[eig]") {
  auto mk = [](std::vector<double> v) {
    HermitianEig e;
    e.eigenvalues = std::move(v);
    return e;
  };
  CHECK(psd_rank(mk({2.0, 0.0})) == 1);
  CHECK(psd_rank(mk({1.0, 1.0, 1.0, 1.0})) == 4);
  CHECK(psd_rank(mk({1.0, 5e-11})) == 1);  // below the relative cutoff
  CHECK(psd_rank(mk({1.0, 5e-11}), 1e-12, 1e-13) == 2);
  CHECK(psd_rank(mk({})) == 0);
  CHECK(psd_rank(mk({0.0, -1.0})) == 0);
  // absolute floor: all mass below rank_atol counts as zero
  CHECK(psd_rank(mk({5e-13})) == 0);
}

TEST_CASE("operator norm via the eigensolver", "[eig]") {
  // rank-1 matrix [[0,2],[0,0]] has operator norm 2
  ComplexMatrix m(2, 2);
  m(0, 1) = Complex(2, 0);
  CHECK(operator_norm(m) == Catch::Approx(2.0).margin(1e-12));
  CHECK(operator_norm(ComplexMatrix::identity(3)) ==
        Catch::Approx(1.0).margin(1e-12));
  CHECK(operator_norm(ComplexMatrix(0, 0)) == 0.0);
  CHECK(operator_norm(ComplexMatrix(3, 0)) == 0.0);
}
