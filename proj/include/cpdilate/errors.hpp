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

#include <stdexcept>
#include <string>

namespace cpdilate {

/// Base class for all errors raised by the library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Operand dimensions are incompatible with the requested operation.
struct ShapeMismatch : Error {
  using Error::Error;
};

/// A matrix required to be Hermitian deviates beyond tolerance.
struct NotHermitian : Error {
  using Error::Error;
};

/// The eigensolver exhausted its iteration budget (implementation bug).
struct NoConvergence : Error {
  using Error::Error;
};

/// A Choi matrix whose side length is not a perfect square.
struct NotSquareOfInteger : Error {
  using Error::Error;
};

/// CP certification failed; carries the offending minimum eigenvalue.
struct NotCompletelyPositive : Error {
  double min_eigenvalue;
  NotCompletelyPositive(const std::string& msg, double min_eig)
      : Error(msg), min_eigenvalue(min_eig) {}
};

/// A Gram matrix fed to the Kolmogorov factorization is not PSD within
/// tolerance. Usually signals a non-CP map upstream.
struct NotPSD : Error {
  double min_eigenvalue;
  NotPSD(const std::string& msg, double min_eig)
      : Error(msg), min_eigenvalue(min_eig) {}
};

/// Requested Kraus rank outside 1..dim^2.
struct RankOutOfRange : Error {
  using Error::Error;
};

/// A Gram matrix was requested over an empty point family.
struct EmptyFamily : Error {
  using Error::Error;
};

}  // namespace cpdilate
