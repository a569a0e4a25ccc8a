// Copyright 2026 The chi2tomo Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef CHI2TOMO_QUBIT_HPP
#define CHI2TOMO_QUBIT_HPP

#include <optional>

#include "chi2tomo/common.hpp"
#include "chi2tomo/frobenius.hpp"
#include "chi2tomo/measurement.hpp"

namespace chi2tomo {

struct QubitOptions {
  // Overrides n = c'' ln(1/delta) / eps.
  std::optional<Copies> copies;
  bool check_sample_size = true;
};

struct QubitResult {
  Matrix phase_one;            // Pauli Frobenius estimate
  DiagonalEstimate estimate;   // basis U and the median-of-add-one probabilities
  Copies copies_used = 0;

  Matrix matrix() const { return estimate.matrix(); }
};

Copies qubit_copies(double eps, double delta);

// 3n/4 copies on Pauli X, Y, Z, diagonalize, then n/4 copies in that basis
// through the median-of-add-one bit estimator at (eps/2, delta/2).
QubitResult qubit_tomography(StateAccess& access, double eps, double delta,
                             const QubitOptions& opts = {});

}  // namespace chi2tomo

#endif  // CHI2TOMO_QUBIT_HPP
