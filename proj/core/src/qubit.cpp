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

#include "chi2tomo/qubit.hpp"

#include <cmath>
#include <utility>
#include <vector>

#include "chi2tomo/classical.hpp"
#include "chi2tomo/constants.hpp"

namespace chi2tomo {

Copies qubit_copies(double eps, double delta) {
  if (!(eps > 0.0 && eps <= 1.0)) throw InvalidArgument("qubit: eps must lie in (0, 1]");
  if (!(delta > 0.0 && delta < 1.0)) throw InvalidArgument("qubit: delta must lie in (0, 1)");
  return static_cast<Copies>(std::ceil(constants::kQubitC * std::log(1.0 / delta) / eps));
}

QubitResult qubit_tomography(StateAccess& access, double eps, double delta,
                             const QubitOptions& opts) {
  if (access.dim() != 2) throw DimensionMismatch("qubit_tomography: state is not a qubit");
  const Copies n = opts.copies ? *opts.copies : qubit_copies(eps, delta);
  const Copies n1 = n / 4;
  const Copies n2 = n - 3 * n1;
  if (n1 < 1) throw InsufficientSamples("qubit_tomography: too few copies");
  if (opts.check_sample_size && n2 < bit_chi2_required_samples(eps / 2.0, delta / 2.0)) {
    throw InsufficientSamples("qubit_tomography: second phase below the bit-estimator minimum");
  }
  const Copies start = access.budget().consumed();
  QubitResult out;
  // At d = 2 the matching settings are exactly the X and Y Pauli bases, plus Z.
  out.phase_one = hermitianize(simple_frobenius(access, n1));
  DiagonalEstimate rough = diagonalize_estimate(out.phase_one);
  const Matrix measure_basis = rough.basis.adjoint();

  const Copies g = std::min<Copies>(bit_chi2_groups(delta / 2.0), n2);
  std::vector<std::pair<Copies, Copies>> groups;
  for (Copies k = 0; k < g; ++k) {
    Copies size = n2 / g + (k < n2 % g ? 1 : 0);
    SampleCounts c = access.measure_in(measure_basis, size);
    groups.emplace_back(c.counts[1], size);
  }
  out.estimate.basis = rough.basis;
  out.estimate.values = bit_chi2_median_groups(groups);
  out.estimate.trace = 1.0;
  if (out.estimate.values(0) > out.estimate.values(1)) {
    std::swap(out.estimate.values(0), out.estimate.values(1));
    out.estimate.basis.row(0).swap(out.estimate.basis.row(1));
  }
  out.copies_used = access.budget().consumed() - start;
  return out;
}

}  // namespace chi2tomo
