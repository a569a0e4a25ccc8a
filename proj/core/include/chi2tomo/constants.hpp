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

#ifndef CHI2TOMO_CONSTANTS_HPP
#define CHI2TOMO_CONSTANTS_HPP

// Frozen constants. Values marked "calibrated" were fitted once by the
// `chi2tomo_calibrate` tool at delta = 0.05 and are not tuned per test.

namespace chi2tomo::constants {

// c in m_delta = m / (c ln(1/delta)); calibrated.
inline constexpr double kScheduleC = 2.6e4;

// Groups per ln(1/delta) in the median-of-add-one bit estimator.
inline constexpr double kBitGroupsPerLog = 1.5;
// c' in n >= c' ln(1/delta) / eps for the bit estimator; calibrated.
inline constexpr double kBitChi2C = 8.0;
// c'' in n = c'' ln(1/delta) / eps for single-qubit tomography; calibrated.
inline constexpr double kQubitC = 100.0;

// C in eps~ = C r f / m_delta for the central pipeline.
inline constexpr double kCentralC = 64.0;
// Largest admissible eps = eps~ * l_max.
inline constexpr double kEpsCeiling = 0.25;
// Target accuracy split: eps~ = sqrt(r / d) * eps_final / kBudgetSlack.
inline constexpr double kBudgetSlack = 5.0;
// Stage threshold factor: admitted entries exceed kAdmit^2 tr(sigma) / (100 r).
inline constexpr double kAdmit = 1.1;

// Single multiplier for all asymptotic guarantees checked by Monte Carlo; calibrated.
inline constexpr double kAcc = 1.0;

// Default c in eps' = c eps / ln(d / eps) for mutual-information testing.
inline constexpr double kMiLearnC = 1.0 / 64.0;
// Marginal learning: n = kLearnC1 d / eps per marginal; calibrated.
inline constexpr double kLearnC1 = 4.0;
// Identity tester: n = kIdentityC2 sqrt(D) / eps over D bins; calibrated.
inline constexpr double kIdentityC2 = 4.0;
inline constexpr int kNullSimulations = 10000;
inline constexpr double kNullQuantile = 0.99;
// Copies charged to the quantum identity test: kBowC D / eps over dimension D.
inline constexpr double kBowC = 8.0;
// Product learning runs the marginal learners at eps / kProductSlack.
inline constexpr double kProductSlack = 4.0;

}  // namespace chi2tomo::constants

#endif  // CHI2TOMO_CONSTANTS_HPP
