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

#ifndef CHI2TOMO_FROBENIUS_HPP
#define CHI2TOMO_FROBENIUS_HPP

#include <functional>
#include <string>

#include "chi2tomo/classical.hpp"
#include "chi2tomo/common.hpp"
#include "chi2tomo/measurement.hpp"

namespace chi2tomo {

enum class EstimatorKind { Measured, Oracle };

/// A base Frobenius learner with expected squared error rate_f(d, r) / m.
struct EstimatorSpec {
  std::string name;
  EstimatorKind kind = EstimatorKind::Oracle;
  std::function<double(int, int)> rate_f;

  // "simple", "oracle:f=d", "oracle:f=rd", "oracle:f=d2".
  static EstimatorSpec parse(const std::string& name);
};

/// Base learner bound to a problem size; `rate` is rate_f(d, r) >= 1.
struct FrobeniusLearner {
  EstimatorSpec spec;
  double rate = 1.0;

  FrobeniusLearner(EstimatorSpec s, int d, int r);

  // Consumes exactly `copies` copies from `access`; returns a Hermitian estimate.
  Matrix estimate(StateAccess& access, Copies copies) const;
};

/// Estimate of the form U^dagger diag(values) U, values nondecreasing.
struct DiagonalEstimate {
  Matrix basis;        // U: U rho U^dagger is approximately diag(values)
  RealVector values;
  double trace = 1.0;

  int dim() const { return static_cast<int>(values.size()); }
  Matrix matrix() const;
};

// Per-setting copy count m: 2 m (d - 1) matching copies plus m diagonal copies.
Matrix simple_frobenius(StateAccess& access, Copies m_per_setting);
// Splits `copies` across the 2(d-1) + 1 settings; leftovers go to the diagonal.
Matrix simple_frobenius_total(StateAccess& access, Copies copies);
// Same assembly with exact Born probabilities in place of frequencies.
Matrix simple_frobenius_exact(const Matrix& rho);
Copies simple_frobenius_settings(int d);

// rho + G with G Hermitian Gaussian and E ||G||_F^2 = f / m.
Matrix oracle_frobenius(const Matrix& rho, Copies m, double f, Rng& rng);

// U with h = U^dagger diag(q) U, q ascending.
DiagonalEstimate diagonalize_estimate(const Matrix& h);

// Base learner on floor(m/2) copies, diagonalize, then re-estimate the
// diagonal empirically in the rotated basis on the rest and sort.
DiagonalEstimate make_state_diagonal(const FrobeniusLearner& base, StateAccess& access, Copies m);

struct SubnormalizedEstimate {
  DiagonalEstimate estimate;  // trace m'/m, basis on C^{|S|}
  Copies kept = 0;
};

// Filters m copies to S and learns rho_{|S} from the retained ones, scaled by m'/m.
SubnormalizedEstimate subnormalized_estimate(const FrobeniusLearner& base, StateAccess& access,
                                             const IndexSet& s, Copies m);

enum class UpgradePath { Small, Large };

struct UpgradeResult {
  double tau_hat = 0.0;
  DiagonalEstimate estimate;  // subnormalized, basis on C^{|S|}
  UpgradePath path = UpgradePath::Small;
  double m_delta = 0.0;  // computed from `half`
  Copies half = 0;       // copies per step
  Copies kept = 0;
};

// Consumes exactly m copies: m/2 to estimate tr rho[S], m - m/2 for the block.
UpgradeResult final_upgrade(const FrobeniusLearner& base, StateAccess& access, const IndexSet& s,
                            int r, double delta, Copies m);

/// Guarantees of final_upgrade checked against the truth, in the frame of the
/// returned basis. Checks that do not apply to the realized tau stay true.
struct UpgradeCheck {
  double tau = 0.0;
  double theta = 0.0;
  double error = 0.0;         // ||rho[S] - estimate||_F^2
  bool small_ok = true;       // tau <= 1/m_delta implies tau_hat <= 1.1/m_delta
  bool small_error_ok = true; // tau_hat <= 1.1/m_delta implies error <= kAcc tau f / m
  bool trace_ok = true;       // tau, tau_hat, tr(estimate) within a 1.1 factor
  bool error_ok = true;       // error <= tau f / m_delta
  bool heavy_ok = true;       // entries >= theta estimated within a 1.1 factor
  bool light_ok = true;       // entries <= theta estimated below 1.1 theta
  bool all() const {
    return small_ok && small_error_ok && trace_ok && error_ok && heavy_ok && light_ok;
  }
};
UpgradeCheck check_upgrade(const UpgradeResult& res, const Matrix& rho_frame, const IndexSet& s,
                           int r, double delta, double rate, int d_full);

}  // namespace chi2tomo

#endif  // CHI2TOMO_FROBENIUS_HPP
