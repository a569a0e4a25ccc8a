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

#ifndef CHI2TOMO_CENTRAL_HPP
#define CHI2TOMO_CENTRAL_HPP

#include <vector>

#include "chi2tomo/common.hpp"
#include "chi2tomo/frobenius.hpp"
#include "chi2tomo/linalg.hpp"
#include "chi2tomo/measurement.hpp"

namespace chi2tomo {

enum class CentralVariant {
  Logarithmic,  // l_max = ceil(log2(1/eps~)), halving stages
  Linear,       // l_max = d + 1, admission by the harmonic rule
};

/// Parameters of the staged chi-squared learner.
struct CentralParams {
  int d = 0;
  int r = 0;
  double f = 1.0;
  Copies m = 0;          // copies per stage
  double big_c = 0.0;    // C
  double c = 0.0;        // schedule constant
  CentralVariant variant = CentralVariant::Logarithmic;

  double delta = 0.0;
  double m_delta = 0.0;
  double eps_tilde = 0.0;
  int l_max = 0;
  double eps = 0.0;
  Copies total = 0;      // M = 2 m l_max

  static CentralParams make(int d, int r, double f, Copies m,
                            CentralVariant variant = CentralVariant::Logarithmic);
  static CentralParams make(int d, int r, double f, Copies m, double big_c, double c,
                            CentralVariant variant);

  // Smallest even m with eps~(m) <= target (delta depends on m).
  static CentralParams for_eps_tilde(int d, int r, double f, double eps_tilde,
                                     CentralVariant variant = CentralVariant::Logarithmic);
  // Budget rule: eps~ = sqrt(r / d) eps_final / kBudgetSlack.
  static CentralParams for_chi2_target(int d, int r, double f, double eps_final,
                                       CentralVariant variant = CentralVariant::Logarithmic);
};

struct StageLog {
  int d_t = 0;
  double tau_hat = 0.0;
  UpgradePath path = UpgradePath::Small;
  IndexSet admitted;  // R_t
};

/// Result in the learner's final frame: V rho V^dagger is close to diag(q).
struct CentralOutput {
  int d = 0;
  int l = 0;             // |L|; L = [l]
  IndexSet r_set;        // R
  RealVector q;          // relearned diagonal, a probability vector
  Matrix basis;          // V
  std::vector<StageLog> stages;
  Copies copies_used = 0;

  double eps_prime() const;  // ||q[L]||_1
  Matrix to_original(const Matrix& frame_matrix) const;
  Matrix frame_of(const Matrix& rho) const;
};

CentralOutput central_estimate(const FrobeniusLearner& base, StateAccess& access,
                               const CentralParams& params);

/// Conclusions of the staged learner evaluated against the truth.
struct CentralDiagnostics {
  double r_size = 0.0;
  double tau = 0.0;          // tr rho[L] in the final frame
  double eps_prime = 0.0;
  double frob_l = 0.0;       // ||rho[L] - diag(q)[L]||_F^2
  double d_minus_l = 0.0;    // D^{-L}(rho || diag(q))
  bool r_ok = false;         // |R| <= kAcc r l_max
  bool tau_ok = false;       // tau, eps' <= kAcc eps~
  bool frob_ok = false;      // frob_l <= kAcc eps~^2 / r
  bool minus_ok = false;     // d_minus_l <= kAcc eps
  bool halving_ok = true;    // tau_{t+1} < tau_t / 2 on every non-final transition
  bool admitted_ok = true;   // admitted indices have rho_ii > tau_t / (100 r)
  bool all() const { return r_ok && tau_ok && frob_ok && minus_ok; }
};

CentralDiagnostics diagnose(const CentralOutput& out, const Matrix& rho,
                            const CentralParams& params);

// Indices of R_t for a sorted (nondecreasing) stage estimate on [d_t].
IndexSet admit_stage(const RealVector& sigma, int r, CentralVariant variant);

// rho~[R] / (1 - eps'), zero-extended, in the original frame.
DensityMatrix to_infidelity_estimate(const CentralOutput& out);

/// eta I_L / |L| + (1 - eta) rho~, diagonal in the final frame.
struct Chi2Estimate {
  RealVector q;   // diagonal in the final frame
  Matrix basis;   // V
  double eta = 0.0;
  Matrix matrix() const;  // original frame
};

Chi2Estimate to_chi2_estimate(const CentralOutput& out, double eta);
double default_eta(const CentralParams& params);

// Depolarize at 2 eps; pre: 0 < eps <= 1/2.
DensityMatrix to_kl_estimate(const DensityMatrix& rho_hat, double eps);
// 16 eps (2 + ln(d / (2 eps))).
double kl_upgrade_bound(int d, double eps);

}  // namespace chi2tomo

#endif  // CHI2TOMO_CENTRAL_HPP
