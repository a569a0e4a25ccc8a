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

#ifndef CHI2TOMO_MI_TESTING_HPP
#define CHI2TOMO_MI_TESTING_HPP

#include <functional>
#include <string>

#include "chi2tomo/central.hpp"
#include "chi2tomo/classical.hpp"
#include "chi2tomo/common.hpp"
#include "chi2tomo/measurement.hpp"

namespace chi2tomo {

struct TesterVerdict {
  bool accept = false;
  double statistic = 0.0;
  double threshold = 0.0;
  Copies samples_used = 0;
};

/// Sample access to a classical distribution.
class DistributionAccess {
 public:
  DistributionAccess(RealVector p, Copies samples, Rng rng);
  int dim() const { return static_cast<int>(p_.size()); }
  const RealVector& truth() const { return p_; }
  CopyBudget& budget() { return budget_; }
  Rng& rng() { return rng_; }
  SampleCounts draw(Copies k);

 private:
  RealVector p_;
  CopyBudget budget_;
  Rng rng_;
};

// Mutual-information accuracy eps' = c eps / ln(d / eps), log clamped at 1.
double mi_learning_accuracy(int d, double eps, double c = 1.0 / 64.0);

struct ProductDistribution {
  RealVector a;
  RealVector b;
  RealVector joint() const;
};

Copies marginal_learning_samples(int d, double eps);
// Add-one estimates of both marginals from n = marginal_learning_samples(d, eps) joint draws.
ProductDistribution learn_product_classical(DistributionAccess& access, int d, double eps);
ProductDistribution learn_product_classical(const SampleCounts& a, const SampleCounts& b);

Copies identity_tester_samples(int bins, double eps);
// Plug-in chi-squared statistic against known q with a simulated null threshold.
TesterVerdict identity_tester_classical(const RealVector& q, const SampleCounts& counts,
                                        double eps, Rng& rng,
                                        int null_simulations = 10000);

struct ClassicalMiPlan {
  double eps_prime = 0.0;
  Copies learn_samples = 0;
  Copies test_samples = 0;
  Copies total() const { return learn_samples + test_samples; }
};
ClassicalMiPlan classical_mi_plan(int d, double eps);
TesterVerdict classical_mi_tester(DistributionAccess& access, int d, double eps,
                                  int null_simulations = 10000);

/// Quantities along the Hellinger bound on mutual information.
struct HellingerMiGap {
  double mi = 0.0;          // I(A:B)
  double eta = 0.0;         // D_H^2(rho || rho_A (x) rho_B)
  double eps = 0.0;         // depolarization strength min(eta^2, 1)
  double bound = 0.0;       // (2 + ln(d^2/eps^2))(C sqrt(eps) + eta) + 2 eps ln(4d/eps)
  double mi_smoothed = 0.0; // I for the depolarized state
  double eta_smoothed = 0.0;
  double dinf_smoothed = 0.0;
  double trace_dist = 0.0;
  bool continuity_ok = true;    // |I - I_s| <= 2 t ln(4d/t) with t the trace distance
  bool depolarize_ok = true;    // eta_s <= C sqrt(eps) + eta
  bool dinf_ok = true;          // D_inf(sigma || sigma_A sigma_B) <= ln(d^2 / eps^2)
  bool reverse_ok = true;       // I_s <= (2 + D_inf) eta_s
  bool bound_ok = true;         // I <= bound
  bool all() const { return continuity_ok && depolarize_ok && dinf_ok && reverse_ok && bound_ok; }
};

inline constexpr double kDepolarizeConst = 4.0 + 5.656854249492381;  // 4 + 4 sqrt(2)

double continuity_bound(int d, double t);
HellingerMiGap hellinger_mi_gap(const Matrix& rho_ab);
// Evaluates the same chain at a given depolarization strength.
HellingerMiGap hellinger_mi_gap_at(const Matrix& rho_ab, double eps);
HellingerMiGap hellinger_mi_gap(const RealVector& p_ab, int d);

/// Sampling access to a bipartite state on C^d (x) C^d.
class BipartiteAccess {
 public:
  BipartiteAccess(Matrix rho_ab, Copies copies, Rng rng);
  int local_dim() const { return d_; }
  const Matrix& truth() const { return rho_; }
  CopyBudget& budget() { return budget_; }
  Rng& rng() { return rng_; }
  // Charges `copies` copies and returns access to that many copies of one marginal.
  StateAccess marginal(Side side, Copies copies);

 private:
  Matrix rho_;
  int d_;
  CopyBudget budget_;
  Rng rng_;
};

/// Product-state learner output: both factors diagonal in their own frames.
struct ProductStateEstimate {
  Chi2Estimate a;
  Chi2Estimate b;
  CentralParams params;
  Matrix matrix() const;  // sigma' (x) tau' in the original frame
};

struct ProductChi2Parts {
  double on_on = 0.0;
  double on_off = 0.0;
  double off_off = 0.0;
  bool am_gm_ok = true;  // off-off AM-GM lower bound holds for every term
  double total() const { return on_on + on_off + off_off; }
};

CentralParams product_learning_params(int d, int r, double eps, const std::string& estimator);
Copies product_learning_copies(int d, int r, double eps, const std::string& estimator);
ProductStateEstimate learn_product_quantum(StateAccess& a, StateAccess& b, int d, int r,
                                           double eps, const std::string& estimator = "oracle:f=d");
// Splits Bures chi-squared of xi (x) rho against the estimate; eps/d is the eigenvalue floor.
ProductChi2Parts product_chi2_parts(const Matrix& xi, const Matrix& rho,
                                    const ProductStateEstimate& est, double eps);

// Given a hypothesis state, copies of rho_AB and the tester parameter.
using QuantumIdentityTester =
    std::function<TesterVerdict(const Matrix& hypothesis, BipartiteAccess& access, double eps)>;

// Charges kBowC D / eps copies and decides by D_H^2(rho || hypothesis) < eps.
TesterVerdict truth_oracle_tester(const Matrix& hypothesis, BipartiteAccess& access, double eps);

struct QuantumMiPlan {
  double eps_prime = 0.0;
  double eps_test = 0.0;    // tester parameter 2 eps'
  double eps_learn = 0.0;   // .49 eps_test
  Copies learn_copies = 0;  // per marginal
  Copies test_copies = 0;
  Copies total() const { return 2 * learn_copies + test_copies; }
};
QuantumMiPlan quantum_mi_plan(int d, int r, double eps, const std::string& estimator = "oracle:f=d");

struct QuantumMiResult {
  TesterVerdict verdict;
  ProductStateEstimate product;
  QuantumMiPlan plan;
};
QuantumMiResult quantum_mi_tester(BipartiteAccess& access, int r, double eps,
                                  const QuantumIdentityTester& tester = truth_oracle_tester,
                                  const std::string& estimator = "oracle:f=d");

// Test families: "product" or "correlated:<level>" with level in [0, 1].
RealVector classical_family(const std::string& family, int d, Rng& rng);
Matrix quantum_family(const std::string& family, int d, Rng& rng);
// Level at which the correlated family reaches mutual information `target`.
double correlation_level_for_mi(int d, double target, bool quantum);

}  // namespace chi2tomo

#endif  // CHI2TOMO_MI_TESTING_HPP
