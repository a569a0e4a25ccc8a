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

#include <gtest/gtest.h>

#include <cmath>

#include "chi2tomo/constants.hpp"
#include "chi2tomo/divergences.hpp"
#include "chi2tomo/linalg.hpp"
#include "chi2tomo/mi_testing.hpp"

namespace chi2tomo {
namespace {

TEST(MiAccuracy, ClampsTheLogarithm) {
  EXPECT_NEAR(mi_learning_accuracy(8, 0.5), 0.5 / 64.0 / std::log(16.0), 1e-15);
  EXPECT_NEAR(mi_learning_accuracy(2, 1.0), 1.0 / 64.0, 1e-15);
  EXPECT_NEAR(classical_mi_plan(8, 0.5).eps_prime, 0.00281776, 1e-8);
}

TEST(ClassicalPlan, SampleCounts) {
  ClassicalMiPlan p = classical_mi_plan(8, 0.5);
  const double ep = p.eps_prime;
  EXPECT_EQ(p.learn_samples, marginal_learning_samples(8, ep / 2.0));
  EXPECT_EQ(p.test_samples, identity_tester_samples(64, std::min(ep, 0.5)));
  EXPECT_EQ(identity_tester_samples(64, 0.1),
            static_cast<Copies>(std::ceil(constants::kIdentityC2 * 8.0 / 0.1)));
}

// chi2 of a product against a product: (1 + chi2_A)(1 + chi2_B) - 1.
TEST(ProductDistributions, ChiSquaredTensorizes) {
  Rng rng = derive_rng(80, 0);
  for (int t = 0; t < 20; ++t) {
    RealVector p = classical_family("product", 3, rng);
    RealVector a = marginal(p, 3, Side::A);
    RealVector b = marginal(p, 3, Side::B);
    RealVector qa = marginal(classical_family("product", 3, rng), 3, Side::A);
    RealVector qb = marginal(classical_family("product", 3, rng), 3, Side::B);
    ProductDistribution q{qa, qb};
    const double lhs = chi2(outer_product(a, b), q.joint());
    EXPECT_NEAR(lhs, (1.0 + chi2(a, qa)) * (1.0 + chi2(b, qb)) - 1.0, 1e-10 * (1.0 + lhs));
    EXPECT_NEAR(mutual_information_classical(p, 3), 0.0, 1e-12);
  }
}

TEST(IdentityTester, AcceptsNullAndRejectsFar) {
  const int bins = 16;
  RealVector q = RealVector::Constant(bins, 1.0 / bins);
  const double eps = 0.2;
  const Copies n = identity_tester_samples(bins, eps);
  Rng rng = derive_rng(81, 0);
  int accept_null = 0, reject_far = 0;
  RealVector far = q;
  for (int i = 0; i < bins; ++i) far(i) *= (i % 2 == 0) ? 1.9 : 0.1;
  const int trials = 50;
  for (int t = 0; t < trials; ++t) {
    if (identity_tester_classical(q, sample_multinomial(q, n, rng), eps, rng, 2000).accept) {
      ++accept_null;
    }
    if (!identity_tester_classical(q, sample_multinomial(far, n, rng), eps, rng, 2000).accept) {
      ++reject_far;
    }
  }
  EXPECT_GE(accept_null, 45);
  EXPECT_GE(reject_far, 45);
}

TEST(IdentityTester, RejectsBadArguments) {
  RealVector q = RealVector::Constant(4, 0.25);
  Rng rng = derive_rng(82, 0);
  SampleCounts c{{5, 5, 5, 5}};
  EXPECT_THROW(identity_tester_classical(q, c, 0.6, rng), InvalidArgument);
  EXPECT_THROW(identity_tester_classical(q, c, 0.0, rng), InvalidArgument);
  EXPECT_THROW(identity_tester_classical(q, SampleCounts{{1, 2}}, 0.1, rng), DimensionMismatch);
  EXPECT_THROW(identity_tester_classical(q, SampleCounts{{0, 0, 0, 0}}, 0.1, rng),
               InsufficientSamples);
}

TEST(ClassicalMiTester, IndependentCoinsAccepted) {
  const int d = 2;
  const double eps = 0.5;
  const Copies total = classical_mi_plan(d, eps).total();
  int accepted = 0;
  for (int t = 0; t < 10; ++t) {
    Rng rng = derive_rng(83, t);
    RealVector p = classical_family("product", d, rng);
    DistributionAccess access(p, total, fork(rng));
    TesterVerdict v = classical_mi_tester(access, d, eps, 2000);
    EXPECT_EQ(v.samples_used, total);
    if (v.accept) ++accepted;
  }
  EXPECT_GE(accepted, 9);
}

TEST(LearnProductClassical, UsesAddOneMarginals) {
  ProductDistribution p = learn_product_classical(SampleCounts{{3, 1}}, SampleCounts{{0, 4}});
  EXPECT_NEAR(p.a(0), 4.0 / 6.0, 1e-15);
  EXPECT_NEAR(p.b(0), 1.0 / 6.0, 1e-15);
  EXPECT_NEAR(p.joint().sum(), 1.0, 1e-15);
  EXPECT_THROW(learn_product_classical(SampleCounts{{1}}, SampleCounts{{1, 1}}), DimensionMismatch);
}

TEST(HellingerGap, ProductHasZeroInformation) {
  Rng rng = derive_rng(84, 0);
  Matrix rho = quantum_family("product", 3, rng);
  HellingerMiGap g = hellinger_mi_gap(rho);
  EXPECT_NEAR(g.mi, 0.0, 1e-10);
  EXPECT_NEAR(g.eta, 0.0, 1e-8);
  EXPECT_TRUE(g.all());
}

TEST(HellingerGap, BellStateChain) {
  Matrix phi = Matrix::Zero(4, 1);
  phi(0, 0) = phi(3, 0) = 1.0 / std::sqrt(2.0);
  HellingerMiGap g = hellinger_mi_gap(phi * phi.adjoint());
  EXPECT_NEAR(g.mi, 2.0 * std::log(2.0), 1e-9);
  EXPECT_TRUE(g.all());
  EXPECT_LE(g.mi, g.bound);
  EXPECT_NEAR(continuity_bound(2, 0.1), 2.0 * 0.1 * std::log(80.0), 1e-14);
}

TEST(HellingerGap, ClassicalCorrelatedFamily) {
  Rng rng = derive_rng(85, 0);
  for (double level : {0.0, 0.3, 1.0}) {
    RealVector p = classical_family("correlated:" + std::to_string(level), 4, rng);
    EXPECT_TRUE(hellinger_mi_gap(p, 4).all()) << level;
  }
}

TEST(Families, InformationIncreasesWithLevel) {
  Rng rng = derive_rng(86, 0);
  double prev_c = -1.0, prev_q = -1.0;
  for (double level : {0.0, 0.2, 0.5, 0.8, 1.0}) {
    const std::string f = "correlated:" + std::to_string(level);
    const double ic = mutual_information_classical(classical_family(f, 3, rng), 3);
    const double iq = mutual_information_quantum(quantum_family(f, 3, rng));
    EXPECT_GT(ic, prev_c);
    EXPECT_GT(iq, prev_q);
    prev_c = ic;
    prev_q = iq;
  }
  EXPECT_NEAR(prev_c, std::log(3.0), 1e-12);
  EXPECT_NEAR(prev_q, 2.0 * std::log(3.0), 1e-9);
  EXPECT_THROW(classical_family("correlated:1.5", 3, rng), InvalidArgument);
  EXPECT_THROW(quantum_family("mixed", 3, rng), InvalidArgument);
  EXPECT_THROW(quantum_family("product", 9, rng), InvalidArgument);
}

TEST(Families, LevelSolverInverts) {
  Rng rng = derive_rng(87, 0);
  for (bool quantum : {false, true}) {
    const double level = correlation_level_for_mi(3, 0.4, quantum);
    const std::string f = "correlated:" + std::to_string(level);
    const double mi = quantum ? mutual_information_quantum(quantum_family(f, 3, rng))
                              : mutual_information_classical(classical_family(f, 3, rng), 3);
    EXPECT_NEAR(mi, 0.4, 1e-5);
  }
  EXPECT_THROW(correlation_level_for_mi(3, 5.0, false), InvalidArgument);
}

TEST(BipartiteAccess, MarginalsChargeBudget) {
  Rng rng = derive_rng(88, 0);
  Matrix rho = quantum_family("correlated:0.5", 2, rng);
  BipartiteAccess access(rho, 1000, fork(rng));
  EXPECT_EQ(access.local_dim(), 2);
  StateAccess a = access.marginal(Side::A, 400);
  EXPECT_EQ(access.budget().remaining(), 600);
  EXPECT_EQ(a.budget().total(), 400);
  EXPECT_LT((a.truth() - Matrix::Identity(2, 2) / 2.0).norm(), 1e-12);
  EXPECT_THROW(access.marginal(Side::B, 700), BudgetExhausted);
}

TEST(ProductChi2, PartsSumToBuresChi2) {
  const int d = 2;
  const double eps = 0.2;
  Rng rng = derive_rng(89, 0);
  Matrix xi = random_state(d, d, rng).matrix();
  Matrix rho = random_state(d, d, rng).matrix();
  const Copies copies = product_learning_copies(d, d, eps, "oracle:f=d");
  StateAccess a(xi, copies, fork(rng));
  StateAccess b(rho, copies, fork(rng));
  ProductStateEstimate est = learn_product_quantum(a, b, d, d, eps);
  EXPECT_EQ(a.budget().remaining(), 0);
  EXPECT_EQ(b.budget().remaining(), 0);
  ProductChi2Parts parts = product_chi2_parts(xi, rho, est, eps);
  EXPECT_NEAR(parts.total(), bures_chi2(kron(xi, rho), est.matrix()), 1e-8 * (1.0 + parts.total()));
  EXPECT_TRUE(parts.am_gm_ok);
  EXPECT_LE(parts.total(), eps);
}

TEST(TruthOracle, DecisionAndCharge) {
  Rng rng = derive_rng(90, 0);
  Matrix rho = quantum_family("product", 2, rng);
  BipartiteAccess access(rho, 1000, fork(rng));
  TesterVerdict v = truth_oracle_tester(rho, access, 0.1);
  EXPECT_TRUE(v.accept);
  EXPECT_EQ(v.samples_used, static_cast<Copies>(std::ceil(constants::kBowC * 4.0 / 0.1)));
  EXPECT_EQ(access.budget().consumed(), v.samples_used);
  Matrix far = quantum_family("correlated:1.0", 2, rng);
  EXPECT_FALSE(truth_oracle_tester(far, access, 0.1).accept);
}

TEST(QuantumMiTester, ProductAcceptedWithinPlanBudget) {
  const int d = 2;
  const double eps = 0.5;
  QuantumMiPlan plan = quantum_mi_plan(d, d, eps);
  EXPECT_NEAR(plan.eps_test, 2.0 * plan.eps_prime, 1e-15);
  EXPECT_NEAR(plan.eps_learn, 0.49 * plan.eps_test, 1e-15);
  Rng rng = derive_rng(91, 0);
  Matrix rho = quantum_family("product", d, rng);
  BipartiteAccess access(rho, plan.total(), fork(rng));
  QuantumMiResult res = quantum_mi_tester(access, d, eps);
  EXPECT_TRUE(res.verdict.accept);
  EXPECT_EQ(res.verdict.samples_used, plan.total());
  EXPECT_EQ(access.budget().remaining(), 0);
}

}  // namespace
}  // namespace chi2tomo
