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

#include "chi2tomo/central.hpp"
#include "chi2tomo/constants.hpp"
#include "chi2tomo/divergences.hpp"
#include "chi2tomo/linalg.hpp"

namespace chi2tomo {
namespace {

TEST(CentralParams, DerivedQuantities) {
  const int d = 8, r = 2;
  const double f = 8.0;
  const Copies m = 400'000'000'000;
  CentralParams p = CentralParams::make(d, r, f, m);
  const double l2 = std::log2(static_cast<double>(m) / (r * f));
  const double delta = 1e-4 / l2;
  const double m_delta = static_cast<double>(m) / (constants::kScheduleC * std::log(1.0 / delta));
  const double eps_tilde = constants::kCentralC * r * f / m_delta;
  const int l_max = static_cast<int>(std::ceil(std::log2(1.0 / eps_tilde)));
  EXPECT_NEAR(p.delta, delta, 1e-18);
  EXPECT_NEAR(p.m_delta, m_delta, 1e-6 * m_delta);
  EXPECT_NEAR(p.eps_tilde, eps_tilde, 1e-12 * eps_tilde);
  EXPECT_EQ(p.l_max, l_max);
  EXPECT_NEAR(p.eps, eps_tilde * l_max, 1e-12);
  EXPECT_EQ(p.total, 2 * m * l_max);
}

TEST(CentralParams, LinearVariant) {
  CentralParams p = CentralParams::make(6, 3, 6.0, 4'000'000'000, CentralVariant::Linear);
  EXPECT_EQ(p.l_max, 7);
  EXPECT_NEAR(p.delta, 1e-4 / 7.0, 1e-18);
  EXPECT_NEAR(p.eps, 6.0 * std::log(3.0) / 3.0 * p.eps_tilde, 1e-15);
}

TEST(CentralParams, Preconditions) {
  EXPECT_THROW(CentralParams::make(0, 1, 1.0, 1'000'000'000), InvalidArgument);
  EXPECT_THROW(CentralParams::make(65, 1, 65.0, 1'000'000'000), InvalidArgument);
  EXPECT_THROW(CentralParams::make(4, 5, 4.0, 1'000'000'000), InvalidArgument);
  EXPECT_THROW(CentralParams::make(8, 1, 1.5, 1'000'000'000), InvalidArgument);
  EXPECT_THROW(CentralParams::make(4, 1, 4.0, 1000), InvalidArgument);
  EXPECT_THROW(CentralParams::for_eps_tilde(4, 1, 4.0, 0.0), InvalidArgument);
  EXPECT_THROW(CentralParams::for_chi2_target(4, 1, 4.0, -1.0), InvalidArgument);
}

TEST(CentralParams, ForEpsTildeIsSmallestEvenM) {
  for (double target : {1e-2, 3e-3}) {
    CentralParams p = CentralParams::for_eps_tilde(4, 2, 4.0, target);
    EXPECT_LE(p.eps_tilde, target);
    EXPECT_EQ(p.m % 2, 0);
    EXPECT_GT(CentralParams::make(4, 2, 4.0, p.m - 2).eps_tilde, target);
  }
}

TEST(CentralParams, Chi2TargetSplit) {
  const int d = 8, r = 2;
  CentralParams p = CentralParams::for_chi2_target(d, r, 8.0, 0.2);
  EXPECT_LE(p.eps_tilde, std::sqrt(static_cast<double>(r) / d) * 0.2 / constants::kBudgetSlack);
  EXPECT_NEAR(default_eta(p), std::sqrt(static_cast<double>(d) / r) * p.eps_tilde, 1e-15);
}

TEST(AdmitStage, LogarithmicThreshold) {
  RealVector sigma(5);
  sigma << 0.001, 0.002, 0.003, 0.3, 0.6;
  IndexSet got = admit_stage(sigma, 2, CentralVariant::Logarithmic);
  EXPECT_EQ(got, (IndexSet{3, 4}));
  // Never more than r entries.
  EXPECT_EQ(admit_stage(sigma, 1, CentralVariant::Logarithmic), (IndexSet{4}));
  RealVector flat = RealVector::Constant(4, 0.001);
  flat(3) = 0.0;
  std::sort(flat.data(), flat.data() + 4);
  EXPECT_EQ(admit_stage(flat, 4, CentralVariant::Logarithmic).size(), 3u);
  EXPECT_TRUE(admit_stage(RealVector(), 2, CentralVariant::Logarithmic).empty());
}

TEST(AdmitStage, LinearHarmonicRule) {
  RealVector sigma(4);
  sigma << 0.01, 0.09, 0.3, 0.6;
  // Top sum over r = 3 entries is 0.99; k admitted if sigma_(k) >= 0.99 / (4 k ln 3).
  IndexSet got = admit_stage(sigma, 3, CentralVariant::Linear);
  EXPECT_EQ(got, (IndexSet{1, 2, 3}));
  EXPECT_LE(admit_stage(sigma, 2, CentralVariant::Linear).size(), 2u);
}

class CentralRun : public ::testing::TestWithParam<CentralVariant> {};

TEST_P(CentralRun, BudgetAndOutputs) {
  const int d = 6, r = 2;
  FrobeniusLearner base(EstimatorSpec::parse("oracle:f=rd"), d, r);
  CentralParams p = CentralParams::for_chi2_target(d, r, base.rate, 0.2, GetParam());
  Rng rng = derive_rng(60, static_cast<int>(GetParam()));
  Matrix rho = random_state(d, r, rng).matrix();
  StateAccess access(rho, p.total, fork(rng));
  CentralOutput out = central_estimate(base, access, p);
  EXPECT_EQ(out.copies_used, p.total);
  EXPECT_EQ(access.budget().remaining(), 0);
  EXPECT_LE(static_cast<int>(out.stages.size()), p.l_max);
  EXPECT_NEAR(out.q.sum(), 1.0, 1e-12);
  EXPECT_TRUE(is_unitary(out.basis));
  EXPECT_LT((out.to_original(out.frame_of(rho)) - rho).norm(), 1e-12);
  EXPECT_TRUE(diagnose(out, rho, p).all());

  DensityMatrix inf = to_infidelity_estimate(out);
  EXPECT_NEAR(inf.trace(), 1.0, 1e-9);

  const double eta = default_eta(p);
  Chi2Estimate c = to_chi2_estimate(out, eta);
  EXPECT_NEAR(c.q.sum(), 1.0, 1e-12);
  for (int i = 0; i < out.l; ++i) EXPECT_GE(c.q(i), eta / out.l - 1e-15);
  EXPECT_NEAR(bures_chi2(rho, c.matrix()), bures_chi2_diag(out.frame_of(rho), c.q), 1e-6);
  EXPECT_THROW(to_chi2_estimate(out, 0.5), InvalidArgument);
}

INSTANTIATE_TEST_SUITE_P(Variants, CentralRun,
                         ::testing::Values(CentralVariant::Logarithmic, CentralVariant::Linear));

TEST(CentralRun, LinearUsesAtMostDPlusOneStages) {
  const int d = 5, r = 5;
  FrobeniusLearner base(EstimatorSpec::parse("oracle:f=d"), d, r);
  CentralParams p = CentralParams::for_chi2_target(d, r, base.rate, 0.2, CentralVariant::Linear);
  for (int t = 0; t < 5; ++t) {
    Rng rng = derive_rng(61, t);
    StateAccess access(random_state(d, r, rng).matrix(), p.total, fork(rng));
    CentralOutput out = central_estimate(base, access, p);
    EXPECT_LE(static_cast<int>(out.stages.size()), d + 1);
  }
}

TEST(Chi2Estimate, EmptyLKeepsDistribution) {
  CentralOutput out;
  out.d = 2;
  out.l = 0;
  out.q = RealVector::Constant(2, 0.5);
  out.basis = Matrix::Identity(2, 2);
  Chi2Estimate e = to_chi2_estimate(out, 0.1);
  EXPECT_EQ(e.q, out.q);
}

TEST(KlUpgrade, FloorAndBound) {
  DensityMatrix pure = random_state(4, 1, 62);
  const double eps = 0.05;
  DensityMatrix k = to_kl_estimate(pure, eps);
  auto eig = eig_hermitian(k.matrix());
  EXPECT_GE(eig.values.minCoeff(), 2.0 * eps / 4.0 - 1e-12);
  EXPECT_NEAR(kl_upgrade_bound(4, eps), 16.0 * eps * (2.0 + std::log(4.0 / (2.0 * eps))), 1e-15);
  EXPECT_THROW(to_kl_estimate(pure, 0.6), InvalidArgument);
  EXPECT_THROW(to_kl_estimate(pure, 0.0), InvalidArgument);
}

}  // namespace
}  // namespace chi2tomo
