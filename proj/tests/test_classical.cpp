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
#include <cstdint>
#include <vector>

#include "chi2tomo/classical.hpp"
#include "chi2tomo/constants.hpp"
#include "chi2tomo/divergences.hpp"

namespace chi2tomo {
namespace {

// Reference values from a direct binomial sum over X ~ Bin(m, p), evaluated
// in extended precision outside the library.
struct AddOneCase {
  double p;
  Copies m;
  int s;
  double expected;
};

TEST(AddOne, ExpectedChi2TermMatchesBinomialSum) {
  const std::vector<AddOneCase> cases = {
      {0.1, 100, 10, 0.008908287546049658},  {0.0, 50, 4, 0.018518518518518517},
      {0.5, 20, 2, 0.02380927403767904},     {0.01, 200, 8, 0.0033987438560743543},
      {1.0, 30, 3, 0.0039100684261974515},
  };
  for (const auto& c : cases) {
    EXPECT_NEAR(add_one_expected_chi2_term(c.p, c.m, c.s), c.expected, 1e-12 * c.expected)
        << "p=" << c.p << " m=" << c.m;
  }
}

TEST(AddOne, UniformTotal) {
  RealVector p = RealVector::Constant(10, 0.1);
  IndexSet all{0, 1, 2, 3, 4, 5, 6, 7, 8, 9};
  EXPECT_NEAR(add_one_expected_chi2(p, 100, all), 0.08908287546049659, 1e-12);
}

TEST(AddOne, ExpectationDecreasesWithSamples) {
  for (int s : {2, 5, 16}) {
    for (double p : {0.0, 0.01, 0.2, 0.7}) {
      double prev = kInf;
      for (Copies m : {10, 100, 1000, 10000}) {
        const double v = add_one_expected_chi2_term(p, m, s);
        EXPECT_LT(v, prev);
        prev = v;
      }
      EXPECT_LE(prev, 2.0 / 10000.0);
    }
  }
}

TEST(AddOne, HybridOnlyBumpsSubset) {
  SampleCounts c{{3, 0, 7}};
  RealVector q = add_one_hybrid(c, {1});
  EXPECT_NEAR(q(0), 3.0 / 11.0, 1e-15);
  EXPECT_NEAR(q(1), 1.0 / 11.0, 1e-15);
  EXPECT_NEAR(q(2), 7.0 / 11.0, 1e-15);
  EXPECT_NEAR(q.sum(), 1.0, 1e-15);
  EXPECT_THROW(add_one_hybrid(c, {1, 1}), InvalidArgument);
  EXPECT_THROW(add_one_hybrid(c, {3}), InvalidArgument);
  EXPECT_THROW(add_one_hybrid(SampleCounts{{0, 0}}, {}), InvalidArgument);
}

TEST(AddOne, MonteCarloAgreesWithExactExpectation) {
  RealVector p(4);
  p << 0.05, 0.15, 0.3, 0.5;
  IndexSet all{0, 1, 2, 3};
  const Copies m = 40;
  Rng rng = derive_rng(21, 0);
  const int trials = 40000;
  double sum = 0.0;
  for (int t = 0; t < trials; ++t) sum += chi2(p, add_one_hybrid(sample_multinomial(p, m, rng), all));
  const double mc = sum / trials;
  const double exact = add_one_expected_chi2(p, m, all);
  EXPECT_NEAR(mc, exact, 0.03 * exact);
}

TEST(Multinomial, CountsSumAndSupport) {
  Rng rng = derive_rng(22, 0);
  RealVector p(5);
  p << 0.0, 0.25, 0.0, 0.5, 0.25;
  for (Copies m : {Copies{0}, Copies{1}, Copies{17}, Copies{1'000'000}, Copies{100'000'000'000}}) {
    SampleCounts c = sample_multinomial(p, m, rng);
    EXPECT_EQ(c.total(), m);
    EXPECT_EQ(c.counts[0], 0);
    EXPECT_EQ(c.counts[2], 0);
  }
  SampleCounts big = sample_multinomial(p, 100'000'000'000, rng);
  EXPECT_NEAR(static_cast<double>(big.counts[3]) / 1e11, 0.5, 1e-4);
}

TEST(Multinomial, DeterministicGivenSeed) {
  RealVector p = RealVector::Constant(6, 1.0 / 6.0);
  Rng a = derive_rng(23, 4);
  Rng b = derive_rng(23, 4);
  EXPECT_EQ(sample_multinomial(p, 999, a).counts, sample_multinomial(p, 999, b).counts);
}

TEST(Multinomial, RejectsInvalidInput) {
  Rng rng = derive_rng(24, 0);
  RealVector neg(2);
  neg << -0.5, 1.5;
  EXPECT_THROW(sample_multinomial(neg, 10, rng), InvalidArgument);
  EXPECT_THROW(sample_multinomial(RealVector::Zero(3), 10, rng), InvalidArgument);
  EXPECT_THROW(sample_multinomial(RealVector::Constant(2, 0.5), -1, rng), InvalidArgument);
  EXPECT_EQ(sample_multinomial(RealVector::Zero(3), 0, rng).total(), 0);
}

TEST(Empirical, Frequencies) {
  RealVector q = empirical(SampleCounts{{1, 3}});
  EXPECT_DOUBLE_EQ(q(0), 0.25);
  EXPECT_DOUBLE_EQ(q(1), 0.75);
  EXPECT_THROW(empirical(SampleCounts{{0, 0}}), InvalidArgument);
}

TEST(BitEstimator, LowerMedianOfAddOneGroups) {
  // Add-one estimates of outcome 1: 1/12, 6/12, 11/12, 3/12, 4/12.
  std::vector<std::pair<Copies, Copies>> groups = {{0, 10}, {5, 10}, {10, 10}, {2, 10}, {3, 10}};
  RealVector q = bit_chi2_median_groups(groups);
  EXPECT_NEAR(q(1), 4.0 / 12.0, 1e-15);
  EXPECT_NEAR(q(0), 8.0 / 12.0, 1e-15);
  EXPECT_THROW(bit_chi2_median_groups({}), InvalidArgument);
  EXPECT_THROW(bit_chi2_median_groups({{3, 2}}), InvalidArgument);
}

TEST(BitEstimator, GroupCountIsOdd) {
  for (double delta : {0.5, 0.1, 0.05, 1e-3, 1e-9}) {
    EXPECT_EQ(bit_chi2_groups(delta) % 2, 1);
  }
  EXPECT_LE(bit_chi2_groups(1e-3), bit_chi2_groups(1e-9));
  EXPECT_THROW(bit_chi2_groups(1.0), InvalidArgument);
}

TEST(BitEstimator, SampleSizeCheck) {
  const double eps = 0.1;
  const double delta = 0.05;
  const Copies need = bit_chi2_required_samples(eps, delta);
  EXPECT_EQ(need, static_cast<Copies>(std::ceil(constants::kBitChi2C * std::log(1.0 / delta) / eps)));
  std::vector<std::uint8_t> bits(static_cast<std::size_t>(need - 1), 0);
  EXPECT_THROW(bit_chi2_median(bits, eps, delta), InsufficientSamples);
  BitChi2Options opts;
  opts.check_sample_size = false;
  RealVector q = bit_chi2_median(bits, eps, delta, opts);
  EXPECT_GT(q(1), 0.0);
  EXPECT_NEAR(q.sum(), 1.0, 1e-15);
}

TEST(BitEstimator, AccurateAtRequiredSize) {
  const double eps = 0.05;
  const double delta = 0.05;
  const Copies n = bit_chi2_required_samples(eps, delta);
  Rng rng = derive_rng(25, 0);
  int failures = 0;
  const int trials = 200;
  for (int t = 0; t < trials; ++t) {
    const double p1 = 0.02 + 0.96 * uniform01(rng);
    std::vector<std::uint8_t> bits(static_cast<std::size_t>(n));
    for (auto& b : bits) b = uniform01(rng) < p1 ? 1 : 0;
    RealVector p(2);
    p << 1.0 - p1, p1;
    if (chi2(p, bit_chi2_median(bits, eps, delta)) > eps) ++failures;
  }
  EXPECT_LE(failures, static_cast<int>(2 * delta * trials));
}

TEST(HighProb, GuaranteesHoldOnRandomInstances) {
  ConfidenceSchedule sched = default_schedule(0.01);
  EXPECT_DOUBLE_EQ(sched.m_delta(1000.0), 1000.0 / (sched.c * std::log(100.0)));
  Rng rng = derive_rng(26, 0);
  for (int t = 0; t < 200; ++t) {
    RealVector p = RealVector::NullaryExpr(8, [&] { return uniform01(rng) * uniform01(rng); });
    p /= p.sum();
    SampleCounts c = sample_multinomial(p, 2'000'000, rng);
    IndexSet s{0, 2, 5};
    HighProbEstimate est = high_prob_empirical(c, sched, s);
    EXPECT_NEAR(est.mass_estimate, est.q(0) + est.q(2) + est.q(5), 1e-15);
    EXPECT_TRUE(check_high_prob(est, p, s).all());
  }
}

}  // namespace
}  // namespace chi2tomo
