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

#include <algorithm>
#include <cmath>
#include <set>

#include "chi2tomo/linalg.hpp"
#include "chi2tomo/measurement.hpp"

namespace chi2tomo {
namespace {

TEST(Povm, ValidatesElements) {
  Matrix half = Matrix::Identity(2, 2) / 2.0;
  EXPECT_NO_THROW(Povm({half, half}, {"a", "b"}));
  EXPECT_THROW(Povm({half}, {"a"}), InvalidArgument);
  EXPECT_THROW(Povm({half, half}, {"a"}), InvalidArgument);
  EXPECT_THROW(Povm({}, {}), InvalidArgument);
  Matrix neg = Matrix::Zero(2, 2);
  neg(0, 0) = -0.5;
  Matrix rest = Matrix::Identity(2, 2) - neg;
  EXPECT_THROW(Povm({neg, rest}, {"a", "b"}), InvalidArgument);
  Matrix skew = Matrix::Zero(2, 2);
  skew(0, 1) = 1.0;
  EXPECT_THROW(Povm({skew, Matrix::Identity(2, 2) - skew}, {"a", "b"}), NotHermitian);
  EXPECT_THROW(Povm({half, Matrix::Identity(3, 3) / 2.0}, {"a", "b"}), DimensionMismatch);
}

TEST(Povm, FromBasisRequiresOrthonormalColumns) {
  Matrix m = Matrix::Identity(2, 2);
  m(0, 1) = 0.5;
  EXPECT_THROW(Povm::from_basis(m), NotUnitary);
  Povm z = Povm::computational(3);
  EXPECT_EQ(z.size(), 3u);
  EXPECT_EQ(z.dim(), 3);
}

TEST(Born, ProbabilitiesOfPauliBases) {
  Matrix plus(2, 2);
  plus << 0.5, 0.5, 0.5, 0.5;
  auto bases = pauli_bases();
  RealVector px = born_probabilities(plus, bases[0]);
  RealVector py = born_probabilities(plus, bases[1]);
  RealVector pz = born_probabilities(plus, bases[2]);
  EXPECT_NEAR(px(0), 1.0, 1e-15);
  EXPECT_NEAR(py(0), 0.5, 1e-15);
  EXPECT_NEAR(pz(1), 0.5, 1e-15);
  EXPECT_THROW(born_probabilities(Matrix::Identity(3, 3) / 3.0, bases[0]), DimensionMismatch);
}

TEST(RoundRobin, EveryPairExactlyOnce) {
  for (int n : {2, 4, 6, 10}) {
    auto rounds = round_robin_matchings(n);
    EXPECT_EQ(static_cast<int>(rounds.size()), n - 1);
    std::set<std::pair<int, int>> seen;
    for (const auto& match : rounds) {
      std::set<int> used;
      for (auto [i, j] : match) {
        EXPECT_LT(i, j);
        EXPECT_TRUE(used.insert(i).second);
        EXPECT_TRUE(used.insert(j).second);
        EXPECT_TRUE(seen.insert({i, j}).second);
      }
      EXPECT_EQ(static_cast<int>(used.size()), n);
    }
    EXPECT_EQ(static_cast<int>(seen.size()), n * (n - 1) / 2);
  }
  EXPECT_THROW(round_robin_matchings(5), InvalidArgument);
}

TEST(MatchingPovms, CountAndCompleteness) {
  for (int d : {2, 3, 4, 5, 8}) {
    MatchingPovms mp = matching_povms(d);
    const int n = d % 2 == 0 ? d : d + 1;
    EXPECT_EQ(static_cast<int>(mp.povms.size()), 2 * (n - 1));
    for (const auto& povm : mp.povms) {
      Matrix sum = Matrix::Zero(d, d);
      for (const auto& e : povm.elements()) sum += e;
      EXPECT_LT((sum - Matrix::Identity(d, d)).norm(), 1e-12);
      EXPECT_EQ(static_cast<int>(povm.size()), n);
    }
  }
}

// Off-diagonal recovery: p(+) - p(-) = 2 Re rho_ij (X) and -2 Im rho_ij (Y).
TEST(MatchingPovms, PairProbabilitiesEncodeOffDiagonal) {
  Matrix rho = random_state(4, 4, 31).matrix();
  MatchingPovms mp = matching_povms(4);
  for (std::size_t t = 0; t < mp.matchings.size(); ++t) {
    RealVector px = born_probabilities(rho, mp.povms[2 * t]);
    RealVector py = born_probabilities(rho, mp.povms[2 * t + 1]);
    for (std::size_t k = 0; k < mp.matchings[t].size(); ++k) {
      auto [i, j] = mp.matchings[t][k];
      EXPECT_NEAR(px(2 * k) - px(2 * k + 1), 2.0 * rho(i, j).real(), 1e-12);
      EXPECT_NEAR(std::abs(py(2 * k) - py(2 * k + 1)), 2.0 * std::abs(rho(i, j).imag()), 1e-12);
      EXPECT_NEAR(px(2 * k) + px(2 * k + 1), rho(i, i).real() + rho(j, j).real(), 1e-12);
    }
  }
}

TEST(CopyBudget, ExhaustionThrows) {
  CopyBudget b(10);
  b.consume(4);
  EXPECT_EQ(b.remaining(), 6);
  EXPECT_THROW(b.consume(7), BudgetExhausted);
  EXPECT_EQ(b.consumed(), 4);
  EXPECT_THROW(b.consume(-1), InvalidArgument);
  EXPECT_THROW(CopyBudget(-1), InvalidArgument);
}

TEST(StateAccess, ChargesEveryMeasurement) {
  Matrix rho = random_state(3, 2, 32).matrix();
  StateAccess access(rho, 100, derive_rng(32, 1));
  SampleCounts c = access.measure_basis(30);
  EXPECT_EQ(c.total(), 30);
  access.measure(Povm::computational(3), 20);
  access.measure_in(random_unitary(3, access.rng()), 10);
  access.spend(40);
  EXPECT_EQ(access.budget().remaining(), 0);
  EXPECT_THROW(access.measure_basis(1), BudgetExhausted);
}

TEST(StateAccess, RotationChangesFrame) {
  Matrix rho = Matrix::Zero(2, 2);
  rho(0, 0) = 1.0;
  StateAccess access(rho, 1000, derive_rng(33, 0));
  Matrix flip(2, 2);
  flip << 0, 1, 1, 0;
  access.rotate(flip);
  SampleCounts c = access.measure_basis(1000);
  EXPECT_EQ(c.counts[1], 1000);
  EXPECT_THROW(access.rotate(Matrix::Identity(2, 2) * 2.0), NotUnitary);
}

TEST(FilterSubset, ConditionalStateAndKeptCopies) {
  Matrix rho = random_state(5, 5, 34).matrix();
  StateAccess access(rho, 1'000'000, derive_rng(34, 0));
  IndexSet s{1, 3};
  FilterResult f = filter_subset(access, s, 1'000'000);
  const double tau = rho(1, 1).real() + rho(3, 3).real();
  EXPECT_EQ(access.budget().remaining(), 0);
  EXPECT_NEAR(static_cast<double>(f.kept) / 1e6, tau, 5e-3);
  EXPECT_EQ(f.conditional->budget().total(), f.kept);
  EXPECT_EQ(f.conditional->dim(), 2);
  EXPECT_NEAR(trace_real(f.conditional->truth()), 1.0, 1e-12);
  EXPECT_NEAR(std::abs(f.conditional->truth()(0, 1) - rho(1, 3) / tau), 0.0, 1e-12);
  EXPECT_THROW(filter_subset(access, {7}, 0), InvalidArgument);
}

TEST(SampleOutcomes, MatchesCountsInDistribution) {
  Matrix rho = Matrix::Identity(2, 2) / 2.0;
  CopyBudget b(20000);
  Rng rng = derive_rng(35, 0);
  auto out = sample_outcomes(rho, Povm::computational(2), 20000, b, rng);
  const double ones = static_cast<double>(std::count(out.begin(), out.end(), 1));
  EXPECT_NEAR(ones / 20000.0, 0.5, 0.02);
  EXPECT_EQ(b.remaining(), 0);
}

}  // namespace
}  // namespace chi2tomo
