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

// Measures the empirical requirements behind the frozen constants and prints
// them next to the values in constants.hpp.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <vector>

#include <CLI11.hpp>

#include "chi2tomo/central.hpp"
#include "chi2tomo/classical.hpp"
#include "chi2tomo/constants.hpp"
#include "chi2tomo/divergences.hpp"
#include "chi2tomo/frobenius.hpp"
#include "chi2tomo/linalg.hpp"
#include "chi2tomo/mi_testing.hpp"
#include "chi2tomo/qubit.hpp"

namespace {

using namespace chi2tomo;

constexpr double kDelta = 0.05;

// Smallest n (within 2%) with fail(n) <= target, assuming rough monotonicity.
Copies smallest_n(const std::function<double(Copies)>& fail, double target, Copies lo, Copies hi) {
  while (fail(hi) > target) hi *= 2;
  double a = static_cast<double>(lo);
  double b = static_cast<double>(hi);
  while (b / a > 1.02) {
    double mid = std::sqrt(a * b);
    (fail(static_cast<Copies>(mid)) <= target ? b : a) = mid;
  }
  return static_cast<Copies>(b);
}

double bit_failure(double p, double eps, Copies n, int trials, std::uint64_t seed) {
  const RealVector truth = (RealVector(2) << 1.0 - p, p).finished();
  const int g = static_cast<int>(std::min<Copies>(bit_chi2_groups(kDelta), n));
  int fail = 0;
  for (int t = 0; t < trials; ++t) {
    Rng rng = derive_rng(seed, t);
    std::vector<std::pair<Copies, Copies>> groups;
    for (int k = 0; k < g; ++k) {
      Copies size = n / g + (k < n % g ? 1 : 0);
      groups.emplace_back(binomial(rng, size, p), size);
    }
    if (chi2(truth, bit_chi2_median_groups(groups)) > eps) ++fail;
  }
  return static_cast<double>(fail) / trials;
}

double qubit_failure(bool pure, double eps, Copies n, int trials, std::uint64_t seed) {
  int fail = 0;
  for (int t = 0; t < trials; ++t) {
    Rng rng = derive_rng(seed, t);
    Matrix rho = random_state(2, pure ? 1 : 2, rng).matrix();
    StateAccess access(rho, n, fork(rng));
    QubitOptions o;
    o.copies = n;
    o.check_sample_size = false;
    QubitResult q = qubit_tomography(access, eps, kDelta, o);
    Matrix frame = q.estimate.basis * rho * q.estimate.basis.adjoint();
    if (bures_chi2_diag(frame, q.estimate.values) > eps) ++fail;
  }
  return static_cast<double>(fail) / trials;
}

double quantile(std::vector<double> v, double q) {
  std::sort(v.begin(), v.end());
  return v[static_cast<std::size_t>(std::ceil(q * v.size())) - 1];
}

}  // namespace

int main(int argc, char** argv) {
  std::setvbuf(stdout, nullptr, _IOLBF, 0);
  CLI::App app{"Measure the empirical requirements behind the frozen constants"};
  int trials = 2000;
  std::uint64_t seed = 7;
  app.add_option("--trials", trials, "Monte Carlo trials per point")->check(CLI::PositiveNumber);
  app.add_option("--seed", seed, "master seed");
  CLI11_PARSE(app, argc, argv);
  const double log_inv = std::log(1.0 / kDelta);

  double c_bit = 0.0;
  for (double eps : {0.1, 0.03}) {
    for (double p : {0.0, 0.001, 0.01, 0.05, 0.1, 0.25, 0.5}) {
      Copies n = smallest_n([&](Copies k) { return bit_failure(p, eps, k, trials, seed); },
                            kDelta, 4, 64);
      c_bit = std::max(c_bit, n * eps / log_inv);
    }
  }
  std::printf("bit estimator c'      empirical %.2f   frozen %.2f\n", c_bit, constants::kBitChi2C);

  double c_qubit = 0.0;
  for (double eps : {0.1, 0.03}) {
    for (bool pure : {false, true}) {
      Copies n = smallest_n([&](Copies k) { return qubit_failure(pure, eps, k, trials, seed + 1); },
                            kDelta, 8, 64);
      c_qubit = std::max(c_qubit, n * eps / log_inv);
    }
  }
  const double c_qubit_floor = 8.0 * constants::kBitChi2C * std::log(2.0 / kDelta) / log_inv;
  std::printf("qubit c''             empirical %.2f   phase-two floor %.2f   frozen %.2f\n",
              c_qubit, c_qubit_floor, constants::kQubitC);

  {
    constexpr int d = 8;
    constexpr int r = 2;
    const FrobeniusLearner base(EstimatorSpec::parse("oracle:f=d"), d, r);
    std::vector<double> worst;
    for (double eps : {0.2, 0.1}) {
      const CentralParams params = CentralParams::for_chi2_target(d, r, d, eps);
      for (int t = 0; t < 200; ++t) {
        Rng rng = derive_rng(seed + 2, t + (eps < 0.15 ? 1000 : 0));
        Matrix rho = random_state(d, r, rng).matrix();
        StateAccess access(rho, params.total, fork(rng));
        CentralOutput out = central_estimate(base, access, params);
        CentralDiagnostics g = diagnose(out, rho, params);
        worst.push_back(std::max({g.r_size / (r * params.l_max),
                                  std::max(g.tau, g.eps_prime) / params.eps_tilde,
                                  g.frob_l / (params.eps_tilde * params.eps_tilde / r),
                                  g.d_minus_l / params.eps}));
      }
    }
    std::printf("K_acc (d=8, r=2)      q90 %.3f   max %.3f   frozen %.2f\n", quantile(worst, 0.9),
                quantile(worst, 1.0), constants::kAcc);
  }

  {
    constexpr int d = 8;
    double c1 = 0.0;
    for (double eps : {0.1, 0.01}) {
      auto fail = [&](Copies n) {
        const RealVector u = RealVector::Constant(d, 1.0 / d);
        const RealVector joint = outer_product(u, u);
        int bad = 0;
        for (int t = 0; t < trials; ++t) {
          Rng rng = derive_rng(seed + 3, t);
          SampleCounts a = sample_multinomial(u, n, rng);
          SampleCounts b = sample_multinomial(u, n, rng);
          if (chi2(joint, learn_product_classical(a, b).joint()) > eps) ++bad;
        }
        return static_cast<double>(bad) / trials;
      };
      Copies n = smallest_n(fail, 0.01, 4, 64);
      c1 = std::max(c1, n * (eps / 3.0) / d);
    }
    std::printf("marginal learning C1  empirical %.2f   frozen %.2f\n", c1, constants::kLearnC1);
  }

  {
    constexpr int bins = 64;
    double c2 = 0.0;
    for (double eps : {0.05, 0.01}) {
      // Alternative at squared Hellinger distance 2 eps from uniform: half the bins raised.
      const RealVector q = RealVector::Constant(bins, 1.0 / bins);
      double lo = 0.0;
      double hi = 1.0;
      auto alt = [&](double a) {
        RealVector p = q;
        for (int i = 0; i < bins; ++i) p(i) *= (i % 2 == 0) ? 1.0 + a : 1.0 - a;
        return p;
      };
      for (int it = 0; it < 60; ++it) {
        double mid = 0.5 * (lo + hi);
        (hellinger_sq(alt(mid), q) < 2.0 * eps ? lo : hi) = mid;
      }
      const RealVector p = alt(hi);
      const int tests = std::min(trials, 400);
      auto fail = [&](Copies n) {
        int bad = 0;
        for (int t = 0; t < tests; ++t) {
          Rng rng = derive_rng(seed + 4, t);
          if (identity_tester_classical(q, sample_multinomial(p, n, rng), eps, rng, 2000).accept) ++bad;
        }
        return static_cast<double>(bad) / tests;
      };
      Copies n = smallest_n(fail, 0.01, 4, 64);
      c2 = std::max(c2, n * eps / std::sqrt(bins));
    }
    std::printf("identity tester C2    empirical %.2f   frozen %.2f\n", c2, constants::kIdentityC2);
  }
  return 0;
}
