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

#ifndef CHI2TOMO_CLASSICAL_HPP
#define CHI2TOMO_CLASSICAL_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "chi2tomo/common.hpp"
#include "chi2tomo/rng.hpp"

namespace chi2tomo {

/// Outcome counts from m draws.
struct SampleCounts {
  std::vector<Copies> counts;

  int dim() const { return static_cast<int>(counts.size()); }
  Copies total() const;
};

/// m_delta = m / (c ln(1/delta)).
struct ConfidenceSchedule {
  double c;
  double delta;

  double m_delta(double m) const;
};

ConfidenceSchedule default_schedule(double delta);

RealVector empirical(const SampleCounts& counts);

// q_i = (counts_i + [i in S]) / (m + |S|).
RealVector add_one_hybrid(const SampleCounts& counts, const IndexSet& s);

// Exact E[chi2(p[S] || q[S])] for the add-one estimator at index i in S.
double add_one_expected_chi2_term(double p_i, Copies m, int s);
double add_one_expected_chi2(const RealVector& p, Copies m, const IndexSet& s);

struct HighProbEstimate {
  RealVector q;
  double mass_estimate = 0.0;  // sum of q over S
  double m_delta = 0.0;
};

HighProbEstimate high_prob_empirical(const SampleCounts& counts,
                                     const ConfidenceSchedule& schedule, const IndexSet& s);

/// Guarantees of the high-probability estimator checked against the truth.
struct HighProbCheck {
  bool l2_ok = true;       // ||p - q||_2^2 <= 1 / m_delta
  bool heavy = false;      // ||p[S]||_1 >= 1 / m_delta
  bool mass_ok = true;     // relative 1.01 accuracy when heavy, else q-mass <= 1.01 / m_delta
  bool all() const { return l2_ok && mass_ok; }
};
HighProbCheck check_high_prob(const HighProbEstimate& est, const RealVector& p,
                              const IndexSet& s);

/// Options for the median-of-add-one bit estimator.
struct BitChi2Options {
  bool check_sample_size = true;
};

// Number of independent groups used for confidence delta (always odd).
int bit_chi2_groups(double delta);
Copies bit_chi2_required_samples(double eps, double delta);

// Estimates a distribution on {0, 1}: add-one on each group, then the lower
// median by the estimate of outcome 1. Samples are split into consecutive groups.
RealVector bit_chi2_median(std::span<const std::uint8_t> bits, double eps, double delta,
                           BitChi2Options opts = {});
// Same, from per-group (ones, size) counts.
RealVector bit_chi2_median_groups(const std::vector<std::pair<Copies, Copies>>& groups);

SampleCounts sample_multinomial(const RealVector& p, Copies m, Rng& rng);

}  // namespace chi2tomo

#endif  // CHI2TOMO_CLASSICAL_HPP
