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

#include "chi2tomo/classical.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "chi2tomo/constants.hpp"

namespace chi2tomo {

Copies SampleCounts::total() const {
  return std::accumulate(counts.begin(), counts.end(), Copies{0});
}

double ConfidenceSchedule::m_delta(double m) const {
  if (!(delta > 0.0 && delta < 1.0)) throw InvalidArgument("schedule: delta must lie in (0, 1)");
  return m / (c * std::log(1.0 / delta));
}

ConfidenceSchedule default_schedule(double delta) {
  return ConfidenceSchedule{constants::kScheduleC, delta};
}

RealVector empirical(const SampleCounts& counts) {
  const Copies m = counts.total();
  if (m <= 0) throw InvalidArgument("empirical: no samples");
  RealVector q(counts.dim());
  for (int i = 0; i < counts.dim(); ++i) {
    q(i) = static_cast<double>(counts.counts[i]) / static_cast<double>(m);
  }
  return q;
}

RealVector add_one_hybrid(const SampleCounts& counts, const IndexSet& s) {
  const int d = counts.dim();
  std::vector<int> bump(d, 0);
  for (int i : s) {
    if (i < 0 || i >= d) throw InvalidArgument("add_one_hybrid: index out of range");
    if (bump[i]) throw InvalidArgument("add_one_hybrid: repeated index");
    bump[i] = 1;
  }
  const double denom = static_cast<double>(counts.total()) + static_cast<double>(s.size());
  if (denom <= 0.0) throw InvalidArgument("add_one_hybrid: no samples and empty S");
  RealVector q(d);
  for (int i = 0; i < d; ++i) q(i) = (static_cast<double>(counts.counts[i]) + bump[i]) / denom;
  return q;
}

double add_one_expected_chi2_term(double p, Copies m, int s) {
  const double md = static_cast<double>(m);
  const double ms = md + s;
  const double sm1 = s - 1.0;
  return 1.0 / ms +
         (sm1 * sm1 / ((md + 1.0) * ms) - 1.0 / ms - (ms / (md + 1.0)) * std::pow(1.0 - p, md + 1.0)) *
             p;
}

double add_one_expected_chi2(const RealVector& p, Copies m, const IndexSet& s) {
  double total = 0.0;
  for (int i : s) total += add_one_expected_chi2_term(p(i), m, static_cast<int>(s.size()));
  return total;
}

HighProbEstimate high_prob_empirical(const SampleCounts& counts,
                                     const ConfidenceSchedule& schedule, const IndexSet& s) {
  HighProbEstimate out;
  out.q = empirical(counts);
  out.m_delta = schedule.m_delta(static_cast<double>(counts.total()));
  for (int i : s) {
    if (i < 0 || i >= counts.dim()) throw InvalidArgument("high_prob_empirical: bad index");
    out.mass_estimate += out.q(i);
  }
  return out;
}

HighProbCheck check_high_prob(const HighProbEstimate& est, const RealVector& p,
                              const IndexSet& s) {
  HighProbCheck c;
  const double inv = 1.0 / est.m_delta;
  c.l2_ok = (p - est.q).squaredNorm() <= inv;
  double mass = 0.0;
  for (int i : s) mass += p(i);
  c.heavy = mass >= inv;
  if (c.heavy) {
    c.mass_ok = est.mass_estimate <= 1.01 * mass && mass <= 1.01 * est.mass_estimate;
  } else {
    c.mass_ok = est.mass_estimate <= 1.01 * inv;
  }
  return c;
}

int bit_chi2_groups(double delta) {
  if (!(delta > 0.0 && delta < 1.0)) throw InvalidArgument("bit_chi2: delta must lie in (0, 1)");
  int g = static_cast<int>(std::ceil(constants::kBitGroupsPerLog * std::log(1.0 / delta)));
  g = std::max(g, 1);
  if (g % 2 == 0) ++g;
  return g;
}

Copies bit_chi2_required_samples(double eps, double delta) {
  if (!(eps > 0.0)) throw InvalidArgument("bit_chi2: eps must be positive");
  if (!(delta > 0.0 && delta < 1.0)) throw InvalidArgument("bit_chi2: delta must lie in (0, 1)");
  return static_cast<Copies>(std::ceil(constants::kBitChi2C * std::log(1.0 / delta) / eps));
}

RealVector bit_chi2_median_groups(const std::vector<std::pair<Copies, Copies>>& groups) {
  if (groups.empty()) throw InvalidArgument("bit_chi2: no groups");
  std::vector<double> est;
  est.reserve(groups.size());
  for (auto [ones, size] : groups) {
    if (ones < 0 || ones > size) throw InvalidArgument("bit_chi2: inconsistent group counts");
    est.push_back((static_cast<double>(ones) + 1.0) / (static_cast<double>(size) + 2.0));
  }
  std::sort(est.begin(), est.end());
  double q1 = est[(est.size() - 1) / 2];
  RealVector q(2);
  q << 1.0 - q1, q1;
  return q;
}

RealVector bit_chi2_median(std::span<const std::uint8_t> bits, double eps, double delta,
                           BitChi2Options opts) {
  const Copies n = static_cast<Copies>(bits.size());
  if (opts.check_sample_size) {
    Copies need = bit_chi2_required_samples(eps, delta);
    if (n < need) {
      throw InsufficientSamples("bit_chi2: " + std::to_string(n) + " samples, need " +
                                std::to_string(need));
    }
  }
  const Copies g = std::min<Copies>(bit_chi2_groups(delta), std::max<Copies>(n, 1));
  std::vector<std::pair<Copies, Copies>> groups;
  Copies pos = 0;
  for (Copies k = 0; k < g; ++k) {
    Copies size = n / g + (k < n % g ? 1 : 0);
    Copies ones = 0;
    for (Copies t = 0; t < size; ++t) ones += bits[pos + t] ? 1 : 0;
    pos += size;
    groups.emplace_back(ones, size);
  }
  return bit_chi2_median_groups(groups);
}

SampleCounts sample_multinomial(const RealVector& p, Copies m, Rng& rng) {
  if (m < 0) throw InvalidArgument("sample_multinomial: negative count");
  SampleCounts out;
  out.counts.assign(p.size(), 0);
  double rest = 0.0;
  for (Index i = 0; i < p.size(); ++i) {
    if (p(i) < -tol::kProb || std::isnan(p(i))) {
      throw InvalidArgument("sample_multinomial: invalid probability");
    }
    rest += std::max(0.0, p(i));
  }
  Index last = -1;
  for (Index i = 0; i < p.size(); ++i)
    if (p(i) > 0.0) last = i;
  if (last < 0) {
    if (m > 0) throw InvalidArgument("sample_multinomial: zero probability vector");
    return out;
  }
  Copies left = m;
  for (Index i = 0; i < p.size() && left > 0; ++i) {
    double pi = std::max(0.0, p(i));
    if (i == last) {
      out.counts[i] = left;
      break;
    }
    double frac = rest > 0.0 ? std::clamp(pi / rest, 0.0, 1.0) : 0.0;
    Copies k = binomial(rng, left, frac);
    out.counts[i] = k;
    left -= k;
    rest -= pi;
  }
  return out;
}

}  // namespace chi2tomo
