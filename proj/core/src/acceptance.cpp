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

#include "chi2tomo/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <mutex>
#include <sstream>

#include "chi2tomo/central.hpp"
#include "chi2tomo/classical.hpp"
#include "chi2tomo/constants.hpp"
#include "chi2tomo/divergences.hpp"
#include "chi2tomo/frobenius.hpp"
#include "chi2tomo/harness.hpp"
#include "chi2tomo/linalg.hpp"
#include "chi2tomo/mi_testing.hpp"
#include "chi2tomo/qubit.hpp"

namespace chi2tomo {

namespace {

// Pinned tolerances.
constexpr double kChainSlack = 1e-9;
constexpr double kRelTol = 1e-8;
constexpr double kGentleTol = 1e-9;
constexpr double kSlopeTol = 0.15;
constexpr double kPassRate = 0.9;
constexpr double kHalvingRatio = 2.5;
constexpr double kQubitDelta = 0.05;

std::string fmt(const char* spec, double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), spec, x);
  return buf;
}

std::string g6(double x) { return fmt("%.6g", x); }

RealVector random_distribution(int d, Rng& rng, double zero_fraction = 0.0) {
  RealVector p(d);
  for (int i = 0; i < d; ++i) {
    p(i) = uniform01(rng) < zero_fraction ? 0.0 : -std::log(1.0 - uniform01(rng));
  }
  if (p.sum() == 0.0) p(0) = 1.0;
  return p / p.sum();
}

int random_int(Rng& rng, int lo, int hi) {
  std::uniform_int_distribution<int> dist(lo, hi);
  return dist(rng);
}

bool le(double a, double b) { return a <= b + kChainSlack; }

CriterionResult inequality_chains(const AcceptanceOptions& opts) {
  CriterionResult res{1, "inequality chains", false, "", 0.0};
  constexpr int kPairs = 10000;
  int classical_bad = 0;
  int quantum_bad = 0;
  for (int t = 0; t < kPairs; ++t) {
    Rng rng = derive_rng(opts.seed + 1, t);
    RealVector p = random_distribution(64, rng, t % 10 == 0 ? 0.5 : 0.0);
    RealVector q = random_distribution(64, rng);
    const double h2 = hellinger_sq(p, q);
    const double tvd = tv(p, q);
    const double k = kl(p, q);
    const double c = chi2(p, q);
    const double dinf = max_rel_entropy(p, q);
    bool ok = le(0.5 * h2, tvd) && le(tvd, std::sqrt(h2)) && le(std::sqrt(h2), std::sqrt(k)) &&
              le(std::sqrt(k), std::sqrt(c)) && le(k, (2.0 + dinf) * h2);
    if (!ok) ++classical_bad;

    Matrix rho = random_state(8, random_int(rng, 1, 8), rng).matrix();
    Matrix sigma = random_state(8, 8, rng).matrix();
    const double hq = qhellinger_sq(rho, sigma);
    const double dtr = trace_distance(rho, sigma);
    const double b2 = bures_sq(rho, sigma);
    const double qk = qkl(rho, sigma);
    const double qc = bures_chi2(rho, sigma);
    const double qinf = q_dinf(rho, sigma);
    ok = le(0.5 * hq, dtr) && le(dtr, std::sqrt(b2)) && le(std::sqrt(b2), std::sqrt(qk)) &&
         le(std::sqrt(qk), std::sqrt(qc)) && le(b2, hq) && le(hq, 2.0 * b2) &&
         le(qk, (2.0 + qinf) * hq);
    if (!ok) ++quantum_bad;
  }
  res.pass = classical_bad == 0 && quantum_bad == 0;
  res.measured = "violations classical=" + std::to_string(classical_bad) + "/" +
                 std::to_string(kPairs) + " quantum=" + std::to_string(quantum_bad) + "/" +
                 std::to_string(kPairs) + " (slack 1e-9)";
  return res;
}

// tr rho ln rho - tr rho ln sigma through matrix logarithms.
double qkl_matrix_log(const Matrix& rho, const Matrix& sigma) {
  auto safe_log = [](double x) { return x > 0.0 ? std::log(x) : 0.0; };
  Matrix lr = spectral_apply(rho, safe_log);
  Matrix ls = spectral_apply(sigma, [](double x) { return std::log(x); });
  return (rho * lr).trace().real() - (rho * ls).trace().real();
}

double rel_err(double a, double b) {
  if (a == b) return 0.0;
  return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-300});
}

CriterionResult quantum_to_classical(const AcceptanceOptions& opts) {
  CriterionResult res{2, "quantum-to-classical reduction", false, "", 0.0};
  double worst_kl = 0.0;
  double worst_half = 0.0;
  double worst_two = 0.0;
  double worst_inf = 0.0;
  for (int t = 0; t < 100; ++t) {
    Rng rng = derive_rng(opts.seed + 2, t);
    Matrix rho = random_state(8, 8, rng).matrix();
    Matrix sigma = random_state(8, 8, rng).matrix();
    PQPair pq = pq_pair(rho, sigma);
    worst_kl = std::max(worst_kl, rel_err(qkl_matrix_log(rho, sigma), kl(pq.p, pq.q)));
    worst_kl = std::max(worst_kl, rel_err(qkl(rho, sigma), kl(pq.p, pq.q)));
    worst_half = std::max(worst_half, rel_err(qrenyi(0.5, rho, sigma), renyi(0.5, pq.p, pq.q)));
    worst_two = std::max(worst_two, rel_err(qrenyi(2.0, rho, sigma), renyi(2.0, pq.p, pq.q)));
    worst_inf = std::max(worst_inf, rel_err(q_dinf(rho, sigma), max_rel_entropy(pq.p, pq.q)));
  }
  res.pass = worst_kl <= kRelTol && worst_half <= kRelTol && worst_two <= kRelTol &&
             worst_inf <= kRelTol;
  res.measured = "max rel err kl=" + g6(worst_kl) + " renyi_1/2=" + g6(worst_half) +
                 " renyi_2=" + g6(worst_two) + " renyi_inf=" + g6(worst_inf) + " (tol 1e-8)";
  return res;
}

CriterionResult reverse_pinsker(const AcceptanceOptions&) {
  CriterionResult res{3, "elementary reverse-Pinsker inequality", false, "", 0.0};
  constexpr int kPoints = 10000;
  int bad = 0;
  double min_gap = kInf;
  for (int k = 0; k < kPoints; ++k) {
    double r = std::pow(10.0, -6.0 + 12.0 * k / (kPoints - 1));
    double f = r * std::log(r) - (r - 1.0);
    double g = (std::sqrt(r) - 1.0) * (std::sqrt(r) - 1.0);
    double h = 2.0 + std::max(std::log(r), 0.0);
    if (f > h * g) ++bad;
    min_gap = std::min(min_gap, h * g - f);
  }
  res.pass = bad == 0;
  res.measured = "violations=" + std::to_string(bad) + "/" + std::to_string(kPoints) +
                 " min(hg-f)=" + g6(min_gap);
  return res;
}

CriterionResult add_one_mean(const AcceptanceOptions& opts) {
  CriterionResult res{4, "add-one expected chi-squared", false, "", 0.0};
  constexpr int d = 10;
  constexpr Copies m = 100;
  constexpr int kTrials = 100000;
  const RealVector p = RealVector::Constant(d, 1.0 / d);
  const IndexSet all = prefix(d);
  Rng rng = derive_rng(opts.seed + 4, 0);
  double s = 0.0;
  double s2 = 0.0;
  for (int t = 0; t < kTrials; ++t) {
    double c = chi2(p, add_one_hybrid(sample_multinomial(p, m, rng), all));
    s += c;
    s2 += c * c;
  }
  const double mean = s / kTrials;
  const double se = std::sqrt(std::max(0.0, s2 / kTrials - mean * mean) / (kTrials - 1));
  const double bound = (d - 1.0) / (m + 1.0);
  res.pass = mean <= bound + 3.0 * se;
  res.measured = "mean=" + g6(mean) + " se=" + g6(se) + " bound=" + g6(bound);
  return res;
}

CriterionResult simple_frobenius_scaling(const AcceptanceOptions& opts) {
  CriterionResult res{5, "simple Frobenius estimator scaling", false, "", 0.0};
  constexpr int d = 4;
  constexpr int kTrials = 200;
  const std::vector<Copies> ms = {1000, 10000, 100000};
  std::vector<double> xs;
  std::vector<double> means;
  bool level_ok = true;
  std::string levels;
  for (std::size_t g = 0; g < ms.size(); ++g) {
    double s = 0.0;
    for (int t = 0; t < kTrials; ++t) {
      Rng rng = derive_rng(opts.seed + 5, (g << 32) | t);
      Matrix rho = random_state(d, d, rng).matrix();
      StateAccess access(rho, ms[g] * simple_frobenius_settings(d), fork(rng));
      s += (simple_frobenius(access, ms[g]) - rho).squaredNorm();
    }
    const double mean = s / kTrials;
    const double level = constants::kAcc * d * d / static_cast<double>(ms[g]);
    level_ok = level_ok && mean <= level;
    xs.push_back(static_cast<double>(ms[g]));
    means.push_back(mean);
    levels += " m=" + std::to_string(ms[g]) + ":" + g6(mean) + "<=" + g6(level);
  }
  ScalingFit fit = fit_loglog(xs, means);
  res.pass = level_ok && std::abs(fit.slope + 1.0) <= kSlopeTol;
  res.measured = "slope=" + fmt("%.4f", fit.slope) + " (-1 +/- 0.15);" + levels;
  return res;
}

double qubit_failure_rate(std::uint64_t seed, double eps, Copies n, int trials, bool check) {
  int fail = 0;
  for (int t = 0; t < trials; ++t) {
    Rng rng = derive_rng(seed, t);
    Matrix rho = random_state(2, 2, rng).matrix();
    StateAccess access(rho, n, fork(rng));
    QubitOptions o;
    o.copies = n;
    o.check_sample_size = check;
    QubitResult q = qubit_tomography(access, eps, kQubitDelta, o);
    Matrix frame = q.estimate.basis * rho * q.estimate.basis.adjoint();
    if (bures_chi2_diag(frame, q.estimate.values) > eps) ++fail;
  }
  return static_cast<double>(fail) / trials;
}

// Smallest n (within 1%) whose failure rate is at most delta, common random numbers across n.
Copies qubit_required_copies(std::uint64_t seed, double eps, int trials) {
  double lo = 8.0;
  double hi = static_cast<double>(qubit_copies(eps, kQubitDelta));
  while (qubit_failure_rate(seed, eps, static_cast<Copies>(hi), trials, false) > kQubitDelta) hi *= 2.0;
  while (hi / lo > 1.01) {
    double mid = std::sqrt(lo * hi);
    if (qubit_failure_rate(seed, eps, static_cast<Copies>(mid), trials, false) <= kQubitDelta) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return static_cast<Copies>(hi);
}

CriterionResult qubit_pipeline(const AcceptanceOptions& opts) {
  CriterionResult res{6, "single-qubit chi-squared tomography", false, "", 0.0};
  constexpr int kTrials = 2000;
  const std::vector<double> eps = {0.1, 0.03};
  bool rate_ok = true;
  std::vector<double> required;
  std::string text;
  for (double e : eps) {
    const Copies n = qubit_copies(e, kQubitDelta);
    const double rate = qubit_failure_rate(opts.seed + 6, e, n, kTrials, true);
    rate_ok = rate_ok && rate <= kQubitDelta;
    const Copies need = qubit_required_copies(opts.seed + 6, e, kTrials);
    required.push_back(static_cast<double>(need));
    text += " eps=" + g6(e) + ": n=" + std::to_string(n) + " fail=" + g6(rate) +
            " required_n=" + std::to_string(need) + ";";
  }
  ScalingFit fit = fit_loglog(eps, required);
  res.pass = rate_ok && std::abs(fit.slope + 1.0) <= kSlopeTol;
  res.measured = "c''=" + g6(constants::kQubitC) + text + " slope=" + fmt("%.4f", fit.slope) +
                 " (-1 +/- 0.15)";
  return res;
}

struct CentralTrial {
  int r = 0;
  double eps_final = 0.0;
  Copies total = 0;
  double chi2 = 0.0;
  bool diag_ok = false;
  bool kl_checked = false;
  bool kl_ok = true;
};

struct CentralRuns {
  std::vector<CentralTrial> trials;
  std::map<std::pair<int, double>, Copies> budget;
};

CentralRuns central_runs(const AcceptanceOptions& opts) {
  static std::mutex mu;
  static std::map<std::uint64_t, CentralRuns> cache;
  std::lock_guard<std::mutex> lock(mu);
  if (auto it = cache.find(opts.seed); it != cache.end()) return it->second;

  constexpr int d = 8;
  CentralRuns runs;
  const FrobeniusLearner base(EstimatorSpec::parse("oracle:f=d"), d, 1);
  int cell = 0;
  for (int r : {1, 2, 8}) {
    for (double eps : {0.2, 0.1}) {
      const CentralParams params = CentralParams::for_chi2_target(d, r, d, eps);
      runs.budget[{r, eps}] = params.total;
      for (int t = 0; t < 100; ++t) {
        Rng rng = derive_rng(opts.seed + 7, (static_cast<std::uint64_t>(cell) << 32) | t);
        Matrix rho = random_state(d, r, rng).matrix();
        StateAccess access(rho, params.total, fork(rng));
        CentralOutput out = central_estimate(base, access, params);
        CentralTrial tr;
        tr.r = r;
        tr.eps_final = eps;
        tr.total = access.budget().consumed();
        Chi2Estimate est = to_chi2_estimate(out, default_eta(params));
        tr.chi2 = bures_chi2_diag(out.frame_of(rho), est.q);
        tr.diag_ok = diagnose(out, rho, params).all();
        DensityMatrix hat = to_infidelity_estimate(out);
        const double infid = 1.0 - fidelity(rho, hat.matrix());
        // The pipeline's own eps, and the tightest eps the realized infidelity certifies.
        for (double e : {std::min(params.eps, 0.5), infid * (1.0 + 1e-9) + 1e-15}) {
          if (!(infid <= e && e <= 0.5)) continue;
          tr.kl_checked = true;
          double k = qkl(rho, to_kl_estimate(hat, e).matrix());
          if (!(k <= kl_upgrade_bound(d, e))) tr.kl_ok = false;
        }
        runs.trials.push_back(tr);
      }
      ++cell;
    }
  }
  cache[opts.seed] = runs;
  return runs;
}

CriterionResult central_pipeline(const AcceptanceOptions& opts) {
  CriterionResult res{7, "staged chi-squared learner, oracle f=d", false, "", 0.0};
  CentralRuns runs = central_runs(opts);
  bool ok = true;
  std::string text;
  for (int r : {1, 2, 8}) {
    text += " r=" + std::to_string(r) + ":";
    for (double eps : {0.2, 0.1}) {
      int pass = 0;
      int n = 0;
      for (const auto& t : runs.trials) {
        if (t.r == r && t.eps_final == eps) {
          ++n;
          if (t.chi2 <= eps) ++pass;
        }
      }
      double rate = static_cast<double>(pass) / n;
      ok = ok && rate >= kPassRate;
      text += " pass(" + g6(eps) + ")=" + g6(rate);
    }
    double ratio = static_cast<double>(runs.budget[{r, 0.1}]) / runs.budget[{r, 0.2}];
    ok = ok && ratio <= kHalvingRatio;
    text += " M(0.2)=" + std::to_string(runs.budget[{r, 0.2}]) + " ratio=" + fmt("%.3f", ratio) + ";";
  }
  res.pass = ok;
  res.measured = "need pass>=0.9, ratio<=2.5;" + text;
  return res;
}

CriterionResult central_conclusions(const AcceptanceOptions& opts) {
  CriterionResult res{8, "staged learner conclusions (a)-(d)", false, "", 0.0};
  CentralRuns runs = central_runs(opts);
  int bad = 0;
  for (const auto& t : runs.trials) bad += t.diag_ok ? 0 : 1;
  const double rate = static_cast<double>(bad) / runs.trials.size();
  res.pass = rate <= 1.0 - kPassRate;
  res.measured = "failures=" + std::to_string(bad) + "/" + std::to_string(runs.trials.size()) +
                 " rate=" + g6(rate) + " (<= 0.1, K_acc=" + g6(constants::kAcc) + ")";
  return res;
}

CriterionResult kl_upgrade(const AcceptanceOptions& opts) {
  CriterionResult res{9, "relative-entropy upgrade by depolarizing", false, "", 0.0};
  CentralRuns runs = central_runs(opts);
  int checked = 0;
  int bad = 0;
  for (const auto& t : runs.trials) {
    checked += t.kl_checked ? 1 : 0;
    bad += t.kl_ok ? 0 : 1;
  }
  res.pass = bad == 0 && checked > 0;
  res.measured = "certified trials=" + std::to_string(checked) + " violations=" + std::to_string(bad);
  return res;
}

CriterionResult gentle_measurement(const AcceptanceOptions& opts) {
  CriterionResult res{10, "gentle measurement identity", false, "", 0.0};
  double worst = 0.0;
  for (int t = 0; t < 1000; ++t) {
    Rng rng = derive_rng(opts.seed + 10, t);
    DensityMatrix rho = random_state(8, random_int(rng, 1, 8), rng);
    IndexSet s;
    while (s.empty()) {
      for (int i = 0; i < 8; ++i) {
        if (uniform01(rng) < 0.5) s.push_back(i);
      }
    }
    const double tau = trace_real(submatrix(rho.matrix(), s));
    const Matrix cond = zero_extend(restrict_to(rho, s).matrix(), s, 8);
    const double f = fidelity(rho.matrix(), cond);
    worst = std::max(worst, std::abs(tau - f * f));
  }
  res.pass = worst <= kGentleTol;
  res.measured = "max |tr rho[R] - F^2|=" + g6(worst) + " (tol 1e-9)";
  return res;
}

CriterionResult hellinger_mi(const AcceptanceOptions& opts) {
  CriterionResult res{11, "Hellinger bound on mutual information", false, "", 0.0};
  const std::vector<double> grid = {1e-3, 3e-3, 1e-2, 3e-2, 0.1, 0.2, 0.3, 0.5};
  int continuity_bad = 0;
  int depolarize_bad = 0;
  int bound_bad = 0;
  double max_ratio = 0.0;
  for (int t = 0; t < 1000; ++t) {
    Rng rng = derive_rng(opts.seed + 11, t);
    const int d = t % 2 == 0 ? 2 : 3;
    Matrix rho = random_state(d * d, random_int(rng, 1, d * d), rng).matrix();
    for (double e : grid) {
      HellingerMiGap g = hellinger_mi_gap_at(rho, e);
      continuity_bad += g.continuity_ok ? 0 : 1;
      depolarize_bad += g.depolarize_ok ? 0 : 1;
    }
    HellingerMiGap g = hellinger_mi_gap(rho);
    if (!g.all()) ++bound_bad;
    if (g.bound > 0.0) max_ratio = std::max(max_ratio, g.mi / g.bound);
  }
  res.pass = continuity_bad == 0 && depolarize_bad == 0 && bound_bad == 0;
  res.measured = "violations continuity=" + std::to_string(continuity_bad) +
                 " depolarize=" + std::to_string(depolarize_bad) +
                 " assembled=" + std::to_string(bound_bad) + " max I/bound=" + g6(max_ratio);
  return res;
}

double pass_rate(const std::vector<TrialRecord>& recs, const std::string& name) {
  int pass = 0;
  int n = 0;
  for (const auto& r : recs) {
    for (const auto& g : r.guarantees) {
      if (g.name == name) {
        ++n;
        pass += g.pass ? 1 : 0;
      }
    }
  }
  return n > 0 ? static_cast<double>(pass) / n : 0.0;
}

Scenario mi_scenario(const std::string& id, const std::string& family, const std::string& est,
                     int d, int trials, std::uint64_t seed) {
  Scenario s;
  s.id = id;
  s.d = d;
  s.r = d;
  s.state_family = family;
  s.estimator = est;
  s.target = "mi";
  s.eps_grid = {0.5};
  s.trials = trials;
  s.master_seed = seed;
  return s;
}

CriterionResult classical_mi(const AcceptanceOptions& opts) {
  CriterionResult res{12, "classical mutual-information tester", false, "", 0.0};
  auto prod = run_scenario(mi_scenario("mi-c-prod", "bipartite:product", "classical", 8, 200,
                                       opts.seed + 12), opts.workers);
  auto corr = run_scenario(mi_scenario("mi-c-corr", "bipartite:correlated", "classical", 8, 200,
                                       opts.seed + 13), opts.workers);
  const double a = pass_rate(prod, "verdict");
  const double b = pass_rate(corr, "verdict");
  const ClassicalMiPlan plan = classical_mi_plan(8, 0.5);
  res.pass = a >= kPassRate && b >= kPassRate && pass_rate(prod, "budget") == 1.0 &&
             pass_rate(corr, "budget") == 1.0;
  res.measured = "product accept=" + g6(a) + " correlated reject=" + g6(b) +
                 " (>= 0.9) samples=" + std::to_string(plan.total()) + " eps'=" + g6(plan.eps_prime);
  return res;
}

CriterionResult quantum_mi(const AcceptanceOptions& opts) {
  CriterionResult res{13, "quantum mutual-information tester", false, "", 0.0};
  auto prod = run_scenario(mi_scenario("mi-q-prod", "bipartite:product", "oracle:f=d", 4, 100,
                                       opts.seed + 14), opts.workers);
  auto corr = run_scenario(mi_scenario("mi-q-corr", "bipartite:correlated", "oracle:f=d", 4, 100,
                                       opts.seed + 15), opts.workers);
  const double a = pass_rate(prod, "verdict");
  const double b = pass_rate(corr, "verdict");
  std::vector<TrialRecord> all = prod;
  all.insert(all.end(), corr.begin(), corr.end());
  const double learn = pass_rate(all, "learn_product");
  const double amgm = pass_rate(all, "off_off_am_gm");
  res.pass = a >= kPassRate && b >= kPassRate && learn >= kPassRate && amgm == 1.0 &&
             pass_rate(all, "budget") == 1.0;
  res.measured = "product accept=" + g6(a) + " correlated reject=" + g6(b) +
                 " learned chi2<=eps'=" + g6(learn) + " (>= 0.9) am-gm=" + g6(amgm);
  return res;
}

CriterionResult determinism(const AcceptanceOptions& opts) {
  CriterionResult res{14, "seeded determinism", false, "", 0.0};
  std::vector<Scenario> scenarios;
  Scenario a;
  a.id = "det-central";
  a.d = 4;
  a.r = 2;
  a.state_family = "rank_r_random";
  a.estimator = "oracle:f=d";
  a.target = "chi2";
  a.eps_grid = {0.2, 0.1};
  a.trials = 10;
  a.master_seed = opts.seed + 16;
  scenarios.push_back(a);
  Scenario b = a;
  b.id = "det-simple";
  b.target = "frobenius";
  b.estimator = "simple";
  b.n_grid = {700, 7000};
  scenarios.push_back(b);
  scenarios.push_back(mi_scenario("det-mi", "bipartite:correlated", "classical", 4, 5,
                                  opts.seed + 17));
  bool same = true;
  bool seed_matters = true;
  for (const auto& s : scenarios) {
    const std::string first = records_to_csv(run_scenario(s, 1));
    const std::string second = records_to_csv(run_scenario(s, std::max(2, opts.workers)));
    same = same && first == second;
    Scenario other = s;
    other.master_seed += 1;
    seed_matters = seed_matters && records_to_csv(run_scenario(other, 1)) != first;
  }
  res.pass = same && seed_matters;
  res.measured = std::string("identical reruns=") + (same ? "yes" : "no") +
                 " seed changes output=" + (seed_matters ? "yes" : "no");
  return res;
}

}  // namespace

CriterionResult run_criterion(int id, const AcceptanceOptions& opts) {
  static const std::vector<std::function<CriterionResult(const AcceptanceOptions&)>> table = {
      inequality_chains, quantum_to_classical, reverse_pinsker, add_one_mean,
      simple_frobenius_scaling, qubit_pipeline, central_pipeline, central_conclusions,
      kl_upgrade, gentle_measurement, hellinger_mi, classical_mi, quantum_mi, determinism};
  if (id < 1 || id > kCriterionCount) throw InvalidArgument("run_criterion: id must lie in [1, 14]");
  auto start = std::chrono::steady_clock::now();
  CriterionResult r;
  try {
    r = table[id - 1](opts);
  } catch (const std::exception& e) {
    r.id = id;
    r.name = "criterion " + std::to_string(id);
    r.pass = false;
    r.measured = std::string("error: ") + e.what();
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

std::vector<CriterionResult> acceptance_suite(const AcceptanceOptions& opts, std::ostream* log) {
  std::vector<CriterionResult> out;
  for (int id = 1; id <= kCriterionCount; ++id) {
    out.push_back(run_criterion(id, opts));
    if (log) *log << format_result(out.back()) << std::endl;
  }
  return out;
}

std::string format_result(const CriterionResult& r) {
  char head[32];
  std::snprintf(head, sizeof(head), "[%s] %02d ", r.pass ? "PASS" : "FAIL", r.id);
  return std::string(head) + r.name + ": " + r.measured + " (" + fmt("%.1f", r.seconds) + " s)";
}

}  // namespace chi2tomo
