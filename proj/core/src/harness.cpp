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

#include "chi2tomo/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <map>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "chi2tomo/central.hpp"
#include "chi2tomo/constants.hpp"
#include "chi2tomo/divergences.hpp"
#include "chi2tomo/frobenius.hpp"
#include "chi2tomo/io.hpp"
#include "chi2tomo/mi_testing.hpp"
#include "chi2tomo/qubit.hpp"

namespace chi2tomo {

using nlohmann::json;

namespace {

const std::set<std::string> kTargets = {"frobenius", "infidelity", "chi2", "kl", "mi"};
const std::set<std::string> kFamilies = {"pure", "rank_r_random", "maximally_mixed",
                                         "geometric_spectrum", "bipartite:product",
                                         "bipartite:correlated"};
const std::set<std::string> kKeys = {"id", "d", "r", "state_family", "estimator", "target",
                                     "eps", "n", "trials", "master_seed"};

int get_int(const json& j, const std::string& key) {
  if (!j.contains(key)) throw ConfigError(key, "missing");
  if (!j[key].is_number_integer()) throw ConfigError(key, "expected an integer");
  auto v = j[key].get<long long>();
  if (v < std::numeric_limits<int>::min() || v > std::numeric_limits<int>::max()) {
    throw ConfigError(key, "out of range");
  }
  return static_cast<int>(v);
}

std::string get_string(const json& j, const std::string& key) {
  if (!j.contains(key)) throw ConfigError(key, "missing");
  if (!j[key].is_string()) throw ConfigError(key, "expected a string");
  return j[key].get<std::string>();
}

bool is_central_target(const std::string& t) {
  return t == "chi2" || t == "infidelity" || t == "kl";
}

// Central parameters whose pipeline eps = eps~ * l_max does not exceed `eps`.
CentralParams params_for_eps(int d, int r, double f, double eps) {
  int l = 1;
  for (int it = 0; it < 64; ++it) {
    int next = std::max(1, static_cast<int>(std::ceil(std::log2(l / eps))));
    if (next == l) break;
    l = next;
  }
  CentralParams p = CentralParams::for_eps_tilde(d, r, f, eps / l);
  while (p.eps > eps) p = CentralParams::for_eps_tilde(d, r, f, p.eps_tilde * eps / p.eps * 0.999);
  return p;
}

void run_frobenius(const Scenario& s, Rng& rng, TrialRecord& rec) {
  const Copies n = s.n_grid[rec.grid_index];
  rec.n = n;
  DensityMatrix rho = family_state(s.state_family, s.d, s.r, rng);
  FrobeniusLearner base(EstimatorSpec::parse(s.estimator), s.d, s.r);
  StateAccess access(rho.matrix(), n, fork(rng));
  Matrix est = base.estimate(access, n);
  double err = (est - rho.matrix()).squaredNorm();
  rec.n_used = access.budget().consumed();
  rec.losses = {{"frobenius_sq", err}, {"rate_over_n", base.rate / static_cast<double>(n)}};
  rec.guarantees = {{"budget", rec.n_used == n, 1.0},
                    {"frobenius_level", err <= constants::kAcc * base.rate / n, 0.9}};
}

void run_qubit(const Scenario& s, Rng& rng, TrialRecord& rec) {
  const double eps = rec.eps;
  constexpr double kDelta = 0.05;
  DensityMatrix rho = family_state(s.state_family, 2, s.r, rng);
  rec.n = qubit_copies(eps, kDelta);
  StateAccess access(rho.matrix(), rec.n, fork(rng));
  QubitResult res = qubit_tomography(access, eps, kDelta);
  const Matrix frame = res.estimate.basis * rho.matrix() * res.estimate.basis.adjoint();
  double chi = bures_chi2_diag(frame, res.estimate.values);
  rec.n_used = access.budget().consumed();
  rec.losses = {{"d_bures_chi2", chi}, {"infidelity", 1.0 - fidelity(rho.matrix(), res.matrix())}};
  rec.guarantees = {{"budget", rec.n_used == rec.n, 1.0}, {"chi2", chi <= eps, 1.0 - kDelta}};
}

void run_central(const Scenario& s, Rng& rng, TrialRecord& rec) {
  const double eps = rec.eps;
  DensityMatrix rho = family_state(s.state_family, s.d, s.r, rng);
  EstimatorSpec spec = EstimatorSpec::parse(s.estimator);
  const double f = spec.rate_f(s.d, s.r);
  CentralParams params = s.target == "chi2" ? CentralParams::for_chi2_target(s.d, s.r, f, eps)
                                            : params_for_eps(s.d, s.r, f, eps);
  rec.n = params.total;
  FrobeniusLearner base(spec, s.d, s.r);
  StateAccess access(rho.matrix(), params.total, fork(rng));
  CentralOutput out = central_estimate(base, access, params);
  rec.n_used = access.budget().consumed();

  const Matrix frame = out.frame_of(rho.matrix());
  Chi2Estimate chi_est = to_chi2_estimate(out, default_eta(params));
  const double chi = bures_chi2_diag(frame, chi_est.q);
  DensityMatrix inf_est = to_infidelity_estimate(out);
  const double infid = 1.0 - fidelity(rho.matrix(), inf_est.matrix());
  const double kl_eps = std::min(params.eps, 0.5);
  const double dkl = qkl(rho.matrix(), to_kl_estimate(inf_est, kl_eps).matrix());
  const bool certified = infid <= kl_eps;
  CentralDiagnostics diag = diagnose(out, rho.matrix(), params);

  rec.losses = {{"d_bures_chi2", chi},
                {"d_kl", dkl},
                {"infidelity", infid},
                {"r_size", static_cast<double>(out.r_set.size())},
                {"stages", static_cast<double>(out.stages.size())},
                {"eps_tilde", params.eps_tilde},
                {"eps_pipeline", params.eps}};
  rec.guarantees = {{"budget", rec.n_used == params.total, 1.0},
                    {"central_conclusions", diag.all(), 0.9},
                    {"kl_upgrade", !certified || dkl <= kl_upgrade_bound(s.d, kl_eps), 1.0}};
  if (s.target == "chi2") rec.guarantees.push_back({"chi2", chi <= eps, 0.9});
  if (s.target == "infidelity") rec.guarantees.push_back({"infidelity", infid <= eps, 0.9});
}

void run_mi(const Scenario& s, Rng& rng, TrialRecord& rec) {
  const double eps = rec.eps;
  const bool product = s.state_family == "bipartite:product";
  const bool classical = s.estimator == "classical";
  std::string family = "product";
  if (!product) {
    family = "correlated:" + format_real(correlation_level_for_mi(s.d, eps, !classical));
  }
  if (classical) {
    RealVector p = classical_family(family, s.d, rng);
    ClassicalMiPlan plan = classical_mi_plan(s.d, eps);
    rec.n = plan.total();
    DistributionAccess access(p, plan.total(), fork(rng));
    TesterVerdict v = classical_mi_tester(access, s.d, eps);
    rec.n_used = access.budget().consumed();
    rec.losses = {{"mi", mutual_information_classical(p, s.d)},
                  {"statistic", v.statistic},
                  {"threshold", v.threshold}};
    rec.guarantees = {{"budget", rec.n_used == rec.n, 1.0},
                      {"verdict", v.accept == product, 0.9}};
    return;
  }
  Matrix rho = quantum_family(family, s.d, rng);
  QuantumMiPlan plan = quantum_mi_plan(s.d, s.r, eps, s.estimator);
  rec.n = plan.total();
  BipartiteAccess access(rho, plan.total(), fork(rng));
  QuantumMiResult res = quantum_mi_tester(access, s.r, eps, truth_oracle_tester, s.estimator);
  rec.n_used = access.budget().consumed();
  const Matrix xi = partial_trace(rho, Side::A);
  const Matrix tau = partial_trace(rho, Side::B);
  ProductChi2Parts parts = product_chi2_parts(xi, tau, res.product, res.plan.eps_learn);
  rec.losses = {{"mi", mutual_information_quantum(rho)},
                {"statistic", res.verdict.statistic},
                {"threshold", res.verdict.threshold},
                {"learn_chi2", parts.total()},
                {"on_on", parts.on_on},
                {"on_off", parts.on_off},
                {"off_off", parts.off_off}};
  rec.guarantees = {{"budget", rec.n_used == rec.n, 1.0},
                    {"verdict", res.verdict.accept == product, 0.9},
                    {"learn_product", parts.total() <= res.plan.eps_prime, 0.9},
                    {"off_off_am_gm", parts.am_gm_ok, 1.0}};
}

}  // namespace

Scenario parse_scenario(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError("syntax", e.what());
  }
  if (!j.is_object()) throw ConfigError("scenario", "expected a JSON object");
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (!kKeys.count(it.key())) throw ConfigError(it.key(), "unknown field");
  }
  Scenario s;
  s.id = get_string(j, "id");
  s.d = get_int(j, "d");
  s.r = j.contains("r") ? get_int(j, "r") : s.d;
  s.state_family = get_string(j, "state_family");
  s.estimator = get_string(j, "estimator");
  s.target = get_string(j, "target");
  s.trials = get_int(j, "trials");
  if (!j.contains("master_seed")) throw ConfigError("master_seed", "missing");
  const json& seed = j["master_seed"];
  if (seed.is_number_unsigned()) {
    s.master_seed = seed.get<std::uint64_t>();
  } else if (seed.is_number_integer() && seed.get<long long>() >= 0) {
    s.master_seed = static_cast<std::uint64_t>(seed.get<long long>());
  } else {
    throw ConfigError("master_seed", "expected a nonnegative 64-bit integer");
  }
  if (j.contains("eps")) {
    const json& e = j["eps"];
    if (e.is_number()) {
      s.eps_grid = {e.get<double>()};
    } else if (e.is_array()) {
      for (std::size_t k = 0; k < e.size(); ++k) {
        if (!e[k].is_number()) throw ConfigError("eps[" + std::to_string(k) + "]", "expected a number");
        s.eps_grid.push_back(e[k].get<double>());
      }
    } else {
      throw ConfigError("eps", "expected a number or an array");
    }
  }
  if (j.contains("n")) {
    const json& e = j["n"];
    auto one = [&](const json& v, const std::string& where) {
      if (!v.is_number_integer()) throw ConfigError(where, "expected an integer");
      return static_cast<Copies>(v.get<long long>());
    };
    if (e.is_array()) {
      for (std::size_t k = 0; k < e.size(); ++k) {
        s.n_grid.push_back(one(e[k], "n[" + std::to_string(k) + "]"));
      }
    } else {
      s.n_grid = {one(e, "n")};
    }
  }
  validate_scenario(s);
  return s;
}

void validate_scenario(const Scenario& s) {
  if (s.id.empty()) throw ConfigError("id", "must be nonempty");
  if (!kTargets.count(s.target)) throw ConfigError("target", "unknown target '" + s.target + "'");
  if (!kFamilies.count(s.state_family)) {
    throw ConfigError("state_family", "unknown family '" + s.state_family + "'");
  }
  const bool bipartite = s.state_family.rfind("bipartite:", 0) == 0;
  if (bipartite != (s.target == "mi")) {
    throw ConfigError("state_family", "bipartite families go with target mi and only with it");
  }
  const bool classical = s.estimator == "classical";
  const int max_d = (s.target == "mi" && !classical) ? 8 : kMaxDim;
  if (s.d < 1 || s.d > max_d) throw ConfigError("d", "must lie in [1, " + std::to_string(max_d) + "]");
  if (s.r < 1 || s.r > s.d) throw ConfigError("r", "must lie in [1, d]");
  if (s.trials < 0) throw ConfigError("trials", "must be nonnegative");

  if (s.estimator == "qubit") {
    if (s.d != 2 || s.target != "chi2") throw ConfigError("estimator", "qubit requires d = 2 and target chi2");
  } else if (classical) {
    if (s.target != "mi") throw ConfigError("estimator", "classical applies to target mi only");
  } else {
    try {
      EstimatorSpec spec = EstimatorSpec::parse(s.estimator);
      if (is_central_target(s.target) || s.target == "mi") {
        double f = spec.rate_f(s.d, s.r);
        if (f < std::log(static_cast<double>(s.d))) {
          throw ConfigError("estimator", "rate f must be at least ln d for the staged learner");
        }
      }
    } catch (const InvalidArgument& e) {
      throw ConfigError("estimator", e.what());
    }
  }

  if (s.target == "frobenius") {
    if (s.n_grid.empty()) throw ConfigError("n", "grid must be nonempty");
    for (std::size_t k = 0; k < s.n_grid.size(); ++k) {
      if (s.n_grid[k] < 1) throw ConfigError("n[" + std::to_string(k) + "]", "must be positive");
    }
    return;
  }
  if (s.eps_grid.empty()) throw ConfigError("eps", "grid must be nonempty");
  const double top = (s.target == "kl" || s.target == "infidelity") ? constants::kEpsCeiling : 1.0;
  for (std::size_t k = 0; k < s.eps_grid.size(); ++k) {
    double e = s.eps_grid[k];
    if (!(e > 0.0 && e <= top)) {
      throw ConfigError("eps[" + std::to_string(k) + "]", "must lie in (0, " + format_real(top) + "]");
    }
    if (s.target == "mi" && s.state_family == "bipartite:correlated" &&
        e >= std::log(static_cast<double>(s.d)) * (classical ? 1.0 : 2.0)) {
      throw ConfigError("eps[" + std::to_string(k) + "]", "exceeds the largest mutual information");
    }
  }
}

Rng trial_rng(std::uint64_t master_seed, int grid_index, int trial) {
  std::uint64_t stream = (static_cast<std::uint64_t>(grid_index) << 32) |
                         static_cast<std::uint32_t>(trial);
  return derive_rng(master_seed, stream);
}

TrialRecord run_trial(const Scenario& s, int grid_index, int trial) {
  TrialRecord rec;
  rec.scenario = s.id;
  rec.grid_index = grid_index;
  rec.trial = trial;
  if (s.target != "frobenius") rec.eps = s.eps_grid.at(grid_index);
  Rng rng = trial_rng(s.master_seed, grid_index, trial);
  auto start = std::chrono::steady_clock::now();
  if (s.target == "frobenius") {
    run_frobenius(s, rng, rec);
  } else if (s.target == "mi") {
    run_mi(s, rng, rec);
  } else if (s.estimator == "qubit") {
    run_qubit(s, rng, rec);
  } else {
    run_central(s, rng, rec);
  }
  rec.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rec;
}

std::vector<TrialRecord> run_scenario(const Scenario& s, int workers) {
  validate_scenario(s);
  const int grid = static_cast<int>(s.target == "frobenius" ? s.n_grid.size() : s.eps_grid.size());
  const std::size_t total = static_cast<std::size_t>(grid) * static_cast<std::size_t>(s.trials);
  std::vector<TrialRecord> out(total);
  if (total == 0) return out;
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto work = [&] {
    for (std::size_t k = next++; k < total; k = next++) {
      try {
        out[k] = run_trial(s, static_cast<int>(k / s.trials), static_cast<int>(k % s.trials));
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = total;
      }
    }
  };
  workers = std::max(1, std::min<int>(workers, static_cast<int>(total)));
  std::vector<std::thread> pool;
  for (int w = 1; w < workers; ++w) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
  return out;
}

int default_workers() {
  const char* env = std::getenv("CHI2TOMO_WORKERS");
  if (env == nullptr || *env == '\0') return 1;
  char* end = nullptr;
  long v = std::strtol(env, &end, 10);
  if (*end != '\0' || v < 1 || v > 1024) throw ConfigError("CHI2TOMO_WORKERS", "expected an integer in [1, 1024]");
  return static_cast<int>(v);
}

namespace {

template <class Get>
std::vector<std::string> ordered_names(const std::vector<TrialRecord>& records, Get get) {
  std::vector<std::string> names;
  std::set<std::string> seen;
  for (const auto& r : records) {
    for (const auto& name : get(r)) {
      if (seen.insert(name).second) names.push_back(name);
    }
  }
  return names;
}

std::vector<std::string> loss_names(const TrialRecord& r) {
  std::vector<std::string> v;
  for (const auto& [name, value] : r.losses) v.push_back(name);
  return v;
}

std::vector<std::string> guarantee_names(const TrialRecord& r) {
  std::vector<std::string> v;
  for (const auto& g : r.guarantees) v.push_back(g.name);
  return v;
}

}  // namespace

std::string records_to_csv(const std::vector<TrialRecord>& records, bool wall_time) {
  const auto losses = ordered_names(records, loss_names);
  const auto guarantees = ordered_names(records, guarantee_names);
  std::ostringstream os;
  os << "scenario,grid,trial,eps,n,n_used";
  for (const auto& l : losses) os << ',' << l;
  for (const auto& g : guarantees) os << ",ok_" << g;
  if (wall_time) os << ",wall_seconds";
  os << '\n';
  for (const auto& r : records) {
    os << r.scenario << ',' << r.grid_index << ',' << r.trial << ',' << format_real(r.eps) << ','
       << r.n << ',' << r.n_used;
    for (const auto& l : losses) {
      os << ',';
      for (const auto& [name, value] : r.losses) {
        if (name == l) os << format_real(value);
      }
    }
    for (const auto& g : guarantees) {
      os << ',';
      for (const auto& x : r.guarantees) {
        if (x.name == g) os << (x.pass ? 1 : 0);
      }
    }
    if (wall_time) os << ',' << format_real(r.wall_seconds);
    os << '\n';
  }
  return os.str();
}

std::vector<Aggregate> aggregate(const std::vector<TrialRecord>& records) {
  std::map<int, std::vector<const TrialRecord*>> by_grid;
  for (const auto& r : records) by_grid[r.grid_index].push_back(&r);
  std::vector<Aggregate> out;
  for (const auto& [g, recs] : by_grid) {
    Aggregate a;
    a.grid_index = g;
    a.eps = recs.front()->eps;
    a.n = recs.front()->n;
    a.trials = static_cast<int>(recs.size());
    std::vector<TrialRecord> copy;
    for (const auto* r : recs) copy.push_back(*r);
    a.names = ordered_names(copy, loss_names);
    for (const auto& name : a.names) {
      double s = 0.0;
      double s2 = 0.0;
      int k = 0;
      for (const auto* r : recs) {
        for (const auto& [n, v] : r->losses) {
          if (n == name) {
            s += v;
            s2 += v * v;
            ++k;
          }
        }
      }
      double mean = k > 0 ? s / k : 0.0;
      double var = k > 1 ? std::max(0.0, (s2 - k * mean * mean) / (k - 1)) : 0.0;
      a.mean.push_back(mean);
      a.ci95.push_back(k > 0 ? 1.96 * std::sqrt(var / k) : 0.0);
    }
    a.guarantee_names = ordered_names(copy, guarantee_names);
    for (const auto& name : a.guarantee_names) {
      int pass = 0;
      int k = 0;
      double req = 1.0;
      for (const auto* r : recs) {
        for (const auto& x : r->guarantees) {
          if (x.name == name) {
            pass += x.pass ? 1 : 0;
            ++k;
            req = x.required_rate;
          }
        }
      }
      a.pass_rate.push_back(k > 0 ? static_cast<double>(pass) / k : 1.0);
      a.required_rate.push_back(req);
    }
    out.push_back(std::move(a));
  }
  return out;
}

std::string aggregates_to_csv(const std::vector<Aggregate>& aggs) {
  std::ostringstream os;
  os << "grid,eps,n,trials,quantity,kind,value,ci95_or_required\n";
  for (const auto& a : aggs) {
    for (std::size_t k = 0; k < a.names.size(); ++k) {
      os << a.grid_index << ',' << format_real(a.eps) << ',' << a.n << ',' << a.trials << ','
         << a.names[k] << ",mean," << format_real(a.mean[k]) << ',' << format_real(a.ci95[k])
         << '\n';
    }
    for (std::size_t k = 0; k < a.guarantee_names.size(); ++k) {
      os << a.grid_index << ',' << format_real(a.eps) << ',' << a.n << ',' << a.trials << ','
         << a.guarantee_names[k] << ",pass_rate," << format_real(a.pass_rate[k]) << ','
         << format_real(a.required_rate[k]) << '\n';
    }
  }
  return os.str();
}

std::string plot_script_stub(const std::string& csv_path, const std::string& loss) {
  std::ostringstream os;
  os << "import csv\n"
     << "import matplotlib.pyplot as plt\n\n"
     << "rows = [r for r in csv.DictReader(open('" << csv_path << "'))\n"
     << "        if r['quantity'] == '" << loss << "' and r['kind'] == 'mean']\n"
     << "x = [float(r['n']) if float(r['eps']) == 0 else float(r['eps']) for r in rows]\n"
     << "y = [float(r['value']) for r in rows]\n"
     << "e = [float(r['ci95_or_required']) for r in rows]\n"
     << "plt.errorbar(x, y, yerr=e, marker='o')\n"
     << "plt.xscale('log')\n"
     << "plt.yscale('log')\n"
     << "plt.ylabel('" << loss << "')\n"
     << "plt.savefig('" << loss << ".png')\n";
  return os.str();
}

bool guarantees_met(const std::vector<Aggregate>& aggs) {
  for (const auto& a : aggs) {
    for (std::size_t k = 0; k < a.pass_rate.size(); ++k) {
      if (a.pass_rate[k] < a.required_rate[k]) return false;
    }
  }
  return true;
}

ScalingFit fit_loglog(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw InvalidArgument("fit_loglog: need two or more points");
  const std::size_t n = x.size();
  std::vector<double> lx(n);
  std::vector<double> ly(n);
  for (std::size_t k = 0; k < n; ++k) {
    if (!(x[k] > 0.0) || !(y[k] > 0.0)) throw InvalidArgument("fit_loglog: values must be positive");
    lx[k] = std::log(x[k]);
    ly[k] = std::log(y[k]);
  }
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    mx += lx[k] / n;
    my += ly[k] / n;
  }
  double sxx = 0.0;
  double sxy = 0.0;
  double syy = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    sxx += (lx[k] - mx) * (lx[k] - mx);
    sxy += (lx[k] - mx) * (ly[k] - my);
    syy += (ly[k] - my) * (ly[k] - my);
  }
  if (sxx <= 0.0) throw InvalidArgument("fit_loglog: x values must not all coincide");
  ScalingFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  fit.r2 = syy > 0.0 ? (sxy * sxy) / (sxx * syy) : 1.0;
  return fit;
}

ScalingFit fit_scaling(const std::vector<TrialRecord>& records, const std::string& x,
                       const std::string& loss) {
  if (x != "n" && x != "eps") throw InvalidArgument("fit_scaling: x must be n or eps");
  std::vector<double> xs;
  std::vector<double> ys;
  for (const auto& a : aggregate(records)) {
    auto it = std::find(a.names.begin(), a.names.end(), loss);
    if (it == a.names.end()) throw InvalidArgument("fit_scaling: unknown loss " + loss);
    xs.push_back(x == "n" ? static_cast<double>(a.n) : a.eps);
    ys.push_back(a.mean[it - a.names.begin()]);
  }
  return fit_loglog(xs, ys);
}

DensityMatrix family_state(const std::string& family, int d, int r, Rng& rng) {
  if (family == "pure") return random_pure_state(d, rng);
  if (family == "rank_r_random") return random_state(d, r, rng);
  if (family == "maximally_mixed") return maximally_mixed(d);
  if (family == "geometric_spectrum") {
    RealVector lam(d);
    lam.setZero();
    for (int i = 0; i < r; ++i) lam(i) = std::ldexp(1.0, -i);
    lam /= lam.sum();
    Matrix u = random_unitary(d, rng);
    return DensityMatrix::from_matrix(
        hermitianize(u * lam.cast<Complex>().asDiagonal() * u.adjoint()), 1.0, r);
  }
  throw InvalidArgument("unknown single-system family: " + family);
}

}  // namespace chi2tomo
