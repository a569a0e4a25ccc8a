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

#ifndef CHI2TOMO_HARNESS_HPP
#define CHI2TOMO_HARNESS_HPP

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "chi2tomo/common.hpp"
#include "chi2tomo/linalg.hpp"
#include "chi2tomo/rng.hpp"

namespace chi2tomo {

/// One experiment: a state family, a learner and a grid of accuracies or budgets.
struct Scenario {
  std::string id;
  int d = 0;
  int r = 0;
  // pure | rank_r_random | maximally_mixed | geometric_spectrum | bipartite:product | bipartite:correlated
  std::string state_family;
  // simple | oracle:f=d | oracle:f=rd | oracle:f=d2 | qubit | classical
  std::string estimator;
  // frobenius | infidelity | chi2 | kl | mi
  std::string target;
  std::vector<double> eps_grid;
  std::vector<Copies> n_grid;
  int trials = 0;
  std::uint64_t master_seed = 0;
};

// Parses a flat JSON object. Errors are ConfigError naming the field, or the
// line and column for syntax errors.
Scenario parse_scenario(const std::string& text);
void validate_scenario(const Scenario& s);

/// Named per-trial outcome; `required_rate` is the pass fraction a run must reach.
struct Guarantee {
  std::string name;
  bool pass = true;
  double required_rate = 1.0;
};

struct TrialRecord {
  std::string scenario;
  int grid_index = 0;
  int trial = 0;
  double eps = 0.0;   // 0 when the grid is over n
  Copies n = 0;       // budget granted
  Copies n_used = 0;  // budget consumed
  std::vector<std::pair<std::string, double>> losses;
  std::vector<Guarantee> guarantees;
  double wall_seconds = 0.0;
};

// Trial t of grid point g uses derive_rng(master_seed, (g << 32) | t).
Rng trial_rng(std::uint64_t master_seed, int grid_index, int trial);
TrialRecord run_trial(const Scenario& s, int grid_index, int trial);

// Records ordered by (grid point, trial) regardless of the worker count.
std::vector<TrialRecord> run_scenario(const Scenario& s, int workers = 1);

// Default worker count from CHI2TOMO_WORKERS, else 1.
int default_workers();

// Columns: scenario, grid, trial, eps, n, n_used, loss columns, guarantee columns.
// Wall time is written only when requested.
std::string records_to_csv(const std::vector<TrialRecord>& records, bool wall_time = false);

struct Aggregate {
  int grid_index = 0;
  double eps = 0.0;
  Copies n = 0;
  int trials = 0;
  std::vector<std::string> names;  // loss names
  std::vector<double> mean;
  std::vector<double> ci95;        // half-width of the normal interval
  std::vector<std::string> guarantee_names;
  std::vector<double> pass_rate;
  std::vector<double> required_rate;
};

std::vector<Aggregate> aggregate(const std::vector<TrialRecord>& records);
std::string aggregates_to_csv(const std::vector<Aggregate>& aggs);
// Minimal matplotlib script reading the aggregate CSV.
std::string plot_script_stub(const std::string& csv_path, const std::string& loss);
// True when each guarantee meets its required pass rate at every grid point.
bool guarantees_met(const std::vector<Aggregate>& aggs);

struct ScalingFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
};

// Ordinary least squares of log(y) on log(x); x and y positive.
ScalingFit fit_loglog(const std::vector<double>& x, const std::vector<double>& y);
// Mean of `loss` at each grid point, then fit_loglog against x = "n" or "eps".
ScalingFit fit_scaling(const std::vector<TrialRecord>& records, const std::string& x,
                       const std::string& loss);

// State for a single-system family.
DensityMatrix family_state(const std::string& family, int d, int r, Rng& rng);

}  // namespace chi2tomo

#endif  // CHI2TOMO_HARNESS_HPP
