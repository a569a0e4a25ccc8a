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

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "chi2tomo/acceptance.hpp"
#include "chi2tomo/divergences.hpp"
#include "chi2tomo/harness.hpp"
#include "chi2tomo/io.hpp"
#include "chi2tomo/mi_testing.hpp"

namespace {

using namespace chi2tomo;

void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
  } else {
    write_text_file(path, text);
  }
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, sep)) out.push_back(cell);
  return out;
}

struct DivergenceArgs {
  std::string name;
  std::string a;
  std::string b;
  std::string batch;
  std::string out;
};

int run_divergence(const DivergenceArgs& args) {
  if (args.batch.empty()) {
    if (args.name.empty() || args.a.empty() || args.b.empty()) {
      throw ConfigError("divergence", "need NAME, --a and --b, or --batch");
    }
    const double v = evaluate_divergence(args.name, state_from_json(read_text_file(args.a)).matrix(),
                                         state_from_json(read_text_file(args.b)).matrix());
    emit(args.out, format_real(v) + "\n");
    return 0;
  }
  // Batch file lines: pair_id,path_a,path_b
  std::vector<std::string> names = quantum_divergence_names();
  if (!args.name.empty()) names = split(args.name, ',');
  std::istringstream in(read_text_file(args.batch));
  std::ostringstream os;
  os << "pair_id,name,value\n";
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    auto cells = split(line, ',');
    if (cells.size() != 3) {
      throw ConfigError("batch line " + std::to_string(line_no), "expected pair_id,path_a,path_b");
    }
    const Matrix a = state_from_json(read_text_file(cells[1])).matrix();
    const Matrix b = state_from_json(read_text_file(cells[2])).matrix();
    for (const auto& n : names) {
      os << cells[0] << ',' << n << ',' << format_real(evaluate_divergence(n, a, b)) << '\n';
    }
  }
  emit(args.out, os.str());
  return 0;
}

struct ScenarioArgs {
  std::string config;
  std::string id = "cli";
  int d = 8;
  int r = 0;
  std::string family = "rank_r_random";
  std::string estimator = "oracle:f=d";
  std::string target = "chi2";
  std::vector<double> eps;
  std::vector<Copies> n;
  int trials = 100;
  std::uint64_t seed = 1;
  bool seed_set = false;
  std::string out;
  int workers = 0;
};

Scenario scenario_from(const ScenarioArgs& a) {
  Scenario s;
  if (!a.config.empty()) {
    s = parse_scenario(read_text_file(a.config));
    if (a.seed_set) s.master_seed = a.seed;
    return s;
  }
  s.id = a.id;
  s.d = a.d;
  s.r = a.r > 0 ? a.r : a.d;
  s.state_family = a.family;
  s.estimator = a.estimator;
  s.target = a.target;
  s.eps_grid = a.eps;
  s.n_grid = a.n;
  s.trials = a.trials;
  s.master_seed = a.seed;
  validate_scenario(s);
  return s;
}

int write_run(const Scenario& s, const ScenarioArgs& a, bool wall_time, bool fit) {
  const int workers = a.workers > 0 ? a.workers : default_workers();
  const auto records = run_scenario(s, workers);
  const auto aggs = aggregate(records);
  const std::string csv = records_to_csv(records, wall_time);
  const std::string summary = aggregates_to_csv(aggs);
  if (a.out.empty()) {
    std::cout << csv << '\n' << summary;
  } else {
    write_text_file(a.out + ".csv", csv);
    write_text_file(a.out + ".summary.csv", summary);
    const std::string loss = s.target == "frobenius" ? "frobenius_sq"
                             : s.target == "mi"       ? "statistic"
                                                      : "d_bures_chi2";
    write_text_file(a.out + ".plot.py", plot_script_stub(a.out + ".summary.csv", loss));
  }
  if (fit && aggs.size() >= 2) {
    const std::string x = s.target == "frobenius" ? "n" : "eps";
    const std::string loss = s.target == "frobenius" ? "frobenius_sq"
                             : s.target == "mi"       ? "statistic"
                                                      : "d_bures_chi2";
    ScalingFit f = fit_scaling(records, x, loss);
    std::cerr << "scaling fit of " << loss << " against " << x << ": slope=" << format_real(f.slope)
              << " intercept=" << format_real(f.intercept) << " r2=" << format_real(f.r2) << '\n';
  }
  bool ok = guarantees_met(aggs);
  for (const auto& g : aggs) {
    for (std::size_t k = 0; k < g.guarantee_names.size(); ++k) {
      std::cerr << "grid " << g.grid_index << ' ' << g.guarantee_names[k]
                << ": pass rate " << format_real(g.pass_rate[k]) << " (required "
                << format_real(g.required_rate[k]) << ")\n";
    }
  }
  std::cerr << (ok ? "all guarantees met" : "guarantee FAILED") << '\n';
  return ok ? 0 : 1;
}

struct MiArgs {
  std::string kind;
  int d = 4;
  int r = 0;
  double eps = 0.5;
  std::string family = "product";
  std::string estimator = "oracle:f=d";
  int trials = 100;
  std::uint64_t seed = 1;
  std::string out;
};

int run_mi_test(const MiArgs& a) {
  const bool classical = a.kind == "classical";
  const int r = a.r > 0 ? a.r : a.d;
  std::ostringstream os;
  os << "trial,mi,accept,statistic,threshold,samples_used\n";
  int accepted = 0;
  double min_mi = kInf;
  for (int t = 0; t < a.trials; ++t) {
    Rng rng = trial_rng(a.seed, 0, t);
    TesterVerdict v;
    double mi = 0.0;
    if (classical) {
      RealVector p = classical_family(a.family, a.d, rng);
      mi = mutual_information_classical(p, a.d);
      ClassicalMiPlan plan = classical_mi_plan(a.d, a.eps);
      DistributionAccess access(p, plan.total(), fork(rng));
      v = classical_mi_tester(access, a.d, a.eps);
    } else {
      Matrix rho = quantum_family(a.family, a.d, rng);
      mi = mutual_information_quantum(rho);
      QuantumMiPlan plan = quantum_mi_plan(a.d, r, a.eps, a.estimator);
      BipartiteAccess access(rho, plan.total(), fork(rng));
      v = quantum_mi_tester(access, r, a.eps, truth_oracle_tester, a.estimator).verdict;
    }
    accepted += v.accept ? 1 : 0;
    min_mi = std::min(min_mi, mi);
    os << t << ',' << format_real(mi) << ',' << (v.accept ? 1 : 0) << ',' << format_real(v.statistic)
       << ',' << format_real(v.threshold) << ',' << v.samples_used << '\n';
  }
  emit(a.out.empty() ? "" : a.out + ".csv", os.str());

  const double rate = a.trials > 0 ? static_cast<double>(accepted) / a.trials : 1.0;
  std::ostringstream rep;
  if (classical) {
    ClassicalMiPlan plan = classical_mi_plan(a.d, a.eps);
    rep << "eps' = " << format_real(plan.eps_prime) << "\nlearning samples = " << plan.learn_samples
        << "\ntest samples = " << plan.test_samples << '\n';
  } else {
    QuantumMiPlan plan = quantum_mi_plan(a.d, r, a.eps, a.estimator);
    rep << "eps' = " << format_real(plan.eps_prime) << "\ntester eps = " << format_real(plan.eps_test)
        << "\ncopies per marginal = " << plan.learn_copies << "\ntest copies = " << plan.test_copies
        << '\n';
  }
  rep << "acceptance rate = " << format_real(rate) << '\n';
  bool ok = true;
  if (a.trials > 0 && a.family == "product") {
    ok = rate >= 0.9;
    rep << "guarantee: product inputs accepted in >= 90% -> " << (ok ? "met" : "FAILED") << '\n';
  } else if (a.trials > 0 && min_mi >= a.eps) {
    ok = 1.0 - rate >= 0.9;
    rep << "guarantee: I >= eps inputs rejected in >= 90% -> " << (ok ? "met" : "FAILED") << '\n';
  } else {
    rep << "no guarantee applies (0 < I < eps)\n";
  }
  if (a.out.empty()) {
    std::cerr << rep.str();
  } else {
    write_text_file(a.out + ".report.txt", rep.str());
  }
  return ok ? 0 : 1;
}

void add_scenario_flags(CLI::App* cmd, ScenarioArgs& a) {
  cmd->add_option("--config", a.config, "scenario JSON file");
  cmd->add_option("--id", a.id, "scenario id");
  cmd->add_option("--d", a.d, "dimension");
  cmd->add_option("--r", a.r, "rank (default d)");
  cmd->add_option("--family", a.family, "state family");
  cmd->add_option("--estimator", a.estimator, "simple|oracle:f=d|oracle:f=rd|oracle:f=d2|qubit");
  cmd->add_option("--target", a.target, "frobenius|infidelity|chi2|kl|mi");
  cmd->add_option("--eps", a.eps, "accuracy grid")->delimiter(',');
  cmd->add_option("--n", a.n, "copy grid (target frobenius)")->delimiter(',');
  cmd->add_option("--trials", a.trials, "trials per grid point");
  cmd->add_option("--seed", a.seed, "master seed")->each([&a](const std::string&) { a.seed_set = true; });
  cmd->add_option("--out", a.out, "output prefix; stdout when omitted");
  cmd->add_option("--workers", a.workers, "worker threads (default CHI2TOMO_WORKERS or 1)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Chi-squared quantum state tomography and mutual-information testing"};
  app.require_subcommand(1);

  DivergenceArgs div;
  auto* dcmd = app.add_subcommand("divergence", "evaluate a divergence between two states");
  dcmd->add_option("name", div.name, "divergence name, or a comma list in batch mode");
  dcmd->add_option("--a", div.a, "first state (JSON)");
  dcmd->add_option("--b", div.b, "second state (JSON)");
  dcmd->add_option("--batch", div.batch, "file of pair_id,path_a,path_b lines");
  dcmd->add_option("--out", div.out, "output file; stdout when omitted");

  ScenarioArgs tomo;
  auto* tcmd = app.add_subcommand("tomography", "tomography experiments");
  tcmd->require_subcommand(1);
  auto* trun = tcmd->add_subcommand("run", "run a tomography scenario");
  add_scenario_flags(trun, tomo);

  MiArgs mi;
  auto* mcmd = app.add_subcommand("mi-test", "test for zero mutual information");
  mcmd->add_option("kind", mi.kind, "classical|quantum")
      ->required()
      ->check(CLI::IsMember({"classical", "quantum"}));
  mcmd->add_option("--d", mi.d, "local dimension");
  mcmd->add_option("--r", mi.r, "marginal rank bound (default d)");
  mcmd->add_option("--eps", mi.eps, "mutual-information threshold");
  mcmd->add_option("--family", mi.family, "product|correlated:<level>");
  mcmd->add_option("--estimator", mi.estimator, "base Frobenius learner (quantum)");
  mcmd->add_option("--trials", mi.trials, "trials");
  mcmd->add_option("--seed", mi.seed, "master seed");
  mcmd->add_option("--out", mi.out, "output prefix; stdout when omitted");

  ScenarioArgs bench;
  auto* bcmd = app.add_subcommand("bench", "run a scenario with wall times and a scaling fit");
  add_scenario_flags(bcmd, bench);

  AcceptanceOptions acc;
  int criterion = 0;
  int acc_workers = 0;
  auto* acmd = app.add_subcommand("accept", "run the acceptance suite");
  acmd->add_option("--criterion", criterion, "run one criterion (1-14)");
  acmd->add_option("--seed", acc.seed, "master seed");
  acmd->add_option("--workers", acc_workers, "worker threads");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*dcmd) return run_divergence(div);
    if (*trun) return write_run(scenario_from(tomo), tomo, false, false);
    if (*mcmd) return run_mi_test(mi);
    if (*bcmd) return write_run(scenario_from(bench), bench, true, true);
    if (*acmd) {
      acc.workers = acc_workers > 0 ? acc_workers : default_workers();
      bool ok = true;
      if (criterion > 0) {
        CriterionResult r = run_criterion(criterion, acc);
        std::cout << format_result(r) << '\n';
        ok = r.pass;
      } else {
        for (const auto& r : acceptance_suite(acc, &std::cout)) ok = ok && r.pass;
      }
      return ok ? 0 : 1;
    }
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
