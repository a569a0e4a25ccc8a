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

#include "chi2tomo/mi_testing.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "chi2tomo/constants.hpp"
#include "chi2tomo/divergences.hpp"
#include "chi2tomo/linalg.hpp"

namespace chi2tomo {

DistributionAccess::DistributionAccess(RealVector p, Copies samples, Rng rng)
    : p_(std::move(p)), budget_(samples), rng_(std::move(rng)) {
  if (p_.size() == 0) throw InvalidArgument("DistributionAccess: empty distribution");
  if (p_.minCoeff() < -tol::kProb || std::abs(p_.sum() - 1.0) > 1e-9) {
    throw InvalidArgument("DistributionAccess: not a probability vector");
  }
  p_ = p_.cwiseMax(0.0);
}

SampleCounts DistributionAccess::draw(Copies k) {
  budget_.consume(k);
  if (k == 0) return SampleCounts{std::vector<Copies>(p_.size(), 0)};
  return sample_multinomial(p_, k, rng_);
}

double mi_learning_accuracy(int d, double eps, double c) {
  if (d < 1) throw InvalidArgument("mi: d must be positive");
  if (!(eps > 0.0)) throw InvalidArgument("mi: eps must be positive");
  return c * eps / std::max(1.0, std::log(d / eps));
}

RealVector ProductDistribution::joint() const { return outer_product(a, b); }

Copies marginal_learning_samples(int d, double eps) {
  if (!(eps > 0.0)) throw InvalidArgument("marginal_learning_samples: eps must be positive");
  // Each factor is learned to eps / 3.
  return static_cast<Copies>(std::ceil(constants::kLearnC1 * d / (eps / 3.0)));
}

ProductDistribution learn_product_classical(const SampleCounts& a, const SampleCounts& b) {
  if (a.dim() != b.dim()) throw DimensionMismatch("learn_product_classical: marginal sizes");
  const IndexSet all = prefix(a.dim());
  return ProductDistribution{add_one_hybrid(a, all), add_one_hybrid(b, all)};
}

namespace {

SampleCounts marginal_counts(const SampleCounts& joint, int d, Side keep) {
  SampleCounts out{std::vector<Copies>(d, 0)};
  for (int a = 0; a < d; ++a) {
    for (int b = 0; b < d; ++b) {
      out.counts[keep == Side::A ? a : b] += joint.counts[a * d + b];
    }
  }
  return out;
}

double identity_statistic(const RealVector& q, const std::vector<Copies>& counts, double n) {
  double z = 0.0;
  for (Index i = 0; i < q.size(); ++i) {
    double x = static_cast<double>(counts[i]);
    if (q(i) <= 0.0) {
      if (x > 0.0) return kInf;
      continue;
    }
    double e = n * q(i);
    z += ((x - e) * (x - e) - x) / e;
  }
  return z;
}

}  // namespace

ProductDistribution learn_product_classical(DistributionAccess& access, int d, double eps) {
  if (access.dim() != d * d) throw DimensionMismatch("learn_product_classical: expected d^2 bins");
  SampleCounts joint = access.draw(marginal_learning_samples(d, eps));
  return learn_product_classical(marginal_counts(joint, d, Side::A),
                                 marginal_counts(joint, d, Side::B));
}

Copies identity_tester_samples(int bins, double eps) {
  if (!(eps > 0.0)) throw InvalidArgument("identity_tester_samples: eps must be positive");
  return static_cast<Copies>(std::ceil(constants::kIdentityC2 * std::sqrt(bins) / eps));
}

TesterVerdict identity_tester_classical(const RealVector& q, const SampleCounts& counts,
                                        double eps, Rng& rng, int null_simulations) {
  if (!(eps > 0.0 && eps <= 0.5)) throw InvalidArgument("identity_tester: eps must lie in (0, 1/2]");
  if (counts.dim() != q.size()) throw DimensionMismatch("identity_tester: bin count");
  if (null_simulations < 1) throw InvalidArgument("identity_tester: need null simulations");
  const Copies n = counts.total();
  if (n <= 0) throw InsufficientSamples("identity_tester: no samples");
  const double nd = static_cast<double>(n);

  std::vector<double> null_z(null_simulations);
  for (auto& z : null_z) z = identity_statistic(q, sample_multinomial(q, n, rng).counts, nd);
  auto k = static_cast<std::size_t>(
      std::ceil(constants::kNullQuantile * null_simulations)) - 1;
  std::nth_element(null_z.begin(), null_z.begin() + k, null_z.end());
  const double threshold = null_z[k] + nd * eps / 2.0;

  TesterVerdict v;
  double z = identity_statistic(q, counts.counts, nd);
  v.accept = z <= threshold;
  v.statistic = z / nd;
  v.threshold = threshold / nd;
  v.samples_used = n;
  return v;
}

ClassicalMiPlan classical_mi_plan(int d, double eps) {
  ClassicalMiPlan p;
  p.eps_prime = mi_learning_accuracy(d, eps, constants::kMiLearnC);
  p.learn_samples = marginal_learning_samples(d, p.eps_prime / 2.0);
  p.test_samples = identity_tester_samples(d * d, p.eps_prime);
  return p;
}

TesterVerdict classical_mi_tester(DistributionAccess& access, int d, double eps,
                                  int null_simulations) {
  if (access.dim() != d * d) throw DimensionMismatch("classical_mi_tester: expected d^2 bins");
  const ClassicalMiPlan plan = classical_mi_plan(d, eps);
  ProductDistribution hyp = learn_product_classical(access, d, plan.eps_prime / 2.0);
  SampleCounts test = access.draw(plan.test_samples);
  TesterVerdict v = identity_tester_classical(hyp.joint(), test, std::min(plan.eps_prime, 0.5),
                                              access.rng(), null_simulations);
  v.samples_used = plan.total();
  return v;
}

double continuity_bound(int d, double t) {
  if (t <= 0.0) return 0.0;
  return 2.0 * t * std::log(4.0 * d / t);
}

HellingerMiGap hellinger_mi_gap_at(const Matrix& rho_ab, double eps) {
  const int dd = static_cast<int>(rho_ab.rows());
  const int d = static_cast<int>(std::lround(std::sqrt(dd)));
  if (d * d != dd) throw DimensionMismatch("hellinger_mi_gap: dimension is not a square");
  if (!(eps >= 0.0 && eps <= 1.0)) throw InvalidArgument("hellinger_mi_gap: eps must lie in [0, 1]");
  constexpr double kSlack = 1e-9;

  HellingerMiGap g;
  const Matrix prod = kron(partial_trace(rho_ab, Side::A), partial_trace(rho_ab, Side::B));
  g.mi = mutual_information_quantum(rho_ab);
  g.eta = qhellinger_sq(rho_ab, prod);
  g.eps = eps;
  if (eps == 0.0) {
    g.bound = 0.0;
    g.mi_smoothed = g.mi;
    g.eta_smoothed = g.eta;
    g.bound_ok = g.mi <= g.bound + kSlack;
    return g;
  }
  g.bound = (2.0 + std::log(static_cast<double>(d) * d / (eps * eps))) *
                (kDepolarizeConst * std::sqrt(eps) + g.eta) +
            2.0 * eps * std::log(4.0 * d / eps);

  const Matrix sigma = depolarize(rho_ab, eps);
  const Matrix sprod = kron(partial_trace(sigma, Side::A), partial_trace(sigma, Side::B));
  g.mi_smoothed = mutual_information_quantum(sigma);
  g.eta_smoothed = qhellinger_sq(sigma, sprod);
  g.dinf_smoothed = q_dinf(sigma, sprod);
  g.trace_dist = trace_distance(rho_ab, sigma);

  g.continuity_ok = std::abs(g.mi - g.mi_smoothed) <= continuity_bound(d, g.trace_dist) + kSlack;
  g.depolarize_ok = g.eta_smoothed <= kDepolarizeConst * std::sqrt(eps) + g.eta + kSlack;
  g.dinf_ok = g.dinf_smoothed <= std::log(static_cast<double>(d) * d / (eps * eps)) + kSlack;
  g.reverse_ok = g.mi_smoothed <= (2.0 + g.dinf_smoothed) * g.eta_smoothed + kSlack;
  g.bound_ok = g.mi <= g.bound + kSlack;
  return g;
}

HellingerMiGap hellinger_mi_gap(const Matrix& rho_ab) {
  const Matrix prod = kron(partial_trace(rho_ab, Side::A), partial_trace(rho_ab, Side::B));
  double eta = qhellinger_sq(rho_ab, prod);
  return hellinger_mi_gap_at(rho_ab, std::min(eta * eta, 1.0));
}

HellingerMiGap hellinger_mi_gap(const RealVector& p_ab, int d) {
  if (p_ab.size() != static_cast<Index>(d) * d) throw DimensionMismatch("hellinger_mi_gap: size");
  return hellinger_mi_gap(Matrix(p_ab.cast<Complex>().asDiagonal()));
}

BipartiteAccess::BipartiteAccess(Matrix rho_ab, Copies copies, Rng rng)
    : rho_(std::move(rho_ab)), budget_(copies), rng_(std::move(rng)) {
  const int dd = static_cast<int>(rho_.rows());
  d_ = static_cast<int>(std::lround(std::sqrt(dd)));
  if (d_ * d_ != dd) throw DimensionMismatch("BipartiteAccess: dimension is not a square");
  DensityMatrix::from_matrix(rho_);
}

StateAccess BipartiteAccess::marginal(Side side, Copies copies) {
  budget_.consume(copies);
  return StateAccess(partial_trace(rho_, side), copies, fork(rng_));
}

Matrix ProductStateEstimate::matrix() const { return kron(a.matrix(), b.matrix()); }

CentralParams product_learning_params(int d, int r, double eps, const std::string& estimator) {
  if (!(eps > 0.0)) throw InvalidArgument("learn_product_quantum: eps must be positive");
  EstimatorSpec spec = EstimatorSpec::parse(estimator);
  const double eps_int = eps / constants::kProductSlack;
  const double scale = std::min(1.0 / std::sqrt(d), std::sqrt(r) / std::pow(d, 0.75));
  return CentralParams::for_eps_tilde(d, r, spec.rate_f(d, r), eps_int * scale);
}

Copies product_learning_copies(int d, int r, double eps, const std::string& estimator) {
  return product_learning_params(d, r, eps, estimator).total;
}

ProductStateEstimate learn_product_quantum(StateAccess& a, StateAccess& b, int d, int r,
                                           double eps, const std::string& estimator) {
  if (a.dim() != d || b.dim() != d) throw DimensionMismatch("learn_product_quantum: marginal size");
  const CentralParams params = product_learning_params(d, r, eps, estimator);
  const FrobeniusLearner base(EstimatorSpec::parse(estimator), d, r);
  const double eta = eps / constants::kProductSlack;
  ProductStateEstimate est;
  est.params = params;
  est.a = to_chi2_estimate(central_estimate(base, a, params), eta);
  est.b = to_chi2_estimate(central_estimate(base, b, params), eta);
  return est;
}

ProductChi2Parts product_chi2_parts(const Matrix& xi, const Matrix& rho,
                                    const ProductStateEstimate& est, double eps) {
  const int d = static_cast<int>(xi.rows());
  const Matrix x = est.a.basis * xi * est.a.basis.adjoint();
  const Matrix y = est.b.basis * rho * est.b.basis.adjoint();
  const RealVector& s = est.a.q;
  const RealVector& t = est.b.q;
  const double mu = std::min({eps / d, s.minCoeff(), t.minCoeff()});

  ProductChi2Parts parts;
  for (int a = 0; a < d; ++a) {
    for (int b = 0; b < d; ++b) {
      for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) {
          const double den = s(a) * t(i) + s(b) * t(j);
          Complex tau = x(a, b) * y(i, j);
          if (a == b && i == j) tau -= s(a) * t(i);
          const double num = 2.0 * std::norm(tau);
          const double term = den > 0.0 ? num / den : (num > 0.0 ? kInf : 0.0);
          if (a == b && i == j) {
            parts.on_on += term;
          } else if (a == b || i == j) {
            parts.on_off += term;
          } else {
            parts.off_off += term;
            double lower = mu * (s(a) + s(b)) / 2.0 * (t(i) + t(j)) / 2.0;
            if (den / 2.0 < lower * (1.0 - 1e-12)) parts.am_gm_ok = false;
          }
        }
      }
    }
  }
  return parts;
}

TesterVerdict truth_oracle_tester(const Matrix& hypothesis, BipartiteAccess& access, double eps) {
  if (!(eps > 0.0)) throw InvalidArgument("truth_oracle_tester: eps must be positive");
  const double dim = static_cast<double>(access.truth().rows());
  const auto copies = static_cast<Copies>(std::ceil(constants::kBowC * dim / eps));
  access.budget().consume(copies);
  TesterVerdict v;
  v.statistic = qhellinger_sq(access.truth(), hypothesis);
  v.threshold = eps;
  v.accept = v.statistic < eps;
  v.samples_used = copies;
  return v;
}

QuantumMiPlan quantum_mi_plan(int d, int r, double eps, const std::string& estimator) {
  QuantumMiPlan p;
  p.eps_prime = mi_learning_accuracy(d, eps, constants::kMiLearnC);
  p.eps_test = 2.0 * p.eps_prime;
  p.eps_learn = 0.49 * p.eps_test;
  p.learn_copies = product_learning_copies(d, r, p.eps_learn, estimator);
  p.test_copies =
      static_cast<Copies>(std::ceil(constants::kBowC * static_cast<double>(d) * d / p.eps_test));
  return p;
}

QuantumMiResult quantum_mi_tester(BipartiteAccess& access, int r, double eps,
                                  const QuantumIdentityTester& tester,
                                  const std::string& estimator) {
  const int d = access.local_dim();
  QuantumMiResult res;
  res.plan = quantum_mi_plan(d, r, eps, estimator);
  StateAccess a = access.marginal(Side::A, res.plan.learn_copies);
  StateAccess b = access.marginal(Side::B, res.plan.learn_copies);
  res.product = learn_product_quantum(a, b, d, r, res.plan.eps_learn, estimator);
  res.verdict = tester(res.product.matrix(), access, res.plan.eps_test);
  res.verdict.samples_used = access.budget().consumed();
  return res;
}

namespace {

double parse_level(const std::string& family) {
  const std::string head = "correlated:";
  if (family.rfind(head, 0) != 0) throw InvalidArgument("unknown family: " + family);
  std::size_t used = 0;
  double level = 0.0;
  try {
    level = std::stod(family.substr(head.size()), &used);
  } catch (const std::exception&) {
    throw InvalidArgument("family level is not a number: " + family);
  }
  if (used != family.size() - head.size() || !(level >= 0.0 && level <= 1.0)) {
    throw InvalidArgument("family level must lie in [0, 1]: " + family);
  }
  return level;
}

RealVector random_distribution(int d, Rng& rng) {
  RealVector p(d);
  for (int i = 0; i < d; ++i) p(i) = -std::log(1.0 - uniform01(rng));
  return p / p.sum();
}

RealVector correlated_distribution(int d, double level) {
  RealVector p = RealVector::Constant(d * d, (1.0 - level) / (static_cast<double>(d) * d));
  for (int i = 0; i < d; ++i) p(i * d + i) += level / d;
  return p;
}

Matrix isotropic_state(int d, double level) {
  const int dd = d * d;
  Matrix phi = Matrix::Zero(dd, 1);
  for (int i = 0; i < d; ++i) phi(i * d + i, 0) = 1.0 / std::sqrt(static_cast<double>(d));
  Matrix rho = (1.0 - level) / dd * Matrix::Identity(dd, dd);
  rho += level * phi * phi.adjoint();
  return rho;
}

}  // namespace

RealVector classical_family(const std::string& family, int d, Rng& rng) {
  if (d < 1) throw InvalidArgument("classical_family: d must be positive");
  if (family == "product") return outer_product(random_distribution(d, rng), random_distribution(d, rng));
  return correlated_distribution(d, parse_level(family));
}

Matrix quantum_family(const std::string& family, int d, Rng& rng) {
  if (d < 1 || d * d > kMaxDim) throw InvalidArgument("quantum_family: d^2 must lie in [1, 64]");
  if (family == "product") {
    return kron(random_state(d, d, rng).matrix(), random_state(d, d, rng).matrix());
  }
  return isotropic_state(d, parse_level(family));
}

double correlation_level_for_mi(int d, double target, bool quantum) {
  auto mi = [&](double level) {
    return quantum ? mutual_information_quantum(isotropic_state(d, level))
                   : mutual_information_classical(correlated_distribution(d, level), d);
  };
  const double top = mi(1.0);
  if (!(target >= 0.0 && target <= top)) {
    throw InvalidArgument("correlation_level_for_mi: target outside the family's range");
  }
  double lo = 0.0;
  double hi = 1.0;
  for (int it = 0; it < 100; ++it) {
    double mid = 0.5 * (lo + hi);
    (mi(mid) < target ? lo : hi) = mid;
  }
  return hi;
}

}  // namespace chi2tomo
