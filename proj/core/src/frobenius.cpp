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

#include "chi2tomo/frobenius.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numeric>

#include "chi2tomo/constants.hpp"

namespace chi2tomo {

namespace {

const MatchingPovms& cached_matching_povms(int d) {
  static std::mutex mu;
  static std::map<int, std::unique_ptr<MatchingPovms>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[d];
  if (!slot) slot = std::make_unique<MatchingPovms>(matching_povms(d));
  return *slot;
}

// Builds the estimate from per-POVM outcome frequencies and the diagonal.
Matrix assemble(const MatchingPovms& mp, const std::vector<RealVector>& freqs,
                const RealVector& diag) {
  const int d = mp.dim;
  Matrix out = Matrix::Zero(d, d);
  for (int i = 0; i < d; ++i) out(i, i) = diag(i);
  for (std::size_t t = 0; t < mp.matchings.size(); ++t) {
    const RealVector& fx = freqs[2 * t];
    const RealVector& fy = freqs[2 * t + 1];
    for (std::size_t k = 0; k < mp.matchings[t].size(); ++k) {
      auto [i, j] = mp.matchings[t][k];
      if (j >= d) continue;
      double re = 0.5 * (fx(2 * k) - fx(2 * k + 1));
      double im = 0.5 * (fy(2 * k) - fy(2 * k + 1));
      out(i, j) = Complex(re, im);
      out(j, i) = Complex(re, -im);
    }
  }
  return out;
}

RealVector frequencies(const SampleCounts& c, Copies m) {
  RealVector f(c.dim());
  for (int i = 0; i < c.dim(); ++i) f(i) = static_cast<double>(c.counts[i]) / static_cast<double>(m);
  return f;
}

Matrix simple_impl(StateAccess& access, Copies m_off, Copies m_diag) {
  const int d = access.dim();
  if (m_diag <= 0) throw InvalidArgument("simple_frobenius: no diagonal copies");
  RealVector diag = frequencies(access.measure_basis(m_diag), m_diag);
  if (d == 1) return Matrix::Constant(1, 1, Complex(diag(0), 0.0));
  const auto& mp = cached_matching_povms(d);
  std::vector<RealVector> freqs;
  freqs.reserve(mp.povms.size());
  for (const auto& povm : mp.povms) {
    if (m_off > 0) {
      freqs.push_back(frequencies(access.measure(povm, m_off), m_off));
    } else {
      freqs.push_back(RealVector::Zero(povm.size()));
    }
  }
  return assemble(mp, freqs, diag);
}

DiagonalEstimate zero_estimate(int n) {
  DiagonalEstimate e;
  e.basis = Matrix::Identity(n, n);
  e.values = RealVector::Zero(n);
  e.trace = 0.0;
  return e;
}

}  // namespace

EstimatorSpec EstimatorSpec::parse(const std::string& name) {
  EstimatorSpec s;
  s.name = name;
  if (name == "simple") {
    s.kind = EstimatorKind::Measured;
    // Variance bound for 2(d-1)+1 settings sharing the copies.
    s.rate_f = [](int d, int) { return std::pow(2.0 * d - 1.0, 2); };
  } else if (name == "oracle:f=d") {
    s.rate_f = [](int d, int) { return static_cast<double>(d); };
  } else if (name == "oracle:f=rd") {
    s.rate_f = [](int d, int r) { return static_cast<double>(r) * d; };
  } else if (name == "oracle:f=d2") {
    s.rate_f = [](int d, int) { return static_cast<double>(d) * d; };
  } else {
    throw InvalidArgument("unknown estimator: " + name);
  }
  return s;
}

FrobeniusLearner::FrobeniusLearner(EstimatorSpec s, int d, int r) : spec(std::move(s)) {
  rate = spec.rate_f(d, r);
  if (!(rate >= 1.0)) throw InvalidArgument("estimator rate must be at least 1");
}

Matrix FrobeniusLearner::estimate(StateAccess& access, Copies copies) const {
  const int d = access.dim();
  if (copies == 0) return Matrix::Identity(d, d) / static_cast<double>(d);
  if (spec.kind == EstimatorKind::Measured) return simple_frobenius_total(access, copies);
  access.spend(copies);
  return oracle_frobenius(access.truth(), copies, rate, access.rng());
}

Matrix DiagonalEstimate::matrix() const {
  return basis.adjoint() * values.cast<Complex>().asDiagonal() * basis;
}

Copies simple_frobenius_settings(int d) {
  if (d <= 1) return 1;
  int n = d % 2 == 0 ? d : d + 1;
  return 2 * (n - 1) + 1;
}

Matrix simple_frobenius(StateAccess& access, Copies m) {
  if (m <= 0) throw InvalidArgument("simple_frobenius: m must be positive");
  return simple_impl(access, m, m);
}

Matrix simple_frobenius_total(StateAccess& access, Copies copies) {
  if (copies <= 0) throw InvalidArgument("simple_frobenius: no copies");
  const Copies settings = simple_frobenius_settings(access.dim());
  const Copies m = copies / settings;
  return simple_impl(access, m, copies - m * (settings - 1));
}

Matrix simple_frobenius_exact(const Matrix& rho) {
  const int d = static_cast<int>(rho.rows());
  RealVector diag = rho.diagonal().real();
  if (d == 1) return Matrix::Constant(1, 1, Complex(diag(0), 0.0));
  const auto& mp = cached_matching_povms(d);
  std::vector<RealVector> freqs;
  for (const auto& povm : mp.povms) freqs.push_back(born_probabilities(rho, povm));
  return assemble(mp, freqs, diag);
}

Matrix oracle_frobenius(const Matrix& rho, Copies m, double f, Rng& rng) {
  if (m <= 0) throw InvalidArgument("oracle_frobenius: m must be positive");
  if (!(f > 0.0)) throw InvalidArgument("oracle_frobenius: rate must be positive");
  const Index d = rho.rows();
  const double s = std::sqrt(f / (static_cast<double>(m) * static_cast<double>(d * d)));
  const double so = s / std::sqrt(2.0);
  Matrix g = Matrix::Zero(d, d);
  for (Index i = 0; i < d; ++i) {
    g(i, i) = s * standard_normal(rng);
    for (Index j = i + 1; j < d; ++j) {
      double re = standard_normal(rng);
      double im = standard_normal(rng);
      g(i, j) = Complex(so * re, so * im);
      g(j, i) = std::conj(g(i, j));
    }
  }
  return rho + g;
}

DiagonalEstimate diagonalize_estimate(const Matrix& h) {
  auto eig = eig_hermitian(hermitianize(h));
  DiagonalEstimate out;
  out.basis = eig.vectors.adjoint();
  out.values = eig.values;
  out.trace = eig.values.sum();
  return out;
}

DiagonalEstimate make_state_diagonal(const FrobeniusLearner& base, StateAccess& access,
                                     Copies m) {
  const int d = access.dim();
  if (m <= 0) throw InvalidArgument("make_state_diagonal: no copies");
  const Copies m1 = m / 2;
  const Copies m2 = m - m1;
  DiagonalEstimate rough = diagonalize_estimate(base.estimate(access, m1));
  RealVector q = empirical(access.measure_in(rough.basis.adjoint(), m2));
  std::vector<int> order(d);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return q(a) < q(b); });
  DiagonalEstimate out;
  out.basis = Matrix(d, d);
  out.values = RealVector(d);
  for (int k = 0; k < d; ++k) {
    out.basis.row(k) = rough.basis.row(order[k]);
    out.values(k) = q(order[k]);
  }
  out.trace = 1.0;
  return out;
}

SubnormalizedEstimate subnormalized_estimate(const FrobeniusLearner& base, StateAccess& access,
                                             const IndexSet& s, Copies m) {
  if (m <= 0) throw InvalidArgument("subnormalized_estimate: no copies");
  FilterResult fr = filter_subset(access, s, m);
  SubnormalizedEstimate out;
  out.kept = fr.kept;
  if (fr.kept == 0) {
    out.estimate = zero_estimate(static_cast<int>(s.size()));
    return out;
  }
  out.estimate = make_state_diagonal(base, *fr.conditional, fr.kept);
  const double scale = static_cast<double>(fr.kept) / static_cast<double>(m);
  out.estimate.values *= scale;
  out.estimate.trace = scale;
  return out;
}

UpgradeResult final_upgrade(const FrobeniusLearner& base, StateAccess& access, const IndexSet& s,
                            int r, double delta, Copies m) {
  if (r < 1) throw InvalidArgument("final_upgrade: rank must be positive");
  if (m < 2) throw InvalidArgument("final_upgrade: need at least two copies");
  const Copies m1 = m / 2;
  const Copies m2 = m - m1;
  UpgradeResult out;
  out.half = m1;
  out.m_delta = default_schedule(delta).m_delta(static_cast<double>(m1));
  FilterResult probe = filter_subset(access, s, m1);
  out.tau_hat = static_cast<double>(probe.kept) / static_cast<double>(m1);
  out.path = out.tau_hat <= constants::kAdmit / out.m_delta ? UpgradePath::Small
                                                            : UpgradePath::Large;
  // The small path is the plain subnormalized learner. The large path uses
  // the same filtered learner with a high-confidence diagonal re-estimate,
  // which for empirical frequencies is the same computation.
  SubnormalizedEstimate est = subnormalized_estimate(base, access, s, m2);
  out.estimate = std::move(est.estimate);
  out.kept = est.kept;
  return out;
}

UpgradeCheck check_upgrade(const UpgradeResult& res, const Matrix& rho_frame, const IndexSet& s,
                           int r, double delta, double rate, int d_full) {
  UpgradeCheck c;
  Matrix block = submatrix(rho_frame, s);
  c.tau = std::max(0.0, trace_real(block));
  const double inv = 1.0 / res.m_delta;
  const double m_half = static_cast<double>(res.half);
  const double m_delta_d =
      default_schedule(delta / static_cast<double>(d_full)).m_delta(m_half);
  c.theta = std::max(c.tau / (100.0 * r), 1.0 / m_delta_d);
  c.error = (block - res.estimate.matrix()).squaredNorm();

  if (c.tau <= inv) c.small_ok = res.tau_hat <= 1.1 * inv;
  if (res.tau_hat <= 1.1 * inv) {
    c.small_error_ok = c.error <= constants::kAcc * c.tau * rate / m_half + 1e-14;
  }
  if (c.tau >= inv) {
    auto within = [](double a, double b) { return a <= 1.1 * b && b <= 1.1 * a; };
    c.trace_ok = within(c.tau, res.tau_hat) && within(c.tau, res.estimate.trace) &&
                 within(res.tau_hat, res.estimate.trace);
    c.error_ok = c.error <= c.tau * rate / res.m_delta;
    Matrix rot = res.estimate.basis * block * res.estimate.basis.adjoint();
    for (Index i = 0; i < rot.rows(); ++i) {
      double x = rot(i, i).real();
      double v = res.estimate.values(i);
      if (x >= c.theta) {
        if (!(v <= 1.1 * x && x <= 1.1 * v)) c.heavy_ok = false;
      } else if (v > 1.1 * c.theta) {
        c.light_ok = false;
      }
    }
  }
  return c;
}

}  // namespace chi2tomo
