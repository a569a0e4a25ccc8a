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

#include "chi2tomo/central.hpp"

#include <algorithm>
#include <cmath>

#include "chi2tomo/constants.hpp"
#include "chi2tomo/divergences.hpp"

namespace chi2tomo {

CentralParams CentralParams::make(int d, int r, double f, Copies m, CentralVariant variant) {
  return make(d, r, f, m, constants::kCentralC, constants::kScheduleC, variant);
}

CentralParams CentralParams::make(int d, int r, double f, Copies m, double big_c, double c,
                                  CentralVariant variant) {
  if (d < 1 || d > kMaxDim) throw InvalidArgument("central: d must lie in [1, 64]");
  if (r < 1 || r > d) throw InvalidArgument("central: r must lie in [1, d]");
  if (!(f >= 1.0) || f < std::log(static_cast<double>(d))) {
    throw InvalidArgument("central: rate f must be at least max(1, ln d)");
  }
  if (m < r || m < 2) throw InvalidArgument("central: m must be at least r and 2");
  CentralParams p;
  p.d = d;
  p.r = r;
  p.f = f;
  p.m = m;
  p.big_c = big_c;
  p.c = c;
  p.variant = variant;
  const double md = static_cast<double>(m);
  if (variant == CentralVariant::Logarithmic) {
    double l2 = std::log2(md / (r * f));
    p.delta = l2 <= 1.0 ? 1e-4 : 1e-4 / l2;
  } else {
    p.delta = 1e-4 / (d + 1.0);
  }
  p.m_delta = md / (c * std::log(1.0 / p.delta));
  p.eps_tilde = big_c * r * f / p.m_delta;
  if (variant == CentralVariant::Logarithmic) {
    p.l_max = std::max(1, static_cast<int>(std::ceil(std::log2(1.0 / p.eps_tilde))));
    p.eps = p.eps_tilde * p.l_max;
  } else {
    p.l_max = d + 1;
    p.eps = d * std::log(std::max(r, 2)) / r * p.eps_tilde;
  }
  if (!(p.eps <= constants::kEpsCeiling)) {
    throw InvalidArgument("central: eps = " + std::to_string(p.eps) + " exceeds " +
                          std::to_string(constants::kEpsCeiling) + "; increase m");
  }
  p.total = 2 * m * p.l_max;
  return p;
}

CentralParams CentralParams::for_eps_tilde(int d, int r, double f, double eps_tilde,
                                           CentralVariant variant) {
  if (!(eps_tilde > 0.0)) throw InvalidArgument("central: target eps~ must be positive");
  const double big_c = constants::kCentralC;
  const double c = constants::kScheduleC;
  auto delta_of = [&](double m) {
    if (variant == CentralVariant::Linear) return 1e-4 / (d + 1.0);
    double l2 = std::log2(m / (r * f));
    return l2 <= 1.0 ? 1e-4 : 1e-4 / l2;
  };
  double m = big_c * r * f * c * std::log(1e4) / eps_tilde;
  for (int it = 0; it < 50; ++it) {
    double next = big_c * r * f * c * std::log(1.0 / delta_of(m)) / eps_tilde;
    if (std::abs(next - m) <= 0.5) break;
    m = next;
  }
  auto mi = static_cast<Copies>(std::ceil(m));
  if (mi % 2 != 0) ++mi;
  mi = std::max<Copies>(mi, std::max(2, r + (r % 2)));
  for (;;) {
    double md = static_cast<double>(mi);
    double et = big_c * r * f * c * std::log(1.0 / delta_of(md)) / md;
    if (et <= eps_tilde) break;
    mi += 2;
  }
  return make(d, r, f, mi, big_c, c, variant);
}

CentralParams CentralParams::for_chi2_target(int d, int r, double f, double eps_final,
                                             CentralVariant variant) {
  if (!(eps_final > 0.0)) throw InvalidArgument("central: eps_final must be positive");
  double target = std::sqrt(static_cast<double>(r) / d) * eps_final / constants::kBudgetSlack;
  return for_eps_tilde(d, r, f, target, variant);
}

double CentralOutput::eps_prime() const {
  double s = 0.0;
  for (int i = 0; i < l; ++i) s += q(i);
  return s;
}

Matrix CentralOutput::to_original(const Matrix& frame_matrix) const {
  return basis.adjoint() * frame_matrix * basis;
}

Matrix CentralOutput::frame_of(const Matrix& rho) const {
  return basis * rho * basis.adjoint();
}

IndexSet admit_stage(const RealVector& sigma, int r, CentralVariant variant) {
  const int dt = static_cast<int>(sigma.size());
  IndexSet out;
  if (dt == 0) return out;
  if (variant == CentralVariant::Logarithmic) {
    const int lo = std::max(dt - r, 0);
    const double thr = constants::kAdmit * constants::kAdmit * sigma.sum() / (100.0 * r);
    int k = dt - 1;
    while (k >= lo && sigma(k) > thr) --k;
    for (int i = k + 1; i < dt; ++i) out.push_back(i);
    return out;
  }
  const int top = std::min(r, dt);
  double s = 0.0;
  for (int k = 1; k <= top; ++k) s += sigma(dt - k);
  const double lr = std::log(std::max(r, 2));
  int best = 0;
  for (int k = 1; k <= top; ++k)
    if (sigma(dt - k) >= s / (4.0 * k * lr)) best = k;
  for (int i = dt - best; i < dt; ++i) out.push_back(i);
  return out;
}

CentralOutput central_estimate(const FrobeniusLearner& base, StateAccess& access,
                               const CentralParams& params) {
  const int d = params.d;
  if (access.dim() != d) throw DimensionMismatch("central: state dimension differs from d");
  if (access.budget().remaining() < params.total) {
    throw BudgetExhausted("central: budget " + std::to_string(access.budget().remaining()) +
                          " below required " + std::to_string(params.total));
  }
  const Copies start = access.budget().consumed();
  CentralOutput out;
  out.d = d;
  out.basis = Matrix::Identity(d, d);
  int dt = d;
  for (int t = 1;; ++t) {
    UpgradeResult res = final_upgrade(base, access, prefix(dt), params.r, params.delta, params.m);
    Matrix w = direct_sum_identity(res.estimate.basis, d);
    access.rotate(w);
    out.basis = w * out.basis;
    StageLog log;
    log.d_t = dt;
    log.tau_hat = res.tau_hat;
    log.path = res.path;
    bool final_stage = res.tau_hat <= constants::kAdmit * params.eps_tilde || t > d ||
                       t >= params.l_max;
    if (!final_stage) {
      log.admitted = admit_stage(res.estimate.values, params.r, params.variant);
      out.r_set.insert(out.r_set.begin(), log.admitted.begin(), log.admitted.end());
      dt -= static_cast<int>(log.admitted.size());
    }
    out.stages.push_back(std::move(log));
    if (final_stage) break;
  }
  out.l = dt;
  const Copies used = access.budget().consumed() - start;
  SampleCounts counts = access.measure_basis(params.total - used);
  out.q = add_one_hybrid(counts, out.r_set);
  out.copies_used = access.budget().consumed() - start;
  return out;
}

CentralDiagnostics diagnose(const CentralOutput& out, const Matrix& rho,
                            const CentralParams& params) {
  CentralDiagnostics g;
  Matrix rf = out.frame_of(rho);
  const int l = out.l;
  g.r_size = static_cast<double>(out.r_set.size());
  for (int i = 0; i < l; ++i) g.tau += rf(i, i).real();
  g.eps_prime = out.eps_prime();
  Matrix diff = rf.topLeftCorner(l, l);
  for (int i = 0; i < l; ++i) diff(i, i) -= out.q(i);
  g.frob_l = diff.squaredNorm();
  g.d_minus_l = bures_chi2_minus(l, rf, out.q);
  const double k = constants::kAcc;
  g.r_ok = g.r_size <= k * params.r * params.l_max;
  g.tau_ok = g.tau <= k * params.eps_tilde && g.eps_prime <= k * params.eps_tilde;
  g.frob_ok = g.frob_l <= k * params.eps_tilde * params.eps_tilde / params.r;
  g.minus_ok = g.d_minus_l <= k * params.eps;

  auto block_trace = [&](int n) {
    double s = 0.0;
    for (int i = 0; i < n; ++i) s += rf(i, i).real();
    return s;
  };
  for (std::size_t t = 0; t + 1 < out.stages.size(); ++t) {
    const auto& st = out.stages[t];
    double tau_t = block_trace(st.d_t);
    double tau_next = block_trace(out.stages[t + 1].d_t);
    if (!(tau_next < 0.5 * tau_t)) g.halving_ok = false;
    for (int i : st.admitted)
      if (!(rf(i, i).real() > tau_t / (100.0 * params.r))) g.admitted_ok = false;
  }
  return g;
}

DensityMatrix to_infidelity_estimate(const CentralOutput& out) {
  const double keep = 1.0 - out.eps_prime();
  if (!(keep > 0.0)) throw ZeroMass("to_infidelity_estimate: no mass on R");
  RealVector v = RealVector::Zero(out.d);
  for (int i : out.r_set) v(i) = out.q(i) / keep;
  Matrix frame = v.cast<Complex>().asDiagonal();
  return DensityMatrix::from_matrix(hermitianize(out.to_original(frame)), 1.0);
}

Matrix Chi2Estimate::matrix() const {
  Matrix frame = q.cast<Complex>().asDiagonal();
  return hermitianize(basis.adjoint() * frame * basis);
}

Chi2Estimate to_chi2_estimate(const CentralOutput& out, double eta) {
  if (!(eta >= 0.0 && eta < 0.5)) throw InvalidArgument("to_chi2_estimate: eta must lie in [0, 1/2)");
  Chi2Estimate e;
  e.basis = out.basis;
  e.eta = eta;
  if (out.l == 0) {
    e.q = out.q;
    return e;
  }
  e.q = (1.0 - eta) * out.q;
  for (int i = 0; i < out.l; ++i) e.q(i) += eta / out.l;
  return e;
}

double default_eta(const CentralParams& params) {
  return std::sqrt(static_cast<double>(params.d) / params.r) * params.eps_tilde;
}

DensityMatrix to_kl_estimate(const DensityMatrix& rho_hat, double eps) {
  if (!(eps > 0.0 && eps <= 0.5)) throw InvalidArgument("to_kl_estimate: eps must lie in (0, 1/2]");
  return depolarize(rho_hat, 2.0 * eps);
}

double kl_upgrade_bound(int d, double eps) {
  return 16.0 * eps * (2.0 + std::log(d / (2.0 * eps)));
}

}  // namespace chi2tomo
