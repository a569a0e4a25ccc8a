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

#include "chi2tomo/divergences.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace chi2tomo {

namespace {

RealVector checked(const RealVector& v, const char* what) {
  RealVector out = v;
  for (Index i = 0; i < out.size(); ++i) {
    if (std::isnan(out(i))) throw InvalidArgument(std::string(what) + ": NaN entry");
    if (out(i) < -tol::kProb) throw InvalidArgument(std::string(what) + ": negative entry");
    if (out(i) < 0.0) out(i) = 0.0;
  }
  return out;
}

void same_size(const RealVector& p, const RealVector& q, const char* what) {
  if (p.size() != q.size()) throw DimensionMismatch(std::string(what) + ": length mismatch");
}

void same_shape(const Matrix& a, const Matrix& b, const char* what) {
  if (a.rows() != a.cols() || b.rows() != b.cols() || a.rows() != b.rows()) {
    throw DimensionMismatch(std::string(what) + ": matrices must be square of equal size");
  }
}

// Spectrum with tiny or negative weights zeroed.
SpectralDecomposition clean_eig(const Matrix& a) {
  SpectralDecomposition e = eig_hermitian(a);
  for (Index i = 0; i < e.values.size(); ++i)
    if (e.values(i) <= tol::kEigenCutoff) e.values(i) = 0.0;
  return e;
}

// |<phi_i|psi_j>|^2 with tiny overlaps zeroed.
Eigen::MatrixXd overlaps(const SpectralDecomposition& a, const SpectralDecomposition& b) {
  Eigen::MatrixXd w = (a.vectors.adjoint() * b.vectors).cwiseAbs2();
  for (Index i = 0; i < w.rows(); ++i)
    for (Index j = 0; j < w.cols(); ++j)
      if (w(i, j) < tol::kOverlapCutoff) w(i, j) = 0.0;
  return w;
}

}  // namespace

double tv(const RealVector& p0, const RealVector& q0) {
  same_size(p0, q0, "tv");
  RealVector p = checked(p0, "tv"), q = checked(q0, "tv");
  return 0.5 * (p - q).cwiseAbs().sum();
}

double hellinger_sq(const RealVector& p0, const RealVector& q0) {
  same_size(p0, q0, "hellinger_sq");
  RealVector p = checked(p0, "hellinger_sq"), q = checked(q0, "hellinger_sq");
  return (p.cwiseSqrt() - q.cwiseSqrt()).squaredNorm();
}

double bhattacharyya(const RealVector& p0, const RealVector& q0) {
  same_size(p0, q0, "bhattacharyya");
  RealVector p = checked(p0, "bhattacharyya"), q = checked(q0, "bhattacharyya");
  return p.cwiseProduct(q).cwiseSqrt().sum();
}

double kl(const RealVector& p0, const RealVector& q0) {
  same_size(p0, q0, "kl");
  RealVector p = checked(p0, "kl"), q = checked(q0, "kl");
  double s = 0.0;
  for (Index i = 0; i < p.size(); ++i) {
    if (p(i) == 0.0) continue;
    if (q(i) == 0.0) return kInf;
    s += p(i) * std::log(p(i) / q(i));
  }
  return s;
}

double chi2(const RealVector& p0, const RealVector& q0) {
  same_size(p0, q0, "chi2");
  RealVector p = checked(p0, "chi2"), q = checked(q0, "chi2");
  double s = 0.0;
  for (Index i = 0; i < p.size(); ++i) {
    if (q(i) == 0.0) {
      if (p(i) == 0.0) continue;
      return kInf;
    }
    double diff = p(i) - q(i);
    s += diff * diff / q(i);
  }
  return s;
}

double max_rel_entropy(const RealVector& p0, const RealVector& q0) {
  same_size(p0, q0, "max_rel_entropy");
  RealVector p = checked(p0, "max_rel_entropy"), q = checked(q0, "max_rel_entropy");
  double best = -kInf;
  for (Index i = 0; i < p.size(); ++i) {
    if (p(i) == 0.0) continue;
    if (q(i) == 0.0) return kInf;
    best = std::max(best, std::log(p(i) / q(i)));
  }
  return best;
}

double renyi(double alpha, const RealVector& p0, const RealVector& q0) {
  if (!(alpha >= 0.0)) throw InvalidArgument("renyi: alpha must be nonnegative");
  if (alpha == 1.0) return kl(p0, q0);
  if (std::isinf(alpha)) return max_rel_entropy(p0, q0);
  same_size(p0, q0, "renyi");
  RealVector p = checked(p0, "renyi"), q = checked(q0, "renyi");
  double s = 0.0;
  for (Index i = 0; i < p.size(); ++i) {
    if (p(i) == 0.0) continue;
    if (q(i) == 0.0) {
      if (alpha > 1.0) return kInf;
      continue;
    }
    s += std::pow(p(i), alpha) * std::pow(q(i), 1.0 - alpha);
  }
  if (s == 0.0) return kInf;
  return std::log(s) / (alpha - 1.0);
}

RealVector marginal(const RealVector& p_ab, int d, Side keep) {
  if (p_ab.size() != static_cast<Index>(d) * d) throw DimensionMismatch("marginal: size != d^2");
  RealVector out = RealVector::Zero(d);
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b) out(keep == Side::A ? a : b) += p_ab(a * d + b);
  return out;
}

RealVector outer_product(const RealVector& p, const RealVector& q) {
  RealVector out(p.size() * q.size());
  for (Index a = 0; a < p.size(); ++a)
    for (Index b = 0; b < q.size(); ++b) out(a * q.size() + b) = p(a) * q(b);
  return out;
}

double mutual_information_classical(const RealVector& p_ab, int d) {
  return kl(p_ab, outer_product(marginal(p_ab, d, Side::A), marginal(p_ab, d, Side::B)));
}

double trace_distance(const Matrix& rho, const Matrix& sigma) {
  same_shape(rho, sigma, "trace_distance");
  return 0.5 * eig_hermitian(rho - sigma).values.cwiseAbs().sum();
}

double fidelity(const Matrix& rho, const Matrix& sigma) {
  same_shape(rho, sigma, "fidelity");
  Matrix prod = psd_sqrt(rho) * psd_sqrt(sigma);
  Eigen::JacobiSVD<Matrix> svd(prod);
  return svd.singularValues().sum();
}

double bures_sq(const Matrix& rho, const Matrix& sigma) {
  return std::max(0.0, 2.0 * (1.0 - fidelity(rho, sigma)));
}

double hellinger_affinity(const Matrix& rho, const Matrix& sigma) {
  same_shape(rho, sigma, "hellinger_affinity");
  return (psd_sqrt(rho) * psd_sqrt(sigma)).trace().real();
}

double qhellinger_sq(const Matrix& rho, const Matrix& sigma) {
  same_shape(rho, sigma, "qhellinger_sq");
  return (psd_sqrt(rho) - psd_sqrt(sigma)).squaredNorm();
}

PQPair pq_pair(const Matrix& rho, const Matrix& sigma) {
  same_shape(rho, sigma, "pq_pair");
  auto a = clean_eig(rho);
  auto b = clean_eig(sigma);
  Eigen::MatrixXd w = overlaps(a, b);
  const Index d = rho.rows();
  PQPair out{RealVector(d * d), RealVector(d * d)};
  for (Index i = 0; i < d; ++i) {
    for (Index j = 0; j < d; ++j) {
      out.p(i * d + j) = w(i, j) * a.values(i);
      out.q(i * d + j) = w(i, j) * b.values(j);
    }
  }
  return out;
}

double qkl(const Matrix& rho, const Matrix& sigma) {
  auto pq = pq_pair(rho, sigma);
  return kl(pq.p, pq.q);
}

double q_dinf(const Matrix& rho, const Matrix& sigma) {
  same_shape(rho, sigma, "q_dinf");
  auto a = clean_eig(rho);
  auto b = clean_eig(sigma);
  Eigen::MatrixXd w = overlaps(a, b);
  double best = -kInf;
  for (Index i = 0; i < w.rows(); ++i) {
    if (a.values(i) == 0.0) continue;
    for (Index j = 0; j < w.cols(); ++j) {
      if (w(i, j) == 0.0) continue;
      if (b.values(j) == 0.0) return kInf;
      best = std::max(best, std::log(a.values(i) / b.values(j)));
    }
  }
  return best;
}

double qrenyi(double alpha, const Matrix& rho, const Matrix& sigma) {
  if (!(alpha >= 0.0)) throw InvalidArgument("qrenyi: alpha must be nonnegative");
  if (alpha == 1.0) return qkl(rho, sigma);
  if (std::isinf(alpha)) return q_dinf(rho, sigma);
  same_shape(rho, sigma, "qrenyi");
  auto a = clean_eig(rho);
  auto b = clean_eig(sigma);
  if (alpha > 1.0) {
    // Support of rho must lie inside the support of sigma.
    Eigen::MatrixXd w = overlaps(a, b);
    for (Index i = 0; i < w.rows(); ++i)
      for (Index j = 0; j < w.cols(); ++j)
        if (a.values(i) > 0.0 && b.values(j) == 0.0 && w(i, j) > 0.0) return kInf;
  }
  Matrix ra = spectral_apply(a, [&](double x) { return x > 0.0 ? std::pow(x, alpha) : 0.0; });
  Matrix sb =
      spectral_apply(b, [&](double x) { return x > 0.0 ? std::pow(x, 1.0 - alpha) : 0.0; });
  double s = (ra * sb).trace().real();
  if (!(s > 0.0)) return kInf;
  return std::log(s) / (alpha - 1.0);
}

BuresChi2Parts bures_chi2_parts(const Matrix& rho, const RealVector& q0) {
  if (rho.rows() != rho.cols() || rho.rows() != q0.size()) {
    throw DimensionMismatch("bures_chi2: rho and q sizes differ");
  }
  RealVector q = checked(q0, "bures_chi2");
  for (Index i = 0; i < q.size(); ++i)
    if (q(i) <= tol::kEigenCutoff) q(i) = 0.0;
  BuresChi2Parts parts;
  const Index d = q.size();
  for (Index i = 0; i < d; ++i) {
    for (Index j = 0; j < d; ++j) {
      Complex t = rho(i, j) - (i == j ? Complex(q(i), 0.0) : Complex(0.0, 0.0));
      double t2 = std::norm(t);
      double den = q(i) + q(j);
      double term;
      if (den == 0.0) {
        if (std::sqrt(t2) > tol::kPsd) return {kInf, kInf};
        term = 0.0;
      } else {
        term = 2.0 * t2 / den;
      }
      (i == j ? parts.on_diagonal : parts.off_diagonal) += term;
    }
  }
  return parts;
}

double bures_chi2_diag(const Matrix& rho, const RealVector& q) {
  auto parts = bures_chi2_parts(rho, q);
  return parts.total();
}

double bures_chi2(const Matrix& rho, const Matrix& sigma) {
  same_shape(rho, sigma, "bures_chi2");
  auto b = eig_hermitian(sigma);
  Matrix rot = b.vectors.adjoint() * rho * b.vectors;
  return bures_chi2_diag(rot, b.values);
}

double bures_chi2_minus(int l, const Matrix& rho, const RealVector& q0) {
  if (rho.rows() != rho.cols() || rho.rows() != q0.size()) {
    throw DimensionMismatch("bures_chi2_minus: rho and q sizes differ");
  }
  const Index d = q0.size();
  if (l < 0 || l > d) throw InvalidArgument("bures_chi2_minus: prefix length out of range");
  RealVector q = checked(q0, "bures_chi2_minus");
  double s = 0.0;
  for (Index i = 0; i < d; ++i) {
    for (Index j = 0; j < d; ++j) {
      Index k = std::max(i, j);
      if (k < l) continue;
      Complex t = rho(i, j) - (i == j ? Complex(q(i), 0.0) : Complex(0.0, 0.0));
      double t2 = std::norm(t);
      if (q(k) <= tol::kEigenCutoff) {
        if (std::sqrt(t2) > tol::kPsd) return kInf;
        continue;
      }
      s += 2.0 * t2 / q(k);
    }
  }
  return s;
}

double bures_chi2_minus(const IndexSet& l, const Matrix& rho, const RealVector& q) {
  for (std::size_t k = 0; k < l.size(); ++k) {
    if (l[k] != static_cast<int>(k)) {
      throw InvalidArgument("bures_chi2_minus: L must be a prefix [d']");
    }
  }
  return bures_chi2_minus(static_cast<int>(l.size()), rho, q);
}

double bures_chi2_hat(const Matrix& rho, const RealVector& q) {
  for (Index i = 1; i < q.size(); ++i) {
    if (q(i) < q(i - 1)) throw InvalidArgument("bures_chi2_hat: q must be nondecreasing");
  }
  return bures_chi2_minus(0, rho, q);
}

double mutual_information_quantum(const Matrix& rho_ab) {
  Matrix a = partial_trace(rho_ab, Side::A);
  Matrix b = partial_trace(rho_ab, Side::B);
  return qkl(rho_ab, kron(a, b));
}

const std::vector<std::string>& quantum_divergence_names() {
  static const std::vector<std::string> names = {
      "trace_distance", "fidelity", "bures_sq", "hellinger_affinity", "qhellinger_sq",
      "qkl", "qrenyi_0.5", "qrenyi_2", "q_dinf", "bures_chi2"};
  return names;
}

double evaluate_divergence(const std::string& name, const Matrix& a, const Matrix& b) {
  if (name == "trace_distance") return trace_distance(a, b);
  if (name == "fidelity") return fidelity(a, b);
  if (name == "bures_sq") return bures_sq(a, b);
  if (name == "hellinger_affinity") return hellinger_affinity(a, b);
  if (name == "qhellinger_sq") return qhellinger_sq(a, b);
  if (name == "qkl") return qkl(a, b);
  if (name == "q_dinf") return q_dinf(a, b);
  if (name == "bures_chi2") return bures_chi2(a, b);
  if (name.rfind("qrenyi_", 0) == 0) {
    std::string tail = name.substr(7);
    double alpha = tail == "inf" ? kInf : std::stod(tail);
    return qrenyi(alpha, a, b);
  }
  throw InvalidArgument("unknown divergence: " + name);
}

}  // namespace chi2tomo
