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

#ifndef CHI2TOMO_DIVERGENCES_HPP
#define CHI2TOMO_DIVERGENCES_HPP

#include <string>
#include <vector>

#include "chi2tomo/common.hpp"
#include "chi2tomo/linalg.hpp"

namespace chi2tomo {

// Classical divergences over nonnegative vectors. Subnormalized inputs are
// accepted; 0/0 = 0 and x/0 = +inf. Infinity is a regular return value.

double tv(const RealVector& p, const RealVector& q);
double hellinger_sq(const RealVector& p, const RealVector& q);
double bhattacharyya(const RealVector& p, const RealVector& q);
double kl(const RealVector& p, const RealVector& q);
double chi2(const RealVector& p, const RealVector& q);
double renyi(double alpha, const RealVector& p, const RealVector& q);
double max_rel_entropy(const RealVector& p, const RealVector& q);

// KL(p_AB || p_A x p_B) for a joint distribution on [d] x [d], index a * d + b.
double mutual_information_classical(const RealVector& p_ab, int d);
RealVector marginal(const RealVector& p_ab, int d, Side keep);
RealVector outer_product(const RealVector& p, const RealVector& q);

// Quantum divergences. Eigenvalues at or below tol::kEigenCutoff count as zero.

double trace_distance(const Matrix& rho, const Matrix& sigma);
// F = || sqrt(rho) sqrt(sigma) ||_1 (root fidelity).
double fidelity(const Matrix& rho, const Matrix& sigma);
// D_B^2 = 2 (1 - F).
double bures_sq(const Matrix& rho, const Matrix& sigma);
double hellinger_affinity(const Matrix& rho, const Matrix& sigma);
double qhellinger_sq(const Matrix& rho, const Matrix& sigma);

/// Classical pair whose divergences reproduce the Petz-type quantum ones.
///
/// P_ij = |<phi_i|psi_j>|^2 p_i and Q_ij = |<phi_i|psi_j>|^2 q_j, stored at
/// index i * d + j, for rho = sum_i p_i |phi_i><phi_i| and
/// sigma = sum_j q_j |psi_j><psi_j|.
struct PQPair {
  RealVector p;
  RealVector q;
};
PQPair pq_pair(const Matrix& rho, const Matrix& sigma);

double qkl(const Matrix& rho, const Matrix& sigma);
double qrenyi(double alpha, const Matrix& rho, const Matrix& sigma);
double q_dinf(const Matrix& rho, const Matrix& sigma);

// Bures chi-squared, sum_ij 2 |tau_ij|^2 / (q_i + q_j) in the eigenbasis of
// sigma. Pairs with q_i + q_j = 0 contribute +inf if tau_ij != 0, else 0.
double bures_chi2(const Matrix& rho, const Matrix& sigma);
// Same, for sigma = diag(q) in the given basis.
double bures_chi2_diag(const Matrix& rho, const RealVector& q);

struct BuresChi2Parts {
  double on_diagonal = 0.0;
  double off_diagonal = 0.0;
  double total() const { return on_diagonal + off_diagonal; }
};
BuresChi2Parts bures_chi2_parts(const Matrix& rho, const RealVector& q);

// sum_ij 2 |tau_ij|^2 / q_max(i,j) with sigma = diag(q), q nondecreasing.
double bures_chi2_hat(const Matrix& rho, const RealVector& q);
// Terms with max(i, j) outside the prefix L = [l] only.
double bures_chi2_minus(int l, const Matrix& rho, const RealVector& q);
double bures_chi2_minus(const IndexSet& l, const Matrix& rho, const RealVector& q);

// qkl(rho_AB || rho_A (x) rho_B) for a state on C^d (x) C^d.
double mutual_information_quantum(const Matrix& rho_ab);

// Names accepted by evaluate_divergence and the CLI.
const std::vector<std::string>& quantum_divergence_names();
double evaluate_divergence(const std::string& name, const Matrix& a, const Matrix& b);

}  // namespace chi2tomo

#endif  // CHI2TOMO_DIVERGENCES_HPP
