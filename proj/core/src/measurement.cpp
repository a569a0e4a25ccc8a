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

#include "chi2tomo/measurement.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

namespace chi2tomo {

Povm::Povm(std::vector<Matrix> elements, std::vector<std::string> labels)
    : elements_(std::move(elements)), labels_(std::move(labels)) {
  if (elements_.empty()) throw InvalidArgument("Povm: no elements");
  if (labels_.size() != elements_.size()) throw InvalidArgument("Povm: label count mismatch");
  dim_ = static_cast<int>(elements_.front().rows());
  Matrix sum = Matrix::Zero(dim_, dim_);
  for (const auto& e : elements_) {
    if (e.rows() != dim_ || e.cols() != dim_) throw DimensionMismatch("Povm: element size");
    if (!is_hermitian(e)) throw NotHermitian("Povm: element is not Hermitian");
    if (eig_hermitian(e).values.minCoeff() < -tol::kPovm) {
      throw InvalidArgument("Povm: element is not positive semidefinite");
    }
    sum += e;
  }
  if ((sum - Matrix::Identity(dim_, dim_)).cwiseAbs().maxCoeff() > tol::kPovm) {
    throw InvalidArgument("Povm: elements do not sum to the identity");
  }
}

Povm Povm::from_basis(const Matrix& basis, const std::string& prefix) {
  if (!is_unitary(basis)) throw NotUnitary("Povm::from_basis: basis is not orthonormal");
  std::vector<Matrix> el;
  std::vector<std::string> labels;
  for (Index k = 0; k < basis.cols(); ++k) {
    el.push_back(basis.col(k) * basis.col(k).adjoint());
    labels.push_back(prefix + std::to_string(k));
  }
  return Povm(std::move(el), std::move(labels));
}

Povm Povm::computational(int d) { return from_basis(Matrix::Identity(d, d), "z"); }

void CopyBudget::consume(Copies k) {
  if (k < 0) throw InvalidArgument("CopyBudget: negative request");
  if (k > remaining()) {
    throw BudgetExhausted("copy budget exhausted: requested " + std::to_string(k) + ", " +
                          std::to_string(remaining()) + " left");
  }
  consumed_ += k;
}

RealVector born_probabilities(const Matrix& rho, const Povm& povm) {
  if (rho.rows() != povm.dim()) throw DimensionMismatch("born_probabilities: dimension");
  RealVector p(povm.size());
  for (std::size_t k = 0; k < povm.size(); ++k) {
    double v = rho.cwiseProduct(povm.elements()[k].transpose()).sum().real();
    p(k) = std::max(0.0, v);
  }
  return p;
}

SampleCounts sample_measurement(const Matrix& rho, const Povm& povm, Copies k,
                                CopyBudget& budget, Rng& rng) {
  budget.consume(k);
  if (k == 0) return SampleCounts{std::vector<Copies>(povm.size(), 0)};
  return sample_multinomial(born_probabilities(rho, povm), k, rng);
}

std::vector<int> sample_outcomes(const Matrix& rho, const Povm& povm, Copies k,
                                 CopyBudget& budget, Rng& rng) {
  budget.consume(k);
  RealVector p = born_probabilities(rho, povm);
  std::discrete_distribution<int> dist(p.data(), p.data() + p.size());
  std::vector<int> out(static_cast<std::size_t>(k));
  for (auto& o : out) o = dist(rng);
  return out;
}

std::vector<std::vector<std::pair<int, int>>> round_robin_matchings(int n) {
  if (n < 2 || n % 2 != 0) throw InvalidArgument("round_robin_matchings: n must be even");
  std::vector<std::vector<std::pair<int, int>>> rounds;
  const int m = n - 1;
  for (int r = 0; r < m; ++r) {
    std::vector<std::pair<int, int>> match;
    match.emplace_back(std::min(r, m), std::max(r, m));
    for (int k = 1; k < n / 2; ++k) {
      int a = (r + k) % m;
      int b = (r - k + m) % m;
      match.emplace_back(std::min(a, b), std::max(a, b));
    }
    rounds.push_back(std::move(match));
  }
  return rounds;
}

MatchingPovms matching_povms(int d) {
  if (d < 2) throw InvalidArgument("matching_povms: d must be at least 2");
  const int n = d % 2 == 0 ? d : d + 1;
  MatchingPovms out;
  out.dim = d;
  out.matchings = round_robin_matchings(n);
  const Complex I(0.0, 1.0);
  for (const auto& match : out.matchings) {
    for (int type = 0; type < 2; ++type) {
      std::vector<Matrix> el;
      std::vector<std::string> labels;
      for (auto [i, j] : match) {
        for (int sign : {+1, -1}) {
          Matrix e = Matrix::Zero(n, n);
          e(i, i) += 0.5;
          e(j, j) += 0.5;
          if (type == 0) {
            e(i, j) += 0.5 * sign;
            e(j, i) += 0.5 * sign;
          } else {
            e(i, j) += 0.5 * sign * I;
            e(j, i) -= 0.5 * sign * I;
          }
          el.push_back(e.topLeftCorner(d, d));
          labels.push_back(std::string(type == 0 ? "X" : "Y") + (sign > 0 ? "+" : "-") + "(" +
                           std::to_string(i) + "," + std::to_string(j) + ")");
        }
      }
      out.povms.emplace_back(std::move(el), std::move(labels));
    }
  }
  return out;
}

std::array<Povm, 3> pauli_bases() {
  const double s = 1.0 / std::sqrt(2.0);
  const Complex I(0.0, 1.0);
  Matrix x(2, 2), y(2, 2);
  x << s, s, s, -s;
  y << s, s, s * I, -s * I;
  return {Povm::from_basis(x, "x"), Povm::from_basis(y, "y"),
          Povm::from_basis(Matrix::Identity(2, 2), "z")};
}

StateAccess::StateAccess(Matrix rho, Copies copies, Rng rng)
    : rho_(std::move(rho)), budget_(copies), rng_(std::move(rng)) {
  if (rho_.rows() != rho_.cols()) throw DimensionMismatch("StateAccess: state is not square");
}

SampleCounts StateAccess::measure(const Povm& povm, Copies k) {
  return sample_measurement(rho_, povm, k, budget_, rng_);
}

SampleCounts StateAccess::measure_basis(Copies k) {
  budget_.consume(k);
  RealVector p = rho_.diagonal().real().cwiseMax(0.0);
  if (k == 0) return SampleCounts{std::vector<Copies>(p.size(), 0)};
  return sample_multinomial(p, k, rng_);
}

SampleCounts StateAccess::measure_in(const Matrix& basis, Copies k) {
  if (basis.rows() != dim() || !is_unitary(basis)) {
    throw NotUnitary("measure_in: basis is not orthonormal");
  }
  budget_.consume(k);
  RealVector p = (basis.adjoint() * rho_ * basis).diagonal().real().cwiseMax(0.0);
  if (k == 0) return SampleCounts{std::vector<Copies>(p.size(), 0)};
  return sample_multinomial(p, k, rng_);
}

void StateAccess::rotate(const Matrix& u) {
  if (u.rows() != dim() || !is_unitary(u)) throw NotUnitary("StateAccess::rotate: not unitary");
  rho_ = hermitianize(u * rho_ * u.adjoint());
}

FilterResult filter_subset(StateAccess& access, const IndexSet& s, Copies k) {
  validate_index_set(s, access.dim());
  access.budget().consume(k);
  Matrix block = submatrix(access.truth(), s);
  double tau = std::max(0.0, trace_real(block));
  FilterResult out;
  out.kept = binomial(access.rng(), k, std::min(tau, 1.0));
  Rng child_rng = fork(access.rng());
  Matrix cond = tau > 0.0 ? Matrix(block / tau) : Matrix::Zero(block.rows(), block.cols());
  out.conditional = std::make_unique<StateAccess>(std::move(cond), out.kept, std::move(child_rng));
  return out;
}

}  // namespace chi2tomo
