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

#ifndef CHI2TOMO_MEASUREMENT_HPP
#define CHI2TOMO_MEASUREMENT_HPP

#include <array>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "chi2tomo/classical.hpp"
#include "chi2tomo/common.hpp"
#include "chi2tomo/linalg.hpp"
#include "chi2tomo/rng.hpp"

namespace chi2tomo {

/// Positive operator-valued measure with labelled elements summing to I.
class Povm {
 public:
  Povm() = default;
  Povm(std::vector<Matrix> elements, std::vector<std::string> labels);

  int dim() const { return dim_; }
  std::size_t size() const { return elements_.size(); }
  const std::vector<Matrix>& elements() const { return elements_; }
  const std::vector<std::string>& labels() const { return labels_; }

  // Projective measurement onto the columns of `basis`.
  static Povm from_basis(const Matrix& basis, const std::string& prefix = "");
  static Povm computational(int d);

 private:
  int dim_ = 0;
  std::vector<Matrix> elements_;
  std::vector<std::string> labels_;
};

/// Copies of a state available to an algorithm; spending past `total` throws.
class CopyBudget {
 public:
  explicit CopyBudget(Copies total = 0) : total_(total) {
    if (total < 0) throw InvalidArgument("CopyBudget: negative total");
  }
  Copies total() const { return total_; }
  Copies consumed() const { return consumed_; }
  Copies remaining() const { return total_ - consumed_; }
  void consume(Copies k);

 private:
  Copies total_;
  Copies consumed_ = 0;
};

RealVector born_probabilities(const Matrix& rho, const Povm& povm);

SampleCounts sample_measurement(const Matrix& rho, const Povm& povm, Copies k,
                                CopyBudget& budget, Rng& rng);
std::vector<int> sample_outcomes(const Matrix& rho, const Povm& povm, Copies k,
                                 CopyBudget& budget, Rng& rng);

// Perfect matchings of K_n (n even) by the round-robin construction; n - 1 rounds.
std::vector<std::vector<std::pair<int, int>>> round_robin_matchings(int n);

/// The 2(d-1) matching POVMs for even d; odd d is padded to d + 1 and each
/// element restricted back to C^d. POVM 2t is X-type and 2t+1 is Y-type for
/// matching t. Outcomes come in +/- pairs, index 2k and 2k+1 for pair k.
struct MatchingPovms {
  int dim = 0;
  std::vector<std::vector<std::pair<int, int>>> matchings;
  std::vector<Povm> povms;
};
MatchingPovms matching_povms(int d);

// Projective X, Y and Z measurements on a qubit, in that order.
std::array<Povm, 3> pauli_bases();

/// Sampling access to copies of an unknown state.
///
/// The working frame can be rotated: after rotate(U) every measurement acts
/// on U rho U^dagger. truth() exposes the state for oracle estimators and
/// for evaluation; algorithms do not read it.
class StateAccess {
 public:
  StateAccess(Matrix rho, Copies copies, Rng rng);

  int dim() const { return static_cast<int>(rho_.rows()); }
  const Matrix& truth() const { return rho_; }
  CopyBudget& budget() { return budget_; }
  const CopyBudget& budget() const { return budget_; }
  Rng& rng() { return rng_; }

  SampleCounts measure(const Povm& povm, Copies k);
  // Measurement in the computational basis of the current frame.
  SampleCounts measure_basis(Copies k);
  // Measurement in the basis given by the columns of `basis`.
  SampleCounts measure_in(const Matrix& basis, Copies k);
  // Charges k copies without measuring (used by oracle routines).
  void spend(Copies k) { budget_.consume(k); }

  void rotate(const Matrix& u);

 private:
  Matrix rho_;
  CopyBudget budget_;
  Rng rng_;
};

/// Outcome of filtering k copies with {Pi_S, I - Pi_S}.
struct FilterResult {
  Copies kept = 0;
  std::unique_ptr<StateAccess> conditional;  // rho_{|S} with `kept` copies
};

FilterResult filter_subset(StateAccess& access, const IndexSet& s, Copies k);

}  // namespace chi2tomo

#endif  // CHI2TOMO_MEASUREMENT_HPP
