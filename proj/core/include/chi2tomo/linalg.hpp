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

#ifndef CHI2TOMO_LINALG_HPP
#define CHI2TOMO_LINALG_HPP

#include <functional>
#include <optional>

#include "chi2tomo/common.hpp"
#include "chi2tomo/rng.hpp"

namespace chi2tomo {

/// Spectral decomposition H = U diag(values) U^dagger with values ascending.
struct SpectralDecomposition {
  RealVector values;
  Matrix vectors;
};

/// Positive semidefinite matrix with a declared trace.
///
/// Normalized states carry trace 1. Subnormalized blocks such as rho[S]
/// carry their own trace tau, checked on construction.
class DensityMatrix {
 public:
  DensityMatrix() = default;

  // Validates PSD, Hermiticity and that tr(m) matches `trace`.
  static DensityMatrix from_matrix(const Matrix& m, double trace = 1.0,
                                   std::optional<int> rank_hint = std::nullopt);
  // As above, taking the trace from the matrix itself.
  static DensityMatrix subnormalized(const Matrix& m,
                                     std::optional<int> rank_hint = std::nullopt);

  const Matrix& matrix() const noexcept { return m_; }
  int dim() const noexcept { return static_cast<int>(m_.rows()); }
  double trace() const noexcept { return trace_; }
  std::optional<int> rank_hint() const noexcept { return rank_hint_; }

 private:
  DensityMatrix(Matrix m, double trace, std::optional<int> rank_hint)
      : m_(std::move(m)), trace_(trace), rank_hint_(rank_hint) {}

  Matrix m_;
  double trace_ = 0.0;
  std::optional<int> rank_hint_;
};

double hermitian_defect(const Matrix& a);
bool is_hermitian(const Matrix& a, double tol = tol::kHermitian);
bool is_unitary(const Matrix& u, double tol = tol::kUnitary);
Matrix hermitianize(const Matrix& a);

SpectralDecomposition eig_hermitian(const Matrix& h);

// f applied to the spectrum of a Hermitian matrix.
Matrix spectral_apply(const SpectralDecomposition& eig, const std::function<double(double)>& f);
Matrix spectral_apply(const Matrix& h, const std::function<double(double)>& f);

// PSD square root; eigenvalues at or below the cutoff are set to zero.
Matrix psd_sqrt(const Matrix& h);

// Ginibre state G G^dagger / tr with G a d x r standard complex Gaussian.
DensityMatrix random_state(int d, int r, Rng& rng);
DensityMatrix random_state(int d, int r, std::uint64_t seed);
DensityMatrix random_pure_state(int d, Rng& rng);
Matrix random_unitary(int d, Rng& rng);

DensityMatrix maximally_mixed(int d);

// (1 - eps) rho + eps tr(rho) I / d.
DensityMatrix depolarize(const DensityMatrix& rho, double eps);
Matrix depolarize(const Matrix& rho, double eps);

// rho[S]: principal submatrix, subnormalized.
DensityMatrix submatrix(const DensityMatrix& rho, const IndexSet& s);
Matrix submatrix(const Matrix& rho, const IndexSet& s);
// rho_{|S} = rho[S] / tr rho[S]; throws ZeroMass when the block is empty.
DensityMatrix restrict_to(const DensityMatrix& rho, const IndexSet& s);
// Embeds a |S| x |S| block into d x d with zeros elsewhere.
Matrix zero_extend(const Matrix& block, const IndexSet& s, int d);

enum class Side { A, B };

// Keeps subsystem `keep` of a state on C^d (x) C^d.
DensityMatrix partial_trace(const DensityMatrix& rho_ab, Side keep);
Matrix partial_trace(const Matrix& rho_ab, Side keep);

Matrix kron(const Matrix& a, const Matrix& b);

// U rho U^dagger; throws NotUnitary.
DensityMatrix conjugate(const DensityMatrix& rho, const Matrix& u);

// Block-diagonal U (+) I_{d - dim U}.
Matrix direct_sum_identity(const Matrix& u, int d);

IndexSet prefix(int n);
IndexSet range(int lo, int hi);
IndexSet complement(const IndexSet& s, int d);
void validate_index_set(const IndexSet& s, int d);

double trace_real(const Matrix& a);

}  // namespace chi2tomo

#endif  // CHI2TOMO_LINALG_HPP
