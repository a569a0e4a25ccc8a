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

#ifndef CHI2TOMO_COMMON_HPP
#define CHI2TOMO_COMMON_HPP

#include <complex>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace chi2tomo {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using RealVector = Eigen::VectorXd;
using Index = Eigen::Index;
using IndexSet = std::vector<int>;

// Copy counts can exceed 2^31 in the tomography pipelines.
using Copies = std::int64_t;

inline constexpr double kInf = std::numeric_limits<double>::infinity();

namespace tol {
// Hermiticity of matrices accepted by the eigensolver.
inline constexpr double kHermitian = 1e-10;
// Entry-wise Hermiticity guaranteed for constructed matrices.
inline constexpr double kHermitianStrict = 1e-12;
// Eigenvalues above -kPsd are accepted as nonnegative.
inline constexpr double kPsd = 1e-10;
// Trace of a normalized state.
inline constexpr double kTrace = 1e-10;
// Unitarity of U^dagger U.
inline constexpr double kUnitary = 1e-10;
// Relative residual of a spectral decomposition.
inline constexpr double kResidual = 1e-9;
// Eigenvalue weights at or below this are treated as exactly zero.
inline constexpr double kEigenCutoff = 1e-12;
// Squared eigenvector overlaps below this are treated as exactly zero.
inline constexpr double kOverlapCutoff = 1e-14;
// POVM completeness.
inline constexpr double kPovm = 1e-10;
// Probability entries below -kProb are rejected.
inline constexpr double kProb = 1e-12;
}  // namespace tol

inline constexpr int kMaxDim = 64;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class NotHermitian : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

class NotUnitary : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

class DimensionMismatch : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

class ZeroMass : public Error {
 public:
  using Error::Error;
};

class BudgetExhausted : public Error {
 public:
  using Error::Error;
};

class InsufficientSamples : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  ConfigError(std::string field, const std::string& what)
      : Error(field + ": " + what), field_(std::move(field)) {}
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

}  // namespace chi2tomo

#endif  // CHI2TOMO_COMMON_HPP
