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

#include <gtest/gtest.h>

#include <cmath>

#include "chi2tomo/linalg.hpp"

namespace chi2tomo {
namespace {

TEST(DensityMatrix, RejectsNonHermitianInput) {
  Matrix m = Matrix::Identity(2, 2) / 2.0;
  m(0, 1) = Complex(0.1, 0.0);
  EXPECT_THROW(DensityMatrix::from_matrix(m), NotHermitian);
}

TEST(DensityMatrix, RejectsWrongTraceAndNegativeEigenvalue) {
  EXPECT_THROW(DensityMatrix::from_matrix(Matrix::Identity(2, 2)), InvalidArgument);
  Matrix m(2, 2);
  m << 1.2, 0.0, 0.0, -0.2;
  EXPECT_THROW(DensityMatrix::from_matrix(m), InvalidArgument);
}

TEST(DensityMatrix, DimensionBounds) {
  EXPECT_NO_THROW(DensityMatrix::from_matrix(Matrix(0, 0), 0.0));
  EXPECT_THROW(DensityMatrix::from_matrix(Matrix::Identity(65, 65) / 65.0), InvalidArgument);
  EXPECT_NO_THROW(DensityMatrix::from_matrix(Matrix::Identity(64, 64) / 64.0));
}

TEST(DensityMatrix, SubnormalizedKeepsTrace) {
  Matrix m = Matrix::Identity(3, 3) * 0.1;
  DensityMatrix s = DensityMatrix::subnormalized(m);
  EXPECT_NEAR(s.trace(), 0.3, 1e-15);
}

TEST(EigHermitian, ReconstructsInputWithAscendingValues) {
  Rng rng = derive_rng(1, 0);
  for (int d : {1, 2, 5, 16}) {
    Matrix h = random_state(d, d, rng).matrix();
    SpectralDecomposition e = eig_hermitian(h);
    for (int i = 1; i < d; ++i) EXPECT_LE(e.values(i - 1), e.values(i));
    Matrix back = e.vectors * e.values.cast<Complex>().asDiagonal() * e.vectors.adjoint();
    EXPECT_LT((back - h).norm(), 1e-12);
  }
}

TEST(EigHermitian, RejectsNonHermitian) {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 1) = 1.0;
  EXPECT_THROW(eig_hermitian(m), NotHermitian);
}

TEST(RandomState, RankTraceAndDeterminism) {
  for (int r = 1; r <= 6; ++r) {
    DensityMatrix rho = random_state(6, r, 42);
    EXPECT_NEAR(trace_real(rho.matrix()), 1.0, 1e-12);
    RealVector v = eig_hermitian(rho.matrix()).values;
    int positive = 0;
    for (int i = 0; i < 6; ++i) positive += v(i) > 1e-10 ? 1 : 0;
    EXPECT_EQ(positive, r);
    EXPECT_EQ((random_state(6, r, 42).matrix() - rho.matrix()).norm(), 0.0);
  }
  EXPECT_THROW(random_state(4, 0, 1), InvalidArgument);
  EXPECT_THROW(random_state(4, 5, 1), InvalidArgument);
}

TEST(RandomUnitary, IsUnitary) {
  Rng rng = derive_rng(2, 0);
  for (int d : {1, 3, 8}) EXPECT_TRUE(is_unitary(random_unitary(d, rng)));
}

TEST(Depolarize, SpectrumFloorAndEndpoints) {
  DensityMatrix rho = random_state(5, 1, 3);
  for (double eps : {0.0, 0.1, 0.5, 1.0}) {
    DensityMatrix out = depolarize(rho, eps);
    EXPECT_GE(eig_hermitian(out.matrix()).values.minCoeff(), eps / 5.0 - 1e-12);
  }
  EXPECT_LT((depolarize(rho, 0.0).matrix() - rho.matrix()).norm(), 1e-15);
  EXPECT_LT((depolarize(rho, 1.0).matrix() - maximally_mixed(5).matrix()).norm(), 1e-15);
  EXPECT_THROW(depolarize(rho, 1.5), InvalidArgument);
}

TEST(Submatrix, RestrictionNormalizesAndZeroMassThrows) {
  Matrix m = Matrix::Zero(3, 3);
  m(0, 0) = 0.25;
  m(2, 2) = 0.75;
  DensityMatrix rho = DensityMatrix::from_matrix(m);
  DensityMatrix block = submatrix(rho, {0, 2});
  EXPECT_NEAR(block.trace(), 1.0, 1e-15);
  DensityMatrix r = restrict_to(rho, {2});
  EXPECT_NEAR(r.matrix()(0, 0).real(), 1.0, 1e-15);
  EXPECT_THROW(restrict_to(rho, {1}), ZeroMass);
  EXPECT_THROW(submatrix(rho, {2, 0}), InvalidArgument);
}

TEST(ZeroExtend, PlacesBlock) {
  Matrix b = Matrix::Identity(2, 2);
  Matrix z = zero_extend(b, {1, 3}, 4);
  EXPECT_EQ(z(1, 1), Complex(1.0));
  EXPECT_EQ(z(3, 3), Complex(1.0));
  EXPECT_EQ(z(0, 0), Complex(0.0));
  EXPECT_THROW(zero_extend(b, {1}, 4), DimensionMismatch);
}

TEST(PartialTrace, RecoversFactorsOfProduct) {
  Matrix a = random_state(3, 2, 5).matrix();
  Matrix b = random_state(3, 3, 6).matrix();
  Matrix ab = kron(a, b);
  EXPECT_LT((partial_trace(ab, Side::A) - a).norm(), 1e-13);
  EXPECT_LT((partial_trace(ab, Side::B) - b).norm(), 1e-13);
  EXPECT_THROW(partial_trace(Matrix::Identity(3, 3) / 3.0, Side::A), DimensionMismatch);
}

TEST(PartialTrace, BellMarginalsAreMaximallyMixed) {
  Matrix phi = Matrix::Zero(4, 1);
  phi(0, 0) = phi(3, 0) = 1.0 / std::sqrt(2.0);
  Matrix bell = phi * phi.adjoint();
  EXPECT_LT((partial_trace(bell, Side::A) - Matrix::Identity(2, 2) / 2.0).norm(), 1e-15);
}

TEST(Conjugate, PreservesSpectrumAndRejectsNonUnitary) {
  Rng rng = derive_rng(7, 0);
  DensityMatrix rho = random_state(4, 4, rng);
  Matrix u = random_unitary(4, rng);
  RealVector a = eig_hermitian(rho.matrix()).values;
  RealVector b = eig_hermitian(conjugate(rho, u).matrix()).values;
  EXPECT_LT((a - b).norm(), 1e-12);
  EXPECT_THROW(conjugate(rho, 2.0 * u), NotUnitary);
}

TEST(DirectSumIdentity, EmbedsBlock) {
  Rng rng = derive_rng(8, 0);
  Matrix u = random_unitary(2, rng);
  Matrix w = direct_sum_identity(u, 4);
  EXPECT_TRUE(is_unitary(w));
  EXPECT_LT((w.topLeftCorner(2, 2) - u).norm(), 1e-15);
  EXPECT_EQ(w(3, 3), Complex(1.0));
}

TEST(IndexSets, HelpersAndValidation) {
  EXPECT_EQ(prefix(3), (IndexSet{0, 1, 2}));
  EXPECT_EQ(range(2, 4), (IndexSet{2, 3}));
  EXPECT_EQ(complement({1, 3}, 5), (IndexSet{0, 2, 4}));
  EXPECT_THROW(validate_index_set({0, 0}, 3), InvalidArgument);
  EXPECT_THROW(validate_index_set({5}, 3), InvalidArgument);
}

TEST(PsdSqrt, SquaresBack) {
  Matrix rho = random_state(6, 3, 9).matrix();
  Matrix s = psd_sqrt(rho);
  EXPECT_LT((s * s - rho).norm(), 1e-10);
}

}  // namespace
}  // namespace chi2tomo
