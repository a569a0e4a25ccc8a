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

#include "chi2tomo/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace chi2tomo {

namespace {

void check_square(const Matrix& a, const char* what) {
  if (a.rows() != a.cols()) {
    throw DimensionMismatch(std::string(what) + ": matrix is not square");
  }
}

void check_dim(int d, const char* what) {
  if (d < 1 || d > kMaxDim) {
    throw InvalidArgument(std::string(what) + ": dimension must lie in [1, 64], got " +
                          std::to_string(d));
  }
}

}  // namespace

DensityMatrix DensityMatrix::from_matrix(const Matrix& m, double trace,
                                         std::optional<int> rank_hint) {
  check_square(m, "DensityMatrix");
  if (m.rows() > kMaxDim) throw InvalidArgument("DensityMatrix: dimension exceeds 64");
  if (!is_hermitian(m)) throw NotHermitian("DensityMatrix: input is not Hermitian");
  Matrix h = hermitianize(m);
  double tr = trace_real(h);
  if (std::abs(tr - trace) > tol::kTrace * std::max(1.0, std::abs(trace))) {
    throw InvalidArgument("DensityMatrix: trace " + std::to_string(tr) + " differs from " +
                          std::to_string(trace));
  }
  auto eig = eig_hermitian(h);
  if (eig.values.size() > 0 && eig.values(0) < -tol::kPsd) {
    throw InvalidArgument("DensityMatrix: negative eigenvalue " +
                          std::to_string(eig.values(0)));
  }
  if (rank_hint && (*rank_hint < 0 || *rank_hint > h.rows())) {
    throw InvalidArgument("DensityMatrix: rank_hint out of range");
  }
  return DensityMatrix(std::move(h), trace, rank_hint);
}

DensityMatrix DensityMatrix::subnormalized(const Matrix& m, std::optional<int> rank_hint) {
  check_square(m, "DensityMatrix");
  return from_matrix(m, trace_real(m), rank_hint);
}

double hermitian_defect(const Matrix& a) {
  if (a.size() == 0) return 0.0;
  return (a - a.adjoint()).cwiseAbs().maxCoeff();
}

bool is_hermitian(const Matrix& a, double tol) {
  if (a.rows() != a.cols()) return false;
  if (a.size() == 0) return true;
  double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
  return hermitian_defect(a) <= tol * scale;
}

bool is_unitary(const Matrix& u, double tol) {
  if (u.rows() != u.cols()) return false;
  Matrix g = u.adjoint() * u - Matrix::Identity(u.rows(), u.cols());
  return g.size() == 0 || g.cwiseAbs().maxCoeff() <= tol;
}

Matrix hermitianize(const Matrix& a) {
  check_square(a, "hermitianize");
  return 0.5 * (a + a.adjoint());
}

SpectralDecomposition eig_hermitian(const Matrix& h) {
  check_square(h, "eig_hermitian");
  if (!is_hermitian(h)) throw NotHermitian("eig_hermitian: input is not Hermitian");
  SpectralDecomposition out;
  if (h.rows() == 0) {
    out.values = RealVector(0);
    out.vectors = Matrix(0, 0);
    return out;
  }
  Eigen::SelfAdjointEigenSolver<Matrix> solver(hermitianize(h));
  if (solver.info() != Eigen::Success) throw Error("eig_hermitian: solver failed");
  out.values = solver.eigenvalues();
  out.vectors = solver.eigenvectors();
  return out;
}

Matrix spectral_apply(const SpectralDecomposition& eig,
                      const std::function<double(double)>& f) {
  RealVector fv = eig.values.unaryExpr([&](double x) { return f(x); });
  return eig.vectors * fv.cast<Complex>().asDiagonal() * eig.vectors.adjoint();
}

Matrix spectral_apply(const Matrix& h, const std::function<double(double)>& f) {
  return spectral_apply(eig_hermitian(h), f);
}

Matrix psd_sqrt(const Matrix& h) {
  return spectral_apply(h, [](double x) { return x > tol::kEigenCutoff ? std::sqrt(x) : 0.0; });
}

DensityMatrix random_state(int d, int r, Rng& rng) {
  check_dim(d, "random_state");
  if (r < 1 || r > d) throw InvalidArgument("random_state: rank must lie in [1, d]");
  Matrix g(d, r);
  const double s = std::sqrt(0.5);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < r; ++j) {
      double re = standard_normal(rng);
      double im = standard_normal(rng);
      g(i, j) = Complex(s * re, s * im);
    }
  }
  Matrix rho = g * g.adjoint();
  rho /= trace_real(rho);
  return DensityMatrix::from_matrix(hermitianize(rho), 1.0, r);
}

DensityMatrix random_state(int d, int r, std::uint64_t seed) {
  Rng rng = derive_rng(seed, 0);
  return random_state(d, r, rng);
}

DensityMatrix random_pure_state(int d, Rng& rng) { return random_state(d, 1, rng); }

Matrix random_unitary(int d, Rng& rng) {
  check_dim(d, "random_unitary");
  Matrix g(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) g(i, j) = Complex(standard_normal(rng), standard_normal(rng));
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ() * Matrix::Identity(d, d);
  Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < d; ++j) {
    Complex ph = r(j, j) / std::abs(r(j, j));
    q.col(j) *= ph;
  }
  return q;
}

DensityMatrix maximally_mixed(int d) {
  check_dim(d, "maximally_mixed");
  return DensityMatrix::from_matrix(Matrix::Identity(d, d) / static_cast<double>(d), 1.0, d);
}

Matrix depolarize(const Matrix& rho, double eps) {
  if (!(eps >= 0.0 && eps <= 1.0)) throw InvalidArgument("depolarize: eps must lie in [0, 1]");
  check_square(rho, "depolarize");
  const auto d = rho.rows();
  double tr = trace_real(rho);
  return (1.0 - eps) * rho + (eps * tr / static_cast<double>(d)) * Matrix::Identity(d, d);
}

DensityMatrix depolarize(const DensityMatrix& rho, double eps) {
  return DensityMatrix::from_matrix(depolarize(rho.matrix(), eps), rho.trace());
}

void validate_index_set(const IndexSet& s, int d) {
  for (std::size_t k = 0; k < s.size(); ++k) {
    if (s[k] < 0 || s[k] >= d) throw InvalidArgument("index set: entry out of range");
    if (k > 0 && s[k] <= s[k - 1]) {
      throw InvalidArgument("index set: entries must be strictly increasing");
    }
  }
}

Matrix submatrix(const Matrix& rho, const IndexSet& s) {
  check_square(rho, "submatrix");
  validate_index_set(s, static_cast<int>(rho.rows()));
  const auto n = static_cast<Index>(s.size());
  Matrix out(n, n);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) out(i, j) = rho(s[i], s[j]);
  return out;
}

DensityMatrix submatrix(const DensityMatrix& rho, const IndexSet& s) {
  Matrix block = submatrix(rho.matrix(), s);
  if (block.rows() == 0) return DensityMatrix::subnormalized(Matrix(0, 0));
  return DensityMatrix::subnormalized(block);
}

DensityMatrix restrict_to(const DensityMatrix& rho, const IndexSet& s) {
  Matrix block = submatrix(rho.matrix(), s);
  double tau = trace_real(block);
  if (!(tau > 0.0)) throw ZeroMass("restrict: tr rho[S] is zero");
  return DensityMatrix::from_matrix(block / tau, 1.0);
}

Matrix zero_extend(const Matrix& block, const IndexSet& s, int d) {
  if (block.rows() != static_cast<Index>(s.size()) || block.cols() != block.rows()) {
    throw DimensionMismatch("zero_extend: block size differs from |S|");
  }
  validate_index_set(s, d);
  Matrix out = Matrix::Zero(d, d);
  for (std::size_t i = 0; i < s.size(); ++i)
    for (std::size_t j = 0; j < s.size(); ++j) out(s[i], s[j]) = block(i, j);
  return out;
}

Matrix partial_trace(const Matrix& rho_ab, Side keep) {
  check_square(rho_ab, "partial_trace");
  const auto n = rho_ab.rows();
  const auto d = static_cast<Index>(std::llround(std::sqrt(static_cast<double>(n))));
  if (d * d != n) throw DimensionMismatch("partial_trace: dimension is not a perfect square");
  Matrix out = Matrix::Zero(d, d);
  if (keep == Side::A) {
    for (Index a = 0; a < d; ++a)
      for (Index ap = 0; ap < d; ++ap)
        for (Index b = 0; b < d; ++b) out(a, ap) += rho_ab(a * d + b, ap * d + b);
  } else {
    for (Index b = 0; b < d; ++b)
      for (Index bp = 0; bp < d; ++bp)
        for (Index a = 0; a < d; ++a) out(b, bp) += rho_ab(a * d + b, a * d + bp);
  }
  return out;
}

DensityMatrix partial_trace(const DensityMatrix& rho_ab, Side keep) {
  return DensityMatrix::from_matrix(partial_trace(rho_ab.matrix(), keep), rho_ab.trace());
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

DensityMatrix conjugate(const DensityMatrix& rho, const Matrix& u) {
  if (u.rows() != rho.dim() || u.cols() != rho.dim()) {
    throw DimensionMismatch("conjugate: unitary dimension differs from state");
  }
  if (!is_unitary(u)) throw NotUnitary("conjugate: matrix is not unitary");
  return DensityMatrix::from_matrix(hermitianize(u * rho.matrix() * u.adjoint()), rho.trace(),
                                    rho.rank_hint());
}

Matrix direct_sum_identity(const Matrix& u, int d) {
  if (u.rows() > d) throw DimensionMismatch("direct_sum_identity: block larger than d");
  Matrix out = Matrix::Identity(d, d);
  out.topLeftCorner(u.rows(), u.cols()) = u;
  return out;
}

IndexSet prefix(int n) { return range(0, n); }

IndexSet range(int lo, int hi) {
  IndexSet s;
  for (int i = lo; i < hi; ++i) s.push_back(i);
  return s;
}

IndexSet complement(const IndexSet& s, int d) {
  std::vector<bool> in(d, false);
  for (int i : s) in.at(i) = true;
  IndexSet out;
  for (int i = 0; i < d; ++i)
    if (!in[i]) out.push_back(i);
  return out;
}

double trace_real(const Matrix& a) { return a.size() == 0 ? 0.0 : a.trace().real(); }

}  // namespace chi2tomo
