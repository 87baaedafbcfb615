#pragma once

#include <algorithm>
#include <cmath>
#include <random>

#include <unsupported/Eigen/KroneckerProduct>

#include "asymcap/types.hpp"

namespace asymcap {

template <typename Real>
MatrixXc<Real> kron(const MatrixXc<Real>& a, const MatrixXc<Real>& b) {
  return Eigen::kroneckerProduct(a, b).eval();
}

template <typename Real>
MatrixXc<Real> hermitian_part(const MatrixXc<Real>& a) {
  return (a + a.adjoint()) * Real(0.5);
}

template <typename Real>
Real frobenius_distance(const MatrixXc<Real>& a, const MatrixXc<Real>& b) {
  return (a - b).norm();
}

/// Spectrum of the Hermitian part of `a`, ascending.
template <typename Real>
VectorXr<Real> hermitian_eigenvalues(const MatrixXc<Real>& a) {
  Eigen::SelfAdjointEigenSolver<MatrixXc<Real>> solver(hermitian_part(a), Eigen::EigenvaluesOnly);
  return solver.eigenvalues();
}

/// Largest deviation of a square matrix from being unitary, ||U U^dag - I||_F.
template <typename Real>
Real unitarity_residual(const MatrixXc<Real>& u) {
  return (u * u.adjoint() - MatrixXc<Real>::Identity(u.rows(), u.cols())).norm();
}

/// Shannon-type sum -sum x log2 x over values above `zero`.
template <typename Real, typename Range>
Real entropy_of_spectrum(const Range& values, Real zero) {
  Real h = 0;
  for (Real x : values) {
    if (x > zero) h -= x * std::log2(x);
  }
  return h;
}

/// A_R = Tr_L A for A acting on C^{d_left} (x) C^{d_right} (left factor major).
template <typename Real>
MatrixXc<Real> trace_out_left(const MatrixXc<Real>& a, int d_left, int d_right) {
  MatrixXc<Real> out = MatrixXc<Real>::Zero(d_right, d_right);
  for (int k = 0; k < d_left; ++k) out += a.block(k * d_right, k * d_right, d_right, d_right);
  return out;
}

/// A_L = Tr_R A for A acting on C^{d_left} (x) C^{d_right} (left factor major).
template <typename Real>
MatrixXc<Real> trace_out_right(const MatrixXc<Real>& a, int d_left, int d_right) {
  MatrixXc<Real> out(d_left, d_left);
  for (int i = 0; i < d_left; ++i) {
    for (int j = 0; j < d_left; ++j) out(i, j) = a.block(i * d_right, j * d_right, d_right, d_right).trace();
  }
  return out;
}

/// Distance from `a` to the nearest Kronecker product x (x) y, with x of size
/// d_left and y of size d_right (Van Loan-Pitsianis rearrangement).
template <typename Real>
Real kronecker_residual(const MatrixXc<Real>& a, int d_left, int d_right) {
  MatrixXc<Real> rearranged(d_left * d_left, d_right * d_right);
  for (int i = 0; i < d_left; ++i) {
    for (int j = 0; j < d_left; ++j) {
      const auto tile = a.block(i * d_right, j * d_right, d_right, d_right);
      for (int r = 0; r < d_right; ++r) {
        for (int s = 0; s < d_right; ++s) rearranged(i * d_left + j, r * d_right + s) = tile(r, s);
      }
    }
  }
  Eigen::JacobiSVD<MatrixXc<Real>> svd(rearranged);
  const auto& sv = svd.singularValues();
  Real tail = 0;
  for (Eigen::Index k = 1; k < sv.size(); ++k) tail += sv(k) * sv(k);
  return std::sqrt(tail);
}

/// Projector onto the span of eigenvectors of the Hermitian `a` whose
/// eigenvalue exceeds `cutoff`.
template <typename Real>
MatrixXc<Real> support_projector(const MatrixXc<Real>& a, Real cutoff) {
  Eigen::SelfAdjointEigenSolver<MatrixXc<Real>> solver(hermitian_part(a));
  const auto& vals = solver.eigenvalues();
  const auto& vecs = solver.eigenvectors();
  MatrixXc<Real> p = MatrixXc<Real>::Zero(a.rows(), a.cols());
  for (Eigen::Index k = 0; k < vals.size(); ++k) {
    if (vals(k) > cutoff) p.noalias() += vecs.col(k) * vecs.col(k).adjoint();
  }
  return p;
}

/// Pseudo-inverse square root of a PSD matrix; eigenvalues at or below
/// `cutoff` are treated as zero.
template <typename Real>
MatrixXc<Real> pinv_sqrt(const MatrixXc<Real>& a, Real cutoff) {
  Eigen::SelfAdjointEigenSolver<MatrixXc<Real>> solver(hermitian_part(a));
  const auto& vals = solver.eigenvalues();
  VectorXr<Real> scale(vals.size());
  for (Eigen::Index k = 0; k < vals.size(); ++k) scale(k) = vals(k) > cutoff ? Real(1) / std::sqrt(vals(k)) : Real(0);
  const auto& v = solver.eigenvectors();
  return v * scale.template cast<Complex<Real>>().asDiagonal() * v.adjoint();
}

/// Numerical rank of a Hermitian PSD Gram matrix: eigenvalues above
/// `rel_tol * max(1, largest)`.
template <typename Real>
int gram_rank(const MatrixXc<Real>& gram, Real rel_tol) {
  if (gram.size() == 0) return 0;
  const VectorXr<Real> vals = hermitian_eigenvalues(gram);
  const Real threshold = rel_tol * std::max(Real(1), vals.maxCoeff());
  return static_cast<int>((vals.array() > threshold).count());
}

template <typename Real, typename Rng>
MatrixXc<Real> complex_gaussian(int rows, int cols, Rng& rng) {
  std::normal_distribution<Real> normal(Real(0), Real(1));
  MatrixXc<Real> g(rows, cols);
  // Column-major fill, real part drawn before imaginary part.
  for (int j = 0; j < cols; ++j) {
    for (int i = 0; i < rows; ++i) {
      const Real re = normal(rng);
      const Real im = normal(rng);
      g(i, j) = Complex<Real>(re, im);
    }
  }
  return g;
}

/// Haar-distributed unitary: QR of a complex Gaussian matrix with the phases
/// of R's diagonal moved into Q.
template <typename Real, typename Rng>
MatrixXc<Real> haar_unitary(int d, Rng& rng) {
  const MatrixXc<Real> g = complex_gaussian<Real>(d, d, rng);
  Eigen::HouseholderQR<MatrixXc<Real>> qr(g);
  MatrixXc<Real> q = qr.householderQ();
  const MatrixXc<Real>& r = qr.matrixQR();
  for (int k = 0; k < d; ++k) {
    const Real mag = std::abs(r(k, k));
    const Complex<Real> phase = mag > Real(0) ? r(k, k) / mag : Complex<Real>(1);
    q.col(k) *= phase;
  }
  return q;
}

/// Random Hermitian matrix with Gaussian entries.
template <typename Real, typename Rng>
MatrixXc<Real> random_hermitian(int d, Rng& rng) {
  return hermitian_part<Real>(complex_gaussian<Real>(d, d, rng));
}

/// Derives an independent generator for stream `stream` of a seeded run.
inline std::mt19937_64 derived_rng(Seed seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
  return std::mt19937_64(seq);
}

}  // namespace asymcap
