#pragma once

#include <cmath>
#include <numeric>
#include <span>
#include <vector>

#include "asymcap/decompose.hpp"
#include "asymcap/errors.hpp"
#include "asymcap/linalg.hpp"
#include "asymcap/representation.hpp"

namespace asymcap {

/// Positive semidefinite, unit-trace matrix. The constructor checks the
/// invariants at `tol` and stores the Hermitian part.
template <typename Real>
class DensityMatrix {
 public:
  explicit DensityMatrix(const MatrixXc<Real>& m, Real tol = Real(defaults::state_tol)) {
    if (m.rows() != m.cols() || m.rows() == 0) throw InvalidState("density matrix must be square and non-empty");
    const Real herm = (m - m.adjoint()).norm();
    if (herm > tol) throw InvalidState("density matrix is not Hermitian (residual " + std::to_string(double(herm)) + ")");
    matrix_ = hermitian_part(m);
    const Real trace = matrix_.trace().real();
    if (std::abs(trace - Real(1)) > tol) throw InvalidState("trace is " + std::to_string(double(trace)));
    const Real lowest = hermitian_eigenvalues(matrix_).minCoeff();
    if (lowest < -tol) throw InvalidState("negative eigenvalue " + std::to_string(double(lowest)));
  }

  static DensityMatrix pure(const VectorXc<Real>& psi) {
    const VectorXc<Real> unit = psi / psi.norm();
    return DensityMatrix(unit * unit.adjoint());
  }
  static DensityMatrix maximally_mixed(int dim) {
    return DensityMatrix(MatrixXc<Real>::Identity(dim, dim) / Real(dim));
  }

  int dim() const { return static_cast<int>(matrix_.rows()); }
  const MatrixXc<Real>& matrix() const { return matrix_; }

 private:
  MatrixXc<Real> matrix_;
};

/// Schur-structure parameters of a symmetric state:
/// B sigma B^dag = sum_q r_q |q><q| (x) pi_q (x) sigma_q.
template <typename Real>
struct SymmetricForm {
  std::vector<Real> r;
  std::vector<MatrixXc<Real>> sigma_blocks;
  /// ||reassembled - source||_F
  Real reassembly_residual = 0;
};

/// rho -> (1/|G|) sum_g U_g rho U_g^dag
template <typename Real>
DensityMatrix<Real> twirl(const Representation<Real>& rep, const DensityMatrix<Real>& rho) {
  return DensityMatrix<Real>(group_average(rep, rho.matrix()));
}

/// max over generators of ||U_g rho U_g^dag - rho||_F
template <typename Real>
Real symmetry_residual(const Representation<Real>& rep, const MatrixXc<Real>& rho) {
  Real worst = 0;
  for (int s : rep.group().generators()) {
    const auto& u = rep.matrix(s);
    worst = std::max(worst, (u * rho * u.adjoint() - rho).norm());
  }
  return worst;
}

template <typename Real>
bool is_symmetric(const Representation<Real>& rep, const DensityMatrix<Real>& rho, Real tol = Real(1e-9)) {
  return symmetry_residual(rep, rho.matrix()) <= tol;
}

/// Von Neumann entropy in bits. Eigenvalues at or below 1e-12 contribute 0.
template <typename Real>
Real entropy(const DensityMatrix<Real>& rho) {
  const VectorXr<Real> vals = hermitian_eigenvalues(rho.matrix());
  const Real h = entropy_of_spectrum<Real>(std::span<const Real>(vals.data(), vals.size()), Real(defaults::eigen_zero));
  return std::clamp(h, Real(0), std::log2(Real(rho.dim())));
}

namespace detail {
template <typename Real>
void check_distribution(std::span<const Real> p, const char* name) {
  Real sum = 0;
  for (Real x : p) {
    if (x < Real(0)) throw InvalidState(std::string(name) + " has a negative entry");
    sum += x;
  }
  if (std::abs(sum - Real(1)) > Real(1e-9)) throw InvalidState(std::string(name) + " does not sum to 1");
}
}  // namespace detail

/// Shannon entropy in bits; 0 log 0 = 0.
template <typename Real>
Real shannon(std::span<const Real> p) {
  detail::check_distribution(p, "p");
  Real h = 0;
  for (Real x : p) {
    if (x > Real(0)) h -= x * std::log2(x);
  }
  return std::max(h, Real(0));
}

template <typename Real>
Real shannon(const std::vector<Real>& p) {
  return shannon(std::span<const Real>(p));
}

/// Kullback-Leibler divergence D(p||q) in bits. Throws SupportMismatch when
/// q_i = 0 < p_i.
template <typename Real>
Real kl(std::span<const Real> p, std::span<const Real> q) {
  if (p.size() != q.size()) throw InvalidState("kl: distributions differ in length");
  detail::check_distribution(p, "p");
  detail::check_distribution(q, "q");
  Real d = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] <= Real(0)) continue;
    if (q[i] <= Real(0)) throw SupportMismatch(static_cast<int>(i));
    d += p[i] * std::log2(p[i] / q[i]);
  }
  return std::max(d, Real(0));
}

template <typename Real>
Real kl(const std::vector<Real>& p, const std::vector<Real>& q) {
  return kl(std::span<const Real>(p), std::span<const Real>(q));
}

/// p_q = Tr <q| rho |q>, the trace of each block of B rho B^dag.
template <typename Real>
std::vector<Real> block_probabilities(const BlockStructure<Real>& structure, const DensityMatrix<Real>& rho) {
  const MatrixXc<Real> rotated = structure.rotate(rho.matrix());
  std::vector<Real> p;
  for (const auto& s : structure.shapes) {
    p.push_back(std::max(Real(0), rotated.block(s.offset, s.offset, s.extent(), s.extent()).trace().real()));
  }
  return p;
}

/// rho_q^{L} = Tr_R <q|rho|q> / p_q. Throws ZeroBlockMass when p_q < 1e-12.
template <typename Real>
DensityMatrix<Real> reduced_left_state(const BlockStructure<Real>& structure, const DensityMatrix<Real>& rho, int q) {
  const auto& s = structure.shape(q);
  const MatrixXc<Real> block = structure.diagonal_block(structure.rotate(rho.matrix()), q);
  const Real mass = block.trace().real();
  if (mass < Real(defaults::eigen_zero)) throw ZeroBlockMass(q);
  return DensityMatrix<Real>(trace_out_right<Real>(block, s.d_left, s.d_right) / mass, Real(1e-8));
}

/// (r_q, sigma_q) of a symmetric state. Throws NotSymmetric when the state
/// fails the symmetry test at 1e-7, and NotBlockForm when a block does not
/// factor as pi_q (x) sigma_q.
template <typename Real>
SymmetricForm<Real> symmetric_form(const Decomposition<Real>& dec, const DensityMatrix<Real>& sigma) {
  const Real residual = symmetry_residual(dec.rep, sigma.matrix());
  if (residual > Real(1e-7)) throw NotSymmetric(static_cast<double>(residual));

  const MatrixXc<Real> rotated = dec.rotate(sigma.matrix());
  SymmetricForm<Real> form;
  std::vector<MatrixXc<Real>> parts;
  for (int q = 0; q < dec.block_count(); ++q) {
    const auto& s = dec.shape(q);
    const MatrixXc<Real> block = dec.diagonal_block(rotated, q);
    const Real mass = std::max(Real(0), block.trace().real());
    MatrixXc<Real> sigma_q = MatrixXc<Real>::Identity(s.d_right, s.d_right) / Real(s.d_right);
    if (mass > Real(defaults::eigen_zero)) sigma_q = hermitian_part<Real>(trace_out_left<Real>(block, s.d_left, s.d_right) / mass);
    const MatrixXc<Real> expected =
        mass * kron<Real>(MatrixXc<Real>::Identity(s.d_left, s.d_left) / Real(s.d_left), sigma_q);
    const Real block_residual = (block - expected).norm();
    if (block_residual > Real(1e-7)) throw NotBlockForm(q, static_cast<double>(block_residual));
    form.r.push_back(mass);
    form.sigma_blocks.push_back(sigma_q);
    parts.push_back(expected);
  }
  form.reassembly_residual = (dec.unrotate(dec.assemble(parts)) - sigma.matrix()).norm();
  if (form.reassembly_residual > Real(1e-7)) throw NotBlockForm(-1, static_cast<double>(form.reassembly_residual));
  return form;
}

/// Inverse of symmetric_form: sum_q r_q |q><q| (x) pi_q (x) sigma_q in the
/// original basis.
template <typename Real>
DensityMatrix<Real> assemble_symmetric(const BlockStructure<Real>& structure, std::span<const Real> r,
                                       const std::vector<MatrixXc<Real>>& sigma_blocks) {
  std::vector<MatrixXc<Real>> parts;
  for (int q = 0; q < structure.block_count(); ++q) {
    const auto& s = structure.shape(q);
    parts.push_back(r[q] * kron<Real>(MatrixXc<Real>::Identity(s.d_left, s.d_left) / Real(s.d_left), sigma_blocks.at(q)));
  }
  return DensityMatrix<Real>(structure.unrotate(structure.assemble(parts)));
}

/// rho^{(x)n}
template <typename Real>
DensityMatrix<Real> tensor_power(const DensityMatrix<Real>& rho, int n, long dim_cap = defaults::max_dim) {
  long dim = 1;
  for (int i = 0; i < n; ++i) {
    dim *= rho.dim();
    if (dim > dim_cap) throw DimensionCapExceeded("product dimension", dim, dim_cap);
  }
  MatrixXc<Real> m = rho.matrix();
  for (int i = 1; i < n; ++i) m = kron<Real>(m, rho.matrix());
  return DensityMatrix<Real>(m, Real(1e-8));
}

}  // namespace asymcap
