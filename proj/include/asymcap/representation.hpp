#pragma once

#include <algorithm>
#include <memory>
#include <random>
#include <vector>

#include "asymcap/errors.hpp"
#include "asymcap/group.hpp"
#include "asymcap/linalg.hpp"
#include "asymcap/types.hpp"

namespace asymcap {

/// A unitary representation g -> U_g of a finite group, one matrix per
/// element. Construction validates unitarity and the homomorphism property;
/// the object is immutable afterwards.
template <typename Real>
class Representation {
 public:
  Representation(GroupPtr group, std::vector<MatrixXc<Real>> matrices, Real tol = Real(defaults::unitarity_tol));

  const FiniteGroup& group() const { return *group_; }
  const GroupPtr& group_ptr() const { return group_; }
  int dim() const { return dim_; }
  int order() const { return group_->order(); }
  const MatrixXc<Real>& matrix(int g) const { return matrices_[g]; }
  const std::vector<MatrixXc<Real>>& matrices() const { return matrices_; }

  Real unitarity_residual() const { return unitarity_residual_; }
  Real homomorphism_residual() const { return homomorphism_residual_; }

  template <typename Other>
  Representation<Other> cast() const {
    std::vector<MatrixXc<Other>> out;
    out.reserve(matrices_.size());
    for (const auto& m : matrices_) out.push_back(m.template cast<Complex<Other>>());
    return Representation<Other>(group_, std::move(out), Other(1e3) * std::numeric_limits<Other>::epsilon());
  }

 private:
  GroupPtr group_;
  int dim_ = 0;
  std::vector<MatrixXc<Real>> matrices_;
  Real unitarity_residual_ = 0;
  Real homomorphism_residual_ = 0;
};

/// Number of random (g, h) pairs checked on top of the generator pairs.
inline constexpr int homomorphism_spot_pairs = 32;

template <typename Real>
Representation<Real>::Representation(GroupPtr group, std::vector<MatrixXc<Real>> matrices, Real tol)
    : group_(std::move(group)), matrices_(std::move(matrices)) {
  const int order = group_->order();
  if (static_cast<int>(matrices_.size()) != order) {
    throw MalformedInput("matrices", "expected " + std::to_string(order) + " matrices, got " +
                                         std::to_string(matrices_.size()));
  }
  dim_ = static_cast<int>(matrices_.front().rows());
  if (dim_ < 1) throw MalformedInput("dim", "dimension must be positive");
  for (int g = 0; g < order; ++g) {
    if (matrices_[g].rows() != dim_ || matrices_[g].cols() != dim_) {
      throw MalformedInput("matrices[" + std::to_string(g) + "]", "expected a " + std::to_string(dim_) + "x" +
                                                                        std::to_string(dim_) + " matrix");
    }
  }

  for (int g = 0; g < order; ++g) {
    const Real r = asymcap::unitarity_residual<Real>(matrices_[g]);
    unitarity_residual_ = std::max(unitarity_residual_, r);
    if (!(r <= tol)) throw NotUnitary(g, static_cast<double>(r));
  }
  const auto& id = matrices_[group_->identity()];
  const Real id_residual = (id - MatrixXc<Real>::Identity(dim_, dim_)).norm();
  if (!(id_residual <= tol)) throw NotHomomorphism(group_->identity(), group_->identity(), static_cast<double>(id_residual));

  auto check = [&](int g, int h) {
    const Real r = (matrices_[g] * matrices_[h] - matrices_[group_->multiply(g, h)]).norm();
    homomorphism_residual_ = std::max(homomorphism_residual_, r);
    if (!(r <= tol)) throw NotHomomorphism(g, h, static_cast<double>(r));
  };
  // U_g U_s = U_gs for every g and every generator s fixes the whole
  // homomorphism once the generators reach every element.
  for (int g = 0; g < order; ++g) {
    for (int s : group_->generators()) check(g, s);
  }
  std::mt19937_64 rng(0x5eedu);
  std::uniform_int_distribution<int> pick(0, order - 1);
  for (int k = 0; k < homomorphism_spot_pairs; ++k) {
    const int g = pick(rng);
    const int h = pick(rng);
    check(g, h);
  }
}

template <typename Real>
Representation<Real> validate_representation(GroupPtr group, std::vector<MatrixXc<Real>> matrices,
                                             Real tol = Real(defaults::unitarity_tol)) {
  return Representation<Real>(std::move(group), std::move(matrices), tol);
}

/// U_(g_1..g_n) = U_g1 (x) ... (x) U_gn as a representation of G^n.
/// Throws DimensionCapExceeded when d^n exceeds `dim_cap`, |G|^n exceeds
/// `order_cap`, or the stored matrices would exceed `entry_cap` entries.
template <typename Real>
Representation<Real> product_representation(const Representation<Real>& rep, int n, long dim_cap = defaults::max_dim,
                                             long order_cap = defaults::max_group_order,
                                             long entry_cap = 1L << 24) {
  if (n == 1) return rep;
  long dim = 1;
  for (int i = 0; i < n; ++i) {
    dim *= rep.dim();
    if (dim > dim_cap) throw DimensionCapExceeded("product dimension", dim, dim_cap);
  }
  auto group = std::make_shared<const FiniteGroup>(direct_power(rep.group(), n, order_cap));
  const long entries = static_cast<long>(group->order()) * dim * dim;
  if (entries > entry_cap) throw DimensionCapExceeded("stored matrix entries", entries, entry_cap);

  std::vector<MatrixXc<Real>> matrices;
  matrices.reserve(group->order());
  for (int g = 0; g < group->order(); ++g) {
    const auto parts = power_components(g, rep.order(), n);
    MatrixXc<Real> m = rep.matrix(parts[0]);
    for (int i = 1; i < n; ++i) m = kron<Real>(m, rep.matrix(parts[i]));
    matrices.push_back(std::move(m));
  }
  const Real tol = std::max(Real(defaults::unitarity_tol), Real(n) * rep.unitarity_residual() * Real(10));
  return Representation<Real>(std::move(group), std::move(matrices), tol);
}

/// (1/|G|) sum_g U_g X U_g^dag, summed in element order.
template <typename Real>
MatrixXc<Real> group_average(const Representation<Real>& rep, const MatrixXc<Real>& x) {
  MatrixXc<Real> acc = MatrixXc<Real>::Zero(x.rows(), x.cols());
  for (const auto& u : rep.matrices()) acc.noalias() += u * x * u.adjoint();
  return acc / Real(rep.order());
}

}  // namespace asymcap
