#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <utility>
#include <vector>

#include "asymcap/decompose.hpp"
#include "asymcap/states.hpp"

namespace asymcap {

/// Capacity figures for one state, all in bits. The lower bounds are the
/// raw formula values and can be negative; the clamped companions are
/// max(0, raw).
template <typename Real>
struct CapacityReport {
  Real c_sym = 0;
  Real c_max = 0;
  Real lower_bound = 0;
  Real lower_bound_clamped = 0;
  Real covariant_lower_bound = 0;
  Real covariant_lower_bound_clamped = 0;
  std::vector<Real> p;
};

struct Classification {
  bool abelian = false;
  bool irreducible = false;
  bool superdense_possible = false;
  /// max_q min(d_L, d_R) >= 2
  bool covariant_sufficient = false;
  std::optional<int> non_abelian_block;
  std::optional<int> covariant_block;
};

/// Capacity of every symmetric state: log2 sum_q d_R.
template <typename Real>
Real capacity_symmetric(const BlockStructure<Real>& structure) {
  return std::log2(Real(multiplicity_sum(structure)));
}

/// Largest capacity over all states: log2 d_S.
template <typename Real>
Real capacity_max(const BlockStructure<Real>& structure) {
  return std::log2(Real(structure.dim()));
}

/// H(p) + sum_q p_q log2(d_L d_R) - H(rho)
template <typename Real>
Real lower_bound_general(const BlockStructure<Real>& structure, const DensityMatrix<Real>& rho) {
  const auto p = block_probabilities(structure, rho);
  Real value = -entropy(rho);
  for (int q = 0; q < structure.block_count(); ++q) {
    const auto& s = structure.shape(q);
    if (p[q] > Real(0)) value += p[q] * (std::log2(Real(s.d_left * s.d_right)) - std::log2(p[q]));
  }
  return value;
}

/// H(p) + sum_q p_q [H(rho_q^L) + log2 d_R] - H(rho). Blocks with
/// p_q < 1e-12 are skipped.
template <typename Real>
Real lower_bound_covariant(const BlockStructure<Real>& structure, const DensityMatrix<Real>& rho) {
  const auto p = block_probabilities(structure, rho);
  Real value = -entropy(rho);
  for (int q = 0; q < structure.block_count(); ++q) {
    if (p[q] < Real(defaults::eigen_zero)) continue;
    const auto& s = structure.shape(q);
    value += p[q] * (entropy(reduced_left_state(structure, rho, q)) + std::log2(Real(s.d_right)) - std::log2(p[q]));
  }
  return value;
}

namespace detail {
// sum_q sqrt(weight_q / total) |q> (x) |Phi_rank(q)>, Schmidt basis = layout basis.
template <typename Real, typename RankOf, typename WeightOf>
DensityMatrix<Real> embedded_entangled_state(const BlockStructure<Real>& structure, RankOf rank_of, WeightOf weight_of) {
  Real total = 0;
  for (const auto& s : structure.shapes) total += weight_of(s);
  VectorXc<Real> psi = VectorXc<Real>::Zero(structure.dim());
  for (const auto& s : structure.shapes) {
    const int rank = rank_of(s);
    const Real amp = std::sqrt(weight_of(s) / total / Real(rank));
    for (int i = 0; i < rank; ++i) psi(s.offset + i * s.d_right + i) = amp;
  }
  return DensityMatrix<Real>::pure(structure.unrotate(psi));
}
}  // namespace detail

/// psi = sum_q sqrt(d_L d_R / d_S) |q> |psi_q>, psi_q maximally entangled of
/// rank min(d_L, d_R). Attains lower_bound_general = log2 d_S.
template <typename Real>
DensityMatrix<Real> optimal_state(const BlockStructure<Real>& structure) {
  return detail::embedded_entangled_state(
      structure, [](const BlockShape& s) { return std::min(s.d_left, s.d_right); },
      [](const BlockShape& s) { return Real(s.d_left * s.d_right); });
}

/// psi* = sum_q sqrt(d*_q d_R / d'_S) |q> |psi*_q>, d*_q = min(d_L, d_R).
/// Attains lower_bound_covariant = log2 sum_q d*_q d_R.
template <typename Real>
DensityMatrix<Real> optimal_covariant_state(const BlockStructure<Real>& structure) {
  return detail::embedded_entangled_state(
      structure, [](const BlockShape& s) { return std::min(s.d_left, s.d_right); },
      [](const BlockShape& s) { return Real(std::min(s.d_left, s.d_right) * s.d_right); });
}

/// log2 sum_q min(d_L, d_R) d_R
template <typename Real>
Real covariant_capacity_bound(const BlockStructure<Real>& structure) {
  int total = 0;
  for (const auto& s : structure.shapes) total += std::min(s.d_left, s.d_right) * s.d_right;
  return std::log2(Real(total));
}

/// Exact classification from the integer block data: superdense coding is
/// possible iff the representation is non-Abelian and reducible.
template <typename Real>
Classification classify(const BlockStructure<Real>& structure) {
  Classification c;
  c.non_abelian_block = non_abelian_witness(structure);
  c.abelian = !c.non_abelian_block.has_value();
  c.irreducible = is_irreducible(structure);
  c.superdense_possible = !c.abelian && !c.irreducible;
  int best = 0;
  for (int q = 0; q < structure.block_count(); ++q) {
    const int m = std::min(structure.shape(q).d_left, structure.shape(q).d_right);
    if (m > best) {
      best = m;
      c.covariant_block = q;
    }
  }
  c.covariant_sufficient = best >= 2;
  if (!c.covariant_sufficient) c.covariant_block.reset();
  return c;
}

template <typename Real>
CapacityReport<Real> capacity_report(const BlockStructure<Real>& structure, const DensityMatrix<Real>& rho) {
  CapacityReport<Real> report;
  report.c_sym = capacity_symmetric(structure);
  report.c_max = capacity_max(structure);
  report.lower_bound = lower_bound_general(structure, rho);
  report.lower_bound_clamped = std::max(Real(0), report.lower_bound);
  report.covariant_lower_bound = lower_bound_covariant(structure, rho);
  report.covariant_lower_bound_clamped = std::max(Real(0), report.covariant_lower_bound);
  report.p = block_probabilities(structure, rho);
  return report;
}

/// chi = H(sum_x p_x rho_x) - sum_x p_x H(rho_x)
template <typename Real>
Real holevo_quantity(const std::vector<std::pair<Real, DensityMatrix<Real>>>& ensemble) {
  if (ensemble.empty()) return 0;
  const int d = ensemble.front().second.dim();
  MatrixXc<Real> average = MatrixXc<Real>::Zero(d, d);
  Real total = 0, conditional = 0;
  for (const auto& [p, rho] : ensemble) {
    if (rho.dim() != d) throw InvalidState("holevo_quantity: ensemble states differ in dimension");
    average += p * rho.matrix();
    total += p;
    conditional += p * entropy(rho);
  }
  if (std::abs(total - Real(1)) > Real(1e-9)) throw InvalidState("holevo_quantity: probabilities do not sum to 1");
  const Real chi = entropy(DensityMatrix<Real>(average)) - conditional;
  return std::clamp(chi, Real(0), std::log2(Real(d)));
}

}  // namespace asymcap
