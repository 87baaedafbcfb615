#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <tuple>
#include <vector>

#include "asymcap/errors.hpp"
#include "asymcap/linalg.hpp"
#include "asymcap/representation.hpp"
#include "asymcap/types.hpp"

namespace asymcap {

/// Where one isotypic block sits in the rotated space: rows
/// offset .. offset + d_left*d_right, ordered irrep-index major, so the
/// block acts on C^{d_left} (x) C^{d_right}.
struct BlockShape {
  int d_left = 1;
  int d_right = 1;
  int offset = 0;
  int extent() const { return d_left * d_right; }
};

/// Block layout plus the basis change B into the direct-sum-product form.
/// This is all that the entropy and capacity formulas need, and it is also
/// what tensor_power() produces for n-copy systems.
template <typename Real>
struct BlockStructure {
  std::vector<BlockShape> shapes;
  MatrixXc<Real> basis_change;

  int dim() const { return static_cast<int>(basis_change.rows()); }
  int block_count() const { return static_cast<int>(shapes.size()); }
  const BlockShape& shape(int q) const { return shapes.at(q); }

  /// B X B^dag.
  MatrixXc<Real> rotate(const MatrixXc<Real>& x) const { return basis_change * x * basis_change.adjoint(); }
  /// B^dag X B.
  MatrixXc<Real> unrotate(const MatrixXc<Real>& x) const { return basis_change.adjoint() * x * basis_change; }
  VectorXc<Real> unrotate(const VectorXc<Real>& v) const { return basis_change.adjoint() * v; }

  /// The diagonal q-block of an already rotated operator.
  MatrixXc<Real> diagonal_block(const MatrixXc<Real>& rotated, int q) const {
    const auto& s = shapes.at(q);
    return rotated.block(s.offset, s.offset, s.extent(), s.extent());
  }

  /// Embeds per-block operators into a rotated block-diagonal matrix.
  MatrixXc<Real> assemble(const std::vector<MatrixXc<Real>>& blocks) const {
    MatrixXc<Real> out = MatrixXc<Real>::Zero(dim(), dim());
    for (int q = 0; q < block_count(); ++q) {
      const auto& s = shapes[q];
      out.block(s.offset, s.offset, s.extent(), s.extent()) = blocks.at(q);
    }
    return out;
  }
};

template <typename Real>
struct IsotypicBlock {
  int label = 0;
  int d_left = 1;
  int d_right = 1;
  /// chi_q(g) = tr u_{g,q}; entries within 1e-6 of an integer are rounded.
  std::vector<Complex<Real>> character;
};

template <typename Real>
struct Decomposition : BlockStructure<Real> {
  Representation<Real> rep;
  std::vector<IsotypicBlock<Real>> blocks;
  /// max_g over generators of ||B U_g B^dag - sum_q u_{g,q} (x) I||_F
  Real generator_residual = 0;
  /// same, over every group element
  Real reconstruction_residual = 0;
  /// max entrywise disagreement of the irrep copies within a block
  Real alignment_residual = 0;
  int attempts = 1;
};

namespace detail {

template <typename Real>
Complex<Real> round_character_value(Complex<Real> z) {
  auto snap = [](Real x) {
    const Real r = std::round(x);
    return std::abs(x - r) <= Real(1e-6) ? r : x;
  };
  return {snap(z.real()), snap(z.imag())};
}

template <typename Real>
Complex<Real> character_inner(const std::vector<Complex<Real>>& a, const std::vector<Complex<Real>>& b) {
  Complex<Real> acc = 0;
  for (std::size_t g = 0; g < a.size(); ++g) acc += a[g] * std::conj(b[g]);
  return acc / Real(a.size());
}

template <typename Real>
std::vector<Complex<Real>> subspace_character(const Representation<Real>& rep, const MatrixXc<Real>& v) {
  std::vector<Complex<Real>> chi(rep.order());
  for (int g = 0; g < rep.order(); ++g) chi[g] = (v.adjoint() * rep.matrix(g) * v).trace();
  return chi;
}

// Unitary S with S^dag a_g S = b_g, where a_g and b_g are the restrictions
// of the representation to two equivalent irreducible copies.
template <typename Real>
MatrixXc<Real> copy_intertwiner(const Representation<Real>& rep, const MatrixXc<Real>& copy,
                                const MatrixXc<Real>& reference) {
  const int k = static_cast<int>(copy.cols());
  std::vector<MatrixXc<Real>> a(rep.order()), b(rep.order());
  for (int g = 0; g < rep.order(); ++g) {
    a[g] = copy.adjoint() * rep.matrix(g) * copy;
    b[g] = reference.adjoint() * rep.matrix(g) * reference;
  }
  MatrixXc<Real> best;
  Real best_norm = -1;
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < k; ++j) {
      MatrixXc<Real> m = MatrixXc<Real>::Zero(k, k);
      for (int g = 0; g < rep.order(); ++g) m.noalias() += a[g].col(i) * b[g].col(j).adjoint();
      const Real norm = m.norm();
      if (norm > best_norm) {
        best_norm = norm;
        best = std::move(m);
      }
    }
  }
  return best * (std::sqrt(Real(k)) / best_norm);
}

struct Cluster {
  int begin;
  int size;
};

}  // namespace detail

/// Extracts u_{g,q} from the first multiplicity slot of block q.
template <typename Real>
MatrixXc<Real> irrep_matrix(const Decomposition<Real>& dec, int q, int g) {
  const MatrixXc<Real> rotated = dec.rotate(dec.rep.matrix(g));
  const auto& s = dec.shape(q);
  MatrixXc<Real> u(s.d_left, s.d_left);
  for (int a = 0; a < s.d_left; ++a)
    for (int b = 0; b < s.d_left; ++b) u(a, b) = rotated(s.offset + a * s.d_right, s.offset + b * s.d_right);
  return u;
}

/// sum_q |q><q| (x) u_{g,q} (x) I_{d_R}, in rotated coordinates.
template <typename Real>
MatrixXc<Real> block_form(const Decomposition<Real>& dec, int g) {
  std::vector<MatrixXc<Real>> parts;
  for (int q = 0; q < dec.block_count(); ++q) {
    const auto& s = dec.shape(q);
    parts.push_back(kron<Real>(irrep_matrix(dec, q, g), MatrixXc<Real>::Identity(s.d_right, s.d_right)));
  }
  return dec.assemble(parts);
}

/// Direct-sum-product decomposition of `rep`.
///
/// A seeded random Hermitian matrix is projected onto the commutant by the
/// group average; its eigenspaces are single irreducible copies. Copies are
/// grouped by character and aligned with intertwiners so that every
/// multiplicity slot of a block carries the same u_{g,q}. Blocks are ordered
/// by (d_L, d_R, character). Throws DegenerateSplit or ResidualTooLarge.
template <typename Real>
Decomposition<Real> decompose(const Representation<Real>& rep, Real tol = Real(defaults::decomp_tol),
                              Seed seed = defaults::seed, Real gap_tol = Real(defaults::gap_tol),
                              int max_retries = defaults::max_retries) {
  const int d = rep.dim();
  const int order = rep.order();
  for (int attempt = 0; attempt <= max_retries; ++attempt) {
    auto rng = derived_rng(seed, static_cast<std::uint64_t>(attempt));
    const MatrixXc<Real> commuting = group_average(rep, random_hermitian<Real>(d, rng));
    Eigen::SelfAdjointEigenSolver<MatrixXc<Real>> eig(hermitian_part(commuting));
    const auto& vals = eig.eigenvalues();
    const MatrixXc<Real>& vecs = eig.eigenvectors();

    std::vector<detail::Cluster> clusters;
    for (int k = 0; k < d; ++k) {
      if (k == 0 || vals(k) - vals(k - 1) > gap_tol) clusters.push_back({k, 0});
      ++clusters.back().size;
    }

    bool degenerate = false;
    std::vector<std::vector<Complex<Real>>> characters;
    for (const auto& c : clusters) {
      auto chi = detail::subspace_character(rep, MatrixXc<Real>(vecs.middleCols(c.begin, c.size)));
      const Real norm = detail::character_inner(chi, chi).real();
      if (std::abs(norm - Real(1)) > Real(1e-7)) {
        degenerate = true;
        break;
      }
      characters.push_back(std::move(chi));
    }
    if (degenerate) continue;

    // Group equivalent copies.
    std::vector<std::vector<int>> groups;
    for (int c = 0; c < static_cast<int>(clusters.size()); ++c) {
      bool placed = false;
      for (auto& members : groups) {
        if (std::abs(detail::character_inner(characters[c], characters[members.front()])) > Real(0.5)) {
          members.push_back(c);
          placed = true;
          break;
        }
      }
      if (!placed) groups.push_back({c});
    }

    struct Pending {
      IsotypicBlock<Real> block;
      std::vector<MatrixXc<Real>> copies;
      std::vector<std::pair<long long, long long>> key;
    };
    std::vector<Pending> pending;
    for (const auto& members : groups) {
      Pending p;
      const auto& first = clusters[members.front()];
      p.block.d_left = first.size;
      p.block.d_right = static_cast<int>(members.size());
      for (const auto& z : characters[members.front()]) {
        const auto r = detail::round_character_value(z);
        p.block.character.push_back(r);
        p.key.emplace_back(std::llround(r.real() * 1e6), std::llround(r.imag() * 1e6));
      }
      const MatrixXc<Real> reference = vecs.middleCols(first.begin, first.size);
      p.copies.push_back(reference);
      for (std::size_t m = 1; m < members.size(); ++m) {
        const auto& c = clusters[members[m]];
        const MatrixXc<Real> copy = vecs.middleCols(c.begin, c.size);
        p.copies.push_back(copy * detail::copy_intertwiner(rep, copy, reference));
      }
      pending.push_back(std::move(p));
    }
    std::stable_sort(pending.begin(), pending.end(), [](const Pending& a, const Pending& b) {
      return std::tie(a.block.d_left, a.block.d_right, a.key) < std::tie(b.block.d_left, b.block.d_right, b.key);
    });

    MatrixXc<Real> columns(d, d);
    std::vector<BlockShape> shapes;
    std::vector<IsotypicBlock<Real>> blocks;
    int offset = 0;
    for (std::size_t q = 0; q < pending.size(); ++q) {
      auto& p = pending[q];
      p.block.label = static_cast<int>(q);
      const int dl = p.block.d_left, dr = p.block.d_right;
      for (int k = 0; k < dr; ++k)
        for (int a = 0; a < dl; ++a) columns.col(offset + a * dr + k) = p.copies[k].col(a);
      shapes.push_back({dl, dr, offset});
      blocks.push_back(std::move(p.block));
      offset += dl * dr;
    }

    Decomposition<Real> dec{{std::move(shapes), columns.adjoint()}, rep, std::move(blocks)};
    dec.attempts = attempt + 1;
    std::vector<char> is_generator(order, 0);
    for (int s : rep.group().generators()) is_generator[s] = 1;
    for (int g = 0; g < order; ++g) {
      const MatrixXc<Real> rotated = dec.rotate(rep.matrix(g));
      const Real r = (rotated - block_form(dec, g)).norm();
      dec.reconstruction_residual = std::max(dec.reconstruction_residual, r);
      if (is_generator[g]) dec.generator_residual = std::max(dec.generator_residual, r);
      for (const auto& s : dec.shapes) {
        for (int k = 1; k < s.d_right; ++k)
          for (int a = 0; a < s.d_left; ++a)
            for (int b = 0; b < s.d_left; ++b) {
              const auto lhs = rotated(s.offset + a * s.d_right + k, s.offset + b * s.d_right + k);
              const auto rhs = rotated(s.offset + a * s.d_right, s.offset + b * s.d_right);
              dec.alignment_residual = std::max(dec.alignment_residual, std::abs(lhs - rhs));
            }
      }
    }
    if (dec.generator_residual > tol) throw ResidualTooLarge(static_cast<double>(dec.generator_residual), tol);
    if (dec.reconstruction_residual > Real(10) * tol) {
      throw ResidualTooLarge(static_cast<double>(dec.reconstruction_residual), Real(10) * tol);
    }
    return dec;
  }
  throw DegenerateSplit(max_retries + 1);
}

/// Frobenius-orthonormal basis of the commutant {X : U_g X = X U_g}. The
/// group average is the orthogonal projector onto the commutant, so its
/// unit-eigenvalue eigenvectors span it.
template <typename Real>
std::vector<MatrixXc<Real>> commutant_basis(const Representation<Real>& rep) {
  const int d = rep.dim();
  MatrixXc<Real> projector = MatrixXc<Real>::Zero(d * d, d * d);
  for (const auto& u : rep.matrices()) projector += kron<Real>(u.conjugate(), u);
  projector /= Real(rep.order());
  Eigen::SelfAdjointEigenSolver<MatrixXc<Real>> eig(hermitian_part(projector));
  std::vector<MatrixXc<Real>> basis;
  for (int k = d * d - 1; k >= 0; --k) {
    if (eig.eigenvalues()(k) < Real(0.5)) break;
    basis.push_back(eig.eigenvectors().col(k).reshaped(d, d));
  }
  return basis;
}

/// Dimension of span{U_g}, from the rank of the Gram matrix tr(U_g^dag U_h).
template <typename Real>
int algebra_dimension(const Representation<Real>& rep, Real rel_tol = Real(1e-7)) {
  const int n = rep.order();
  MatrixXc<Real> gram(n, n);
  for (int g = 0; g < n; ++g)
    for (int h = 0; h < n; ++h) gram(g, h) = (rep.matrix(g).adjoint() * rep.matrix(h)).trace();
  return gram_rank(gram, rel_tol);
}

/// Block q with d_L >= 2, if any; its absence is the Abelian criterion
/// d_S = sum_q d_R.
template <typename Real>
std::optional<int> non_abelian_witness(const BlockStructure<Real>& structure) {
  for (int q = 0; q < structure.block_count(); ++q) {
    if (structure.shape(q).d_left >= 2) return q;
  }
  return std::nullopt;
}

template <typename Real>
bool is_abelian_rep(const BlockStructure<Real>& structure) {
  return !non_abelian_witness(structure).has_value();
}

template <typename Real>
int multiplicity_sum(const BlockStructure<Real>& structure) {
  int total = 0;
  for (const auto& s : structure.shapes) total += s.d_right;
  return total;
}

/// Irreducible iff sum_q d_R = 1.
template <typename Real>
bool is_irreducible(const BlockStructure<Real>& structure) {
  return multiplicity_sum(structure) == 1;
}

/// Block structure of n copies: blocks are indexed by tuples (q_1, ..., q_n)
/// in lexicographic order, with d_L and d_R multiplied across factors and
/// basis change B^{(x)n} followed by the regrouping permutation.
template <typename Real>
BlockStructure<Real> tensor_power(const BlockStructure<Real>& one, int n, long dim_cap = defaults::max_dim) {
  if (n == 1) return one;
  const int d = one.dim();
  const int nq = one.block_count();
  long total = 1;
  for (int i = 0; i < n; ++i) {
    total *= d;
    if (total > dim_cap) throw DimensionCapExceeded("product dimension", total, dim_cap);
  }
  const int dn = static_cast<int>(total);

  long tuples = 1;
  for (int i = 0; i < n; ++i) tuples *= nq;

  BlockStructure<Real> out;
  std::vector<int> perm(dn);  // rotated product index -> kron index
  int offset = 0;
  for (long t = 0; t < tuples; ++t) {
    std::vector<int> q(n);
    long rest = t;
    for (int i = n - 1; i >= 0; --i) {
      q[i] = static_cast<int>(rest % nq);
      rest /= nq;
    }
    int dl = 1, dr = 1;
    for (int i = 0; i < n; ++i) {
      dl *= one.shape(q[i]).d_left;
      dr *= one.shape(q[i]).d_right;
    }
    for (int a = 0; a < dl; ++a) {
      for (int r = 0; r < dr; ++r) {
        int ra = a, rr = r, kron_index = 0, stride = 1;
        for (int i = n - 1; i >= 0; --i) {
          const auto& s = one.shape(q[i]);
          const int ai = ra % s.d_left, ri = rr % s.d_right;
          ra /= s.d_left;
          rr /= s.d_right;
          kron_index += (s.offset + ai * s.d_right + ri) * stride;
          stride *= d;
        }
        perm[offset + a * dr + r] = kron_index;
      }
    }
    out.shapes.push_back({dl, dr, offset});
    offset += dl * dr;
  }

  MatrixXc<Real> kb = one.basis_change;
  for (int i = 1; i < n; ++i) kb = kron<Real>(kb, one.basis_change);
  out.basis_change.resize(dn, dn);
  for (int row = 0; row < dn; ++row) out.basis_change.row(row) = kb.row(perm[row]);
  return out;
}

}  // namespace asymcap
