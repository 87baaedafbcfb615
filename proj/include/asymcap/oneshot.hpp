#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <string_view>
#include <vector>

#include "asymcap/capacity.hpp"
#include "asymcap/decompose.hpp"
#include "asymcap/states.hpp"

namespace asymcap {

enum class EncoderKind { prepared_symmetric, symmetric_unitary, covariant_unitary };

inline std::string_view to_string(EncoderKind kind) {
  switch (kind) {
    case EncoderKind::prepared_symmetric: return "prepared_symmetric";
    case EncoderKind::symmetric_unitary: return "symmetric_unitary";
    case EncoderKind::covariant_unitary: return "covariant_unitary";
  }
  return "unknown";
}

template <typename Real>
struct Codebook {
  std::vector<DensityMatrix<Real>> states;
  EncoderKind encoder_kind = EncoderKind::prepared_symmetric;
  /// W_x, present for the unitary kinds.
  std::vector<MatrixXc<Real>> encoders;
  /// The state the encoders act on, present for the unitary kinds.
  std::optional<DensityMatrix<Real>> input;

  int size() const { return static_cast<int>(states.size()); }
};

template <typename Real>
struct Povm {
  std::vector<MatrixXc<Real>> elements;
  int size() const { return static_cast<int>(elements.size()); }
};

struct ErrorStats {
  double max_error = 0;
  double avg_error = 0;
};

/// How far a unitary is from sum_q |q><q| (x) u_q (x) v_q (symmetric) or
/// sum_q |q><q| (x) I (x) v_q (covariant): off-block weight plus, per block,
/// the distance to the nearest admissible factorization.
template <typename Real>
Real encoder_block_residual(const BlockStructure<Real>& structure, const MatrixXc<Real>& w, EncoderKind kind) {
  const MatrixXc<Real> rotated = structure.rotate(w);
  Real diagonal_weight = 0;
  Real tail = 0;
  for (int q = 0; q < structure.block_count(); ++q) {
    const auto& s = structure.shape(q);
    const MatrixXc<Real> block = structure.diagonal_block(rotated, q);
    diagonal_weight += block.squaredNorm();
    Real r = 0;
    if (kind == EncoderKind::covariant_unitary) {
      const MatrixXc<Real> v = trace_out_left<Real>(block, s.d_left, s.d_right) / Real(s.d_left);
      r = (block - kron<Real>(MatrixXc<Real>::Identity(s.d_left, s.d_left), v)).norm();
    } else {
      r = kronecker_residual<Real>(block, s.d_left, s.d_right);
    }
    tail += r * r;
  }
  const Real off_block = std::sqrt(std::max(Real(0), rotated.squaredNorm() - diagonal_weight));
  return off_block + std::sqrt(tail);
}

/// Checks the Codebook invariants; returns the largest encoder residual.
template <typename Real>
Real check_codebook(const BlockStructure<Real>& structure, const Codebook<Real>& book, Real tol = Real(1e-7)) {
  Real worst = 0;
  for (const auto& s : book.states) {
    if (s.dim() != structure.dim()) throw InvalidState("codebook state has the wrong dimension");
  }
  if (book.encoder_kind == EncoderKind::prepared_symmetric) return worst;
  for (std::size_t x = 0; x < book.encoders.size(); ++x) {
    const Real r = encoder_block_residual(structure, book.encoders[x], book.encoder_kind);
    worst = std::max(worst, r);
    if (r > tol) {
      throw InvalidState("encoder " + std::to_string(x) + " is not " + std::string(to_string(book.encoder_kind)) +
                         " (residual " + std::to_string(double(r)) + ")");
    }
  }
  return worst;
}

/// The sum_q d_R states |q><q| (x) pi_q (x) |e_r><e_r|, pairwise orthogonal
/// and symmetric, ordered by (q, r).
template <typename Real>
Codebook<Real> symmetric_codebook(const BlockStructure<Real>& structure) {
  Codebook<Real> book;
  for (int q = 0; q < structure.block_count(); ++q) {
    const auto& s = structure.shape(q);
    for (int r = 0; r < s.d_right; ++r) {
      MatrixXc<Real> rotated = MatrixXc<Real>::Zero(structure.dim(), structure.dim());
      for (int a = 0; a < s.d_left; ++a) {
        const int i = s.offset + a * s.d_right + r;
        rotated(i, i) = Real(1) / Real(s.d_left);
      }
      book.states.emplace_back(structure.unrotate(rotated));
    }
  }
  return book;
}

/// X^a Z^b on C^d, with X|i> = |i+1 mod d> and Z|i> = w^i |i>.
template <typename Real>
MatrixXc<Real> weyl_operator(int d, int a, int b) {
  MatrixXc<Real> m = MatrixXc<Real>::Zero(d, d);
  for (int i = 0; i < d; ++i) {
    m((i + a) % d, i) = std::polar(Real(1), Real(2) * std::numbers::pi_v<Real> * Real((b * i) % d) / Real(d));
  }
  return m;
}

/// d^2 generalized Bell states in block q: W_{a,b} = |q><q| (x) I (x) X^a Z^b
/// (identity on the other blocks) applied to the maximally entangled state
/// of block q. Requires d_L = d_R; throws BlockNotSquare otherwise.
template <typename Real>
Codebook<Real> bell_codebook(const BlockStructure<Real>& structure, int q) {
  const auto& s = structure.shape(q);
  if (s.d_left != s.d_right) throw BlockNotSquare(q, s.d_left, s.d_right);
  const int d = s.d_left;
  VectorXc<Real> phi = VectorXc<Real>::Zero(structure.dim());
  for (int i = 0; i < d; ++i) phi(s.offset + i * d + i) = Real(1) / std::sqrt(Real(d));

  Codebook<Real> book;
  book.encoder_kind = EncoderKind::covariant_unitary;
  book.input = DensityMatrix<Real>::pure(structure.unrotate(phi));
  const MatrixXc<Real>& rho = book.input->matrix();
  for (int a = 0; a < d; ++a) {
    for (int b = 0; b < d; ++b) {
      MatrixXc<Real> rotated = MatrixXc<Real>::Identity(structure.dim(), structure.dim());
      rotated.block(s.offset, s.offset, d * d, d * d) =
          kron<Real>(MatrixXc<Real>::Identity(d, d), weyl_operator<Real>(d, a, b));
      MatrixXc<Real> w = structure.unrotate(rotated);
      book.states.emplace_back(w * rho * w.adjoint());
      book.encoders.push_back(std::move(w));
    }
  }
  return book;
}

namespace detail {
// sum_q |q><q| (x) u_q (x) v_q in rotated coordinates; u_q = I when covariant.
template <typename Real, typename Rng>
MatrixXc<Real> random_block_unitary(const BlockStructure<Real>& structure, bool covariant, Rng& rng) {
  std::vector<MatrixXc<Real>> parts;
  for (const auto& s : structure.shapes) {
    const MatrixXc<Real> u =
        covariant ? MatrixXc<Real>(MatrixXc<Real>::Identity(s.d_left, s.d_left)) : haar_unitary<Real>(s.d_left, rng);
    const MatrixXc<Real> v = haar_unitary<Real>(s.d_right, rng);
    parts.push_back(kron<Real>(u, v));
  }
  return structure.assemble(parts);
}
}  // namespace detail

/// Haar-random sum_q |q><q| (x) u_q (x) v_q. Per block, u_q is drawn before v_q.
template <typename Real>
MatrixXc<Real> random_symmetric_unitary(const BlockStructure<Real>& structure, Seed seed) {
  std::mt19937_64 rng(seed);
  return structure.unrotate(detail::random_block_unitary(structure, false, rng));
}

/// Haar-random sum_q |q><q| (x) I (x) v_q.
template <typename Real>
MatrixXc<Real> random_covariant_unitary(const BlockStructure<Real>& structure, Seed seed) {
  std::mt19937_64 rng(seed);
  return structure.unrotate(detail::random_block_unitary(structure, true, rng));
}

/// max_x and mean_x of 1 - Tr[M_x rho_x]. A POVM may carry one extra
/// (remainder) element, which counts as a decoding failure.
template <typename Real>
ErrorStats simulate_error(const Codebook<Real>& book, const Povm<Real>& povm) {
  const int m = book.size();
  if (povm.size() != m && povm.size() != m + 1) throw InvalidState("POVM size does not match the codebook");
  ErrorStats stats;
  if (m == 0) return stats;
  double sum = 0;
  for (int x = 0; x < m; ++x) {
    const Real success = (povm.elements[x] * book.states[x].matrix()).trace().real();
    const double err = std::clamp(1.0 - static_cast<double>(success), 0.0, 1.0);
    stats.max_error = std::max(stats.max_error, err);
    sum += err;
  }
  stats.avg_error = sum / m;
  return stats;
}

/// Support projectors of mutually orthogonal states plus the remainder
/// I - sum_x P_x. Throws SupportsOverlap when Tr[P_x P_y] > tol.
template <typename Real>
Povm<Real> projective_decoder(const Codebook<Real>& book, Real tol = Real(1e-9)) {
  Povm<Real> povm;
  for (const auto& s : book.states) povm.elements.push_back(support_projector<Real>(s.matrix(), Real(defaults::pinv_cutoff)));
  const int m = book.size();
  for (int x = 0; x < m; ++x) {
    for (int y = x + 1; y < m; ++y) {
      const Real overlap = std::abs((povm.elements[x] * povm.elements[y]).trace());
      if (overlap > tol) throw SupportsOverlap(x, y, static_cast<double>(overlap));
    }
  }
  if (m > 0) {
    const int d = book.states.front().dim();
    MatrixXc<Real> rest = MatrixXc<Real>::Identity(d, d);
    for (int x = 0; x < m; ++x) rest -= povm.elements[x];
    povm.elements.push_back(std::move(rest));
  }
  return povm;
}

/// Pretty-good measurement M_x = S^{-1/2} p_x rho_x S^{-1/2}, S = sum p_x rho_x,
/// with the pseudo-inverse root on the support of S, plus the remainder
/// I - sum_x M_x.
template <typename Real>
Povm<Real> pgm_decoder(const Codebook<Real>& book, const std::vector<Real>& priors) {
  const int m = book.size();
  if (static_cast<int>(priors.size()) != m) throw InvalidState("priors do not match the codebook size");
  Povm<Real> povm;
  if (m == 0) return povm;
  const int d = book.states.front().dim();
  MatrixXc<Real> average = MatrixXc<Real>::Zero(d, d);
  for (int x = 0; x < m; ++x) average += priors[x] * book.states[x].matrix();
  const MatrixXc<Real> root = pinv_sqrt<Real>(average, Real(defaults::pinv_cutoff));
  MatrixXc<Real> rest = MatrixXc<Real>::Identity(d, d);
  for (int x = 0; x < m; ++x) {
    MatrixXc<Real> element = hermitian_part<Real>(root * (priors[x] * book.states[x].matrix()) * root);
    rest -= element;
    povm.elements.push_back(std::move(element));
  }
  povm.elements.push_back(hermitian_part(rest));
  return povm;
}

template <typename Real>
Povm<Real> pgm_decoder(const Codebook<Real>& book) {
  return pgm_decoder(book, std::vector<Real>(book.size(), Real(1) / Real(std::max(1, book.size()))));
}

/// Smallest eigenvalue over the elements and of I - sum_x M_x.
template <typename Real>
Real povm_slack(const Povm<Real>& povm) {
  if (povm.elements.empty()) return 0;
  const int d = static_cast<int>(povm.elements.front().rows());
  Real worst = std::numeric_limits<Real>::infinity();
  MatrixXc<Real> rest = MatrixXc<Real>::Identity(d, d);
  for (const auto& e : povm.elements) {
    worst = std::min(worst, hermitian_eigenvalues<Real>(e).minCoeff());
    rest -= e;
  }
  return std::min(worst, hermitian_eigenvalues<Real>(rest).minCoeff());
}

struct RateTestResult {
  int n = 1;
  double rate = 0;
  int trials = 0;
  Seed seed = 0;
  int messages = 1;
  EncoderKind encoder_kind = EncoderKind::symmetric_unitary;
  std::vector<double> avg_errors;
  std::vector<double> max_errors;
  double mean_error = 0;
  double min_error = 0;
  double max_error = 0;
};

/// Largest ceil(n R) accepted by monte_carlo_rate_test.
inline constexpr int max_message_bits = 12;

/// Finite-n random coding experiment: each trial draws 2^ceil(nR) random
/// block unitaries W_x on n copies, encodes W_x rho^{(x)n} W_x^dag, decodes
/// with the uniform-prior PGM, and records the error. Trial t uses its own
/// generator derived from (seed, t). Work happens in rotated coordinates,
/// where the encoders are block diagonal; error probabilities do not depend
/// on the basis.
template <typename Real>
RateTestResult monte_carlo_rate_test(const BlockStructure<Real>& structure, const DensityMatrix<Real>& rho, int n,
                                     double rate, int trials, Seed seed,
                                     EncoderKind kind = EncoderKind::symmetric_unitary) {
  if (n < 1) throw InvalidState("n must be at least 1");
  if (rate < 0) throw InvalidState("rate must be non-negative");
  if (trials < 1) throw InvalidState("trials must be at least 1");
  if (kind == EncoderKind::prepared_symmetric) throw InvalidState("rate test needs a unitary encoder kind");
  const BlockStructure<Real> product = tensor_power(structure, n);
  const int bits = static_cast<int>(std::ceil(n * rate - 1e-9));
  if (bits > max_message_bits) throw DimensionCapExceeded("message bits", bits, max_message_bits);
  const int m = 1 << std::max(0, bits);

  const DensityMatrix<Real> input = tensor_power(rho, n);
  const MatrixXc<Real> rotated_input = product.rotate(input.matrix());

  RateTestResult result;
  result.n = n;
  result.rate = rate;
  result.trials = trials;
  result.seed = seed;
  result.messages = m;
  result.encoder_kind = kind;
  for (int t = 0; t < trials; ++t) {
    auto rng = derived_rng(seed, static_cast<std::uint64_t>(t));
    Codebook<Real> book;
    book.encoder_kind = kind;
    for (int x = 0; x < m; ++x) {
      const MatrixXc<Real> w =
          detail::random_block_unitary(product, kind == EncoderKind::covariant_unitary, rng);
      book.states.emplace_back(w * rotated_input * w.adjoint(), Real(1e-8));
    }
    const ErrorStats stats = simulate_error(book, pgm_decoder(book));
    result.avg_errors.push_back(stats.avg_error);
    result.max_errors.push_back(stats.max_error);
  }
  double sum = 0;
  result.min_error = result.avg_errors.front();
  result.max_error = result.avg_errors.front();
  for (double e : result.avg_errors) {
    sum += e;
    result.min_error = std::min(result.min_error, e);
    result.max_error = std::max(result.max_error, e);
  }
  result.mean_error = sum / trials;
  return result;
}

}  // namespace asymcap
