#pragma once

#include <complex>
#include <cstdint>

#include <Eigen/Dense>

namespace asymcap {

template <typename Real>
using Complex = std::complex<Real>;

template <typename Real>
using MatrixXc = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Real>
using VectorXc = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, 1>;

template <typename Real>
using VectorXr = Eigen::Matrix<Real, Eigen::Dynamic, 1>;

using Seed = std::uint64_t;

// Library-wide defaults. Tolerances are absolute and refer to Frobenius norms
// unless stated otherwise.
namespace defaults {
inline constexpr double unitarity_tol = 1e-9;
inline constexpr double homomorphism_tol = 1e-9;
inline constexpr double decomp_tol = 1e-7;
inline constexpr double gap_tol = 1e-7;
inline constexpr int max_retries = 8;
inline constexpr double state_tol = 1e-9;
inline constexpr double eigen_zero = 1e-12;
inline constexpr double pinv_cutoff = 1e-10;
inline constexpr long max_dim = 4096;
inline constexpr long max_group_order = 4096;
inline constexpr Seed seed = 42;
}  // namespace defaults

}  // namespace asymcap
