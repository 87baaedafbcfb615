#include "doctest.h"

#include "asymcap/catalog.hpp"
#include "asymcap/states.hpp"
#include "oracles.hpp"

using namespace asymcap;
using oracle::Mat;
using oracle::Vec;

namespace {

Vec basis_vector(int d, int i) {
  Vec v = Vec::Zero(d);
  v(i) = 1.0;
  return v;
}

Vec plus_state() { return Vec::Constant(2, 1.0 / std::sqrt(2.0)); }

/// (|00> + |11>)/sqrt 2 in the u (x) I ordering of q8/u_tensor_I.
Vec phi_plus() {
  Vec v = Vec::Zero(4);
  v(0) = v(3) = 1.0 / std::sqrt(2.0);
  return v;
}

/// Tr_R of the q-block of an already rotated matrix, by explicit loops.
Mat left_marginal(const Mat& rotated, const BlockShape& s) {
  Mat out = Mat::Zero(s.d_left, s.d_left);
  for (int a = 0; a < s.d_left; ++a)
    for (int b = 0; b < s.d_left; ++b)
      for (int k = 0; k < s.d_right; ++k) out(a, b) += rotated(s.offset + a * s.d_right + k, s.offset + b * s.d_right + k);
  return out;
}

}  // namespace

TEST_CASE("density matrix validation") {
  CHECK_NOTHROW(DensityMatrix<double>(Mat::Identity(3, 3) / 3.0));
  CHECK_THROWS_AS(DensityMatrix<double>(Mat::Identity(2, 2)), InvalidState);
  Mat nonherm = Mat::Identity(2, 2) / 2.0;
  nonherm(0, 1) = 0.1;
  CHECK_THROWS_AS(DensityMatrix<double>{nonherm}, InvalidState);
  Mat negative = Mat::Zero(2, 2);
  negative(0, 0) = 1.5;
  negative(1, 1) = -0.5;
  CHECK_THROWS_AS(DensityMatrix<double>{negative}, InvalidState);
  CHECK_THROWS_AS(DensityMatrix<double>(Mat::Identity(2, 3) / 2.0), InvalidState);
  const auto pure = DensityMatrix<double>::pure(Vec::Constant(3, 2.0));
  CHECK(pure.matrix().trace().real() == doctest::Approx(1.0));
}

TEST_CASE("twirl") {
  SUBCASE("Z2 sign kills coherences of |+>") {
    const auto rep = catalog_representation("z2/sign");
    const auto out = twirl(rep, DensityMatrix<double>::pure(plus_state()));
    CHECK((out.matrix() - Mat::Identity(2, 2) / 2.0).norm() < 1e-15);
  }
  SUBCASE("Q8 u (x) I on a maximally entangled state") {
    const auto rep = catalog_representation("q8/u_tensor_I");
    const Mat phi = phi_plus() * phi_plus().adjoint();
    const auto out = twirl(rep, DensityMatrix<double>(phi));
    Mat expect = Mat::Zero(4, 4);
    for (const auto& u : rep.matrices()) expect += u * phi * u.adjoint();
    expect /= 8.0;
    CHECK((out.matrix() - expect).norm() < 1e-14);
    CHECK((out.matrix() - Mat::Identity(4, 4) / 4.0).norm() < 1e-14);
  }
  SUBCASE("symmetric states are fixed points") {
    std::mt19937_64 rng(3);
    const auto rep = catalog_representation("s3/regular");
    const Mat sigma = oracle::random_symmetric_state(rep.matrices(), rng);
    CHECK((twirl(rep, DensityMatrix<double>(sigma)).matrix() - sigma).norm() < 1e-12);
  }
}

TEST_CASE("symmetry test") {
  const auto rep = catalog_representation("z2/sign");
  CHECK(is_symmetric(rep, DensityMatrix<double>::maximally_mixed(2)));
  const auto plus = DensityMatrix<double>::pure(plus_state());
  CHECK_FALSE(is_symmetric(rep, plus));
  // ||U rho U^dag - rho||_F for U = diag(1,-1): the difference is the
  // off-diagonal matrix with entries -1, whose Frobenius norm is sqrt 2.
  const Mat u = rep.matrix(1);
  const double direct = (u * plus.matrix() * u.adjoint() - plus.matrix()).norm();
  CHECK(direct == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
  CHECK(symmetry_residual(rep, plus.matrix()) == doctest::Approx(direct).epsilon(1e-14));

  std::mt19937_64 rng(11);
  for (const char* id : {"s3/regular", "q8/u_tensor_I", "d4/standard_plus_trivial"}) {
    const auto r = catalog_representation(id);
    const auto t = twirl(r, DensityMatrix<double>(oracle::random_state(r.dim(), rng)));
    CHECK(is_symmetric(r, t));
  }
}

TEST_CASE("entropy") {
  std::mt19937_64 rng(5);
  CHECK(entropy(DensityMatrix<double>(oracle::random_pure(5, rng))) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(entropy(DensityMatrix<double>::maximally_mixed(6)) == doctest::Approx(std::log2(6.0)).epsilon(1e-12));
  Mat d = Mat::Zero(2, 2);
  d(0, 0) = 0.75;
  d(1, 1) = 0.25;
  const double expect = -0.75 * std::log2(0.75) - 0.25 * std::log2(0.25);
  CHECK(expect == doctest::Approx(2.0 - 0.75 * std::log2(3.0)).epsilon(1e-14));
  CHECK(entropy(DensityMatrix<double>(d)) == doctest::Approx(expect).epsilon(1e-12));
  CHECK(expect == doctest::Approx(0.8113).epsilon(1e-4));
  for (int k = 0; k < 20; ++k) {
    const Mat rho = oracle::random_state(4, rng);
    CHECK(entropy(DensityMatrix<double>(rho)) == doctest::Approx(oracle::entropy_bits(rho)).epsilon(1e-10));
  }
}

TEST_CASE("shannon and relative entropy") {
  CHECK(shannon(std::vector<double>{1.0, 0.0}) == 0.0);
  CHECK(shannon(std::vector<double>{0.25, 0.25, 0.25, 0.25}) == doctest::Approx(2.0));
  const std::vector<double> p{0.5, 0.5}, q{0.75, 0.25};
  CHECK(kl(p, p) == doctest::Approx(0.0));
  const double expect = 0.5 * std::log2(0.5 / 0.75) + 0.5 * std::log2(0.5 / 0.25);
  CHECK(expect == doctest::Approx(1.0 - 0.5 * std::log2(3.0)).epsilon(1e-14));
  CHECK(kl(p, q) == doctest::Approx(expect).epsilon(1e-12));
  CHECK(expect == doctest::Approx(0.2075).epsilon(1e-3));
  CHECK(kl(std::vector<double>{1.0, 0.0}, std::vector<double>{0.5, 0.5}) == doctest::Approx(1.0));
  CHECK_THROWS_AS(kl(std::vector<double>{0.5, 0.5}, std::vector<double>{1.0, 0.0}), SupportMismatch);
  CHECK_THROWS_AS(shannon(std::vector<double>{0.5, 0.6}), InvalidState);
  CHECK_THROWS_AS(shannon(std::vector<double>{1.5, -0.5}), InvalidState);
}

TEST_CASE("block probabilities") {
  SUBCASE("maximally mixed gives d_L d_R / d_S") {
    for (const char* id : {"s3/regular", "d4/standard_plus_trivial", "s4/permutation"}) {
      const auto dec = decompose(catalog_representation(id));
      const auto p = block_probabilities(dec, DensityMatrix<double>::maximally_mixed(dec.dim()));
      for (int q = 0; q < dec.block_count(); ++q) CHECK(p[q] == doctest::Approx(double(dec.shape(q).extent()) / dec.dim()));
    }
  }
  SUBCASE("state on one block gives an indicator") {
    const auto dec = decompose(catalog_representation("s3/regular"));
    const auto& s = dec.shape(2);
    Vec v = Vec::Zero(6);
    v(s.offset + 1) = 1.0;
    const auto p = block_probabilities(dec, DensityMatrix<double>::pure(dec.unrotate(v)));
    CHECK(p[0] == doctest::Approx(0.0));
    CHECK(p[1] == doctest::Approx(0.0));
    CHECK(p[2] == doctest::Approx(1.0));
  }
  SUBCASE("S3 regular |0><0| against character projectors") {
    const auto rep = catalog_representation("s3/regular");
    const auto dec = decompose(rep);
    const Vec e0 = basis_vector(6, 0);
    const auto p = block_probabilities(dec, DensityMatrix<double>::pure(e0));
    for (const auto& irrep : oracle::s3_irreps()) {
      const Mat proj = oracle::character_projector(rep.matrices(), irrep);
      const double expect = (e0.adjoint() * proj * e0)(0, 0).real();
      for (int q = 0; q < dec.block_count(); ++q) {
        double diff = 0;
        for (int g = 0; g < 6; ++g) diff += std::abs(dec.blocks[q].character[g] - irrep.character[g]);
        if (diff < 1e-9) CHECK(p[q] == doctest::Approx(expect).epsilon(1e-12));
      }
    }
    CHECK(p[2] == doctest::Approx(4.0 / 6.0));
  }
}

TEST_CASE("reduced left state") {
  SUBCASE("symmetric states are maximally mixed on s_L") {
    std::mt19937_64 rng(17);
    const auto rep = catalog_representation("s4/regular");
    const auto dec = decompose(rep);
    const DensityMatrix<double> sigma(oracle::random_symmetric_state(rep.matrices(), rng));
    for (int q = 0; q < dec.block_count(); ++q) {
      const int d = dec.shape(q).d_left;
      CHECK((reduced_left_state(dec, sigma, q).matrix() - Mat::Identity(d, d) / double(d)).norm() <= 1e-7);
    }
  }
  SUBCASE("Q8 u (x) I, maximally entangled input") {
    const auto dec = decompose(catalog_representation("q8/u_tensor_I"));
    const auto left = reduced_left_state(dec, DensityMatrix<double>::pure(phi_plus()), 0);
    CHECK((left.matrix() - Mat::Identity(2, 2) / 2.0).norm() < 1e-12);
  }
  SUBCASE("Q8 u (x) I, product input") {
    const auto dec = decompose(catalog_representation("q8/u_tensor_I"));
    const auto rho = DensityMatrix<double>::pure(basis_vector(4, 0));
    const auto left = reduced_left_state(dec, rho, 0);
    CHECK((left.matrix() - left_marginal(dec.rotate(rho.matrix()), dec.shape(0))).norm() < 1e-12);
    CHECK(oracle::entropy_bits(left.matrix()) == doctest::Approx(0.0).epsilon(1e-10));
  }
  SUBCASE("zero block mass") {
    const auto dec = decompose(catalog_representation("z2/sign"));
    const Vec v = dec.unrotate(Vec(basis_vector(2, 0)));
    CHECK_THROWS_AS(reduced_left_state(dec, DensityMatrix<double>::pure(v), 1), ZeroBlockMass);
  }
}

TEST_CASE("symmetric form") {
  SUBCASE("maximally mixed state") {
    const auto dec = decompose(catalog_representation("s3/regular"));
    const auto form = symmetric_form(dec, DensityMatrix<double>::maximally_mixed(6));
    for (int q = 0; q < dec.block_count(); ++q) {
      const auto& s = dec.shape(q);
      CHECK(form.r[q] == doctest::Approx(double(s.extent()) / 6.0));
      CHECK((form.sigma_blocks[q] - Mat::Identity(s.d_right, s.d_right) / double(s.d_right)).norm() < 1e-9);
    }
  }
  SUBCASE("S3 regular twirl of |0><0|") {
    const auto rep = catalog_representation("s3/regular");
    const auto dec = decompose(rep);
    const Mat e0 = basis_vector(6, 0) * basis_vector(6, 0).adjoint();
    const Mat sigma = oracle::direct_twirl(rep.matrices(), e0);
    const auto form = symmetric_form(dec, DensityMatrix<double>(sigma));
    CHECK(form.r.size() == 3);
    double total = 0;
    for (double r : form.r) total += r;
    CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(form.reassembly_residual <= 1e-7);
    const auto again = assemble_symmetric<double>(dec, form.r, form.sigma_blocks);
    CHECK((again.matrix() - sigma).norm() <= 1e-7);
  }
  SUBCASE("Q8 u (x) I, pi (x) |e0><e0|") {
    const auto dec = decompose(catalog_representation("q8/u_tensor_I"));
    Mat sigma = Mat::Zero(4, 4);
    sigma(0, 0) = sigma(2, 2) = 0.5;
    const auto form = symmetric_form(dec, DensityMatrix<double>(sigma));
    REQUIRE(form.r.size() == 1);
    CHECK(form.r[0] == doctest::Approx(1.0));
    // sigma_0 equals |e0><e0| up to the multiplicity gauge of B.
    const auto ev = oracle::eigenvalues(form.sigma_blocks[0]);
    CHECK(ev(0) == doctest::Approx(0.0).epsilon(1e-9));
    CHECK(ev(1) == doctest::Approx(1.0).epsilon(1e-9));
  }
  SUBCASE("asymmetric input is rejected") {
    const auto dec = decompose(catalog_representation("z2/sign"));
    CHECK_THROWS_AS(symmetric_form(dec, DensityMatrix<double>::pure(plus_state())), NotSymmetric);
  }
}

TEST_CASE("symmetric state properties over every fixture") {
  std::mt19937_64 rng(2024);
  for (const auto& id : builtin_fixtures()) {
    CAPTURE(id);
    const auto rep = catalog_representation(id);
    const auto dec = decompose(rep);
    for (int k = 0; k < 10; ++k) {
      const Mat raw = oracle::random_state_any_rank(rep.dim(), rng);
      const DensityMatrix<double> rho(raw);
      const auto once = twirl(rep, rho);
      const auto twice = twirl(rep, once);
      CHECK((twice.matrix() - once.matrix()).norm() <= 1e-10);
      CHECK(once.matrix().trace().real() == doctest::Approx(1.0).epsilon(1e-12));
      CHECK(oracle::eigenvalues(once.matrix()).minCoeff() >= -1e-12);

      const auto p = block_probabilities(dec, rho);
      const auto pt = block_probabilities(dec, once);
      for (int q = 0; q < dec.block_count(); ++q) CHECK(std::abs(p[q] - pt[q]) <= 1e-9);

      const auto form = symmetric_form(dec, once);
      double rhs = oracle::shannon_bits(form.r);
      for (int q = 0; q < dec.block_count(); ++q)
        if (form.r[q] > 0) rhs += form.r[q] * (std::log2(double(dec.shape(q).d_left)) + oracle::entropy_bits(form.sigma_blocks[q]));
      CHECK(std::abs(entropy(once) - rhs) <= 1e-7);
      CHECK(std::abs(entropy(once) - oracle::entropy_bits(once.matrix())) <= 1e-9);
    }
  }
}

TEST_CASE("tensor power of a state") {
  Mat d = Mat::Zero(2, 2);
  d(0, 0) = 0.75;
  d(1, 1) = 0.25;
  const auto three = tensor_power(DensityMatrix<double>(d), 3);
  CHECK(three.dim() == 8);
  CHECK(entropy(three) == doctest::Approx(3 * oracle::entropy_bits(d)).epsilon(1e-12));
  CHECK(three.matrix()(0, 0).real() == doctest::Approx(0.75 * 0.75 * 0.75));
  CHECK_THROWS_AS(tensor_power(DensityMatrix<double>(d), 13), DimensionCapExceeded);
}
