#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <cmath>
#include <limits>

#include "doctest.h"
#include "opholder/errors.hpp"
#include "opholder/linalg.hpp"
#include "opholder/random.hpp"
#include "test_support.hpp"

using namespace opholder;
using opholder::test::diag;
using opholder::test::dist;
using opholder::test::real_matrix;

TEST_CASE("herm_eig on diagonal and swap matrices") {
  const auto e = herm_eig(diag({3, 1}));
  CHECK(e.eigenvalues(0) == doctest::Approx(1));
  CHECK(e.eigenvalues(1) == doctest::Approx(3));
  // columns are the swapped standard basis, up to phase
  CHECK(std::abs(e.unitary(1, 0)) == doctest::Approx(1));
  CHECK(std::abs(e.unitary(0, 1)) == doctest::Approx(1));

  const auto s = herm_eig(real_matrix(2, {0, 1, 1, 0}));
  CHECK(s.eigenvalues(0) == doctest::Approx(-1));
  CHECK(s.eigenvalues(1) == doctest::Approx(1));
}

TEST_CASE("herm_eig reconstructs and agrees with Eigen") {
  Rng rng(11);
  for (Index d = 1; d <= 8; ++d) {
    for (int trial = 0; trial < 20; ++trial) {
      const Matrix h = test::random_hermitian(d, rng);
      const auto e = herm_eig(h);
      const Matrix back = e.unitary * e.eigenvalues.cast<std::complex<double>>().asDiagonal() *
                          e.unitary.adjoint();
      CHECK(dist(h, back) <= 1e-10 * (1 + op_norm(h)));
      CHECK(is_unitary(e.unitary, 1e-10));
      for (Index i = 1; i < d; ++i) CHECK(e.eigenvalues(i - 1) <= e.eigenvalues(i));
      Eigen::SelfAdjointEigenSolver<Matrix> oracle(h);
      CHECK((oracle.eigenvalues() - e.eigenvalues).cwiseAbs().maxCoeff() <= 1e-12);
    }
  }
}

TEST_CASE("herm_eig in long double") {
  Rng rng(5);
  const Matrix h = test::random_hermitian(5, rng);
  const CMatrix<long double> hl = h.cast<std::complex<long double>>();
  const auto el = herm_eig(hl);
  const auto ed = herm_eig(h);
  CHECK((el.eigenvalues.cast<double>() - ed.eigenvalues).cwiseAbs().maxCoeff() <= 1e-13);
  const CMatrix<long double> back =
      el.unitary * el.eigenvalues.cast<std::complex<long double>>().asDiagonal() *
      el.unitary.adjoint();
  CHECK(static_cast<double>(op_norm(CMatrix<long double>(back - hl))) <= 1e-16);
}

TEST_CASE("input validation") {
  const Matrix rect = Matrix::Zero(2, 3);
  CHECK_THROWS_AS(herm_eig(rect), DimensionError);
  CHECK_THROWS_AS(svd(rect), DimensionError);
  CHECK_THROWS_AS(opholder::polar(rect), DimensionError);
  Matrix bad = Matrix::Identity(2, 2);
  bad(0, 1) = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(herm_eig(bad), InvalidInputError);
  CHECK_THROWS_AS(svd(bad), InvalidInputError);
  bad(0, 1) = std::numeric_limits<double>::infinity();
  CHECK_THROWS_AS(opholder::polar(bad), InvalidInputError);
}

TEST_CASE("svd examples") {
  const auto s = svd(real_matrix(2, {0, 3, 4, 0}));
  CHECK(s.sigma(0) == doctest::Approx(4));
  CHECK(s.sigma(1) == doctest::Approx(3));
  const auto id = svd(Matrix::Identity(3, 3));
  for (Index i = 0; i < 3; ++i) CHECK(id.sigma(i) == doctest::Approx(1));
}

TEST_CASE("svd matches the eigenvalue oracle and Eigen") {
  Rng rng(12);
  for (Index d = 1; d <= 8; ++d) {
    for (int trial = 0; trial < 20; ++trial) {
      const Matrix m = trial % 4 == 3 && d > 1 ? random_matrix_of_rank(d, d / 2, rng)
                                               : random_matrix(d, rng);
      const auto s = svd(m);
      const Matrix back = s.u * s.sigma.cast<std::complex<double>>().asDiagonal() * s.v.adjoint();
      CHECK(dist(m, back) <= 1e-10 * (1 + op_norm(m)));
      CHECK(is_unitary(s.u, 1e-10));
      CHECK(is_unitary(s.v, 1e-10));
      const auto e = herm_eig(Matrix(m.adjoint() * m));
      for (Index i = 0; i < d; ++i) {
        CHECK(s.sigma(i) >= 0);
        if (i > 0) CHECK(s.sigma(i - 1) >= s.sigma(i));
        const double oracle = std::sqrt(std::max(e.eigenvalues(d - 1 - i), 0.0));
        // relative 1e-9 above the sqrt(eps)-level floor of the squared oracle
        CHECK(std::abs(s.sigma(i) - oracle) <= 1e-9 * oracle + 1e-7 * s.sigma(0));
      }
      Eigen::JacobiSVD<Matrix> eigen_svd(m);
      CHECK((eigen_svd.singularValues() - s.sigma).cwiseAbs().maxCoeff() <= 1e-12);
    }
  }
}

TEST_CASE("polar examples") {
  const Matrix rot = real_matrix(2, {0, -1, 1, 0});
  const auto p = opholder::polar(rot);
  CHECK(dist(p.unitary_factor, rot) <= 1e-12);
  CHECK(dist(p.modulus, Matrix::Identity(2, 2)) <= 1e-12);

  const auto q = opholder::polar(diag({-3, 2}));
  CHECK(dist(q.unitary_factor, diag({-1, 1})) <= 1e-12);
  CHECK(dist(q.modulus, diag({3, 2})) <= 1e-12);
}

TEST_CASE("polar of singular matrices completes to a unitary") {
  Rng rng(13);
  for (int trial = 0; trial < 50; ++trial) {
    const Matrix m = random_matrix_of_rank(3, 2, rng);
    const auto p = opholder::polar(m);
    CHECK(is_unitary(p.unitary_factor, 1e-10));
    CHECK(dist(m, Matrix(p.unitary_factor * p.modulus)) <= 1e-10 * (1 + op_norm(m)));
    CHECK(is_psd(p.modulus, 1e-10).psd);
  }
  const auto z = opholder::polar(Matrix::Zero(2, 2));
  CHECK(is_unitary(z.unitary_factor, 1e-12));
  CHECK(op_norm(z.modulus) == 0);
}

TEST_CASE("spectral_fn") {
  const Matrix r = spectral_fn(diag({4, 9}), [](double t) { return std::sqrt(t); });
  CHECK(dist(r, diag({2, 3})) <= 1e-12);

  Rng rng(14);
  const Matrix h = random_psd(3, rng);
  CHECK(dist(spectral_fn(h, [](double) { return 1.0; }), Matrix::Identity(3, 3)) <= 1e-12);

  const Matrix two_thirds = spectral_fn(h, [](double t) { return std::pow(t, 2.0 / 3); });
  const Matrix two_ninths = spectral_fn(h, [](double t) { return std::pow(t, 2.0 / 9); });
  CHECK(dist(two_thirds, Matrix(two_ninths * two_ninths * two_ninths)) <= 1e-9);

  const Matrix indefinite = diag({2, -0.5});
  try {
    spectral_fn(indefinite, [](double t) { return std::sqrt(t); });
    FAIL("expected a DomainError");
  } catch (const DomainError& e) {
    CHECK(e.witness() == doctest::Approx(-0.5));
    CHECK(std::string(e.what()).find("-0.5") != std::string::npos);
  }
}

TEST_CASE("spectral calculus is multiplicative") {
  Rng rng(15);
  for (int trial = 0; trial < 50; ++trial) {
    const Matrix h = test::random_hermitian(4, rng);
    auto f = [](double t) { return std::exp(t); };
    auto g = [](double t) { return t * t - 0.3 * t; };
    const Matrix fg = spectral_fn(h, [&](double t) { return f(t) * g(t); });
    CHECK(dist(fg, Matrix(spectral_fn(h, f) * spectral_fn(h, g))) <= 1e-9);
  }
}

TEST_CASE("psd_power") {
  CHECK(dist(psd_power(diag({4, 9}), 0.5), diag({2, 3})) <= 1e-12);
  CHECK(dist(psd_power(diag({4, 0}), 0.0), Matrix::Identity(2, 2)) <= 1e-12);
  CHECK_THROWS_AS(psd_power(diag({1, -1}), 0.5), DomainError);
  CHECK_THROWS_AS(psd_power(diag({1, 0}), -0.5), DomainError);
  // rounding-level negatives are zero
  CHECK(dist(psd_power(diag({1, -1e-17}), 0.5), diag({1, 0})) <= 1e-12);
}

TEST_CASE("is_psd and friends") {
  const auto id = is_psd(Matrix::Identity(2, 2), 0.0);
  CHECK(id.psd);
  CHECK(id.min_eigenvalue == doctest::Approx(1));
  const auto indefinite = is_psd(diag({1, -1}), 1e-9);
  CHECK_FALSE(indefinite.psd);
  CHECK(indefinite.min_eigenvalue == doctest::Approx(-1));

  Rng rng(16);
  for (int trial = 0; trial < 50; ++trial) {
    const Matrix r = random_matrix(4, rng);
    const Matrix g = r.adjoint() * r;
    CHECK(is_psd(g, 1e-10).psd);
    CHECK(is_hermitian(g, 1e-10));
    // a PSD verdict never comes without Hermitian symmetry
    Matrix skewed = g;
    skewed(0, 1) += 0.1;
    if (is_psd(skewed, 1e-10).psd) CHECK(is_hermitian(skewed, 1e-10));
  }
  CHECK(is_normal(real_matrix(2, {0, -1, 1, 0}), 1e-12));
  CHECK_FALSE(is_normal(real_matrix(2, {0, 1, 0, 0}), 1e-12));
  CHECK_FALSE(is_unitary(diag({1, 2}), 1e-12));
}

TEST_CASE("random generators") {
  CHECK(random_psd(2, 99) == random_psd(2, 99));
  CHECK(random_matrix(3, 7) == random_matrix(3, 7));
  CHECK_FALSE(random_matrix(3, 7) == random_matrix(3, 8));
  CHECK(is_unitary(random_unitary(3, 5), 1e-10));
  const Matrix p = random_psd(4, 1);
  CHECK(is_psd(p, 1e-12).psd);
  CHECK(op_norm(p) <= 1 + 1e-12);

  const auto family = random_commuting_normal_family(3, 4, 17);
  for (const auto& a : family) CHECK(is_normal(a, 1e-10));
  for (std::size_t i = 0; i < family.size(); ++i) {
    for (std::size_t j = 0; j < family.size(); ++j) {
      CHECK(op_norm(Matrix(family[i] * family[j] - family[j] * family[i])) <= 1e-10);
    }
  }

  CHECK_THROWS_AS(random_matrix(0, 1), DimensionError);
  CHECK_THROWS_AS(random_psd(0, 1), DimensionError);
  CHECK_THROWS_AS(random_unitary(0, 1), DimensionError);
  CHECK_THROWS_AS(random_commuting_normal_family(0, 2, 1), DimensionError);
  CHECK_THROWS_AS(random_commuting_normal_family(2, 0, 1), DimensionError);

  Rng rng(18);
  const Matrix low = random_psd_of_rank(4, 2, rng);
  const auto e = herm_eig(low);
  CHECK(std::abs(e.eigenvalues(0)) <= 1e-14);
  CHECK(std::abs(e.eigenvalues(1)) <= 1e-14);
  CHECK(e.eigenvalues(2) >= 0.1 - 1e-12);
}

TEST_CASE("even functions move through the polar factor") {
  Rng rng(19);
  for (int trial = 0; trial < 100; ++trial) {
    const Index d = 1 + static_cast<Index>(trial % 6);
    const Matrix m = random_matrix(d, rng);
    const auto p = opholder::polar(m);
    const Matrix& u = p.unitary_factor;
    const Matrix abs_adj = opholder::polar(Matrix(m.adjoint())).modulus;
    auto check_even = [&](auto&& f) {
      const Matrix lhs = u * spectral_fn(p.modulus, f) * u.adjoint();
      const Matrix rhs = spectral_fn(abs_adj, f);
      CHECK(dist(lhs, rhs) <= 1e-9);
    };
    check_even([](double t) { return t * t; });
    check_even([](double t) { return t * t * t * t; });
    for (double alpha : {0.25, 0.5, 0.75}) {
      check_even([alpha](double t) { return std::pow(std::max(t, 0.0), 2 * alpha); });
    }
  }
}
