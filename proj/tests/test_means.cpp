#include <cmath>

#include "doctest.h"
#include "opholder/errors.hpp"
#include "opholder/means.hpp"
#include "opholder/random.hpp"
#include "test_support.hpp"

using namespace opholder;
using opholder::test::diag;
using opholder::test::dist;
using opholder::test::scalar;

namespace {

// Direct formula, used only on invertible A.
Matrix formula(const Matrix& a, const Matrix& b, double theta) {
  const Matrix h = psd_power(a, 0.5);
  const Matrix hi = psd_power(a, -0.5);
  return hermitian_part(h * psd_power(hermitian_part(hi * b * hi), theta) * h);
}

Matrix pair_member(Index d, Rng& rng, bool singular) {
  return singular ? random_psd_of_rank(d, d - 1, rng) : random_psd(d, rng);
}

}  // namespace

TEST_CASE("geometric_mean examples") {
  CHECK(geometric_mean(scalar(4), scalar(9)).value(0, 0).real() == doctest::Approx(6));
  CHECK(dist(geometric_mean(Matrix::Identity(2, 2), diag({4, 9})).value, diag({2, 3})) <= 1e-12);
  const Matrix a = test::real_matrix(2, {2, 1, 1, 1});
  const Matrix b = diag({3, 1});
  const auto g = geometric_mean(a, b);
  CHECK(g.epsilon_used == 0);
  CHECK(dist(g.value, formula(a, b, 0.5)) <= 1e-13);
  // the product of the two eigenvalues of A # B is sqrt(det A det B)
  const auto e = herm_eig(g.value);
  CHECK(e.eigenvalues(0) * e.eigenvalues(1) == doctest::Approx(std::sqrt(3.0)));
}

TEST_CASE("weighted_geometric_mean examples and errors") {
  Rng rng(21);
  const Matrix a = random_psd(3, rng);
  const Matrix b = random_psd(3, rng);
  CHECK(dist(weighted_geometric_mean(a, b, 0.0).value, a) <= 1e-12);
  CHECK(dist(weighted_geometric_mean(a, b, 1.0).value, b) <= 1e-12);
  CHECK(weighted_geometric_mean(scalar(8), scalar(1), 1.0 / 3).value(0, 0).real() ==
        doctest::Approx(4).epsilon(1e-14));
  CHECK(dist(weighted_geometric_mean(a, b, 0.5).value, geometric_mean(a, b).value) <= 1e-10);

  CHECK_THROWS_AS(weighted_geometric_mean(a, b, 1.5), DomainError);
  CHECK_THROWS_AS(weighted_geometric_mean(a, b, -0.1), DomainError);
  try {
    geometric_mean(diag({1, -2}), diag({1, 1}));
    FAIL("expected a DomainError");
  } catch (const DomainError& e) {
    CHECK(e.witness() == doctest::Approx(-2));
  }
  CHECK_THROWS_AS(geometric_mean(Matrix::Identity(2, 2), Matrix::Identity(3, 3)), DimensionError);
}

TEST_CASE("weighted mean scalar formula") {
  Rng rng(22);
  for (int trial = 0; trial < 200; ++trial) {
    const double a = rng.uniform(0.01, 10);
    const double b = rng.uniform(0.01, 10);
    const double theta = rng.uniform();
    const double got = weighted_geometric_mean(scalar(a), scalar(b), theta).value(0, 0).real();
    const double want = std::pow(a, 1 - theta) * std::pow(b, theta);
    CHECK(std::abs(got - want) <= 1e-12 * (1 + want));
  }
}

TEST_CASE("block_psd_certificate") {
  const Matrix id = Matrix::Identity(2, 2);
  CHECK(block_psd_certificate(id, id, id).psd);
  const auto bad = block_psd_certificate(id, id, Matrix(2 * id));
  CHECK_FALSE(bad.psd);
  CHECK(bad.min_eigenvalue == doctest::Approx(-1));
  CHECK_THROWS_AS(block_psd_certificate(id, Matrix::Identity(3, 3), id), DimensionError);
}

TEST_CASE("mean properties on random pairs") {
  Rng rng(23);
  for (int trial = 0; trial < 200; ++trial) {
    const Index d = 1 + trial % 4;
    const bool singular = d > 1 && trial % 3 == 0;
    const Matrix a = pair_member(d, rng, singular);
    const Matrix b = random_psd(d, rng);
    const auto ab = geometric_mean(a, b);
    const auto ba = geometric_mean(b, a);
    CHECK(is_psd(ab.value, 1e-10).psd);
    CHECK(dist(ab.value, ba.value) <= 1e-8 * (1 + op_norm(a) + op_norm(b)));
    CHECK(block_psd_certificate(a, b, ab.value).min_eigenvalue >= -1e-8);
    CHECK(dist(geometric_mean(a, a).value, a) <= 1e-10);
    if (ab.epsilon_used > 0) {
      const Matrix walk =
          geometric_mean(Matrix(a + ab.epsilon_used * Matrix::Identity(d, d)), b).value;
      CHECK(dist(ab.value, walk) <= 2 * ab.convergence_gap + 1e-12);
    }
  }
}

TEST_CASE("commuting pairs") {
  Rng rng(24);
  for (int trial = 0; trial < 100; ++trial) {
    const Index d = 1 + trial % 4;
    const Matrix u = random_unitary(d, rng);
    Vector la(d), lb(d);
    for (Index i = 0; i < d; ++i) {
      la(i) = trial % 2 == 0 && i == 0 ? 0.0 : rng.uniform(0, 2);
      lb(i) = rng.uniform(0, 2);
    }
    const Matrix a = hermitian_part(u * la.cast<std::complex<double>>().asDiagonal() * u.adjoint());
    const Matrix b = hermitian_part(u * lb.cast<std::complex<double>>().asDiagonal() * u.adjoint());
    const Vector root = la.cwiseProduct(lb).cwiseSqrt();
    const Matrix want = u * root.cast<std::complex<double>>().asDiagonal() * u.adjoint();
    CHECK(dist(geometric_mean(a, b).value, want) <= 1e-9);
  }
}

TEST_CASE("singular-limit consistency") {
  Rng rng(25);
  for (int trial = 0; trial < 50; ++trial) {
    const Index d = 2 + trial % 3;
    const Matrix a = random_psd_of_rank(d, d - 1, rng);
    const Matrix b = random_psd(d, rng);
    const auto g = geometric_mean(a, b);
    REQUIRE(g.epsilon_used > 0);
    const Matrix id = Matrix::Identity(d, d);
    const Matrix at_last = geometric_mean(Matrix(a + g.epsilon_used * id), b).value;
    // the walk is monotone decreasing in eps, so the limit sits within the
    // last step of the schedule
    CHECK(dist(g.value, at_last) <= 2 * std::max(g.convergence_gap, 1e-8));
    CHECK(is_psd(Matrix(at_last - g.value), 1e-8).psd);
  }
}

TEST_CASE("two-sided regularization reaches the same limit") {
  Rng rng(26);
  for (int trial = 0; trial < 50; ++trial) {
    const Index d = 2 + trial % 3;
    const Matrix a = random_psd_of_rank(d, d - 1, rng);
    const Matrix b = trial % 2 ? random_psd_of_rank(d, 1, rng) : random_psd(d, rng);
    const Matrix g = geometric_mean(a, b).value;
    const double eps = 1e-14;
    const Matrix id = Matrix::Identity(d, d);
    const Matrix two_sided = geometric_mean(Matrix(a + eps * id), Matrix(b + eps * id)).value;
    CHECK(dist(g, two_sided) <= 1e-5);
  }
}

TEST_CASE("long double means") {
  Rng rng(27);
  const Matrix a = random_psd(3, rng);
  const Matrix b = random_psd(3, rng);
  const CMatrix<long double> al = a.cast<std::complex<long double>>();
  const CMatrix<long double> bl = b.cast<std::complex<long double>>();
  const auto gl = weighted_geometric_mean(al, bl, 0.3L);
  const Matrix gd = weighted_geometric_mean(a, b, 0.3).value;
  CHECK(dist(gl.value.cast<std::complex<double>>(), gd) <= 1e-12);
}
