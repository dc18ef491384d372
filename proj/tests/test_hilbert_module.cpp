#include <cmath>

#include "doctest.h"
#include "opholder/errors.hpp"
#include "opholder/hilbert_module.hpp"
#include "opholder/random.hpp"
#include "test_support.hpp"

using namespace opholder;
using opholder::test::diag;
using opholder::test::dist;

namespace {

ModuleElement random_element(std::size_t m, Index d, Rng& rng) {
  ModuleElement x;
  for (std::size_t n = 0; n < m; ++n) {
    x.weights.push_back(rng.uniform(0.1, 1));
    x.blocks.push_back(random_matrix(d, rng));
  }
  return x;
}

MultiplierOperator random_multiplier(std::size_t m, Index d, Rng& rng) {
  MultiplierOperator t;
  for (std::size_t n = 0; n < m; ++n) t.blocks.push_back(random_matrix(d, rng));
  return t;
}

}  // namespace

TEST_CASE("inner product examples") {
  const Matrix id = Matrix::Identity(2, 2);
  const ModuleElement x{{1, 1}, {id, Matrix(2 * id)}};
  CHECK(dist(inner_product(x, x), Matrix(5 * id)) <= 1e-14);
  const ModuleElement zero{{1, 1}, {Matrix::Zero(2, 2), Matrix::Zero(2, 2)}};
  CHECK(op_norm(inner_product(x, zero)) == 0);

  Rng rng(41);
  const ModuleElement a = random_element(3, 2, rng);
  ModuleElement b = random_element(3, 2, rng);
  b.weights = a.weights;
  CHECK(dist(Matrix(inner_product(a, b).adjoint()), inner_product(b, a)) <= 1e-13);
  CHECK(is_psd(inner_product(a, a), 1e-12).psd);
}

TEST_CASE("inner product errors") {
  const Matrix id = Matrix::Identity(2, 2);
  const ModuleElement x{{1, 1}, {id, id}};
  const ModuleElement shorter{{1}, {id}};
  const ModuleElement other_weights{{1, 2}, {id, id}};
  const ModuleElement other_dim{{1, 1}, {Matrix::Identity(3, 3), Matrix::Identity(3, 3)}};
  CHECK_THROWS_AS(inner_product(x, shorter), DimensionError);
  CHECK_THROWS_AS(inner_product(x, other_weights), DimensionError);
  CHECK_THROWS_AS(inner_product(x, other_dim), DimensionError);
  const ModuleElement bad_count{{1}, {id, id}};
  CHECK_THROWS_AS(bad_count.validate(), DimensionError);
  const ModuleElement bad_weight{{-1, 1}, {id, id}};
  CHECK_THROWS_AS(bad_weight.validate(), InvalidInputError);
}

TEST_CASE("multiplier action") {
  Rng rng(42);
  const ModuleElement x = random_element(3, 2, rng);
  const auto same = apply(MultiplierOperator::identity(2, 3), x);
  for (std::size_t n = 0; n < 3; ++n) CHECK(dist(same.blocks[n], x.blocks[n]) == 0);
  const MultiplierOperator twice{std::vector<Matrix>(3, Matrix(2 * Matrix::Identity(2, 2)))};
  const auto doubled = apply(twice, x);
  for (std::size_t n = 0; n < 3; ++n) {
    CHECK(dist(doubled.blocks[n], Matrix(2 * x.blocks[n])) <= 1e-15);
  }
  CHECK_THROWS_AS(apply(MultiplierOperator::identity(2, 2), x), DimensionError);

  // <x, T y> = <T* x, y>
  ModuleElement y = random_element(3, 2, rng);
  y.weights = x.weights;
  const MultiplierOperator t = random_multiplier(3, 2, rng);
  CHECK(dist(inner_product(x, apply(t, y)), inner_product(apply(t.adjoint(), x), y)) <= 1e-12);
}

TEST_CASE("module polar") {
  Rng rng(43);
  const MultiplierOperator unitaries{{random_unitary(3, rng), random_unitary(3, rng)}};
  const auto pu = module_polar(unitaries);
  for (const auto& m : pu.modulus_blocks) CHECK(dist(m, Matrix::Identity(3, 3)) <= 1e-10);

  const MultiplierOperator single{{diag({-3, 2})}};
  const auto ps = module_polar(single);
  CHECK(dist(ps.unitary_blocks[0], diag({-1, 1})) <= 1e-12);
  CHECK(dist(ps.modulus_blocks[0], diag({3, 2})) <= 1e-12);

  const MultiplierOperator t = random_multiplier(4, 3, rng);
  const auto pt = module_polar(t);
  for (std::size_t n = 0; n < 4; ++n) {
    CHECK(dist(t.blocks[n], Matrix(pt.unitary_blocks[n] * pt.modulus_blocks[n])) <= 1e-10);
    CHECK(is_unitary(pt.unitary_blocks[n], 1e-10));
  }
}

TEST_CASE("transformed Gram matrices") {
  Rng rng(44);
  const ModuleElement x = random_element(3, 2, rng);
  const MultiplierOperator t = random_multiplier(3, 2, rng);
  const auto one = [](double) { return 1.0; };
  CHECK(dist(transformed_gram(x, t, one, Side::right), inner_product(x, x)) <= 1e-13);
  const auto root = [](double s) { return std::sqrt(s); };
  CHECK(dist(transformed_gram(x, MultiplierOperator::identity(2, 3), root, Side::left),
             inner_product(x, x)) <= 1e-13);

  // h(t) = t on the right side gives <Tx, Tx>
  const auto lin = [](double s) { return s; };
  const Matrix tx = inner_product(apply(t, x), apply(t, x));
  CHECK(dist(transformed_gram(x, t, lin, Side::right), tx) <= 1e-12);
  // and on the left side <T* x, T* x>
  const Matrix tsx = inner_product(apply(t.adjoint(), x), apply(t.adjoint(), x));
  CHECK(dist(transformed_gram(x, t, lin, Side::left), tsx) <= 1e-12);

  const auto broken = [](double s) { return -1.0 - s; };
  CHECK_THROWS_AS(transformed_gram(x, t, broken, Side::right), DomainError);
}

TEST_CASE("quadrature helpers") {
  const auto nodes = midpoint_nodes<double>(4);
  REQUIRE(nodes.size() == 4);
  CHECK(nodes[0] == doctest::Approx(0.125));
  CHECK(nodes[3] == doctest::Approx(0.875));
  CHECK_THROWS_AS(midpoint_nodes<double>(0), DimensionError);

  const MatrixPolynomial line{{diag({1, 0}), diag({0, 2})}};
  CHECK(dist(line.at(0.5), diag({1, 1})) <= 1e-15);
  const auto x = quadrature_element(line, 2);
  CHECK(x.weights[0] == doctest::Approx(0.5));
  CHECK(dist(x.blocks[1], diag({1, 1.5})) <= 1e-15);
  // the midpoint rule integrates linear families exactly
  const auto one = MultiplierOperator::identity(2, 8);
  const auto x8 = quadrature_element(line, 8);
  Matrix integral = Matrix::Zero(2, 2);
  for (std::size_t n = 0; n < 8; ++n) integral += x8.weights[n] * apply(one, x8).blocks[n];
  CHECK(dist(integral, diag({1, 1})) <= 1e-14);
}
