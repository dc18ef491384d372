#include <cmath>
#include <cstdlib>

#include "doctest.h"
#include "opholder/errors.hpp"
#include "opholder/means.hpp"
#include "opholder/random.hpp"
#include "opholder/verifiers.hpp"
#include "scalar_oracles.hpp"
#include "test_support.hpp"

using namespace opholder;
using opholder::test::diag;
using opholder::test::scalar;

namespace {

ModuleElement random_element(std::size_t m, Index d, Rng& rng) {
  ModuleElement x;
  for (std::size_t n = 0; n < m; ++n) {
    x.weights.push_back(rng.uniform(0.1, 1));
    x.blocks.push_back(random_matrix(d, rng));
  }
  return x;
}

std::vector<Matrix> blocks(std::size_t m, Index d, Rng& rng) {
  std::vector<Matrix> out;
  for (std::size_t n = 0; n < m; ++n) out.push_back(random_matrix(d, rng));
  return out;
}

std::vector<double> unit_weights(std::size_t m) { return std::vector<double>(m, 1.0 / m); }

double rhs_of(const VerdictRecord& r) { return std::get<double>(r.rhs); }
double lhs_of(const VerdictRecord& r) { return std::get<double>(r.lhs); }

}  // namespace

TEST_CASE("tolerance policy") {
  const auto ok = scalar_verdict("t", 1.0, 1.0 - 1e-9, 1e-8);
  CHECK(ok.pass);
  CHECK(ok.tolerance == doctest::Approx(1e-8 * (2 - 1e-9)));
  CHECK_FALSE(scalar_verdict("t", 1.0, 0.9, 1e-8).pass);
  CHECK_FALSE(scalar_verdict("t", NAN, 1.0, 1e-8).pass);
  const auto lw = loewner_verdict("t", diag({1, 0}), diag({1, 1}), 1e-8);
  CHECK(lw.pass);
  CHECK(lw.gap == doctest::Approx(0).epsilon(1e-14));
  CHECK_FALSE(loewner_verdict("t", diag({1, 2}), diag({1, 1}), 1e-8).pass);
}

TEST_CASE("default tolerance honours OPHOLDER_TOL") {
  CHECK(default_tolerance() == kDefaultTolerance);
  setenv("OPHOLDER_TOL", "1e-6", 1);
  CHECK(default_tolerance() == 1e-6);
  setenv("OPHOLDER_TOL", "garbage", 1);
  CHECK(default_tolerance() == kDefaultTolerance);
  unsetenv("OPHOLDER_TOL");
}

TEST_CASE("exponents") {
  const auto e = HolderExponents::conjugate(3);
  CHECK(e.q == doctest::Approx(1.5));
  CHECK_NOTHROW(e.validate("t"));
  CHECK_THROWS_AS(HolderExponents::conjugate(1).validate("t"), PreconditionError);
  HolderExponents bad{2, 3, 1};
  CHECK_THROWS_AS(bad.validate("t"), PreconditionError);
  CHECK_THROWS_AS(HolderExponents::conjugate(2, 0).validate("t"), PreconditionError);
}

TEST_CASE("cs_sharp") {
  Rng rng(51);
  const auto x = random_element(3, 3, rng);
  const auto same = verify_cs_sharp(x, x);
  CHECK(std::abs(same.gap) <= 1e-9 * (1 + op_norm(std::get<Matrix>(same.rhs))));
  CHECK(same.params["polar_extension"] == "unitary extension");

  auto y = random_element(3, 3, rng);
  y.weights = x.weights;
  const auto v = verify_cs_sharp(x, y);
  CHECK(v.pass);
  CHECK(v.inequality_id == "cs_sharp");

  // scalar reduction
  const ModuleElement a{{0.5, 2}, {scalar(1), scalar(-2)}};
  const ModuleElement b{{0.5, 2}, {scalar(3), scalar(1)}};
  const double want = std::sqrt(0.5 * 1 + 2 * 4) * std::sqrt(0.5 * 9 + 2 * 1) - std::abs(0.5 * 3 - 2 * 2);
  CHECK(verify_cs_sharp(a, b).gap == doctest::Approx(want));

  const ModuleElement other{{1}, {Matrix::Identity(3, 3)}};
  CHECK_THROWS_AS(verify_cs_sharp(x, other), DimensionError);
}

TEST_CASE("weighted_cs") {
  Rng rng(52);
  const auto x = random_element(3, 2, rng);
  auto y = random_element(3, 2, rng);
  y.weights = x.weights;
  const auto id = MultiplierOperator::identity(2, 3);
  CHECK(verify_weighted_cs(x, y, id, 0.5).gap ==
        doctest::Approx(verify_cs_sharp(x, y).gap).epsilon(1e-12));

  MultiplierOperator t{blocks(3, 2, rng)};
  t.blocks[1] = random_matrix_of_rank(2, 1, rng);
  const auto v = verify_weighted_cs(x, y, t, 0.3);
  CHECK(v.pass);
  CHECK(v.params["alpha"] == 0.3);

  FunctionPair broken{[](double s) { return s; }, [](double s) { return s; }, "t,t"};
  CHECK_THROWS_AS(verify_weighted_cs(x, y, t, broken), PreconditionError);
}

TEST_CASE("horn_mathias") {
  const Matrix id = Matrix::Identity(2, 2);
  for (const auto& norm : {UINormSpec::schatten(1), UINormSpec::kyfan(2), UINormSpec::schatten(3)}) {
    const auto v = verify_horn_mathias(id, id, id, HolderExponents::conjugate(2, 2), norm);
    CHECK(std::abs(v.gap) <= 1e-12);
  }
  // 1x1: |x|^r <= a^{r/2} b^{r/2}
  const auto s = verify_horn_mathias(scalar(4), scalar(9), scalar(3), HolderExponents::conjugate(3, 1),
                                     UINormSpec::schatten(1));
  CHECK(lhs_of(s) == doctest::Approx(3));
  CHECK(rhs_of(s) == doctest::Approx(6));

  // contraction construction X = A^{1/2} K B^{1/2}
  Rng rng(53);
  for (int k = 0; k < 20; ++k) {
    const Matrix a = random_psd(3, rng), b = random_psd(3, rng);
    Matrix kk = random_matrix(3, rng);
    kk /= op_norm(kk);
    const Matrix x = psd_power(a, 0.5) * kk * psd_power(b, 0.5);
    CHECK(verify_horn_mathias(a, b, x, HolderExponents::conjugate(3, 1), UINormSpec::schatten(1)).pass);
  }
  CHECK_THROWS_AS(verify_horn_mathias(id, id, Matrix(2 * id), HolderExponents::conjugate(2),
                                      UINormSpec::schatten(1)),
                  PreconditionError);
  CHECK_THROWS_AS(verify_horn_mathias(id, id, id, HolderExponents::conjugate(2),
                                      UINormSpec::kyfan(3)),
                  DomainError);
}

TEST_CASE("main and discrete_i") {
  // d = 1, X = 1, r = 1, p = q = 2, a = b = (3, 4), unit weights: 25 <= 25
  const std::vector<Matrix> ab{scalar(3), scalar(4)};
  const std::vector<Matrix> ones{scalar(1), scalar(1)};
  const auto v = verify_discrete_i({1, 1}, ab, ab, ones, 0.5, HolderExponents::conjugate(2),
                                   UINormSpec::schatten(1));
  CHECK(lhs_of(v) == doctest::Approx(25));
  CHECK(rhs_of(v) == doctest::Approx(25));
  CHECK(v.inequality_id == "discrete_i");

  Rng rng(54);
  const auto x = random_element(3, 2, rng);
  const auto id = MultiplierOperator::identity(2, 3);
  const auto eq = verify_main(x, x, id, 0.5, HolderExponents::conjugate(2, 2), UINormSpec::schatten(2));
  CHECK(std::abs(eq.gap) <= 1e-9 * (1 + rhs_of(eq)));

  auto y = random_element(3, 2, rng);
  y.weights = x.weights;
  const MultiplierOperator t{blocks(3, 2, rng)};
  const auto r = verify_main(x, y, t, 0.25, HolderExponents::conjugate(3, 2), UINormSpec::kyfan(1));
  CHECK(r.pass);
  CHECK(r.params["block_conjugation_witness"].get<double>() >= -1e-10);
  const Matrix block = block_conjugation_matrix(x, y, t, FunctionPair::power(0.25));
  CHECK(block.rows() == 4);
  CHECK(is_psd(block, 1e-10).psd);
}

TEST_CASE("discrete_ii and ii_q") {
  const std::vector<Matrix> id{Matrix::Identity(2, 2)};
  const auto single = verify_discrete_ii({1}, id, id, id, HolderExponents::conjugate(2, 2),
                                         UINormSpec::schatten(2));
  CHECK(std::abs(single.gap) <= 1e-12);

  Rng rng(55);
  const auto a = blocks(4, 2, rng), b = blocks(4, 2, rng), x = blocks(4, 2, rng);
  CHECK(verify_discrete_ii(unit_weights(4), a, b, x, HolderExponents::conjugate(3, 2),
                           UINormSpec::schatten(1))
            .pass);
  CHECK_THROWS_AS(verify_discrete_ii(unit_weights(4), a, b, x, HolderExponents::conjugate(3, 1),
                                     UINormSpec::schatten(1)),
                  PreconditionError);
  CHECK_THROWS_AS(verify_discrete_ii({0.5, 0.1, 0.1, 0.1}, a, b, x,
                                     HolderExponents::conjugate(3, 2), UINormSpec::schatten(1)),
                  PreconditionError);

  CHECK(verify_discrete_ii_q(unit_weights(4), a, b, x, HolderExponents::conjugate(1.5),
                             UINormSpec::qnorm(UINormSpec::schatten(1)))
            .pass);
  CHECK_THROWS_AS(verify_discrete_ii_q(unit_weights(4), a, b, x, HolderExponents::conjugate(2),
                                       UINormSpec::schatten(1)),
                  PreconditionError);
}

TEST_CASE("discrete_iii and finite form") {
  const std::vector<Matrix> id{Matrix::Identity(2, 2)};
  const auto one = verify_discrete_iii({1}, id, id, id, HolderExponents::conjugate(2),
                                       UINormSpec::schatten(1));
  CHECK(std::abs(one.gap) <= 1e-12);
  Rng rng(56);
  const auto a = blocks(3, 2, rng), b = blocks(3, 2, rng), x = blocks(3, 2, rng);
  const auto fin = verify_discrete_iii_finite(a, b, x, HolderExponents::conjugate(4),
                                              UINormSpec::schatten(2));
  CHECK(fin.pass);
  CHECK(fin.params["constant"].get<double>() == doctest::Approx(std::pow(3.0, 0.25)));
  CHECK(fin.params.contains("sharpness_ratio"));
  CHECK_THROWS_AS(verify_discrete_iii(unit_weights(3), a, b, x, HolderExponents::conjugate(1.5),
                                      UINormSpec::schatten(1)),
                  PreconditionError);
  CHECK_THROWS_AS(verify_discrete_iii_finite(a, b, x, HolderExponents::conjugate(1.5),
                                             UINormSpec::schatten(1)),
                  PreconditionError);
}

TEST_CASE("discrete_iv and v") {
  Rng rng(57);
  const Matrix x = random_matrix(3, rng);
  const std::vector<Matrix> ids(4, Matrix::Identity(3, 3));
  const std::vector<double> w{0.2, 0.4, 0.6, 0.8};
  const auto eq = verify_discrete_iv(w, ids, ids, x, HolderExponents::conjugate(3),
                                     UINormSpec::schatten(2));
  CHECK(lhs_of(eq) == doctest::Approx(2.0 * evaluate(UINormSpec::schatten(2), x)));
  CHECK(std::abs(eq.gap) <= 1e-12);

  const auto fa = random_commuting_normal_family(3, 4, rng);
  const auto fb = random_commuting_normal_family(3, 4, rng);
  CHECK(verify_discrete_iv(w, fa, fb, x, HolderExponents::conjugate(3),
                           UINormSpec::qnorm(UINormSpec::schatten(1)))
            .pass);
  const auto v5 = verify_discrete_v(fa, fb, x, HolderExponents::conjugate(1.5), UINormSpec::schatten(1));
  CHECK(v5.pass);
  CHECK(v5.params["constant"].get<double>() == doctest::Approx(std::pow(4.0, 1.0 / 6)));
  CHECK(verify_discrete_v({fa[0]}, {fb[0]}, x, HolderExponents::conjugate(3), UINormSpec::kyfan(2))
            .params["constant"] == 1.0);
  CHECK(verify_discrete_v(fa, fb, x, HolderExponents::conjugate(2), UINormSpec::kyfan(2))
            .params["constant"] == 1.0);

  const auto loose = blocks(4, 3, rng);
  CHECK_THROWS_AS(verify_discrete_iv(w, loose, fb, x, HolderExponents::conjugate(3),
                                     UINormSpec::schatten(2)),
                  PreconditionError);
  CHECK_THROWS_AS(verify_discrete_iv(w, fa, fb, x, HolderExponents::conjugate(3),
                                     UINormSpec::schatten(1)),
                  PreconditionError);
  CHECK(commutation_defect(fa) <= 1e-10);
  CHECK(commutation_defect(loose) > 1e-3);
}

TEST_CASE("continuous forms") {
  Rng rng(58);
  const Matrix a = random_matrix(2, rng);
  const Matrix id = Matrix::Identity(2, 2);
  ContinuousParams params;
  params.exponents = HolderExponents::conjugate(2);
  params.norm = UINormSpec::schatten(1);
  // constant families reduce to one block with weight 1
  const auto c = verify_continuous({{{a}}, {{a}}, {{id}}}, 5, ContinuousVariant::i, params);
  const auto d = verify_discrete_i({1.0}, {a}, {a}, {id}, 0.5, params.exponents, params.norm);
  CHECK(c.gap == doctest::Approx(d.gap).epsilon(1e-12));
  CHECK(c.inequality_id == "continuous_i[m=5]");
  CHECK(c.params["nodes"] == 5);

  // linear family at 8 and 16 nodes
  const MatrixPolynomial line{{random_matrix(2, rng), random_matrix(2, rng)}};
  const MatrixPolynomial other{{random_matrix(2, rng), random_matrix(2, rng)}};
  for (std::size_t m : {8u, 16u}) {
    CHECK(verify_continuous({line, other, line}, m, ContinuousVariant::i, params).pass);
    params.exponents = HolderExponents::conjugate(3, 2);
    CHECK(verify_continuous({line, other, line}, m, ContinuousVariant::ii, params).pass);
    params.exponents = HolderExponents::conjugate(2);
  }
  params.norm = UINormSpec::schatten(2);
  const auto fam = random_commuting_normal_family(2, 4, rng);
  const auto iii = verify_continuous({{{fam[0], fam[1]}}, {{fam[2], fam[3]}}, {{a}}}, 8,
                                     ContinuousVariant::iii, params);
  CHECK(iii.pass);
  CHECK_THROWS_AS(verify_continuous({line, other, line}, 4, ContinuousVariant::iii, params),
                  PreconditionError);
}

TEST_CASE("jensen") {
  Rng rng(59);
  std::vector<Matrix> fam;
  for (int n = 0; n < 4; ++n) fam.push_back(random_psd(3, rng));
  const auto w = unit_weights(4);
  for (auto branch : {JensenBranch::convex, JensenBranch::concave}) {
    CHECK(std::abs(verify_jensen(branch, 1, w, fam, UINormSpec::schatten(1)).gap) <= 1e-12);
  }
  const auto constant = verify_jensen(JensenBranch::convex, 2, w, std::vector<Matrix>(4, fam[0]),
                                      UINormSpec::schatten(2));
  CHECK(std::abs(constant.gap) <= 1e-12);
  CHECK(verify_jensen(JensenBranch::convex, 2, w, fam, UINormSpec::kyfan(2)).pass);
  CHECK(verify_jensen(JensenBranch::concave, 0.5, {0.3, 1.2, 2, 0.7}, fam, UINormSpec::kyfan(2)).pass);
  CHECK_THROWS_AS(verify_jensen(JensenBranch::convex, 0.5, w, fam, UINormSpec::kyfan(1)), DomainError);
  CHECK_THROWS_AS(verify_jensen(JensenBranch::concave, 2, w, fam, UINormSpec::kyfan(1)), DomainError);
  fam[0] = diag({1, -1, 0});
  CHECK_THROWS_AS(verify_jensen(JensenBranch::convex, 2, w, fam, UINormSpec::kyfan(1)), DomainError);
}

TEST_CASE("seo ordering and superadditivity") {
  Rng rng(60);
  const Matrix id = Matrix::Identity(2, 2);
  const Matrix a = random_psd(2, rng), b = random_psd(2, rng);
  const auto single = verify_seo_ordering({{1.0}, {id}}, {{a}}, {{b}}, 2);
  CHECK(std::abs(single.gap) <= 1e-12);
  CHECK(single.params["theta"] == 0.5);

  ModuleElement x = {{0.3, 0.5, 0.9}, blocks(3, 2, rng)};
  MultiplierOperator as, bs;
  for (int n = 0; n < 3; ++n) {
    as.blocks.push_back(random_psd(2, rng));
    bs.blocks.push_back(random_psd(2, rng));
  }
  CHECK(verify_seo_ordering(x, as, bs, 2).pass);

  // p = q = 2, scalars: sum w a b <= (sum w b^2)^{1/2} (sum w a^2)^{1/2}
  const auto cs = verify_superadditivity({1, 1}, {scalar(1), scalar(2)}, {scalar(3), scalar(1)}, 2);
  CHECK(std::get<Matrix>(cs.lhs)(0, 0).real() == doctest::Approx(5));
  CHECK(std::get<Matrix>(cs.rhs)(0, 0).real() == doctest::Approx(std::sqrt(10.0 * 5.0)));

  CHECK(std::abs(verify_superadditivity({1}, {a}, {b}, 3).gap) <= 1e-12);
  std::vector<Matrix> a4, b4;
  for (int n = 0; n < 4; ++n) {
    a4.push_back(random_psd(3, rng));
    b4.push_back(random_psd(3, rng));
  }
  CHECK(verify_superadditivity(unit_weights(4), a4, b4, 3).pass);
  const auto quad = verify_superadditivity_quadrature({{random_matrix(2, rng), random_matrix(2, rng)}},
                                                      {{random_matrix(2, rng)}}, 6, 1.5);
  CHECK(quad.pass);
  CHECK(quad.inequality_id == "superadditivity_quadrature[m=6]");
  CHECK_THROWS_AS(verify_superadditivity({1}, {diag({1, -1})}, {b}, 2), DomainError);
}

TEST_CASE("scalar oracles agree on a sample of every verifier") {
  for (const auto& id : all_inequality_ids()) {
    test::ScalarSampler sampler(99);
    for (int k = 0; k < 50; ++k) {
      const auto c = test::compare_scalar(id, sampler);
      CHECK(std::abs(static_cast<test::LD>(c.library_gap) - c.oracle_gap) <= 1e-12L);
    }
  }
}

TEST_CASE("long double verifier primitives") {
  // the templated layer instantiates at extended precision
  Rng rng(61);
  const Matrix a = random_psd(3, rng);
  const Matrix b = random_psd(3, rng);
  const auto al = a.cast<std::complex<long double>>();
  const auto bl = b.cast<std::complex<long double>>();
  const auto g = geometric_mean(al, bl).value;
  const auto cert = block_psd_certificate(al, bl, g, 1e-12L);
  CHECK(cert.psd);
  CHECK(evaluate(UINormSpec::schatten(3), g) ==
        doctest::Approx(static_cast<long double>(evaluate(UINormSpec::schatten(3),
                                                          geometric_mean(a, b).value))));
}
