#include "opholder/verifiers.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numeric>
#include <sstream>

#include "opholder/errors.hpp"
#include "opholder/json_io.hpp"
#include "opholder/means.hpp"

namespace opholder {

double default_tolerance() {
  if (const char* env = std::getenv("OPHOLDER_TOL")) {
    char* end = nullptr;
    const double v = std::strtod(env, &end);
    if (end != env && *end == '\0' && v > 0 && std::isfinite(v)) return v;
  }
  return kDefaultTolerance;
}

HolderExponents HolderExponents::conjugate(double p, double r) {
  return {p, p / (p - 1), r};
}

void HolderExponents::validate(const char* op) const {
  if (!(p > 1) || !(q > 1) || !std::isfinite(p) || !std::isfinite(q)) {
    throw PreconditionError(std::string(op) + ": need p, q > 1");
  }
  if (std::abs(1 / p + 1 / q - 1) > kConjugateTolerance) {
    std::ostringstream os;
    os.precision(17);
    os << op << ": 1/p + 1/q = " << 1 / p + 1 / q << ", not 1";
    throw PreconditionError(os.str());
  }
  if (!(r > 0) || !std::isfinite(r)) {
    throw PreconditionError(std::string(op) + ": need r > 0");
  }
}

FunctionPair FunctionPair::power(double alpha) {
  if (!(alpha >= 0 && alpha <= 1)) {
    throw DomainError("FunctionPair::power: alpha outside [0, 1]", alpha);
  }
  const double beta = 1 - alpha;
  std::ostringstream name;
  name << "t^" << alpha << ", t^" << beta;
  return {[alpha](double t) { return std::pow(t, alpha); },
          [beta](double t) { return std::pow(t, beta); }, name.str()};
}

VerdictRecord scalar_verdict(std::string id, double lhs, double rhs,
                             double tau) {
  VerdictRecord r;
  r.inequality_id = std::move(id);
  r.lhs = lhs;
  r.rhs = rhs;
  r.gap = rhs - lhs;
  r.tolerance = tau * (1 + std::abs(rhs));
  r.pass = std::isfinite(r.gap) && r.gap >= -r.tolerance;
  return r;
}

VerdictRecord loewner_verdict(std::string id, const Matrix& lhs,
                              const Matrix& rhs, double tau) {
  VerdictRecord r;
  r.inequality_id = std::move(id);
  r.lhs = lhs;
  r.rhs = rhs;
  r.gap = min_eigenvalue(Matrix(rhs - lhs));
  r.tolerance = tau * (1 + op_norm(rhs));
  r.pass = std::isfinite(r.gap) && r.gap >= -r.tolerance;
  return r;
}

namespace {

// |||H^s||| for PSD H.
double norm_of_psd_power(const UINormSpec& norm, const Matrix& h, double s) {
  return evaluate_singular_values(norm, psd_power_spectrum(h, s));
}

// ||| |M|^s |||.
double norm_of_abs_power(const UINormSpec& norm, const Matrix& m, double s) {
  const Vector sv = svd(m).sigma;
  return evaluate_singular_values(norm, Vector(sv.array().pow(s)));
}

void require_psd(const Matrix& m, const char* op, const char* what) {
  const auto check = is_psd(m, kPsdInputTolerance);
  if (!check.psd) {
    std::ostringstream os;
    os.precision(17);
    os << op << ": " << what << " is not PSD (min eigenvalue "
       << check.min_eigenvalue << ")";
    throw DomainError(os.str(), check.min_eigenvalue);
  }
}

void require_same_shape(const std::vector<Matrix>& a, const std::size_t m,
                        const Index d, const char* op, const char* what) {
  if (a.size() != m) {
    throw DimensionError(std::string(op) + ": " + what + " has " +
                         std::to_string(a.size()) + " terms, expected " +
                         std::to_string(m));
  }
  for (const auto& block : a) {
    if (block.rows() != d || block.cols() != d) {
      throw DimensionError(std::string(op) + ": " + what +
                           " has a block of the wrong dimension");
    }
    detail::require_finite(block, op);
  }
}

// Validates a discrete instance and returns (m, d).
std::pair<std::size_t, Index> check_sequences(const std::vector<double>* weights,
                                              const std::vector<Matrix>& a,
                                              const std::vector<Matrix>& b,
                                              const std::vector<Matrix>* x,
                                              const char* op) {
  if (a.empty()) throw DimensionError(std::string(op) + ": empty sequence");
  const std::size_t m = a.size();
  const Index d = a.front().rows();
  require_same_shape(a, m, d, op, "A");
  require_same_shape(b, m, d, op, "B");
  if (x) require_same_shape(*x, m, d, op, "X");
  if (weights) {
    if (weights->size() != m) {
      throw DimensionError(std::string(op) + ": weights length mismatch");
    }
    for (double g : *weights) {
      if (!(g > 0) || !std::isfinite(g)) {
        throw InvalidInputError(std::string(op) + ": weights must be positive");
      }
    }
  }
  return {m, d};
}

void require_unit_mass(const std::vector<double>& weights, const char* op) {
  const double total = std::accumulate(weights.begin(), weights.end(), 0.0);
  if (std::abs(total - 1) > kConjugateTolerance) {
    std::ostringstream os;
    os.precision(17);
    os << op << ": weights must sum to 1, got " << total;
    throw PreconditionError(os.str());
  }
}

double sup_op_norm(const std::vector<Matrix>& x) {
  double s = 0;
  for (const auto& b : x) s = std::max(s, op_norm(b));
  return s;
}

Json exponent_params(const HolderExponents& e, bool with_r) {
  Json j{{"p", e.p}, {"q", e.q}, {"one_over_p_plus_one_over_q", 1 / e.p + 1 / e.q}};
  if (with_r) j["r"] = e.r;
  return j;
}

void add_shape(Json& params, std::size_t m, Index d) {
  params["m"] = m;
  params["d"] = d;
}

void validate_pair_on(const FunctionPair& fg, const Vector& spectrum,
                      const char* op) {
  for (Index i = 0; i < spectrum.size(); ++i) {
    const double t = spectrum(i);
    const double defect = std::abs(fg.f(t) * fg.g(t) - t);
    if (!(defect <= kFunctionPairTolerance)) {
      std::ostringstream os;
      os.precision(17);
      os << op << ": f(t) g(t) differs from t by " << defect << " at t = " << t;
      throw PreconditionError(os.str());
    }
  }
}

struct WeightedCsParts {
  Matrix inner;      // <x, T y>
  Matrix left_gram;  // <x, f(|T*|)^2 x>
  Matrix right_gram; // <y, g(|T|)^2 y>
};

WeightedCsParts weighted_cs_parts(const ModuleElement& x,
                                  const ModuleElement& y,
                                  const MultiplierOperator& t,
                                  const FunctionPair& fg, const char* op) {
  detail::require_compatible(x, y, op);
  detail::require_compatible(t, x, op);
  for (const auto& block : t.blocks) validate_pair_on(fg, svd(block).sigma, op);
  WeightedCsParts parts;
  parts.inner = inner_product(x, apply(t, y));
  parts.left_gram = transformed_gram(x, t, fg.f, Side::left);
  parts.right_gram = transformed_gram(y, t, fg.g, Side::right);
  return parts;
}

// |P| and u* X u # Y with P = u |P|.
std::pair<Matrix, Matrix> sharp_sides(const Matrix& inner, const Matrix& left,
                                      const Matrix& right) {
  const auto pd = opholder::polar(inner);
  const Matrix& u = pd.unitary_factor;
  const Matrix rotated = hermitian_part(u.adjoint() * left * u);
  return {pd.modulus, geometric_mean(rotated, right).value};
}

Matrix weighted_sum(const std::vector<double>& weights,
                    const std::vector<Matrix>& terms) {
  Matrix sum = Matrix::Zero(terms.front().rows(), terms.front().cols());
  for (std::size_t n = 0; n < terms.size(); ++n) sum += weights[n] * terms[n];
  return sum;
}

Matrix sandwich_sum(const std::vector<double>& weights,
                    const std::vector<Matrix>& a, const std::vector<Matrix>& x,
                    const std::vector<Matrix>& b) {
  Matrix sum = Matrix::Zero(a.front().rows(), a.front().cols());
  for (std::size_t n = 0; n < a.size(); ++n) {
    sum += weights[n] * (a[n].adjoint() * x[n] * b[n]);
  }
  return sum;
}

std::vector<Matrix> abs_powers(const std::vector<Matrix>& a, double s) {
  std::vector<Matrix> out;
  out.reserve(a.size());
  for (const auto& block : a) out.push_back(abs_power(block, s));
  return out;
}

void require_commuting_normal(const std::vector<Matrix>& family, const char* op,
                              const char* what) {
  const double defect = commutation_defect(family);
  if (!(defect <= kCommutationTolerance)) {
    std::ostringstream os;
    os.precision(6);
    os << op << ": family " << what
       << " is not commuting normal (defect " << defect << ")";
    throw PreconditionError(os.str());
  }
}

}  // namespace

double commutation_defect(const std::vector<Matrix>& family) {
  double worst = 0;
  for (std::size_t i = 0; i < family.size(); ++i) {
    const Matrix& ai = family[i];
    const double ni = op_norm(ai);
    worst = std::max(worst, op_norm(Matrix(ai * ai.adjoint() - ai.adjoint() * ai)) /
                                (1 + ni * ni));
    for (std::size_t j = i + 1; j < family.size(); ++j) {
      const Matrix& aj = family[j];
      worst = std::max(worst, op_norm(Matrix(ai * aj - aj * ai)) /
                                  (1 + ni * op_norm(aj)));
    }
  }
  return worst;
}

VerdictRecord verify_cs_sharp(const ModuleElement& x, const ModuleElement& y,
                              double tau) {
  detail::require_compatible(x, y, "verify_cs_sharp");
  const Matrix inner = inner_product(x, y);
  const auto [lhs, rhs] = sharp_sides(inner, hermitian_part(inner_product(x, x)),
                                      hermitian_part(inner_product(y, y)));
  auto record = loewner_verdict("cs_sharp", lhs, rhs, tau);
  add_shape(record.params, x.size(), x.dim());
  record.params["polar_extension"] = "unitary extension";
  return record;
}

VerdictRecord verify_weighted_cs(const ModuleElement& x,
                                 const ModuleElement& y,
                                 const MultiplierOperator& t,
                                 const FunctionPair& fg, double tau) {
  const auto parts = weighted_cs_parts(x, y, t, fg, "verify_weighted_cs");
  const auto [lhs, rhs] = sharp_sides(parts.inner, parts.left_gram, parts.right_gram);
  auto record = loewner_verdict("weighted_cs", lhs, rhs, tau);
  add_shape(record.params, x.size(), x.dim());
  record.params["functions"] = fg.name;
  record.params["polar_extension"] = "unitary extension";
  return record;
}

VerdictRecord verify_weighted_cs(const ModuleElement& x,
                                 const ModuleElement& y,
                                 const MultiplierOperator& t, double alpha,
                                 double tau) {
  auto record = verify_weighted_cs(x, y, t, FunctionPair::power(alpha), tau);
  record.params["alpha"] = alpha;
  record.params["beta"] = 1 - alpha;
  return record;
}

VerdictRecord verify_horn_mathias(const Matrix& a, const Matrix& b,
                                  const Matrix& x, const HolderExponents& e,
                                  const UINormSpec& norm, double tau) {
  constexpr const char* op = "verify_horn_mathias";
  e.validate(op);
  validate(norm, a.rows());
  require_psd(a, op, "A");
  require_psd(b, op, "B");
  const auto cert = block_psd_certificate(a, b, x, kDefaultTolerance);
  if (!cert.psd) {
    std::ostringstream os;
    os.precision(17);
    os << op << ": [A X; X* B] is not PSD (min eigenvalue "
       << cert.min_eigenvalue << ")";
    throw PreconditionError(os.str());
  }
  const double lhs = norm_of_abs_power(norm, x, e.r);
  const double rhs = std::pow(norm_of_psd_power(norm, a, e.p * e.r / 2), 1 / e.p) *
                     std::pow(norm_of_psd_power(norm, b, e.q * e.r / 2), 1 / e.q);
  auto record = scalar_verdict("horn_mathias", lhs, rhs, tau);
  record.params = exponent_params(e, true);
  record.params["d"] = a.rows();
  record.params["norm"] = to_json(norm);
  record.params["block_witness"] = cert.min_eigenvalue;
  return record;
}

Matrix block_conjugation_matrix(const ModuleElement& x, const ModuleElement& y,
                                const MultiplierOperator& t,
                                const FunctionPair& fg) {
  const auto parts = weighted_cs_parts(x, y, t, fg, "block_conjugation_matrix");
  return block_matrix(parts.left_gram, parts.right_gram, parts.inner);
}

VerdictRecord verify_main(const ModuleElement& x, const ModuleElement& y,
                          const MultiplierOperator& t, const FunctionPair& fg,
                          const HolderExponents& e, const UINormSpec& norm,
                          double tau) {
  constexpr const char* op = "verify_main";
  e.validate(op);
  const auto parts = weighted_cs_parts(x, y, t, fg, op);
  validate(norm, x.dim());
  const double lhs = norm_of_abs_power(norm, parts.inner, e.r);
  const double rhs =
      std::pow(norm_of_psd_power(norm, parts.left_gram, e.p * e.r / 2), 1 / e.p) *
      std::pow(norm_of_psd_power(norm, parts.right_gram, e.q * e.r / 2), 1 / e.q);
  auto record = scalar_verdict("main", lhs, rhs, tau);
  record.params = exponent_params(e, true);
  add_shape(record.params, x.size(), x.dim());
  record.params["norm"] = to_json(norm);
  record.params["functions"] = fg.name;
  record.params["block_conjugation_witness"] = min_eigenvalue(
      block_matrix(parts.left_gram, parts.right_gram, parts.inner));
  return record;
}

VerdictRecord verify_main(const ModuleElement& x, const ModuleElement& y,
                          const MultiplierOperator& t, double alpha,
                          const HolderExponents& e, const UINormSpec& norm,
                          double tau) {
  auto record = verify_main(x, y, t, FunctionPair::power(alpha), e, norm, tau);
  record.params["alpha"] = alpha;
  record.params["beta"] = 1 - alpha;
  return record;
}

VerdictRecord verify_discrete_i(const std::vector<double>& weights,
                                const std::vector<Matrix>& a,
                                const std::vector<Matrix>& b,
                                const std::vector<Matrix>& x, double alpha,
                                const HolderExponents& e,
                                const UINormSpec& norm, double tau) {
  check_sequences(&weights, a, b, &x, "verify_discrete_i");
  const ModuleElement xe{weights, a};
  const ModuleElement ye{weights, b};
  const MultiplierOperator t{x};
  auto record = verify_main(xe, ye, t, alpha, e, norm, tau);
  record.inequality_id = "discrete_i";
  return record;
}

VerdictRecord verify_discrete_ii(const std::vector<double>& weights,
                                 const std::vector<Matrix>& a,
                                 const std::vector<Matrix>& b,
                                 const std::vector<Matrix>& x,
                                 const HolderExponents& e,
                                 const UINormSpec& norm, double tau) {
  constexpr const char* op = "verify_discrete_ii";
  e.validate(op);
  const auto [m, d] = check_sequences(&weights, a, b, &x, op);
  require_unit_mass(weights, op);
  if (!(e.r >= 2)) throw PreconditionError(std::string(op) + ": need r >= 2");
  validate(norm, d);
  const Matrix s = sandwich_sum(weights, a, x, b);
  const double sup = sup_op_norm(x);
  const double lhs = norm_of_abs_power(norm, s, e.r);
  const double rhs =
      std::pow(evaluate(norm, weighted_sum(weights, abs_powers(a, e.p * e.r))), 1 / e.p) *
      std::pow(evaluate(norm, weighted_sum(weights, abs_powers(b, e.q * e.r))), 1 / e.q) *
      std::pow(sup, e.r);
  auto record = scalar_verdict("discrete_ii", lhs, rhs, tau);
  record.params = exponent_params(e, true);
  add_shape(record.params, m, d);
  record.params["norm"] = to_json(norm);
  record.params["sup_norm_x"] = sup;
  return record;
}

VerdictRecord verify_discrete_ii_q(const std::vector<double>& weights,
                                   const std::vector<Matrix>& a,
                                   const std::vector<Matrix>& b,
                                   const std::vector<Matrix>& x,
                                   const HolderExponents& e,
                                   const UINormSpec& norm, double tau) {
  constexpr const char* op = "verify_discrete_ii_q";
  e.validate(op);
  const auto [m, d] = check_sequences(&weights, a, b, &x, op);
  require_unit_mass(weights, op);
  if (!is_q_norm(norm)) {
    throw PreconditionError(std::string(op) + ": " + to_string(norm) +
                            " is not a Q-norm");
  }
  validate(norm, d);
  const double sup = sup_op_norm(x);
  const double lhs = evaluate(norm, sandwich_sum(weights, a, x, b));
  const double rhs =
      std::pow(evaluate(norm, weighted_sum(weights, abs_powers(a, e.p))), 1 / e.p) *
      std::pow(evaluate(norm, weighted_sum(weights, abs_powers(b, e.q))), 1 / e.q) * sup;
  auto record = scalar_verdict("discrete_ii_q", lhs, rhs, tau);
  record.params = exponent_params(e, false);
  add_shape(record.params, m, d);
  record.params["norm"] = to_json(norm);
  record.params["sup_norm_x"] = sup;
  return record;
}

VerdictRecord verify_discrete_iii(const std::vector<double>& weights,
                                  const std::vector<Matrix>& a,
                                  const std::vector<Matrix>& b,
                                  const std::vector<Matrix>& x,
                                  const HolderExponents& e,
                                  const UINormSpec& norm, double tau) {
  constexpr const char* op = "verify_discrete_iii";
  e.validate(op);
  if (!(e.p >= 2)) throw PreconditionError(std::string(op) + ": need p >= 2");
  const auto [m, d] = check_sequences(&weights, a, b, &x, op);
  require_unit_mass(weights, op);
  validate(norm, d);
  std::vector<double> b_weights(weights.size());
  std::transform(weights.begin(), weights.end(), b_weights.begin(),
                 [&](double g) { return std::pow(g, e.q / 2); });
  const double sup = sup_op_norm(x);
  const double lhs = evaluate(norm, sandwich_sum(weights, a, x, b));
  const double rhs =
      std::pow(evaluate(norm, weighted_sum(weights, abs_powers(a, e.p))), 1 / e.p) *
      std::pow(evaluate(norm, weighted_sum(b_weights, abs_powers(b, e.q))), 1 / e.q) * sup;
  auto record = scalar_verdict("discrete_iii", lhs, rhs, tau);
  record.params = exponent_params(e, false);
  add_shape(record.params, m, d);
  record.params["norm"] = to_json(norm);
  record.params["sup_norm_x"] = sup;
  return record;
}

VerdictRecord verify_discrete_iii_finite(const std::vector<Matrix>& a,
                                         const std::vector<Matrix>& b,
                                         const std::vector<Matrix>& x,
                                         const HolderExponents& e,
                                         const UINormSpec& norm, double tau) {
  constexpr const char* op = "verify_discrete_iii_finite";
  e.validate(op);
  if (!(e.p >= 2)) throw PreconditionError(std::string(op) + ": need p >= 2");
  const auto [m, d] = check_sequences(nullptr, a, b, &x, op);
  validate(norm, d);
  const std::vector<double> ones(m, 1.0);
  const double constant = std::pow(static_cast<double>(m), std::abs(0.5 - 1 / e.p));
  const double sup = sup_op_norm(x);
  const double lhs = evaluate(norm, sandwich_sum(ones, a, x, b));
  const double base =
      std::pow(evaluate(norm, weighted_sum(ones, abs_powers(a, e.p))), 1 / e.p) *
      std::pow(evaluate(norm, weighted_sum(ones, abs_powers(b, e.q))), 1 / e.q) * sup;
  auto record = scalar_verdict("discrete_iii_finite", lhs, constant * base, tau);
  record.params = exponent_params(e, false);
  add_shape(record.params, m, d);
  record.params["norm"] = to_json(norm);
  record.params["constant"] = constant;
  record.params["sharpness_ratio"] = base > 0 ? lhs / base : 0.0;
  return record;
}

VerdictRecord verify_discrete_iv(const std::vector<double>& weights,
                                 const std::vector<Matrix>& a,
                                 const std::vector<Matrix>& b, const Matrix& x,
                                 const HolderExponents& e,
                                 const UINormSpec& norm, double tau) {
  constexpr const char* op = "verify_discrete_iv";
  e.validate(op);
  const auto [m, d] = check_sequences(&weights, a, b, nullptr, op);
  if (x.rows() != d || x.cols() != d) throw DimensionError(std::string(op) + ": X has the wrong shape");
  if (!is_q_norm(norm)) {
    throw PreconditionError(std::string(op) + ": " + to_string(norm) +
                            " is not a Q-norm");
  }
  validate(norm, d);
  require_commuting_normal(a, op, "A");
  require_commuting_normal(b, op, "B");
  const std::vector<Matrix> xs(m, x);
  const double lhs = evaluate(norm, sandwich_sum(weights, a, xs, b));
  const Matrix left = psd_power(weighted_sum(weights, abs_powers(a, e.p)), 1 / e.p);
  const Matrix right = psd_power(weighted_sum(weights, abs_powers(b, e.q)), 1 / e.q);
  const double rhs = evaluate(norm, Matrix(left * x * right));
  auto record = scalar_verdict("discrete_iv", lhs, rhs, tau);
  record.params = exponent_params(e, false);
  add_shape(record.params, m, d);
  record.params["norm"] = to_json(norm);
  return record;
}

VerdictRecord verify_discrete_v(const std::vector<Matrix>& a,
                                const std::vector<Matrix>& b, const Matrix& x,
                                const HolderExponents& e,
                                const UINormSpec& norm, double tau) {
  constexpr const char* op = "verify_discrete_v";
  e.validate(op);
  const auto [m, d] = check_sequences(nullptr, a, b, nullptr, op);
  if (x.rows() != d || x.cols() != d) throw DimensionError(std::string(op) + ": X has the wrong shape");
  validate(norm, d);
  require_commuting_normal(a, op, "A");
  require_commuting_normal(b, op, "B");
  const std::vector<double> ones(m, 1.0);
  const std::vector<Matrix> xs(m, x);
  const double constant = std::pow(static_cast<double>(m), std::abs(0.5 - 1 / e.p));
  const double lhs = evaluate(norm, sandwich_sum(ones, a, xs, b));
  const Matrix left = psd_power(weighted_sum(ones, abs_powers(a, e.p)), 1 / e.p);
  const Matrix right = psd_power(weighted_sum(ones, abs_powers(b, e.q)), 1 / e.q);
  const double base = evaluate(norm, Matrix(left * x * right));
  auto record = scalar_verdict("discrete_v", lhs, constant * base, tau);
  record.params = exponent_params(e, false);
  add_shape(record.params, m, d);
  record.params["norm"] = to_json(norm);
  record.params["constant"] = constant;
  record.params["sharpness_ratio"] = base > 0 ? lhs / base : 0.0;
  return record;
}

VerdictRecord verify_continuous(const ContinuousFamilies& families,
                                std::size_t nodes, ContinuousVariant variant,
                                const ContinuousParams& params, double tau) {
  const auto a = quadrature_multiplier(families.a, nodes).blocks;
  const auto b = quadrature_multiplier(families.b, nodes).blocks;
  const std::vector<double> weights(nodes, 1.0 / static_cast<double>(nodes));
  VerdictRecord record;
  std::string name;
  switch (variant) {
    case ContinuousVariant::i: {
      const auto x = quadrature_multiplier(families.x, nodes).blocks;
      record = verify_discrete_i(weights, a, b, x, params.alpha,
                                 params.exponents, params.norm, tau);
      name = "continuous_i";
      break;
    }
    case ContinuousVariant::ii: {
      const auto x = quadrature_multiplier(families.x, nodes).blocks;
      record = verify_discrete_ii(weights, a, b, x, params.exponents,
                                  params.norm, tau);
      name = "continuous_ii";
      break;
    }
    case ContinuousVariant::iii: {
      if (families.x.coefficients.size() != 1) {
        throw PreconditionError(
            "verify_continuous: variant iii needs a constant X");
      }
      record = verify_discrete_iv(weights, a, b, families.x.coefficients.front(),
                                  params.exponents, params.norm, tau);
      name = "continuous_iii";
      break;
    }
  }
  record.inequality_id = name + "[m=" + std::to_string(nodes) + "]";
  record.params["nodes"] = nodes;
  return record;
}

VerdictRecord verify_jensen(JensenBranch branch, double s,
                            const std::vector<double>& weights,
                            const std::vector<Matrix>& blocks,
                            const UINormSpec& norm, double tau) {
  constexpr const char* op = "verify_jensen";
  const auto [m, d] = check_sequences(&weights, blocks, blocks, nullptr, op);
  for (const auto& block : blocks) require_psd(block, op, "a block");
  validate(norm, d);
  if (branch == JensenBranch::convex) {
    if (!(s >= 1) || !std::isfinite(s)) {
      throw DomainError("verify_jensen: convex branch needs s >= 1", s);
    }
    require_unit_mass(weights, op);
  } else if (!(s > 0 && s <= 1)) {
    throw DomainError("verify_jensen: concave branch needs 0 < s <= 1", s);
  }
  const Matrix total = hermitian_part(weighted_sum(weights, blocks));
  const double lhs = norm_of_psd_power(norm, total, s);
  Matrix power_sum = Matrix::Zero(d, d);
  for (std::size_t n = 0; n < m; ++n) {
    const double coeff = branch == JensenBranch::convex ? weights[n] : std::pow(weights[n], s);
    power_sum += coeff * psd_power(blocks[n], s);
  }
  const double rhs = evaluate(norm, hermitian_part(power_sum));
  auto record = scalar_verdict(
      branch == JensenBranch::convex ? "jensen_convex" : "jensen_concave", lhs,
      rhs, tau);
  add_shape(record.params, m, d);
  record.params["s"] = s;
  record.params["norm"] = to_json(norm);
  return record;
}

VerdictRecord verify_seo_ordering(const ModuleElement& x,
                                  const MultiplierOperator& a,
                                  const MultiplierOperator& b, double p,
                                  double tau) {
  constexpr const char* op = "verify_seo_ordering";
  const auto e = HolderExponents::conjugate(p);
  e.validate(op);
  detail::require_compatible(a, x, op);
  detail::require_compatible(b, x, op);
  const double theta = 1 / e.p;
  MultiplierOperator a_pow, b_pow, mean_op;
  for (std::size_t n = 0; n < x.size(); ++n) {
    require_psd(a.blocks[n], op, "A block");
    require_psd(b.blocks[n], op, "B block");
    a_pow.blocks.push_back(psd_power(a.blocks[n], e.p));
    b_pow.blocks.push_back(psd_power(b.blocks[n], e.q));
    mean_op.blocks.push_back(
        weighted_geometric_mean(b_pow.blocks[n], a_pow.blocks[n], theta).value);
  }
  const Matrix lhs = hermitian_part(inner_product(x, apply(mean_op, x)));
  const Matrix rhs =
      weighted_geometric_mean(hermitian_part(inner_product(x, apply(b_pow, x))),
                              hermitian_part(inner_product(x, apply(a_pow, x))), theta)
          .value;
  auto record = loewner_verdict("seo_ordering", lhs, rhs, tau);
  record.params = exponent_params(e, false);
  add_shape(record.params, x.size(), x.dim());
  record.params["theta"] = theta;
  return record;
}

VerdictRecord verify_superadditivity(const std::vector<double>& weights,
                                     const std::vector<Matrix>& a,
                                     const std::vector<Matrix>& b, double p,
                                     double tau) {
  constexpr const char* op = "verify_superadditivity";
  const auto e = HolderExponents::conjugate(p);
  e.validate(op);
  const auto [m, d] = check_sequences(&weights, a, b, nullptr, op);
  const double theta = 1 / e.p;
  std::vector<Matrix> a_pow, b_pow;
  Matrix lhs = Matrix::Zero(d, d);
  for (std::size_t n = 0; n < m; ++n) {
    require_psd(a[n], op, "A block");
    require_psd(b[n], op, "B block");
    a_pow.push_back(psd_power(a[n], e.p));
    b_pow.push_back(psd_power(b[n], e.q));
    lhs += weights[n] * weighted_geometric_mean(b_pow.back(), a_pow.back(), theta).value;
  }
  const Matrix rhs = weighted_geometric_mean(hermitian_part(weighted_sum(weights, b_pow)),
                                             hermitian_part(weighted_sum(weights, a_pow)),
                                             theta)
                         .value;
  auto record = loewner_verdict("superadditivity", hermitian_part(lhs), rhs, tau);
  record.params = exponent_params(e, false);
  add_shape(record.params, m, d);
  record.params["theta"] = theta;
  return record;
}

VerdictRecord verify_superadditivity_quadrature(const MatrixPolynomial& ga,
                                                const MatrixPolynomial& gb,
                                                std::size_t nodes, double p,
                                                double tau) {
  std::vector<Matrix> a, b;
  for (double t : midpoint_nodes<double>(nodes)) {
    const Matrix at = ga.at(t);
    const Matrix bt = gb.at(t);
    a.push_back(hermitian_part(at.adjoint() * at));
    b.push_back(hermitian_part(bt.adjoint() * bt));
  }
  const std::vector<double> weights(nodes, 1.0 / static_cast<double>(nodes));
  auto record = verify_superadditivity(weights, a, b, p, tau);
  record.inequality_id = "superadditivity_quadrature[m=" + std::to_string(nodes) + "]";
  record.params["nodes"] = nodes;
  return record;
}

}  // namespace opholder
