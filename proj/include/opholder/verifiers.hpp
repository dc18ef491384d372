#ifndef OPHOLDER_VERIFIERS_HPP
#define OPHOLDER_VERIFIERS_HPP

// One verifier per Hölder-type inequality. Each assembles both sides from
// the library primitives and returns a signed gap.
//
// Tolerance policy, with tau the requested tolerance:
//   scalar  lhs <= rhs:  gap = rhs - lhs,          tolerance = tau (1 + rhs)
//   Loewner lhs <= rhs:  gap = min eig(rhs - lhs), tolerance = tau (1 + |rhs|_op)
// and pass <=> gap >= -tolerance in both cases.

#include <cstdint>
#include <functional>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"
#include "opholder/hilbert_module.hpp"
#include "opholder/linalg.hpp"
#include "opholder/uinorms.hpp"

namespace opholder {

using Json = nlohmann::json;

inline constexpr double kDefaultTolerance = 1e-8;
inline constexpr double kConjugateTolerance = 1e-12;
inline constexpr double kCommutationTolerance = 1e-10;
inline constexpr double kFunctionPairTolerance = 1e-10;

/// 1e-8 unless the OPHOLDER_TOL environment variable holds a positive number.
double default_tolerance();

/// p, q with 1/p + 1/q = 1 and a power r > 0.
struct HolderExponents {
  double p = 2;
  double q = 2;
  double r = 1;

  static HolderExponents conjugate(double p, double r = 1);
  void validate(const char* op) const;
};

/// Continuous f, g on [0, inf) with f(t) g(t) = t.
struct FunctionPair {
  std::function<double(double)> f;
  std::function<double(double)> g;
  std::string name;

  /// f(t) = t^alpha, g(t) = t^{1 - alpha}.
  static FunctionPair power(double alpha);
};

using SideValue = std::variant<double, Matrix>;

struct VerdictRecord {
  std::string inequality_id;
  SideValue lhs = 0.0;
  SideValue rhs = 0.0;
  double gap = 0;
  double tolerance = 0;
  bool pass = false;
  Json params = Json::object();
  std::uint64_t seed = 0;
};

VerdictRecord scalar_verdict(std::string id, double lhs, double rhs,
                             double tau);
VerdictRecord loewner_verdict(std::string id, const Matrix& lhs,
                              const Matrix& rhs, double tau);

/// |<x,y>| <= u* <x,x> u # <y,y>, with <x,y> = u |<x,y>|.
VerdictRecord verify_cs_sharp(const ModuleElement& x, const ModuleElement& y,
                              double tau = default_tolerance());

/// |<x,Ty>| <= u* <x, f(|T*|)^2 x> u # <y, g(|T|)^2 y>.
VerdictRecord verify_weighted_cs(const ModuleElement& x,
                                 const ModuleElement& y,
                                 const MultiplierOperator& t,
                                 const FunctionPair& fg,
                                 double tau = default_tolerance());
VerdictRecord verify_weighted_cs(const ModuleElement& x,
                                 const ModuleElement& y,
                                 const MultiplierOperator& t, double alpha,
                                 double tau = default_tolerance());

/// For [A X; X* B] >= 0:
/// |||  |X|^r ||| <= ||| A^{pr/2} |||^{1/p} ||| B^{qr/2} |||^{1/q}.
VerdictRecord verify_horn_mathias(const Matrix& a, const Matrix& b,
                                  const Matrix& x, const HolderExponents& e,
                                  const UINormSpec& norm,
                                  double tau = default_tolerance());

/// ||| |<x,Ty>|^r ||| <= ||| <x,f(|T*|)^2 x>^{pr/2} |||^{1/p}
///                       ||| <y,g(|T|)^2 y>^{qr/2} |||^{1/q}.
VerdictRecord verify_main(const ModuleElement& x, const ModuleElement& y,
                          const MultiplierOperator& t, const FunctionPair& fg,
                          const HolderExponents& e, const UINormSpec& norm,
                          double tau = default_tolerance());
VerdictRecord verify_main(const ModuleElement& x, const ModuleElement& y,
                          const MultiplierOperator& t, double alpha,
                          const HolderExponents& e, const UINormSpec& norm,
                          double tau = default_tolerance());

/// [<x,f(|T*|)^2 x>  <x,Ty>; <x,Ty>*  <y,g(|T|)^2 y>], PSD whenever the
/// weighted Cauchy-Schwarz inequality holds.
Matrix block_conjugation_matrix(const ModuleElement& x, const ModuleElement& y,
                                const MultiplierOperator& t,
                                const FunctionPair& fg);

/// verify_main on sequences packed into module elements.
VerdictRecord verify_discrete_i(const std::vector<double>& weights,
                                const std::vector<Matrix>& a,
                                const std::vector<Matrix>& b,
                                const std::vector<Matrix>& x, double alpha,
                                const HolderExponents& e,
                                const UINormSpec& norm,
                                double tau = default_tolerance());

/// Sum gamma = 1, r >= 2:
/// ||| |sum gamma A*XB|^r ||| <= ||| sum gamma |A|^{pr} |||^{1/p}
///     ||| sum gamma |B|^{qr} |||^{1/q} sup |X_n|^r.
VerdictRecord verify_discrete_ii(const std::vector<double>& weights,
                                 const std::vector<Matrix>& a,
                                 const std::vector<Matrix>& b,
                                 const std::vector<Matrix>& x,
                                 const HolderExponents& e,
                                 const UINormSpec& norm,
                                 double tau = default_tolerance());

/// Q-norm form: |sum gamma A*XB|_Q <= |sum gamma |A|^p|_Q^{1/p}
///     |sum gamma |B|^q|_Q^{1/q} sup |X_n|.
VerdictRecord verify_discrete_ii_q(const std::vector<double>& weights,
                                   const std::vector<Matrix>& a,
                                   const std::vector<Matrix>& b,
                                   const std::vector<Matrix>& x,
                                   const HolderExponents& e,
                                   const UINormSpec& norm,
                                   double tau = default_tolerance());

/// Sum gamma = 1, p >= 2:
/// ||| sum gamma A*XB ||| <= ||| sum gamma |A|^p |||^{1/p}
///     ||| sum gamma^{q/2} |B|^q |||^{1/q} sup |X_n|.
VerdictRecord verify_discrete_iii(const std::vector<double>& weights,
                                  const std::vector<Matrix>& a,
                                  const std::vector<Matrix>& b,
                                  const std::vector<Matrix>& x,
                                  const HolderExponents& e,
                                  const UINormSpec& norm,
                                  double tau = default_tolerance());

/// Unit weights over n = 1..m with the constant m^{|1/2 - 1/p|}.
VerdictRecord verify_discrete_iii_finite(const std::vector<Matrix>& a,
                                         const std::vector<Matrix>& b,
                                         const std::vector<Matrix>& x,
                                         const HolderExponents& e,
                                         const UINormSpec& norm,
                                         double tau = default_tolerance());

/// Commuting normal families, Q-norm:
/// |sum gamma A*XB|_Q <= |(sum gamma |A|^p)^{1/p} X (sum gamma |B|^q)^{1/q}|_Q.
VerdictRecord verify_discrete_iv(const std::vector<double>& weights,
                                 const std::vector<Matrix>& a,
                                 const std::vector<Matrix>& b, const Matrix& x,
                                 const HolderExponents& e,
                                 const UINormSpec& norm,
                                 double tau = default_tolerance());

/// Commuting normal families, any norm, unit weights over n = 1..m:
/// ||| sum A*XB ||| <= m^{|1/2-1/p|} ||| (sum |A|^p)^{1/p} X (sum |B|^q)^{1/q} |||.
VerdictRecord verify_discrete_v(const std::vector<Matrix>& a,
                                const std::vector<Matrix>& b, const Matrix& x,
                                const HolderExponents& e,
                                const UINormSpec& norm,
                                double tau = default_tolerance());

/// Largest |A_i A_j - A_j A_i| and |A_i A_i* - A_i* A_i| over a family,
/// relative to 1 + |A_i| |A_j|.
double commutation_defect(const std::vector<Matrix>& family);

enum class ContinuousVariant { i, ii, iii };

/// Families on [0, 1] given as matrix polynomials. For variant iii `x` must
/// be constant (a single coefficient).
struct ContinuousFamilies {
  MatrixPolynomial a;
  MatrixPolynomial b;
  MatrixPolynomial x;
};

struct ContinuousParams {
  double alpha = 0.5;
  HolderExponents exponents;
  UINormSpec norm = UINormSpec::schatten(2);
};

/// Midpoint-rule discretization with `nodes` points and weights 1/nodes,
/// then the matching discrete verifier (i -> discrete_i, ii -> discrete_ii,
/// iii -> discrete_iv).
VerdictRecord verify_continuous(const ContinuousFamilies& families,
                                std::size_t nodes, ContinuousVariant variant,
                                const ContinuousParams& params,
                                double tau = default_tolerance());

enum class JensenBranch { convex, concave };

/// convex (s >= 1, sum gamma = 1): ||| (sum gamma A)^s ||| <= ||| sum gamma A^s |||
/// concave (0 < s <= 1), with B_n = gamma_n A_n:
///                                 ||| (sum B)^s ||| <= ||| sum B^s |||
VerdictRecord verify_jensen(JensenBranch branch, double s,
                            const std::vector<double>& weights,
                            const std::vector<Matrix>& blocks,
                            const UINormSpec& norm,
                            double tau = default_tolerance());

/// <x, (B^q #_{1/p} A^p) x> <= <x, B^q x> #_{1/p} <x, A^p x>.
VerdictRecord verify_seo_ordering(const ModuleElement& x,
                                  const MultiplierOperator& a,
                                  const MultiplierOperator& b, double p,
                                  double tau = default_tolerance());

/// sum gamma B^q #_{1/p} A^p <= (sum gamma B^q) #_{1/p} (sum gamma A^p).
VerdictRecord verify_superadditivity(const std::vector<double>& weights,
                                     const std::vector<Matrix>& a,
                                     const std::vector<Matrix>& b, double p,
                                     double tau = default_tolerance());

/// Integral form for A_t = G_a(t)* G_a(t), B_t = G_b(t)* G_b(t) on [0, 1].
VerdictRecord verify_superadditivity_quadrature(const MatrixPolynomial& ga,
                                                const MatrixPolynomial& gb,
                                                std::size_t nodes, double p,
                                                double tau = default_tolerance());

}  // namespace opholder

#endif  // OPHOLDER_VERIFIERS_HPP
