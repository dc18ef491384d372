#ifndef OPHOLDER_UINORMS_HPP
#define OPHOLDER_UINORMS_HPP

// Unitarily invariant norms as functions of singular values: Schatten-p,
// Ky Fan-k and Q-norms |||A||| = ||A*A||^{1/2} over a base norm.

#include <memory>
#include <sstream>
#include <string>
#include <variant>

#include "opholder/linalg.hpp"

namespace opholder {

struct UINormSpec;

struct Schatten {
  double p = 2;
};
struct KyFan {
  int k = 1;
};
struct QNorm {
  std::shared_ptr<const UINormSpec> base;
};

struct UINormSpec {
  std::variant<Schatten, KyFan, QNorm> kind;

  static UINormSpec schatten(double p) { return {Schatten{p}}; }
  static UINormSpec kyfan(int k) { return {KyFan{k}}; }
  static UINormSpec qnorm(UINormSpec base) {
    return {QNorm{std::make_shared<const UINormSpec>(std::move(base))}};
  }
  static UINormSpec operator_norm() { return kyfan(1); }
};

inline bool operator==(const UINormSpec& a, const UINormSpec& b) {
  if (a.kind.index() != b.kind.index()) return false;
  if (const auto* s = std::get_if<Schatten>(&a.kind)) {
    return s->p == std::get<Schatten>(b.kind).p;
  }
  if (const auto* k = std::get_if<KyFan>(&a.kind)) {
    return k->k == std::get<KyFan>(b.kind).k;
  }
  return *std::get<QNorm>(a.kind).base == *std::get<QNorm>(b.kind).base;
}

inline constexpr int kMaxQNormDepth = 2;

inline int nesting_depth(const UINormSpec& spec) {
  if (const auto* q = std::get_if<QNorm>(&spec.kind)) {
    return 1 + nesting_depth(*q->base);
  }
  return 0;
}

inline std::string to_string(const UINormSpec& spec) {
  std::ostringstream os;
  if (const auto* s = std::get_if<Schatten>(&spec.kind)) {
    os << "schatten(" << s->p << ")";
  } else if (const auto* k = std::get_if<KyFan>(&spec.kind)) {
    os << "kyfan(" << k->k << ")";
  } else {
    os << "qnorm(" << to_string(*std::get<QNorm>(spec.kind).base) << ")";
  }
  return os.str();
}

/// Throws DomainError if the spec is not a norm on d x d matrices.
inline void validate(const UINormSpec& spec, Index d) {
  if (const auto* s = std::get_if<Schatten>(&spec.kind)) {
    if (!(s->p >= 1) || !std::isfinite(s->p)) {
      throw DomainError("Schatten exponent must be a finite p >= 1, got " +
                            std::to_string(s->p),
                        s->p);
    }
  } else if (const auto* k = std::get_if<KyFan>(&spec.kind)) {
    if (k->k < 1 || k->k > d) {
      throw DomainError("Ky Fan index k=" + std::to_string(k->k) +
                            " outside 1.." + std::to_string(d),
                        k->k);
    }
  } else {
    const auto& q = std::get<QNorm>(spec.kind);
    if (!q.base) throw InvalidInputError("QNorm without a base norm");
    if (nesting_depth(spec) > kMaxQNormDepth) {
      throw DomainError("QNorm nesting deeper than 2");
    }
    validate(*q.base, d);
  }
}

/// The norm as a symmetric gauge function of descending singular values.
template <typename Real>
Real evaluate_singular_values(const UINormSpec& spec,
                              const RVector<Real>& sigma) {
  validate(spec, sigma.size());
  if (const auto* s = std::get_if<Schatten>(&spec.kind)) {
    const Real top = sigma.size() > 0 ? sigma.maxCoeff() : Real(0);
    if (top == Real(0)) return 0;
    const Real p = static_cast<Real>(s->p);
    Real sum = 0;
    for (Index i = 0; i < sigma.size(); ++i) sum += std::pow(sigma(i) / top, p);
    return top * std::pow(sum, Real(1) / p);
  }
  if (const auto* k = std::get_if<KyFan>(&spec.kind)) {
    return sigma.head(k->k).sum();
  }
  const RVector<Real> squared = sigma.cwiseAbs2();
  return std::sqrt(
      evaluate_singular_values(*std::get<QNorm>(spec.kind).base, squared));
}

/// |||M||| for the norm described by `spec`.
template <typename Derived>
RealOf<Derived> evaluate(const UINormSpec& spec,
                         const Eigen::MatrixBase<Derived>& m) {
  validate(spec, m.rows());
  return evaluate_singular_values(spec, svd(m).sigma);
}

/// Q-norms in the catalog: every QNorm(.) and Schatten p >= 2, since
/// Schatten(2p) = QNorm(Schatten(p)).
inline bool is_q_norm(const UINormSpec& spec) {
  if (std::holds_alternative<QNorm>(spec.kind)) return true;
  if (const auto* s = std::get_if<Schatten>(&spec.kind)) return s->p >= 2;
  return false;
}

}  // namespace opholder

#endif  // OPHOLDER_UINORMS_HPP
