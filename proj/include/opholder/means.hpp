#ifndef OPHOLDER_MEANS_HPP
#define OPHOLDER_MEANS_HPP

// Geometric and weighted geometric means of PSD matrices.
//
// Invertible first argument: A^{1/2} (A^{-1/2} B A^{-1/2})^theta A^{1/2}.
// Otherwise the mean is the limit of (A + eps I) #_theta B as eps -> 0,
// evaluated in closed form. With S = A + B the congruence by S^{-1/2}
// turns (A, B) into the commuting pair (A', I - A') on ran S, where the
// mean is A'^{1-theta} (I - A')^theta. Every step is continuous in eps, so
// eps = 0 can be substituted directly. The eps schedule is still walked to
// report how the regularized means approach that value.

#include <cmath>
#include <sstream>

#include "opholder/linalg.hpp"

namespace opholder {

template <typename Real>
struct MeanResult {
  CMatrix<Real> value;
  Real epsilon_used = 0;     // 0 when the direct formula applied
  Real convergence_gap = 0;  // |F(eps_last) - F(eps_prev)|_op on the schedule
};

inline constexpr double kInvertibilityThreshold = 1e-8;
inline constexpr double kPsdInputTolerance = 1e-10;
inline constexpr int kEpsilonSteps = 13;  // k = 0..12
inline constexpr double kEpsilonStopGap = 1e-8;

/// eps_k = 1e-4 * 4^{-k} * (1 + |A|_op).
template <typename Real>
Real epsilon_schedule(int k, Real norm_a) {
  return Real(1e-4) * std::pow(Real(4), Real(-k)) * (Real(1) + norm_a);
}

namespace detail {

template <typename Real>
void require_psd_input(const CMatrix<Real>& m, const char* op,
                       const char* name) {
  require_square(m, op);
  require_finite(m, op);
  const auto check = is_psd(m, Real(kPsdInputTolerance));
  if (!check.psd) {
    std::ostringstream os;
    os.precision(17);
    os << op << ": argument " << name
       << " is not PSD (min eigenvalue " << check.min_eigenvalue << ")";
    throw DomainError(os.str(), static_cast<double>(check.min_eigenvalue));
  }
}

// Rounding in A^{-1/2} B A^{-1/2} is about eps |B| / lambda_min(A). Inner
// eigenvalues below that bound are taken as zero; t^theta would otherwise
// turn noise of 1e-17 into errors of 1e-4 for small theta.
template <typename Real>
CMatrix<Real> direct_mean(const CMatrix<Real>& a, const CMatrix<Real>& b,
                          Real theta, Real lambda_min_a) {
  const Index n = a.rows();
  const CMatrix<Real> a_half = psd_power(a, Real(0.5));
  const CMatrix<Real> a_neg_half = psd_power(a, Real(-0.5));
  const CMatrix<Real> inner = hermitian_part(a_neg_half * b * a_neg_half);
  const Real zero = Real(8 * n) * std::numeric_limits<Real>::epsilon() *
                    op_norm(b) / lambda_min_a;
  const CMatrix<Real> inner_pow = spectral_fn(inner, [&](Real t) {
    if (t <= zero) return Real(theta == Real(0) ? 1 : 0);
    return theta == Real(0.5) ? std::sqrt(t) : std::pow(t, theta);
  });
  return hermitian_part(a_half * inner_pow * a_half);
}

// Closed-form mean through the congruence with (A + B)^{-1/2}.
template <typename Real>
CMatrix<Real> congruence_mean(const CMatrix<Real>& a, const CMatrix<Real>& b,
                              Real theta) {
  const Index n = a.rows();
  const auto es = herm_eig(CMatrix<Real>(a + b));
  const Real top = std::max(es.eigenvalues(n - 1), Real(0));
  const Real floor = Real(n) * std::numeric_limits<Real>::epsilon() * top;
  RVector<Real> half(n), inv_half(n);
  for (Index i = 0; i < n; ++i) {
    const Real lambda = es.eigenvalues(i);
    if (lambda > floor && lambda > 0) {
      half(i) = std::sqrt(lambda);
      inv_half(i) = Real(1) / half(i);
    } else {
      half(i) = inv_half(i) = 0;
    }
  }
  const CMatrix<Real>& q = es.unitary;
  const CMatrix<Real> s_half =
      q * half.template cast<std::complex<Real>>().asDiagonal() * q.adjoint();
  const CMatrix<Real> s_inv_half =
      q * inv_half.template cast<std::complex<Real>>().asDiagonal() *
      q.adjoint();
  // Rounding in A' is about eps times the condition number of S on its
  // range; eigenvalues that close to 0 or 1 are taken as exactly 0 or 1.
  Real bottom = top;
  for (Index i = 0; i < n; ++i) {
    if (half(i) > 0) bottom = std::min(bottom, es.eigenvalues(i));
  }
  const Real zero = bottom > 0 ? Real(8 * n) * std::numeric_limits<Real>::epsilon() *
                                     top / bottom
                               : Real(0);
  const auto ea = herm_eig(CMatrix<Real>(s_inv_half * a * s_inv_half));
  RVector<Real> mu(n);
  for (Index i = 0; i < n; ++i) {
    Real x = std::clamp(ea.eigenvalues(i), Real(0), Real(1));
    if (x <= zero) x = 0;
    if (Real(1) - x <= zero) x = 1;
    mu(i) = std::pow(x, Real(1) - theta) * std::pow(Real(1) - x, theta);
  }
  // s_half vanishes off ran S, so whatever mu gives there drops out.
  const CMatrix<Real> core =
      ea.unitary * mu.template cast<std::complex<Real>>().asDiagonal() *
      ea.unitary.adjoint();
  return hermitian_part(s_half * core * s_half);
}

template <typename Real>
MeanResult<Real> mean_impl(const CMatrix<Real>& a, const CMatrix<Real>& b,
                           Real theta, const char* op) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionError(std::string(op) + ": arguments differ in shape");
  }
  require_psd_input(a, op, "A");
  require_psd_input(b, op, "B");

  const auto ea = herm_eig(a);
  const Index n = a.rows();
  const Real norm_a =
      std::max(std::abs(ea.eigenvalues(0)), std::abs(ea.eigenvalues(n - 1)));
  MeanResult<Real> out;
  if (ea.eigenvalues(0) > Real(kInvertibilityThreshold) * norm_a) {
    out.value = direct_mean(a, b, theta, ea.eigenvalues(0));
    return out;
  }

  out.value = congruence_mean(a, b, theta);
  const CMatrix<Real> id = CMatrix<Real>::Identity(n, n);
  CMatrix<Real> prev;
  for (int k = 0; k < kEpsilonSteps; ++k) {
    const Real eps = epsilon_schedule(k, norm_a);
    CMatrix<Real> cur = congruence_mean(CMatrix<Real>(a + eps * id), b, theta);
    out.epsilon_used = eps;
    if (k > 0) {
      out.convergence_gap = op_norm(CMatrix<Real>(cur - prev));
      if (out.convergence_gap <= Real(kEpsilonStopGap)) break;
    }
    prev = std::move(cur);
  }
  return out;
}

}  // namespace detail

/// A #_theta B for PSD A, B and theta in [0, 1].
template <typename DerivedA, typename DerivedB>
MeanResult<RealOf<DerivedA>> weighted_geometric_mean(
    const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b,
    RealOf<DerivedA> theta) {
  using Real = RealOf<DerivedA>;
  if (!(theta >= Real(0) && theta <= Real(1))) {
    std::ostringstream os;
    os << "weighted_geometric_mean: theta " << theta << " outside [0, 1]";
    throw DomainError(os.str(), static_cast<double>(theta));
  }
  return detail::mean_impl<Real>(a.template cast<std::complex<Real>>(),
                                 b.template cast<std::complex<Real>>(), theta,
                                 "weighted_geometric_mean");
}

/// A # B = A #_{1/2} B.
template <typename DerivedA, typename DerivedB>
MeanResult<RealOf<DerivedA>> geometric_mean(
    const Eigen::MatrixBase<DerivedA>& a,
    const Eigen::MatrixBase<DerivedB>& b) {
  using Real = RealOf<DerivedA>;
  return detail::mean_impl<Real>(a.template cast<std::complex<Real>>(),
                                 b.template cast<std::complex<Real>>(),
                                 Real(0.5), "geometric_mean");
}

/// The 2d x 2d block matrix [A X; X* B].
template <typename DerivedA, typename DerivedB, typename DerivedX>
CMatrix<RealOf<DerivedA>> block_matrix(const Eigen::MatrixBase<DerivedA>& a,
                                       const Eigen::MatrixBase<DerivedB>& b,
                                       const Eigen::MatrixBase<DerivedX>& x) {
  using Real = RealOf<DerivedA>;
  const Index d = a.rows();
  if (a.cols() != d || b.rows() != d || b.cols() != d || x.rows() != d ||
      x.cols() != d) {
    throw DimensionError("block_matrix: A, B, X must share one square shape");
  }
  CMatrix<Real> block(2 * d, 2 * d);
  block.topLeftCorner(d, d) = a.template cast<std::complex<Real>>();
  block.topRightCorner(d, d) = x.template cast<std::complex<Real>>();
  block.bottomLeftCorner(d, d) =
      x.template cast<std::complex<Real>>().adjoint();
  block.bottomRightCorner(d, d) = b.template cast<std::complex<Real>>();
  return block;
}

/// is_psd of [A X; X* B], with the min eigenvalue as witness.
template <typename DerivedA, typename DerivedB, typename DerivedX>
PsdCheck<RealOf<DerivedA>> block_psd_certificate(
    const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b,
    const Eigen::MatrixBase<DerivedX>& x,
    RealOf<DerivedA> tol = RealOf<DerivedA>(1e-8)) {
  return is_psd(block_matrix(a, b, x), tol);
}

}  // namespace opholder

#endif  // OPHOLDER_MEANS_HPP
