#ifndef OPHOLDER_LINALG_HPP
#define OPHOLDER_LINALG_HPP

// Dense complex matrix substrate: Hermitian eigendecomposition (cyclic
// Jacobi), SVD (one-sided Jacobi), polar decomposition and spectral
// functional calculus. Everything is templated on the real scalar so the
// same code runs in double and long double.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "opholder/errors.hpp"

namespace opholder {

using Index = Eigen::Index;

template <typename Real>
using CMatrix =
    Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Real>
using RVector = Eigen::Matrix<Real, Eigen::Dynamic, 1>;

using Matrix = CMatrix<double>;
using Vector = RVector<double>;

template <typename Derived>
using RealOf = typename Eigen::NumTraits<typename Derived::Scalar>::Real;

template <typename Real>
struct EigenDecomposition {
  RVector<Real> eigenvalues;  // ascending
  CMatrix<Real> unitary;      // columns are eigenvectors
};

template <typename Real>
struct SingularValueDecomposition {
  CMatrix<Real> u;
  RVector<Real> sigma;  // descending, nonnegative
  CMatrix<Real> v;
};

template <typename Real>
struct PolarDecomposition {
  CMatrix<Real> unitary_factor;  // always a full unitary
  CMatrix<Real> modulus;         // |M| = (M*M)^{1/2}
};

template <typename Real>
struct PsdCheck {
  bool psd = false;
  Real min_eigenvalue = 0;
  explicit operator bool() const { return psd; }
};

inline constexpr int kMaxJacobiSweeps = 50;

// Off-diagonal stopping threshold relative to the Frobenius norm. 1e-14 in
// double, scaled by machine epsilon for other types.
template <typename Real>
constexpr Real jacobi_tolerance() {
  return Real(1e-14) * (std::numeric_limits<Real>::epsilon() /
                        Real(std::numeric_limits<double>::epsilon()));
}

namespace detail {

template <typename Derived>
void require_square(const Eigen::MatrixBase<Derived>& m, const char* op) {
  if (m.rows() != m.cols() || m.rows() == 0) {
    std::ostringstream os;
    os << op << ": expected a non-empty square matrix, got " << m.rows() << "x"
       << m.cols();
    throw DimensionError(os.str());
  }
}

template <typename Derived>
void require_finite(const Eigen::MatrixBase<Derived>& m, const char* op) {
  for (Index j = 0; j < m.cols(); ++j) {
    for (Index i = 0; i < m.rows(); ++i) {
      const auto z = std::complex<RealOf<Derived>>(m(i, j));
      if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
        throw InvalidInputError(std::string(op) + ": non-finite entry at (" +
                                std::to_string(i) + "," + std::to_string(j) +
                                ")");
      }
    }
  }
}

// Unitary J = [[c, s], [-s*phase, c*phase]] acting on columns (p, q) such
// that J* [[app, apq], [conj(apq), aqq]] J is diagonal.
template <typename Real>
struct JacobiRotation {
  Real c;
  Real s;
  std::complex<Real> phase;
};

template <typename Real>
JacobiRotation<Real> jacobi_rotation(Real app, Real aqq,
                                     std::complex<Real> apq) {
  const Real mag = std::abs(apq);
  const std::complex<Real> phase = std::conj(apq) / mag;
  const Real theta = (aqq - app) / (Real(2) * mag);
  Real t;
  if (std::abs(theta) > Real(1) / std::numeric_limits<Real>::epsilon()) {
    t = Real(1) / (Real(2) * theta);
  } else {
    t = (theta >= 0 ? Real(1) : Real(-1)) /
        (std::abs(theta) + std::hypot(theta, Real(1)));
  }
  const Real c = Real(1) / std::sqrt(t * t + Real(1));
  return {c, t * c, phase};
}

// M <- M J on columns p, q.
template <typename Real>
void rotate_columns(CMatrix<Real>& m, Index p, Index q,
                    const JacobiRotation<Real>& rot) {
  for (Index k = 0; k < m.rows(); ++k) {
    const std::complex<Real> mp = m(k, p);
    const std::complex<Real> mq = m(k, q);
    m(k, p) = rot.c * mp - rot.s * rot.phase * mq;
    m(k, q) = rot.s * mp + rot.c * rot.phase * mq;
  }
}

// M <- J* M on rows p, q.
template <typename Real>
void rotate_rows_adjoint(CMatrix<Real>& m, Index p, Index q,
                         const JacobiRotation<Real>& rot) {
  const std::complex<Real> cph = std::conj(rot.phase);
  for (Index k = 0; k < m.cols(); ++k) {
    const std::complex<Real> mp = m(p, k);
    const std::complex<Real> mq = m(q, k);
    m(p, k) = rot.c * mp - rot.s * cph * mq;
    m(q, k) = rot.s * mp + rot.c * cph * mq;
  }
}

template <typename Real>
Real off_diagonal_norm(const CMatrix<Real>& a) {
  Real sum = 0;
  for (Index j = 0; j < a.cols(); ++j) {
    for (Index i = 0; i < a.rows(); ++i) {
      if (i != j) sum += std::norm(a(i, j));
    }
  }
  return std::sqrt(sum);
}

// Fills the columns of `u` listed in `slots` with an orthonormal completion
// of the remaining columns (Gram-Schmidt over the standard basis, twice).
template <typename Real>
void complete_orthonormal(CMatrix<Real>& u, const std::vector<bool>& filled) {
  const Index n = u.rows();
  std::vector<bool> have = filled;
  for (Index slot = 0; slot < n; ++slot) {
    if (have[slot]) continue;
    Real best_norm = -1;
    CMatrix<Real> best;
    for (Index e = 0; e < n; ++e) {
      CMatrix<Real> cand = CMatrix<Real>::Zero(n, 1);
      cand(e, 0) = 1;
      for (int pass = 0; pass < 2; ++pass) {
        for (Index j = 0; j < n; ++j) {
          if (!have[j]) continue;
          const std::complex<Real> proj = (u.col(j).adjoint() * cand)(0, 0);
          cand -= proj * u.col(j);
        }
      }
      const Real nrm = cand.norm();
      if (nrm > best_norm) {
        best_norm = nrm;
        best = cand;
      }
    }
    u.col(slot) = best / best_norm;
    have[slot] = true;
  }
}

}  // namespace detail

/// (M + M*) / 2.
template <typename Derived>
CMatrix<RealOf<Derived>> hermitian_part(const Eigen::MatrixBase<Derived>& m) {
  using Real = RealOf<Derived>;
  const CMatrix<Real> a = m.template cast<std::complex<Real>>();
  CMatrix<Real> h = (a + a.adjoint()) * Real(0.5);
  return h;
}

/// Eigendecomposition of the Hermitian part of `h` by cyclic Jacobi.
/// Eigenvalues come back in ascending order.
template <typename Derived>
EigenDecomposition<RealOf<Derived>> herm_eig(
    const Eigen::MatrixBase<Derived>& h) {
  using Real = RealOf<Derived>;
  detail::require_square(h, "herm_eig");
  detail::require_finite(h, "herm_eig");

  CMatrix<Real> a = hermitian_part(h);
  const Index n = a.rows();
  CMatrix<Real> v = CMatrix<Real>::Identity(n, n);
  const Real target = jacobi_tolerance<Real>() * a.norm();

  for (int sweep = 0; sweep < kMaxJacobiSweeps; ++sweep) {
    if (detail::off_diagonal_norm(a) <= target) break;
    for (Index p = 0; p + 1 < n; ++p) {
      for (Index q = p + 1; q < n; ++q) {
        if (a(p, q) == std::complex<Real>(0)) continue;
        const auto rot = detail::jacobi_rotation(a(p, p).real(),
                                                 a(q, q).real(), a(p, q));
        detail::rotate_columns(a, p, q, rot);
        detail::rotate_rows_adjoint(a, p, q, rot);
        a(p, q) = a(q, p) = 0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();
        detail::rotate_columns(v, p, q, rot);
      }
    }
  }

  std::vector<Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Index{0});
  std::stable_sort(order.begin(), order.end(), [&](Index i, Index j) {
    return a(i, i).real() < a(j, j).real();
  });
  EigenDecomposition<Real> out{RVector<Real>(n), CMatrix<Real>(n, n)};
  for (Index k = 0; k < n; ++k) {
    out.eigenvalues(k) = a(order[k], order[k]).real();
    out.unitary.col(k) = v.col(order[k]);
  }
  return out;
}

/// Singular value decomposition M = U diag(sigma) V* by one-sided Jacobi
/// (Hestenes). Each 2x2 step diagonalizes the Gram block of two columns
/// with the same rotation herm_eig uses. Columns whose norm falls below the
/// rounding floor get sigma = 0 and a Gram-Schmidt completed left vector.
template <typename Derived>
SingularValueDecomposition<RealOf<Derived>> svd(
    const Eigen::MatrixBase<Derived>& m) {
  using Real = RealOf<Derived>;
  detail::require_square(m, "svd");
  detail::require_finite(m, "svd");

  CMatrix<Real> w = m.template cast<std::complex<Real>>();
  const Index n = w.rows();
  CMatrix<Real> v = CMatrix<Real>::Identity(n, n);
  const Real tol = jacobi_tolerance<Real>();

  // Power-of-two rescaling keeps squared column norms clear of underflow
  // and overflow without rounding the input.
  const Real largest = n > 0 ? w.cwiseAbs().maxCoeff() : Real(0);
  const int shift = largest > Real(0) ? std::ilogb(largest) : 0;
  if (shift != 0) w *= std::ldexp(Real(1), -shift);

  for (int sweep = 0; sweep < kMaxJacobiSweeps; ++sweep) {
    bool rotated = false;
    for (Index p = 0; p + 1 < n; ++p) {
      for (Index q = p + 1; q < n; ++q) {
        const Real alpha = w.col(p).squaredNorm();
        const Real beta = w.col(q).squaredNorm();
        const std::complex<Real> gamma = (w.col(p).adjoint() * w.col(q))(0, 0);
        if (gamma == std::complex<Real>(0) ||
            std::abs(gamma) <= tol * std::sqrt(alpha * beta)) {
          continue;
        }
        const auto rot = detail::jacobi_rotation(alpha, beta, gamma);
        detail::rotate_columns(w, p, q, rot);
        detail::rotate_columns(v, p, q, rot);
        rotated = true;
      }
    }
    if (!rotated) break;
  }

  RVector<Real> norms(n);
  for (Index j = 0; j < n; ++j) norms(j) = w.col(j).norm();
  std::vector<Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Index{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](Index i, Index j) { return norms(i) > norms(j); });

  const Real floor = Real(n) * std::numeric_limits<Real>::epsilon() *
                     (n > 0 ? norms(order[0]) : Real(0));
  SingularValueDecomposition<Real> out{CMatrix<Real>::Zero(n, n),
                                       RVector<Real>::Zero(n),
                                       CMatrix<Real>(n, n)};
  std::vector<bool> filled(static_cast<std::size_t>(n), false);
  for (Index k = 0; k < n; ++k) {
    const Index j = order[k];
    out.v.col(k) = v.col(j);
    if (norms(j) > floor && norms(j) > 0) {
      out.sigma(k) = std::ldexp(norms(j), shift);
      out.u.col(k) = w.col(j) / norms(j);
      filled[k] = true;
    }
  }
  detail::complete_orthonormal(out.u, filled);
  return out;
}

/// M = U |M| with U = U_svd V_svd* (a full unitary even for singular M) and
/// |M| = V diag(sigma) V*.
template <typename Derived>
PolarDecomposition<RealOf<Derived>> polar(const Eigen::MatrixBase<Derived>& m) {
  using Real = RealOf<Derived>;
  const auto d = svd(m);
  PolarDecomposition<Real> out;
  out.unitary_factor = d.u * d.v.adjoint();
  out.modulus = hermitian_part(d.v * d.sigma.template cast<std::complex<Real>>()
                                             .asDiagonal() *
                               d.v.adjoint());
  return out;
}

/// Largest singular value.
template <typename Derived>
RealOf<Derived> op_norm(const Eigen::MatrixBase<Derived>& m) {
  if (m.size() == 0) return 0;
  return svd(m).sigma(0);
}

/// Q diag(f(lambda_i)) Q* for Hermitian `h`. Throws DomainError when f is
/// not finite at some eigenvalue.
template <typename Derived, typename Fn>
CMatrix<RealOf<Derived>> spectral_fn(const Eigen::MatrixBase<Derived>& h,
                                     Fn&& f) {
  using Real = RealOf<Derived>;
  const auto e = herm_eig(h);
  RVector<Real> fv(e.eigenvalues.size());
  for (Index i = 0; i < fv.size(); ++i) {
    const Real lambda = e.eigenvalues(i);
    const Real value = static_cast<Real>(f(lambda));
    if (!std::isfinite(value)) {
      std::ostringstream os;
      os.precision(17);
      os << "spectral_fn: function undefined at eigenvalue " << lambda;
      throw DomainError(os.str(), static_cast<double>(lambda));
    }
    fv(i) = value;
  }
  return hermitian_part(e.unitary *
                        fv.template cast<std::complex<Real>>().asDiagonal() *
                        e.unitary.adjoint());
}

namespace detail {

// lambda^s for the ascending eigenvalues of a PSD matrix, under the rules
// documented at psd_power.
template <typename Real>
RVector<Real> psd_power_values(const RVector<Real>& eigenvalues, Real s,
                               Real tol) {
  const Index n = eigenvalues.size();
  const Real scale =
      std::max(std::abs(eigenvalues(0)), std::abs(eigenvalues(n - 1)));
  const Real floor = -tol * (Real(1) + scale);
  const Real zero = Real(4 * n) * std::numeric_limits<Real>::epsilon() * scale;
  RVector<Real> fv(n);
  for (Index i = 0; i < n; ++i) {
    Real lambda = eigenvalues(i);
    if (lambda < floor) {
      std::ostringstream os;
      os.precision(17);
      os << "psd_power: negative eigenvalue " << lambda;
      throw DomainError(os.str(), static_cast<double>(lambda));
    }
    if (lambda <= zero) lambda = 0;
    const Real value = std::pow(lambda, s);
    if (!std::isfinite(value)) {
      std::ostringstream os;
      os.precision(17);
      os << "psd_power: eigenvalue " << lambda << " has no power " << s;
      throw DomainError(os.str(), static_cast<double>(lambda));
    }
    fv(i) = value;
  }
  return fv;
}

}  // namespace detail

/// Real power of a PSD matrix. Eigenvalues in [-tol(1+|H|), 0) are rounding
/// noise and are treated as zero; anything more negative is a DomainError.
/// Eigenvalues up to 4 n eps |H| are zero as well: the eigensolver cannot
/// tell them from zero, and t^s with s < 1 would blow that noise up.
/// 0^0 is taken as 1, so s = 0 gives the identity.
template <typename Derived>
CMatrix<RealOf<Derived>> psd_power(const Eigen::MatrixBase<Derived>& h,
                                   RealOf<Derived> s,
                                   RealOf<Derived> tol = RealOf<Derived>(1e-10)) {
  using Real = RealOf<Derived>;
  const auto e = herm_eig(h);
  const RVector<Real> fv = detail::psd_power_values(e.eigenvalues, s, tol);
  return hermitian_part(e.unitary *
                        fv.template cast<std::complex<Real>>().asDiagonal() *
                        e.unitary.adjoint());
}

/// Eigenvalues of psd_power(h, s), descending when s >= 0. These are also
/// its singular values.
template <typename Derived>
RVector<RealOf<Derived>> psd_power_spectrum(
    const Eigen::MatrixBase<Derived>& h, RealOf<Derived> s,
    RealOf<Derived> tol = RealOf<Derived>(1e-10)) {
  using Real = RealOf<Derived>;
  const RVector<Real> fv = detail::psd_power_values(herm_eig(h).eigenvalues, s, tol);
  return fv.reverse();
}

/// |M|^s = V diag(sigma^s) V*, taken from the SVD rather than from M*M.
template <typename Derived>
CMatrix<RealOf<Derived>> abs_power(const Eigen::MatrixBase<Derived>& m,
                                   RealOf<Derived> s) {
  using Real = RealOf<Derived>;
  const auto d = svd(m);
  RVector<Real> fv = d.sigma.unaryExpr([s](Real x) { return std::pow(x, s); });
  return hermitian_part(d.v * fv.template cast<std::complex<Real>>().asDiagonal() *
                        d.v.adjoint());
}

template <typename Derived>
bool is_hermitian(const Eigen::MatrixBase<Derived>& m, RealOf<Derived> tol) {
  if (m.rows() != m.cols()) return false;
  return op_norm(m - m.adjoint()) <= tol * (1 + op_norm(m));
}

/// True iff the Hermitian part has min eigenvalue >= -tol(1 + |M|_op). A
/// matrix that is not Hermitian at the same tolerance is never PSD.
template <typename Derived>
PsdCheck<RealOf<Derived>> is_psd(const Eigen::MatrixBase<Derived>& m,
                                 RealOf<Derived> tol) {
  using Real = RealOf<Derived>;
  detail::require_square(m, "is_psd");
  detail::require_finite(m, "is_psd");
  const auto e = herm_eig(m);
  const Index n = e.eigenvalues.size();
  const Real lo = e.eigenvalues(0);
  const Real norm = std::max(std::abs(lo), std::abs(e.eigenvalues(n - 1)));
  const bool hermitian = is_hermitian(m, tol);
  return {hermitian && lo >= -tol * (Real(1) + norm), lo};
}

template <typename Derived>
bool is_unitary(const Eigen::MatrixBase<Derived>& m, RealOf<Derived> tol) {
  using Real = RealOf<Derived>;
  if (m.rows() != m.cols()) return false;
  const CMatrix<Real> a = m.template cast<std::complex<Real>>();
  return op_norm(CMatrix<Real>(a.adjoint() * a -
                               CMatrix<Real>::Identity(a.rows(), a.cols()))) <=
         tol;
}

template <typename Derived>
bool is_normal(const Eigen::MatrixBase<Derived>& m, RealOf<Derived> tol) {
  using Real = RealOf<Derived>;
  if (m.rows() != m.cols()) return false;
  const CMatrix<Real> a = m.template cast<std::complex<Real>>();
  const Real n = op_norm(a);
  return op_norm(CMatrix<Real>(a * a.adjoint() - a.adjoint() * a)) <=
         tol * (1 + n * n);
}

/// Min eigenvalue of the Hermitian part.
template <typename Derived>
RealOf<Derived> min_eigenvalue(const Eigen::MatrixBase<Derived>& m) {
  return herm_eig(m).eigenvalues(0);
}

}  // namespace opholder

#endif  // OPHOLDER_LINALG_HPP
