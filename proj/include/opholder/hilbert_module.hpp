#ifndef OPHOLDER_HILBERT_MODULE_HPP
#define OPHOLDER_HILBERT_MODULE_HPP

// Finite model of L^2(Omega, mu) over M_d(C): an element is a weighted
// sequence (gamma_n, A_n), the inner product is sum gamma_n A_n* B_n and
// module operators act blockwise, (T x)_n = X_n A_n.

#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "opholder/linalg.hpp"

namespace opholder {

inline constexpr std::size_t kMaxSequenceLength = 16;

template <typename Real>
struct BasicModuleElement {
  std::vector<Real> weights;
  std::vector<CMatrix<Real>> blocks;

  std::size_t size() const { return blocks.size(); }
  Index dim() const { return blocks.empty() ? 0 : blocks.front().rows(); }

  void validate() const {
    if (weights.size() != blocks.size()) {
      throw DimensionError("ModuleElement: " + std::to_string(weights.size()) +
                           " weights for " + std::to_string(blocks.size()) +
                           " blocks");
    }
    if (blocks.empty()) throw DimensionError("ModuleElement: no blocks");
    const Index d = blocks.front().rows();
    for (std::size_t n = 0; n < blocks.size(); ++n) {
      if (!(weights[n] > 0) || !std::isfinite(weights[n])) {
        throw InvalidInputError("ModuleElement: weight " + std::to_string(n) +
                                " is not a positive finite number");
      }
      if (blocks[n].rows() != d || blocks[n].cols() != d) {
        throw DimensionError("ModuleElement: block " + std::to_string(n) +
                             " does not match dimension " + std::to_string(d));
      }
      detail::require_finite(blocks[n], "ModuleElement");
    }
  }
};

template <typename Real>
struct BasicMultiplierOperator {
  std::vector<CMatrix<Real>> blocks;

  std::size_t size() const { return blocks.size(); }
  Index dim() const { return blocks.empty() ? 0 : blocks.front().rows(); }

  BasicMultiplierOperator adjoint() const {
    BasicMultiplierOperator out;
    out.blocks.reserve(blocks.size());
    for (const auto& b : blocks) out.blocks.push_back(b.adjoint());
    return out;
  }

  static BasicMultiplierOperator identity(Index d, std::size_t m) {
    return {std::vector<CMatrix<Real>>(m, CMatrix<Real>::Identity(d, d))};
  }

  void validate() const {
    if (blocks.empty()) throw DimensionError("MultiplierOperator: no blocks");
    const Index d = blocks.front().rows();
    for (std::size_t n = 0; n < blocks.size(); ++n) {
      if (blocks[n].rows() != d || blocks[n].cols() != d) {
        throw DimensionError("MultiplierOperator: block " + std::to_string(n) +
                             " does not match dimension " + std::to_string(d));
      }
      detail::require_finite(blocks[n], "MultiplierOperator");
    }
  }
};

template <typename Real>
struct BasicModulePolar {
  std::vector<CMatrix<Real>> unitary_blocks;
  std::vector<CMatrix<Real>> modulus_blocks;
};

using ModuleElement = BasicModuleElement<double>;
using MultiplierOperator = BasicMultiplierOperator<double>;
using ModulePolar = BasicModulePolar<double>;

// Which modulus a transformed Gram matrix uses: |T*| on the left operand of
// the inner product, |T| on the right one.
enum class Side { left, right };

namespace detail {

template <typename Real>
void require_compatible(const BasicModuleElement<Real>& x,
                        const BasicModuleElement<Real>& y, const char* op) {
  x.validate();
  y.validate();
  if (x.size() != y.size() || x.dim() != y.dim()) {
    throw DimensionError(std::string(op) + ": elements differ in length or dimension");
  }
  if (x.weights != y.weights) {
    throw DimensionError(std::string(op) + ": elements carry different weights");
  }
}

template <typename Real>
void require_compatible(const BasicMultiplierOperator<Real>& t,
                        const BasicModuleElement<Real>& x, const char* op) {
  t.validate();
  x.validate();
  if (t.size() != x.size() || t.dim() != x.dim()) {
    throw DimensionError(std::string(op) + ": operator and element differ in length or dimension");
  }
}

}  // namespace detail

/// <x, y> = sum_n gamma_n A_n* B_n.
template <typename Real>
CMatrix<Real> inner_product(const BasicModuleElement<Real>& x,
                            const BasicModuleElement<Real>& y) {
  detail::require_compatible(x, y, "inner_product");
  CMatrix<Real> sum = CMatrix<Real>::Zero(x.dim(), x.dim());
  for (std::size_t n = 0; n < x.size(); ++n) {
    sum += x.weights[n] * (x.blocks[n].adjoint() * y.blocks[n]);
  }
  return sum;
}

/// (T x)_n = X_n A_n, same weights.
template <typename Real>
BasicModuleElement<Real> apply(const BasicMultiplierOperator<Real>& t,
                               const BasicModuleElement<Real>& x) {
  detail::require_compatible(t, x, "apply");
  BasicModuleElement<Real> out{x.weights, {}};
  out.blocks.reserve(x.size());
  for (std::size_t n = 0; n < x.size(); ++n) {
    out.blocks.push_back(t.blocks[n] * x.blocks[n]);
  }
  return out;
}

/// Right action of the coefficient algebra: blocks A_n C.
template <typename Real>
BasicModuleElement<Real> right_multiply(const BasicModuleElement<Real>& x,
                                        const CMatrix<Real>& c) {
  BasicModuleElement<Real> out{x.weights, {}};
  for (const auto& b : x.blocks) out.blocks.push_back(b * c);
  return out;
}

/// Blockwise polar decomposition X_n = U_n |X_n| with unitary U_n.
template <typename Real>
BasicModulePolar<Real> module_polar(const BasicMultiplierOperator<Real>& t) {
  t.validate();
  BasicModulePolar<Real> out;
  for (const auto& b : t.blocks) {
    auto pd = opholder::polar(b);
    out.unitary_blocks.push_back(std::move(pd.unitary_factor));
    out.modulus_blocks.push_back(std::move(pd.modulus));
  }
  return out;
}

/// h(|X|)^2 (side right) or h(|X*|)^2 (side left), built from the SVD of X:
/// |X| = V S V*, |X*| = U S U*.
template <typename Real, typename Fn>
CMatrix<Real> squared_modulus_function(const CMatrix<Real>& x, Fn&& h,
                                       Side side) {
  const auto dec = svd(x);
  RVector<Real> values(dec.sigma.size());
  for (Index i = 0; i < values.size(); ++i) {
    const Real hv = static_cast<Real>(h(dec.sigma(i)));
    if (!std::isfinite(hv) || hv < 0) {
      throw DomainError("transformed_gram: h is undefined or negative at "
                        "singular value " + std::to_string(static_cast<double>(dec.sigma(i))),
                        static_cast<double>(dec.sigma(i)));
    }
    values(i) = hv * hv;
  }
  const CMatrix<Real>& basis = side == Side::right ? dec.v : dec.u;
  return hermitian_part(basis *
                        values.template cast<std::complex<Real>>().asDiagonal() *
                        basis.adjoint());
}

/// sum_n gamma_n A_n* h(|X_n^(*)|)^2 A_n; the modulus is |X_n*| for
/// Side::left and |X_n| for Side::right.
template <typename Real, typename Fn>
CMatrix<Real> transformed_gram(const BasicModuleElement<Real>& x,
                               const BasicMultiplierOperator<Real>& t, Fn&& h,
                               Side side) {
  detail::require_compatible(t, x, "transformed_gram");
  CMatrix<Real> sum = CMatrix<Real>::Zero(x.dim(), x.dim());
  for (std::size_t n = 0; n < x.size(); ++n) {
    const CMatrix<Real> weight = squared_modulus_function(t.blocks[n], h, side);
    sum += x.weights[n] * (x.blocks[n].adjoint() * weight * x.blocks[n]);
  }
  return hermitian_part(sum);
}

/// Matrix polynomial C_0 + t C_1 + t^2 C_2 + ... used to describe a
/// continuous family A_t on [0, 1].
template <typename Real>
struct BasicMatrixPolynomial {
  std::vector<CMatrix<Real>> coefficients;

  CMatrix<Real> at(Real t) const {
    if (coefficients.empty()) throw DimensionError("MatrixPolynomial: no coefficients");
    CMatrix<Real> acc = coefficients.back();
    for (std::size_t i = coefficients.size() - 1; i-- > 0;) {
      acc = (acc * t + coefficients[i]).eval();
    }
    return acc;
  }
};

using MatrixPolynomial = BasicMatrixPolynomial<double>;

/// Midpoint nodes t_j = (j + 1/2) / m on [0, 1].
template <typename Real>
std::vector<Real> midpoint_nodes(std::size_t m) {
  if (m == 0) throw DimensionError("quadrature: need at least one node");
  std::vector<Real> t(m);
  for (std::size_t j = 0; j < m; ++j) {
    t[j] = (Real(j) + Real(0.5)) / Real(m);
  }
  return t;
}

/// Composite midpoint rule: blocks A(t_j), weights 1/m.
template <typename Real>
BasicModuleElement<Real> quadrature_element(
    const BasicMatrixPolynomial<Real>& family, std::size_t m) {
  BasicModuleElement<Real> out;
  for (Real t : midpoint_nodes<Real>(m)) {
    out.weights.push_back(Real(1) / Real(m));
    out.blocks.push_back(family.at(t));
  }
  return out;
}

template <typename Real>
BasicMultiplierOperator<Real> quadrature_multiplier(
    const BasicMatrixPolynomial<Real>& family, std::size_t m) {
  BasicMultiplierOperator<Real> out;
  for (Real t : midpoint_nodes<Real>(m)) out.blocks.push_back(family.at(t));
  return out;
}

}  // namespace opholder

#endif  // OPHOLDER_HILBERT_MODULE_HPP
