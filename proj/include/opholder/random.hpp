#ifndef OPHOLDER_RANDOM_HPP
#define OPHOLDER_RANDOM_HPP

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

#include "opholder/linalg.hpp"

namespace opholder {

// Seeded generator. Normals come from Box-Muller over raw mt19937_64 draws
// (the engine's output sequence is fixed by the standard, the library
// distributions are not), so instances are reproducible across toolchains.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Uniform in [0, 1).
  double uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    spare_ = radius * std::sin(angle);
    has_spare_ = true;
    return radius * std::cos(angle);
  }

  std::size_t index(std::size_t n) {
    return static_cast<std::size_t>(uniform() * static_cast<double>(n)) % n;
  }

  std::uint64_t next() { return engine_(); }

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

namespace detail {
inline void require_dim(Index d) {
  if (d < 1) throw DimensionError("random generator: dimension must be >= 1");
}
}  // namespace detail

/// Complex Gaussian entries with variance 1/d, so |M|_op stays O(1).
inline Matrix random_matrix(Index d, Rng& rng) {
  detail::require_dim(d);
  Matrix m(d, d);
  const double scale = 1.0 / std::sqrt(2.0 * static_cast<double>(d));
  for (Index j = 0; j < d; ++j) {
    for (Index i = 0; i < d; ++i) {
      const double re = rng.normal();
      const double im = rng.normal();
      m(i, j) = std::complex<double>(re, im) * scale;
    }
  }
  return m;
}

/// R*R rescaled to operator norm c, c uniform in [0.25, 1). The extra
/// factor keeps d = 1 instances from all being 1.
inline Matrix random_psd(Index d, Rng& rng) {
  const Matrix r = random_matrix(d, rng);
  Matrix g = hermitian_part(r.adjoint() * r);
  const double n = op_norm(g);
  const double c = rng.uniform(0.25, 1.0);
  if (n > 0) g *= c / n;
  return g;
}

/// Unitary factor of a Gaussian matrix.
inline Matrix random_unitary(Index d, Rng& rng) {
  return opholder::polar(random_matrix(d, rng)).unitary_factor;
}

/// PSD of the given rank: Q diag(l_1..l_rank, 0..0) Q* with a random unitary Q.
inline Matrix random_psd_of_rank(Index d, Index rank, Rng& rng) {
  detail::require_dim(d);
  const Matrix q = random_unitary(d, rng);
  Vector l = Vector::Zero(d);
  for (Index i = 0; i < std::min(rank, d); ++i) l(i) = rng.uniform(0.1, 1.0);
  return hermitian_part(q * l.cast<std::complex<double>>().asDiagonal() *
                        q.adjoint());
}

/// Matrix with exactly `rank` nonzero singular values.
inline Matrix random_matrix_of_rank(Index d, Index rank, Rng& rng) {
  auto dec = svd(random_matrix(d, rng));
  for (Index i = rank; i < d; ++i) dec.sigma(i) = 0;
  return dec.u * dec.sigma.cast<std::complex<double>>().asDiagonal() *
         dec.v.adjoint();
}

/// W D_k W* for one random unitary W and complex Gaussian diagonals D_k.
inline std::vector<Matrix> random_commuting_normal_family(Index d, Index m,
                                                          Rng& rng) {
  detail::require_dim(d);
  if (m < 1) throw DimensionError("commuting family: length must be >= 1");
  const Matrix w = random_unitary(d, rng);
  std::vector<Matrix> family;
  family.reserve(static_cast<std::size_t>(m));
  for (Index k = 0; k < m; ++k) {
    Eigen::VectorXcd diag(d);
    for (Index i = 0; i < d; ++i) {
      const double re = rng.normal();
      const double im = rng.normal();
      diag(i) = std::complex<double>(re, im) / std::sqrt(2.0);
    }
    family.push_back(w * diag.asDiagonal() * w.adjoint());
  }
  return family;
}

inline Matrix random_matrix(Index d, std::uint64_t seed) {
  Rng rng(seed);
  return random_matrix(d, rng);
}
inline Matrix random_psd(Index d, std::uint64_t seed) {
  Rng rng(seed);
  return random_psd(d, rng);
}
inline Matrix random_unitary(Index d, std::uint64_t seed) {
  Rng rng(seed);
  return random_unitary(d, rng);
}
inline std::vector<Matrix> random_commuting_normal_family(Index d, Index m,
                                                          std::uint64_t seed) {
  Rng rng(seed);
  return random_commuting_normal_family(d, m, rng);
}

}  // namespace opholder

#endif  // OPHOLDER_RANDOM_HPP
