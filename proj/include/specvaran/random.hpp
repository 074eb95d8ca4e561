#pragma once

#include <random>
#include <vector>

#include <Eigen/QR>

#include "specvaran/core.hpp"

namespace specvaran {

using Rng = std::mt19937_64;

inline Matrix gaussian_matrix(Index r, Index c, Rng& rng) {
  std::normal_distribution<double> nd;
  Matrix g(r, c);
  for (Index j = 0; j < c; ++j)
    for (Index i = 0; i < r; ++i) g(i, j) = nd(rng);
  return g;
}

/// Haar-distributed orthogonal matrix (QR with sign correction).
inline Matrix random_orthogonal(Index n, Rng& rng) {
  Eigen::HouseholderQR<Matrix> qr(gaussian_matrix(n, n, rng));
  Matrix q = qr.householderQ();
  const Matrix r = qr.matrixQR();
  for (Index i = 0; i < n; ++i) {
    if (r(i, i) < 0.0) q.col(i) *= -1.0;
  }
  return q;
}

/// Symmetric Gaussian matrix rescaled to the given Frobenius norm.
inline SymmetricMatrix random_symmetric(Index n, Rng& rng, double norm = 1.0) {
  const Matrix g = gaussian_matrix(n, n, rng);
  Matrix s = g + g.transpose();
  return SymmetricMatrix(s * (norm / s.norm()));
}

inline SymmetricMatrix with_spectrum(const Vector& lam, const Matrix& u) {
  return SymmetricMatrix(u * lam.asDiagonal() * u.transpose());
}

/// Block sizes summing to n, each in [1, max_mult], with at least one repeat when n >= 2.
inline std::vector<int> random_multiplicities(int n, Rng& rng, int max_mult = 3) {
  std::vector<int> out;
  for (;;) {
    out.clear();
    int left = n;
    while (left > 0) {
      std::uniform_int_distribution<int> d(1, std::min(max_mult, left));
      out.push_back(d(rng));
      left -= out.back();
    }
    if (n < 2) return out;
    for (int m : out)
      if (m >= 2) return out;
  }
}

/// Nonincreasing spectrum with the given multiplicities and gaps in [gap, 2 gap].
inline Vector spectrum_with_multiplicities(const std::vector<int>& mults, Rng& rng,
                                           double gap = 1.0, double top = 0.0) {
  std::uniform_real_distribution<double> u(gap, 2.0 * gap);
  int n = 0;
  for (int m : mults) n += m;
  Vector lam(n);
  double v = top;
  Index i = 0;
  for (std::size_t b = 0; b < mults.size(); ++b) {
    if (b > 0) v -= u(rng);
    for (int k = 0; k < mults[b]; ++k) lam(i++) = v;
  }
  return lam;
}

}  // namespace specvaran
