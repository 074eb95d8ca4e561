#pragma once

#include <vector>

#include "specvaran/symmat.hpp"

namespace specvaran {

/**
 * Eigen frame of X refined by a direction H. For every eigenvalue block m of
 * X, Q[m] diagonalizes U_m^T H U_m with nonincreasing eigenvalues and
 * inner[m] groups those eigenvalues into the second-level blocks.
 */
struct DirectionalSpectralFrame {
  OrderedEigen eig;
  EigenBlockStructure outer;
  std::vector<Matrix> Q;
  std::vector<Vector> inner_lam;
  std::vector<EigenBlockStructure> inner;
  std::vector<int> ellp;  // 1-based position of i inside its second-level block

  Matrix Um(std::size_t m) const {
    return eig.U.middleCols(outer.blocks[m].begin, outer.blocks[m].size);
  }
  /// Columns of Q[m] belonging to second-level block j.
  Matrix R(std::size_t m, std::size_t j) const {
    const auto& b = inner[m].blocks[j];
    return Q[m].middleCols(b.begin, b.size);
  }
};

inline DirectionalSpectralFrame directional_frame(const OrderedEigen& e, const SymmetricMatrix& h,
                                                  const Tolerances& tol = {}) {
  if (e.lam.size() != h.n()) throw InputError("matrix dimensions differ");
  DirectionalSpectralFrame f;
  f.eig = e;
  f.outer = block_structure(e.lam, tol.group_tol(e.lam.norm()));
  f.ellp.resize(static_cast<std::size_t>(h.n()));
  const double inner_tol = tol.group_tol(h.norm());
  for (std::size_t m = 0; m < f.outer.count(); ++m) {
    const Matrix um = f.Um(m);
    const auto em = eig_ordered(Matrix(um.transpose() * h.mat() * um));
    f.Q.push_back(em.U);
    f.inner_lam.push_back(em.lam);
    f.inner.push_back(block_structure(em.lam, inner_tol));
    const auto& b = f.outer.blocks[m];
    for (Index k = 0; k < b.size; ++k) {
      f.ellp[static_cast<std::size_t>(b.begin + k)] = f.inner.back().ell[static_cast<std::size_t>(k)];
    }
  }
  return f;
}

inline DirectionalSpectralFrame directional_frame(const SymmetricMatrix& x, const SymmetricMatrix& h,
                                                  const Tolerances& tol = {}) {
  require_same_size(x, h);
  return directional_frame(eig_ordered(x), h, tol);
}

/// lambda'(X; H): concatenation of the ordered spectra of U_m^T H U_m.
inline Vector lambda_dir(const DirectionalSpectralFrame& f) {
  Vector out(f.eig.lam.size());
  for (std::size_t m = 0; m < f.outer.count(); ++m) {
    out.segment(f.outer.blocks[m].begin, f.outer.blocks[m].size) = f.inner_lam[m];
  }
  return out;
}

inline Vector lambda_dir(const SymmetricMatrix& x, const SymmetricMatrix& h,
                         const Tolerances& tol = {}) {
  return lambda_dir(directional_frame(x, h, tol));
}

/**
 * Parabolic second-order directional derivative lambda''(X; H, W). Entry i in
 * block m and second-level block j is the ell'_i-th eigenvalue of
 * R_mj^T U_m^T (W + 2 H (mu_m I - X)^dagger H) U_m R_mj.
 */
inline Vector lambda_parabolic(const DirectionalSpectralFrame& f, const SymmetricMatrix& h,
                               const SymmetricMatrix& w) {
  require_same_size(h, w);
  Vector out(h.n());
  for (std::size_t m = 0; m < f.outer.count(); ++m) {
    const Matrix um = f.Um(m);
    const Matrix p = block_pseudoinverse(f.eig, f.outer, m);
    const Matrix mm = um.transpose() * (w.mat() + 2.0 * h.mat() * p * h.mat()) * um;
    for (std::size_t j = 0; j < f.inner[m].count(); ++j) {
      const Matrix r = f.R(m, j);
      const auto& b = f.inner[m].blocks[j];
      out.segment(f.outer.blocks[m].begin + b.begin, b.size) =
          eig_ordered(Matrix(r.transpose() * mm * r)).lam;
    }
  }
  return out;
}

inline Vector lambda_parabolic(const SymmetricMatrix& x, const SymmetricMatrix& h,
                               const SymmetricMatrix& w, const Tolerances& tol = {}) {
  require_same_size(x, w);
  return lambda_parabolic(directional_frame(x, h, tol), h, w);
}

struct ResidualPoint {
  double t = 0.0;
  double residual = 0.0;
};

/// Log-spaced grid from 1e-1 down to 1e-6 with ratio 10.
inline std::vector<double> default_t_grid() { return {1e-1, 1e-2, 1e-3, 1e-4, 1e-5, 1e-6}; }

inline void check_t_grid(const std::vector<double>& grid) {
  if (grid.empty()) throw InputError("empty t grid");
  for (double t : grid) {
    if (!(t > 0.0) || !std::isfinite(t)) throw InputError("t grid values must be positive");
  }
}

/// ||lam(X + tH) - lam(X) - t lam'(X;H)|| over the grid.
inline std::vector<ResidualPoint> expansion_residual_first(const SymmetricMatrix& x,
                                                           const SymmetricMatrix& h,
                                                           const std::vector<double>& grid,
                                                           const Tolerances& tol = {}) {
  check_t_grid(grid);
  const Vector lam = eig_ordered(x).lam;
  const Vector d1 = lambda_dir(x, h, tol);
  std::vector<ResidualPoint> out;
  for (double t : grid) {
    const Vector lt = eig_ordered(Matrix(x.mat() + t * h.mat())).lam;
    out.push_back({t, (lt - lam - t * d1).norm()});
  }
  return out;
}

/// ||lam(X + tH + t^2/2 W) - lam(X) - t lam' - t^2/2 lam''|| over the grid.
inline std::vector<ResidualPoint> expansion_residual_second(const SymmetricMatrix& x,
                                                            const SymmetricMatrix& h,
                                                            const SymmetricMatrix& w,
                                                            const std::vector<double>& grid,
                                                            const Tolerances& tol = {}) {
  check_t_grid(grid);
  const Vector lam = eig_ordered(x).lam;
  const auto f = directional_frame(x, h, tol);
  const Vector d1 = lambda_dir(f);
  const Vector d2 = lambda_parabolic(f, h, w);
  std::vector<ResidualPoint> out;
  for (double t : grid) {
    const Vector lt = eig_ordered(Matrix(x.mat() + t * h.mat() + 0.5 * t * t * w.mat())).lam;
    out.push_back({t, (lt - lam - t * d1 - 0.5 * t * t * d2).norm()});
  }
  return out;
}

}  // namespace specvaran
