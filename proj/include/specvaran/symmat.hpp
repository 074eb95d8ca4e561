#pragma once

#include <algorithm>
#include <optional>
#include <vector>

#include <Eigen/Eigenvalues>

#include "specvaran/core.hpp"

namespace specvaran {

/// X = U Diag(lam) U^T with lam nonincreasing.
struct OrderedEigen {
  Vector lam;
  Matrix U;
};

/// Contiguous run of indices [begin, begin + size) sharing one eigenvalue.
struct Block {
  Index begin = 0;
  Index size = 0;
  Index end() const { return begin + size; }
};

struct EigenBlockStructure {
  std::vector<Block> blocks;
  Vector mu;                   // value of each block (mean of its members)
  std::vector<int> ell;        // 1-based position of i inside its block
  std::vector<int> block_of;   // block index of i

  std::size_t count() const { return blocks.size(); }
};

inline OrderedEigen eig_ordered(const Matrix& a) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(a);
  if (es.info() != Eigen::Success) throw NumericalError("eigensolver did not converge");
  const Index n = a.rows();
  OrderedEigen out{Vector(n), Matrix(n, n)};
  for (Index i = 0; i < n; ++i) {
    out.lam(i) = es.eigenvalues()(n - 1 - i);
    out.U.col(i) = es.eigenvectors().col(n - 1 - i);
  }
  if (!out.lam.allFinite()) throw NumericalError("non-finite eigenvalues");
  return out;
}

inline OrderedEigen eig_ordered(const SymmetricMatrix& x) { return eig_ordered(x.mat()); }

/**
 * Greedy grouping: a new block starts whenever lam[i-1] - lam[i] > group_tol.
 */
inline EigenBlockStructure block_structure(const Vector& lam, double group_tol) {
  const Index n = lam.size();
  for (Index i = 1; i < n; ++i) {
    if (lam(i) > lam(i - 1) + group_tol) throw InputError("eigenvalues are not nonincreasing");
  }
  EigenBlockStructure s;
  s.ell.resize(n);
  s.block_of.resize(n);
  Index begin = 0;
  for (Index i = 0; i < n; ++i) {
    if (i > 0 && lam(i - 1) - lam(i) > group_tol) {
      s.blocks.push_back({begin, i - begin});
      begin = i;
    }
    s.ell[i] = static_cast<int>(i - begin) + 1;
    s.block_of[i] = static_cast<int>(s.blocks.size());
  }
  if (n > 0) s.blocks.push_back({begin, n - begin});
  s.mu.resize(static_cast<Index>(s.blocks.size()));
  for (std::size_t m = 0; m < s.blocks.size(); ++m) {
    s.mu(m) = lam.segment(s.blocks[m].begin, s.blocks[m].size).mean();
  }
  return s;
}

/// (mu I - X)^dagger with eigenvalues within rank_tol of mu treated as zero.
inline SymmetricMatrix shifted_pseudoinverse(const SymmetricMatrix& x, double mu,
                                             const Tolerances& tol = {}) {
  const auto e = eig_ordered(x);
  const double cut = tol.rank_tol(x.norm());
  Vector d(x.n());
  for (Index i = 0; i < x.n(); ++i) {
    const double gap = mu - e.lam(i);
    d(i) = std::abs(gap) > cut ? 1.0 / gap : 0.0;
  }
  return SymmetricMatrix(e.U * d.asDiagonal() * e.U.transpose());
}

/**
 * (mu_m I - X)^dagger computed from a block structure: the whole block m is
 * dropped and the others use their block value, so clustered eigenvalues never
 * produce a tiny denominator.
 */
inline Matrix block_pseudoinverse(const OrderedEigen& e, const EigenBlockStructure& s,
                                  std::size_t m) {
  const Index n = e.lam.size();
  Vector d(n);
  for (Index i = 0; i < n; ++i) {
    const auto k = static_cast<std::size_t>(s.block_of[i]);
    d(i) = k == m ? 0.0 : 1.0 / (s.mu(m) - s.mu(k));
  }
  return e.U * d.asDiagonal() * e.U.transpose();
}

struct FanGap {
  double inner = 0.0;      // <X, Y>
  double lam_inner = 0.0;  // <lam(X), lam(Y)>
  double gap = 0.0;        // lam_inner - inner, never negative beyond roundoff
};

inline FanGap fan_gap(const Matrix& x, const Matrix& y) {
  if (x.rows() != y.rows() || x.rows() != x.cols() || y.rows() != y.cols()) {
    throw InputError("fan_gap needs square matrices of equal size");
  }
  FanGap f;
  f.inner = x.cwiseProduct(y).sum();
  f.lam_inner = eig_ordered(x).lam.dot(eig_ordered(y).lam);
  f.gap = f.lam_inner - f.inner;
  return f;
}

inline FanGap fan_gap(const SymmetricMatrix& x, const SymmetricMatrix& y) {
  return fan_gap(x.mat(), y.mat());
}

/// One orthogonal U that orders X and Y at the same time.
struct OrderedPairFrame {
  Matrix U;
  Vector lamX;
  Vector lamY;
};

/**
 * Looks for U with X = U Diag(lam X) U^T and Y = U Diag(lam Y) U^T. Inside
 * every eigenvalue block of X the compression of Y is diagonalized with a
 * nonincreasing order; the frame exists iff the result is diagonal and its
 * diagonal is the globally ordered spectrum of Y.
 */
inline std::optional<OrderedPairFrame> simultaneous_ordered_frame(
    const Matrix& x, const Matrix& y, double tol = kMembershipTol, const Tolerances& t = {}) {
  if (x.rows() != y.rows()) throw InputError("matrix dimensions differ");
  auto ex = eig_ordered(x);
  const auto s = block_structure(ex.lam, t.group_tol(x.norm()));
  Matrix U = ex.U;
  for (const auto& b : s.blocks) {
    const Matrix ub = U.middleCols(b.begin, b.size);
    const auto eb = eig_ordered(Matrix(ub.transpose() * y * ub));
    U.middleCols(b.begin, b.size) = ub * eb.U;
  }
  const Matrix d = U.transpose() * y * U;
  const Vector diag = d.diagonal();
  const Vector lamY = eig_ordered(y).lam;
  const double sy = std::max(1.0, y.norm());
  const double sx = std::max(1.0, x.norm());
  if ((d - Matrix(diag.asDiagonal())).norm() > tol * sy) return std::nullopt;
  if ((diag - lamY).lpNorm<Eigen::Infinity>() > tol * sy) return std::nullopt;
  if ((x * y - y * x).norm() > tol * sx * sy) return std::nullopt;
  return OrderedPairFrame{U, ex.lam, lamY};
}

inline std::optional<OrderedPairFrame> simultaneous_ordered_frame(
    const SymmetricMatrix& x, const SymmetricMatrix& y, double tol = kMembershipTol,
    const Tolerances& t = {}) {
  return simultaneous_ordered_frame(x.mat(), y.mat(), tol, t);
}

}  // namespace specvaran
