#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include <Eigen/Core>

namespace specvaran {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Index = Eigen::Index;

// Error kinds. Each maps onto one failure class a caller can react to.
struct InputError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct DomainError : std::domain_error {
  using std::domain_error::domain_error;
};
struct CapabilityError : std::logic_error {
  using std::logic_error::logic_error;
};
struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct InsufficientData : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct ConfigError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/**
 * Real number or +infinity. NaN and -infinity are rejected, so the only
 * non-finite value that can flow through the library is +inf.
 */
class ExtendedReal {
 public:
  constexpr ExtendedReal() = default;
  ExtendedReal(double v) : v_(v) {  // NOLINT(google-explicit-constructor)
    if (std::isnan(v) || v == -std::numeric_limits<double>::infinity()) {
      throw NumericalError("extended real must be finite or +inf");
    }
  }

  static ExtendedReal infinity() {
    return ExtendedReal(std::numeric_limits<double>::infinity());
  }

  bool is_finite() const { return std::isfinite(v_); }
  bool is_infinite() const { return !is_finite(); }
  double value() const { return v_; }

  friend ExtendedReal operator+(ExtendedReal a, ExtendedReal b) {
    if (a.is_infinite() || b.is_infinite()) return infinity();
    return ExtendedReal(a.v_ + b.v_);
  }
  friend ExtendedReal operator-(ExtendedReal a, double b) {
    if (a.is_infinite()) return infinity();
    return ExtendedReal(a.v_ - b);
  }
  friend bool operator==(ExtendedReal a, ExtendedReal b) { return a.v_ == b.v_; }
  friend bool operator<(ExtendedReal a, ExtendedReal b) { return a.v_ < b.v_; }
  friend bool operator<=(ExtendedReal a, ExtendedReal b) { return a.v_ <= b.v_; }
  friend bool operator>(ExtendedReal a, ExtendedReal b) { return a.v_ > b.v_; }
  friend bool operator>=(ExtendedReal a, ExtendedReal b) { return a.v_ >= b.v_; }

 private:
  double v_ = 0.0;
};

inline std::string to_string(ExtendedReal x) {
  return x.is_finite() ? std::to_string(x.value()) : std::string("+inf");
}

/**
 * Square real symmetric matrix. Construction symmetrizes via (A + A^T)/2 and
 * remembers the Frobenius norm of the discarded skew part.
 */
class SymmetricMatrix {
 public:
  SymmetricMatrix() = default;
  explicit SymmetricMatrix(const Matrix& a) {
    if (a.rows() != a.cols()) throw InputError("matrix is not square");
    if (a.rows() < 1) throw InputError("matrix dimension must be at least 1");
    if (!a.allFinite()) throw InputError("matrix has non-finite entries");
    m_ = 0.5 * (a + a.transpose());
    asymmetry_ = 0.5 * (a - a.transpose()).norm();
  }

  static SymmetricMatrix zero(Index n) { return SymmetricMatrix(Matrix::Zero(n, n)); }
  static SymmetricMatrix identity(Index n) { return SymmetricMatrix(Matrix::Identity(n, n)); }
  static SymmetricMatrix diagonal(const Vector& d) {
    return SymmetricMatrix(Matrix(d.asDiagonal()));
  }

  const Matrix& mat() const { return m_; }
  Index n() const { return m_.rows(); }
  double norm() const { return m_.norm(); }
  double asymmetry() const { return asymmetry_; }
  double operator()(Index i, Index j) const { return m_(i, j); }

  friend SymmetricMatrix operator+(const SymmetricMatrix& a, const SymmetricMatrix& b) {
    return SymmetricMatrix(a.m_ + b.m_);
  }
  friend SymmetricMatrix operator-(const SymmetricMatrix& a, const SymmetricMatrix& b) {
    return SymmetricMatrix(a.m_ - b.m_);
  }
  friend SymmetricMatrix operator*(double s, const SymmetricMatrix& a) {
    return SymmetricMatrix(s * a.m_);
  }

 private:
  Matrix m_;
  double asymmetry_ = 0.0;
};

/// Frobenius inner product.
inline double inner(const SymmetricMatrix& a, const SymmetricMatrix& b) {
  return a.mat().cwiseProduct(b.mat()).sum();
}
inline double inner(const Vector& a, const Vector& b) { return a.dot(b); }

inline void require_same_size(const SymmetricMatrix& a, const SymmetricMatrix& b) {
  if (a.n() != b.n()) throw InputError("matrix dimensions differ");
}

/**
 * Eigenvalue clustering and pseudoinverse cutoffs, both relative to
 * max(1, ||X||_F) of the matrix they act on.
 */
struct Tolerances {
  double group_rel = 1e-8;
  double rank_rel = 1e-10;

  double group_tol(double scale) const { return group_rel * std::max(1.0, scale); }
  double rank_tol(double scale) const { return rank_rel * std::max(1.0, scale); }
};

/// Default tolerance for membership equalities (cones, subdifferentials).
inline constexpr double kMembershipTol = 1e-7;

}  // namespace specvaran
