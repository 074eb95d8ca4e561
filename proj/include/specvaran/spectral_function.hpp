#pragma once

#include <optional>
#include <vector>

#include "specvaran/eig_deriv.hpp"
#include "specvaran/symmetric_function.hpp"

namespace specvaran {

/// g = theta o lambda on symmetric matrices.
class SpectralFunction {
 public:
  explicit SpectralFunction(SymmetricFunctionPtr theta, Tolerances tol = {})
      : theta_(std::move(theta)), tol_(tol) {
    if (!theta_) throw InputError("null symmetric function");
  }

  const SymmetricFunction& theta() const { return *theta_; }
  const SymmetricFunctionPtr& theta_ptr() const { return theta_; }
  const Tolerances& tolerances() const { return tol_; }
  std::string name() const { return theta_->name(); }

 private:
  SymmetricFunctionPtr theta_;
  Tolerances tol_;
};

inline SpectralFunction make_spectral_function(const std::string& name, Tolerances tol = {}) {
  return SpectralFunction(make_symmetric_function(name), tol);
}

/// Y in the subdifferential of g at X, with one frame ordering both.
struct SubgradientPair {
  SymmetricMatrix X;
  SymmetricMatrix Y;
  Matrix U;
  Vector lamX;
  Vector lamY;

  OrderedEigen frame() const { return {lamX, U}; }
};

inline ExtendedReal g_eval(const SpectralFunction& g, const SymmetricMatrix& x,
                           double tol = kMembershipTol) {
  return g.theta().eval(eig_ordered(x).lam, tol);
}

inline ExtendedReal g_subderivative(const SpectralFunction& g, const SymmetricMatrix& x,
                                    const SymmetricMatrix& h, double tol = kMembershipTol) {
  const auto fl = g.theta().flags();
  if (!fl.convex && !fl.lipschitz_relative_to_domain) {
    throw CapabilityError(g.name() + ": chain rule needs convexity or domain-relative Lipschitz");
  }
  const auto f = directional_frame(x, h, g.tolerances());
  return g.theta().subderivative(f.eig.lam, lambda_dir(f), tol);
}

inline void require_indicator(const SpectralFunction& g) {
  if (!g.theta().flags().indicator) throw CapabilityError(g.name() + " is not an indicator");
}

/// H in the tangent cone of dom g at X.
inline bool spectral_tangent_contains(const SpectralFunction& g, const SymmetricMatrix& x,
                                      const SymmetricMatrix& h, double tol = kMembershipTol) {
  require_indicator(g);
  return g_subderivative(g, x, h, tol).is_finite();
}

/// W in the second-order tangent set of dom g at X for the tangent direction H.
inline bool spectral_second_tangent_contains(const SpectralFunction& g, const SymmetricMatrix& x,
                                             const SymmetricMatrix& h, const SymmetricMatrix& w,
                                             double tol = kMembershipTol) {
  require_indicator(g);
  const auto f = directional_frame(x, h, g.tolerances());
  return g.theta()
      .parabolic_subderivative(f.eig.lam, lambda_dir(f), lambda_parabolic(f, h, w), tol)
      .is_finite();
}

inline std::optional<SubgradientPair> g_subdiff_contains(const SpectralFunction& g,
                                                         const SymmetricMatrix& x,
                                                         const SymmetricMatrix& y,
                                                         double tol = kMembershipTol) {
  require_same_size(x, y);
  const auto frame = simultaneous_ordered_frame(x, y, tol, g.tolerances());
  if (!frame) return std::nullopt;
  if (!g.theta().subdifferential_contains(frame->lamX, frame->lamY, tol)) return std::nullopt;
  return SubgradientPair{x, y, frame->U, frame->lamX, frame->lamY};
}

inline EigenBlockStructure pair_blocks(const SpectralFunction& g, const SubgradientPair& p) {
  return block_structure(p.lamX, g.tolerances().group_tol(p.lamX.norm()));
}

/// Fan gap of (Lambda(Y)_mm, U_m^T H U_m) for every eigenvalue block m of X.
inline std::vector<FanGap> block_fan_gaps(const SpectralFunction& g, const SubgradientPair& p,
                                          const SymmetricMatrix& h) {
  const auto s = pair_blocks(g, p);
  std::vector<FanGap> out;
  for (const auto& b : s.blocks) {
    const Matrix um = p.U.middleCols(b.begin, b.size);
    const Matrix ym = p.lamY.segment(b.begin, b.size).asDiagonal();
    out.push_back(fan_gap(ym, Matrix(um.transpose() * h.mat() * um)));
  }
  return out;
}

inline bool g_critical_cone_contains(const SpectralFunction& g, const SubgradientPair& p,
                                     const SymmetricMatrix& h, double tol = kMembershipTol) {
  require_same_size(p.X, h);
  const auto f = directional_frame(p.frame(), h, g.tolerances());
  if (!g.theta().critical_cone_contains(p.lamX, p.lamY, lambda_dir(f), tol)) return false;
  for (const auto& fg : block_fan_gaps(g, p, h)) {
    if (fg.gap > tol) return false;
  }
  return true;
}

/// 2 sum_m <Lambda(Y)_mm, U_m^T H (mu_m I - X)^dagger H U_m>.
inline double sigma_term(const SpectralFunction& g, const SubgradientPair& p,
                         const SymmetricMatrix& h) {
  require_same_size(p.X, h);
  const auto e = p.frame();
  const auto s = pair_blocks(g, p);
  double total = 0.0;
  for (std::size_t m = 0; m < s.count(); ++m) {
    const auto& b = s.blocks[m];
    const Matrix um = p.U.middleCols(b.begin, b.size);
    const Matrix hph = h.mat() * block_pseudoinverse(e, s, m) * h.mat();
    total += p.lamY.segment(b.begin, b.size).dot((um.transpose() * hph * um).diagonal());
  }
  return 2.0 * total;
}

/// d^2 g(X, Y)(H) for polyhedral theta: indicator of the critical cone plus sigma.
inline ExtendedReal g_second_subderivative(const SpectralFunction& g, const SubgradientPair& p,
                                           const SymmetricMatrix& h,
                                           double tol = kMembershipTol) {
  if (!g.theta().flags().polyhedral) {
    throw CapabilityError(g.name() + ": second subderivative needs polyhedral theta");
  }
  if (!g_critical_cone_contains(g, p, h, tol)) return ExtendedReal::infinity();
  return sigma_term(g, p, h);
}

inline ExtendedReal g_parabolic_subderivative(const SpectralFunction& g, const SymmetricMatrix& x,
                                              const SymmetricMatrix& h, const SymmetricMatrix& w,
                                              double tol = kMembershipTol) {
  const auto f = directional_frame(x, h, g.tolerances());
  return g.theta().parabolic_subderivative(f.eig.lam, lambda_dir(f), lambda_parabolic(f, h, w),
                                           tol);
}

namespace detail {

inline SymmetricMatrix build_witness(const SymmetricMatrix& x, const OrderedEigen& e,
                                     const Vector* lamY, const SymmetricMatrix& h,
                                     const Vector& z, const Tolerances& tol) {
  require_same_size(x, h);
  if (z.size() != h.n()) throw InputError("z has the wrong length");
  const auto f = directional_frame(e, h, tol);
  Matrix w = Matrix::Zero(h.n(), h.n());
  for (std::size_t m = 0; m < f.outer.count(); ++m) {
    const auto& b = f.outer.blocks[m];
    const Vector zm = z.segment(b.begin, b.size);
    for (const auto& beta : f.inner[m].blocks) {
      for (Index k = beta.begin + 1; k < beta.end(); ++k) {
        if (zm(k) > zm(k - 1) + 1e-12) {
          throw InputError("z must be nonincreasing on every second-level block");
        }
      }
    }
    const Matrix um = f.Um(m);
    const Matrix cm = um.transpose() * h.mat() * um;
    Matrix q = f.Q[m];
    if (lamY) {
      // Prefer a Q that also orders Lambda(Y)_mm, so <Y, W> splits blockwise.
      const Matrix ym = lamY->segment(b.begin, b.size).asDiagonal();
      if (auto both = simultaneous_ordered_frame(cm, ym, kMembershipTol, tol)) q = both->U;
    }
    const Matrix hph = h.mat() * block_pseudoinverse(e, f.outer, m) * h.mat();
    w.block(b.begin, b.begin, b.size, b.size) =
        -2.0 * um.transpose() * hph * um + q * zm.asDiagonal() * q.transpose();
  }
  const SymmetricMatrix out(e.U * w * e.U.transpose());
  const Vector check = lambda_parabolic(x, h, out, tol);
  if ((check - z).norm() > 1e-6) {
    throw NumericalError("witness direction does not reproduce z");
  }
  return out;
}

}  // namespace detail

/// W with lambda''(X; H, W) = z, built in the eigen frame of X.
inline SymmetricMatrix witness_direction(const SymmetricMatrix& x, const SymmetricMatrix& h,
                                         const Vector& z, const Tolerances& tol = {}) {
  return detail::build_witness(x, eig_ordered(x), nullptr, h, z, tol);
}

/// Same, in the pair frame; then g_parabolic(H, W) - <Y, W> equals d^2 g(X, Y)(H).
inline SymmetricMatrix witness_direction(const SpectralFunction& g, const SubgradientPair& p,
                                         const SymmetricMatrix& h, const Vector& z) {
  return detail::build_witness(p.X, p.frame(), &p.lamY, h, z, g.tolerances());
}

/**
 * Minimizer of d^2 theta(lam X)(lam'(X;H) | z) - <lam Y, z> for polyhedral
 * theta and H critical. The minimum is 0 and the minimizers form a cone, so
 * the minimum-norm minimizer z = 0 is returned.
 */
inline Vector parabolic_minimizer(const SpectralFunction& g, const SubgradientPair& p,
                                  const SymmetricMatrix& h, double tol = kMembershipTol) {
  if (!g.theta().flags().polyhedral) {
    throw CapabilityError(g.name() + ": closed-form minimizer needs polyhedral theta");
  }
  if (!g_critical_cone_contains(g, p, h, tol)) throw DomainError("direction is not critical");
  return Vector::Zero(h.n());
}

inline SymmetricMatrix prox_g(const SpectralFunction& g, const SymmetricMatrix& x,
                              double step = 1.0) {
  const auto e = eig_ordered(x);
  return SymmetricMatrix(e.U * g.theta().prox(e.lam, step).asDiagonal() * e.U.transpose());
}

inline double dist_dom_g(const SpectralFunction& g, const SymmetricMatrix& x) {
  return g.theta().domain_distance(eig_ordered(x).lam);
}

/**
 * Critical cone of S^n_+ (sign = +1) or S^n_- (sign = -1) described by index
 * sets of the pair frame: rho = zero eigenvalues of both X and Y, tau = nonzero
 * eigenvalues of Y. H is critical iff sign * H_rho,rho is PSD and H_tau,tau and
 * H_rho,tau vanish.
 */
inline bool orthant_critical_cone_explicit(const SubgradientPair& p, const SymmetricMatrix& h,
                                           int sign, double tol = kMembershipTol) {
  require_same_size(p.X, h);
  const double s = sign >= 0 ? 1.0 : -1.0;
  std::vector<Index> rho, tau;
  for (Index i = 0; i < p.lamX.size(); ++i) {
    if (s * p.lamY(i) < -tol) {
      tau.push_back(i);
    } else if (std::abs(p.lamX(i)) <= tol && std::abs(p.lamY(i)) <= tol) {
      rho.push_back(i);
    }
  }
  const Matrix m = p.U.transpose() * h.mat() * p.U;
  const auto sub = [&](const std::vector<Index>& r, const std::vector<Index>& c) {
    return Matrix(m(r, c));
  };
  if (!rho.empty() && eig_ordered(Matrix(s * sub(rho, rho))).lam.minCoeff() < -tol) {
    return false;
  }
  if (!tau.empty() && sub(tau, tau).norm() > tol) return false;
  if (!rho.empty() && !tau.empty() && sub(rho, tau).norm() > tol) return false;
  return true;
}

inline bool psd_critical_cone_explicit(const SubgradientPair& p, const SymmetricMatrix& h,
                                       double tol = kMembershipTol) {
  return orthant_critical_cone_explicit(p, h, +1, tol);
}

}  // namespace specvaran
