#pragma once

#include <functional>
#include <optional>
#include <string>

#include "specvaran/numeric_oracle.hpp"
#include "specvaran/random.hpp"
#include "specvaran/spectral_function.hpp"

namespace specvaran {

/// Twice differentiable phi with value, gradient and Hessian quadratic form.
struct SmoothObjective {
  std::string kind;
  std::function<double(const SymmetricMatrix&)> value;
  std::function<SymmetricMatrix(const SymmetricMatrix&)> gradient;
  std::function<double(const SymmetricMatrix&, const SymmetricMatrix&)> hessian_form;
};

/// phi(X) = <C, X>.
inline SmoothObjective linear_objective(const SymmetricMatrix& c) {
  return {"linear", [c](const SymmetricMatrix& x) { return inner(c, x); },
          [c](const SymmetricMatrix&) { return c; },
          [](const SymmetricMatrix&, const SymmetricMatrix&) { return 0.0; }};
}

/// phi(X) = <C, X> + weight/2 |X - X0|^2.
inline SmoothObjective quadratic_objective(const SymmetricMatrix& c, double weight,
                                           const SymmetricMatrix& x0) {
  require_same_size(c, x0);
  return {"quadratic",
          [=](const SymmetricMatrix& x) {
            return inner(c, x) + 0.5 * weight * (x.mat() - x0.mat()).squaredNorm();
          },
          [=](const SymmetricMatrix& x) { return SymmetricMatrix(c.mat() + weight * (x.mat() - x0.mat())); },
          [weight](const SymmetricMatrix&, const SymmetricMatrix& h) {
            return weight * h.mat().squaredNorm();
          }};
}

/// Y = -grad phi(X) lies in the subdifferential of g at X.
inline std::optional<SubgradientPair> stationarity_check(const SmoothObjective& phi,
                                                         const SpectralFunction& g,
                                                         const SymmetricMatrix& x,
                                                         double tol = kMembershipTol) {
  const SymmetricMatrix y = -1.0 * phi.gradient(x);
  return g_subdiff_contains(g, x, y, tol);
}

/**
 * Unit-norm directions of the critical cone. The orthant indicators and max
 * have explicit parameterizations in the pair frame; anything else falls back
 * to rejection sampling of random directions. Every draw is re-checked with
 * g_critical_cone_contains.
 */
class CriticalDirectionSampler {
 public:
  enum class Kind { Orthant, Max, Rejection };

  CriticalDirectionSampler(const SpectralFunction& g, const SubgradientPair& p,
                           double tol = kMembershipTol, int max_rejections = 100000)
      : g_(g), p_(p), tol_(tol), max_rejections_(max_rejections) {
    const std::string name = g.name();
    const Index n = p.X.n();
    if (name == "pos-orthant" || name == "neg-orthant") {
      kind_ = Kind::Orthant;
      sign_ = name == "pos-orthant" ? 1.0 : -1.0;
      for (Index i = 0; i < n; ++i) {
        if (sign_ * p.lamY(i) < -tol) {
          tau_.push_back(i);
        } else if (std::abs(p.lamX(i)) <= tol) {
          rho_.push_back(i);
        } else {
          free_.push_back(i);
        }
      }
      trivial_ = free_.empty() && rho_.empty();
    } else if (name == "max") {
      kind_ = Kind::Max;
      const auto s = pair_blocks(g, p);
      const auto& top = s.blocks.front();
      for (Index i = top.begin; i < top.end(); ++i) (p.lamY(i) > tol ? rho_ : tau_).push_back(i);
    } else {
      kind_ = Kind::Rejection;
    }
  }

  Kind kind() const { return kind_; }
  /// The explicit parameterization shows K = {0}.
  bool trivial() const { return trivial_; }
  int rejections() const { return rejections_; }

  std::optional<SymmetricMatrix> next(Rng& rng) {
    if (trivial_) return std::nullopt;
    for (int tries = 0; tries < max_rejections_; ++tries) {
      const SymmetricMatrix h = kind_ == Kind::Rejection ? random_symmetric(p_.X.n(), rng) : draw(rng);
      if (h.norm() > 0.0) {
        const SymmetricMatrix unit = (1.0 / h.norm()) * h;
        if (g_critical_cone_contains(g_, p_, unit, tol_)) return unit;
      }
      ++rejections_;
    }
    return std::nullopt;
  }

 private:
  SymmetricMatrix draw(Rng& rng) const {
    const Index n = p_.X.n();
    Matrix m = random_symmetric(n, rng).mat();
    if (kind_ == Kind::Orthant) {
      // rho block sign-definite (random rank), tau rows and columns zero.
      for (Index i : tau_) {
        for (Index j : tau_) m(i, j) = 0.0;
        for (Index j : rho_) m(i, j) = m(j, i) = 0.0;
      }
      if (!rho_.empty()) {
        // Rank zero would leave H = 0 when no free index exists.
        std::uniform_int_distribution<int> rk(free_.empty() ? 1 : 0, static_cast<int>(rho_.size()));
        const Matrix b = gaussian_matrix(static_cast<Index>(rho_.size()), rk(rng), rng) /
                         std::sqrt(static_cast<double>(n));
        m(rho_, rho_) = sign_ * b * b.transpose();
      }
    } else {
      // Top block of X: c I on supp lam(Y), anything below c on the rest.
      std::normal_distribution<double> nd;
      const double c = nd(rng) / std::sqrt(static_cast<double>(n));
      for (Index i : rho_) {
        for (Index j : rho_) m(i, j) = i == j ? c : 0.0;
        for (Index j : tau_) m(i, j) = m(j, i) = 0.0;
      }
      if (!tau_.empty()) {
        std::uniform_int_distribution<int> rk(0, static_cast<int>(tau_.size()));
        const auto k = static_cast<Index>(tau_.size());
        const Matrix b = gaussian_matrix(k, rk(rng), rng) / std::sqrt(static_cast<double>(n));
        m(tau_, tau_) = c * Matrix::Identity(k, k) - b * b.transpose();
      }
    }
    return SymmetricMatrix(p_.U * m * p_.U.transpose());
  }

  SpectralFunction g_;
  SubgradientPair p_;
  double tol_;
  int max_rejections_;
  Kind kind_ = Kind::Rejection;
  double sign_ = 1.0;
  std::vector<Index> rho_, tau_, free_;
  bool trivial_ = false;
  int rejections_ = 0;
};

struct ScanConfig {
  int samples = 2000;
  std::uint64_t seed = 0;
  double tol = kMembershipTol;
  double margin = 1e-6;
  int max_rejections = 100000;
};

struct SecondOrderScan {
  bool holds = true;
  double min_q = std::numeric_limits<double>::infinity();
  std::optional<SymmetricMatrix> witness;  // direction attaining min_q
  int samples = 0;
  bool vacuous = false;          // K = {0}
  bool sampler_warning = false;  // no critical direction found
};

/// Hess phi(X)[H, H] + sigma(H).
inline double second_order_form(const SmoothObjective& phi, const SpectralFunction& g,
                                const SubgradientPair& p, const SymmetricMatrix& h) {
  return phi.hessian_form(p.X, h) + sigma_term(g, p, h);
}

namespace detail {

inline SecondOrderScan scan_critical_cone(const SmoothObjective& phi, const SpectralFunction& g,
                                          const SubgradientPair& p, const ScanConfig& cfg) {
  SecondOrderScan out;
  CriticalDirectionSampler sampler(g, p, cfg.tol, cfg.max_rejections);
  if (sampler.trivial()) {
    out.vacuous = true;
    return out;
  }
  Rng rng(cfg.seed);
  for (int k = 0; k < cfg.samples; ++k) {
    const auto h = sampler.next(rng);
    if (!h) break;
    ++out.samples;
    const double q = second_order_form(phi, g, p, *h);
    if (q < out.min_q) {
      out.min_q = q;
      out.witness = *h;
    }
  }
  out.sampler_warning = out.samples == 0;
  return out;
}

}  // namespace detail

/// min over sampled unit critical H of the second-order form is >= -tol.
inline SecondOrderScan necessary_condition_scan(const SmoothObjective& phi,
                                                const SpectralFunction& g,
                                                const SubgradientPair& p,
                                                const ScanConfig& cfg = {}) {
  auto out = detail::scan_critical_cone(phi, g, p, cfg);
  out.holds = out.samples == 0 || out.min_q >= -cfg.tol;
  return out;
}

/// min over sampled unit critical H of the second-order form is >= margin.
inline SecondOrderScan sufficient_condition_scan(const SmoothObjective& phi,
                                                 const SpectralFunction& g,
                                                 const SubgradientPair& p,
                                                 const ScanConfig& cfg = {}) {
  auto out = detail::scan_critical_cone(phi, g, p, cfg);
  out.holds = out.samples == 0 || out.min_q >= cfg.margin;
  return out;
}

struct GrowthProbe {
  double ell_hat = std::numeric_limits<double>::infinity();
  int violations = 0;
  int evaluated = 0;
};

/**
 * ell_hat = min 2 [F(X') - F(X)] / |X' - X|^2 over random X' within the
 * radius, F = phi + g. Indicator g moves the sample onto the domain with
 * prox_g first, which never increases its distance to X.
 */
inline GrowthProbe quadratic_growth_probe(const SmoothObjective& phi, const SpectralFunction& g,
                                          const SymmetricMatrix& x, double radius, int trials,
                                          std::uint64_t seed, double feas_tol = 1e-9) {
  const ExtendedReal gx = g_eval(g, x, feas_tol);
  if (gx.is_infinite()) throw DomainError("probe center outside the domain");
  const double fx = phi.value(x) + gx.value();
  const bool project = g.theta().flags().indicator;
  Rng rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  GrowthProbe out;
  for (int k = 0; k < trials; ++k) {
    const SymmetricMatrix xi = random_like(x, rng);
    SymmetricMatrix xp = axpy(x, radius * u(rng) / xi.norm(), xi);
    if (project) xp = prox_g(g, xp);
    const double d = (xp.mat() - x.mat()).norm();
    if (d < 1e-14) continue;
    const ExtendedReal gp = g_eval(g, xp, feas_tol);
    if (gp.is_infinite()) continue;
    const double ell = 2.0 * (phi.value(xp) + gp.value() - fx) / (d * d);
    ++out.evaluated;
    out.ell_hat = std::min(out.ell_hat, ell);
    if (ell < -1e-9) ++out.violations;
  }
  return out;
}

}  // namespace specvaran
