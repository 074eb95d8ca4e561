#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include "specvaran/spectral_function.hpp"

namespace specvaran {

/**
 * Sampling plan for difference quotients. liminf over w' -> w is replaced by a
 * minimum over Gaussian perturbations of radius radius_ratio * t, read off at
 * the smallest t of the grid.
 */
struct QuotientGrid {
  std::vector<double> t = {1e-2, 1e-3, 1e-4};
  int samples = 64;
  double radius_ratio = 1.0;
  std::uint64_t seed = 0;

  void validate() const {
    check_t_grid(t);
    for (std::size_t i = 1; i < t.size(); ++i) {
      if (!(t[i] < t[i - 1])) throw ConfigError("quotient t grid must be strictly decreasing");
    }
    if (samples < 0) throw ConfigError("sample count must be nonnegative");
    if (!(radius_ratio >= 0.0)) throw ConfigError("radius ratio must be nonnegative");
  }
};

template <class P>
struct FunctionHook {
  std::function<ExtendedReal(const P&)> value;
  std::function<double(const P&)> domain_distance;
  bool indicator = false;
};

struct QuotientPoint {
  double t = 0.0;
  ExtendedReal best = ExtendedReal::infinity();
  int feasible = 0;
};

struct NumericEstimate {
  ExtendedReal value = ExtendedReal::infinity();
  std::vector<QuotientPoint> trace;
};

// Perturbation shapes: E|xi|^2 = 1 in both spaces.
inline Vector random_like(const Vector& w, std::mt19937_64& rng) {
  std::normal_distribution<double> nd;
  Vector xi(w.size());
  for (Index i = 0; i < w.size(); ++i) xi(i) = nd(rng);
  return xi / std::sqrt(static_cast<double>(std::max<Index>(1, w.size())));
}

inline SymmetricMatrix random_like(const SymmetricMatrix& w, std::mt19937_64& rng) {
  std::normal_distribution<double> nd;
  const Index n = w.n();
  Matrix g(n, n);
  for (Index i = 0; i < n; ++i) {
    g(i, i) = nd(rng);
    for (Index j = i + 1; j < n; ++j) g(i, j) = g(j, i) = nd(rng) * std::sqrt(0.5);
  }
  return SymmetricMatrix(g / std::sqrt(0.5 * static_cast<double>(n * (n + 1))));
}

inline Vector axpy(const Vector& x, double t, const Vector& w) { return x + t * w; }
inline SymmetricMatrix axpy(const SymmetricMatrix& x, double t, const SymmetricMatrix& w) {
  return SymmetricMatrix(x.mat() + t * w.mat());
}

namespace detail {

/**
 * Set membership through distances: q(t) = dist(point(t)) / scale(t) must
 * vanish. Members show q below the floor or falling at least twofold over the
 * last grid step; non-members keep q near a positive constant.
 */
template <class P, class PointFn, class ScaleFn>
NumericEstimate distance_membership(const FunctionHook<P>& f, const QuotientGrid& grid,
                                    PointFn point, ScaleFn scale, double floor) {
  if (!f.domain_distance) throw ConfigError("indicator hook needs a domain distance");
  grid.validate();
  NumericEstimate out;
  for (double t : grid.t) out.trace.push_back({t, f.domain_distance(point(t)) / scale(t), 1});
  const double last = out.trace.back().best.value();
  bool member = last <= floor;
  if (!member && out.trace.size() >= 2) {
    member = last <= 0.5 * out.trace[out.trace.size() - 2].best.value();
  }
  out.value = member ? ExtendedReal(0.0) : ExtendedReal::infinity();
  return out;
}

template <class P, class QuotientFn>
NumericEstimate sampled_min(const P& dir, const QuotientGrid& grid, QuotientFn quotient) {
  grid.validate();
  std::mt19937_64 rng(grid.seed);
  NumericEstimate out;
  for (double t : grid.t) {
    QuotientPoint qp{t};
    const auto take = [&](const P& d) {
      const ExtendedReal q = quotient(t, d);
      if (q.is_finite()) {
        ++qp.feasible;
        if (q < qp.best) qp.best = q;
      }
    };
    take(dir);
    for (int k = 0; k < grid.samples; ++k) take(axpy(dir, grid.radius_ratio * t, random_like(dir, rng)));
    out.trace.push_back(qp);
  }
  // The tail of the grid stands in for the liminf: minima at coarse t carry a
  // bias of order radius_ratio * t and are kept only in the trace.
  out.value = out.trace.back().best;
  return out;
}

}  // namespace detail

/// liminf of [f(x + t w') - f(x)] / t.
template <class P>
NumericEstimate numeric_subderivative(const FunctionHook<P>& f, const P& x, const P& w,
                                      const QuotientGrid& grid = {}) {
  const ExtendedReal fx = f.value(x);
  if (fx.is_infinite()) throw DomainError("base point outside the domain");
  if (f.indicator) {
    return detail::distance_membership(
        f, grid, [&](double t) { return axpy(x, t, w); }, [](double t) { return t; }, 1e-9);
  }
  return detail::sampled_min(w, grid, [&](double t, const P& d) {
    const ExtendedReal v = f.value(axpy(x, t, d));
    return v.is_finite() ? ExtendedReal((v.value() - fx.value()) / t) : v;
  });
}

/// liminf of [f(x + t w + t^2/2 z') - f(x) - t df(x)(w)] / (t^2 / 2).
template <class P>
NumericEstimate numeric_parabolic_subderivative(const FunctionHook<P>& f, const P& x, const P& w,
                                                const P& z, double first_order,
                                                const QuotientGrid& grid = {}) {
  const ExtendedReal fx = f.value(x);
  if (fx.is_infinite()) throw DomainError("base point outside the domain");
  if (f.indicator) {
    return detail::distance_membership(
        f, grid, [&](double t) { return axpy(axpy(x, t, w), 0.5 * t * t, z); },
        [](double t) { return 0.5 * t * t; }, 1e-6);
  }
  return detail::sampled_min(z, grid, [&](double t, const P& d) {
    const ExtendedReal v = f.value(axpy(axpy(x, t, w), 0.5 * t * t, d));
    if (v.is_infinite()) return v;
    return ExtendedReal((v.value() - fx.value() - t * first_order) / (0.5 * t * t));
  });
}

/// liminf of [f(x + t w') - f(x) - t <v, w'>] / (t^2 / 2).
template <class P>
NumericEstimate numeric_second_subderivative(const FunctionHook<P>& f, const P& x, const P& v,
                                             const P& w, const QuotientGrid& grid = {}) {
  const ExtendedReal fx = f.value(x);
  if (fx.is_infinite()) throw DomainError("base point outside the domain");
  return detail::sampled_min(w, grid, [&](double t, const P& d) {
    const ExtendedReal val = f.value(axpy(x, t, d));
    if (val.is_infinite()) return val;
    return ExtendedReal((val.value() - fx.value() - t * inner(v, d)) / (0.5 * t * t));
  });
}

/// Hook on R^n; feasibility uses a tight tolerance so samples are not padded.
inline FunctionHook<Vector> theta_hook(const SymmetricFunctionPtr& theta, double feas_tol = 1e-12) {
  return {[theta, feas_tol](const Vector& x) { return theta->eval(x, feas_tol); },
          [theta](const Vector& x) { return theta->domain_distance(x); },
          theta->flags().indicator};
}

/// Hook on symmetric matrices that touches g only through eigenvalues.
inline FunctionHook<SymmetricMatrix> spectral_hook(const SpectralFunction& g,
                                                   double feas_tol = 1e-12) {
  return {[g, feas_tol](const SymmetricMatrix& x) { return g_eval(g, x, feas_tol); },
          [g](const SymmetricMatrix& x) { return dist_dom_g(g, x); },
          g.theta().flags().indicator};
}

/// Least-squares slope of log residual against log t; needs three points above the floor.
inline double slope_fit(const std::vector<ResidualPoint>& pts, double floor = 1e-13) {
  std::vector<std::pair<double, double>> xy;
  for (const auto& p : pts) {
    if (p.residual > floor) xy.emplace_back(std::log(p.t), std::log(p.residual));
  }
  if (xy.size() < 3) throw InsufficientData("fewer than three residuals above the noise floor");
  double mx = 0.0, my = 0.0;
  for (const auto& [a, b] : xy) {
    mx += a;
    my += b;
  }
  mx /= static_cast<double>(xy.size());
  my /= static_cast<double>(xy.size());
  double sxy = 0.0, sxx = 0.0;
  for (const auto& [a, b] : xy) {
    sxy += (a - mx) * (b - my);
    sxx += (a - mx) * (a - mx);
  }
  if (sxx == 0.0) throw InsufficientData("t grid has a single distinct value");
  return sxy / sxx;
}

struct RatioProfile {
  std::vector<double> ratio;  // residual / t^2 for points above the floor, grid order
  bool monotone = true;       // nonincreasing as t shrinks
  double at_target = std::numeric_limits<double>::infinity();  // ratio at the target t
};

/**
 * Second-order check: residual / t^2 over a decreasing t grid. Points under
 * the floor are dropped from the monotonicity check and count as zero.
 */
inline RatioProfile ratio_profile(const std::vector<ResidualPoint>& pts, double target_t,
                                  double floor = 1e-12) {
  RatioProfile out;
  double prev = std::numeric_limits<double>::infinity();
  for (const auto& p : pts) {
    const double r = p.residual > floor ? p.residual / (p.t * p.t) : 0.0;
    if (std::abs(p.t - target_t) <= 1e-12 * target_t) out.at_target = r;
    if (p.residual <= floor) continue;
    out.ratio.push_back(r);
    if (r > prev) out.monotone = false;
    prev = r;
  }
  return out;
}

}  // namespace specvaran
