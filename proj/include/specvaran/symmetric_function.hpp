#pragma once

#include <algorithm>
#include <memory>
#include <numeric>
#include <string>

#include "specvaran/core.hpp"

namespace specvaran {

struct FunctionFlags {
  bool convex = false;
  bool polyhedral = false;
  bool finite_everywhere = false;
  bool indicator = false;
  bool lipschitz_relative_to_domain = false;
};

/**
 * Permutation-invariant lsc function theta: R^n -> R U {+inf} together with
 * the first- and second-order objects the spectral layer lifts to matrices.
 * All hooks take an absolute membership tolerance; it also decides which
 * coordinates count as active.
 */
class SymmetricFunction {
 public:
  virtual ~SymmetricFunction() = default;

  virtual std::string name() const = 0;
  virtual FunctionFlags flags() const = 0;

  virtual ExtendedReal eval(const Vector& x, double tol = kMembershipTol) const = 0;

  /// d theta(x)(w). Throws DomainError when x is outside the domain.
  virtual ExtendedReal subderivative(const Vector& x, const Vector& w,
                                     double tol = kMembershipTol) const = 0;

  /// v in the (convex) subdifferential at x. CapabilityError if theta is not convex.
  virtual bool subdifferential_contains(const Vector& x, const Vector& v,
                                        double tol = kMembershipTol) const = 0;

  /// d^2 theta(x, v)(w). Polyhedral functions give the indicator of the critical cone.
  virtual ExtendedReal second_subderivative(const Vector& x, const Vector& v, const Vector& w,
                                            double tol = kMembershipTol) const {
    if (!flags().polyhedral) {
      throw CapabilityError(name() + ": second subderivative needs a polyhedral function");
    }
    check_domain(x, tol);
    return critical_cone_contains(x, v, w, tol) ? ExtendedReal(0.0) : ExtendedReal::infinity();
  }

  /// d^2 theta(x)(w | z). Throws DomainError unless d theta(x)(w) is finite.
  virtual ExtendedReal parabolic_subderivative(const Vector& x, const Vector& w, const Vector& z,
                                               double tol = kMembershipTol) const = 0;

  virtual double domain_distance(const Vector& x) const = 0;

  /// argmin_u theta(u) + |u - x|^2 / (2 step).
  virtual Vector prox(const Vector& x, double step = 1.0) const = 0;

  bool critical_cone_contains(const Vector& x, const Vector& v, const Vector& w,
                              double tol = kMembershipTol) const {
    const ExtendedReal d = subderivative(x, w, tol);
    return d.is_finite() && std::abs(d.value() - v.dot(w)) <= tol;
  }

 protected:
  void check_domain(const Vector& x, double tol) const {
    if (eval(x, tol).is_infinite()) throw DomainError(name() + ": point outside the domain");
  }
  static void check_sizes(const Vector& a, const Vector& b) {
    if (a.size() != b.size()) throw InputError("vector sizes differ");
  }
};

using SymmetricFunctionPtr = std::shared_ptr<const SymmetricFunction>;

// Euclidean projection onto the unit simplex (sort-and-threshold).
inline Vector project_simplex(const Vector& y) {
  const Index n = y.size();
  std::vector<double> s(y.data(), y.data() + n);
  std::sort(s.begin(), s.end(), std::greater<>());
  double cum = 0.0;
  double theta = 0.0;
  for (Index i = 0; i < n; ++i) {
    cum += s[static_cast<std::size_t>(i)];
    const double cand = (cum - 1.0) / static_cast<double>(i + 1);
    if (s[static_cast<std::size_t>(i)] - cand > 0.0) theta = cand;
  }
  return (y.array() - theta).max(0.0).matrix();
}

/// Indicator of R^n_+ (sign = +1) or R^n_- (sign = -1).
class OrthantIndicator final : public SymmetricFunction {
 public:
  explicit OrthantIndicator(int sign) : s_(sign >= 0 ? 1.0 : -1.0) {}

  std::string name() const override { return s_ > 0 ? "pos-orthant" : "neg-orthant"; }
  FunctionFlags flags() const override { return {true, true, false, true, true}; }

  ExtendedReal eval(const Vector& x, double tol) const override {
    return (s_ * x.array() >= -tol).all() ? ExtendedReal(0.0) : ExtendedReal::infinity();
  }

  ExtendedReal subderivative(const Vector& x, const Vector& w, double tol) const override {
    check_sizes(x, w);
    check_domain(x, tol);
    for (Index i = 0; i < x.size(); ++i) {
      if (active(x(i), tol) && s_ * w(i) < -tol) return ExtendedReal::infinity();
    }
    return 0.0;
  }

  bool subdifferential_contains(const Vector& x, const Vector& v, double tol) const override {
    check_sizes(x, v);
    if (eval(x, tol).is_infinite()) return false;
    for (Index i = 0; i < x.size(); ++i) {
      if (active(x(i), tol) ? s_ * v(i) > tol : std::abs(v(i)) > tol) return false;
    }
    return true;
  }

  // Second-order tangent set of the orthant is the tangent cone of T(x) at w.
  ExtendedReal parabolic_subderivative(const Vector& x, const Vector& w, const Vector& z,
                                       double tol) const override {
    check_sizes(x, z);
    if (subderivative(x, w, tol).is_infinite()) {
      throw DomainError(name() + ": direction is not tangent");
    }
    for (Index i = 0; i < x.size(); ++i) {
      if (active(x(i), tol) && std::abs(w(i)) <= tol && s_ * z(i) < -tol) {
        return ExtendedReal::infinity();
      }
    }
    return 0.0;
  }

  double domain_distance(const Vector& x) const override {
    return (s_ * x.array()).min(0.0).matrix().norm();
  }

  Vector prox(const Vector& x, double /*step*/) const override {
    return s_ > 0 ? Vector(x.array().max(0.0)) : Vector(x.array().min(0.0));
  }

 private:
  static bool active(double xi, double tol) { return std::abs(xi) <= tol; }
  double s_;
};

/// theta(x) = max_i x_i.
class MaxComponent final : public SymmetricFunction {
 public:
  std::string name() const override { return "max"; }
  FunctionFlags flags() const override { return {true, true, true, false, true}; }

  ExtendedReal eval(const Vector& x, double) const override { return x.maxCoeff(); }

  ExtendedReal subderivative(const Vector& x, const Vector& w, double tol) const override {
    check_sizes(x, w);
    return max_over(w, active_set(x, tol));
  }

  bool subdifferential_contains(const Vector& x, const Vector& v, double tol) const override {
    check_sizes(x, v);
    const auto a = active_set(x, tol);
    if (std::abs(v.sum() - 1.0) > tol) return false;
    for (Index i = 0; i < x.size(); ++i) {
      if (v(i) < -tol) return false;
      if (!a[static_cast<std::size_t>(i)] && std::abs(v(i)) > tol) return false;
    }
    return true;
  }

  ExtendedReal parabolic_subderivative(const Vector& x, const Vector& w, const Vector& z,
                                       double tol) const override {
    check_sizes(x, z);
    auto a = active_set(x, tol);
    const double top = max_over(w, a);
    for (Index i = 0; i < x.size(); ++i) {
      if (w(i) < top - tol) a[static_cast<std::size_t>(i)] = false;
    }
    return max_over(z, a);
  }

  double domain_distance(const Vector&) const override { return 0.0; }

  // Moreau: prox_{s max}(x) = x - s P_simplex(x / s).
  Vector prox(const Vector& x, double step) const override {
    if (!(step > 0.0)) throw InputError("prox step must be positive");
    return x - step * project_simplex(x / step);
  }

 private:
  static std::vector<bool> active_set(const Vector& x, double tol) {
    const double top = x.maxCoeff();
    std::vector<bool> a(static_cast<std::size_t>(x.size()));
    for (Index i = 0; i < x.size(); ++i) a[static_cast<std::size_t>(i)] = x(i) >= top - tol;
    return a;
  }
  static double max_over(const Vector& w, const std::vector<bool>& a) {
    double best = -std::numeric_limits<double>::infinity();
    for (Index i = 0; i < w.size(); ++i) {
      if (a[static_cast<std::size_t>(i)]) best = std::max(best, w(i));
    }
    return best;
  }
};

/**
 * Nearest point of {z >= 0, sum z_i^k = 1}. k = 1 is the simplex and k = 2 the
 * nonnegative part of the unit sphere, both exact. Larger k is nonconvex in
 * general; z = u / |u|_k is optimized over u >= 0 by projected gradient from
 * several starts and the best local solution is kept.
 */
inline Vector project_spectahedron_set(const Vector& y, int k) {
  const Index n = y.size();
  if (k == 1) return project_simplex(y);
  if (k == 2) {
    Vector p = y.array().max(0.0);
    if (p.norm() > 0.0) return p / p.norm();
    Index i = 0;
    y.maxCoeff(&i);
    return Vector::Unit(n, i);
  }
  const auto retract = [k](const Vector& u) {
    return Vector(u / std::pow(u.array().pow(k).sum(), 1.0 / k));
  };
  const auto objective = [&](const Vector& u) { return (retract(u) - y).squaredNorm(); };

  std::vector<Vector> starts;
  Vector pos = y.array().max(0.0);
  if (pos.maxCoeff() > 0.0) starts.push_back(pos);
  starts.push_back(Vector::Ones(n));
  for (Index i = 0; i < n; ++i) starts.push_back(Vector::Unit(n, i));

  Vector best = retract(starts.front());
  double best_f = objective(starts.front());
  for (Vector u : starts) {
    u = retract(u);
    double f = objective(u);
    double step = 1.0;
    for (int it = 0; it < 2000 && step > 1e-16; ++it) {
      const Vector z = retract(u);
      const double nk = std::pow(u.array().pow(k).sum(), 1.0 / k);
      const Vector gn = (u.array() / nk).pow(k - 1).matrix();
      const Vector r = z - y;
      const Vector g = (2.0 / nk) * (r - gn * z.dot(r));
      if (g.norm() < 1e-15) break;
      for (;;) {
        Vector cand = (u - step * g).array().max(0.0);
        if (cand.maxCoeff() <= 0.0) {
          step *= 0.5;
          continue;
        }
        cand = retract(cand);
        const double fc = objective(cand);
        if (fc < f) {
          u = cand;
          f = fc;
          step *= 2.0;
          break;
        }
        step *= 0.5;
        if (step < 1e-16) break;
      }
    }
    if (f < best_f) {
      best_f = f;
      best = retract(u);
    }
  }
  return best;
}

/// Indicator of {z >= 0, sum z_i^k = 1}; k = 1 is the unit simplex.
class SpectahedronSet final : public SymmetricFunction {
 public:
  explicit SpectahedronSet(int k) : k_(k) {
    if (k < 1) throw ConfigError("spectahedron exponent must be a positive integer");
  }

  int k() const { return k_; }
  std::string name() const override { return "spectahedron:" + std::to_string(k_); }
  FunctionFlags flags() const override {
    const bool simplex = k_ == 1;
    return {simplex, simplex, false, true, true};
  }

  ExtendedReal eval(const Vector& x, double tol) const override {
    if ((x.array() < -tol).any()) return ExtendedReal::infinity();
    const double s = x.array().max(0.0).pow(k_).sum();
    return std::abs(s - 1.0) <= tol ? ExtendedReal(0.0) : ExtendedReal::infinity();
  }

  ExtendedReal subderivative(const Vector& x, const Vector& w, double tol) const override {
    check_sizes(x, w);
    check_domain(x, tol);
    return tangent(x, w, tol) ? ExtendedReal(0.0) : ExtendedReal::infinity();
  }

  // Normal cone of the simplex: equal values off the zero set, no larger on it.
  bool subdifferential_contains(const Vector& x, const Vector& v, double tol) const override {
    if (k_ != 1) throw CapabilityError(name() + " is not convex");
    check_sizes(x, v);
    if (eval(x, tol).is_infinite()) return false;
    double c = -std::numeric_limits<double>::infinity();
    for (Index i = 0; i < x.size(); ++i) {
      if (std::abs(x(i)) > tol) c = std::max(c, v(i));
    }
    for (Index i = 0; i < x.size(); ++i) {
      if (std::abs(x(i)) > tol ? std::abs(v(i) - c) > tol : v(i) > c + tol) return false;
    }
    return true;
  }

  ExtendedReal second_subderivative(const Vector& x, const Vector& v, const Vector& w,
                                    double tol) const override {
    if (k_ != 1) throw CapabilityError(name() + ": second subderivative is not supported");
    return SymmetricFunction::second_subderivative(x, v, w, tol);
  }

  ExtendedReal parabolic_subderivative(const Vector& x, const Vector& w, const Vector& z,
                                       double tol) const override {
    check_sizes(x, z);
    if (subderivative(x, w, tol).is_infinite()) {
      throw DomainError(name() + ": direction is not tangent");
    }
    double lin = 0.0;
    for (Index i = 0; i < x.size(); ++i) {
      const double xi = std::max(x(i), 0.0);
      lin += std::pow(xi, k_ - 1) * z(i);
      if (k_ >= 2) lin += (k_ - 1) * std::pow(xi, k_ - 2) * w(i) * w(i);
      if (std::abs(x(i)) <= tol && std::abs(w(i)) <= tol && z(i) < -tol) {
        return ExtendedReal::infinity();
      }
    }
    return std::abs(lin) <= tol ? ExtendedReal(0.0) : ExtendedReal::infinity();
  }

  double domain_distance(const Vector& x) const override {
    return (project_spectahedron_set(x, k_) - x).norm();
  }

  Vector prox(const Vector& x, double) const override { return project_spectahedron_set(x, k_); }

 private:
  bool tangent(const Vector& x, const Vector& w, double tol) const {
    double lin = 0.0;
    for (Index i = 0; i < x.size(); ++i) {
      lin += std::pow(std::max(x(i), 0.0), k_ - 1) * w(i);
      if (std::abs(x(i)) <= tol && w(i) < -tol) return false;
    }
    return std::abs(lin) <= tol;
  }
  int k_;
};

/// Built-in by name: neg-orthant, pos-orthant, max, spectahedron:<k>.
inline SymmetricFunctionPtr make_symmetric_function(const std::string& name) {
  if (name == "neg-orthant") return std::make_shared<OrthantIndicator>(-1);
  if (name == "pos-orthant") return std::make_shared<OrthantIndicator>(+1);
  if (name == "max") return std::make_shared<MaxComponent>();
  const std::string prefix = "spectahedron:";
  if (name.rfind(prefix, 0) == 0) {
    const std::string k = name.substr(prefix.size());
    if (k.empty() || k.find_first_not_of("0123456789") != std::string::npos || k.size() > 3) {
      throw ConfigError("bad spectahedron exponent in '" + name + "'");
    }
    return std::make_shared<SpectahedronSet>(std::stoi(k));
  }
  throw ConfigError("unknown symmetric function '" + name + "'");
}

}  // namespace specvaran
