#pragma once

// Random problem generators shared by the CLI checks and the test suites.

#include <algorithm>
#include <vector>

#include "specvaran/random.hpp"
#include "specvaran/spectral_function.hpp"

namespace specvaran {

struct ExpansionInstance {
  SymmetricMatrix X, H, W;
  std::vector<int> mults;
};

/**
 * X with repeated eigenvalues (gaps >= 1) and a direction H whose compressions
 * onto the eigenspaces of X have well separated spectra, so the expansions
 * reach their asymptotic regime inside the default t grid.
 */
inline ExpansionInstance expansion_instance(int n, Rng& rng) {
  ExpansionInstance e;
  e.mults = random_multiplicities(n, rng);
  std::uniform_real_distribution<double> top(-3.0, 3.0);
  const Vector lam = spectrum_with_multiplicities(e.mults, rng, 1.0, top(rng));
  const Matrix v = random_orthogonal(n, rng);
  Matrix b = 0.3 * random_symmetric(n, rng).mat();
  std::uniform_real_distribution<double> step(0.5, 1.0), shift(-0.5, 0.5);
  Index at = 0;
  for (int m : e.mults) {
    Vector eta(m);
    eta(0) = shift(rng);
    for (int k = 1; k < m; ++k) eta(k) = eta(k - 1) - step(rng);
    const Matrix q = random_orthogonal(m, rng);
    b.block(at, at, m, m) = q * eta.asDiagonal() * q.transpose();
    at += m;
  }
  e.X = with_spectrum(lam, v);
  e.H = SymmetricMatrix(v * b * v.transpose());
  e.W = random_symmetric(n, rng);
  return e;
}

/// Sorts z in decreasing order on every second-level block of (X, H).
inline Vector sort_on_second_level_blocks(const DirectionalSpectralFrame& f, Vector z) {
  for (std::size_t m = 0; m < f.outer.count(); ++m) {
    for (const auto& beta : f.inner[m].blocks) {
      auto seg = z.segment(f.outer.blocks[m].begin + beta.begin, beta.size);
      std::sort(seg.begin(), seg.end(), std::greater<>());
    }
  }
  return z;
}

struct SubgradientInstance {
  SymmetricMatrix X, Y;
};

/**
 * (X, Y) with Y in the subdifferential of g at X, built in a common random
 * frame. theta must be max, neg-orthant or pos-orthant. Repeated values are
 * allowed in both spectra.
 */
inline SubgradientInstance subgradient_instance(const std::string& theta, int n, Rng& rng) {
  std::uniform_int_distribution<int> rdist(1, std::min(3, n));
  const int r = rdist(rng);
  std::uniform_int_distribution<int> pdist(theta == "max" ? 1 : 0, r);
  const int p = pdist(rng);
  std::uniform_real_distribution<double> u(0.5, 2.0);
  std::uniform_int_distribution<int> coin(0, 1);
  const Matrix v = random_orthogonal(n, rng);
  Vector lx(n), ly = Vector::Zero(n);

  std::vector<int> rest_mults;
  if (n > r) rest_mults = random_multiplicities(n - r, rng);
  Vector rest = n > r ? spectrum_with_multiplicities(rest_mults, rng, 0.5, 0.0) : Vector();

  // Support values for Y, possibly repeated, sorted decreasingly.
  Vector sup(p);
  for (int k = 0; k < p; ++k) sup(k) = (k > 0 && coin(rng)) ? sup(k - 1) : u(rng);
  std::sort(sup.begin(), sup.end(), std::greater<>());

  if (theta == "neg-orthant") {
    lx.head(r).setZero();
    if (n > r) lx.tail(n - r) = rest.array() - u(rng);
    ly.head(p) = sup;
  } else if (theta == "pos-orthant") {
    if (n > r) lx.head(n - r) = rest.array() - rest.minCoeff() + u(rng);
    lx.tail(r).setZero();
    ly.tail(p) = -sup.reverse();
  } else if (theta == "max") {
    const double t = u(rng);
    lx.head(r).setConstant(t);
    if (n > r) lx.tail(n - r) = rest.array() + (t - u(rng));
    ly.head(p) = sup / sup.sum();
  } else {
    throw ConfigError("no subgradient generator for '" + theta + "'");
  }
  return {with_spectrum(lx, v), with_spectrum(ly, v)};
}

/**
 * Random minimizer z of d^2 theta(lam X)(lam'(X;H) | z) - <lam Y, z> for a
 * critical H, nonincreasing on second-level blocks. Returns the zero vector
 * when the objective of the drawn candidate does not vanish.
 */
inline Vector random_parabolic_minimizer(const SpectralFunction& g, const SubgradientPair& p,
                                         const SymmetricMatrix& h, Rng& rng,
                                         double tol = kMembershipTol) {
  const Index n = h.n();
  const auto f = directional_frame(p.frame(), h, g.tolerances());
  const Vector w = lambda_dir(f);
  std::normal_distribution<double> nd;
  Vector z(n);
  const std::string name = g.name();
  if (name == "max") {
    double top = w(0);
    for (Index i = 1; i < n && std::abs(p.lamX(i) - p.lamX(0)) <= tol; ++i) top = std::max(top, w(i));
    const double c = nd(rng);
    for (Index i = 0; i < n; ++i) {
      const bool a2 = std::abs(p.lamX(i) - p.lamX(0)) <= tol && w(i) >= top - tol;
      z(i) = !a2 ? nd(rng) : (p.lamY(i) > tol ? c : c - std::abs(nd(rng)));
    }
  } else {
    const double s = name == "pos-orthant" ? 1.0 : -1.0;
    for (Index i = 0; i < n; ++i) {
      const bool second_active = std::abs(p.lamX(i)) <= tol && std::abs(w(i)) <= tol;
      if (!second_active) {
        z(i) = nd(rng);
      } else {
        z(i) = std::abs(p.lamY(i)) > tol ? 0.0 : s * std::abs(nd(rng));
      }
    }
  }
  z = sort_on_second_level_blocks(f, z);
  const ExtendedReal obj = g.theta().parabolic_subderivative(p.lamX, w, z, tol) - p.lamY.dot(z);
  if (obj.is_infinite() || std::abs(obj.value()) > 1e-9) return Vector::Zero(n);
  return z;
}

struct DirectionInstance {
  SymmetricMatrix X, H;
};

/**
 * (X, H) for first-order chain-rule checks. For the orthant indicators X has a
 * repeated zero eigenvalue and half of the directions are tangent by
 * construction, with rank-deficient compressions so boundary directions occur.
 */
inline DirectionInstance chain_rule_instance(const std::string& theta, int n, Rng& rng) {
  const Matrix v = random_orthogonal(n, rng);
  std::uniform_int_distribution<int> coin(0, 1);
  if (theta == "max") {
    std::uniform_real_distribution<double> top(-2.0, 2.0);
    const Vector lam = spectrum_with_multiplicities(random_multiplicities(n, rng), rng, 0.5, top(rng));
    return {with_spectrum(lam, v), random_symmetric(n, rng)};
  }
  if (theta != "neg-orthant" && theta != "pos-orthant") {
    throw ConfigError("no chain-rule generator for '" + theta + "'");
  }
  std::uniform_int_distribution<int> rdist(1, std::min(3, n));
  const int r = rdist(rng);
  Vector lam = Vector::Zero(n);
  if (n > r) {
    lam.tail(n - r) = spectrum_with_multiplicities(random_multiplicities(n - r, rng), rng, 0.5, -0.5);
  }
  Matrix b = random_symmetric(n, rng).mat();
  if (coin(rng)) {
    std::uniform_int_distribution<int> rk(0, r);
    const Matrix c = gaussian_matrix(r, rk(rng), rng) * 0.5;
    b.topLeftCorner(r, r) = -c * c.transpose();
  }
  const double s = theta == "neg-orthant" ? 1.0 : -1.0;
  return {with_spectrum(s * lam, v), SymmetricMatrix(s * v * b * v.transpose())};
}

struct SecondTangentInstance {
  SymmetricMatrix X, H, W;
};

namespace detail {

// Indices whose second-order tangent condition is a sign constraint.
inline std::vector<Index> second_active(const DirectionalSpectralFrame& f, double tol) {
  const Vector w = lambda_dir(f);
  std::vector<Index> out;
  for (Index i = 0; i < w.size(); ++i) {
    if (std::abs(f.eig.lam(i)) <= tol && std::abs(w(i)) <= tol) out.push_back(i);
  }
  return out;
}

}  // namespace detail

/**
 * (X, H, W) with H tangent to dom g at X and W on a definite side of the
 * second-order tangent set: the sign-constrained entries of lambda'' sit at
 * distance 0.1 to 1 from zero. theta is neg-orthant or spectahedron:1; for
 * the simplex a quarter of the draws also break the trace equality.
 */
inline SecondTangentInstance second_tangent_instance(const SpectralFunction& g, int n, Rng& rng) {
  const std::string name = g.name();
  std::uniform_real_distribution<double> mag(0.1, 1.0), u(0.5, 2.0);
  std::uniform_int_distribution<int> coin(0, 1);
  const Matrix v = random_orthogonal(n, rng);
  const bool simplex = name == "spectahedron:1";
  if (!simplex && name != "neg-orthant") {
    throw ConfigError("no second-order tangent generator for '" + name + "'");
  }
  if (simplex && n < 2) throw InputError("simplex instances need n >= 2");
  std::uniform_int_distribution<int> rdist(1, std::min(3, simplex ? n - 1 : n));
  const int r = rdist(rng);
  const int k = n - r;

  Vector lam = Vector::Zero(n);
  Matrix b = 0.5 * random_symmetric(n, rng).mat();
  std::uniform_int_distribution<int> rk(0, r - 1);
  const Matrix c = gaussian_matrix(r, rk(rng), rng) * 0.5;
  if (simplex) {
    // Positive part first, zeros last; compression on the zero block is PSD.
    Vector pos = spectrum_with_multiplicities(random_multiplicities(k, rng), rng, 0.5, 0.0);
    pos = pos.array() - pos.minCoeff() + u(rng);
    lam.head(k) = pos / pos.sum();
    b.bottomRightCorner(r, r) = c * c.transpose();
    const double tr = b.trace();
    for (Index i = 0; i < k; ++i) b(i, i) -= tr / k;
  } else {
    if (k > 0) lam.tail(k) = spectrum_with_multiplicities(random_multiplicities(k, rng), rng, 0.5, -0.5);
    b.topLeftCorner(r, r) = -c * c.transpose();
  }
  const SymmetricMatrix x = with_spectrum(lam, v);
  const SymmetricMatrix h(v * b * v.transpose());
  const Index zero_begin = simplex ? k : 0;
  const Matrix v0 = v.middleCols(zero_begin, r);

  Matrix w = random_symmetric(n, rng).mat();
  if (simplex) w -= (w.trace() / n) * Matrix::Identity(n, n);
  const auto f = directional_frame(x, h, g.tolerances());
  const Vector z0 = lambda_parabolic(f, h, SymmetricMatrix(w));
  const auto act = detail::second_active(f, kMembershipTol);
  if (!act.empty()) {
    // Move the extreme constrained entry to +-[0.1, 1] by a shift on the zero block.
    double extreme = z0(act.front());
    for (Index i : act) extreme = simplex ? std::min(extreme, z0(i)) : std::max(extreme, z0(i));
    const double target = (coin(rng) ? 1.0 : -1.0) * mag(rng);
    const double shift = target - extreme;
    w += shift * v0 * v0.transpose();
    if (simplex) w -= (shift * r / k) * v.leftCols(k) * v.leftCols(k).transpose();
  }
  if (simplex && coin(rng) && coin(rng)) {
    w += ((coin(rng) ? 1.0 : -1.0) * mag(rng) / n) * Matrix::Identity(n, n);
  }
  return {x, h, SymmetricMatrix(w)};
}

}  // namespace specvaran
