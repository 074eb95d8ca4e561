#include <gtest/gtest.h>

#include "specvaran/numeric_oracle.hpp"
#include "specvaran/random.hpp"

using namespace specvaran;

namespace {

Vector vec(std::initializer_list<double> v) {
  Vector out(static_cast<Index>(v.size()));
  Index i = 0;
  for (double x : v) out(i++) = x;
  return out;
}

Vector gaussian(Index n, Rng& rng) { return gaussian_matrix(n, 1, rng).col(0); }

}  // namespace

TEST(Factory, KnownAndUnknownNames) {
  EXPECT_EQ(make_symmetric_function("max")->name(), "max");
  EXPECT_EQ(make_symmetric_function("neg-orthant")->name(), "neg-orthant");
  EXPECT_EQ(make_symmetric_function("pos-orthant")->name(), "pos-orthant");
  EXPECT_EQ(make_symmetric_function("spectahedron:3")->name(), "spectahedron:3");
  EXPECT_THROW(make_symmetric_function("min"), ConfigError);
  EXPECT_THROW(make_symmetric_function("spectahedron:"), ConfigError);
  EXPECT_THROW(make_symmetric_function("spectahedron:0"), ConfigError);
  EXPECT_THROW(make_symmetric_function("spectahedron:-1"), ConfigError);
}

TEST(Flags, MatchTheFunctionClass) {
  EXPECT_TRUE(make_symmetric_function("max")->flags().finite_everywhere);
  EXPECT_TRUE(make_symmetric_function("neg-orthant")->flags().indicator);
  EXPECT_TRUE(make_symmetric_function("spectahedron:1")->flags().polyhedral);
  EXPECT_FALSE(make_symmetric_function("spectahedron:2")->flags().convex);
}

TEST(OrthantIndicator, EvalAndSubderivative) {
  const auto th = make_symmetric_function("neg-orthant");
  EXPECT_TRUE(th->eval(vec({0, -1})).is_finite());
  EXPECT_TRUE(th->eval(vec({0.1, -1})).is_infinite());
  EXPECT_EQ(th->subderivative(vec({0, -1}), vec({-1, 5})), ExtendedReal(0.0));
  EXPECT_TRUE(th->subderivative(vec({0, -1}), vec({1, 0})).is_infinite());
  EXPECT_THROW(th->subderivative(vec({1, 0}), vec({0, 0})), DomainError);
}

TEST(OrthantIndicator, NormalConeAndCriticalCone) {
  const auto th = make_symmetric_function("neg-orthant");
  const Vector x = vec({0, 0, -1});
  EXPECT_TRUE(th->subdifferential_contains(x, vec({2, 0, 0})));
  EXPECT_FALSE(th->subdifferential_contains(x, vec({-1, 0, 0})));
  EXPECT_FALSE(th->subdifferential_contains(x, vec({0, 0, 1})));
  const Vector v = vec({2, 0, 0});
  EXPECT_TRUE(th->critical_cone_contains(x, v, vec({0, -3, 4})));
  EXPECT_FALSE(th->critical_cone_contains(x, v, vec({-1, 0, 0})));
  EXPECT_EQ(th->second_subderivative(x, v, vec({0, -3, 4})), ExtendedReal(0.0));
  EXPECT_TRUE(th->second_subderivative(x, v, vec({-1, 0, 0})).is_infinite());
}

TEST(OrthantIndicator, ParabolicSubderivative) {
  const auto th = make_symmetric_function("neg-orthant");
  const Vector x = vec({0, 0, -1});
  const Vector w = vec({0, -1, 3});
  EXPECT_EQ(th->parabolic_subderivative(x, w, vec({-1, 7, 7})), ExtendedReal(0.0));
  EXPECT_TRUE(th->parabolic_subderivative(x, w, vec({1, 7, 7})).is_infinite());
  EXPECT_THROW(th->parabolic_subderivative(x, vec({1, 0, 0}), vec({0, 0, 0})), DomainError);
}

TEST(OrthantIndicator, ProxAndDistance) {
  const auto th = make_symmetric_function("pos-orthant");
  const Vector y = vec({-2, 1, 0.5, -0.25});
  EXPECT_LT((th->prox(y) - vec({0, 1, 0.5, 0})).norm(), 1e-15);
  EXPECT_NEAR(th->domain_distance(y), std::sqrt(4.0 + 0.0625), 1e-15);
}

TEST(MaxComponent, FirstOrderObjects) {
  const auto th = make_symmetric_function("max");
  const Vector x = vec({2, 2, 0});
  EXPECT_DOUBLE_EQ(th->eval(x).value(), 2.0);
  EXPECT_DOUBLE_EQ(th->subderivative(x, vec({-1, 0.5, 9})).value(), 0.5);
  EXPECT_TRUE(th->subdifferential_contains(x, vec({0.3, 0.7, 0})));
  EXPECT_FALSE(th->subdifferential_contains(x, vec({0.3, 0.6, 0.1})));
  EXPECT_FALSE(th->subdifferential_contains(x, vec({1.3, -0.3, 0})));
  EXPECT_THROW(th->subdifferential_contains(x, vec({1, 0})), InputError);
}

TEST(MaxComponent, ParabolicSubderivative) {
  // Active set {0, 1}; w ties both, so d^2 max(x)(w | z) = max(z_0, z_1).
  const auto th = make_symmetric_function("max");
  EXPECT_DOUBLE_EQ(th->parabolic_subderivative(vec({2, 2, 0}), vec({1, 1, 5}), vec({-1, 3, 100})).value(), 3.0);
  EXPECT_DOUBLE_EQ(th->parabolic_subderivative(vec({2, 2, 0}), vec({1, 0, 5}), vec({-1, 3, 100})).value(), -1.0);
}

TEST(MaxComponent, ProxMoreauIdentity) {
  const auto th = make_symmetric_function("max");
  Rng rng(21);
  for (int k = 0; k < 200; ++k) {
    const Vector x = gaussian(6, rng);
    const double s = 0.5 + k % 3;
    const Vector p = th->prox(x, s);
    // Optimality: (x - p) / s is a subgradient of max at p.
    EXPECT_TRUE(th->subdifferential_contains(p, (x - p) / s, 1e-9));
  }
  EXPECT_THROW(th->prox(vec({1, 2}), 0.0), InputError);
}

TEST(ProjectSimplex, OptimalityConditions) {
  Rng rng(22);
  const auto simplex = make_symmetric_function("spectahedron:1");
  for (int k = 0; k < 200; ++k) {
    const Vector y = 2.0 * gaussian(5, rng);
    const Vector p = project_simplex(y);
    EXPECT_NEAR(p.sum(), 1.0, 1e-12);
    EXPECT_GE(p.minCoeff(), 0.0);
    EXPECT_TRUE(simplex->subdifferential_contains(p, y - p, 1e-9));
  }
}

TEST(Spectahedron, SimplexObjects) {
  const auto th = make_symmetric_function("spectahedron:1");
  const Vector x = vec({1, 0});
  EXPECT_EQ(th->subderivative(x, vec({-1, 1})), ExtendedReal(0.0));
  EXPECT_TRUE(th->subderivative(x, vec({1, -1})).is_infinite());
  EXPECT_TRUE(th->subderivative(x, vec({1, 1})).is_infinite());
  EXPECT_TRUE(th->subdifferential_contains(x, vec({3, 1})));
  EXPECT_FALSE(th->subdifferential_contains(x, vec({3, 4})));
  EXPECT_EQ(th->parabolic_subderivative(x, vec({0, 0}), vec({-1, 1})), ExtendedReal(0.0));
  EXPECT_TRUE(th->parabolic_subderivative(x, vec({0, 0}), vec({1, -1})).is_infinite());
}

TEST(Spectahedron, NonconvexCapabilities) {
  const auto th = make_symmetric_function("spectahedron:2");
  const Vector x = vec({0.6, 0.8});
  EXPECT_THROW(th->subdifferential_contains(x, x), CapabilityError);
  EXPECT_THROW(th->second_subderivative(x, x, x), CapabilityError);
  // Sphere: tangent iff <x, w> = 0; second order needs 2 <x, z> + 2 |w|^2 = 0.
  const Vector w = vec({0.8, -0.6});
  EXPECT_TRUE(th->subderivative(x, w).is_finite());
  EXPECT_TRUE(th->subderivative(x, vec({1, 0})).is_infinite());
  EXPECT_TRUE(th->parabolic_subderivative(x, w, -1.0 * x).is_finite());
  EXPECT_TRUE(th->parabolic_subderivative(x, w, x).is_infinite());
}

TEST(Spectahedron, ProjectionsLandOnTheSet) {
  Rng rng(23);
  for (int k : {1, 2, 3}) {
    const auto th = make_symmetric_function("spectahedron:" + std::to_string(k));
    for (int trial = 0; trial < 50; ++trial) {
      const Vector y = gaussian(4, rng);
      const Vector p = th->prox(y);
      EXPECT_TRUE(th->eval(p, 1e-9).is_finite()) << "k = " << k;
      EXPECT_NEAR(th->domain_distance(y), (p - y).norm(), 1e-12);
    }
  }
}

TEST(Spectahedron, SphereProjectionClosedForm) {
  const Vector p = project_spectahedron_set(vec({3, -1, 4}), 2);
  EXPECT_LT((p - vec({0.6, 0, 0.8})).norm(), 1e-15);
  const Vector q = project_spectahedron_set(vec({-3, -1, -4}), 2);
  EXPECT_LT((q - vec({0, 1, 0})).norm(), 1e-15);
}

TEST(NumericOracle, AgreesWithClosedFormsOnVectors) {
  Rng rng(24);
  const auto th = make_symmetric_function("max");
  const auto hook = theta_hook(th);
  for (int k = 0; k < 50; ++k) {
    Vector x = gaussian(5, rng);
    x(1) = x(0) = x.maxCoeff();
    const Vector w = gaussian(5, rng);
    QuotientGrid q;
    q.seed = static_cast<std::uint64_t>(k);
    const double closed = th->subderivative(x, w).value();
    EXPECT_NEAR(numeric_subderivative(hook, x, w, q).value.value(), closed, std::max(1e-3, 0.02 * std::abs(closed)));
  }
}

TEST(NumericOracle, IndicatorMembershipOnVectors) {
  const auto th = make_symmetric_function("neg-orthant");
  const auto hook = theta_hook(th);
  const Vector x = vec({0, -1});
  EXPECT_TRUE(numeric_subderivative(hook, x, vec({-1, 3})).value.is_finite());
  EXPECT_TRUE(numeric_subderivative(hook, x, vec({1, 3})).value.is_infinite());
  EXPECT_TRUE(numeric_parabolic_subderivative(hook, x, vec({0, 3}), vec({-1, 0}), 0.0).value.is_finite());
  EXPECT_TRUE(numeric_parabolic_subderivative(hook, x, vec({0, 3}), vec({1, 0}), 0.0).value.is_infinite());
}
