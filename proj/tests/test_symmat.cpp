#include <gtest/gtest.h>

#include "specvaran/random.hpp"
#include "specvaran/symmat.hpp"

using namespace specvaran;

namespace {

SymmetricMatrix diag3(double a, double b, double c) {
  return SymmetricMatrix::diagonal((Vector(3) << a, b, c).finished());
}

}  // namespace

TEST(SymmetricMatrix, SymmetrizesAndRecordsAsymmetry) {
  Matrix a(2, 2);
  a << 1, 2, 0, 3;
  const SymmetricMatrix s(a);
  EXPECT_DOUBLE_EQ(s(0, 1), 1.0);
  EXPECT_DOUBLE_EQ(s(1, 0), 1.0);
  EXPECT_NEAR(s.asymmetry(), std::sqrt(2.0), 1e-15);
}

TEST(SymmetricMatrix, RejectsBadInput) {
  EXPECT_THROW(SymmetricMatrix(Matrix(2, 3)), InputError);
  EXPECT_THROW(SymmetricMatrix(Matrix(0, 0)), InputError);
  Matrix bad = Matrix::Zero(2, 2);
  bad(0, 0) = std::nan("");
  EXPECT_THROW(SymmetricMatrix{bad}, InputError);
}

TEST(ExtendedReal, OnlyFiniteOrPlusInfinity) {
  EXPECT_THROW(ExtendedReal(std::nan("")), NumericalError);
  EXPECT_THROW(ExtendedReal(-std::numeric_limits<double>::infinity()), NumericalError);
  const ExtendedReal inf = ExtendedReal::infinity();
  EXPECT_TRUE((inf + 1.0).is_infinite());
  EXPECT_TRUE((inf - 1e300).is_infinite());
  EXPECT_EQ(to_string(inf), "+inf");
  EXPECT_LT(ExtendedReal(3.0), inf);
}

TEST(EigOrdered, NonincreasingAndReconstructs) {
  Rng rng(1);
  for (int k = 0; k < 50; ++k) {
    const auto x = random_symmetric(6, rng, 3.0);
    const auto e = eig_ordered(x);
    for (Index i = 1; i < 6; ++i) EXPECT_GE(e.lam(i - 1), e.lam(i));
    EXPECT_LT((e.U * e.lam.asDiagonal() * e.U.transpose() - x.mat()).norm(), 1e-12);
  }
}

TEST(BlockStructure, GroupsWithinTolerance) {
  const Vector lam = (Vector(6) << 3, 3 + 1e-12, 1, 0, 0, 0).finished();
  Vector sorted = lam;
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  const auto s = block_structure(sorted, 1e-8);
  ASSERT_EQ(s.count(), 3u);
  EXPECT_EQ(s.blocks[0].size, 2);
  EXPECT_EQ(s.blocks[1].size, 1);
  EXPECT_EQ(s.blocks[2].size, 3);
  EXPECT_EQ(s.ell[4], 2);
  EXPECT_EQ(s.block_of[5], 2);
  EXPECT_NEAR(s.mu(0), 3.0, 1e-12);
}

TEST(BlockStructure, RejectsIncreasingInput) {
  EXPECT_THROW(block_structure((Vector(2) << 0, 1).finished(), 1e-8), InputError);
}

TEST(ShiftedPseudoinverse, DiagonalOracle) {
  // (0 I - Diag(0, -1))^dagger = Diag(0, 1).
  const auto p = shifted_pseudoinverse(SymmetricMatrix::diagonal((Vector(2) << 0, -1).finished()), 0.0);
  EXPECT_NEAR(p(0, 0), 0.0, 1e-15);
  EXPECT_NEAR(p(1, 1), 1.0, 1e-15);
  EXPECT_NEAR(p(0, 1), 0.0, 1e-15);
}

TEST(ShiftedPseudoinverse, MoorePenroseIdentities) {
  Rng rng(2);
  for (int k = 0; k < 20; ++k) {
    const auto lam = spectrum_with_multiplicities({2, 1, 2}, rng, 1.0, 1.0);
    const auto x = with_spectrum(lam, random_orthogonal(5, rng));
    const Matrix a = lam(0) * Matrix::Identity(5, 5) - x.mat();
    const Matrix p = shifted_pseudoinverse(x, lam(0)).mat();
    EXPECT_LT((a * p * a - a).norm(), 1e-10);
    EXPECT_LT((p * a * p - p).norm(), 1e-10);
  }
}

TEST(FanGap, FixtureValue) {
  // Lambda(Y) block Diag(0, -1) against the compression [[0.5, -0.5], [-0.5, 0]].
  Matrix a(2, 2), b(2, 2);
  a << 0, 0, 0, -1;
  b << 0.5, -0.5, -0.5, 0;
  EXPECT_NEAR(fan_gap(a, b).gap, (std::sqrt(5.0) - 1.0) / 4.0, 1e-12);
}

TEST(FanGap, NonnegativeOnRandomPairs) {
  Rng rng(3);
  for (int k = 0; k < 2000; ++k) {
    std::uniform_int_distribution<int> nd(1, 8);
    const int n = nd(rng);
    EXPECT_GE(fan_gap(random_symmetric(n, rng), random_symmetric(n, rng)).gap, -1e-9);
  }
}

TEST(FanGap, ZeroOnAlignedPairs) {
  Rng rng(4);
  for (int k = 0; k < 200; ++k) {
    const Matrix u = random_orthogonal(5, rng);
    Vector a = random_symmetric(5, rng).mat().diagonal();
    Vector b = random_symmetric(5, rng).mat().diagonal();
    std::sort(a.begin(), a.end(), std::greater<>());
    std::sort(b.begin(), b.end(), std::greater<>());
    EXPECT_LE(std::abs(fan_gap(with_spectrum(a, u), with_spectrum(b, u)).gap), 1e-8);
  }
}

TEST(FanGap, OrthogonallyInvariant) {
  Rng rng(5);
  for (int k = 0; k < 100; ++k) {
    const auto x = random_symmetric(4, rng), y = random_symmetric(4, rng);
    const Matrix v = random_orthogonal(4, rng);
    const double g0 = fan_gap(x, y).gap;
    const double g1 =
        fan_gap(Matrix(v * x.mat() * v.transpose()), Matrix(v * y.mat() * v.transpose())).gap;
    EXPECT_NEAR(g0, g1, 1e-12);
  }
}

TEST(SimultaneousFrame, FindsFrameForAlignedRepeatedSpectra) {
  Rng rng(6);
  const Matrix u = random_orthogonal(5, rng);
  const Vector lx = (Vector(5) << 2, 2, 2, 0, 0).finished();
  const Vector ly = (Vector(5) << 1, 0.5, 0.5, 0.5, -1).finished();
  const auto f = simultaneous_ordered_frame(with_spectrum(lx, u), with_spectrum(ly, u));
  ASSERT_TRUE(f.has_value());
  EXPECT_LT((f->lamY - ly).norm(), 1e-10);
  EXPECT_LT((f->U * ly.asDiagonal() * f->U.transpose() - with_spectrum(ly, u).mat()).norm(), 1e-10);
  EXPECT_LT((f->U * lx.asDiagonal() * f->U.transpose() - with_spectrum(lx, u).mat()).norm(), 1e-10);
}

TEST(SimultaneousFrame, RejectsAntiAlignedAndNoncommuting) {
  EXPECT_FALSE(simultaneous_ordered_frame(diag3(1, 0, 0), diag3(0, 0, 1)).has_value());
  Matrix h(2, 2);
  h << 0, 1, 1, 0;
  EXPECT_FALSE(
      simultaneous_ordered_frame(SymmetricMatrix::diagonal((Vector(2) << 1, 0).finished()), SymmetricMatrix(h))
          .has_value());
}

TEST(SimultaneousFrame, AgreesWithZeroFanGap) {
  Rng rng(7);
  std::uniform_int_distribution<int> coin(0, 2);
  for (int k = 0; k < 300; ++k) {
    const Matrix u = random_orthogonal(4, rng);
    Vector a = (Vector(4) << 1, 1, 0, -1).finished();
    Vector b = random_symmetric(4, rng).mat().diagonal();
    std::sort(b.begin(), b.end(), std::greater<>());
    const int kind = coin(rng);
    SymmetricMatrix y = with_spectrum(b, u);
    if (kind == 1) y = with_spectrum(b.reverse(), u);
    if (kind == 2) y = random_symmetric(4, rng);
    const auto x = with_spectrum(a, u);
    const bool frame = simultaneous_ordered_frame(x, y).has_value();
    const bool zero_gap = std::abs(fan_gap(x, y).gap) <= 1e-7 * std::max(1.0, y.norm());
    EXPECT_EQ(frame, zero_gap) << "trial " << k;
  }
}
