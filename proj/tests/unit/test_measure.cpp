#include <cmath>
#include <numeric>

#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "kframe/measure.hpp"

using namespace kframe;
using fixture::simpson3;

namespace {

L2Seq seq(const MeasureSpace& space, std::function<Vector(double)> f) {
  std::vector<Vector> e;
  for (double w : space.nodes()) e.push_back(f(w));
  return L2Seq(space, e);
}

Vector v2(double a, double b) { return (Vector(2) << a, b).finished(); }

}  // namespace

TEST(Quadrature, SimpsonThreeNodes) {
  const MeasureSpace m = simpson3();
  ASSERT_EQ(m.size(), 3u);
  EXPECT_DOUBLE_EQ(m.node(0), 0.0);
  EXPECT_DOUBLE_EQ(m.node(1), 0.5);
  EXPECT_DOUBLE_EQ(m.node(2), 1.0);
  EXPECT_NEAR(m.weight(0), 1.0 / 6, 1e-16);
  EXPECT_NEAR(m.weight(1), 4.0 / 6, 1e-16);
  EXPECT_NEAR(m.weight(2), 1.0 / 6, 1e-16);
}

TEST(Quadrature, MidpointSingleNode) {
  const MeasureSpace m = quadrature_build({QuadratureKind::Midpoint, 0.0, 1.0, 1, {}, {}});
  ASSERT_EQ(m.size(), 1u);
  EXPECT_DOUBLE_EQ(m.node(0), 0.5);
  EXPECT_DOUBLE_EQ(m.weight(0), 1.0);
}

TEST(Quadrature, SimpsonIntegratesSquareExactly) {
  const MeasureSpace m = simpson3();
  double acc = 0.0;
  for (std::size_t i = 0; i < m.size(); ++i) acc += m.weight(i) * m.node(i) * m.node(i);
  EXPECT_NEAR(acc, 1.0 / 3, 1e-16);
}

TEST(Quadrature, WeightsSumToLengthAndCubicsAreExact) {
  for (std::size_t n : {3u, 5u, 9u, 21u}) {
    const MeasureSpace s = quadrature_build({QuadratureKind::Simpson, -0.5, 2.0, n, {}, {}});
    EXPECT_NEAR(s.total_mass(), 2.5, 1e-14);
    double cubic = 0.0;
    for (std::size_t i = 0; i < s.size(); ++i) cubic += s.weight(i) * std::pow(s.node(i), 3);
    EXPECT_NEAR(cubic, (std::pow(2.0, 4) - std::pow(-0.5, 4)) / 4, 1e-13);
    const MeasureSpace m = quadrature_build({QuadratureKind::Midpoint, -0.5, 2.0, n, {}, {}});
    EXPECT_NEAR(m.total_mass(), 2.5, 1e-14);
  }
}

TEST(Quadrature, BadSpecs) {
  EXPECT_KFRAME_ERROR(quadrature_build({QuadratureKind::Simpson, 0, 1, 4, {}, {}}), BadSpec);
  EXPECT_KFRAME_ERROR(quadrature_build({QuadratureKind::Simpson, 0, 1, 1, {}, {}}), BadSpec);
  EXPECT_KFRAME_ERROR(quadrature_build({QuadratureKind::Midpoint, 1, 0, 3, {}, {}}), BadSpec);
  EXPECT_KFRAME_ERROR(quadrature_build({QuadratureKind::Explicit, 0, 1, 0, {0.0, 1.0}, {1.0}}), BadSpec);
  EXPECT_KFRAME_ERROR(MeasureSpace({0.0, 1.0}, {0.0, 0.0}), BadSpec);
  EXPECT_KFRAME_ERROR(MeasureSpace({0.0}, {-1.0}), BadSpec);
  EXPECT_KFRAME_ERROR(MeasureSpace({}, {}), BadSpec);
}

TEST(L2Inner, Examples) {
  const MeasureSpace m = simpson3();
  const L2Seq zero = L2Seq::zero(m, 2);
  EXPECT_EQ(l2_inner(zero, zero), Scalar(0.0));

  const MeasureSpace point = fixture::unit_point();
  const L2Seq x(point, {v2(1, 2)});
  const L2Seq y(point, {v2(3, -1)});
  EXPECT_NEAR(std::abs(l2_inner(x, y) - Scalar(1.0)), 0.0, 1e-15);

  const L2Seq a = seq(m, [](double w) { return v2(w, 0); });
  const L2Seq b = seq(m, [](double) { return v2(1, 0); });
  EXPECT_NEAR(l2_inner(a, b).real(), 0.5, 1e-16);
}

TEST(L2Inner, Errors) {
  const L2Seq a = L2Seq::zero(simpson3(), 2);
  const L2Seq b = L2Seq::zero(fixture::unit_point(), 2);
  const L2Seq c = L2Seq::zero(simpson3(), 3);
  EXPECT_KFRAME_ERROR(l2_inner(a, b), SpaceMismatch);
  EXPECT_KFRAME_ERROR(l2_inner(a, c), DimensionMismatch);
}

TEST(L2Norm, Examples) {
  EXPECT_EQ(l2_norm(L2Seq::zero(simpson3(), 2)), 0.0);
  const L2Seq single(fixture::unit_point(), {v2(3, 4)});
  EXPECT_NEAR(l2_norm(single), 5.0, 1e-15);
  const L2Seq a = seq(simpson3(), [](double w) { return v2(w, 0); });
  EXPECT_NEAR(l2_norm(a), 1.0 / std::sqrt(3.0), 1e-15);
}

TEST(L2Inner, ConjugateSymmetryLinearityCauchySchwarz) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    const MeasureSpace m = fixture::random_space(rng, 1 + trial % 9);
    const Index n = 2 + trial % 4;
    auto rand_seq = [&] {
      std::vector<Vector> e;
      for (std::size_t i = 0; i < m.size(); ++i) e.push_back(oracle::random_unit(rng, n) * (1.0 + i));
      return L2Seq(m, e);
    };
    const L2Seq x = rand_seq(), y = rand_seq();
    const Scalar xy = l2_inner(x, y);
    EXPECT_NEAR(std::abs(xy - std::conj(l2_inner(y, x))), 0.0, 1e-12);
    EXPECT_LE(std::abs(xy), l2_norm(x) * l2_norm(y) + 1e-10);
    // Linear in the first argument.
    const Scalar c(0.3, -1.2);
    std::vector<Vector> cx;
    for (const auto& e : x.elements()) cx.push_back(c * e);
    EXPECT_NEAR(std::abs(l2_inner(L2Seq(m, cx), y) - c * xy), 0.0, 1e-12 * (1.0 + std::abs(xy)));
  }
}

TEST(L2Seq, WeightedSumCommutesWithOperators) {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 30; ++trial) {
    const MeasureSpace m = fixture::random_space(rng, 1 + trial % 9);
    const Index n = 2 + trial % 5;
    const LinOp T = oracle::random_matrix(rng, n);
    Vector sum = Vector::Zero(n), sum_T = Vector::Zero(n);
    for (std::size_t i = 0; i < m.size(); ++i) {
      const Vector f = oracle::random_unit(rng, n);
      sum += m.weight(i) * f;
      sum_T += m.weight(i) * (T * f);
    }
    EXPECT_LE((T * sum - sum_T).norm(), 1e-12 * (1.0 + sum_T.norm()));
  }
}

TEST(Confinement, Examples) {
  const MeasureSpace m = simpson3();
  const Confinement c = positively_confined_check(ScalarSequence(m, std::vector<double>{1, 2, 3}));
  EXPECT_TRUE(c.confined);
  EXPECT_EQ(c.inf, 1.0);
  EXPECT_EQ(c.sup, 3.0);

  const MeasureSpace two({0.0, 1.0}, {0.5, 0.5});
  EXPECT_FALSE(positively_confined_check(ScalarSequence(two, std::vector<double>{0, 1})).confined);

  const Confinement k = positively_confined_check(ScalarSequence(m, std::vector<double>{0.7, 0.7, 0.7}));
  EXPECT_TRUE(k.confined);
  EXPECT_EQ(k.inf, 0.7);
  EXPECT_EQ(k.sup, 0.7);
}

TEST(Confinement, ComplexValuesRejected) {
  const ScalarSequence s(fixture::unit_point(), std::vector<Scalar>{Scalar(1, 1)});
  EXPECT_KFRAME_ERROR(positively_confined_check(s), NonRealSequence);
}
