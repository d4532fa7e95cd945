#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "celtic/bezier.hpp"

using namespace celtic;
using V = Vec2<double>;

namespace {

constexpr double kPi = std::numbers::pi;

V point(const CubicBezier<double>& b, double t) {
  const double s = 1 - t;
  return s * s * s * b[0] + 3 * s * s * t * b[1] + 3 * s * t * t * b[2] + t * t * t * b[3];
}

// Curvature from central differences of positions only.
double fd_curvature(const CubicBezier<double>& b, double t, double h) {
  const V d1 = (point(b, t + h) - point(b, t - h)) / (2 * h);
  const V d2 = (point(b, t + h) - 2 * point(b, t) + point(b, t - h)) / (h * h);
  return std::abs(d1.x() * d2.y() - d1.y() * d2.x()) / std::pow(d1.squaredNorm(), 1.5);
}

CubicBezier<double> random_curve(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> U(-10, 10);
  return {V(U(rng), U(rng)), V(U(rng), U(rng)), V(U(rng), U(rng)), V(U(rng), U(rng))};
}

double sampled_max(const CubicBezier<double>& b, int n) {
  double m = 0;
  for (int i = 0; i <= n; ++i) {
    const double t = static_cast<double>(i) / n;
    const V d1 = b.derivative(t);
    const V d2 = b.second_derivative(t);
    if (d1.norm() < 1e-9) continue;
    m = std::max(m, std::abs(d1.x() * d2.y() - d1.y() * d2.x()) / std::pow(d1.squaredNorm(), 1.5));
  }
  return m;
}

}  // namespace

TEST(Bezier, Endpoints) {
  const CubicBezier<double> b(V(0, 0), V(1, 2), V(3, 2), V(4, 0));
  EXPECT_EQ(b.eval(0), b[0]);
  EXPECT_EQ(b.eval(1), b[3]);
  EXPECT_THROW(b.eval(1.5), Error);
  EXPECT_THROW(b.eval(-0.1), Error);
}

TEST(Bezier, StaysInControlHull) {
  const CubicBezier<double> b(V(0, 0), V(1, 3), V(3, 3), V(4, 0));
  for (int i = 0; i <= 100; ++i) {
    const V p = b.eval(i / 100.0);
    EXPECT_GE(p.y(), -1e-12);
    EXPECT_LE(p.y(), 3 + 1e-12);
  }
}

TEST(Bezier, DerivativesMatchDifferences) {
  std::mt19937_64 rng(51);
  for (int n = 0; n < 50; ++n) {
    const auto b = random_curve(rng);
    for (double t : {0.2, 0.5, 0.77}) {
      const double h = 1e-5;
      EXPECT_LT((b.derivative(t) - (point(b, t + h) - point(b, t - h)) / (2 * h)).norm(), 1e-5);
      EXPECT_LT((b.second_derivative(t) - (b.derivative(t + h) - b.derivative(t - h)) / (2 * h)).norm(), 1e-4);
    }
  }
}

TEST(Bezier, CurvatureMatchesFiniteDifferences) {
  std::mt19937_64 rng(52);
  std::uniform_real_distribution<double> T(0.01, 0.99);
  int checked = 0;
  for (int n = 0; n < 1000; ++n) {
    const auto b = random_curve(rng);
    const double t = T(rng);
    if (b.derivative(t).norm() < 1e-2 * b.extent()) continue;
    const double k = b.curvature(t);
    EXPECT_NEAR(fd_curvature(b, t, 1e-4), k, 1e-4 * k + 1e-12);
    ++checked;
  }
  EXPECT_GT(checked, 900);
}

TEST(Bezier, QuarterCircle) {
  const double c = 4.0 / 3.0 * (std::sqrt(2.0) - 1.0);
  const CubicBezier<double> b(V(1, 0), V(1, c), V(c, 1), V(0, 1));
  // Endpoint curvature of this approximant in closed form: 2(1-c) / (3c^2).
  EXPECT_NEAR(b.curvature(0.0), 2 * (1 - c) / (3 * c * c), 1e-12);
  EXPECT_NEAR(b.curvature(1.0), 2 * (1 - c) / (3 * c * c), 1e-12);
  // Pointwise it wobbles about 2% around the circle; the length-weighted mean is 1.
  double turn = 0, length = 0;
  const int n = 4000;
  for (int i = 0; i < n; ++i) {
    const double t = (i + 0.5) / n;
    const double speed = b.derivative(t).norm() / n;
    turn += b.curvature(t) * speed;
    length += speed;
  }
  EXPECT_NEAR(turn / length, 1.0, 2e-3);
  EXPECT_NEAR(turn, kPi / 2, 1e-6);
  for (int i = 0; i <= 200; ++i) EXPECT_NEAR(b.curvature(i / 200.0), 1.0, 0.025);
  EXPECT_NEAR(max_curvature(b).max_kappa, 1.0, 0.01);
}

TEST(Bezier, SingularPoint) {
  // p1 = p0 makes the velocity vanish at t = 0.
  const CubicBezier<double> b(V(0, 0), V(0, 0), V(1, 1), V(2, 0));
  EXPECT_FALSE(b.is_regular(0));
  EXPECT_THROW(b.curvature(0), Error);
  EXPECT_TRUE(std::isfinite(max_curvature(b).max_kappa));
}

TEST(Bezier, StraightCurveHasZeroCurvature) {
  const CubicBezier<double> b(V(0, 0), V(1, 0), V(2, 0), V(3, 0));
  EXPECT_TRUE(b.is_straight());
  EXPECT_EQ(max_curvature(b).max_kappa, 0.0);
}

TEST(Bezier, MaxCurvatureAtLeastDenseSampling) {
  std::mt19937_64 rng(53);
  for (int n = 0; n < 200; ++n) {
    const auto b = random_curve(rng);
    const auto prof = max_curvature(b);
    const double dense = sampled_max(b, 20000);
    EXPECT_GE(prof.max_kappa, dense * (1 - 1e-6)) << n;
    EXPECT_NEAR(prof.max_kappa, b.curvature_unchecked(prof.max_t), 1e-9 * prof.max_kappa + 1e-12);
  }
}

TEST(Bezier, KinkPeaksInside) {
  // Arms crossing over each other produce a sharp turn mid-curve.
  const CubicBezier<double> b(V(0, 0), V(3, 1), V(0, 1), V(3, 0));
  const auto prof = max_curvature(b, true);
  EXPECT_GT(prof.max_t, 0.2);
  EXPECT_LT(prof.max_t, 0.8);
  EXPECT_GT(prof.max_kappa, 5 * std::max(b.curvature(0), b.curvature(1)));
  EXPECT_EQ(prof.samples.size(), 256u);
}

TEST(Bezier, SplitAndSegment) {
  std::mt19937_64 rng(54);
  const auto b = random_curve(rng);
  const auto [l, r] = b.split(0.3);
  EXPECT_LT((l.eval(1) - b.eval(0.3)).norm(), 1e-12);
  EXPECT_LT((r.eval(0.5) - b.eval(0.65)).norm(), 1e-12);
  const auto s = b.segment(0.2, 0.6);
  EXPECT_LT((s.eval(0) - b.eval(0.2)).norm(), 1e-12);
  EXPECT_LT((s.eval(1) - b.eval(0.6)).norm(), 1e-12);
  EXPECT_LT((s.eval(0.5) - b.eval(0.4)).norm(), 1e-12);
}

TEST(Bezier, ArcLengthOfQuarterCircle) {
  const double c = 4.0 / 3.0 * (std::sqrt(2.0) - 1.0);
  const CubicBezier<double> b(V(1, 0), V(1, c), V(c, 1), V(0, 1));
  EXPECT_NEAR(b.arc_length(), kPi / 2, 1e-3);
}

TEST(Bezier, FloatInstantiation) {
  using F = Vec2<float>;
  const CubicBezier<float> b(F(0, 0), F(1, 1), F(2, 1), F(3, 0));
  EXPECT_NEAR(b.eval(0.5f).x(), 1.5f, 1e-6f);
  EXPECT_GT(max_curvature(b).max_kappa, 0.0f);
}

TEST(Bezier, EdgeCurveTangents) {
  const auto b = edge_curve<double>(V(0, 0), V(4, 0), V(0, 1), V(0, 1), 1.5, 2.0);
  EXPECT_EQ(b[1], V(0, 1.5));
  EXPECT_EQ(b[2], V(4, 2.0));
}

TEST(Optimizer, BeatsExhaustiveGrid) {
  std::mt19937_64 rng(55);
  std::uniform_real_distribution<double> U(-1, 1), A(-kPi / 3, kPi / 3);
  for (int n = 0; n < 12; ++n) {
    const V u(U(rng), U(rng));
    const V v = u + V(3 + U(rng), U(rng));
    const double ax = std::atan2((v - u).y(), (v - u).x());
    const double au = ax + A(rng), av = ax + kPi + A(rng);
    const V du(std::cos(au), std::sin(au)), dv(std::cos(av), std::sin(av));
    const double eps = 0.75 * (v - u).norm();
    const auto sol = optimize_arm_lengths(u, v, du, dv, eps, eps);
    EXPECT_LE(sol.lambda_u, eps);
    EXPECT_LE(sol.lambda_v, eps);
    double grid = 1e300;
    for (int i = 1; i <= 60; ++i)
      for (int j = 1; j <= 60; ++j)
        grid = std::min(grid, sampled_max(edge_curve<double>(u, v, du, dv, eps * i / 60, eps * j / 60), 512));
    EXPECT_LE(sol.kappa_star_min, grid * 1.01) << n;
  }
}

TEST(Optimizer, FacingArmsGiveStraightLine) {
  const auto sol = optimize_arm_lengths(V(0, 0), V(3, 0), V(1, 0), V(-1, 0), 2.25, 2.25);
  EXPECT_EQ(sol.kappa_star_min, 0.0);
  EXPECT_DOUBLE_EQ(sol.lambda_u, 1.0);
  EXPECT_DOUBLE_EQ(sol.lambda_v, 1.0);
}

TEST(Optimizer, RejectsBadBounds) {
  EXPECT_THROW(optimize_arm_lengths(V(0, 0), V(1, 0), V(0, 1), V(0, 1), 0.0, 1.0), Error);
  EXPECT_THROW(optimize_arm_lengths(V(0, 0), V(0, 0), V(0, 1), V(1, 0), 1.0, 1.0), Error);
}

TEST(Optimizer, Deterministic) {
  const auto a = optimize_arm_lengths(V(0, 0), V(2, 1), V(0, 1), V(1, 0), 1.5, 1.5);
  const auto b = optimize_arm_lengths(V(0, 0), V(2, 1), V(0, 1), V(1, 0), 1.5, 1.5);
  EXPECT_EQ(a.lambda_u, b.lambda_u);
  EXPECT_EQ(a.lambda_v, b.lambda_v);
}
