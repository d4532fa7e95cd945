#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "celtic/graph.hpp"

namespace celtic {

template <class Scalar>
using Vec2 = Eigen::Matrix<Scalar, 2, 1>;

template <class Scalar>
Scalar cross2(const Vec2<Scalar>& a, const Vec2<Scalar>& b) {
  return a.x() * b.y() - a.y() * b.x();
}

/// Cubic Bézier curve in Bernstein form.
template <class Scalar>
class CubicBezier {
 public:
  using Vec = Vec2<Scalar>;

  CubicBezier() : p_{Vec::Zero(), Vec::Zero(), Vec::Zero(), Vec::Zero()} {}
  CubicBezier(const Vec& p0, const Vec& p1, const Vec& p2, const Vec& p3) : p_{p0, p1, p2, p3} {}

  const Vec& operator[](int i) const { return p_[i]; }
  Vec& operator[](int i) { return p_[i]; }
  const std::array<Vec, 4>& points() const { return p_; }

  Vec eval(Scalar t) const {
    if (!(t >= Scalar(0) && t <= Scalar(1))) throw Error(ErrorCode::Domain, "Bezier parameter outside [0, 1]");
    const Scalar s = Scalar(1) - t;
    return s * s * s * p_[0] + Scalar(3) * s * s * t * p_[1] + Scalar(3) * s * t * t * p_[2] + t * t * t * p_[3];
  }

  Vec derivative(Scalar t) const {
    const Scalar s = Scalar(1) - t;
    return Scalar(3) * (s * s * (p_[1] - p_[0]) + Scalar(2) * s * t * (p_[2] - p_[1]) + t * t * (p_[3] - p_[2]));
  }

  Vec second_derivative(Scalar t) const {
    const Scalar s = Scalar(1) - t;
    return Scalar(6) * (s * (p_[2] - Scalar(2) * p_[1] + p_[0]) + t * (p_[3] - Scalar(2) * p_[2] + p_[1]));
  }

  Vec third_derivative() const { return Scalar(6) * (p_[3] - Scalar(3) * p_[2] + Scalar(3) * p_[1] - p_[0]); }

  /// Largest distance between control points; the curve's length scale.
  Scalar extent() const {
    Scalar e(0);
    for (int i = 0; i < 4; ++i)
      for (int j = i + 1; j < 4; ++j) e = std::max(e, (p_[i] - p_[j]).norm());
    return e;
  }

  bool is_regular(Scalar t) const {
    const Scalar tol = Scalar(1e-12) * extent();
    return derivative(t).squaredNorm() > tol * tol;
  }

  /// κ(t) = |x'y'' - x''y'| / (x'^2 + y'^2)^1.5. Throws SINGULAR_POINT where
  /// the velocity vanishes.
  Scalar curvature(Scalar t) const {
    if (!(t >= Scalar(0) && t <= Scalar(1))) throw Error(ErrorCode::Domain, "Bezier parameter outside [0, 1]");
    if (!is_regular(t)) throw Error(ErrorCode::SingularPoint, "velocity vanishes");
    return curvature_unchecked(t);
  }

  Scalar curvature_unchecked(Scalar t) const {
    const Vec d1 = derivative(t);
    const Vec d2 = second_derivative(t);
    const Scalar speed2 = d1.squaredNorm();
    return std::abs(cross2(d1, d2)) / (speed2 * std::sqrt(speed2));
  }

  /// All four control points on one line.
  bool is_straight() const {
    const Scalar scale = extent();
    if (scale == Scalar(0)) return true;
    int far = 1;
    for (int i = 2; i < 4; ++i)
      if ((p_[i] - p_[0]).norm() > (p_[far] - p_[0]).norm()) far = i;
    const Vec axis = (p_[far] - p_[0]).normalized();
    for (int i = 1; i < 4; ++i)
      if (std::abs(cross2<Scalar>(axis, p_[i] - p_[0])) > Scalar(1e-12) * scale) return false;
    return true;
  }

  /// The piece of the curve between parameters t0 < t1, reparameterized to [0, 1].
  CubicBezier segment(Scalar t0, Scalar t1) const {
    if (t1 <= Scalar(0)) return CubicBezier(p_[0], p_[0], p_[0], p_[0]);
    return split(t1).first.split(t0 / t1).second;
  }

  std::pair<CubicBezier, CubicBezier> split(Scalar t) const {
    const Vec a = lerp(p_[0], p_[1], t), b = lerp(p_[1], p_[2], t), c = lerp(p_[2], p_[3], t);
    const Vec ab = lerp(a, b, t), bc = lerp(b, c, t);
    const Vec mid = lerp(ab, bc, t);
    return {CubicBezier(p_[0], a, ab, mid), CubicBezier(mid, bc, c, p_[3])};
  }

  /// Polyline approximation of arc length.
  Scalar arc_length(int segments = 1024) const {
    Scalar total(0);
    Vec prev = p_[0];
    for (int i = 1; i <= segments; ++i) {
      const Vec cur = eval(Scalar(i) / Scalar(segments));
      total += (cur - prev).norm();
      prev = cur;
    }
    return total;
  }

  template <class Transform>
  CubicBezier transformed(Transform f) const {
    return CubicBezier(f(p_[0]), f(p_[1]), f(p_[2]), f(p_[3]));
  }

 private:
  static Vec lerp(const Vec& a, const Vec& b, Scalar t) { return a + t * (b - a); }

  std::array<Vec, 4> p_;
};

template <class Scalar>
struct CurvatureProfile {
  std::vector<std::pair<Scalar, Scalar>> samples;  // (t, κ(t))
  Scalar max_t = Scalar(0);
  Scalar max_kappa = Scalar(0);
};

namespace detail {

// κ at t, or the one-sided limit sample next to a singular point.
template <class Scalar>
Scalar kappa_or_limit(const CubicBezier<Scalar>& b, Scalar t) {
  if (b.is_regular(t)) return b.curvature_unchecked(t);
  for (Scalar h : {Scalar(1e-9), Scalar(1e-7), Scalar(1e-5)}) {
    const Scalar probe = t + (t < Scalar(0.5) ? h : -h);
    if (b.is_regular(probe)) return b.curvature_unchecked(probe);
  }
  return Scalar(0);
}

template <class Scalar>
std::pair<Scalar, Scalar> golden_max(const CubicBezier<Scalar>& b, Scalar lo, Scalar hi) {
  const Scalar ratio = Scalar(0.5) * (std::sqrt(Scalar(5)) - Scalar(1));
  Scalar x1 = hi - ratio * (hi - lo), x2 = lo + ratio * (hi - lo);
  Scalar f1 = kappa_or_limit(b, x1), f2 = kappa_or_limit(b, x2);
  for (int i = 0; i < 60 && hi - lo > Scalar(1e-13); ++i) {
    if (f1 < f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + ratio * (hi - lo);
      f2 = kappa_or_limit(b, x2);
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - ratio * (hi - lo);
      f1 = kappa_or_limit(b, x1);
    }
  }
  return f1 >= f2 ? std::pair{x1, f1} : std::pair{x2, f2};
}

}  // namespace detail

/// Maximum curvature over t in [0, 1]: 256 uniform samples, then golden
/// section refinement around the three largest local maxima. Straight
/// curves report zero.
template <class Scalar>
CurvatureProfile<Scalar> max_curvature(const CubicBezier<Scalar>& b, bool keep_samples = false) {
  constexpr int kSamples = 256;
  CurvatureProfile<Scalar> profile;
  if (b.is_straight()) return profile;

  std::array<Scalar, kSamples> kappa{};
  for (int i = 0; i < kSamples; ++i) kappa[i] = detail::kappa_or_limit(b, Scalar(i) / Scalar(kSamples - 1));
  if (keep_samples)
    for (int i = 0; i < kSamples; ++i) profile.samples.emplace_back(Scalar(i) / Scalar(kSamples - 1), kappa[i]);

  std::vector<int> peaks;
  for (int i = 0; i < kSamples; ++i) {
    const bool left = i == 0 || kappa[i] >= kappa[i - 1];
    const bool right = i == kSamples - 1 || kappa[i] >= kappa[i + 1];
    if (left && right) peaks.push_back(i);
  }
  std::sort(peaks.begin(), peaks.end(), [&](int a, int c) { return kappa[a] > kappa[c]; });
  if (peaks.size() > 3) peaks.resize(3);

  for (int i = 0; i < kSamples; ++i)
    if (kappa[i] > profile.max_kappa) {
      profile.max_kappa = kappa[i];
      profile.max_t = Scalar(i) / Scalar(kSamples - 1);
    }
  for (int i : peaks) {
    const Scalar lo = Scalar(std::max(i - 1, 0)) / Scalar(kSamples - 1);
    const Scalar hi = Scalar(std::min(i + 1, kSamples - 1)) / Scalar(kSamples - 1);
    const auto [t, k] = detail::golden_max(b, lo, hi);
    if (k > profile.max_kappa) {
      profile.max_kappa = k;
      profile.max_t = t;
    }
  }
  return profile;
}

/// Edge curve from u to v whose control tangents follow the given unit
/// directions: p1 = u + λ_u·dir_u, p2 = v + λ_v·dir_v.
template <class Scalar>
CubicBezier<Scalar> edge_curve(const Vec2<Scalar>& u, const Vec2<Scalar>& v, const Vec2<Scalar>& dir_u,
                               const Vec2<Scalar>& dir_v, Scalar lambda_u, Scalar lambda_v) {
  return CubicBezier<Scalar>(u, u + lambda_u * dir_u, v + lambda_v * dir_v, v);
}

struct ArmLengthSolution {
  double lambda_u = 0.0;
  double lambda_v = 0.0;
  double kappa_star_min = 0.0;
};

struct ArmLengthOptimizerOptions {
  int grid = 16;
  double grid_low = 0.05;     // fraction of the reference length
  double refine_low = 1e-3;   // lower bound while refining, same units
  int refine_starts = 6;
  double refine_tolerance = 1e-6;
};

/// Arm lengths minimizing the maximum curvature subject to λ_u ≤ eps_u and
/// λ_v ≤ eps_v. `reference_length` sets the scale of the search grid; it
/// defaults to |v - u| and must be given for loops.
ArmLengthSolution optimize_arm_lengths(const Vec2<double>& u, const Vec2<double>& v, const Vec2<double>& dir_u,
                                       const Vec2<double>& dir_v, double eps_u, double eps_v,
                                       double reference_length = 0.0, const ArmLengthOptimizerOptions& options = {});

/// κ* of the edge curve for the given arm lengths.
double max_curvature_for(const Vec2<double>& u, const Vec2<double>& v, const Vec2<double>& dir_u,
                         const Vec2<double>& dir_v, double lambda_u, double lambda_v);

}  // namespace celtic
