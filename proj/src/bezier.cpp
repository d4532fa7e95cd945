#include "celtic/bezier.hpp"

#include <cmath>

namespace celtic {

double max_curvature_for(const Vec2<double>& u, const Vec2<double>& v, const Vec2<double>& dir_u,
                         const Vec2<double>& dir_v, double lambda_u, double lambda_v) {
  return max_curvature(edge_curve(u, v, dir_u, dir_v, lambda_u, lambda_v)).max_kappa;
}

namespace {

struct Candidate {
  double lu = 0.0, lv = 0.0, kappa = 0.0;
};

// Lower κ* wins; within a relative 1e-12 the shorter arms win.
bool better(const Candidate& a, const Candidate& b) {
  const double tol = 1e-12 * std::max(a.kappa, b.kappa);
  if (a.kappa < b.kappa - tol) return true;
  if (b.kappa < a.kappa - tol) return false;
  return a.lu + a.lv < b.lu + b.lv;
}

}  // namespace

ArmLengthSolution optimize_arm_lengths(const Vec2<double>& u, const Vec2<double>& v, const Vec2<double>& dir_u,
                                       const Vec2<double>& dir_v, double eps_u, double eps_v,
                                       double reference_length, const ArmLengthOptimizerOptions& options) {
  if (!(eps_u > 0.0) || !(eps_v > 0.0)) throw Error(ErrorCode::Domain, "arm length bounds must be positive");
  const double chord = (v - u).norm();
  const double ref = reference_length > 0.0 ? reference_length : chord;
  if (!(ref > 0.0)) throw Error(ErrorCode::Domain, "loop edges need a reference length");

  // Facing arms along the chord: every choice is a straight line.
  if (chord > 0.0) {
    const Vec2<double> axis = (v - u) / chord;
    if ((dir_u - axis).norm() < 1e-12 && (dir_v + axis).norm() < 1e-12)
      return {std::min(chord / 3.0, eps_u), std::min(chord / 3.0, eps_v), 0.0};
  }

  auto score = [&](double lu, double lv) {
    return Candidate{lu, lv, max_curvature_for(u, v, dir_u, dir_v, lu, lv)};
  };
  auto axis_values = [&](double eps) {
    std::vector<double> values;
    const double lo = std::min(options.grid_low * ref, eps);
    for (int i = 0; i < options.grid; ++i) {
      const double f = options.grid > 1 ? static_cast<double>(i) / (options.grid - 1) : 1.0;
      values.push_back(lo * std::pow(eps / lo, f));
    }
    return values;
  };

  std::vector<Candidate> pool;
  for (double lu : axis_values(eps_u))
    for (double lv : axis_values(eps_v)) pool.push_back(score(lu, lv));
  // The uniformly proportional choices are always admissible starting points.
  for (double alpha : {1.0 / 3.0, 0.5}) pool.push_back(score(std::min(alpha * ref, eps_u), std::min(alpha * ref, eps_v)));
  std::sort(pool.begin(), pool.end(), better);

  // Pattern search in eight directions from the best grid points; the step
  // halves whenever no neighbour improves.
  const double lo_u = std::min(options.refine_low * ref, eps_u);
  const double lo_v = std::min(options.refine_low * ref, eps_v);
  Candidate best = pool.front();
  const int starts = std::min<int>(options.refine_starts, static_cast<int>(pool.size()));
  for (int s = 0; s < starts; ++s) {
    Candidate cur = pool[s];
    double step_u = (eps_u - lo_u) / options.grid;
    double step_v = (eps_v - lo_v) / options.grid;
    for (int iter = 0; iter < 400 && std::max(step_u, step_v) > options.refine_tolerance * ref; ++iter) {
      Candidate next = cur;
      for (int du = -1; du <= 1; ++du)
        for (int dv = -1; dv <= 1; ++dv) {
          if (du == 0 && dv == 0) continue;
          const double lu = std::clamp(cur.lu + du * step_u, lo_u, eps_u);
          const double lv = std::clamp(cur.lv + dv * step_v, lo_v, eps_v);
          const Candidate c = score(lu, lv);
          if (better(c, next)) next = c;
        }
      if (better(next, cur)) {
        cur = next;
      } else {
        step_u *= 0.5;
        step_v *= 0.5;
      }
    }
    if (better(cur, best)) best = cur;
  }
  return {best.lu, best.lv, best.kappa};
}

}  // namespace celtic
