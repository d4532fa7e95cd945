#include "celtic/crosses.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "celtic/bezier.hpp"

namespace celtic {

namespace {

constexpr double kPi = std::numbers::pi;

double wrap_pi(double x) {
  // (-π, π]
  double r = std::remainder(x, 2 * kPi);
  if (r <= -kPi) r += 2 * kPi;
  return r;
}

double wrap_two_pi(double x) {
  double r = std::fmod(x, 2 * kPi);
  if (r < 0) r += 2 * kPi;
  if (r >= 2 * kPi) r = 0.0;
  return r;
}

}  // namespace

int Cross::arm_of(DartId d) const {
  for (int i = 0; i < 4; ++i)
    if (dart_of_arm[i] == d) return i;
  return -1;
}

Point Cross::arm_direction(int arm) const {
  const double a = theta + arm * kPi / 2;
  return {std::cos(a), std::sin(a)};
}

ArmLengthStrategy parse_strategy(const std::string& text) {
  const auto colon = text.find(':');
  const std::string name = text.substr(0, colon);
  auto number = [&]() {
    if (colon == std::string::npos) throw Error(ErrorCode::Parse, "strategy '" + name + "' needs a value");
    std::size_t used = 0;
    double value = 0.0;
    try {
      value = std::stod(text.substr(colon + 1), &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != text.size() - colon - 1) throw Error(ErrorCode::Parse, "bad strategy value in '" + text + "'");
    return value;
  };
  if (name == "uniform") {
    const double lambda = number();
    if (!(lambda > 0)) throw Error(ErrorCode::Parse, "uniform arm length must be positive");
    return UniformArms{lambda};
  }
  if (name == "proportional") {
    const double alpha = number();
    if (!(alpha > 0 && alpha < 1)) throw Error(ErrorCode::Parse, "proportional factor must lie in (0, 1)");
    return ProportionalArms{alpha};
  }
  if (name == "optimal") {
    if (colon == std::string::npos) return OptimalArms{};
    const double factor = number();
    if (!(factor > 0)) throw Error(ErrorCode::Parse, "optimal bound factor must be positive");
    return OptimalArms{factor};
  }
  throw Error(ErrorCode::Parse, "unknown strategy '" + text + "'");
}

std::string to_string(const ArmLengthStrategy& strategy) {
  std::ostringstream out;
  out.precision(17);
  std::visit(
      [&](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, UniformArms>) out << "uniform:" << s.lambda;
        else if constexpr (std::is_same_v<T, ProportionalArms>) out << "proportional:" << s.alpha;
        else if (s.bound_factor == 0.75) out << "optimal";
        else out << "optimal:" << s.bound_factor;
      },
      strategy);
  return out.str();
}

std::array<DartId, 4> edge_arm_mapping(const PlaneMultigraph& g, VertexId u) { return g.rotation(u); }

double rotation_objective(double theta, const std::array<double, 4>& phis) {
  double f = 0.0;
  for (int i = 0; i < 4; ++i) {
    const double r = wrap_pi(theta + i * kPi / 2 - phis[i]);
    f += r * r;
  }
  return f;
}

double optimal_rotation(const std::array<double, 4>& phis) {
  // Stationary points of the unwrapped objective differ by the branch of each
  // angle; modulo 2π they are the four quarter turns of the closed form.
  const double base = 0.25 * (phis[0] + phis[1] + phis[2] + phis[3]) - 3 * kPi / 4;
  double best_theta = 0.0, best_f = 0.0;
  bool first = true;
  for (int j = 0; j < 4; ++j) {
    const double theta = wrap_two_pi(base + j * kPi / 2);
    const double f = rotation_objective(theta, phis);
    const double tol = 1e-12 * (1.0 + std::abs(best_f));
    if (first || f < best_f - tol || (std::abs(f - best_f) <= tol && theta < best_theta)) {
      best_theta = theta;
      best_f = f;
      first = false;
    }
  }
  return best_theta;
}

std::array<double, 4> slot_angles(const PlaneMultigraph& g, const Layout& layout, VertexId u) {
  std::array<std::optional<double>, 4> known;
  int count = 0;
  for (int s = 0; s < 4; ++s) {
    known[s] = dart_angle(g, layout, g.at(u, s));
    count += known[s].has_value();
  }
  std::array<double, 4> phis{};
  if (count == 0) {
    for (int s = 0; s < 4; ++s) phis[s] = s * kPi / 2;
    return phis;
  }
  for (int s = 0; s < 4; ++s) {
    if (known[s]) {
      phis[s] = *known[s];
      continue;
    }
    int before = s, behind = 0;
    while (!known[before]) {
      before = (before + 3) & 3;
      ++behind;
    }
    int after = s, ahead = 0;
    while (!known[after]) {
      after = (after + 1) & 3;
      ++ahead;
    }
    double gap = *known[after] - *known[before];
    while (gap <= 0) gap += 2 * kPi;
    phis[s] = *known[before] + gap * behind / (behind + ahead);
  }
  return phis;
}

double reference_length(const PlaneMultigraph& g, const Layout& layout, EdgeId e) {
  const auto& pos = layout.positions;
  if (!g.is_loop(e)) return (pos[g.ends(e)[1].vertex] - pos[g.ends(e)[0].vertex]).norm();
  const VertexId u = g.ends(e)[0].vertex;
  double sum = 0.0;
  int count = 0;
  for (DartId d : g.rotation(u))
    if (!g.is_loop(edge_of(d))) {
      sum += (pos[g.head(d)] - pos[u]).norm();
      ++count;
    }
  if (count == 0)
    for (EdgeId f = 0; f < g.edge_count(); ++f)
      if (!g.is_loop(f)) {
        sum += reference_length(g, layout, f);
        ++count;
      }
  // Half the neighbouring edge length keeps the teardrop inside its face.
  return count > 0 && sum > 0 ? 0.5 * sum / count : 0.5;
}

std::vector<Cross> build_crosses(const PlaneMultigraph& g, const Layout& layout, const ArmLengthStrategy& strategy,
                                 std::vector<EdgeArms>* per_edge) {
  std::vector<Cross> crosses(g.vertex_count());
  for (VertexId u = 0; u < g.vertex_count(); ++u) {
    auto& c = crosses[u];
    c.vertex = u;
    c.dart_of_arm = edge_arm_mapping(g, u);
    c.theta = optimal_rotation(slot_angles(g, layout, u));
  }

  std::vector<EdgeArms> arms(g.edge_count());
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    const DartId du = dart_of(e, 0), dv = dart_of(e, 1);
    const auto& cu = crosses[g.origin(du)];
    const auto& cv = crosses[g.origin(dv)];
    const Point u = layout.positions[g.origin(du)], v = layout.positions[g.origin(dv)];
    const Point dir_u = cu.arm_direction(cu.arm_of(du)), dir_v = cv.arm_direction(cv.arm_of(dv));
    const double ref = reference_length(g, layout, e);
    auto& a = arms[e];
    std::visit(
        [&](const auto& s) {
          using T = std::decay_t<decltype(s)>;
          if constexpr (std::is_same_v<T, UniformArms>) {
            a.lambda_u = a.lambda_v = s.lambda;
          } else if constexpr (std::is_same_v<T, ProportionalArms>) {
            a.lambda_u = a.lambda_v = s.alpha * ref;
          } else {
            const double eps = s.bound_factor * ref;
            const auto sol = optimize_arm_lengths(u, v, dir_u, dir_v, eps, eps, ref);
            a.lambda_u = sol.lambda_u;
            a.lambda_v = sol.lambda_v;
          }
        },
        strategy);
    a.kappa_star = max_curvature_for(u, v, dir_u, dir_v, a.lambda_u, a.lambda_v);
    crosses[g.origin(du)].arm_length[cu.arm_of(du)] = a.lambda_u;
    crosses[g.origin(dv)].arm_length[cv.arm_of(dv)] = a.lambda_v;
  }
  if (per_edge) *per_edge = std::move(arms);
  return crosses;
}

}  // namespace celtic
