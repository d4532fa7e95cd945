#pragma once

#include <array>
#include <string>
#include <variant>
#include <vector>

#include "celtic/layout.hpp"

namespace celtic {

/// Four orthogonal arms at a vertex. Arm i points along theta + i·π/2 and
/// carries the dart in rotation slot i, so the two darts of every thread
/// sit on opposite arms.
struct Cross {
  VertexId vertex = 0;
  double theta = 0.0;
  std::array<DartId, 4> dart_of_arm{kNoDart, kNoDart, kNoDart, kNoDart};
  std::array<double, 4> arm_length{};

  int arm_of(DartId d) const;
  Point arm_direction(int arm) const;
};

struct UniformArms {
  double lambda = 1.0;
};
struct ProportionalArms {
  double alpha = 0.5;
};
struct OptimalArms {
  double bound_factor = 0.75;  // ε = bound_factor · d(u, v)
};
using ArmLengthStrategy = std::variant<UniformArms, ProportionalArms, OptimalArms>;

/// "uniform:<λ>", "proportional:<α>" or "optimal". Throws PARSE.
ArmLengthStrategy parse_strategy(const std::string& text);
std::string to_string(const ArmLengthStrategy& strategy);

std::array<DartId, 4> edge_arm_mapping(const PlaneMultigraph& g, VertexId u);

/// Σ circ(θ + iπ/2 - φ_i)², residuals wrapped to (-π, π].
double rotation_objective(double theta, const std::array<double, 4>& phis);

/// Minimizer of rotation_objective in [0, 2π).
double optimal_rotation(const std::array<double, 4>& phis);

/// Angles of the darts in slots 0..3 at u. Loops without direction hints
/// get angles spread evenly between their known neighbours.
std::array<double, 4> slot_angles(const PlaneMultigraph& g, const Layout& layout, VertexId u);

/// d(u, v) for ordinary edges; for loops half the mean length of the other
/// edges at the vertex (or of the whole drawing).
double reference_length(const PlaneMultigraph& g, const Layout& layout, EdgeId e);

struct EdgeArms {
  double lambda_u = 0.0;   // at origin(2e)
  double lambda_v = 0.0;   // at origin(2e+1)
  double kappa_star = 0.0;
};

std::vector<Cross> build_crosses(const PlaneMultigraph& g, const Layout& layout, const ArmLengthStrategy& strategy,
                                 std::vector<EdgeArms>* per_edge = nullptr);

}  // namespace celtic
