#pragma once

#include <optional>
#include <vector>

#include <Eigen/Core>

#include "celtic/embedding.hpp"
#include "celtic/graph.hpp"

namespace celtic {

using Point = Eigen::Vector2d;

struct Layout {
  std::vector<Point> positions;
  /// Optional initial direction per dart; needed for loops and for parallel
  /// edges whose straight-line directions coincide.
  std::vector<std::optional<Point>> direction_hint;

  std::optional<Point> hint(DartId d) const {
    if (d < 0 || d >= static_cast<DartId>(direction_hint.size())) return std::nullopt;
    return direction_hint[d];
  }
};

struct TutteOptions {
  double radius = 100.0;
  double min_separation = 1e-6;
};

/// Barycentric layout of the simple skeleton (loops dropped, parallel edges
/// merged) with the outer face pinned to a convex polygon. Components are
/// laid out side by side. Throws SINGULAR_SYSTEM.
Layout tutte_layout(const PlaneMultigraph& g, int outer_face_index, const TutteOptions& options = {});
Layout tutte_layout(const PlaneMultigraph& g, const TutteOptions& options = {});

/// Largest residual of the barycentric equations at free vertices.
double tutte_residual(const PlaneMultigraph& g, const Layout& layout, const std::vector<char>& pinned);

/// Rotation system from straight-line (or hinted) initial directions.
/// Throws AMBIGUOUS_ROTATION when two darts at a vertex leave at the same angle.
PlaneMultigraph rotation_from_coordinates(const AbstractGraph& g, const Layout& layout);

/// Pairs of vertices closer than `min_separation`.
std::vector<std::pair<VertexId, VertexId>> coincident_vertices(const Layout& layout, double min_separation);

/// Proper crossings between straight skeleton edges that share no endpoint.
int count_skeleton_crossings(const PlaneMultigraph& g, const Layout& layout);

/// Counterclockwise angle of the initial direction of d: the hint if present,
/// otherwise the straight segment toward head(d). Empty for loops without a
/// hint and for zero-length edges.
std::optional<double> dart_angle(const PlaneMultigraph& g, const Layout& layout, DartId d);

}  // namespace celtic
