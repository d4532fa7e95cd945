#pragma once

#include <string>
#include <vector>

#include "json.hpp"

#include "celtic/bezier.hpp"
#include "celtic/crosses.hpp"
#include "celtic/threading.hpp"

namespace celtic {

using Curve = CubicBezier<double>;

/// Everything needed to draw the knot. Curve e runs from origin(2e) to
/// origin(2e+1).
struct KnotDrawing {
  PlaneMultigraph graph;
  Layout layout;
  CircuitPartition circuits;
  UnderOverAssignment under_over;
  std::vector<Cross> crosses;
  std::vector<EdgeArms> arms;
  std::vector<Curve> edges;
  std::string strategy;
};

struct RenderStyle {
  double strand_width = 0.0;  // drawing units; 0 picks 4% of the mean edge length
  double gap_width = 0.0;     // drawing units; 0 picks 2.2 × strand_width
  std::vector<std::string> palette{"#1b4f72", "#b03a2e", "#1e8449", "#b9770e",
                                   "#6c3483", "#117a65", "#a04000", "#2e4053"};
  std::string background = "#fdfaf2";
  double scale = 0.0;  // pixels per unit; 0 fits the longer side to 800 px
};

KnotDrawing assemble_drawing(const PlaneMultigraph& g, const Layout& layout, const CircuitPartition& partition,
                             const UnderOverAssignment& assignment, std::vector<Cross> crosses,
                             std::vector<EdgeArms> arms = {}, std::string strategy = {});

/// Unit control tangent of dart d at its origin (pointing into the edge).
Point control_tangent(const KnotDrawing& drawing, DartId d);

/// Largest |t_in + t_out| over all threads, where t_in and t_out are the
/// unit control tangents of the two thread edges at the shared vertex.
double max_c1_error(const KnotDrawing& drawing);

/// True when the thread containing dart d at origin(d) passes over there.
bool passes_over(const KnotDrawing& drawing, DartId d);

/// Curve intersections away from the shared vertices, found on flattened
/// curves. A correct drawing has none; the pipeline reports them as warnings.
int extra_crossings(const KnotDrawing& drawing, double flatten_tolerance = 1e-3);

std::string render_svg(const KnotDrawing& drawing, const RenderStyle& style = {});

inline constexpr const char* kInterchangeSchema = "celticgraph.knot";
inline constexpr const char* kInterchangeVersion = "1";

nlohmann::json export_interchange(const KnotDrawing& drawing);

/// Control points per edge from an interchange document. Throws PARSE.
std::vector<Curve> import_interchange(const nlohmann::json& doc);

}  // namespace celtic
