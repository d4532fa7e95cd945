#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "celtic/graph_io.hpp"
#include "celtic/render.hpp"

namespace celtic {

struct PipelineConfig {
  std::string strategy = "optimal";
  RenderStyle style;
  std::uint64_t seed = 1;
  std::optional<int> outer_face;  // index into trace_faces; default keeps the file's marker
  std::string svg_path;
  std::string export_path;
};

/// Reads a PipelineConfig from JSON; unknown keys are rejected. Throws PARSE.
PipelineConfig config_from_json(const nlohmann::json& j);

/// Carries the full report when validation fails.
class ValidationFailure : public Error {
 public:
  explicit ValidationFailure(ValidationReport report);
  const ValidationReport& report() const { return report_; }

 private:
  ValidationReport report_;
};

/// Validates or throws ValidationFailure.
void require_valid(const PlaneMultigraph& g);

/// Positions from the file, otherwise Tutte. Throws LAYOUT for coincident vertices.
Layout resolve_layout(const GraphDocument& doc, std::optional<int> outer_face = std::nullopt);

struct PipelineResult {
  Layout layout;
  KnotDrawing drawing;
  int extra_crossings = 0;
  std::vector<std::string> warnings;
};

/// Steps (a) to (d): validate, lay out, thread, build the curves.
PipelineResult run_pipeline(const GraphDocument& doc, const PipelineConfig& config);

/// Same, starting from a layout the caller already has.
PipelineResult run_pipeline(const PlaneMultigraph& g, const Layout& layout, const ArmLengthStrategy& strategy);

struct EdgeStats {
  EdgeId edge = 0;
  double reference = 0.0;   // d(u, v), or the loop substitute
  double lambda_u = 0.0, lambda_v = 0.0;
  double kappa_star = 0.0;
  double arc_length = 0.0;
};

std::vector<EdgeStats> edge_stats(const KnotDrawing& drawing);
nlohmann::json stats_json(const KnotDrawing& drawing);
std::string stats_table(const KnotDrawing& drawing);

/// Report shared by the CLI `thread` command and the service.
nlohmann::json thread_report(const PlaneMultigraph& g, const CircuitPartition& p);

/// 1 parse, 2 validation, 3 layout, 4 internal.
int exit_code_for(ErrorCode code);

nlohmann::json validation_json(const ValidationReport& report);

/// The exact bytes written by the CLI and served by the API.
std::string interchange_text(const KnotDrawing& drawing);

}  // namespace celtic
