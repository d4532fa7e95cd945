#include "celtic/pipeline.hpp"

#include <cstdio>
#include <sstream>

namespace celtic {

using nlohmann::json;

PipelineConfig config_from_json(const json& j) {
  if (!j.is_object()) throw Error(ErrorCode::Parse, "config must be an object");
  PipelineConfig c;
  try {
    for (const auto& [key, value] : j.items()) {
      if (key == "strategy") c.strategy = value.get<std::string>();
      else if (key == "seed") c.seed = value.get<std::uint64_t>();
      else if (key == "outer_face") c.outer_face = value.get<int>();
      else if (key == "svg") c.svg_path = value.get<std::string>();
      else if (key == "export") c.export_path = value.get<std::string>();
      else if (key == "style") {
        for (const auto& [sk, sv] : value.items()) {
          if (sk == "strand_width") c.style.strand_width = sv.get<double>();
          else if (sk == "gap_width") c.style.gap_width = sv.get<double>();
          else if (sk == "palette") c.style.palette = sv.get<std::vector<std::string>>();
          else if (sk == "background") c.style.background = sv.get<std::string>();
          else if (sk == "scale") c.style.scale = sv.get<double>();
          else throw Error(ErrorCode::Parse, "unknown style key '" + sk + "'");
        }
      } else {
        throw Error(ErrorCode::Parse, "unknown config key '" + key + "'");
      }
    }
  } catch (const json::exception& ex) {
    throw Error(ErrorCode::Parse, std::string("config: ") + ex.what());
  }
  parse_strategy(c.strategy);
  if (c.style.strand_width > 0 && c.style.gap_width > 0 && !(c.style.gap_width > c.style.strand_width))
    throw Error(ErrorCode::Parse, "gap_width must exceed strand_width");
  return c;
}

namespace {
std::string summarize(const ValidationReport& r) {
  std::string s = "graph is invalid";
  if (!r.violations.empty()) s += ": " + r.violations.front().code + " at " + r.violations.front().locus;
  return s;
}
}  // namespace

ValidationFailure::ValidationFailure(ValidationReport report)
    : Error(ErrorCode::InvalidGraph, summarize(report)), report_(std::move(report)) {}

void require_valid(const PlaneMultigraph& g) {
  auto report = validate_graph(g);
  if (!report.ok) throw ValidationFailure(std::move(report));
}

Layout resolve_layout(const GraphDocument& doc, std::optional<int> outer_face) {
  Layout layout;
  if (doc.has_positions && !outer_face) {
    layout = doc.layout;
  } else if (outer_face) {
    const auto faces = trace_faces(doc.graph);
    if (*outer_face < 0 || *outer_face >= static_cast<int>(faces.size()))
      throw Error(ErrorCode::Layout, "outer face index out of range");
    layout = tutte_layout(doc.graph, *outer_face);
  } else {
    layout = tutte_layout(doc.graph);
  }
  layout.direction_hint = doc.layout.direction_hint;
  layout.direction_hint.resize(doc.graph.dart_count());
  if (const auto close = coincident_vertices(layout, TutteOptions{}.min_separation); !close.empty())
    throw Error(ErrorCode::Layout, "vertices " + std::to_string(close.front().first) + " and " +
                                       std::to_string(close.front().second) + " coincide");
  return layout;
}

PipelineResult run_pipeline(const PlaneMultigraph& g, const Layout& layout, const ArmLengthStrategy& strategy) {
  require_valid(g);
  if (static_cast<int>(layout.positions.size()) != g.vertex_count())
    throw Error(ErrorCode::Layout, "layout has the wrong number of positions");
  PipelineResult r;
  r.layout = layout;
  const auto partition = threaded_circuit_partition(g);
  const auto assignment = under_over(g, partition, two_color_faces(g));
  std::vector<EdgeArms> arms;
  auto crosses = build_crosses(g, layout, strategy, &arms);
  r.drawing = assemble_drawing(g, layout, partition, assignment, std::move(crosses), std::move(arms), to_string(strategy));
  r.extra_crossings = extra_crossings(r.drawing);
  if (r.extra_crossings > 0)
    r.warnings.push_back(std::to_string(r.extra_crossings) + " curve crossings away from vertices");
  if (const int skeleton = count_skeleton_crossings(g, layout); skeleton > 0)
    r.warnings.push_back("straight-line layout has " + std::to_string(skeleton) + " edge crossings");
  return r;
}

PipelineResult run_pipeline(const GraphDocument& doc, const PipelineConfig& config) {
  const auto strategy = parse_strategy(config.strategy);
  require_valid(doc.graph);
  return run_pipeline(doc.graph, resolve_layout(doc, config.outer_face), strategy);
}

std::vector<EdgeStats> edge_stats(const KnotDrawing& k) {
  std::vector<EdgeStats> out;
  for (EdgeId e = 0; e < k.graph.edge_count(); ++e)
    out.push_back({e, reference_length(k.graph, k.layout, e), k.arms[e].lambda_u, k.arms[e].lambda_v,
                   k.arms[e].kappa_star, k.edges[e].arc_length()});
  return out;
}

json stats_json(const KnotDrawing& k) {
  json edges = json::array();
  double worst = 0.0;
  for (const auto& s : edge_stats(k)) {
    worst = std::max(worst, s.kappa_star);
    edges.push_back({{"edge", s.edge},
                     {"reference_length", s.reference},
                     {"lambda", {s.lambda_u, s.lambda_v}},
                     {"kappa_star", s.kappa_star},
                     {"arc_length", s.arc_length}});
  }
  return {{"strategy", k.strategy},
          {"circuits", k.circuits.circuits.size()},
          {"lengths", k.circuits.length_multiset()},
          {"max_kappa_star", worst},
          {"edges", edges}};
}

std::string stats_table(const KnotDrawing& k) {
  std::ostringstream out;
  char line[160];
  std::snprintf(line, sizeof line, "%5s %12s %12s %12s %12s %12s %8s\n", "edge", "d", "lambda_u", "lambda_v",
                "kappa*", "arc", "lam/d");
  out << line;
  for (const auto& s : edge_stats(k)) {
    std::snprintf(line, sizeof line, "%5d %12.6f %12.6f %12.6f %12.6f %12.6f %8.4f\n", s.edge, s.reference,
                  s.lambda_u, s.lambda_v, s.kappa_star, s.arc_length, std::max(s.lambda_u, s.lambda_v) / s.reference);
    out << line;
  }
  return out.str();
}

json thread_report(const PlaneMultigraph& g, const CircuitPartition& p) {
  json circuits = json::array();
  for (const auto& c : p.circuits)
    circuits.push_back({{"id", c.id}, {"length", c.length()}, {"vertices", c.vertices(g)}, {"edges", c.edges()}});
  return {{"count", p.circuits.size()},
          {"lengths", p.length_multiset()},
          {"euler", is_threaded_euler(p)},
          {"circuits", circuits}};
}

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::Parse:
      return 1;
    case ErrorCode::InvalidGraph:
    case ErrorCode::DualNotBipartite:
    case ErrorCode::NotBiconnected:
    case ErrorCode::NotACutpoint:
    case ErrorCode::TooLarge:
    case ErrorCode::Domain:
      return 2;
    case ErrorCode::SingularSystem:
    case ErrorCode::AmbiguousRotation:
    case ErrorCode::Layout:
      return 3;
    default:
      return 4;
  }
}

json validation_json(const ValidationReport& report) {
  json v = json::array();
  for (const auto& x : report.violations) v.push_back({{"code", x.code}, {"locus", x.locus}, {"message", x.message}});
  return {{"ok", report.ok}, {"violations", v}};
}

std::string interchange_text(const KnotDrawing& drawing) { return export_interchange(drawing).dump(2) + "\n"; }

}  // namespace celtic
