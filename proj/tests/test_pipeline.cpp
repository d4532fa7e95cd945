#include <gtest/gtest.h>

#include "celtic/pipeline.hpp"
#include "support.hpp"

using namespace celtic;
using namespace celtic::testing;
using nlohmann::json;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::Internal;
}

}  // namespace

TEST(GraphIo, ParseErrors) {
  EXPECT_EQ(code_of([] { parse_graph(json::array()); }), ErrorCode::Parse);
  EXPECT_EQ(code_of([] { parse_graph(json{{"vertices", json::array()}}); }), ErrorCode::Parse);
  EXPECT_EQ(code_of([] { parse_graph(json::parse(R"({"vertices":[{"id":1}],"edges":[]})")); }), ErrorCode::Parse);
  EXPECT_EQ(code_of([] {
              parse_graph(json::parse(R"({"vertices":[{"id":0,"pos":[0,0]},{"id":1}],"edges":[]})"));
            }),
            ErrorCode::Parse);
  EXPECT_EQ(code_of([] {
              parse_graph(json::parse(R"({"vertices":[{"id":0}],"edges":[{"id":0,"ends":[0,0]}]})"));
            }),
            ErrorCode::Parse);
  EXPECT_EQ(code_of([] { load_graph("/nonexistent/graph.json"); }), ErrorCode::Parse);
}

TEST(GraphIo, RoundTrip) {
  for (const auto& name : fixture_names()) {
    const auto doc = fixture(name);
    const auto again = parse_graph(graph_to_json(doc.graph, &doc.layout));
    EXPECT_EQ(again.graph.ends(), doc.graph.ends()) << name;
    EXPECT_EQ(again.has_positions, doc.has_positions);
  }
}

TEST(GraphIo, OuterFaceMarker) {
  auto j = graph_to_json(fixture("fig5").graph);
  j["outer_face"] = json::array({json::array({3, 1})});
  EXPECT_EQ(parse_graph(j).graph.outer_dart, std::optional<DartId>(7));
  j["outer_face"] = json::array({json::array({99, 0})});
  EXPECT_THROW(parse_graph(j), Error);
}

TEST(Pipeline, ExitCodes) {
  EXPECT_EQ(exit_code_for(ErrorCode::Parse), 1);
  EXPECT_EQ(exit_code_for(ErrorCode::InvalidGraph), 2);
  EXPECT_EQ(exit_code_for(ErrorCode::AmbiguousRotation), 3);
  EXPECT_EQ(exit_code_for(ErrorCode::SingularSystem), 3);
  EXPECT_EQ(exit_code_for(ErrorCode::Internal), 4);
}

TEST(Pipeline, ValidationFailureCarriesReport) {
  auto doc = fixture("trefoil");
  auto ends = doc.graph.ends();
  ends[0][0].slot = ends[1][0].slot;
  doc.graph = PlaneMultigraph(doc.graph.vertex_count(), ends);
  try {
    run_pipeline(doc, PipelineConfig{});
    FAIL() << "expected a validation failure";
  } catch (const ValidationFailure& f) {
    EXPECT_FALSE(f.report().ok);
    EXPECT_EQ(exit_code_for(f.code()), 2);
  }
}

TEST(Pipeline, CoincidentVerticesAreLayoutErrors) {
  auto doc = fixture("prism");
  doc.layout.positions[1] = doc.layout.positions[0];
  EXPECT_EQ(code_of([&] { run_pipeline(doc, PipelineConfig{}); }), ErrorCode::Layout);
}

TEST(Pipeline, Deterministic) {
  const auto a = run_pipeline(fixture("fig7b"), PipelineConfig{});
  const auto b = run_pipeline(fixture("fig7b"), PipelineConfig{});
  EXPECT_EQ(interchange_text(a.drawing), interchange_text(b.drawing));
  EXPECT_EQ(render_svg(a.drawing), render_svg(b.drawing));
}

TEST(Pipeline, LayoutDoesNotChangeThreading) {
  auto doc = fixture("fig5");
  const auto before = run_pipeline(doc, PipelineConfig{});
  doc.has_positions = true;
  doc.layout.positions = before.layout.positions;
  doc.layout.positions[4] += Point(7, -3);
  const auto after = run_pipeline(doc, PipelineConfig{});
  EXPECT_EQ(before.drawing.circuits.circuits[0].darts, after.drawing.circuits.circuits[0].darts);
  for (DartId d = 0; d < doc.graph.dart_count(); ++d)
    EXPECT_EQ(before.drawing.under_over.sign(d), after.drawing.under_over.sign(d));
}

TEST(Pipeline, ConfigFromJson) {
  const auto c = config_from_json(json::parse(R"({"strategy":"uniform:3","seed":7,"style":{"strand_width":1,"gap_width":3}})"));
  EXPECT_EQ(c.strategy, "uniform:3");
  EXPECT_EQ(c.seed, 7u);
  EXPECT_THROW(config_from_json(json::parse(R"({"strategy":"proportional:2"})")), Error);
  EXPECT_THROW(config_from_json(json::parse(R"({"colour":"red"})")), Error);
  EXPECT_THROW(config_from_json(json::parse(R"({"style":{"strand_width":2,"gap_width":1}})")), Error);
}

TEST(Pipeline, StatsBound) {
  const auto r = run_pipeline(fixture("prism"), PipelineConfig{});
  for (const auto& s : edge_stats(r.drawing)) {
    EXPECT_LE(s.lambda_u, 0.75 * s.reference * (1 + 1e-12));
    EXPECT_LE(s.lambda_v, 0.75 * s.reference * (1 + 1e-12));
  }
  EXPECT_NE(stats_table(r.drawing).find("kappa*"), std::string::npos);
}
