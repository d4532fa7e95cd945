#include <csignal>
#include <cstdlib>
#include <iostream>

#include "CLI11.hpp"

#include "celtic/embedding.hpp"
#include "celtic/pipeline.hpp"
#include "celtic/service.hpp"

using namespace celtic;
using nlohmann::json;

namespace {

HttpServer* g_server = nullptr;

void on_signal(int) {
  if (g_server) g_server->stop();
}

PipelineConfig load_config(const std::string& path) {
  if (path.empty()) return {};
  json j;
  try {
    j = json::parse(read_text_file(path));
  } catch (const json::parse_error& ex) {
    throw Error(ErrorCode::Parse, path + ": " + ex.what());
  }
  return config_from_json(j);
}

std::string join(const std::vector<int>& xs) {
  std::string s;
  for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? " " : "") + std::to_string(xs[i]);
  return s;
}

void print_threading(const PlaneMultigraph& g, const CircuitPartition& p) {
  const auto n = p.circuits.size();
  std::cout << n << (n == 1 ? " circuit: " : " circuits: ") << join(p.length_multiset()) << "\n";
  std::cout << "euler: " << (is_threaded_euler(p) ? "yes" : "no") << "\n";
  for (const auto& c : p.circuits) std::cout << "circuit " << c.id << ": " << join(c.vertices(g)) << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"celticgraph: Celtic knot drawings from 4-regular plane multigraphs"};
  app.require_subcommand(1);
  std::string config_path, graph_path, strategy, out_path, export_path, report_format = "text";
  std::optional<int> outer;
  int cut_vertex = -1;
  std::size_t cap = 200000;

  app.add_option("--config", config_path, "PipelineConfig JSON file")->check(CLI::ExistingFile);

  auto* validate = app.add_subcommand("validate", "check degree, rotation and Euler conditions");
  validate->add_option("graph", graph_path)->required();

  auto* layout = app.add_subcommand("layout", "Tutte layout; writes positions back into the file");
  layout->add_option("graph", graph_path)->required();
  layout->add_option("--outer", outer, "outer face index (face tracing order)");
  layout->add_option("-o,--output", out_path, "write here instead of overwriting the input");

  auto* thread = app.add_subcommand("thread", "threaded circuit partition");
  thread->add_option("graph", graph_path)->required();
  thread->add_option("--format", report_format)->check(CLI::IsMember({"text", "json"}));

  auto* analyze = app.add_subcommand("analyze", "embedding analysis");
  analyze->require_subcommand(1);
  auto* invariance = analyze->add_subcommand("invariance", "circuit count over plane embeddings");
  invariance->add_option("graph", graph_path)->required();
  invariance->add_option("--cap", cap, "embedding cap");
  invariance->add_option("--format", report_format)->check(CLI::IsMember({"text", "json"}));
  auto* cutpoint = analyze->add_subcommand("cutpoint", "|C| = |C1| + |C2| - 1 at a cut vertex");
  cutpoint->add_option("graph", graph_path)->required();
  cutpoint->add_option("--vertex", cut_vertex)->required();
  cutpoint->add_option("--format", report_format)->check(CLI::IsMember({"text", "json"}));

  auto* draw = app.add_subcommand("draw", "build the crosses and curves; prints the interchange JSON");
  draw->add_option("graph", graph_path)->required();
  draw->add_option("--strategy", strategy, "uniform:<lambda> | proportional:<alpha> | optimal");
  draw->add_option("-o,--output", out_path);

  auto* render = app.add_subcommand("render", "render the knot as SVG");
  render->add_option("graph", graph_path)->required();
  render->add_option("-o,--output", out_path);
  render->add_option("--export", export_path, "also write the interchange JSON");
  render->add_option("--strategy", strategy);

  auto* stats = app.add_subcommand("stats", "per-edge curvature table");
  stats->add_option("graph", graph_path)->required();
  stats->add_option("--strategy", strategy);
  stats->add_option("--format", report_format)->check(CLI::IsMember({"text", "json"}));

  auto* serve = app.add_subcommand("serve", "HTTP API (PORT, LOG_LEVEL from the environment)");
  std::string host = "127.0.0.1";
  int port = 0;
  serve->add_option("--host", host);
  serve->add_option("--port", port, "defaults to $PORT, else 8080");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    PipelineConfig config = load_config(config_path);
    if (!strategy.empty()) config.strategy = strategy;
    if (!out_path.empty() && *render) config.svg_path = out_path;
    if (!export_path.empty()) config.export_path = export_path;

    if (*serve) {
      if (port == 0) port = std::getenv("PORT") ? std::atoi(std::getenv("PORT")) : 8080;
      ServiceOptions options;
      options.default_strategy = config.strategy;
      KnotService service(options);
      HttpServer server(service);
      if (server.bind(host, port) < 0) {
        std::cerr << "cannot bind " << host << ":" << port << "\n";
        return 3;
      }
      g_server = &server;
      std::signal(SIGINT, on_signal);
      std::signal(SIGTERM, on_signal);
      std::cerr << "listening on " << host << ":" << port << "\n";
      server.listen();
      return 0;
    }

    const GraphDocument doc = load_graph(graph_path);

    if (*validate) {
      const auto report = validate_graph(doc.graph);
      if (report.ok) {
        std::cout << "ok: " << doc.graph.vertex_count() << " vertices, " << doc.graph.edge_count() << " edges\n";
        return 0;
      }
      for (const auto& v : report.violations) std::cout << v.code << " " << v.locus << ": " << v.message << "\n";
      return 2;
    }

    require_valid(doc.graph);

    if (*layout) {
      const Layout l = resolve_layout(GraphDocument{doc.graph, doc.layout, false, doc.source}, outer);
      write_text_file(out_path.empty() ? graph_path : out_path, with_positions(doc, l).dump(2) + "\n");
      return 0;
    }
    if (*thread) {
      const auto p = threaded_circuit_partition(doc.graph);
      if (report_format == "json") std::cout << thread_report(doc.graph, p).dump(2) << "\n";
      else print_threading(doc.graph, p);
      return 0;
    }
    if (*invariance) {
      const auto r = check_cardinality_invariance(doc.graph, cap);
      if (report_format == "json") {
        json sets = json::array();
        for (const auto& s : r.length_multisets) sets.push_back(s);
        json counts = json::object();
        for (const auto& [c, k] : r.cardinalities) counts[std::to_string(c)] = k;
        std::cout << json{{"embeddings", r.embeddings}, {"exhaustive", r.exhaustive}, {"invariant", r.invariant},
                          {"cardinalities", counts}, {"length_multisets", sets}}
                         .dump(2)
                  << "\n";
      } else {
        std::cout << (r.exhaustive ? "exhaustive" : "flip closure") << ": " << r.embeddings << " embeddings\n";
        for (const auto& [c, k] : r.cardinalities) std::cout << "|C| = " << c << " in " << k << " embeddings\n";
        for (const auto& s : r.length_multisets) std::cout << "lengths: " << join(s) << "\n";
        std::cout << (r.invariant ? "invariant" : "NOT invariant") << "\n";
      }
      return r.invariant ? 0 : 4;
    }
    if (*cutpoint) {
      const auto r = check_cutpoint_additivity(doc.graph, cut_vertex);
      if (report_format == "json") {
        std::cout << json{{"whole", r.whole}, {"first", r.first}, {"second", r.second}, {"equal", r.equal()}}.dump(2)
                  << "\n";
      } else {
        std::cout << "|C| = " << r.whole << ", |C1| + |C2| - 1 = " << r.first << " + " << r.second << " - 1 = "
                  << r.rhs() << (r.equal() ? " (equal)" : " (DIFFERENT)") << "\n";
      }
      return r.equal() ? 0 : 4;
    }

    const auto result = run_pipeline(doc, config);
    for (const auto& w : result.warnings) std::cerr << "warning: " << w << "\n";

    if (*draw) {
      const std::string text = interchange_text(result.drawing);
      if (out_path.empty()) std::cout << text;
      else write_text_file(out_path, text);
      return 0;
    }
    if (*render) {
      const std::string svg = render_svg(result.drawing, config.style);
      if (config.svg_path.empty()) std::cout << svg;
      else write_text_file(config.svg_path, svg);
      if (!config.export_path.empty()) write_text_file(config.export_path, interchange_text(result.drawing));
      if (!config.svg_path.empty()) print_threading(doc.graph, result.drawing.circuits);
      return 0;
    }
    if (*stats) {
      if (report_format == "json") std::cout << stats_json(result.drawing).dump(2) << "\n";
      else std::cout << stats_table(result.drawing);
      return 0;
    }
  } catch (const ValidationFailure& f) {
    for (const auto& v : f.report().violations) std::cerr << v.code << " " << v.locus << ": " << v.message << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << to_string(e.code()) << ": " << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "INTERNAL: " << e.what() << "\n";
    return 4;
  }
  return 0;
}
