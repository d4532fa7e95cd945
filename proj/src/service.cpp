#include "celtic/service.hpp"

#include <cstdlib>
#include <list>
#include <mutex>
#include <random>
#include <regex>
#include <unordered_map>

#include "celtic/pipeline.hpp"
#include "spdlog/sinks/stdout_color_sinks.h"
#include "spdlog/spdlog.h"

// After Eigen: httplib pulls in system headers that clash with its product kernels.
#include "httplib.h"

namespace celtic {

using nlohmann::json;

namespace {

std::shared_ptr<spdlog::logger> logger() {
  static const auto instance = [] {
    auto l = spdlog::stderr_color_mt("celticgraph");
    const char* raw = std::getenv("LOG_LEVEL");
    l->set_level(spdlog::level::from_str(raw ? raw : "info"));
    return l;
  }();
  return instance;
}

ServiceResponse json_response(int status, const json& body) { return {status, "application/json", body.dump(2) + "\n"}; }

ServiceResponse error_response(int status, const std::string& code, const std::string& message) {
  return json_response(status, {{"error", code}, {"message", message}});
}

struct Session {
  std::mutex mu;
  GraphDocument doc;
  Layout layout;
};

}  // namespace

struct KnotService::Impl {
  ServiceOptions options;
  mutable std::mutex store_mu;
  std::list<std::string> recency;  // front = most recent
  std::unordered_map<std::string, std::pair<std::shared_ptr<Session>, std::list<std::string>::iterator>> sessions;
  std::mt19937_64 ids{std::random_device{}()};

  std::shared_ptr<Session> find(const std::string& id) {
    std::lock_guard lock(store_mu);
    auto it = sessions.find(id);
    if (it == sessions.end()) return nullptr;
    recency.splice(recency.begin(), recency, it->second.second);
    return it->second.first;
  }

  std::string insert(std::shared_ptr<Session> s) {
    std::lock_guard lock(store_mu);
    char buf[24];
    std::string id;
    do {
      std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(ids()));
      id = buf;
    } while (sessions.count(id));
    recency.push_front(id);
    sessions[id] = {std::move(s), recency.begin()};
    while (sessions.size() > options.max_sessions) {
      logger()->debug("evicting session {}", recency.back());
      sessions.erase(recency.back());
      recency.pop_back();
    }
    return id;
  }

  std::string strategy_of(const ServiceRequest& r) const {
    auto it = r.query.find("strategy");
    return it == r.query.end() ? options.default_strategy : it->second;
  }

  ServiceResponse create(const ServiceRequest& r) {
    auto s = std::make_shared<Session>();
    json body;
    try {
      body = json::parse(r.body);
    } catch (const json::parse_error& ex) {
      return error_response(400, "PARSE", ex.what());
    }
    try {
      s->doc = parse_graph(body);
    } catch (const Error& ex) {
      return error_response(400, to_string(ex.code()), ex.what());
    }
    const auto report = validate_graph(s->doc.graph);
    if (!report.ok) return json_response(422, {{"error", "INVALID_GRAPH"}, {"validation", validation_json(report)}});
    try {
      s->layout = resolve_layout(s->doc);
    } catch (const Error& ex) {
      return error_response(422, to_string(ex.code()), ex.what());
    }
    const json threads = thread_report(s->doc.graph, threaded_circuit_partition(s->doc.graph));
    const json graph = graph_to_json(s->doc.graph, &s->layout);
    const std::string id = insert(std::move(s));
    logger()->info("created session {}", id);
    return json_response(201, {{"id", id}, {"graph", graph}, {"threading", threads}});
  }

  ServiceResponse describe(Session& s, const std::string& id) {
    std::lock_guard lock(s.mu);
    return json_response(200, {{"id", id},
                               {"graph", graph_to_json(s.doc.graph, &s.layout)},
                               {"threading", thread_report(s.doc.graph, threaded_circuit_partition(s.doc.graph))}});
  }

  ServiceResponse move(Session& s, const std::string& id, const ServiceRequest& r) {
    ArmLengthStrategy strategy;
    json body;
    try {
      strategy = parse_strategy(strategy_of(r));
      body = json::parse(r.body);
    } catch (const Error& ex) {
      return error_response(400, to_string(ex.code()), ex.what());
    } catch (const json::parse_error& ex) {
      return error_response(400, "PARSE", ex.what());
    }
    std::lock_guard lock(s.mu);
    Layout moved = s.layout;
    try {
      if (!body.is_object() || !body.contains("positions") || !body["positions"].is_array())
        throw Error(ErrorCode::Parse, "expected {\"positions\": [{\"id\": v, \"pos\": [x, y]}]}");
      for (const auto& item : body["positions"]) {
        const int v = item.at("id").get<int>();
        if (v < 0 || v >= s.doc.graph.vertex_count()) throw Error(ErrorCode::Parse, "unknown vertex " + std::to_string(v));
        const auto& p = item.at("pos");
        if (!p.is_array() || p.size() != 2 || !p[0].is_number() || !p[1].is_number())
          throw Error(ErrorCode::Parse, "pos must be [x, y]");
        moved.positions[v] = Point(p[0].get<double>(), p[1].get<double>());
      }
    } catch (const Error& ex) {
      return error_response(400, to_string(ex.code()), ex.what());
    } catch (const json::exception& ex) {
      return error_response(400, "PARSE", ex.what());
    }
    if (const auto close = coincident_vertices(moved, TutteOptions{}.min_separation); !close.empty()) {
      ValidationReport report;
      for (const auto& [a, b] : close)
        report.add("COINCIDENT_VERTICES", std::to_string(a) + "," + std::to_string(b), "vertices coincide");
      return json_response(422, {{"error", "LAYOUT"}, {"validation", validation_json(report)}});
    }
    try {
      auto result = run_pipeline(s.doc.graph, moved, strategy);
      s.layout = moved;
      return json_response(200, {{"id", id}, {"knot", export_interchange(result.drawing)}, {"warnings", result.warnings}});
    } catch (const Error& ex) {
      return error_response(exit_code_for(ex.code()) == 4 ? 500 : 422, to_string(ex.code()), ex.what());
    }
  }

  ServiceResponse derived(Session& s, const std::string& what, const ServiceRequest& r) {
    ArmLengthStrategy strategy;
    try {
      strategy = parse_strategy(strategy_of(r));
    } catch (const Error& ex) {
      return error_response(400, to_string(ex.code()), ex.what());
    }
    PipelineResult result;
    {
      std::lock_guard lock(s.mu);
      try {
        result = run_pipeline(s.doc.graph, s.layout, strategy);
      } catch (const Error& ex) {
        return error_response(exit_code_for(ex.code()) == 4 ? 500 : 422, to_string(ex.code()), ex.what());
      }
    }
    if (what == "knot") return {200, "application/json", interchange_text(result.drawing)};
    if (what == "svg") return {200, "image/svg+xml", render_svg(result.drawing)};
    json stats = stats_json(result.drawing);
    stats["warnings"] = result.warnings;
    return json_response(200, stats);
  }
};

KnotService::KnotService(ServiceOptions options) : impl_(std::make_unique<Impl>()) {
  impl_->options = std::move(options);
}
KnotService::~KnotService() = default;

std::size_t KnotService::session_count() const {
  std::lock_guard lock(impl_->store_mu);
  return impl_->sessions.size();
}

ServiceResponse KnotService::handle(const ServiceRequest& r) {
  static const std::regex session_path(R"(^/api/graphs/([^/]+)(?:/(positions|knot|svg|stats))?/?$)");
  logger()->debug("{} {}", r.method, r.path);
  if (r.path == "/api/graphs" || r.path == "/api/graphs/") {
    if (r.method == "POST") return impl_->create(r);
    return error_response(405, "METHOD", "use POST to create a graph session");
  }
  std::smatch m;
  if (!std::regex_match(r.path, m, session_path)) return error_response(404, "NOT_FOUND", "no such endpoint");
  const std::string id = m[1];
  const std::string sub = m[2];
  auto session = impl_->find(id);
  if (!session) return error_response(404, "UNKNOWN_SESSION", "no session " + id);
  if (sub.empty()) {
    if (r.method == "GET") return impl_->describe(*session, id);
  } else if (sub == "positions") {
    if (r.method == "PATCH") return impl_->move(*session, id, r);
  } else if (r.method == "GET") {
    return impl_->derived(*session, sub, r);
  }
  return error_response(405, "METHOD", r.method + " not allowed on " + r.path);
}

struct HttpServer::Impl {
  KnotService& service;
  httplib::Server server;
  explicit Impl(KnotService& s) : service(s) {}
};

HttpServer::HttpServer(KnotService& service) : impl_(std::make_unique<Impl>(service)) {
  auto forward = [this](const httplib::Request& req, httplib::Response& res) {
    ServiceRequest r{req.method, req.path, {}, req.body};
    for (const auto& [k, v] : req.params) r.query.emplace(k, v);
    const auto out = impl_->service.handle(r);
    res.status = out.status;
    res.set_content(out.body, out.content_type);
  };
  auto& s = impl_->server;
  s.Get(R"(/api/.*)", forward);
  s.Post(R"(/api/.*)", forward);
  s.Patch(R"(/api/.*)", forward);
}

HttpServer::~HttpServer() { stop(); }

int HttpServer::bind(const std::string& host, int port) {
  if (port == 0) return impl_->server.bind_to_any_port(host);
  return impl_->server.bind_to_port(host, port) ? port : -1;
}

bool HttpServer::listen() { return impl_->server.listen_after_bind(); }

void HttpServer::stop() {
  if (impl_->server.is_running()) impl_->server.stop();
}

}  // namespace celtic
