#include "celtic/render.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace celtic {

KnotDrawing assemble_drawing(const PlaneMultigraph& g, const Layout& layout, const CircuitPartition& partition,
                             const UnderOverAssignment& assignment, std::vector<Cross> crosses,
                             std::vector<EdgeArms> arms, std::string strategy) {
  if (static_cast<int>(crosses.size()) != g.vertex_count()) throw Error(ErrorCode::Internal, "one cross per vertex expected");
  KnotDrawing k{g, layout, partition, assignment, std::move(crosses), std::move(arms), {}, std::move(strategy)};
  if (k.arms.empty()) {
    k.arms.resize(g.edge_count());
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
      const auto& cu = k.crosses[g.origin(dart_of(e, 0))];
      const auto& cv = k.crosses[g.origin(dart_of(e, 1))];
      k.arms[e].lambda_u = cu.arm_length[cu.arm_of(dart_of(e, 0))];
      k.arms[e].lambda_v = cv.arm_length[cv.arm_of(dart_of(e, 1))];
    }
  }
  k.edges.reserve(g.edge_count());
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    const DartId du = dart_of(e, 0), dv = dart_of(e, 1);
    const auto& cu = k.crosses[g.origin(du)];
    const auto& cv = k.crosses[g.origin(dv)];
    const int au = cu.arm_of(du), av = cv.arm_of(dv);
    if (au < 0 || av < 0) throw Error(ErrorCode::Internal, "dart missing from its cross");
    k.edges.push_back(edge_curve<double>(layout.positions[g.origin(du)], layout.positions[g.origin(dv)],
                                         cu.arm_direction(au), cv.arm_direction(av), k.arms[e].lambda_u,
                                         k.arms[e].lambda_v));
  }
  const double err = max_c1_error(k);
  if (!(err <= 1e-9)) throw Error(ErrorCode::Internal, "curves do not join smoothly (error " + std::to_string(err) + ")");
  return k;
}

Point control_tangent(const KnotDrawing& k, DartId d) {
  const Curve& c = k.edges[edge_of(d)];
  const Point t = (d & 1) ? Point(c[2] - c[3]) : Point(c[1] - c[0]);
  const double n = t.norm();
  return n > 0 ? Point(t / n) : Point(Point::Zero());
}

double max_c1_error(const KnotDrawing& k) {
  double worst = 0.0;
  for (const Thread& t : k.circuits.threads()) {
    // Entering along `in` then leaving along `out`: the arriving dart's control
    // tangent at the midpoint is that of twin(in).
    const Point a = control_tangent(k, twin(t.in));
    const Point b = control_tangent(k, t.out);
    worst = std::max(worst, (a + b).norm());
  }
  return worst;
}

bool passes_over(const KnotDrawing& k, DartId d) {
  const auto& g = k.graph;
  int s = k.under_over.sign(twin(d));
  if (s == 0) s = k.under_over.sign(twin(g.rotation_opposite(d)));
  return s > 0;
}

namespace {

std::vector<Point> flatten(const Curve& c, double tolerance) {
  const double m = 6.0 * std::max((c[0] - 2 * c[1] + c[2]).norm(), (c[1] - 2 * c[2] + c[3]).norm());
  const int n = std::clamp(static_cast<int>(std::ceil(std::sqrt(m / (8.0 * tolerance)))), 8, 256);
  std::vector<Point> pts;
  pts.reserve(n + 1);
  for (int i = 0; i <= n; ++i) pts.push_back(c.eval(static_cast<double>(i) / n));
  return pts;
}

double orient(const Point& a, const Point& b, const Point& c) { return cross2<double>(b - a, c - a); }

bool proper_cross(const Point& a, const Point& b, const Point& c, const Point& d) {
  const double o1 = orient(a, b, c), o2 = orient(a, b, d), o3 = orient(c, d, a), o4 = orient(c, d, b);
  return ((o1 > 0 && o2 < 0) || (o1 < 0 && o2 > 0)) && ((o3 > 0 && o4 < 0) || (o3 < 0 && o4 > 0));
}

struct Box {
  Point lo, hi;
  bool overlaps(const Box& o) const {
    return lo.x() <= o.hi.x() && o.lo.x() <= hi.x() && lo.y() <= o.hi.y() && o.lo.y() <= hi.y();
  }
};

Box box_of(const std::vector<Point>& pts) {
  Box b{pts.front(), pts.front()};
  for (const auto& p : pts) {
    b.lo = b.lo.cwiseMin(p);
    b.hi = b.hi.cwiseMax(p);
  }
  return b;
}

// Parameter at which the arc length measured from t = 0 reaches `s`.
double parameter_at_length(const Curve& c, double s) {
  constexpr int kSteps = 512;
  double acc = 0.0;
  Point prev = c[0];
  for (int i = 1; i <= kSteps; ++i) {
    const double t = static_cast<double>(i) / kSteps;
    const Point cur = c.eval(t);
    const double step = (cur - prev).norm();
    if (acc + step >= s) return step > 0 ? (t - 1.0 / kSteps) + (s - acc) / step / kSteps : t;
    acc += step;
    prev = cur;
  }
  return 1.0;
}

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", x);
  std::string s = buf;
  if (s == "-0.000") s = "0.000";
  return s;
}

double mean_edge_length(const KnotDrawing& k) {
  double sum = 0.0;
  int n = 0;
  for (EdgeId e = 0; e < k.graph.edge_count(); ++e) {
    if (k.graph.is_loop(e)) continue;
    sum += (k.edges[e][3] - k.edges[e][0]).norm();
    ++n;
  }
  return n > 0 && sum > 0 ? sum / n : 1.0;
}

}  // namespace

int extra_crossings(const KnotDrawing& k, double flatten_tolerance) {
  std::vector<std::vector<Point>> lines;
  std::vector<Box> boxes;
  for (const auto& c : k.edges) {
    lines.push_back(flatten(c, flatten_tolerance));
    boxes.push_back(box_of(lines.back()));
  }
  int count = 0;
  for (std::size_t a = 0; a < lines.size(); ++a)
    for (std::size_t b = a + 1; b < lines.size(); ++b) {
      if (!boxes[a].overlaps(boxes[b])) continue;
      const auto& p = lines[a];
      const auto& q = lines[b];
      for (std::size_t i = 0; i + 1 < p.size(); ++i)
        for (std::size_t j = 0; j + 1 < q.size(); ++j)
          if (proper_cross(p[i], p[i + 1], q[j], q[j + 1])) ++count;
    }
  return count;
}

std::string render_svg(const KnotDrawing& k, const RenderStyle& style) {
  const auto& g = k.graph;
  const double unit = mean_edge_length(k);
  const double strand = style.strand_width > 0 ? style.strand_width : 0.04 * unit;
  const double gap = style.gap_width > 0 ? style.gap_width : 2.2 * strand;

  Point lo = Point::Constant(0.0), hi = Point::Constant(0.0);
  bool first = true;
  for (const auto& c : k.edges)
    for (const auto& p : c.points()) {
      lo = first ? p : Point(lo.cwiseMin(p));
      hi = first ? p : Point(hi.cwiseMax(p));
      first = false;
    }
  for (const auto& p : k.layout.positions) {
    lo = first ? p : Point(lo.cwiseMin(p));
    hi = first ? p : Point(hi.cwiseMax(p));
    first = false;
  }
  const double span = std::max({hi.x() - lo.x(), hi.y() - lo.y(), 1e-9});
  const double scale = style.scale > 0 ? style.scale : 800.0 / span;
  const double margin = 2.0 * strand * scale + 10.0;
  const double width = (hi.x() - lo.x()) * scale + 2 * margin;
  const double height = (hi.y() - lo.y()) * scale + 2 * margin;
  auto px = [&](const Point& p) { return fmt((p.x() - lo.x()) * scale + margin) + " " + fmt((hi.y() - p.y()) * scale + margin); };

  std::ostringstream out;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << fmt(width) << "\" height=\""
      << fmt(height) << "\" viewBox=\"0 0 " << fmt(width) << " " << fmt(height) << "\">\n";
  out << "  <rect x=\"0\" y=\"0\" width=\"" << fmt(width) << "\" height=\"" << fmt(height) << "\" fill=\""
      << style.background << "\"/>\n";
  for (const auto& circuit : k.circuits.circuits) {
    const std::string& colour = style.palette.empty() ? std::string("#000000")
                                                      : style.palette[circuit.id % style.palette.size()];
    out << "  <g id=\"circuit-" << circuit.id << "\" fill=\"none\" stroke=\"" << colour << "\" stroke-width=\""
        << fmt(strand * scale) << "\" stroke-linecap=\"butt\">\n";
    std::vector<EdgeId> edges = circuit.edges();
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    for (EdgeId e : edges) {
      const Curve& c = k.edges[e];
      const double length = c.arc_length(512);
      double t0 = 0.0, t1 = 1.0;
      const double cut = std::min(gap, 0.45 * length);
      if (!passes_over(k, dart_of(e, 0))) t0 = parameter_at_length(c, cut);
      if (!passes_over(k, dart_of(e, 1))) {
        const Curve rev(c[3], c[2], c[1], c[0]);
        t1 = 1.0 - parameter_at_length(rev, cut);
      }
      const Curve piece = c.segment(t0, t1);
      out << "    <path id=\"edge-" << e << "\" d=\"M " << px(piece[0]) << " C " << px(piece[1]) << " "
          << px(piece[2]) << " " << px(piece[3]) << "\"/>\n";
    }
    out << "  </g>\n";
  }
  (void)g;
  out << "</svg>\n";
  return out.str();
}

nlohmann::json export_interchange(const KnotDrawing& k) {
  using nlohmann::json;
  const auto& g = k.graph;
  json doc;
  doc["schema"] = kInterchangeSchema;
  doc["version"] = kInterchangeVersion;
  doc["strategy"] = k.strategy;

  json vertices = json::array();
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    const auto& c = k.crosses[v];
    json arms = json::array();
    for (int i = 0; i < 4; ++i) {
      const DartId d = c.dart_of_arm[i];
      arms.push_back({{"edge", edge_of(d)}, {"end", d & 1}, {"length", c.arm_length[i]},
                      {"over", passes_over(k, d)}});
    }
    // The over thread is named by its incoming dart.
    DartId over = kNoDart;
    for (DartId d : g.rotation(v))
      if (k.under_over.sign(twin(d)) > 0) over = twin(d);
    const Point p = k.layout.positions[v];
    vertices.push_back(
        {{"id", v}, {"pos", {p.x(), p.y()}}, {"theta", c.theta}, {"over_thread", over}, {"arms", arms}});
  }
  doc["vertices"] = vertices;

  json edges = json::array();
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    json cps = json::array();
    for (const auto& p : k.edges[e].points()) cps.push_back({p.x(), p.y()});
    const auto& ends = g.ends(e);
    edges.push_back({{"id", e},
                     {"ends", {{ends[0].vertex, ends[0].slot}, {ends[1].vertex, ends[1].slot}}},
                     {"circuit", k.circuits.edge_to_circuit[e]},
                     {"control_points", cps},
                     {"lambda", {k.arms[e].lambda_u, k.arms[e].lambda_v}},
                     {"kappa_star", k.arms[e].kappa_star}});
  }
  doc["edges"] = edges;

  json circuits = json::array();
  for (const auto& c : k.circuits.circuits)
    circuits.push_back({{"id", c.id},
                        {"length", c.length()},
                        {"darts", c.darts},
                        {"edges", c.edges()},
                        {"vertices", c.vertices(g)}});
  doc["circuits"] = circuits;

  json threads = json::array();
  for (const auto& t : k.circuits.threads())
    threads.push_back({{"vertex", g.head(t.in)}, {"in", t.in}, {"out", t.out}, {"over", k.under_over.sign(t.in) > 0}});
  doc["threads"] = threads;
  return doc;
}

std::vector<Curve> import_interchange(const nlohmann::json& doc) {
  try {
    if (doc.at("schema").get<std::string>() != kInterchangeSchema)
      throw Error(ErrorCode::Parse, "not a knot interchange document");
    if (doc.at("version").get<std::string>() != kInterchangeVersion)
      throw Error(ErrorCode::Parse, "unsupported interchange version");
    std::vector<Curve> curves;
    for (const auto& e : doc.at("edges")) {
      const auto& cps = e.at("control_points");
      if (!cps.is_array() || cps.size() != 4) throw Error(ErrorCode::Parse, "edge needs four control points");
      Curve c;
      for (int i = 0; i < 4; ++i) {
        if (!cps[i].is_array() || cps[i].size() != 2) throw Error(ErrorCode::Parse, "control point needs two numbers");
        c[i] = Point(cps[i][0].get<double>(), cps[i][1].get<double>());
      }
      curves.push_back(c);
    }
    return curves;
  } catch (const nlohmann::json::exception& ex) {
    throw Error(ErrorCode::Parse, std::string("interchange: ") + ex.what());
  }
}

}  // namespace celtic
