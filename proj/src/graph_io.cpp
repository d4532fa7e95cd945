#include "celtic/graph_io.hpp"

#include <fstream>
#include <sstream>

namespace celtic {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& what) { throw Error(ErrorCode::Parse, what); }

int as_int(const json& j, const std::string& what) {
  if (!j.is_number_integer()) fail(what + " must be an integer");
  return j.get<int>();
}

Point as_point(const json& j, const std::string& what) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) fail(what + " must be [x, y]");
  return {j[0].get<double>(), j[1].get<double>()};
}

// Items must carry ids 0..n-1 (in any order); returns them indexed by id.
std::vector<const json*> dense(const json& list, const std::string& what) {
  if (!list.is_array()) fail(what + " must be an array");
  std::vector<const json*> out(list.size(), nullptr);
  for (const auto& item : list) {
    if (!item.is_object()) fail(what + " entries must be objects");
    const int id = item.contains("id") ? as_int(item["id"], what + " id") : -1;
    if (id < 0 || id >= static_cast<int>(list.size())) fail(what + " ids must be 0.." + std::to_string(list.size() - 1));
    if (out[id]) fail("duplicate " + what + " id " + std::to_string(id));
    out[id] = &item;
  }
  return out;
}

}  // namespace

GraphDocument parse_graph(const json& doc) {
  if (!doc.is_object()) fail("graph document must be an object");
  if (!doc.contains("vertices") || !doc.contains("edges")) fail("graph needs \"vertices\" and \"edges\"");
  const auto vertices = dense(doc["vertices"], "vertex");
  const auto edges = dense(doc["edges"], "edge");
  const int n = static_cast<int>(vertices.size());
  const int m = static_cast<int>(edges.size());

  GraphDocument out;
  out.source = doc;
  int with_pos = 0;
  out.layout.positions.assign(n, Point::Zero());
  for (int v = 0; v < n; ++v)
    if (vertices[v]->contains("pos")) {
      out.layout.positions[v] = as_point((*vertices[v])["pos"], "vertex " + std::to_string(v) + " pos");
      ++with_pos;
    }
  if (with_pos != 0 && with_pos != n) fail("positions must be given for all vertices or for none");
  out.has_positions = with_pos == n && n > 0;
  if (!out.has_positions) out.layout.positions.clear();

  out.layout.direction_hint.assign(2 * m, std::nullopt);
  std::vector<EdgeEnds> ends(m);
  int slotted = 0;
  AbstractGraph bare{n, {}};
  for (int e = 0; e < m; ++e) {
    const json& item = *edges[e];
    const std::string name = "edge " + std::to_string(e);
    if (!item.contains("ends") || !item["ends"].is_array() || item["ends"].size() != 2) fail(name + " needs two ends");
    for (int k = 0; k < 2; ++k) {
      const json& end = item["ends"][k];
      if (end.is_array()) {
        if (end.size() != 2) fail(name + " end must be [vertex, slot]");
        ends[e][k] = {as_int(end[0], name + " vertex"), as_int(end[1], name + " slot")};
        ++slotted;
      } else {
        ends[e][k] = {as_int(end, name + " vertex"), -1};
      }
    }
    bare.edges.emplace_back(ends[e][0].vertex, ends[e][1].vertex);
    if (item.contains("hints")) {
      const json& h = item["hints"];
      if (!h.is_array() || h.size() != 2) fail(name + " hints must be two directions");
      for (int k = 0; k < 2; ++k)
        if (!h[k].is_null()) out.layout.direction_hint[dart_of(e, k)] = as_point(h[k], name + " hint");
    }
  }

  if (slotted == 2 * m) {
    out.graph = PlaneMultigraph(n, ends);
  } else if (slotted == 0) {
    if (!out.has_positions) fail("ends without slots need vertex positions");
    for (const auto& [a, b] : bare.edges)
      if (a < 0 || a >= n || b < 0 || b >= n) fail("edge endpoint out of range");
    out.graph = rotation_from_coordinates(bare, out.layout);
  } else {
    fail("either every edge end carries a slot or none does");
  }

  if (doc.contains("outer_face")) {
    const json& f = doc["outer_face"];
    if (!f.is_array() || f.empty()) fail("outer_face must be a non-empty list of [edge, end]");
    for (const auto& ref : f) {
      if (!ref.is_array() || ref.size() != 2) fail("outer_face entries must be [edge, end]");
      const int e = as_int(ref[0], "outer_face edge"), k = as_int(ref[1], "outer_face end");
      if (e < 0 || e >= m || (k != 0 && k != 1)) fail("outer_face reference out of range");
    }
    out.graph.outer_dart = dart_of(f[0][0].get<int>(), f[0][1].get<int>());
  }
  return out;
}

GraphDocument load_graph(const std::string& path) {
  const std::string text = read_text_file(path);
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& ex) {
    fail(path + ": " + ex.what());
  }
  return parse_graph(doc);
}

json graph_to_json(const PlaneMultigraph& g, const Layout* layout) {
  json doc;
  json vertices = json::array();
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    json item{{"id", v}};
    if (layout && v < static_cast<int>(layout->positions.size()))
      item["pos"] = {layout->positions[v].x(), layout->positions[v].y()};
    vertices.push_back(item);
  }
  json edges = json::array();
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    const auto& ends = g.ends(e);
    json item{{"id", e}, {"ends", {{ends[0].vertex, ends[0].slot}, {ends[1].vertex, ends[1].slot}}}};
    if (layout && (layout->hint(dart_of(e, 0)) || layout->hint(dart_of(e, 1)))) {
      json hints = json::array();
      for (int k = 0; k < 2; ++k) {
        const auto h = layout->hint(dart_of(e, k));
        hints.push_back(h ? json{h->x(), h->y()} : json(nullptr));
      }
      item["hints"] = hints;
    }
    edges.push_back(item);
  }
  doc["vertices"] = vertices;
  doc["edges"] = edges;
  if (g.outer_dart) doc["outer_face"] = json::array({{edge_of(*g.outer_dart), *g.outer_dart & 1}});
  return doc;
}

json with_positions(const GraphDocument& doc, const Layout& layout) {
  json out = doc.source;
  for (auto& v : out["vertices"]) {
    const int id = v["id"].get<int>();
    v["pos"] = {layout.positions[id].x(), layout.positions[id].y()};
  }
  return out;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail("cannot open " + path);
  std::ostringstream text;
  text << in.rdbuf();
  return text.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::Internal, "cannot write " + path);
  out << text;
}

}  // namespace celtic
