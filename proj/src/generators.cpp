#include "celtic/generators.hpp"

#include <algorithm>

namespace celtic {

DartId GeneralPlaneGraph::face_next(DartId d) const {
  const DartId t = twin(d);
  const auto& r = rotation[origin[t]];
  const auto it = std::find(r.begin(), r.end(), t);
  const auto i = static_cast<std::size_t>(it - r.begin());
  return r[(i + r.size() - 1) % r.size()];
}

std::vector<std::vector<DartId>> GeneralPlaneGraph::faces() const {
  std::vector<char> seen(origin.size(), 0);
  std::vector<std::vector<DartId>> out;
  for (DartId d = 0; d < static_cast<DartId>(origin.size()); ++d) {
    if (seen[d]) continue;
    std::vector<DartId> f;
    for (DartId x = d; !seen[x]; x = face_next(x)) {
      seen[x] = 1;
      f.push_back(x);
    }
    out.push_back(std::move(f));
  }
  return out;
}

namespace {

// New dart of an edge u->v inserted just before `before_u` in u's rotation
// (and `before_v` in v's); -1 appends.
void add_edge(GeneralPlaneGraph& g, VertexId u, DartId before_u, VertexId v, DartId before_v) {
  const DartId d = static_cast<DartId>(g.origin.size());
  g.origin.push_back(u);
  g.origin.push_back(v);
  auto insert = [&](VertexId w, DartId before, DartId dart) {
    auto& r = g.rotation[w];
    auto it = before < 0 ? r.end() : std::find(r.begin(), r.end(), before);
    r.insert(it, dart);
  };
  insert(u, before_u, d);
  insert(v, before_v, d + 1);
}

}  // namespace

GeneralPlaneGraph random_plane_graph(int edge_count, std::mt19937_64& rng) {
  GeneralPlaneGraph g;
  g.rotation.resize(2);
  add_edge(g, 0, -1, 1, -1);
  while (g.edge_count() < edge_count) {
    const auto faces = g.faces();
    const auto& f = faces[std::uniform_int_distribution<std::size_t>(0, faces.size() - 1)(rng)];
    std::uniform_int_distribution<std::size_t> pick(0, f.size() - 1);
    const bool chord = std::uniform_real_distribution<double>(0, 1)(rng) < 0.5;
    if (chord && f.size() >= 2) {
      const std::size_t i = pick(rng);
      std::size_t j = pick(rng);
      if (i == j) continue;
      // The corner after dart x lies just clockwise of twin(x) at head(x).
      const DartId x = f[i], y = f[j];
      const VertexId u = g.origin[twin(x)], v = g.origin[twin(y)];
      if (u == v) continue;
      add_edge(g, u, twin(x), v, twin(y));
    } else {
      const DartId x = f[pick(rng)];
      const VertexId u = g.origin[twin(x)];
      g.rotation.emplace_back();
      add_edge(g, u, twin(x), g.vertex_count() - 1, -1);
    }
  }
  return g;
}

PlaneMultigraph medial_graph(const GeneralPlaneGraph& g) {
  // Around the medial vertex of edge e (dart d = 2e pointing east), the four
  // corners in counterclockwise order are: after d (NE), before d (NW),
  // after twin(d) (SW), before twin(d) (SE).
  std::vector<EdgeEnds> ends;
  ends.reserve(g.origin.size());
  for (DartId a = 0; a < static_cast<DartId>(g.origin.size()); ++a) {
    const DartId b = g.face_next(a);
    const int slot_a = (a & 1) == 0 ? 0 : 2;
    const int slot_b = (b & 1) == 0 ? 1 : 3;
    ends.push_back({DartEnd{edge_of(a), slot_a}, DartEnd{edge_of(b), slot_b}});
  }
  return PlaneMultigraph(g.edge_count(), std::move(ends));
}

PlaneMultigraph random_knot_graph(int edge_count, std::mt19937_64& rng) {
  return medial_graph(random_plane_graph(edge_count, rng));
}

PlaneMultigraph glue_at_cutpoint(const PlaneMultigraph& a, EdgeId e1, const PlaneMultigraph& b, EdgeId e2,
                                 VertexId* cut_vertex) {
  const int na = a.vertex_count();
  const VertexId c = na + b.vertex_count();
  std::vector<EdgeEnds> ends;
  for (EdgeId e = 0; e < a.edge_count(); ++e) {
    if (e == e1) continue;
    ends.push_back(a.ends(e));
  }
  for (EdgeId e = 0; e < b.edge_count(); ++e) {
    if (e == e2) continue;
    auto en = b.ends(e);
    en[0].vertex += na;
    en[1].vertex += na;
    ends.push_back(en);
  }
  const auto p = a.ends(e1)[0], q = a.ends(e1)[1];
  auto r = b.ends(e2)[0], s = b.ends(e2)[1];
  r.vertex += na;
  s.vertex += na;
  ends.push_back({p, DartEnd{c, 0}});
  ends.push_back({DartEnd{c, 1}, q});
  ends.push_back({r, DartEnd{c, 2}});
  ends.push_back({DartEnd{c, 3}, s});
  if (cut_vertex) *cut_vertex = c;
  return PlaneMultigraph(c + 1, std::move(ends));
}

PlaneMultigraph figure_eight() {
  return PlaneMultigraph(1, {EdgeEnds{DartEnd{0, 0}, DartEnd{0, 1}}, EdgeEnds{DartEnd{0, 2}, DartEnd{0, 3}}});
}

PlaneMultigraph four_parallel() {
  std::vector<EdgeEnds> ends;
  for (int i = 0; i < 4; ++i) ends.push_back({DartEnd{0, i}, DartEnd{1, (4 - i) & 3}});
  return PlaneMultigraph(2, std::move(ends));
}

PlaneMultigraph octahedron() {
  // K4 as a plane graph: outer triangle 0,1,2 (counterclockwise), centre 3.
  GeneralPlaneGraph k4;
  k4.rotation.resize(4);
  auto edge = [&](VertexId u, VertexId v) {
    const DartId d = static_cast<DartId>(k4.origin.size());
    k4.origin.push_back(u);
    k4.origin.push_back(v);
    return d;
  };
  const DartId e01 = edge(0, 1), e12 = edge(1, 2), e20 = edge(2, 0);
  const DartId e30 = edge(3, 0), e31 = edge(3, 1), e32 = edge(3, 2);
  // Vertex 0 at angle 90, 1 at 210, 2 at 330 degrees; 3 at the origin.
  // Seen from 0: toward 1 at 240, toward 3 at 270, toward 2 at 300 degrees.
  k4.rotation[0] = {e01, twin(e30), twin(e20)};
  k4.rotation[1] = {e12, twin(e31), twin(e01)};
  k4.rotation[2] = {e20, twin(e32), twin(e12)};
  k4.rotation[3] = {e30, e31, e32};
  return medial_graph(k4);
}

PlaneMultigraph doubled_cycle(int n) {
  // Vertex i has slots: 0,1 toward i+1 (outer, inner) and 2,3 toward i-1 (inner, outer).
  std::vector<EdgeEnds> ends;
  for (int i = 0; i < n; ++i) {
    const int j = (i + 1) % n;
    ends.push_back({DartEnd{i, 0}, DartEnd{j, 3}});
    ends.push_back({DartEnd{i, 1}, DartEnd{j, 2}});
  }
  return PlaneMultigraph(n, std::move(ends));
}

}  // namespace celtic
