#include "celtic/graph.hpp"

#include <algorithm>
#include <numeric>
#include <queue>
#include <sstream>

namespace celtic {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::Parse: return "PARSE";
    case ErrorCode::InvalidGraph: return "INVALID_GRAPH";
    case ErrorCode::DualNotBipartite: return "DUAL_NOT_BIPARTITE";
    case ErrorCode::SingularSystem: return "SINGULAR_SYSTEM";
    case ErrorCode::AmbiguousRotation: return "AMBIGUOUS_ROTATION";
    case ErrorCode::Domain: return "DOMAIN";
    case ErrorCode::SingularPoint: return "SINGULAR_POINT";
    case ErrorCode::TooLarge: return "TOO_LARGE";
    case ErrorCode::NotBiconnected: return "NOT_BICONNECTED";
    case ErrorCode::NotACutpoint: return "NOT_A_CUTPOINT";
    case ErrorCode::Layout: return "LAYOUT";
    case ErrorCode::Internal: return "INTERNAL";
  }
  return "UNKNOWN";
}

PlaneMultigraph::PlaneMultigraph(int vertex_count, std::vector<EdgeEnds> ends)
    : vertex_count_(vertex_count), ends_(std::move(ends)) {
  rotation_.assign(std::max(vertex_count_, 0), {kNoDart, kNoDart, kNoDart, kNoDart});
  degree_.assign(std::max(vertex_count_, 0), 0);
  for (EdgeId e = 0; e < edge_count(); ++e) {
    for (int end = 0; end < 2; ++end) {
      const auto [v, s] = ends_[e][end];
      std::ostringstream where;
      where << "edge " << e << " end " << end;
      if (v < 0 || v >= vertex_count_) {
        defects_.push_back("ENDPOINT_OUT_OF_RANGE|" + where.str());
        continue;
      }
      ++degree_[v];
      if (s < 0 || s > 3) {
        defects_.push_back("SLOT_OUT_OF_RANGE|" + where.str());
        continue;
      }
      if (rotation_[v][s] != kNoDart) {
        defects_.push_back("SLOT_CONFLICT|" + where.str());
        continue;
      }
      rotation_[v][s] = dart_of(e, end);
    }
  }
}

PlaneMultigraph PlaneMultigraph::from_rotation(int vertex_count, int edge_count,
                                               const std::vector<std::array<DartId, 4>>& rotation) {
  std::vector<EdgeEnds> ends(edge_count);
  for (VertexId v = 0; v < vertex_count; ++v)
    for (int s = 0; s < 4; ++s) {
      const DartId d = rotation[v][s];
      ends[edge_of(d)][d & 1] = {v, s};
    }
  return PlaneMultigraph(vertex_count, std::move(ends));
}

PlaneMultigraph PlaneMultigraph::mirrored() const {
  std::vector<EdgeEnds> ends = ends_;
  for (auto& e : ends)
    for (auto& end : e) end.slot = (4 - end.slot) & 3;
  PlaneMultigraph m(vertex_count_, std::move(ends));
  if (outer_dart) m.outer_dart = twin(*outer_dart);
  return m;
}

void ValidationReport::add(std::string code, std::string locus, std::string message) {
  ok = false;
  violations.push_back({std::move(code), std::move(locus), std::move(message)});
}

std::vector<int> connected_components(const PlaneMultigraph& g, int* count) {
  const int n = g.vertex_count();
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& e : g.ends()) {
    const int a = e[0].vertex, b = e[1].vertex;
    if (a < 0 || b < 0 || a >= n || b >= n) continue;
    const int ra = find(a), rb = find(b);
    if (ra != rb) parent[std::max(ra, rb)] = std::min(ra, rb);
  }
  std::vector<int> comp(n, -1), label_of_root(n, -1);
  int next = 0;
  for (int v = 0; v < n; ++v) {
    const int r = find(v);
    if (label_of_root[r] < 0) label_of_root[r] = next++;
    comp[v] = label_of_root[r];
  }
  if (count) *count = next;
  return comp;
}

int count_face_orbits(const PlaneMultigraph& g) {
  std::vector<char> seen(g.dart_count(), 0);
  int faces = 0;
  for (DartId d = 0; d < g.dart_count(); ++d) {
    if (seen[d]) continue;
    ++faces;
    for (DartId x = d; !seen[x]; x = g.face_next(x)) seen[x] = 1;
  }
  return faces;
}

ValidationReport validate_graph(const PlaneMultigraph& g) {
  ValidationReport report;
  for (const auto& defect : g.construction_defects()) {
    const auto bar = defect.find('|');
    report.add(defect.substr(0, bar), defect.substr(bar + 1), "malformed edge endpoint");
  }
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    if (g.degree()[v] != 4) {
      report.add("DEGREE_NOT_4", "vertex " + std::to_string(v),
                 "vertex has degree " + std::to_string(g.degree()[v]));
    }
  }
  for (DartId d = 0; d < g.dart_count(); ++d) {
    if (twin(twin(d)) != d || twin(d) == d)
      report.add("TWIN_INVOLUTION", "dart " + std::to_string(d), "twin is not an involution");
  }
  if (!report.ok) return report;

  // Every dart must sit in exactly one rotation slot.
  std::vector<int> hits(g.dart_count(), 0);
  for (VertexId v = 0; v < g.vertex_count(); ++v)
    for (DartId d : g.rotation(v))
      if (d != kNoDart) ++hits[d];
  for (DartId d = 0; d < g.dart_count(); ++d) {
    if (hits[d] != 1)
      report.add("ROTATION_PARTITION", "dart " + std::to_string(d),
                 "dart appears in " + std::to_string(hits[d]) + " rotation slots");
  }
  if (!report.ok) return report;

  int components = 0;
  const auto comp = connected_components(g, &components);
  std::vector<int> v_count(components, 0), e_count(components, 0), f_count(components, 0);
  for (VertexId v = 0; v < g.vertex_count(); ++v) ++v_count[comp[v]];
  for (EdgeId e = 0; e < g.edge_count(); ++e) ++e_count[comp[g.ends(e)[0].vertex]];
  std::vector<char> seen(g.dart_count(), 0);
  for (DartId d = 0; d < g.dart_count(); ++d) {
    if (seen[d]) continue;
    ++f_count[comp[g.origin(d)]];
    for (DartId x = d; !seen[x]; x = g.face_next(x)) seen[x] = 1;
  }
  for (int c = 0; c < components; ++c) {
    const int expected = e_count[c] - v_count[c] + 2;
    if (f_count[c] != expected) {
      report.add("EULER_CHARACTERISTIC", "component " + std::to_string(c),
                 "traced " + std::to_string(f_count[c]) + " faces, a plane embedding needs " +
                     std::to_string(expected));
    }
  }
  return report;
}

namespace {

void require_valid(const PlaneMultigraph& g) {
  const auto report = validate_graph(g);
  if (!report.ok) {
    const auto& v = report.violations.front();
    throw Error(ErrorCode::InvalidGraph, v.code + " at " + v.locus + ": " + v.message);
  }
}

}  // namespace

std::vector<Face> trace_faces(const PlaneMultigraph& g) {
  require_valid(g);
  const auto comp = connected_components(g);
  std::vector<Face> faces;
  std::vector<char> seen(g.dart_count(), 0);
  for (DartId d = 0; d < g.dart_count(); ++d) {
    if (seen[d]) continue;
    Face f;
    f.component = comp[g.origin(d)];
    for (DartId x = d; !seen[x]; x = g.face_next(x)) {
      seen[x] = 1;
      f.boundary.push_back(x);
    }
    faces.push_back(std::move(f));
  }
  return faces;
}

std::vector<int> left_face_index(const std::vector<Face>& faces, int dart_count) {
  std::vector<int> index(dart_count, -1);
  for (int f = 0; f < static_cast<int>(faces.size()); ++f)
    for (DartId d : faces[f].boundary) index[d] = f;
  return index;
}

int outer_face(const PlaneMultigraph& g, const std::vector<Face>& faces, int component) {
  if (g.outer_dart && *g.outer_dart >= 0 && *g.outer_dart < g.dart_count()) {
    const auto index = left_face_index(faces, g.dart_count());
    const int marked = index[*g.outer_dart];
    if (marked >= 0 && faces[marked].component == component) return marked;
  }
  int best = -1;
  for (int f = 0; f < static_cast<int>(faces.size()); ++f) {
    if (faces[f].component != component) continue;
    if (best < 0 || faces[f].boundary.size() > faces[best].boundary.size() ||
        (faces[f].boundary.size() == faces[best].boundary.size() &&
         faces[f].boundary.front() < faces[best].boundary.front()))
      best = f;
  }
  return best;
}

std::vector<Face> two_color_faces(const PlaneMultigraph& g) {
  auto faces = trace_faces(g);
  const auto index = left_face_index(faces, g.dart_count());
  int components = 0;
  connected_components(g, &components);

  for (int c = 0; c < components; ++c) {
    const int root = outer_face(g, faces, c);
    if (root < 0) continue;
    faces[root].color = FaceColor::Green;
    std::queue<int> queue;
    queue.push(root);
    while (!queue.empty()) {
      const int f = queue.front();
      queue.pop();
      const FaceColor other = faces[f].color == FaceColor::Green ? FaceColor::Blue : FaceColor::Green;
      for (DartId d : faces[f].boundary) {
        const int across = index[twin(d)];
        if (faces[across].color == FaceColor::Uncolored) {
          faces[across].color = other;
          queue.push(across);
        } else if (faces[across].color != other) {
          throw Error(ErrorCode::DualNotBipartite,
                      "faces on both sides of edge " + std::to_string(edge_of(d)) + " share a colour");
        }
      }
    }
  }
  return faces;
}

}  // namespace celtic
