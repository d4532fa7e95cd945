#include "celtic/layout.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

#include <Eigen/Sparse>
#include <Eigen/SparseLU>

namespace celtic {

namespace {

std::vector<std::set<VertexId>> skeleton(const PlaneMultigraph& g) {
  std::vector<std::set<VertexId>> adj(g.vertex_count());
  for (const auto& e : g.ends()) {
    if (e[0].vertex == e[1].vertex) continue;
    adj[e[0].vertex].insert(e[1].vertex);
    adj[e[1].vertex].insert(e[0].vertex);
  }
  return adj;
}

}  // namespace

double tutte_residual(const PlaneMultigraph& g, const Layout& layout, const std::vector<char>& pinned) {
  const auto adj = skeleton(g);
  double worst = 0.0;
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    if (pinned[v] || adj[v].empty()) continue;
    Point mean = Point::Zero();
    for (VertexId w : adj[v]) mean += layout.positions[w];
    mean /= static_cast<double>(adj[v].size());
    worst = std::max(worst, (mean - layout.positions[v]).lpNorm<Eigen::Infinity>());
  }
  return worst;
}

Layout tutte_layout(const PlaneMultigraph& g, int outer_face_index, const TutteOptions& options) {
  const auto faces = trace_faces(g);
  int components = 0;
  const auto comp = connected_components(g, &components);
  const auto adj = skeleton(g);
  const int n = g.vertex_count();

  Layout layout;
  layout.positions.assign(n, Point::Zero());
  std::vector<char> pinned(n, 0);

  for (int c = 0; c < components; ++c) {
    int outer = outer_face(g, faces, c);
    if (outer_face_index >= 0 && faces[outer_face_index].component == c) outer = outer_face_index;
    const Point offset(2.5 * options.radius * c, 0.0);

    // The outer face lies to the left of its darts, so its boundary runs clockwise.
    std::vector<VertexId> ring;
    for (DartId d : faces[outer].boundary) {
      const VertexId v = g.origin(d);
      if (std::find(ring.begin(), ring.end(), v) == ring.end()) ring.push_back(v);
    }
    const double k = static_cast<double>(ring.size());
    for (std::size_t i = 0; i < ring.size(); ++i) {
      const double a = std::numbers::pi / 2 - 2 * std::numbers::pi * static_cast<double>(i) / k;
      layout.positions[ring[i]] = ring.size() == 1 ? offset : offset + options.radius * Point(std::cos(a), std::sin(a));
      pinned[ring[i]] = 1;
    }

    std::vector<VertexId> free;
    std::vector<int> index(n, -1);
    for (VertexId v = 0; v < n; ++v)
      if (comp[v] == c && !pinned[v]) {
        index[v] = static_cast<int>(free.size());
        free.push_back(v);
      }
    if (free.empty()) continue;

    const int f = static_cast<int>(free.size());
    std::vector<Eigen::Triplet<double>> triplets;
    Eigen::MatrixX2d rhs = Eigen::MatrixX2d::Zero(f, 2);
    for (int i = 0; i < f; ++i) {
      const VertexId v = free[i];
      triplets.emplace_back(i, i, static_cast<double>(adj[v].size()));
      for (VertexId w : adj[v]) {
        if (pinned[w]) rhs.row(i) += layout.positions[w].transpose();
        else triplets.emplace_back(i, index[w], -1.0);
      }
    }
    Eigen::SparseMatrix<double> laplacian(f, f);
    laplacian.setFromTriplets(triplets.begin(), triplets.end());
    Eigen::SparseLU<Eigen::SparseMatrix<double>> solver;
    solver.compute(laplacian);
    if (solver.info() != Eigen::Success)
      throw Error(ErrorCode::SingularSystem, "barycentric system is singular for component " + std::to_string(c));
    const Eigen::MatrixX2d x = solver.solve(rhs);
    if (solver.info() != Eigen::Success || !x.allFinite())
      throw Error(ErrorCode::SingularSystem, "barycentric solve failed for component " + std::to_string(c));
    for (int i = 0; i < f; ++i) layout.positions[free[i]] = x.row(i).transpose();
  }

  if (tutte_residual(g, layout, pinned) > 1e-9)
    throw Error(ErrorCode::SingularSystem, "barycentric residual above tolerance");
  if (!coincident_vertices(layout, options.min_separation).empty())
    throw Error(ErrorCode::Layout, "barycentric layout places two vertices on top of each other");
  return layout;
}

Layout tutte_layout(const PlaneMultigraph& g, const TutteOptions& options) { return tutte_layout(g, -1, options); }

std::optional<double> dart_angle(const PlaneMultigraph& g, const Layout& layout, DartId d) {
  if (const auto h = layout.hint(d); h && h->norm() > 0) return std::atan2(h->y(), h->x());
  if (g.is_loop(edge_of(d))) return std::nullopt;
  const Point dir = layout.positions[g.head(d)] - layout.positions[g.origin(d)];
  if (dir.norm() == 0.0) return std::nullopt;
  return std::atan2(dir.y(), dir.x());
}

PlaneMultigraph rotation_from_coordinates(const AbstractGraph& g, const Layout& layout) {
  const int m = static_cast<int>(g.edges.size());
  std::vector<EdgeEnds> ends(m);
  std::vector<std::vector<std::pair<double, DartId>>> around(g.vertex_count);
  for (EdgeId e = 0; e < m; ++e) {
    const auto [u, v] = g.edges[e];
    for (int end = 0; end < 2; ++end) {
      const DartId d = dart_of(e, end);
      const VertexId from = end == 0 ? u : v;
      const VertexId to = end == 0 ? v : u;
      Point dir = layout.positions[to] - layout.positions[from];
      if (const auto h = layout.hint(d)) dir = *h;
      if (dir.norm() == 0.0)
        throw Error(ErrorCode::AmbiguousRotation,
                    "edge " + std::to_string(e) + " has no direction at vertex " + std::to_string(from));
      around[from].emplace_back(std::atan2(dir.y(), dir.x()), d);
    }
  }
  for (VertexId v = 0; v < g.vertex_count; ++v) {
    auto& list = around[v];
    std::sort(list.begin(), list.end());
    for (std::size_t i = 0; i < list.size(); ++i) {
      const double next = i + 1 < list.size() ? list[i + 1].first : list.front().first + 2 * std::numbers::pi;
      if (list.size() > 1 && std::abs(next - list[i].first) < 1e-12)
        throw Error(ErrorCode::AmbiguousRotation, "two edges leave vertex " + std::to_string(v) + " at the same angle");
      const DartId d = list[i].second;
      ends[edge_of(d)][d & 1] = {v, static_cast<int>(i)};
    }
  }
  return PlaneMultigraph(g.vertex_count, std::move(ends));
}

std::vector<std::pair<VertexId, VertexId>> coincident_vertices(const Layout& layout, double min_separation) {
  std::vector<std::pair<VertexId, VertexId>> out;
  const int n = static_cast<int>(layout.positions.size());
  for (VertexId a = 0; a < n; ++a)
    for (VertexId b = a + 1; b < n; ++b)
      if ((layout.positions[a] - layout.positions[b]).norm() < min_separation) out.emplace_back(a, b);
  return out;
}

namespace {

double orient(const Point& a, const Point& b, const Point& c) {
  return (b - a).x() * (c - a).y() - (b - a).y() * (c - a).x();
}

}  // namespace

int count_skeleton_crossings(const PlaneMultigraph& g, const Layout& layout) {
  std::set<std::pair<VertexId, VertexId>> simple;
  for (const auto& e : g.ends())
    if (e[0].vertex != e[1].vertex)
      simple.insert({std::min(e[0].vertex, e[1].vertex), std::max(e[0].vertex, e[1].vertex)});
  const std::vector<std::pair<VertexId, VertexId>> segs(simple.begin(), simple.end());
  int crossings = 0;
  for (std::size_t i = 0; i < segs.size(); ++i)
    for (std::size_t j = i + 1; j < segs.size(); ++j) {
      const auto [a, b] = segs[i];
      const auto [c, d] = segs[j];
      if (a == c || a == d || b == c || b == d) continue;
      const auto& pa = layout.positions[a];
      const auto& pb = layout.positions[b];
      const auto& pc = layout.positions[c];
      const auto& pd = layout.positions[d];
      const double o1 = orient(pa, pb, pc), o2 = orient(pa, pb, pd);
      const double o3 = orient(pc, pd, pa), o4 = orient(pc, pd, pb);
      if (o1 * o2 < 0 && o3 * o4 < 0) ++crossings;
    }
  return crossings;
}

}  // namespace celtic
