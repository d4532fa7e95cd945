#pragma once

#include <random>
#include <vector>

#include "celtic/graph.hpp"

namespace celtic {

/// Connected plane graph of arbitrary degree, rotation lists in
/// counterclockwise order. Dart 2e / 2e+1 as in PlaneMultigraph.
struct GeneralPlaneGraph {
  std::vector<VertexId> origin;                // per dart
  std::vector<std::vector<DartId>> rotation;   // per vertex

  int vertex_count() const { return static_cast<int>(rotation.size()); }
  int edge_count() const { return static_cast<int>(origin.size()) / 2; }
  DartId face_next(DartId d) const;
  std::vector<std::vector<DartId>> faces() const;
};

/// Random connected plane graph grown by chords and pendant edges.
GeneralPlaneGraph random_plane_graph(int edge_count, std::mt19937_64& rng);

/// Medial graph: one vertex per edge, one edge per face corner. Always a
/// 4-regular plane multigraph.
PlaneMultigraph medial_graph(const GeneralPlaneGraph& g);

/// Medial graph of a random plane graph with `edge_count` edges.
PlaneMultigraph random_knot_graph(int edge_count, std::mt19937_64& rng);

/// Subdivide edge `e1` of `a` and edge `e2` of `b` and identify the two new
/// vertices. The shared vertex (returned through `cut_vertex`) is a cutpoint.
PlaneMultigraph glue_at_cutpoint(const PlaneMultigraph& a, EdgeId e1, const PlaneMultigraph& b, EdgeId e2,
                                 VertexId* cut_vertex = nullptr);

// Small named graphs.
PlaneMultigraph figure_eight();       // one vertex, two loops side by side
PlaneMultigraph four_parallel();      // two vertices joined by four edges
PlaneMultigraph octahedron();         // medial graph of K4
PlaneMultigraph doubled_cycle(int n); // n-cycle with every edge doubled

}  // namespace celtic
