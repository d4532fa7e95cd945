#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <set>
#include <utility>
#include <vector>

#include "celtic/graph.hpp"

namespace celtic {

/// Multigraph without an embedding. Edge e joins edges[e].first and
/// edges[e].second; loops have equal endpoints.
struct AbstractGraph {
  int vertex_count = 0;
  std::vector<std::pair<VertexId, VertexId>> edges;
};

AbstractGraph abstract_of(const PlaneMultigraph& g);

bool is_connected(const AbstractGraph& g);
/// Connected and free of cut vertices. Graphs with at most two vertices
/// count as biconnected when connected.
bool is_biconnected(const AbstractGraph& g);

inline constexpr int kExhaustiveVertexLimit = 8;

/// Canonical rotation key, invariant under relabelling parallel edges and
/// reversing loops. Vertices keep their ids; mirror images differ.
std::vector<int> canonical_rotation_key(const PlaneMultigraph& g);

/// Calls `visit` for every plane rotation system of `base`, without
/// duplicates, until `visit` returns false or `cap` embeddings were produced.
/// Throws TOO_LARGE above kExhaustiveVertexLimit vertices.
std::size_t for_each_plane_embedding(const AbstractGraph& base, std::size_t cap,
                                     const std::function<bool(const PlaneMultigraph&)>& visit);

std::vector<PlaneMultigraph> enumerate_plane_embeddings(const AbstractGraph& base, std::size_t cap);

/// Reverse the part of `g` inside `component` (a vertex set cut off by the
/// separation pair {c, d}). Returns false when the attachment darts at c or
/// d are not contiguous.
bool flip_component(const PlaneMultigraph& g, const std::vector<char>& in_component, VertexId c, VertexId d,
                    PlaneMultigraph& out);

/// Embeddings reachable from `seed` by flips at separation pairs and by
/// mirroring, in breadth-first order.
std::vector<PlaneMultigraph> flip_closure(const PlaneMultigraph& seed, std::size_t cap);

struct InvarianceReport {
  std::map<int, int> cardinalities;           // |C| -> number of embeddings
  std::set<std::vector<int>> length_multisets;
  std::size_t embeddings = 0;
  bool exhaustive = true;
  bool invariant = false;
};

/// Exhaustive for small graphs, flip closure of `seed` otherwise.
/// Throws NOT_BICONNECTED.
InvarianceReport check_cardinality_invariance(const PlaneMultigraph& seed, std::size_t cap = 200000);
InvarianceReport check_cardinality_invariance(const AbstractGraph& base, std::size_t cap = 200000);

struct CutpointReport {
  int whole = 0;   // |C|
  int first = 0;   // |C1| on the first loop-augmented side
  int second = 0;  // |C2|
  bool cut_edges_share_circuit = false;

  int rhs() const { return first + second - 1; }
  bool equal() const { return whole == rhs(); }
};

/// The two sides of a cutpoint, each closed with a loop at the cut vertex
/// in the slots the other side occupied. Throws NOT_A_CUTPOINT.
std::pair<PlaneMultigraph, PlaneMultigraph> split_at_cutpoint(const PlaneMultigraph& g, VertexId cut);

CutpointReport check_cutpoint_additivity(const PlaneMultigraph& g, VertexId cut);

/// Vertices whose removal splits the edges into exactly two blocks of two
/// darts each.
std::vector<VertexId> cutpoints(const PlaneMultigraph& g);

}  // namespace celtic
