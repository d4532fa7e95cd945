#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace celtic {

using VertexId = int;
using EdgeId = int;
using DartId = int;

inline constexpr DartId kNoDart = -1;

// Edge e owns darts 2e (end 0) and 2e+1 (end 1).
constexpr DartId twin(DartId d) { return d ^ 1; }
constexpr EdgeId edge_of(DartId d) { return d >> 1; }
constexpr DartId dart_of(EdgeId e, int end) { return 2 * e + end; }

enum class ErrorCode {
  Parse,
  InvalidGraph,
  DualNotBipartite,
  SingularSystem,
  AmbiguousRotation,
  Domain,
  SingularPoint,
  TooLarge,
  NotBiconnected,
  NotACutpoint,
  Layout,
  Internal,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

struct DartEnd {
  VertexId vertex = 0;
  int slot = 0;
  friend bool operator==(const DartEnd&, const DartEnd&) = default;
};

using EdgeEnds = std::array<DartEnd, 2>;

/// 4-regular plane multigraph stored as a rotation system.
///
/// Slot i of a vertex holds the i-th dart in counterclockwise order. Loops
/// occupy two slots of the same vertex. Construction never throws on
/// structural problems (missing or clashing slots); those are reported by
/// validate_graph() so that malformed input can be diagnosed in full.
class PlaneMultigraph {
 public:
  PlaneMultigraph() = default;
  PlaneMultigraph(int vertex_count, std::vector<EdgeEnds> ends);

  int vertex_count() const { return vertex_count_; }
  int edge_count() const { return static_cast<int>(ends_.size()); }
  int dart_count() const { return 2 * edge_count(); }

  const std::vector<EdgeEnds>& ends() const { return ends_; }
  const EdgeEnds& ends(EdgeId e) const { return ends_[e]; }

  VertexId origin(DartId d) const { return ends_[edge_of(d)][d & 1].vertex; }
  VertexId head(DartId d) const { return origin(twin(d)); }
  int slot(DartId d) const { return ends_[edge_of(d)][d & 1].slot; }
  bool is_loop(EdgeId e) const { return ends_[e][0].vertex == ends_[e][1].vertex; }

  /// Dart in the given slot, or kNoDart when the slot is empty.
  DartId at(VertexId v, int slot) const { return rotation_[v][slot]; }
  const std::array<DartId, 4>& rotation(VertexId v) const { return rotation_[v]; }

  DartId rotation_next(DartId d) const { return at(origin(d), (slot(d) + 1) & 3); }
  DartId rotation_prev(DartId d) const { return at(origin(d), (slot(d) + 3) & 3); }
  DartId rotation_opposite(DartId d) const { return at(origin(d), (slot(d) + 2) & 3); }

  /// Next dart of the face lying to the left of d.
  DartId face_next(DartId d) const { return rotation_prev(twin(d)); }

  /// Incidence counts per vertex as declared by the edge list.
  const std::vector<int>& degree() const { return degree_; }

  /// Structural defects found while building the rotation table.
  const std::vector<std::string>& construction_defects() const { return defects_; }

  /// Optional outer face marker: a dart lying on the outer face (left side).
  std::optional<DartId> outer_dart;

  /// Copy with every rotation reversed (mirror image).
  PlaneMultigraph mirrored() const;

  /// Rebuild from explicit rotation lists (rotation[v][slot] = dart).
  static PlaneMultigraph from_rotation(int vertex_count, int edge_count,
                                       const std::vector<std::array<DartId, 4>>& rotation);

 private:
  int vertex_count_ = 0;
  std::vector<EdgeEnds> ends_;
  std::vector<std::array<DartId, 4>> rotation_;
  std::vector<int> degree_;
  std::vector<std::string> defects_;
};

enum class FaceColor : std::uint8_t { Uncolored, Green, Blue };

struct Face {
  std::vector<DartId> boundary;  // starts at the smallest dart id
  FaceColor color = FaceColor::Uncolored;
  int component = 0;
};

struct Violation {
  std::string code;
  std::string locus;
  std::string message;
};

struct ValidationReport {
  bool ok = true;
  std::vector<Violation> violations;

  void add(std::string code, std::string locus, std::string message);
};

ValidationReport validate_graph(const PlaneMultigraph& g);

/// Connected component index per vertex; components numbered by smallest vertex.
std::vector<int> connected_components(const PlaneMultigraph& g, int* count = nullptr);

/// Orbits of face_next without validation. Used by validation itself and by
/// enumeration, where the graph is known to be structurally sound.
int count_face_orbits(const PlaneMultigraph& g);

std::vector<Face> trace_faces(const PlaneMultigraph& g);

/// Index into faces of the face lying to the left of each dart.
std::vector<int> left_face_index(const std::vector<Face>& faces, int dart_count);

/// Outer face index for a component: the marked face if any, else the face
/// with the longest boundary, ties broken by smallest dart id.
int outer_face(const PlaneMultigraph& g, const std::vector<Face>& faces, int component);

/// Proper two-colouring of the faces, outer face of each component green.
std::vector<Face> two_color_faces(const PlaneMultigraph& g);

}  // namespace celtic
