#pragma once

#include <span>
#include <vector>

#include "celtic/graph.hpp"

namespace celtic {

/// Length-two path through a vertex whose two edges sit in opposite slots.
struct Thread {
  DartId in = kNoDart;   // arrives at the midpoint
  DartId out = kNoDart;  // leaves the midpoint
};

struct Circuit {
  int id = 0;
  std::vector<DartId> darts;  // consecutive darts form threads, cyclically

  int length() const { return static_cast<int>(darts.size()); }
  std::vector<VertexId> vertices(const PlaneMultigraph& g) const;
  std::vector<EdgeId> edges() const;
};

struct CircuitPartition {
  std::vector<Circuit> circuits;
  std::vector<int> edge_to_circuit;

  /// Sorted circuit lengths.
  std::vector<int> length_multiset() const;
  /// Every thread (in, out) in circuit order.
  std::vector<Thread> threads() const;
};

/// Signs per thread, keyed by the thread's incoming dart. +1 means the
/// thread passes over at its midpoint. Darts not used as thread inputs
/// (the reverse direction of each circuit edge) carry 0.
class UnderOverAssignment {
 public:
  UnderOverAssignment() = default;
  explicit UnderOverAssignment(int dart_count) : sign_(dart_count, 0) {}

  int sign(DartId in) const { return sign_[in]; }
  void set(DartId in, int value) { sign_[in] = static_cast<signed char>(value); }
  int dart_count() const { return static_cast<int>(sign_.size()); }

 private:
  std::vector<signed char> sign_;
};

/// The unique outgoing dart at head(d) opposite to twin(d).
DartId next_dart_after(const PlaneMultigraph& g, DartId d);

CircuitPartition threaded_circuit_partition(const PlaneMultigraph& g);

/// Same partition, extracted by seeding edges in the given order. The
/// result is canonicalized, so it must not depend on the order.
CircuitPartition threaded_circuit_partition(const PlaneMultigraph& g, std::span<const EdgeId> seed_order);

/// Unchecked extraction for hot loops (embedding enumeration). Returns only
/// the number of circuits.
int count_threaded_circuits(const PlaneMultigraph& g);

UnderOverAssignment under_over(const PlaneMultigraph& g, const CircuitPartition& p,
                               const std::vector<Face>& colored_faces);

bool is_consistent(const PlaneMultigraph& g, const CircuitPartition& p, const UnderOverAssignment& a);
bool is_alternating(const CircuitPartition& p, const UnderOverAssignment& a);

inline bool is_threaded_euler(const CircuitPartition& p) { return p.circuits.size() == 1; }

}  // namespace celtic
