#include "celtic/threading.hpp"

#include <algorithm>
#include <numeric>

namespace celtic {

std::vector<VertexId> Circuit::vertices(const PlaneMultigraph& g) const {
  std::vector<VertexId> out;
  out.reserve(darts.size());
  for (DartId d : darts) out.push_back(g.origin(d));
  return out;
}

std::vector<EdgeId> Circuit::edges() const {
  std::vector<EdgeId> out;
  out.reserve(darts.size());
  for (DartId d : darts) out.push_back(edge_of(d));
  return out;
}

std::vector<int> CircuitPartition::length_multiset() const {
  std::vector<int> lengths;
  for (const auto& c : circuits) lengths.push_back(c.length());
  std::sort(lengths.begin(), lengths.end());
  return lengths;
}

std::vector<Thread> CircuitPartition::threads() const {
  std::vector<Thread> out;
  for (const auto& c : circuits)
    for (int i = 0; i < c.length(); ++i) out.push_back({c.darts[i], c.darts[(i + 1) % c.length()]});
  return out;
}

DartId next_dart_after(const PlaneMultigraph& g, DartId d) { return g.rotation_opposite(twin(d)); }

namespace {

// Start at the smallest edge; orient so that the following edge is the
// smaller of the two neighbours (even start dart on ties).
std::vector<DartId> canonical(std::vector<DartId> darts) {
  const int k = static_cast<int>(darts.size());
  int start = 0;
  for (int i = 1; i < k; ++i)
    if (edge_of(darts[i]) < edge_of(darts[start])) start = i;
  std::rotate(darts.begin(), darts.begin() + start, darts.end());

  std::vector<DartId> reversed(k);
  reversed[0] = twin(darts[0]);
  for (int i = 1; i < k; ++i) reversed[i] = twin(darts[k - i]);

  const EdgeId fwd_next = edge_of(darts[1 % k]);
  const EdgeId rev_next = edge_of(reversed[1 % k]);
  if (rev_next < fwd_next || (rev_next == fwd_next && (reversed[0] & 1) == 0 && (darts[0] & 1) == 1))
    return reversed;
  return darts;
}

}  // namespace

CircuitPartition threaded_circuit_partition(const PlaneMultigraph& g, std::span<const EdgeId> seed_order) {
  const auto report = validate_graph(g);
  if (!report.ok) {
    const auto& v = report.violations.front();
    throw Error(ErrorCode::InvalidGraph, v.code + " at " + v.locus + ": " + v.message);
  }
  std::vector<char> used(g.edge_count(), 0);
  std::vector<std::vector<DartId>> raw;
  for (EdgeId seed : seed_order) {
    if (used[seed]) continue;
    std::vector<DartId> darts;
    const DartId first = dart_of(seed, 0);
    DartId d = first;
    do {
      if (used[edge_of(d)])
        throw Error(ErrorCode::Internal, "thread walk revisited edge " + std::to_string(edge_of(d)));
      used[edge_of(d)] = 1;
      darts.push_back(d);
      d = next_dart_after(g, d);
    } while (d != first);
    raw.push_back(canonical(std::move(darts)));
  }
  std::sort(raw.begin(), raw.end(),
            [](const auto& a, const auto& b) { return edge_of(a.front()) < edge_of(b.front()); });

  CircuitPartition p;
  p.edge_to_circuit.assign(g.edge_count(), -1);
  for (auto& darts : raw) {
    Circuit c;
    c.id = static_cast<int>(p.circuits.size());
    c.darts = std::move(darts);
    for (DartId d : c.darts) p.edge_to_circuit[edge_of(d)] = c.id;
    p.circuits.push_back(std::move(c));
  }
  if (std::find(p.edge_to_circuit.begin(), p.edge_to_circuit.end(), -1) != p.edge_to_circuit.end())
    throw Error(ErrorCode::Internal, "seed order did not cover every edge");
  return p;
}

CircuitPartition threaded_circuit_partition(const PlaneMultigraph& g) {
  std::vector<EdgeId> order(g.edge_count());
  std::iota(order.begin(), order.end(), 0);
  return threaded_circuit_partition(g, order);
}

int count_threaded_circuits(const PlaneMultigraph& g) {
  std::vector<char> used(g.edge_count(), 0);
  int circuits = 0;
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    if (used[e]) continue;
    ++circuits;
    const DartId first = dart_of(e, 0);
    DartId d = first;
    do {
      used[edge_of(d)] = 1;
      d = next_dart_after(g, d);
    } while (d != first);
  }
  return circuits;
}

UnderOverAssignment under_over(const PlaneMultigraph& g, const CircuitPartition& p,
                               const std::vector<Face>& colored_faces) {
  const auto left = left_face_index(colored_faces, g.dart_count());
  UnderOverAssignment a(g.dart_count());
  for (const auto& c : p.circuits) {
    for (DartId d : c.darts) {
      const int f = left[d];
      if (f < 0 || colored_faces[f].color == FaceColor::Uncolored)
        throw Error(ErrorCode::Internal, "face colouring does not cover dart " + std::to_string(d));
      a.set(d, colored_faces[f].color == FaceColor::Green ? +1 : -1);
    }
  }
  if (!is_consistent(g, p, a) || !is_alternating(p, a))
    throw Error(ErrorCode::Internal, "under-over assignment is not consistent and alternating");
  return a;
}

bool is_consistent(const PlaneMultigraph& g, const CircuitPartition& p, const UnderOverAssignment& a) {
  std::vector<int> sum(g.vertex_count(), 0), count(g.vertex_count(), 0);
  for (const auto& t : p.threads()) {
    const VertexId mid = g.head(t.in);
    const int s = a.sign(t.in);
    if (s != 1 && s != -1) return false;
    sum[mid] += s;
    ++count[mid];
  }
  for (VertexId v = 0; v < g.vertex_count(); ++v)
    if (count[v] != 2 || sum[v] != 0) return false;
  return true;
}

bool is_alternating(const CircuitPartition& p, const UnderOverAssignment& a) {
  for (const auto& c : p.circuits) {
    for (int i = 0; i < c.length(); ++i) {
      const int s = a.sign(c.darts[i]);
      const int next = a.sign(c.darts[(i + 1) % c.length()]);
      if (s == 0 || s != -next) return false;
    }
  }
  return true;
}

}  // namespace celtic
