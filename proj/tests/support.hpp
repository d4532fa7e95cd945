#pragma once

#include <algorithm>
#include <random>
#include <string>
#include <vector>

#include "celtic/embedding.hpp"
#include "celtic/generators.hpp"
#include "celtic/graph_io.hpp"
#include "celtic/threading.hpp"

namespace celtic::testing {

inline std::string fixture_path(const std::string& name) { return std::string(CELTIC_FIXTURE_DIR) + "/" + name + ".json"; }

inline GraphDocument fixture(const std::string& name) { return load_graph(fixture_path(name)); }

inline const std::vector<std::string>& fixture_names() {
  static const std::vector<std::string> names{"fig5",    "fig7a",      "fig7b",        "prism", "trefoil",
                                              "k4prime", "octahedron", "figure_eight", "bowtie"};
  return names;
}

/// Equal as cyclic sequences, allowing reversal.
template <class T>
bool same_cycle(std::vector<T> a, const std::vector<T>& b) {
  if (a.size() != b.size()) return false;
  for (int pass = 0; pass < 2; ++pass) {
    for (std::size_t r = 0; r < a.size(); ++r) {
      std::rotate(a.begin(), a.begin() + 1, a.end());
      if (a == b) return true;
    }
    std::reverse(a.begin(), a.end());
  }
  return a.empty();
}

/// Hand-rolled thread walk straight off the slot table: leave through the
/// slot opposite the one we arrived in.
inline std::vector<std::vector<DartId>> walk_circuits(const PlaneMultigraph& g) {
  std::vector<char> used(g.edge_count(), 0);
  std::vector<std::vector<DartId>> out;
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    if (used[e]) continue;
    std::vector<DartId> c;
    DartId d = 2 * e;
    do {
      c.push_back(d);
      used[d / 2] = 1;
      const DartEnd arrive = g.ends(d / 2)[(d & 1) ^ 1];
      d = g.at(arrive.vertex, (arrive.slot + 2) % 4);
    } while (d != 2 * e);
    out.push_back(c);
  }
  return out;
}

/// Medial graphs of random plane graphs with sizes spread over [lo, hi] edges.
inline std::vector<PlaneMultigraph> random_knot_graphs(int count, std::uint64_t seed, int lo, int hi) {
  std::mt19937_64 rng(seed);
  std::vector<PlaneMultigraph> out;
  for (int i = 0; i < count; ++i) {
    const int m = lo + static_cast<int>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
    out.push_back(random_knot_graph(m, rng));
  }
  return out;
}

inline std::vector<PlaneMultigraph> random_biconnected_small(int count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<PlaneMultigraph> out;
  for (int tries = 0; static_cast<int>(out.size()) < count && tries < 100000; ++tries) {
    const int m = 2 + static_cast<int>(rng() % 7);
    auto g = random_knot_graph(m, rng);
    if (g.vertex_count() <= kExhaustiveVertexLimit && is_biconnected(abstract_of(g))) out.push_back(std::move(g));
  }
  return out;
}

/// Two random knot graphs joined at a fresh cut vertex.
inline std::vector<std::pair<PlaneMultigraph, VertexId>> random_cutpoint_graphs(int count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<std::pair<PlaneMultigraph, VertexId>> out;
  for (int i = 0; i < count; ++i) {
    const auto a = random_knot_graph(2 + static_cast<int>(rng() % 12), rng);
    const auto b = random_knot_graph(2 + static_cast<int>(rng() % 12), rng);
    VertexId cut = -1;
    auto g = glue_at_cutpoint(a, static_cast<EdgeId>(rng() % a.edge_count()), b,
                              static_cast<EdgeId>(rng() % b.edge_count()), &cut);
    out.emplace_back(std::move(g), cut);
  }
  return out;
}

}  // namespace celtic::testing
