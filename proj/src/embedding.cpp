#include "celtic/embedding.hpp"

#include <algorithm>
#include <deque>
#include <numeric>

#include "celtic/threading.hpp"

namespace celtic {

AbstractGraph abstract_of(const PlaneMultigraph& g) {
  AbstractGraph a;
  a.vertex_count = g.vertex_count();
  for (const auto& e : g.ends()) a.edges.emplace_back(e[0].vertex, e[1].vertex);
  return a;
}

namespace {

bool connected_without(const AbstractGraph& g, VertexId removed) {
  const int n = g.vertex_count;
  std::vector<std::vector<VertexId>> adj(n);
  for (const auto& [u, v] : g.edges) {
    if (u == removed || v == removed) continue;
    adj[u].push_back(v);
    adj[v].push_back(u);
  }
  VertexId start = -1;
  for (VertexId v = 0; v < n; ++v)
    if (v != removed) {
      start = v;
      break;
    }
  if (start < 0) return true;
  std::vector<char> seen(n, 0);
  std::vector<VertexId> stack{start};
  seen[start] = 1;
  int reached = 1;
  while (!stack.empty()) {
    const VertexId x = stack.back();
    stack.pop_back();
    for (VertexId y : adj[x])
      if (!seen[y]) {
        seen[y] = 1;
        ++reached;
        stack.push_back(y);
      }
  }
  return reached == n - (removed >= 0 ? 1 : 0);
}

bool is_plane(const PlaneMultigraph& g) {
  return count_face_orbits(g) == g.edge_count() - g.vertex_count() + 2;
}

// Rotation per vertex rotated so the smallest dart comes first.
std::vector<int> labelled_key(const PlaneMultigraph& g) {
  std::vector<int> key;
  key.reserve(4 * g.vertex_count());
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    auto r = g.rotation(v);
    std::rotate(r.begin(), std::min_element(r.begin(), r.end()), r.end());
    key.insert(key.end(), r.begin(), r.end());
  }
  return key;
}

}  // namespace

bool is_connected(const AbstractGraph& g) { return g.vertex_count == 0 || connected_without(g, -1); }

bool is_biconnected(const AbstractGraph& g) {
  if (!is_connected(g)) return false;
  if (g.vertex_count <= 2) return true;
  for (VertexId v = 0; v < g.vertex_count; ++v)
    if (!connected_without(g, v)) return false;
  return true;
}

std::vector<int> canonical_rotation_key(const PlaneMultigraph& g) {
  const int m = g.edge_count();
  // Parallel classes keyed by sorted endpoints.
  std::map<std::pair<VertexId, VertexId>, std::vector<EdgeId>> class_of;
  std::vector<EdgeId> loops;
  for (EdgeId e = 0; e < m; ++e) {
    const VertexId a = g.ends(e)[0].vertex, b = g.ends(e)[1].vertex;
    class_of[{std::min(a, b), std::max(a, b)}].push_back(e);
    if (a == b) loops.push_back(e);
  }
  std::vector<std::vector<EdgeId>> classes;
  double group = static_cast<double>(1u << std::min<std::size_t>(loops.size(), 30));
  for (auto& [_, edges] : class_of) {
    for (std::size_t k = 2; k <= edges.size(); ++k) group *= static_cast<double>(k);
    classes.push_back(edges);
  }

  std::vector<EdgeId> label(m);
  std::iota(label.begin(), label.end(), 0);
  std::vector<char> flip(m, 0);
  std::vector<int> best, key(4 * g.vertex_count());

  auto evaluate = [&] {
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
      std::array<int, 4> r{};
      for (int s = 0; s < 4; ++s) {
        const DartId d = g.at(v, s);
        const EdgeId e = edge_of(d);
        int end;
        if (g.is_loop(e)) {
          end = (d & 1) ^ flip[e];
        } else {
          const VertexId other = g.head(d);
          end = v < other ? 0 : 1;
        }
        r[s] = 2 * label[e] + end;
      }
      std::rotate(r.begin(), std::min_element(r.begin(), r.end()), r.end());
      std::copy(r.begin(), r.end(), key.begin() + 4 * v);
    }
    if (best.empty() || key < best) best = key;
  };

  if (group > 20000.0) {
    evaluate();
    return best;
  }

  std::function<void(std::size_t)> over_loops = [&](std::size_t i) {
    if (i == loops.size()) {
      evaluate();
      return;
    }
    flip[loops[i]] = 0;
    over_loops(i + 1);
    flip[loops[i]] = 1;
    over_loops(i + 1);
  };
  std::function<void(std::size_t)> over_classes = [&](std::size_t c) {
    if (c == classes.size()) {
      over_loops(0);
      return;
    }
    const auto& edges = classes[c];
    std::vector<EdgeId> perm = edges;
    do {
      for (std::size_t k = 0; k < edges.size(); ++k) label[edges[k]] = perm[k];
      over_classes(c + 1);
    } while (std::next_permutation(perm.begin(), perm.end()));
    for (EdgeId e : edges) label[e] = e;
  };
  over_classes(0);
  return best;
}

std::size_t for_each_plane_embedding(const AbstractGraph& base, std::size_t cap,
                                     const std::function<bool(const PlaneMultigraph&)>& visit) {
  const int n = base.vertex_count;
  const int m = static_cast<int>(base.edges.size());
  if (n > kExhaustiveVertexLimit)
    throw Error(ErrorCode::TooLarge, "exhaustive enumeration is limited to " +
                                         std::to_string(kExhaustiveVertexLimit) + " vertices");
  std::vector<std::vector<DartId>> darts_at(n);
  for (EdgeId e = 0; e < m; ++e) {
    darts_at[base.edges[e].first].push_back(dart_of(e, 0));
    darts_at[base.edges[e].second].push_back(dart_of(e, 1));
  }
  for (VertexId v = 0; v < n; ++v)
    if (darts_at[v].size() != 4)
      throw Error(ErrorCode::InvalidGraph, "vertex " + std::to_string(v) + " does not have degree 4");
  if (!is_connected(base)) throw Error(ErrorCode::InvalidGraph, "enumeration needs a connected graph");

  // The six cyclic orders of each vertex's darts, smallest dart first.
  std::vector<std::vector<std::array<DartId, 4>>> orders(n);
  for (VertexId v = 0; v < n; ++v) {
    auto ds = darts_at[v];
    std::sort(ds.begin(), ds.end());
    std::array<DartId, 3> rest{ds[1], ds[2], ds[3]};
    do {
      orders[v].push_back({ds[0], rest[0], rest[1], rest[2]});
    } while (std::next_permutation(rest.begin(), rest.end()));
  }

  const int want_faces = m - n + 2;
  std::vector<std::array<DartId, 4>> rotation(n);
  std::vector<VertexId> origin(2 * m);
  std::vector<int> slot(2 * m);
  std::vector<int> seen(2 * m, -1);
  std::set<std::vector<int>> keys;
  std::size_t produced = 0;
  int stamp = 0;
  bool stop = false;

  std::function<void(int)> assign = [&](int v) {
    if (stop) return;
    if (v == n) {
      ++stamp;
      int faces = 0;
      for (DartId d = 0; d < 2 * m && faces <= want_faces; ++d) {
        if (seen[d] == stamp) continue;
        ++faces;
        for (DartId x = d; seen[x] != stamp;) {
          seen[x] = stamp;
          const DartId t = twin(x);
          x = rotation[origin[t]][(slot[t] + 3) & 3];
        }
      }
      if (faces != want_faces) return;
      auto g = PlaneMultigraph::from_rotation(n, m, rotation);
      if (!keys.insert(canonical_rotation_key(g)).second) return;
      ++produced;
      if (!visit(g) || produced >= cap) stop = true;
      return;
    }
    for (const auto& order : orders[v]) {
      rotation[v] = order;
      for (int s = 0; s < 4; ++s) {
        origin[order[s]] = v;
        slot[order[s]] = s;
      }
      assign(v + 1);
      if (stop) return;
    }
  };
  assign(0);
  return produced;
}

std::vector<PlaneMultigraph> enumerate_plane_embeddings(const AbstractGraph& base, std::size_t cap) {
  std::vector<PlaneMultigraph> out;
  for_each_plane_embedding(base, cap, [&](const PlaneMultigraph& g) {
    out.push_back(g);
    return true;
  });
  return out;
}

bool flip_component(const PlaneMultigraph& g, const std::vector<char>& in_component, VertexId c, VertexId d,
                    PlaneMultigraph& out) {
  std::vector<std::array<DartId, 4>> rotation(g.vertex_count());
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    rotation[v] = g.rotation(v);
    if (in_component[v])
      for (int s = 0; s < 4; ++s) rotation[v][s] = g.at(v, (4 - s) & 3);
  }
  for (VertexId x : {c, d}) {
    auto& r = rotation[x];
    std::array<bool, 4> inside{};
    int k = 0;
    for (int s = 0; s < 4; ++s) {
      inside[s] = in_component[g.head(r[s])] != 0;
      k += inside[s];
    }
    if (k == 0 || k == 4) return false;
    int start = -1;
    for (int s0 = 0; s0 < 4 && start < 0; ++s0) {
      bool block = true;
      for (int i = 0; i < k; ++i) block = block && inside[(s0 + i) & 3];
      if (block) start = s0;
    }
    if (start < 0) return false;
    for (int i = 0, j = k - 1; i < j; ++i, --j) std::swap(r[(start + i) & 3], r[(start + j) & 3]);
  }
  out = PlaneMultigraph::from_rotation(g.vertex_count(), g.edge_count(), rotation);
  return is_plane(out);
}

std::vector<PlaneMultigraph> flip_closure(const PlaneMultigraph& seed, std::size_t cap) {
  const int n = seed.vertex_count();
  const auto abstract = abstract_of(seed);
  std::vector<PlaneMultigraph> out;
  std::set<std::vector<int>> keys;
  std::deque<PlaneMultigraph> queue;
  auto offer = [&](const PlaneMultigraph& g) {
    if (out.size() >= cap) return;
    if (keys.insert(labelled_key(g)).second) {
      out.push_back(g);
      queue.push_back(g);
    }
  };
  offer(seed);

  // Components of G - {c, d}, computed once; they do not depend on the embedding.
  struct Split {
    VertexId c, d;
    std::vector<char> member;
  };
  std::vector<Split> splits;
  for (VertexId c = 0; c < n; ++c)
    for (VertexId d = c + 1; d < n; ++d) {
      std::vector<int> comp(n, -1);
      int count = 0;
      for (VertexId s = 0; s < n; ++s) {
        if (s == c || s == d || comp[s] >= 0) continue;
        std::vector<VertexId> stack{s};
        comp[s] = count;
        while (!stack.empty()) {
          const VertexId x = stack.back();
          stack.pop_back();
          for (const auto& [u, v] : abstract.edges) {
            VertexId y = -1;
            if (u == x) y = v;
            else if (v == x) y = u;
            if (y < 0 || y == c || y == d || comp[y] >= 0) continue;
            comp[y] = count;
            stack.push_back(y);
          }
        }
        ++count;
      }
      if (count < 2) continue;
      for (int k = 0; k < count; ++k) {
        std::vector<char> member(n, 0);
        for (VertexId v = 0; v < n; ++v) member[v] = comp[v] == k;
        splits.push_back({c, d, std::move(member)});
      }
    }

  while (!queue.empty() && out.size() < cap) {
    const PlaneMultigraph g = queue.front();
    queue.pop_front();
    offer(g.mirrored());
    for (const auto& split : splits) {
      PlaneMultigraph flipped;
      if (flip_component(g, split.member, split.c, split.d, flipped)) offer(flipped);
    }
  }
  return out;
}

namespace {

std::vector<int> circuit_lengths(const PlaneMultigraph& g) {
  return threaded_circuit_partition(g).length_multiset();
}

void record(InvarianceReport& report, const PlaneMultigraph& g) {
  const auto lengths = circuit_lengths(g);
  ++report.cardinalities[static_cast<int>(lengths.size())];
  report.length_multisets.insert(lengths);
  ++report.embeddings;
}

}  // namespace

InvarianceReport check_cardinality_invariance(const AbstractGraph& base, std::size_t cap) {
  if (!is_biconnected(base)) throw Error(ErrorCode::NotBiconnected, "graph has a cut vertex");
  InvarianceReport report;
  for_each_plane_embedding(base, cap, [&](const PlaneMultigraph& g) {
    record(report, g);
    return true;
  });
  report.invariant = report.cardinalities.size() == 1;
  return report;
}

InvarianceReport check_cardinality_invariance(const PlaneMultigraph& seed, std::size_t cap) {
  const auto base = abstract_of(seed);
  if (base.vertex_count <= kExhaustiveVertexLimit) return check_cardinality_invariance(base, cap);
  if (!is_biconnected(base)) throw Error(ErrorCode::NotBiconnected, "graph has a cut vertex");
  InvarianceReport report;
  report.exhaustive = false;
  for (const auto& g : flip_closure(seed, std::min<std::size_t>(cap, 4096))) record(report, g);
  report.invariant = report.cardinalities.size() == 1;
  return report;
}

namespace {

// Block label per edge: edges sharing a vertex other than `cut` are joined.
std::vector<int> blocks_around(const PlaneMultigraph& g, VertexId cut, int* count) {
  const int m = g.edge_count();
  std::vector<int> parent(m);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::vector<int> first_edge_at(g.vertex_count(), -1);
  for (EdgeId e = 0; e < m; ++e)
    for (const auto& end : g.ends(e)) {
      if (end.vertex == cut) continue;
      int& f = first_edge_at[end.vertex];
      if (f < 0) f = e;
      else parent[find(e)] = find(f);
    }
  std::vector<int> label(m, -1), of_root(m, -1);
  int next = 0;
  for (EdgeId e = 0; e < m; ++e) {
    const int r = find(e);
    if (of_root[r] < 0) of_root[r] = next++;
    label[e] = of_root[r];
  }
  *count = next;
  return label;
}

}  // namespace

std::vector<VertexId> cutpoints(const PlaneMultigraph& g) {
  std::vector<VertexId> out;
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    int count = 0;
    const auto block = blocks_around(g, v, &count);
    std::map<int, int> darts;
    for (DartId d : g.rotation(v))
      if (d != kNoDart) ++darts[block[edge_of(d)]];
    if (darts.size() == 2 && darts.begin()->second == 2) out.push_back(v);
  }
  return out;
}

std::pair<PlaneMultigraph, PlaneMultigraph> split_at_cutpoint(const PlaneMultigraph& g, VertexId cut) {
  if (cut < 0 || cut >= g.vertex_count())
    throw Error(ErrorCode::NotACutpoint, "vertex " + std::to_string(cut) + " does not exist");
  int count = 0;
  const auto block = blocks_around(g, cut, &count);
  std::map<int, std::vector<int>> slots_of_block;
  for (int s = 0; s < 4; ++s) slots_of_block[block[edge_of(g.at(cut, s))]].push_back(s);
  if (slots_of_block.size() != 2 || slots_of_block.begin()->second.size() != 2)
    throw Error(ErrorCode::NotACutpoint, "vertex " + std::to_string(cut) + " does not separate the graph");

  auto side = [&](int mine, const std::vector<int>& other_slots) {
    std::vector<VertexId> new_id(g.vertex_count(), -1);
    std::vector<EdgeId> edges;
    for (EdgeId e = 0; e < g.edge_count(); ++e)
      if (block[e] == mine) edges.push_back(e);
    new_id[cut] = 0;
    std::vector<VertexId> members{cut};
    for (EdgeId e : edges)
      for (const auto& end : g.ends(e)) members.push_back(end.vertex);
    std::sort(members.begin(), members.end());
    members.erase(std::unique(members.begin(), members.end()), members.end());
    for (std::size_t i = 0; i < members.size(); ++i) new_id[members[i]] = static_cast<VertexId>(i);
    std::vector<EdgeEnds> ends;
    for (EdgeId e : edges) {
      auto en = g.ends(e);
      for (auto& end : en) end.vertex = new_id[end.vertex];
      ends.push_back(en);
    }
    ends.push_back({DartEnd{new_id[cut], other_slots[0]}, DartEnd{new_id[cut], other_slots[1]}});
    return PlaneMultigraph(static_cast<int>(members.size()), std::move(ends));
  };
  auto it = slots_of_block.begin();
  const auto& [first_block, first_slots] = *it++;
  const auto& [second_block, second_slots] = *it;
  return {side(first_block, second_slots), side(second_block, first_slots)};
}

CutpointReport check_cutpoint_additivity(const PlaneMultigraph& g, VertexId cut) {
  const auto [g1, g2] = split_at_cutpoint(g, cut);
  const auto p = threaded_circuit_partition(g);
  CutpointReport report;
  report.whole = static_cast<int>(p.circuits.size());
  report.first = static_cast<int>(threaded_circuit_partition(g1).circuits.size());
  report.second = static_cast<int>(threaded_circuit_partition(g2).circuits.size());
  const int c0 = p.edge_to_circuit[edge_of(g.at(cut, 0))];
  report.cut_edges_share_circuit = true;
  for (int s = 1; s < 4; ++s)
    report.cut_edges_share_circuit = report.cut_edges_share_circuit && p.edge_to_circuit[edge_of(g.at(cut, s))] == c0;
  return report;
}

}  // namespace celtic
