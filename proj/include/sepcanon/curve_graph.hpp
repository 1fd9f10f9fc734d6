#pragma once

// Dual multigraphs of nodal curves: components are vertices carrying their
// geometric genus, nodes are edges carrying the ids of their two branches.

#include <algorithm>
#include <array>
#include <cstddef>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "sepcanon/error.hpp"

namespace sepcanon {

struct Vertex {
  std::string id;
  int genus = 0;
  /// Marked points left behind by blown-up nodes (their half-edge ids).
  std::vector<std::string> marks;
  std::map<std::string, bool> flags;
};

struct Edge {
  std::string id;
  std::array<std::string, 2> ends;
  std::array<std::string, 2> half_edges;

  bool is_loop() const { return ends[0] == ends[1]; }
};

/// Half-edge ids default to `<id>.0` and `<id>.1` in `ends` order.
inline Edge make_edge(std::string id, std::string a, std::string b) {
  Edge e{std::move(id), {std::move(a), std::move(b)}, {}};
  e.half_edges = {e.id + ".0", e.id + ".1"};
  return e;
}

using VertexSet = std::set<std::string>;

class CurveGraph {
 public:
  CurveGraph() = default;

  CurveGraph(std::vector<Vertex> vertices, std::vector<Edge> edges)
      : vertices_(std::move(vertices)), edges_(std::move(edges)) {
    for (std::size_t i = 0; i < vertices_.size(); ++i) {
      const auto& v = vertices_[i];
      if (v.id.empty()) fail(Errc::malformed_input, "empty vertex id");
      if (v.genus < 0) fail(Errc::malformed_input, "negative genus on vertex " + v.id);
      if (!vertex_index_.emplace(v.id, i).second) fail(Errc::malformed_input, "duplicate vertex id " + v.id);
      for (const auto& m : v.marks) add_point(m, i);
    }
    ends_.reserve(edges_.size());
    for (std::size_t i = 0; i < edges_.size(); ++i) {
      const auto& e = edges_[i];
      if (e.id.empty()) fail(Errc::malformed_input, "empty edge id");
      if (!edge_index_.emplace(e.id, i).second) fail(Errc::malformed_input, "duplicate edge id " + e.id);
      std::array<std::size_t, 2> ends{};
      for (int k = 0; k < 2; ++k) {
        auto it = vertex_index_.find(e.ends[k]);
        if (it == vertex_index_.end()) {
          fail(Errc::malformed_input, "edge " + e.id + " references unknown vertex " + e.ends[k]);
        }
        ends[k] = it->second;
        add_point(e.half_edges[k], ends[k]);
      }
      ends_.push_back(ends);
    }
  }

  const std::vector<Vertex>& vertices() const { return vertices_; }
  const std::vector<Edge>& edges() const { return edges_; }
  std::size_t vertex_count() const { return vertices_.size(); }
  std::size_t edge_count() const { return edges_.size(); }

  bool has_vertex(std::string_view id) const { return vertex_index_.find(id) != vertex_index_.end(); }
  bool has_edge(std::string_view id) const { return edge_index_.find(id) != edge_index_.end(); }

  std::size_t vertex_index(std::string_view id) const {
    auto it = vertex_index_.find(id);
    if (it == vertex_index_.end()) fail(Errc::unknown_id, "unknown vertex " + std::string(id));
    return it->second;
  }

  std::size_t edge_index(std::string_view id) const {
    auto it = edge_index_.find(id);
    if (it == edge_index_.end()) fail(Errc::unknown_id, "unknown edge " + std::string(id));
    return it->second;
  }

  const Vertex& vertex(std::string_view id) const { return vertices_[vertex_index(id)]; }
  const Edge& edge(std::string_view id) const { return edges_[edge_index(id)]; }

  /// Vertex indices of the two ends of edge `e`.
  const std::array<std::size_t, 2>& ends(std::size_t e) const { return ends_[e]; }

  /// Vertex carrying a half-edge or a marked point, if the point exists.
  std::optional<std::size_t> point_vertex(std::string_view point) const {
    auto it = point_index_.find(point);
    if (it == point_index_.end()) return std::nullopt;
    return it->second;
  }

  /// Node branches at `v`; a self-loop contributes two.
  std::size_t branch_count(std::size_t v) const {
    std::size_t n = 0;
    for (const auto& e : ends_) n += (e[0] == v) + (e[1] == v);
    return n;
  }

  VertexSet vertex_ids() const {
    VertexSet out;
    for (const auto& v : vertices_) out.insert(v.id);
    return out;
  }

 private:
  void add_point(const std::string& point, std::size_t v) {
    if (point.empty()) fail(Errc::malformed_input, "empty half-edge id");
    if (!point_index_.emplace(point, v).second) fail(Errc::malformed_input, "duplicate half-edge id " + point);
  }

  std::vector<Vertex> vertices_;
  std::vector<Edge> edges_;
  std::vector<std::array<std::size_t, 2>> ends_;
  std::map<std::string, std::size_t, std::less<>> vertex_index_;
  std::map<std::string, std::size_t, std::less<>> edge_index_;
  std::map<std::string, std::size_t, std::less<>> point_index_;
};

struct Subcurve {
  VertexSet vertex_set;
};

/// Validated subcurve; the vertex set must be nonempty and inside `g`.
inline Subcurve make_subcurve(const CurveGraph& g, VertexSet vertex_set) {
  if (vertex_set.empty()) fail(Errc::malformed_input, "empty subcurve");
  for (const auto& v : vertex_set) g.vertex_index(v);
  return Subcurve{std::move(vertex_set)};
}

inline std::vector<std::string> induced_edges(const CurveGraph& g, const Subcurve& y) {
  std::vector<std::string> out;
  for (const auto& e : g.edges()) {
    if (y.vertex_set.count(e.ends[0]) && y.vertex_set.count(e.ends[1])) out.push_back(e.id);
  }
  return out;
}

struct Multidegree {
  std::map<std::string, int> degrees;

  int total() const {
    return std::accumulate(degrees.begin(), degrees.end(), 0, [](int s, const auto& kv) { return s + kv.second; });
  }
};

enum class Stability { stable, semistable, unstable };

inline const char* to_string(Stability s) {
  switch (s) {
    case Stability::stable: return "Stable";
    case Stability::semistable: return "Semistable";
    case Stability::unstable: return "Unstable";
  }
  return "?";
}

namespace detail {

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), std::size_t{0}); }

  std::size_t find(std::size_t x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }

  void unite(std::size_t a, std::size_t b) { parent_[find(a)] = find(b); }

 private:
  std::vector<std::size_t> parent_;
};

/// Per-vertex component labels (0..count-1, numbered by first vertex) of `g`
/// with the edges flagged in `removed` deleted. Vertices outside `keep` get -1.
struct Labels {
  std::vector<int> label;
  int count = 0;
};

inline Labels component_labels(const CurveGraph& g, const std::vector<bool>& removed,
                               const std::vector<bool>* keep = nullptr) {
  const std::size_t n = g.vertex_count();
  UnionFind uf(n);
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    if (!removed.empty() && removed[e]) continue;
    const auto& [a, b] = g.ends(e);
    if (keep && (!(*keep)[a] || !(*keep)[b])) continue;
    uf.unite(a, b);
  }
  Labels out;
  out.label.assign(n, -1);
  std::map<std::size_t, int> root_label;
  for (std::size_t v = 0; v < n; ++v) {
    if (keep && !(*keep)[v]) continue;
    auto [it, fresh] = root_label.emplace(uf.find(v), out.count);
    if (fresh) ++out.count;
    out.label[v] = it->second;
  }
  return out;
}

/// Bridges by DFS low-link over the subgraph of kept vertices and present
/// edges. Parallel edges are never bridges; self-loops are skipped.
inline std::vector<bool> bridge_mask(const CurveGraph& g, const std::vector<bool>& removed,
                                     const std::vector<bool>* keep = nullptr) {
  const std::size_t n = g.vertex_count();
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> adj(n);  // (neighbour, edge)
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    if (!removed.empty() && removed[e]) continue;
    const auto& [a, b] = g.ends(e);
    if (a == b) continue;
    if (keep && (!(*keep)[a] || !(*keep)[b])) continue;
    adj[a].emplace_back(b, e);
    adj[b].emplace_back(a, e);
  }
  std::vector<bool> bridge(g.edge_count(), false);
  std::vector<int> disc(n, -1), low(n, 0);
  int clock = 0;
  // Iterative DFS: (vertex, parent edge, next adjacency position).
  struct Frame {
    std::size_t v;
    std::size_t parent_edge;
    std::size_t next;
  };
  constexpr std::size_t kNone = static_cast<std::size_t>(-1);
  for (std::size_t root = 0; root < n; ++root) {
    if (disc[root] != -1 || (keep && !(*keep)[root])) continue;
    std::vector<Frame> stack{{root, kNone, 0}};
    disc[root] = low[root] = clock++;
    while (!stack.empty()) {
      auto& f = stack.back();
      if (f.next < adj[f.v].size()) {
        auto [w, e] = adj[f.v][f.next++];
        if (e == f.parent_edge) continue;
        if (disc[w] == -1) {
          disc[w] = low[w] = clock++;
          stack.push_back({w, e, 0});
        } else {
          low[f.v] = std::min(low[f.v], disc[w]);
        }
      } else {
        const Frame done = f;
        stack.pop_back();
        if (!stack.empty()) {
          auto& parent = stack.back();
          low[parent.v] = std::min(low[parent.v], low[done.v]);
          if (low[done.v] > disc[parent.v]) bridge[done.parent_edge] = true;
        }
      }
    }
  }
  return bridge;
}

inline std::vector<bool> vertex_filter(const CurveGraph& g, const VertexSet& ids) {
  std::vector<bool> keep(g.vertex_count(), false);
  for (const auto& id : ids) keep[g.vertex_index(id)] = true;
  return keep;
}

inline std::string join(const std::vector<std::string>& parts, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

}  // namespace detail

/// Canonical id of a set of vertices: the sorted ids joined by '+'.
inline std::string vertex_set_id(const VertexSet& ids) {
  return detail::join(std::vector<std::string>(ids.begin(), ids.end()), "+");
}

inline std::size_t component_count(const CurveGraph& g) {
  return static_cast<std::size_t>(detail::component_labels(g, {}).count);
}

inline bool is_connected(const CurveGraph& g) { return g.vertex_count() > 0 && component_count(g) == 1; }

inline void require_connected(const CurveGraph& g) {
  if (!is_connected(g)) fail(Errc::disconnected, "curve graph is empty or disconnected");
}

/// Vertex sets of the connected components, ordered by smallest vertex index.
inline std::vector<VertexSet> connected_components(const CurveGraph& g) {
  const auto labels = detail::component_labels(g, {});
  std::vector<VertexSet> out(static_cast<std::size_t>(labels.count));
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    out[static_cast<std::size_t>(labels.label[v])].insert(g.vertices()[v].id);
  }
  return out;
}

/// Induced subgraph on `ids`; marks on kept vertices are preserved and edges
/// leaving the set are dropped.
inline CurveGraph induced_subgraph(const CurveGraph& g, const VertexSet& ids) {
  std::vector<Vertex> vs;
  std::vector<Edge> es;
  for (const auto& v : g.vertices()) {
    if (ids.count(v.id)) vs.push_back(v);
  }
  for (const auto& e : g.edges()) {
    if (ids.count(e.ends[0]) && ids.count(e.ends[1])) es.push_back(e);
  }
  return CurveGraph(std::move(vs), std::move(es));
}

/// p_a = sum of geometric genera + E - V + #components.
inline long arithmetic_genus(const CurveGraph& g) {
  long total = 0;
  for (const auto& v : g.vertices()) total += v.genus;
  return total + static_cast<long>(g.edge_count()) - static_cast<long>(g.vertex_count()) +
         static_cast<long>(component_count(g));
}

/// Degree of the dualizing sheaf on a component: 2g - 2 + branches.
inline long omega_degree(const CurveGraph& g, std::string_view vertex) {
  const auto v = g.vertex_index(vertex);
  return 2L * g.vertices()[v].genus - 2 + static_cast<long>(g.branch_count(v));
}

inline Stability classify_stability(const CurveGraph& g) {
  require_connected(g);
  bool stable = true;
  for (const auto& v : g.vertices()) {
    const long d = omega_degree(g, v.id);
    if (d < 0) return Stability::unstable;
    if (d == 0) stable = false;
  }
  return stable ? Stability::stable : Stability::semistable;
}

/// Deletes the given nodes. Their half-edges survive as marked points on the
/// vertices that carried them; the result may be disconnected.
inline CurveGraph blowup(const CurveGraph& g, const std::set<std::string>& edge_ids) {
  for (const auto& id : edge_ids) g.edge_index(id);
  auto vs = g.vertices();
  std::vector<Edge> es;
  for (std::size_t i = 0; i < g.edge_count(); ++i) {
    const auto& e = g.edges()[i];
    if (!edge_ids.count(e.id)) {
      es.push_back(e);
      continue;
    }
    for (int k = 0; k < 2; ++k) vs[g.ends(i)[k]].marks.push_back(e.half_edges[k]);
  }
  return CurveGraph(std::move(vs), std::move(es));
}

inline int subcurve_degree(const Multidegree& l, const Subcurve& y) {
  int total = 0;
  for (const auto& v : y.vertex_set) {
    auto it = l.degrees.find(v);
    if (it == l.degrees.end()) fail(Errc::unknown_id, "multidegree has no entry for vertex " + v);
    total += it->second;
  }
  return total;
}

struct BaseLocus {
  VertexSet spines;
  std::set<std::string> seps;
};

/// Spines are the smooth rational inseparable components (a lone genus-0
/// vertex after separating at every sep); together with the seps they make up
/// the base locus of the canonical system.
inline BaseLocus spines_and_base_locus(const CurveGraph& g) {
  if (classify_stability(g) == Stability::unstable) fail(Errc::unstable, "curve is not semistable");
  if (arithmetic_genus(g) < 1) fail(Errc::genus_too_low, "arithmetic genus 0 has no canonical system");
  BaseLocus out;
  const auto bridges = detail::bridge_mask(g, {});
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    if (bridges[e]) out.seps.insert(g.edges()[e].id);
  }
  const auto separated = blowup(g, out.seps);
  for (const auto& comp : connected_components(separated)) {
    if (comp.size() != 1) continue;
    const auto& v = separated.vertex(*comp.begin());
    bool has_loop = std::any_of(separated.edges().begin(), separated.edges().end(),
                                [&](const Edge& e) { return e.ends[0] == v.id; });
    if (v.genus == 0 && !has_loop) out.spines.insert(v.id);
  }
  return out;
}

}  // namespace sepcanon
