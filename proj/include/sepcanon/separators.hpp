#pragma once

// Seps, biseps, polyseparators and the 2-separation of a nodal curve.
//
// A sep is a bridge of the dual graph. A bisep is a pair of individually
// nonseparating edges whose joint removal disconnects the graph. Biseps group
// into maximal polyseparators whose parts form a simple n-gon; blowing up all
// seps and polyseparator edges yields the 2-components.

#include <algorithm>
#include <array>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "sepcanon/curve_graph.hpp"
#include "sepcanon/error.hpp"

namespace sepcanon {

enum class StarSepKind { sep, bisep };

inline const char* to_string(StarSepKind k) { return k == StarSepKind::sep ? "sep" : "bisep"; }

/// An oriented sep or bisep. `edges` are sorted by id; `left` is the vertex set
/// of the left part and the right part is its complement.
struct StarSep {
  StarSepKind kind = StarSepKind::sep;
  std::vector<std::string> edges;
  VertexSet left;

  std::string id() const { return detail::join(edges, "|"); }
};

inline VertexSet right_side(const CurveGraph& g, const StarSep& s) {
  VertexSet out;
  for (const auto& v : g.vertices()) {
    if (!s.left.count(v.id)) out.insert(v.id);
  }
  return out;
}

inline StarSep flipped(const CurveGraph& g, StarSep s) {
  s.left = right_side(g, s);
  return s;
}

/// Orients `s` so that `vertex` is on its left.
inline StarSep oriented_towards(const CurveGraph& g, const StarSep& s, const std::string& vertex) {
  return s.left.count(vertex) ? s : flipped(g, s);
}

namespace detail {

inline std::vector<bool> edge_mask(const CurveGraph& g, const std::vector<std::string>& ids) {
  std::vector<bool> m(g.edge_count(), false);
  for (const auto& id : ids) m[g.edge_index(id)] = true;
  return m;
}

inline std::vector<bool> edge_mask(const CurveGraph& g, const std::set<std::string>& ids) {
  return edge_mask(g, std::vector<std::string>(ids.begin(), ids.end()));
}

/// Left part: the component of `g - edges` that holds the first end of the
/// first (smallest id) edge.
inline StarSep make_star_sep(const CurveGraph& g, StarSepKind kind, std::vector<std::string> edges) {
  std::sort(edges.begin(), edges.end());
  const auto labels = component_labels(g, edge_mask(g, edges));
  const int side = labels.label[g.ends(g.edge_index(edges.front()))[0]];
  StarSep s{kind, std::move(edges), {}};
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    if (labels.label[v] == side) s.left.insert(g.vertices()[v].id);
  }
  return s;
}

inline bool is_bisep_pair(const CurveGraph& g, const std::vector<bool>& bridges, std::size_t a, std::size_t b) {
  if (a == b || bridges[a] || bridges[b]) return false;
  if (g.edges()[a].is_loop() || g.edges()[b].is_loop()) return false;
  std::vector<bool> removed(g.edge_count(), false);
  removed[a] = removed[b] = true;
  return component_labels(g, removed).count > component_labels(g, {}).count;
}

/// Vertices of the inseparable component (2-edge-connected block) holding `vertex`.
inline VertexSet inseparable_component(const CurveGraph& g, const std::vector<bool>& bridges, std::size_t vertex) {
  const auto labels = component_labels(g, bridges);
  VertexSet out;
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    if (labels.label[v] == labels.label[vertex]) out.insert(g.vertices()[v].id);
  }
  return out;
}

}  // namespace detail

inline std::vector<StarSep> find_seps(const CurveGraph& g) {
  require_connected(g);
  const auto bridges = detail::bridge_mask(g, {});
  std::vector<StarSep> out;
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    if (bridges[e]) out.push_back(detail::make_star_sep(g, StarSepKind::sep, {g.edges()[e].id}));
  }
  std::sort(out.begin(), out.end(), [](const StarSep& a, const StarSep& b) { return a.id() < b.id(); });
  return out;
}

/// For each nonseparating edge e, the partners are the bridges of g - e that
/// were not already bridges of g.
inline std::vector<StarSep> find_biseps(const CurveGraph& g) {
  require_connected(g);
  const auto bridges = detail::bridge_mask(g, {});
  std::vector<StarSep> out;
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    if (bridges[e] || g.edges()[e].is_loop()) continue;
    std::vector<bool> removed(g.edge_count(), false);
    removed[e] = true;
    const auto partners = detail::bridge_mask(g, removed);
    for (std::size_t f = e + 1; f < g.edge_count(); ++f) {
      if (partners[f] && !bridges[f]) {
        out.push_back(detail::make_star_sep(g, StarSepKind::bisep, {g.edges()[e].id, g.edges()[f].id}));
      }
    }
  }
  std::sort(out.begin(), out.end(), [](const StarSep& a, const StarSep& b) { return a.id() < b.id(); });
  return out;
}

/// A polyseparator in cyclic arrangement: `parts[i]` is the part lying between
/// `edges[i]` and `edges[i+1]` (indices mod n).
struct Polyseparator {
  std::vector<std::string> edges;
  std::vector<VertexSet> parts;

  std::size_t degree() const { return edges.size(); }
  bool is_proper() const { return edges.size() >= 3; }

  std::string id() const {
    auto sorted = edges;
    std::sort(sorted.begin(), sorted.end());
    return detail::join(sorted, "|");
  }

  bool contains(std::string_view edge) const { return std::find(edges.begin(), edges.end(), edge) != edges.end(); }
};

/// Orders a set of pairwise-bisep edges around the n-gon of its parts. The
/// rotation starts at the smallest edge id; for n >= 3 the direction goes to
/// the smaller neighbour, for n = 2 parts[0] holds the second end of edges[0].
inline Polyseparator cyclic_arrangement(const CurveGraph& g, const std::set<std::string>& edge_ids) {
  require_connected(g);
  if (edge_ids.size() < 2) fail(Errc::not_a_polyseparator, "a polyseparator needs at least two nodes");
  const auto bridges = detail::bridge_mask(g, {});
  std::vector<std::size_t> idx;
  for (const auto& id : edge_ids) idx.push_back(g.edge_index(id));
  for (std::size_t i = 0; i < idx.size(); ++i) {
    for (std::size_t j = i + 1; j < idx.size(); ++j) {
      if (!detail::is_bisep_pair(g, bridges, idx[i], idx[j])) {
        fail(Errc::not_a_polyseparator,
             "(" + g.edges()[idx[i]].id + ", " + g.edges()[idx[j]].id + ") is not a bisep");
      }
    }
  }
  const std::size_t n = idx.size();
  const auto block = detail::inseparable_component(g, bridges, g.ends(idx[0])[0]);
  const auto keep = detail::vertex_filter(g, block);
  auto removed = bridges;
  for (auto e : idx) removed[e] = true;
  const auto labels = detail::component_labels(g, removed, &keep);
  ensure(static_cast<std::size_t>(labels.count) == n, "polyseparator parts do not number its degree");

  // part -> incident polyseparator edges (positions in idx)
  std::vector<std::vector<std::size_t>> incident(n);
  std::vector<std::array<int, 2>> edge_parts(n);
  for (std::size_t k = 0; k < n; ++k) {
    const auto& [a, b] = g.ends(idx[k]);
    edge_parts[k] = {labels.label[a], labels.label[b]};
    ensure(edge_parts[k][0] >= 0 && edge_parts[k][1] >= 0 && edge_parts[k][0] != edge_parts[k][1],
           "polyseparator edge does not join two parts");
    incident[static_cast<std::size_t>(edge_parts[k][0])].push_back(k);
    incident[static_cast<std::size_t>(edge_parts[k][1])].push_back(k);
  }
  for (const auto& inc : incident) ensure(inc.size() == 2, "polyseparator graph is not an n-gon");

  auto part_set = [&](int label) {
    VertexSet s;
    for (std::size_t v = 0; v < g.vertex_count(); ++v) {
      if (labels.label[v] == label) s.insert(g.vertices()[v].id);
    }
    return s;
  };
  auto other_edge = [&](int part, std::size_t k) {
    const auto& inc = incident[static_cast<std::size_t>(part)];
    return inc[0] == k ? inc[1] : inc[0];
  };

  // idx is sorted by edge id because edge_ids is an ordered set.
  Polyseparator p;
  if (n == 2) {
    p.edges = {g.edges()[idx[0]].id, g.edges()[idx[1]].id};
    p.parts = {part_set(edge_parts[0][1]), part_set(edge_parts[0][0])};
    return p;
  }
  const std::size_t via0 = other_edge(edge_parts[0][0], 0);
  const std::size_t via1 = other_edge(edge_parts[0][1], 0);
  int forward = g.edges()[idx[via0]].id < g.edges()[idx[via1]].id ? edge_parts[0][0] : edge_parts[0][1];
  std::size_t current = 0;
  std::vector<bool> seen_part(n, false);
  for (std::size_t step = 0; step < n; ++step) {
    p.edges.push_back(g.edges()[idx[current]].id);
    ensure(!seen_part[static_cast<std::size_t>(forward)], "polyseparator graph is not a simple n-gon");
    seen_part[static_cast<std::size_t>(forward)] = true;
    p.parts.push_back(part_set(forward));
    const std::size_t next = other_edge(forward, current);
    forward = edge_parts[next][0] == forward ? edge_parts[next][1] : edge_parts[next][0];
    current = next;
  }
  ensure(current == 0, "polyseparator graph is not a single cycle");
  return p;
}

/// Maximal polyseparators via the closure Theta -> Theta + (seps of its parts),
/// cross-checked against disjointness and bisep coverage.
inline std::vector<Polyseparator> maximal_polyseparators(const CurveGraph& g) {
  require_connected(g);
  const auto biseps = find_biseps(g);
  std::vector<Polyseparator> classes;
  std::map<std::string, std::size_t> class_of;
  for (const auto& b : biseps) {
    if (class_of.count(b.edges[0]) && class_of.count(b.edges[1])) continue;
    std::set<std::string> theta(b.edges.begin(), b.edges.end());
    Polyseparator p;
    while (true) {
      p = cyclic_arrangement(g, theta);
      auto grown = theta;
      const auto removed = detail::edge_mask(g, theta);
      for (const auto& part : p.parts) {
        const auto keep = detail::vertex_filter(g, part);
        const auto part_bridges = detail::bridge_mask(g, removed, &keep);
        for (std::size_t e = 0; e < g.edge_count(); ++e) {
          if (part_bridges[e]) grown.insert(g.edges()[e].id);
        }
      }
      if (grown.size() == theta.size()) break;
      theta = std::move(grown);
    }
    for (const auto& e : p.edges) {
      ensure(!class_of.count(e), "maximal polyseparators overlap at " + e);
      class_of[e] = classes.size();
    }
    classes.push_back(std::move(p));
  }
  for (const auto& b : biseps) {
    std::size_t holders = 0;
    for (const auto& c : classes) holders += (c.contains(b.edges[0]) && c.contains(b.edges[1]));
    ensure(holders == 1, "bisep " + b.id() + " lies in " + std::to_string(holders) + " maximal polyseparators");
  }
  std::sort(classes.begin(), classes.end(), [](const auto& a, const auto& b) { return a.id() < b.id(); });
  return classes;
}

/// No polyseparator of degree three or more.
inline bool is_semicompact_type(const CurveGraph& g) {
  const auto classes = maximal_polyseparators(g);
  return std::none_of(classes.begin(), classes.end(), [](const auto& c) { return c.is_proper(); });
}

struct Unimark {
  std::string point;  ///< half-edge id on this component
  std::string sep;    ///< edge id of the sep
};

struct Bimark {
  std::array<std::string, 2> points;  ///< half-edges, ordered by the bisep's edge ids
  std::array<std::string, 2> edges;   ///< sorted edge ids of the bisep
  std::string polyseparator;          ///< id of the maximal polyseparator
  bool proper = false;                ///< true when that polyseparator has degree >= 3

  std::string bisep() const { return edges[0] + "|" + edges[1]; }
  std::string key() const { return points[0] + "|" + points[1]; }
};

/// A connected component of the 2-separation; marks are oriented with this
/// component on the left.
struct TwoComponent {
  std::string id;
  CurveGraph subgraph;
  std::vector<Unimark> unimarks;
  std::vector<Bimark> bimarks;

  bool has_mark(std::string_view key) const {
    return std::any_of(unimarks.begin(), unimarks.end(), [&](const auto& u) { return u.point == key; }) ||
           std::any_of(bimarks.begin(), bimarks.end(), [&](const auto& b) { return b.key() == key; });
  }
};

struct TreeVertex {
  std::string id;
  VertexSet vertices;
  std::vector<std::string> two_components;
};

struct TreeEdge {
  std::string id;  ///< sep edge id or bisep id
  StarSepKind kind = StarSepKind::sep;
  std::array<std::string, 2> ends;  ///< tree vertex ids: left part, right part
};

struct SeparationTree {
  std::vector<TreeVertex> vertices;
  std::vector<TreeEdge> edges;
};

struct RelativeSeparability {
  bool inseparable = true;      ///< every sep has support on both sides
  bool two_inseparable = true;  ///< every bisep has support on both sides
};

/// `support` lists the vertices carrying the points of the divisor.
inline RelativeSeparability relative_two_inseparable(const CurveGraph& g, const std::vector<std::string>& support) {
  for (const auto& v : support) g.vertex_index(v);
  auto meets_both = [&](const StarSep& s) {
    bool left = false, right = false;
    for (const auto& v : support) (s.left.count(v) ? left : right) = true;
    return left && right;
  };
  RelativeSeparability out;
  for (const auto& s : find_seps(g)) out.inseparable = out.inseparable && meets_both(s);
  for (const auto& b : find_biseps(g)) out.two_inseparable = out.two_inseparable && meets_both(b);
  return out;
}

inline bool is_two_inseparable(const CurveGraph& g) { return find_seps(g).empty() && find_biseps(g).empty(); }

/// Everything the classification needs about the *-sep structure of a curve,
/// computed once. Structural expectations that can fail are collected in
/// structure_violations(); the rest are asserted.
class SeparationAnalysis {
 public:
  explicit SeparationAnalysis(CurveGraph g) : graph_(std::move(g)) {
    require_connected(graph_);
    seps_ = find_seps(graph_);
    biseps_ = find_biseps(graph_);
    classes_ = maximal_polyseparators(graph_);
    build_two_components();
    build_tree();
    check_one_sidedness();
  }

  const CurveGraph& graph() const { return graph_; }
  const std::vector<StarSep>& seps() const { return seps_; }
  const std::vector<StarSep>& biseps() const { return biseps_; }
  const std::vector<Polyseparator>& polyseparators() const { return classes_; }
  const std::vector<TwoComponent>& two_components() const { return components_; }
  const SeparationTree& tree() const { return tree_; }

  bool semicompact() const {
    return std::none_of(classes_.begin(), classes_.end(), [](const auto& c) { return c.is_proper(); });
  }

  const TwoComponent& component_of_vertex(std::string_view vertex) const {
    return components_[component_index_.at(std::string(vertex))];
  }

  const TwoComponent& component(std::string_view id) const {
    for (const auto& c : components_) {
      if (c.id == id) return c;
    }
    fail(Errc::unknown_id, "unknown 2-component " + std::string(id));
  }

  /// Seps plus the biseps that are maximal polyseparators of degree 2.
  std::vector<StarSep> default_theta() const {
    std::vector<StarSep> out = seps_;
    for (const auto& b : biseps_) {
      if (is_maximal_bisep(b)) out.push_back(b);
    }
    return out;
  }

  bool is_maximal_bisep(const StarSep& b) const {
    if (b.kind != StarSepKind::bisep) return false;
    return std::any_of(classes_.begin(), classes_.end(), [&](const auto& c) { return c.degree() == 2 && c.id() == b.id(); });
  }

  /// A sep or bisep by id (`e` or `e1|e2`).
  std::optional<StarSep> star_sep(std::string_view id) const {
    for (const auto* list : {&seps_, &biseps_}) {
      for (const auto& s : *list) {
        if (s.id() == id) return s;
      }
    }
    return std::nullopt;
  }

  /// Edges of proper polyseparators.
  std::set<std::string> proper_polyseparator_edges() const {
    std::set<std::string> out;
    for (const auto& c : classes_) {
      if (c.is_proper()) out.insert(c.edges.begin(), c.edges.end());
    }
    return out;
  }

  /// Expected structure that fails on this curve: separable 2-components,
  /// bimarks split between two 2-components, a separation "tree" that is not
  /// a tree. Empty on well-behaved curves.
  const std::vector<std::string>& structure_violations() const { return violations_; }

  /// The classification relies on that structure; refuse curves without it.
  void require_well_formed() const {
    if (!violations_.empty()) fail(Errc::invariant_violation, violations_.front());
  }

  /// Edges blown up by the 2-separation.
  std::set<std::string> blown_edges() const {
    std::set<std::string> out;
    for (const auto& s : seps_) out.insert(s.edges[0]);
    for (const auto& c : classes_) out.insert(c.edges.begin(), c.edges.end());
    return out;
  }

 private:
  void build_two_components() {
    const auto blown = blown_edges();
    const auto separated = blowup(graph_, blown);
    for (const auto& vs : connected_components(separated)) {
      TwoComponent c{vertex_set_id(vs), induced_subgraph(separated, vs), {}, {}};
      for (const auto& v : vs) component_index_[v] = components_.size();
      components_.push_back(std::move(c));
    }
    auto comp_of_end = [&](const Edge& e, int k) -> TwoComponent& {
      return components_[component_index_.at(e.ends[k])];
    };
    for (const auto& s : seps_) {
      const auto& e = graph_.edge(s.edges[0]);
      for (int k = 0; k < 2; ++k) comp_of_end(e, k).unimarks.push_back({e.half_edges[k], e.id});
    }
    for (const auto& c : classes_) {
      const std::size_t n = c.degree();
      for (std::size_t i = 0; i < n; ++i) {
        const auto& part = c.parts[i];
        std::array<const Edge*, 2> es{&graph_.edge(c.edges[i]), &graph_.edge(c.edges[(i + 1) % n])};
        if (es[1]->id < es[0]->id) std::swap(es[0], es[1]);
        Bimark b{{}, {es[0]->id, es[1]->id}, c.id(), c.is_proper()};
        std::array<std::size_t, 2> owner{};
        for (int k = 0; k < 2; ++k) {
          const int end = part.count(es[k]->ends[0]) ? 0 : 1;
          ensure(part.count(es[k]->ends[end]) > 0, "polyseparator edge misses its part");
          b.points[k] = es[k]->half_edges[end];
          owner[k] = component_index_.at(es[k]->ends[end]);
        }
        if (owner[0] != owner[1]) {
          violations_.push_back("bimark " + b.key() + " of " + b.bisep() + " splits across 2-components");
          continue;
        }
        components_[owner[0]].bimarks.push_back(std::move(b));
      }
    }
    std::vector<std::size_t> order(components_.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](auto a, auto b) { return components_[a].id < components_[b].id; });
    std::vector<TwoComponent> sorted;
    for (auto i : order) sorted.push_back(std::move(components_[i]));
    components_ = std::move(sorted);
    for (std::size_t i = 0; i < components_.size(); ++i) {
      for (const auto& v : components_[i].subgraph.vertices()) component_index_[v.id] = i;
    }
    for (auto& c : components_) {
      std::sort(c.unimarks.begin(), c.unimarks.end(), [](const auto& a, const auto& b) { return a.point < b.point; });
      std::sort(c.bimarks.begin(), c.bimarks.end(), [](const auto& a, const auto& b) { return a.key() < b.key(); });
      check_component(c, blown);
    }
  }

  // Inseparability of 2-components fails on some curves (two biseps crossing
  // one edge of the component), so it is recorded rather than asserted.
  void check_component(const TwoComponent& c, const std::set<std::string>& blown) {
    const auto& y = c.subgraph;
    ensure(is_connected(y), "2-component " + c.id + " is disconnected");
    for (const auto& e : y.edges()) ensure(!blown.count(e.id), "2-component " + c.id + " keeps a *-sep edge");
    for (const auto& s : find_seps(y)) violations_.push_back("2-component " + c.id + " has internal sep " + s.id());
    std::vector<std::string> support;
    for (const auto& v : y.vertices()) {
      for (std::size_t i = 0; i < v.marks.size(); ++i) support.push_back(v.id);
    }
    if (!relative_two_inseparable(y, support).two_inseparable) {
      violations_.push_back("2-component " + c.id + " is not 2-inseparable relative to its marks");
    }
  }

  void build_tree() {
    std::set<std::string> tree_edges;
    for (const auto& s : seps_) tree_edges.insert(s.edges[0]);
    for (const auto& c : classes_) {
      if (c.degree() == 2) tree_edges.insert(c.edges.begin(), c.edges.end());
    }
    const auto cut = blowup(graph_, tree_edges);
    std::map<std::string, std::string> tree_vertex_of;
    for (const auto& vs : connected_components(cut)) {
      TreeVertex tv{vertex_set_id(vs), vs, {}};
      std::set<std::string> comps;
      for (const auto& v : vs) {
        comps.insert(component_of_vertex(v).id);
        tree_vertex_of[v] = tv.id;
      }
      tv.two_components.assign(comps.begin(), comps.end());
      tree_.vertices.push_back(std::move(tv));
    }
    std::sort(tree_.vertices.begin(), tree_.vertices.end(), [](const auto& a, const auto& b) { return a.id < b.id; });
    for (const auto& s : seps_) {
      const auto& e = graph_.edge(s.edges[0]);
      tree_.edges.push_back({e.id, StarSepKind::sep, {tree_vertex_of.at(e.ends[0]), tree_vertex_of.at(e.ends[1])}});
    }
    for (const auto& b : biseps_) {
      if (!is_maximal_bisep(b)) continue;
      const auto& e0 = graph_.edge(b.edges[0]);
      const auto& e1 = graph_.edge(b.edges[1]);
      const int far0 = b.left.count(e0.ends[0]) ? 1 : 0;
      const int far1 = b.left.count(e1.ends[0]) ? 1 : 0;
      if (tree_vertex_of.at(e0.ends[1 - far0]) != tree_vertex_of.at(e1.ends[1 - far1]) ||
          tree_vertex_of.at(e0.ends[far0]) != tree_vertex_of.at(e1.ends[far1])) {
        violations_.push_back("bisep " + b.id() + " does not join a single pair of tree vertices");
      }
      tree_.edges.push_back({b.id(), StarSepKind::bisep,
                             {tree_vertex_of.at(e0.ends[1 - far0]), tree_vertex_of.at(e0.ends[far0])}});
    }
    std::sort(tree_.edges.begin(), tree_.edges.end(), [](const auto& a, const auto& b) { return a.id < b.id; });

    std::map<std::string, std::size_t> index;
    for (std::size_t i = 0; i < tree_.vertices.size(); ++i) index[tree_.vertices[i].id] = i;
    detail::UnionFind uf(tree_.vertices.size());
    for (const auto& te : tree_.edges) {
      const auto a = index.at(te.ends[0]), b = index.at(te.ends[1]);
      if (uf.find(a) == uf.find(b)) violations_.push_back("separation tree has a cycle through " + te.id);
      uf.unite(a, b);
    }
    if (tree_.edges.size() + 1 != tree_.vertices.size()) {
      violations_.push_back("separation tree has " + std::to_string(tree_.vertices.size()) + " vertices and " +
                            std::to_string(tree_.edges.size()) + " edges");
    }
  }

  void check_one_sidedness() const {
    if (!semicompact()) return;
    std::vector<StarSep> all = seps_;
    all.insert(all.end(), biseps_.begin(), biseps_.end());
    for (const auto& s : all) {
      for (const auto& t : all) {
        if (s.id() == t.id()) continue;
        int left = 0, right = 0;
        for (const auto& id : t.edges) {
          const auto& e = graph_.edge(id);
          const bool l0 = s.left.count(e.ends[0]) > 0, l1 = s.left.count(e.ends[1]) > 0;
          ensure(l0 == l1 || std::count(s.edges.begin(), s.edges.end(), id) > 0,
                 "*-sep " + t.id() + " straddles " + s.id());
          (l0 ? left : right)++;
        }
        ensure(left == 0 || right == 0, "*-sep " + t.id() + " lies on both sides of " + s.id());
      }
    }
  }

  CurveGraph graph_;
  std::vector<StarSep> seps_;
  std::vector<StarSep> biseps_;
  std::vector<Polyseparator> classes_;
  std::vector<TwoComponent> components_;
  std::map<std::string, std::size_t> component_index_;
  SeparationTree tree_;
  std::vector<std::string> violations_;
};

inline std::vector<TwoComponent> two_separation(const CurveGraph& g) { return SeparationAnalysis(g).two_components(); }

/// Tree vertices are the components of the blowup at seps and degree-2
/// maximal biseps; edges of proper polyseparators stay inside a tree vertex.
inline SeparationTree separation_tree(const CurveGraph& g) { return SeparationAnalysis(g).tree(); }

/// An oriented bisep is adjacent iff its right part (within the inseparable
/// component holding it) is inseparable. Cross-checked against the bisep
/// being consecutive in its polyseparator with the right part between them.
inline bool adjacency_check(const CurveGraph& g, const StarSep& b) {
  require_connected(g);
  if (b.kind != StarSepKind::bisep || b.edges.size() != 2) fail(Errc::not_a_bisep, "expected a bisep");
  const auto bridges = detail::bridge_mask(g, {});
  const auto i0 = g.edge_index(b.edges[0]), i1 = g.edge_index(b.edges[1]);
  if (!detail::is_bisep_pair(g, bridges, i0, i1)) fail(Errc::not_a_bisep, b.id() + " is not a bisep");
  const auto canonical = detail::make_star_sep(g, StarSepKind::bisep, b.edges);
  const auto other = right_side(g, canonical);
  if (b.left != canonical.left && b.left != other) fail(Errc::not_a_bisep, "orientation of " + b.id() + " is not a side");

  const auto block = detail::inseparable_component(g, bridges, g.ends(i0)[0]);
  VertexSet right;
  for (const auto& v : right_side(g, b)) {
    if (block.count(v)) right.insert(v);
  }
  const auto keep = detail::vertex_filter(g, right);
  const auto inner = detail::bridge_mask(g, detail::edge_mask(g, b.edges), &keep);
  const bool adjacent = std::none_of(inner.begin(), inner.end(), [](bool x) { return x; });

  bool consecutive = false;
  for (const auto& c : maximal_polyseparators(g)) {
    if (!c.contains(b.edges[0]) || !c.contains(b.edges[1])) continue;
    const std::size_t n = c.degree();
    for (std::size_t i = 0; i < n; ++i) {
      const std::set<std::string> pair{c.edges[i], c.edges[(i + 1) % n]};
      if (pair == std::set<std::string>(b.edges.begin(), b.edges.end()) && c.parts[i] == right) consecutive = true;
    }
  }
  ensure(adjacent == consecutive, "adjacency of " + b.id() + " disagrees with its cyclic arrangement");
  return adjacent;
}

}  // namespace sepcanon
