#pragma once

// Relative hyperellipticity and the hyperelliptic / essentially-very-ample
// dichotomy. Facts that depend on continuous moduli (is a component
// hyperelliptic, is a mark a Weierstrass point or a g^1_2 divisor, what is the
// hyperelliptic azimuth) come from a ModuliOracle; this module only propagates
// them through the *-sep structure.

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "sepcanon/azimuths.hpp"
#include "sepcanon/curve_graph.hpp"
#include "sepcanon/error.hpp"
#include "sepcanon/marking.hpp"
#include "sepcanon/separators.hpp"

namespace sepcanon {

struct ComponentFacts {
  std::optional<bool> hyperelliptic;  ///< irreducible components
  std::optional<bool> interlace;      ///< two pointed lines are isomorphic
};

struct UnimarkFacts {
  bool weierstrass = false;
};

struct BimarkFacts {
  bool hyperelliptic_divisor = false;
  std::optional<Azimuth> azimuth;  ///< hyperelliptic azimuth, required when a divisor
};

struct BridgeFacts {
  bool hyperelliptic_divisor = false;
};

/// Keys: 2-component ids, unimark half-edge ids, bimark keys `h1|h2`, and
/// stable-model node ids for nonseparating bridges.
struct ModuliOracle {
  std::map<std::string, ComponentFacts> components;
  std::map<std::string, UnimarkFacts> unimarks;
  std::map<std::string, BimarkFacts> bimarks;
  std::map<std::string, BridgeFacts> nonseparating_bridges;
};

/// Middle azimuth per degree-2 maximal bisep id (`e1|e2`).
using MiddleAzimuthData = std::map<std::string, Azimuth>;

enum class InseparableClass { very_ample, irreducible_hyperelliptic, interlace, low_genus };

inline const char* to_string(InseparableClass c) {
  switch (c) {
    case InseparableClass::very_ample: return "VeryAmple";
    case InseparableClass::irreducible_hyperelliptic: return "IrreducibleHyperelliptic";
    case InseparableClass::interlace: return "Interlace";
    case InseparableClass::low_genus: return "LowGenus";
  }
  return "?";
}

enum class Side { left, right };

namespace detail {

inline bool pointed_semistable(const CurveGraph& g) {
  return std::all_of(g.vertices().begin(), g.vertices().end(), [&](const Vertex& v) {
    return omega_degree(g, v.id) + static_cast<long>(v.marks.size()) >= 0;
  });
}

inline bool interlace_shape(const CurveGraph& g) {
  if (g.vertex_count() != 2 || g.edge_count() < 3) return false;
  if (g.vertices()[0].genus != 0 || g.vertices()[1].genus != 0) return false;
  return std::none_of(g.edges().begin(), g.edges().end(), [](const Edge& e) { return e.is_loop(); });
}

inline std::string key_path(const std::string& section, const std::string& key, const std::string& field = "") {
  return section + "." + key + (field.empty() ? "" : "." + field);
}

}  // namespace detail

/// Classification of a 2-inseparable (possibly pointed) curve. Arithmetic
/// genus 2 is always hyperelliptic, so those entries need no oracle and an
/// oracle claiming otherwise is rejected.
inline InseparableClass classify_2inseparable(const CurveGraph& g, const ModuliOracle& o, std::string id = {}) {
  require_connected(g);
  if (id.empty()) id = vertex_set_id(g.vertex_ids());
  if (!detail::pointed_semistable(g)) fail(Errc::unstable, "component " + id + " is not semistable");
  if (!is_two_inseparable(g)) fail(Errc::not_two_inseparable, "component " + id + " has a sep or bisep");
  const long pa = arithmetic_genus(g);
  if (pa <= 1) return InseparableClass::low_genus;

  const auto facts = o.components.find(id);
  if (detail::interlace_shape(g)) {
    std::optional<bool> flag;
    if (facts != o.components.end()) flag = facts->second.interlace;
    if (pa == 2) {
      if (flag == false) fail(Errc::invalid_oracle, "a 3-interlace is always hyperelliptic: " + id);
      return InseparableClass::interlace;
    }
    if (!flag) throw IncompleteOracle({detail::key_path("components", id, "interlace")});
    return *flag ? InseparableClass::interlace : InseparableClass::very_ample;
  }
  if (g.vertex_count() == 1) {
    std::optional<bool> flag;
    if (facts != o.components.end()) flag = facts->second.hyperelliptic;
    const auto& v = g.vertices()[0];
    if (!flag) {
      if (auto it = v.flags.find("hyperelliptic"); it != v.flags.end()) flag = it->second;
    }
    if (pa == 2) {
      if (flag == false) fail(Errc::invalid_oracle, "genus-2 component " + id + " is always hyperelliptic");
      return InseparableClass::irreducible_hyperelliptic;
    }
    if (!flag) throw IncompleteOracle({detail::key_path("components", id, "hyperelliptic")});
    return *flag ? InseparableClass::irreducible_hyperelliptic : InseparableClass::very_ample;
  }
  return InseparableClass::very_ample;
}

/// 2-inseparable and of hyperelliptic type (including arithmetic genus <= 1).
inline bool hyperelliptic_like(const TwoComponent& y, const ModuliOracle& o) {
  if (!is_two_inseparable(y.subgraph)) return false;
  return classify_2inseparable(y.subgraph, o, y.id) != InseparableClass::very_ample;
}

inline bool locally_hyperelliptic(const TwoComponent& y, const std::string& mark, const ModuliOracle& o) {
  if (!y.has_mark(mark)) fail(Errc::mark_off_component, mark + " is not a mark of " + y.id);
  if (!hyperelliptic_like(y, o)) return false;
  const bool uni = std::any_of(y.unimarks.begin(), y.unimarks.end(), [&](const auto& u) { return u.point == mark; });
  if (uni) {
    auto it = o.unimarks.find(mark);
    if (it == o.unimarks.end()) throw IncompleteOracle({detail::key_path("unimarks", mark, "weierstrass")});
    return it->second.weierstrass;
  }
  auto it = o.bimarks.find(mark);
  if (it == o.bimarks.end()) throw IncompleteOracle({detail::key_path("bimarks", mark, "hyperelliptic_divisor")});
  return it->second.hyperelliptic_divisor;
}

struct FacingMark {
  const TwoComponent* component = nullptr;
  std::string key;
};

/// The mark a *-sep leaves on the 2-component on the given side, if that
/// component carries it as a single uni- or bimark.
inline std::optional<FacingMark> facing_mark(const SeparationAnalysis& a, const StarSep& s, Side side) {
  const auto& g = a.graph();
  std::vector<std::string> points;
  std::set<std::string> owners;
  for (const auto& id : s.edges) {
    const auto& e = g.edge(id);
    const int k = (s.left.count(e.ends[0]) > 0) == (side == Side::left) ? 0 : 1;
    points.push_back(e.half_edges[k]);
    owners.insert(a.component_of_vertex(e.ends[k]).id);
  }
  if (owners.size() != 1) return std::nullopt;
  const auto& y = a.component(*owners.begin());
  const auto key = detail::join(points, "|");
  if (!y.has_mark(key)) return std::nullopt;
  return FacingMark{&y, key};
}

inline bool locally_side_hyperelliptic(const SeparationAnalysis& a, const StarSep& s, Side side, const ModuliOracle& o) {
  const auto m = facing_mark(a, s, side);
  return m && locally_hyperelliptic(*m->component, m->key, o);
}

enum class BilateralFailure { none, left, right, azimuth };

/// Locally hyperelliptic on both sides; for a bisep also the middle azimuth
/// must equal the product of the two hyperelliptic azimuths.
inline BilateralFailure bilateral_failure(const SeparationAnalysis& a, const StarSep& s, const ModuliOracle& o,
                                          const MiddleAzimuthData& m) {
  if (!locally_side_hyperelliptic(a, s, Side::left, o)) return BilateralFailure::left;
  if (!locally_side_hyperelliptic(a, s, Side::right, o)) return BilateralFailure::right;
  if (s.kind == StarSepKind::sep) return BilateralFailure::none;
  auto mid = m.find(s.id());
  if (mid == m.end()) throw IncompleteOracle({detail::key_path("middle_azimuths", s.id())});
  const auto hyp = [&](Side side) {
    const auto key = facing_mark(a, s, side)->key;
    const auto& facts = o.bimarks.at(key);
    if (!facts.azimuth) throw IncompleteOracle({detail::key_path("bimarks", key, "azimuth")});
    return *facts.azimuth;
  };
  return compose(hyp(Side::left), hyp(Side::right)) == mid->second ? BilateralFailure::none : BilateralFailure::azimuth;
}

inline bool bilaterally_hyperelliptic(const SeparationAnalysis& a, const StarSep& s, const ModuliOracle& o,
                                      const MiddleAzimuthData& m) {
  return bilateral_failure(a, s, o, m) == BilateralFailure::none;
}

namespace detail {

inline bool strictly_inside(const CurveGraph& g, const std::vector<std::string>& edges, const VertexSet& side) {
  return std::all_of(edges.begin(), edges.end(), [&](const std::string& id) {
    const auto& e = g.edge(id);
    return side.count(e.ends[0]) && side.count(e.ends[1]);
  });
}

inline void validate_theta(const SeparationAnalysis& a, const std::vector<StarSep>& theta) {
  for (const auto& t : theta) {
    const auto s = a.star_sep(t.id());
    if (!s || (s->kind == StarSepKind::bisep && !a.is_maximal_bisep(*s))) {
      fail(Errc::invalid_theta, t.id() + " is neither a sep nor a degree-2 maximal bisep");
    }
  }
}

}  // namespace detail

/// Hyperelliptic on one side relative to theta: the facing mark is locally
/// hyperelliptic and every *-sep strictly on that side is bilaterally
/// hyperelliptic. Theta members are tested directly; edges of proper
/// polyseparators strictly on that side make the side non-hyperelliptic.
inline bool side_hyperelliptic(const SeparationAnalysis& a, const StarSep& s, Side side,
                               const std::vector<StarSep>& theta, const ModuliOracle& o, const MiddleAzimuthData& m) {
  if (!locally_side_hyperelliptic(a, s, side, o)) return false;
  const auto& g = a.graph();
  const VertexSet verts = side == Side::left ? s.left : right_side(g, s);
  for (const auto& c : a.polyseparators()) {
    if (!c.is_proper()) continue;
    for (const auto& e : c.edges) {
      if (detail::strictly_inside(g, {e}, verts)) return false;
    }
  }
  for (const auto& t : theta) {
    if (t.id() == s.id() || !detail::strictly_inside(g, t.edges, verts)) continue;
    if (!bilaterally_hyperelliptic(a, t, o, m)) return false;
  }
  return true;
}

/// Marking induced on a 2-component by theta: each mark from a theta member
/// is co-hyperelliptic iff that member, oriented with the component on the
/// left, is right-hyperelliptic relative to theta. Marks from *-seps outside
/// theta (including proper polyseparator bimarks) are never co-hyperelliptic.
inline AzimuthalMarking induced_azimuthal_marking(const SeparationAnalysis& a, const std::vector<StarSep>& theta,
                                                  const std::string& component_id, const ModuliOracle& o,
                                                  const MiddleAzimuthData& m, const AzimuthalMarking& base = {}) {
  detail::validate_theta(a, theta);
  const auto& y = a.component(component_id);
  const auto& anchor = y.subgraph.vertices().front().id;
  auto in_theta = [&](const std::string& id) {
    return std::any_of(theta.begin(), theta.end(), [&](const StarSep& t) { return t.id() == id; });
  };

  AzimuthalMarking out = base;
  for (const auto& u : y.unimarks) {
    MarkedUnimark mu{u.point, false, 3, u.sep, {}};
    if (in_theta(u.sep)) {
      const auto s = oriented_towards(a.graph(), *a.star_sep(u.sep), anchor);
      mu.co_hyperelliptic = side_hyperelliptic(a, s, Side::right, theta, o, m);
      mu.multiplicity = mu.co_hyperelliptic ? 2 : 3;
    }
    out.unimarks.push_back(std::move(mu));
  }
  for (const auto& b : y.bimarks) {
    MarkedBimark mb{b.points, false, std::nullopt, b.bisep(), {}};
    if (!b.proper && in_theta(b.bisep())) {
      const auto s = oriented_towards(a.graph(), *a.star_sep(b.bisep()), anchor);
      if (side_hyperelliptic(a, s, Side::right, theta, o, m)) {
        auto mid = m.find(b.bisep());
        if (mid == m.end()) throw IncompleteOracle({detail::key_path("middle_azimuths", b.bisep())});
        const auto right_key = facing_mark(a, s, Side::right)->key;
        const auto& facts = o.bimarks.at(right_key);
        if (!facts.azimuth) throw IncompleteOracle({detail::key_path("bimarks", right_key, "azimuth")});
        mb.co_hyperelliptic = true;
        mb.azimuth = induced_left_azimuth(mid->second, *facts.azimuth);
      }
    }
    out.bimarks.push_back(std::move(mb));
  }
  out.validate();
  return out;
}

/// A maximal chain of genus-0 two-branch components contracted to one node.
struct ContractedBridge {
  std::string node;                   ///< edge id of the node in the stable model
  std::vector<std::string> vertices;  ///< chain components, from ends[0] of the node to ends[1]
  std::vector<std::string> edges;     ///< original edges along the chain
};

struct StableModel {
  CurveGraph graph;
  std::vector<ContractedBridge> bridges;
};

/// Contracts every maximal chain of genus-0 components with exactly two
/// branches. The new node keeps the outer half-edge ids of the chain and its
/// id is the chain's edge ids joined by '~'.
inline StableModel stable_model(const CurveGraph& g) {
  if (classify_stability(g) == Stability::unstable) fail(Errc::unstable, "curve is not semistable");
  if (arithmetic_genus(g) < 2) fail(Errc::genus_too_low, "stable model needs arithmetic genus >= 2");

  struct Chain {
    std::vector<std::string> vertices;
    std::vector<std::string> edges;
  };
  std::vector<Vertex> vs = g.vertices();
  std::vector<Edge> es = g.edges();
  std::map<std::string, Chain> chains;
  for (const auto& e : es) chains[e.id] = Chain{{}, {e.id}};

  while (true) {
    CurveGraph cur(vs, es);
    std::optional<std::string> pick;
    for (const auto& v : cur.vertices()) {
      if (v.genus != 0 || cur.branch_count(cur.vertex_index(v.id)) != 2 || !v.marks.empty()) continue;
      const bool loop = std::any_of(es.begin(), es.end(), [&](const Edge& e) { return e.is_loop() && e.ends[0] == v.id; });
      if (!loop && (!pick || v.id < *pick)) pick = v.id;
    }
    if (!pick) break;
    std::vector<Edge> at, rest;
    for (const auto& e : es) (e.ends[0] == *pick || e.ends[1] == *pick ? at : rest).push_back(e);
    std::sort(at.begin(), at.end(), [](const Edge& x, const Edge& y) { return x.id < y.id; });
    // Orient both edges so the contracted vertex sits at ends[1] of the first
    // and ends[0] of the second; chains follow the same orientation.
    auto orient = [&](Edge e, bool v_last) {
      auto ch = chains.at(e.id);
      const bool v_at_end = e.ends[1] == *pick;
      if (v_at_end != v_last) {
        std::swap(e.ends[0], e.ends[1]);
        std::swap(e.half_edges[0], e.half_edges[1]);
        std::reverse(ch.vertices.begin(), ch.vertices.end());
        std::reverse(ch.edges.begin(), ch.edges.end());
      }
      return std::pair{e, ch};
    };
    auto [first, c1] = orient(at[0], true);
    auto [second, c2] = orient(at[1], false);
    Edge merged{first.id + "~" + second.id, {first.ends[0], second.ends[1]}, {first.half_edges[0], second.half_edges[1]}};
    Chain mc;
    mc.vertices = c1.vertices;
    mc.vertices.push_back(*pick);
    mc.vertices.insert(mc.vertices.end(), c2.vertices.begin(), c2.vertices.end());
    mc.edges = c1.edges;
    mc.edges.insert(mc.edges.end(), c2.edges.begin(), c2.edges.end());
    chains.erase(first.id);
    chains.erase(second.id);
    chains[merged.id] = mc;
    rest.push_back(merged);
    es = std::move(rest);
    vs.erase(std::remove_if(vs.begin(), vs.end(), [&](const Vertex& v) { return v.id == *pick; }), vs.end());
  }
  StableModel out{CurveGraph(std::move(vs), std::move(es)), {}};
  ensure(classify_stability(out.graph) == Stability::stable, "contraction did not reach a stable curve");
  ensure(arithmetic_genus(out.graph) == arithmetic_genus(g), "contraction changed the arithmetic genus");
  for (const auto& e : out.graph.edges()) {
    const auto& ch = chains.at(e.id);
    if (!ch.vertices.empty()) out.bridges.push_back({e.id, ch.vertices, ch.edges});
  }
  return out;
}

inline CurveGraph semistable_reduction_note(const CurveGraph& g) { return stable_model(g).graph; }

enum class Overall { hyperelliptic, not_hyperelliptic };
enum class ComponentVerdict { essentially_very_ample, two_to_one };

inline const char* to_string(Overall o) { return o == Overall::hyperelliptic ? "Hyperelliptic" : "NotHyperelliptic"; }

inline const char* to_string(ComponentVerdict v) {
  return v == ComponentVerdict::two_to_one ? "TwoToOneOntoRationalNormalCurve" : "EssentiallyVeryAmple";
}

struct Witness {
  std::string kind;  ///< proper_polyseparator | component | sep | bisep
  std::string id;
  std::string detail;
};

struct ClassificationVerdict {
  Overall overall = Overall::not_hyperelliptic;
  std::map<std::string, ComponentVerdict> per_component;
  std::vector<Witness> witnesses;
  std::optional<StableModel> stable_model;  ///< set when the input was strictly semistable
};

namespace detail {

/// 2-components whose type matters: those facing a mark of a default-theta
/// *-sep, or the whole curve when it is 2-inseparable.
inline std::vector<const TwoComponent*> examined_components(const SeparationAnalysis& a) {
  std::set<std::string> ids;
  if (a.two_components().size() == 1) ids.insert(a.two_components()[0].id);
  for (const auto& s : a.default_theta()) {
    for (auto side : {Side::left, Side::right}) {
      if (auto f = facing_mark(a, s, side)) ids.insert(f->component->id);
    }
  }
  std::vector<const TwoComponent*> out;
  for (const auto& id : ids) out.push_back(&a.component(id));
  return out;
}

}  // namespace detail

/// Oracle keys the classification will read but cannot find.
inline std::vector<std::string> missing_oracle_keys(const SeparationAnalysis& a, const ModuliOracle& o,
                                                    const MiddleAzimuthData& m) {
  std::set<std::string> missing;
  std::set<std::string> theta_ids;
  for (const auto& s : a.default_theta()) theta_ids.insert(s.id());
  for (const auto* y : detail::examined_components(a)) {
    bool like = false;
    try {
      like = hyperelliptic_like(*y, o);
    } catch (const IncompleteOracle& e) {
      missing.insert(e.missing().begin(), e.missing().end());
      continue;
    }
    if (!like) continue;
    for (const auto& u : y->unimarks) {
      if (!o.unimarks.count(u.point)) missing.insert(detail::key_path("unimarks", u.point, "weierstrass"));
    }
    for (const auto& b : y->bimarks) {
      if (b.proper || !theta_ids.count(b.bisep())) continue;
      auto it = o.bimarks.find(b.key());
      if (it == o.bimarks.end()) {
        missing.insert(detail::key_path("bimarks", b.key(), "hyperelliptic_divisor"));
      } else if (it->second.hyperelliptic_divisor && !it->second.azimuth) {
        missing.insert(detail::key_path("bimarks", b.key(), "azimuth"));
      }
    }
  }
  for (const auto& c : a.polyseparators()) {
    if (c.degree() == 2 && !m.count(c.id())) missing.insert(detail::key_path("middle_azimuths", c.id()));
  }
  return {missing.begin(), missing.end()};
}

/// Rejects unknown keys, singular hyperelliptic azimuths, and mark flags set on
/// components that are not of hyperelliptic type.
inline void validate_oracle(const SeparationAnalysis& a, const ModuliOracle& o, const MiddleAzimuthData& m) {
  auto owner = [&](const std::string& key) -> const TwoComponent* {
    for (const auto& y : a.two_components()) {
      if (y.has_mark(key)) return &y;
    }
    return nullptr;
  };
  auto like_or_unknown = [&](const TwoComponent& y) {
    try {
      return hyperelliptic_like(y, o);
    } catch (const IncompleteOracle&) {
      return true;
    }
  };
  for (const auto& [id, facts] : o.components) {
    const bool known = std::any_of(a.two_components().begin(), a.two_components().end(),
                                   [&](const auto& y) { return y.id == id; });
    if (!known) fail(Errc::invalid_oracle, "unknown 2-component " + id);
  }
  for (const auto& [key, facts] : o.unimarks) {
    const auto* y = owner(key);
    if (!y) fail(Errc::invalid_oracle, "unknown unimark " + key);
    if (facts.weierstrass && !like_or_unknown(*y)) {
      fail(Errc::invalid_oracle, "unimark " + key + " flagged on non-hyperelliptic component " + y->id);
    }
  }
  for (const auto& [key, facts] : o.bimarks) {
    const auto* y = owner(key);
    if (!y) fail(Errc::invalid_oracle, "unknown bimark " + key);
    if (facts.hyperelliptic_divisor && !like_or_unknown(*y)) {
      fail(Errc::invalid_oracle, "bimark " + key + " flagged on non-hyperelliptic component " + y->id);
    }
    if (facts.azimuth && !facts.azimuth->is_regular()) {
      fail(Errc::invalid_oracle, "hyperelliptic azimuth at " + key + " must be regular");
    }
  }
  for (const auto& [key, az] : m) {
    const auto s = a.star_sep(key);
    if (!s || !a.is_maximal_bisep(*s)) fail(Errc::invalid_oracle, "middle azimuth for non-maximal bisep " + key);
  }
}

/// Hyperelliptic iff semicompact, every examined 2-component is of
/// hyperelliptic type, and every sep and degree-2 maximal bisep is
/// bilaterally hyperelliptic with the hyperelliptic middle azimuth.
inline ClassificationVerdict classify_curve(const CurveGraph& g, const ModuliOracle& o, const MiddleAzimuthData& m) {
  require_connected(g);
  const auto stability = classify_stability(g);
  if (stability == Stability::unstable) fail(Errc::unstable, "curve is not semistable");
  if (arithmetic_genus(g) < 2) fail(Errc::genus_too_low, "classification needs arithmetic genus >= 2");
  if (stability == Stability::semistable) {
    auto sm = stable_model(g);
    auto verdict = classify_curve(sm.graph, o, m);
    verdict.stable_model = std::move(sm);
    return verdict;
  }

  const SeparationAnalysis a(g);
  a.require_well_formed();
  if (auto missing = missing_oracle_keys(a, o, m); !missing.empty()) throw IncompleteOracle(std::move(missing));
  validate_oracle(a, o, m);

  ClassificationVerdict out;
  for (const auto& c : a.polyseparators()) {
    if (c.is_proper()) out.witnesses.push_back({"proper_polyseparator", c.id(), "curve is not of semicompact type"});
  }
  for (const auto* y : detail::examined_components(a)) {
    if (!hyperelliptic_like(*y, o)) out.witnesses.push_back({"component", y->id, "not 2-inseparable hyperelliptic"});
  }
  for (const auto& s : a.default_theta()) {
    const auto failure = bilateral_failure(a, s, o, m);
    const char* why = failure == BilateralFailure::left    ? "left side not locally hyperelliptic"
                      : failure == BilateralFailure::right ? "right side not locally hyperelliptic"
                                                           : "middle azimuth is not the hyperelliptic one";
    if (failure != BilateralFailure::none) out.witnesses.push_back({to_string(s.kind), s.id(), why});
  }
  out.overall = out.witnesses.empty() ? Overall::hyperelliptic : Overall::not_hyperelliptic;
  const auto v = out.overall == Overall::hyperelliptic ? ComponentVerdict::two_to_one
                                                       : ComponentVerdict::essentially_very_ample;
  for (const auto& y : a.two_components()) out.per_component[y.id] = v;
  return out;
}

}  // namespace sepcanon
