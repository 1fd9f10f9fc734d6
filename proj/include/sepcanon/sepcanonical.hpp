#pragma once

// Degree and dimension bookkeeping for sepcanonical systems, the
// combinatorial very-ampleness lemmas, and the monomial systems placed on
// contracted rational bridges.

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "sepcanon/azimuths.hpp"
#include "sepcanon/curve_graph.hpp"
#include "sepcanon/error.hpp"
#include "sepcanon/hyperelliptic.hpp"
#include "sepcanon/marking.hpp"
#include "sepcanon/separators.hpp"

namespace sepcanon {

struct TwistDivisor {
  std::map<std::string, int> coefficients;  ///< point id -> coefficient

  int degree() const {
    int d = 0;
    for (const auto& [p, c] : coefficients) d += c;
    return d;
  }
};

namespace detail {

inline void require_on_component(const TwoComponent& y, const std::string& point, const std::string& vertex) {
  if (y.subgraph.point_vertex(point)) return;
  if (!vertex.empty() && y.subgraph.has_vertex(vertex)) return;
  fail(Errc::mark_off_component, point + " does not lie on " + y.id);
}

}  // namespace detail

inline TwistDivisor twist_divisor(const TwoComponent& y, const AzimuthalMarking& xi) {
  xi.validate();
  TwistDivisor t;
  auto add = [&](const std::string& p, int c) {
    if (!t.coefficients.emplace(p, c).second) fail(Errc::malformed_input, "point " + p + " marked twice");
  };
  for (const auto& u : xi.unimarks) {
    detail::require_on_component(y, u.point, u.vertex);
    add(u.point, u.multiplicity);
  }
  for (const auto& b : xi.bimarks) {
    for (int k = 0; k < 2; ++k) {
      detail::require_on_component(y, b.points[k], b.vertices[k]);
      add(b.points[k], 2);
    }
  }
  return t;
}

struct SystemEntry {
  std::string component;
  long genus = 0;  ///< arithmetic genus of the 2-component
  TwistDivisor twist;
  long bundle_degree = 0;
  long h0_ambient = 0;
  long residue_conditions = 0;
  long azimuthal_conditions = 0;
  long system_dim = 0;
};

/// Riemann-Roch for the twisted dualizing sheaf, minus one residue condition
/// per mark (less the global residue relation) and one condition per
/// co-hyperelliptic bimark.
inline SystemEntry system_dimension(const TwoComponent& y, const AzimuthalMarking& xi) {
  require_connected(y.subgraph);
  SystemEntry e;
  e.component = y.id;
  e.genus = arithmetic_genus(y.subgraph);
  e.twist = twist_divisor(y, xi);
  const long deg = e.twist.degree();
  e.bundle_degree = 2 * e.genus - 2 + deg;
  e.h0_ambient = deg == 0 ? e.genus : e.genus - 1 + deg;
  const long marks = static_cast<long>(xi.unimarks.size() + xi.bimarks.size());
  e.residue_conditions = std::max(0L, marks - 1);
  e.azimuthal_conditions = std::count_if(xi.bimarks.begin(), xi.bimarks.end(),
                                         [](const MarkedBimark& b) { return b.co_hyperelliptic; });
  e.system_dim = e.h0_ambient - e.residue_conditions - e.azimuthal_conditions;
  if (e.system_dim < 0) fail(Errc::degenerate_system, "negative system dimension on " + y.id);
  return e;
}

/// Marking used for a nonzero twist by an effective divisor: every mark is
/// treated as non-co-hyperelliptic, so only residue conditions remain.
inline AzimuthalMarking all_non_hyperelliptic(AzimuthalMarking xi) {
  for (auto& u : xi.unimarks) {
    u.co_hyperelliptic = false;
    u.multiplicity = 3;
  }
  for (auto& b : xi.bimarks) {
    b.co_hyperelliptic = false;
    b.azimuth.reset();
  }
  return xi;
}

struct Deg0Certificate {
  bool certified = false;
  std::string failure;   ///< total | subcurve | bisep_side; empty when certified
  VertexSet witness;     ///< failing subcurve or bisep side
  std::string bisep;     ///< failing bisep id for bisep_side
  int degree = 0;        ///< degree on the witness
};

/// Checks the degree hypotheses under which a nontrivial line bundle has no
/// sections: total degree <= 0, degree <= 2 on every subcurve, degree <= 1 on
/// each side of every listed bisep. Nontriviality is the caller's claim.
/// Subsets are scanned exhaustively, so the graph is capped at 20 vertices.
inline Deg0Certificate deg0_vanishing_certificate(const CurveGraph& g, const Multidegree& l,
                                                  const std::vector<StarSep>& biseps) {
  require_connected(g);
  if (!find_seps(g).empty()) fail(Errc::separable, "the vanishing certificate needs an inseparable curve");
  if (g.vertex_count() > 20) fail(Errc::malformed_input, "subset scan is limited to 20 vertices");
  const auto all = g.vertex_ids();
  Deg0Certificate out;
  const int total = subcurve_degree(l, make_subcurve(g, all));
  if (total > 0) {
    out.failure = "total";
    out.witness = all;
    out.degree = total;
    return out;
  }
  const auto& vs = g.vertices();
  const std::size_t n = vs.size();
  for (std::size_t mask = 1; mask < (std::size_t{1} << n); ++mask) {
    VertexSet subset;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask >> i & 1) subset.insert(vs[i].id);
    }
    const int d = subcurve_degree(l, Subcurve{subset});
    if (d > 2) {
      out.failure = "subcurve";
      out.witness = std::move(subset);
      out.degree = d;
      return out;
    }
  }
  for (const auto& b : biseps) {
    if (b.kind != StarSepKind::bisep) fail(Errc::not_a_bisep, b.id() + " is not a bisep");
    for (const auto& side : {b.left, right_side(g, b)}) {
      const int d = subcurve_degree(l, Subcurve{side});
      if (d > 1) {
        out.failure = "bisep_side";
        out.witness = side;
        out.bisep = b.id();
        out.degree = d;
        return out;
      }
    }
  }
  out.certified = true;
  return out;
}

struct DivisorPoint {
  std::string id;
  std::string vertex;
  int multiplicity = 1;
};

/// Moduli facts about the twisting divisor, supplied by the caller.
struct DispatchOracle {
  bool pair_hyperelliptic = false;              ///< (X, a) is hyperelliptic
  std::optional<Azimuth> hyperelliptic_azimuth;  ///< at the pair, when it is hyperelliptic
  std::optional<Azimuth> constraint;             ///< azimuth constraining the system, if any
};

enum class Ampleness { very_ample, very_ample_off_a, hyperelliptic_exception, not_applicable };

enum class AmplenessLemma {
  higher_twist_two_inseparable,
  higher_twist_relative,
  degree_two_two_inseparable,
  degree_two_relative,
  azimuth_constrained,
  none,
};

inline const char* to_string(Ampleness a) {
  switch (a) {
    case Ampleness::very_ample: return "VeryAmple";
    case Ampleness::very_ample_off_a: return "VeryAmpleOffA";
    case Ampleness::hyperelliptic_exception: return "HyperellipticException";
    case Ampleness::not_applicable: return "NotApplicable";
  }
  return "?";
}

inline const char* to_string(AmplenessLemma l) {
  switch (l) {
    case AmplenessLemma::higher_twist_two_inseparable: return "higher_twist_two_inseparable";
    case AmplenessLemma::higher_twist_relative: return "higher_twist_relative";
    case AmplenessLemma::degree_two_two_inseparable: return "degree_two_two_inseparable";
    case AmplenessLemma::degree_two_relative: return "degree_two_relative";
    case AmplenessLemma::azimuth_constrained: return "azimuth_constrained";
    case AmplenessLemma::none: return "none";
  }
  return "?";
}

struct DispatchVerdict {
  Ampleness verdict = Ampleness::not_applicable;
  AmplenessLemma lemma = AmplenessLemma::none;
};

/// Picks the very-ampleness lemma whose hypotheses hold for omega(a).
inline DispatchVerdict very_ampleness_dispatch(const CurveGraph& g, const std::vector<DivisorPoint>& a,
                                               const DispatchOracle& o) {
  require_connected(g);
  int degree = 0;
  std::vector<std::string> support;
  std::set<std::string> ids;
  for (const auto& p : a) {
    g.vertex_index(p.vertex);
    if (p.multiplicity < 1) fail(Errc::malformed_input, "point " + p.id + " has nonpositive multiplicity");
    if (!ids.insert(p.id).second) fail(Errc::malformed_input, "point " + p.id + " repeated");
    degree += p.multiplicity;
    support.push_back(p.vertex);
  }
  const bool two_insep = is_two_inseparable(g);
  const bool relative = find_seps(g).empty() && relative_two_inseparable(g, support).two_inseparable;
  if (degree < 2 || (!two_insep && !relative)) return {};

  if (o.constraint) {
    const bool distinct_pair = a.size() == 2 && a[0].multiplicity == 1 && a[1].multiplicity == 1;
    if (!distinct_pair) return {};
    const bool exception = two_insep && o.pair_hyperelliptic && o.hyperelliptic_azimuth &&
                           *o.hyperelliptic_azimuth == *o.constraint;
    return {exception ? Ampleness::hyperelliptic_exception : Ampleness::very_ample_off_a,
            AmplenessLemma::azimuth_constrained};
  }
  if (degree >= 3) {
    return {Ampleness::very_ample,
            two_insep ? AmplenessLemma::higher_twist_two_inseparable : AmplenessLemma::higher_twist_relative};
  }
  if (two_insep) {
    return {o.pair_hyperelliptic ? Ampleness::hyperelliptic_exception : Ampleness::very_ample_off_a,
            AmplenessLemma::degree_two_two_inseparable};
  }
  return {Ampleness::very_ample_off_a, AmplenessLemma::degree_two_relative};
}

using Monomial = std::pair<int, int>;  ///< exponents of X0 and X1

/// Monomials spanning the system on a component of a contracted bridge, given
/// whether the pointed curve on each side is hyperelliptic.
inline std::vector<Monomial> bridge_system(bool left_hyperelliptic, bool right_hyperelliptic) {
  if (left_hyperelliptic && right_hyperelliptic) return {{2, 0}, {0, 2}};
  if (left_hyperelliptic) return {{3, 0}, {2, 1}, {0, 3}};
  if (right_hyperelliptic) return {{3, 0}, {1, 2}, {0, 3}};
  return {{4, 0}, {3, 1}, {1, 3}, {0, 4}};
}

struct ComponentReport {
  AzimuthalMarking marking;
  SystemEntry system;
  ComponentVerdict verdict = ComponentVerdict::essentially_very_ample;
};

struct BridgeReport {
  ContractedBridge bridge;
  bool separating = false;
  bool left_hyperelliptic = false;
  bool right_hyperelliptic = false;
  std::vector<Monomial> monomials;
};

struct GenusAccounting {
  long component_genus_sum = 0;
  long arithmetic_genus = 0;
  long blown_edges = 0;
  long components = 0;

  long expected() const { return arithmetic_genus - blown_edges + (components - 1); }
  bool holds() const { return component_genus_sum == expected(); }
};

struct SepcanonicalReport {
  std::vector<std::string> theta;  ///< *-sep ids of the theta used
  bool default_theta = true;
  std::map<std::string, ComponentReport> components;
  GenusAccounting genus;
  ClassificationVerdict classification;
  std::optional<StableModel> stable_model;
  std::vector<BridgeReport> bridges;
};

/// Sepcanonical system of a stable curve (semistable input goes through its
/// stable model) relative to theta, by default all seps and degree-2 maximal
/// biseps.
inline SepcanonicalReport full_report(const CurveGraph& input, const ModuliOracle& o, const MiddleAzimuthData& m,
                                      const std::optional<std::vector<std::string>>& theta_ids = std::nullopt) {
  require_connected(input);
  const auto stability = classify_stability(input);
  if (stability == Stability::unstable) fail(Errc::unstable, "curve is not semistable");
  if (arithmetic_genus(input) < 2) fail(Errc::genus_too_low, "sepcanonical systems need arithmetic genus >= 2");

  SepcanonicalReport out;
  if (stability == Stability::semistable) out.stable_model = stable_model(input);
  const CurveGraph& g = out.stable_model ? out.stable_model->graph : input;

  out.classification = classify_curve(g, o, m);
  const SeparationAnalysis a(g);
  std::vector<StarSep> theta = a.default_theta();
  if (theta_ids) {
    std::vector<StarSep> chosen;
    for (const auto& id : *theta_ids) {
      auto s = a.star_sep(id);
      if (!s) fail(Errc::invalid_theta, id + " is not a sep or bisep");
      chosen.push_back(*s);
    }
    detail::validate_theta(a, chosen);
    std::sort(chosen.begin(), chosen.end(), [](const StarSep& x, const StarSep& y) { return x.id() < y.id(); });
    chosen.erase(std::unique(chosen.begin(), chosen.end(),
                             [](const StarSep& x, const StarSep& y) { return x.id() == y.id(); }),
                 chosen.end());
    auto sorted_default = theta;
    std::sort(sorted_default.begin(), sorted_default.end(),
              [](const StarSep& x, const StarSep& y) { return x.id() < y.id(); });
    out.default_theta = chosen.size() == sorted_default.size() &&
                        std::equal(chosen.begin(), chosen.end(), sorted_default.begin(),
                                   [](const StarSep& x, const StarSep& y) { return x.id() == y.id(); });
    theta = std::move(chosen);
  }
  for (const auto& s : theta) out.theta.push_back(s.id());

  for (const auto& y : a.two_components()) {
    ComponentReport r;
    r.marking = induced_azimuthal_marking(a, theta, y.id, o, m);
    r.system = system_dimension(y, r.marking);
    r.verdict = out.classification.per_component.at(y.id);
    if (r.verdict == ComponentVerdict::two_to_one && out.default_theta) {
      ensure(r.system.bundle_degree == 2 * (r.system.system_dim - 1),
             "degree identity fails on hyperelliptic component " + y.id);
    }
    out.genus.component_genus_sum += r.system.genus;
    out.components.emplace(y.id, std::move(r));
  }
  out.genus.arithmetic_genus = arithmetic_genus(g);
  out.genus.blown_edges = static_cast<long>(a.blown_edges().size());
  out.genus.components = static_cast<long>(a.two_components().size());
  ensure(out.genus.holds(), "genus accounting fails for the 2-separation");

  if (out.stable_model) {
    for (const auto& b : out.stable_model->bridges) {
      BridgeReport r{b, false, false, false, {}};
      const auto& node = g.edge(b.node);
      if (auto s = a.star_sep(b.node); s && s->kind == StarSepKind::sep) {
        r.separating = true;
        const auto oriented = oriented_towards(g, *s, node.ends[0]);
        r.left_hyperelliptic = side_hyperelliptic(a, oriented, Side::left, theta, o, m);
        r.right_hyperelliptic = side_hyperelliptic(a, oriented, Side::right, theta, o, m);
      } else {
        auto it = o.nonseparating_bridges.find(b.node);
        if (it == o.nonseparating_bridges.end()) {
          throw IncompleteOracle({detail::key_path("nonseparating_bridges", b.node, "hyperelliptic_divisor")});
        }
        r.left_hyperelliptic = r.right_hyperelliptic = it->second.hyperelliptic_divisor;
      }
      r.monomials = bridge_system(r.left_hyperelliptic, r.right_hyperelliptic);
      out.bridges.push_back(std::move(r));
    }
  }
  return out;
}

}  // namespace sepcanon
