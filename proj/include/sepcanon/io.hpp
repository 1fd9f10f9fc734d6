#pragma once

// JSON schemas for curves, oracles and middle azimuths, plus JSON, table and
// DOT renderings of every analysis result. nlohmann::json keeps object keys
// sorted, so all JSON output is deterministic.

#include <fstream>
#include <iomanip>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "sepcanon/azimuths.hpp"
#include "sepcanon/curve_graph.hpp"
#include "sepcanon/error.hpp"
#include "sepcanon/hyperelliptic.hpp"
#include "sepcanon/sepcanonical.hpp"
#include "sepcanon/separators.hpp"

namespace sepcanon::io {

using json = nlohmann::json;

namespace detail {

inline const json& field(const json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) fail(Errc::malformed_input, where + ": missing '" + key + "'");
  return j.at(key);
}

inline std::string string_field(const json& j, const char* key, const std::string& where) {
  const auto& v = field(j, key, where);
  if (!v.is_string()) fail(Errc::malformed_input, where + ": '" + key + "' must be a string");
  return v.get<std::string>();
}

inline bool bool_value(const json& j, const std::string& where) {
  if (!j.is_boolean()) fail(Errc::malformed_input, where + " must be a boolean");
  return j.get<bool>();
}

inline void only_keys(const json& j, std::initializer_list<const char*> allowed, const std::string& where) {
  if (!j.is_object()) fail(Errc::malformed_input, where + " must be an object");
  for (const auto& [k, v] : j.items()) {
    if (std::none_of(allowed.begin(), allowed.end(), [&](const char* a) { return k == a; })) {
      fail(Errc::malformed_input, where + ": unexpected key '" + k + "'");
    }
  }
}

inline Rational rational_value(const json& j, const std::string& where) {
  if (j.is_number_integer()) return Rational(j.get<long long>());
  if (j.is_string()) return parse_rational(j.get<std::string>());
  fail(Errc::malformed_input, where + ": coordinates are integers or \"p/q\" strings");
}

}  // namespace detail

inline json parse_text(const std::string& text, const std::string& where) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    fail(Errc::malformed_input, where + ": " + e.what());
  }
}

inline json load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(Errc::malformed_input, "cannot read " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_text(buf.str(), path);
}

inline Azimuth azimuth_from_json(const json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 2) fail(Errc::malformed_input, where + ": an azimuth is a pair [a, b]");
  const Rational a = detail::rational_value(j[0], where), b = detail::rational_value(j[1], where);
  if (a == 0 && b == 0) fail(Errc::malformed_input, where + ": [0, 0] is not an azimuth");
  return Azimuth(a, b);
}

inline json to_json(const Azimuth& a) { return json::array({format_rational(a.first()), format_rational(a.second())}); }

/// {"vertices": [{"id", "genus", "marks"?, "flags"?}],
///  "edges": [{"id", "ends": [a, b], "half_edges"?: [h0, h1]}]}
inline CurveGraph curve_from_json(const json& j) {
  detail::only_keys(j, {"vertices", "edges", "name", "description"}, "curve");
  const auto& vs = detail::field(j, "vertices", "curve");
  const auto& es = j.contains("edges") ? j.at("edges") : json::array();
  if (!vs.is_array() || !es.is_array()) fail(Errc::malformed_input, "curve: vertices and edges must be arrays");
  std::vector<Vertex> vertices;
  for (const auto& v : vs) {
    detail::only_keys(v, {"id", "genus", "marks", "flags"}, "vertex");
    Vertex out;
    out.id = detail::string_field(v, "id", "vertex");
    const auto& genus = detail::field(v, "genus", "vertex " + out.id);
    if (!genus.is_number_integer()) fail(Errc::malformed_input, "vertex " + out.id + ": genus must be an integer");
    out.genus = genus.get<int>();
    if (v.contains("marks")) {
      for (const auto& m : v.at("marks")) {
        if (!m.is_string()) fail(Errc::malformed_input, "vertex " + out.id + ": marks are strings");
        out.marks.push_back(m.get<std::string>());
      }
    }
    if (v.contains("flags")) {
      for (const auto& [k, f] : v.at("flags").items()) out.flags[k] = detail::bool_value(f, "flag " + k);
    }
    vertices.push_back(std::move(out));
  }
  std::vector<Edge> edges;
  for (const auto& e : es) {
    detail::only_keys(e, {"id", "ends", "half_edges"}, "edge");
    const auto id = detail::string_field(e, "id", "edge");
    const auto& ends = detail::field(e, "ends", "edge " + id);
    if (!ends.is_array() || ends.size() != 2 || !ends[0].is_string() || !ends[1].is_string()) {
      fail(Errc::malformed_input, "edge " + id + ": ends must be two vertex ids");
    }
    Edge out = make_edge(id, ends[0].get<std::string>(), ends[1].get<std::string>());
    if (e.contains("half_edges")) {
      const auto& h = e.at("half_edges");
      if (!h.is_array() || h.size() != 2 || !h[0].is_string() || !h[1].is_string()) {
        fail(Errc::malformed_input, "edge " + id + ": half_edges must be two strings");
      }
      out.half_edges = {h[0].get<std::string>(), h[1].get<std::string>()};
    }
    edges.push_back(std::move(out));
  }
  return CurveGraph(std::move(vertices), std::move(edges));
}

inline json to_json(const CurveGraph& g) {
  json vs = json::array(), es = json::array();
  for (const auto& v : g.vertices()) {
    json jv{{"id", v.id}, {"genus", v.genus}};
    if (!v.marks.empty()) jv["marks"] = v.marks;
    if (!v.flags.empty()) jv["flags"] = v.flags;
    vs.push_back(std::move(jv));
  }
  for (const auto& e : g.edges()) {
    es.push_back({{"id", e.id}, {"ends", e.ends}, {"half_edges", e.half_edges}});
  }
  return {{"vertices", vs}, {"edges", es}};
}

/// {"components": {id: {"hyperelliptic"?: b, "interlace"?: b}},
///  "unimarks": {half_edge: {"weierstrass": b}},
///  "bimarks": {"h1|h2": {"hyperelliptic_divisor": b, "azimuth"?: [a, b]}},
///  "nonseparating_bridges": {node: {"hyperelliptic_divisor": b}}}
inline ModuliOracle oracle_from_json(const json& j) {
  detail::only_keys(j, {"components", "unimarks", "bimarks", "nonseparating_bridges", "description"}, "oracle");
  ModuliOracle o;
  if (j.contains("components")) {
    for (const auto& [id, c] : j.at("components").items()) {
      detail::only_keys(c, {"hyperelliptic", "interlace"}, "components." + id);
      ComponentFacts f;
      if (c.contains("hyperelliptic")) f.hyperelliptic = detail::bool_value(c.at("hyperelliptic"), id);
      if (c.contains("interlace")) f.interlace = detail::bool_value(c.at("interlace"), id);
      o.components[id] = f;
    }
  }
  if (j.contains("unimarks")) {
    for (const auto& [id, u] : j.at("unimarks").items()) {
      detail::only_keys(u, {"weierstrass"}, "unimarks." + id);
      o.unimarks[id].weierstrass = detail::bool_value(detail::field(u, "weierstrass", "unimarks." + id), id);
    }
  }
  if (j.contains("bimarks")) {
    for (const auto& [id, b] : j.at("bimarks").items()) {
      const auto where = "bimarks." + id;
      detail::only_keys(b, {"hyperelliptic_divisor", "azimuth"}, where);
      BimarkFacts f;
      f.hyperelliptic_divisor = detail::bool_value(detail::field(b, "hyperelliptic_divisor", where), where);
      if (b.contains("azimuth")) f.azimuth = azimuth_from_json(b.at("azimuth"), where);
      o.bimarks[id] = f;
    }
  }
  if (j.contains("nonseparating_bridges")) {
    for (const auto& [id, b] : j.at("nonseparating_bridges").items()) {
      const auto where = "nonseparating_bridges." + id;
      detail::only_keys(b, {"hyperelliptic_divisor"}, where);
      o.nonseparating_bridges[id].hyperelliptic_divisor =
          detail::bool_value(detail::field(b, "hyperelliptic_divisor", where), where);
    }
  }
  return o;
}

/// {"e1|e2": [a, b], ...}
inline MiddleAzimuthData azimuths_from_json(const json& j) {
  if (!j.is_object()) fail(Errc::malformed_input, "middle azimuths must be an object");
  MiddleAzimuthData m;
  for (const auto& [id, a] : j.items()) m.emplace(id, azimuth_from_json(a, "middle_azimuths." + id));
  return m;
}

inline json to_json(const StarSep& s, const CurveGraph& g) {
  return {{"id", s.id()}, {"kind", to_string(s.kind)}, {"edges", s.edges}, {"left", s.left}, {"right", right_side(g, s)}};
}

inline json to_json(const Polyseparator& p) {
  json parts = json::array();
  for (const auto& part : p.parts) parts.push_back(part);
  return {{"id", p.id()}, {"degree", p.degree()}, {"proper", p.is_proper()}, {"edges", p.edges}, {"parts", parts}};
}

inline json to_json(const TwoComponent& y) {
  json uni = json::array(), bi = json::array();
  for (const auto& u : y.unimarks) uni.push_back({{"point", u.point}, {"sep", u.sep}});
  for (const auto& b : y.bimarks) {
    bi.push_back({{"key", b.key()},
                  {"points", b.points},
                  {"bisep", b.bisep()},
                  {"polyseparator", b.polyseparator},
                  {"proper", b.proper}});
  }
  return {{"id", y.id},
          {"vertices", y.subgraph.vertex_ids()},
          {"arithmetic_genus", arithmetic_genus(y.subgraph)},
          {"two_inseparable", is_two_inseparable(y.subgraph)},
          {"unimarks", uni},
          {"bimarks", bi}};
}

inline json to_json(const SeparationTree& t) {
  json vs = json::array(), es = json::array();
  for (const auto& v : t.vertices) vs.push_back({{"id", v.id}, {"vertices", v.vertices}, {"two_components", v.two_components}});
  for (const auto& e : t.edges) es.push_back({{"id", e.id}, {"kind", to_string(e.kind)}, {"ends", e.ends}});
  return {{"vertices", vs}, {"edges", es}};
}

inline json to_json(const ClassificationVerdict& v) {
  json per = json::object(), wit = json::array();
  for (const auto& [id, c] : v.per_component) per[id] = to_string(c);
  for (const auto& w : v.witnesses) wit.push_back({{"kind", w.kind}, {"id", w.id}, {"detail", w.detail}});
  json out{{"overall", to_string(v.overall)}, {"per_component", per}, {"witnesses", wit}};
  if (v.stable_model) out["stable_model"] = to_json(v.stable_model->graph);
  return out;
}

inline json to_json(const AzimuthalMarking& xi) {
  json uni = json::array(), bi = json::array();
  for (const auto& u : xi.unimarks) {
    uni.push_back({{"point", u.point}, {"co_hyperelliptic", u.co_hyperelliptic}, {"multiplicity", u.multiplicity},
                   {"source", u.source}});
  }
  for (const auto& b : xi.bimarks) {
    json jb{{"points", b.points}, {"co_hyperelliptic", b.co_hyperelliptic}, {"source", b.source}};
    if (b.azimuth) jb["azimuth"] = to_json(*b.azimuth);
    bi.push_back(std::move(jb));
  }
  return {{"unimarks", uni}, {"bimarks", bi}};
}

inline json to_json(const SystemEntry& e) {
  return {{"genus", e.genus},
          {"twist", {{"coefficients", e.twist.coefficients}, {"degree", e.twist.degree()}}},
          {"bundle_degree", e.bundle_degree},
          {"h0_ambient", e.h0_ambient},
          {"residue_conditions", e.residue_conditions},
          {"azimuthal_conditions", e.azimuthal_conditions},
          {"system_dim", e.system_dim}};
}

inline json to_json(const Monomial& m) { return json::array({m.first, m.second}); }

inline json to_json(const SepcanonicalReport& r) {
  json comps = json::object(), bridges = json::array();
  for (const auto& [id, c] : r.components) {
    comps[id] = {{"marking", to_json(c.marking)}, {"system", to_json(c.system)}, {"verdict", to_string(c.verdict)}};
  }
  for (const auto& b : r.bridges) {
    json mons = json::array();
    for (const auto& m : b.monomials) mons.push_back(to_json(m));
    bridges.push_back({{"node", b.bridge.node},
                       {"vertices", b.bridge.vertices},
                       {"edges", b.bridge.edges},
                       {"separating", b.separating},
                       {"left_hyperelliptic", b.left_hyperelliptic},
                       {"right_hyperelliptic", b.right_hyperelliptic},
                       {"monomials", mons}});
  }
  json out{{"theta", r.theta},
           {"default_theta", r.default_theta},
           {"components", comps},
           {"genus_accounting",
            {{"component_genus_sum", r.genus.component_genus_sum},
             {"arithmetic_genus", r.genus.arithmetic_genus},
             {"blown_edges", r.genus.blown_edges},
             {"components", r.genus.components},
             {"holds", r.genus.holds()}}},
           {"classification", to_json(r.classification)},
           {"bridges", bridges}};
  if (r.stable_model) out["stable_model"] = to_json(r.stable_model->graph);
  return out;
}

/// Everything an oracle author needs: the curve with explicit half-edge ids,
/// the 2-components with their marks, and the keys the classification reads.
inline json analysis_manifest(const SeparationAnalysis& a, const ModuliOracle& o, const MiddleAzimuthData& m) {
  const auto& g = a.graph();
  json out = to_json(g);
  json seps = json::array(), biseps = json::array(), polys = json::array(), comps = json::array();
  for (const auto& s : a.seps()) seps.push_back(s.id());
  for (const auto& b : a.biseps()) biseps.push_back(b.id());
  for (const auto& p : a.polyseparators()) polys.push_back(p.id());
  for (const auto& y : a.two_components()) comps.push_back(to_json(y));
  json manifest{{"arithmetic_genus", arithmetic_genus(g)},
                {"stability", to_string(classify_stability(g))},
                {"seps", seps},
                {"biseps", biseps},
                {"polyseparators", polys},
                {"semicompact", a.semicompact()},
                {"two_components", comps}};
  std::vector<std::string> middle;
  for (const auto& p : a.polyseparators()) {
    if (p.degree() == 2) middle.push_back(p.id());
  }
  manifest["middle_azimuth_keys"] = middle;
  manifest["missing_oracle_keys"] = missing_oracle_keys(a, o, m);
  manifest["structure_violations"] = a.structure_violations();
  out["manifest"] = manifest;
  return out;
}

// ---- DOT ----

namespace detail {

inline std::string quoted(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

}  // namespace detail

/// Dual graph with genus labels; seps are bold, bisep edges dashed and
/// labelled with their polyseparator, vertices grouped by 2-component.
inline std::string graph_dot(const SeparationAnalysis& a) {
  const auto& g = a.graph();
  std::map<std::string, std::string> edge_class;
  for (const auto& p : a.polyseparators()) {
    for (const auto& e : p.edges) edge_class[e] = p.id();
  }
  std::set<std::string> seps;
  for (const auto& s : a.seps()) seps.insert(s.edges[0]);
  std::ostringstream out;
  out << "graph curve {\n  node [shape=circle];\n";
  int cluster = 0;
  for (const auto& y : a.two_components()) {
    out << "  subgraph cluster_" << cluster++ << " {\n    label=" << detail::quoted(y.id) << ";\n";
    for (const auto& v : y.subgraph.vertices()) {
      out << "    " << detail::quoted(v.id) << " [label=" << detail::quoted(v.id + "\\ng=" + std::to_string(v.genus))
          << "];\n";
    }
    out << "  }\n";
  }
  for (const auto& e : g.edges()) {
    out << "  " << detail::quoted(e.ends[0]) << " -- " << detail::quoted(e.ends[1]) << " [label=" << detail::quoted(e.id);
    if (seps.count(e.id)) out << ", style=bold, color=red";
    if (auto it = edge_class.find(e.id); it != edge_class.end()) {
      out << ", style=dashed, color=blue, xlabel=" << detail::quoted(it->second);
    }
    out << "];\n";
  }
  out << "}\n";
  return out.str();
}

inline std::string tree_dot(const SeparationTree& t) {
  std::ostringstream out;
  out << "graph separation_tree {\n  node [shape=box];\n";
  for (const auto& v : t.vertices) {
    out << "  " << detail::quoted(v.id) << " [label=" << detail::quoted(::sepcanon::detail::join(v.two_components, "\\n"))
        << "];\n";
  }
  for (const auto& e : t.edges) {
    out << "  " << detail::quoted(e.ends[0]) << " -- " << detail::quoted(e.ends[1])
        << " [label=" << detail::quoted(e.id) << (e.kind == StarSepKind::bisep ? ", style=dashed" : "") << "];\n";
  }
  out << "}\n";
  return out.str();
}

// ---- tables ----

/// Left-aligned columns separated by two spaces.
inline std::string table(const std::vector<std::string>& header, const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> width(header.size());
  for (std::size_t i = 0; i < header.size(); ++i) width[i] = header[i].size();
  for (const auto& r : rows) {
    for (std::size_t i = 0; i < r.size() && i < width.size(); ++i) width[i] = std::max(width[i], r[i].size());
  }
  std::ostringstream out;
  auto line = [&](const std::vector<std::string>& cells) {
    std::string text;
    for (std::size_t i = 0; i < cells.size(); ++i) {
      std::ostringstream cell;
      cell << std::left << std::setw(static_cast<int>(width[i])) << cells[i];
      text += (i ? "  " : "") + cell.str();
    }
    while (!text.empty() && text.back() == ' ') text.pop_back();
    out << text << "\n";
  };
  line(header);
  for (const auto& r : rows) line(r);
  return out.str();
}

inline std::string report_table(const SepcanonicalReport& r) {
  std::vector<std::vector<std::string>> rows;
  for (const auto& [id, c] : r.components) {
    const auto& s = c.system;
    rows.push_back({id, std::to_string(s.genus), std::to_string(s.twist.degree()), std::to_string(s.bundle_degree),
                    std::to_string(s.h0_ambient), std::to_string(s.residue_conditions),
                    std::to_string(s.azimuthal_conditions), std::to_string(s.system_dim), to_string(c.verdict)});
  }
  std::string out = table({"component", "g", "twist_deg", "bundle_deg", "h0", "residue", "azimuthal", "dim", "verdict"}, rows);
  out += "genus accounting: " + std::to_string(r.genus.component_genus_sum) + " = " +
         std::to_string(r.genus.arithmetic_genus) + " - " + std::to_string(r.genus.blown_edges) + " + (" +
         std::to_string(r.genus.components) + " - 1)\n";
  out += std::string("overall: ") + to_string(r.classification.overall) + "\n";
  for (const auto& b : r.bridges) {
    std::string mons;
    for (const auto& [x0, x1] : b.monomials) {
      mons += (mons.empty() ? "" : " ") + std::string("X0^") + std::to_string(x0) + "X1^" + std::to_string(x1);
    }
    out += "bridge " + b.bridge.node + ": " + mons + "\n";
  }
  return out;
}

}  // namespace sepcanon::io
