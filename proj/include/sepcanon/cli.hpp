#pragma once

// Command-line front end. `run` takes its streams as arguments so tests can
// drive it in-process.
//
// Exit codes: 0 success, 1 internal invariant violation, 2 malformed input,
// 3 incomplete oracle (missing keys listed), 4 disconnected, unstable or
// low-genus curve.

#include <fstream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "sepcanon/curve_graph.hpp"
#include "sepcanon/error.hpp"
#include "sepcanon/hyperelliptic.hpp"
#include "sepcanon/io.hpp"
#include "sepcanon/sepcanonical.hpp"
#include "sepcanon/separators.hpp"

namespace sepcanon::cli {

inline int exit_code(Errc c) {
  switch (c) {
    case Errc::invariant_violation:
    case Errc::degenerate_system: return 1;
    case Errc::incomplete_oracle: return 3;
    case Errc::disconnected:
    case Errc::unstable:
    case Errc::genus_too_low: return 4;
    default: return 2;
  }
}

struct Request {
  std::string command;
  std::string curve_path;
  std::string oracle_path;
  std::string azimuth_path;
  std::string format = "json";
  std::string dot_path;
  std::vector<std::string> theta;
  bool left = false;
  bool right = false;
};

namespace detail {

using io::json;

inline void emit(std::ostream& out, const json& j) { out << j.dump(2) << "\n"; }

inline std::vector<std::vector<std::string>> star_sep_rows(const CurveGraph& g, const std::vector<StarSep>& list) {
  std::vector<std::vector<std::string>> rows;
  for (const auto& s : list) {
    rows.push_back({s.id(), vertex_set_id(s.left), vertex_set_id(right_side(g, s))});
  }
  return rows;
}

/// The curve whose *-sep structure oracles refer to: the stable model when the
/// input is strictly semistable and of genus >= 2.
inline CurveGraph oracle_curve(const CurveGraph& g) {
  if (is_connected(g) && classify_stability(g) == Stability::semistable && arithmetic_genus(g) >= 2) {
    return stable_model(g).graph;
  }
  return g;
}

inline int run_request(const Request& r, std::ostream& out) {
  if (r.command == "bridge") {
    json mons = json::array();
    for (const auto& m : bridge_system(r.left, r.right)) mons.push_back(io::to_json(m));
    if (r.format == "table") {
      std::vector<std::vector<std::string>> rows;
      for (const auto& [a, b] : bridge_system(r.left, r.right)) rows.push_back({std::to_string(a), std::to_string(b)});
      out << io::table({"X0", "X1"}, rows);
    } else {
      emit(out, {{"left_hyperelliptic", r.left}, {"right_hyperelliptic", r.right}, {"monomials", mons}});
    }
    return 0;
  }

  const CurveGraph g = io::curve_from_json(io::load_file(r.curve_path));
  const bool needs_oracle = r.command == "classify" || r.command == "sepcanon";
  const ModuliOracle oracle = r.oracle_path.empty() ? ModuliOracle{} : io::oracle_from_json(io::load_file(r.oracle_path));
  const MiddleAzimuthData middle =
      r.azimuth_path.empty() ? MiddleAzimuthData{} : io::azimuths_from_json(io::load_file(r.azimuth_path));
  if (needs_oracle && r.oracle_path.empty()) {
    // Report what an oracle for this curve has to contain.
    std::vector<std::string> missing{"--oracle"};
    require_connected(g);
    if (classify_stability(g) != Stability::unstable && arithmetic_genus(g) >= 2) {
      const SeparationAnalysis a(oracle_curve(g));
      for (auto& k : missing_oracle_keys(a, oracle, middle)) missing.push_back(std::move(k));
    }
    throw IncompleteOracle(std::move(missing));
  }

  if (r.command == "classify") {
    const auto verdict = classify_curve(g, oracle, middle);
    if (r.format == "table") {
      std::vector<std::vector<std::string>> rows;
      for (const auto& [id, v] : verdict.per_component) rows.push_back({id, to_string(v)});
      out << io::table({"component", "verdict"}, rows);
      out << "overall: " << to_string(verdict.overall) << "\n";
      for (const auto& w : verdict.witnesses) out << "witness: " << w.kind << " " << w.id << ": " << w.detail << "\n";
    } else {
      emit(out, io::to_json(verdict));
    }
    return 0;
  }
  if (r.command == "sepcanon") {
    std::optional<std::vector<std::string>> theta;
    if (!r.theta.empty()) theta = r.theta;
    const auto report = full_report(g, oracle, middle, theta);
    if (r.format == "table") {
      out << io::report_table(report);
    } else {
      emit(out, io::to_json(report));
    }
    if (!r.dot_path.empty()) {
      std::ofstream dot(r.dot_path);
      if (!dot) fail(Errc::malformed_input, "cannot write " + r.dot_path);
      dot << io::graph_dot(SeparationAnalysis(report.stable_model ? report.stable_model->graph : g));
    }
    return 0;
  }

  if (r.command == "analyze") {
    require_connected(g);
    const CurveGraph target = oracle_curve(g);
    const SeparationAnalysis a(target);
    json j = io::analysis_manifest(a, oracle, middle);
    j["manifest"]["stable_model_of_input"] = target.vertex_count() != g.vertex_count();
    if (r.format == "table") {
      std::vector<std::vector<std::string>> rows;
      for (const auto& y : a.two_components()) {
        std::string marks;
        for (const auto& u : y.unimarks) marks += (marks.empty() ? "" : " ") + u.point;
        for (const auto& b : y.bimarks) marks += (marks.empty() ? "" : " ") + b.key();
        rows.push_back({y.id, std::to_string(arithmetic_genus(y.subgraph)), marks});
      }
      out << io::table({"component", "g", "marks"}, rows);
    } else {
      emit(out, j);
    }
    return 0;
  }

  const SeparationAnalysis a(g);
  if (r.command == "seps" || r.command == "biseps") {
    const auto& list = r.command == "seps" ? a.seps() : a.biseps();
    if (r.format == "table") {
      out << io::table({"id", "left", "right"}, star_sep_rows(g, list));
    } else {
      json arr = json::array();
      for (const auto& s : list) arr.push_back(io::to_json(s, g));
      emit(out, {{r.command, arr}});
    }
  } else if (r.command == "polyseps") {
    if (r.format == "table") {
      std::vector<std::vector<std::string>> rows;
      for (const auto& p : a.polyseparators()) {
        rows.push_back({p.id(), std::to_string(p.degree()), p.is_proper() ? "proper" : "bisep",
                        ::sepcanon::detail::join(p.edges, " ")});
      }
      out << io::table({"id", "degree", "kind", "cyclic order"}, rows);
    } else {
      json arr = json::array();
      for (const auto& p : a.polyseparators()) arr.push_back(io::to_json(p));
      emit(out, {{"polyseparators", arr}, {"semicompact", a.semicompact()}});
    }
  } else if (r.command == "components") {
    if (r.format == "table") {
      std::vector<std::vector<std::string>> rows;
      for (const auto& y : a.two_components()) {
        rows.push_back({y.id, std::to_string(arithmetic_genus(y.subgraph)), std::to_string(y.unimarks.size()),
                        std::to_string(y.bimarks.size())});
      }
      out << io::table({"component", "g", "unimarks", "bimarks"}, rows);
    } else {
      json arr = json::array();
      for (const auto& y : a.two_components()) arr.push_back(io::to_json(y));
      emit(out, {{"two_components", arr}});
    }
  } else if (r.command == "tree") {
    if (r.format == "dot") {
      out << io::tree_dot(a.tree());
    } else if (r.format == "table") {
      std::vector<std::vector<std::string>> rows;
      for (const auto& e : a.tree().edges) rows.push_back({e.id, to_string(e.kind), e.ends[0], e.ends[1]});
      out << io::table({"edge", "kind", "left", "right"}, rows);
    } else {
      emit(out, io::to_json(a.tree()));
    }
  } else if (r.command == "dot") {
    out << io::graph_dot(a);
  } else {
    fail(Errc::malformed_input, "unknown command " + r.command);
  }
  return 0;
}

}  // namespace detail

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Separation calculus and sepcanonical systems of nodal curves"};
  app.require_subcommand(1);
  Request req;
  const std::vector<std::string> formats{"json", "table", "dot"};

  auto add_curve_command = [&](const std::string& name, const std::string& help) {
    auto* sub = app.add_subcommand(name, help);
    sub->add_option("curve", req.curve_path, "curve JSON file")->required();
    sub->add_option("--oracle", req.oracle_path, "moduli oracle JSON file");
    sub->add_option("--azimuths", req.azimuth_path, "middle azimuths JSON file");
    sub->add_option("--format", req.format, "output format")->check(CLI::IsMember(formats));
    return sub;
  };
  add_curve_command("analyze", "id manifest for oracle authoring");
  add_curve_command("seps", "separating nodes");
  add_curve_command("biseps", "separating binodes");
  add_curve_command("polyseps", "maximal polyseparators in cyclic order");
  add_curve_command("components", "2-components with their marks");
  add_curve_command("tree", "2-separation tree");
  add_curve_command("classify", "hyperelliptic or essentially very ample");
  add_curve_command("dot", "annotated dual graph in DOT");
  auto* sc = add_curve_command("sepcanon", "sepcanonical system report");
  sc->add_option("--theta", req.theta, "*-sep ids to use instead of all seps and maximal biseps");
  sc->add_option("--dot", req.dot_path, "also write the annotated graph as DOT to this file");
  auto* bridge = app.add_subcommand("bridge", "monomial system on a bridge component");
  bridge->add_option("--left", req.left, "left side hyperelliptic")->required();
  bridge->add_option("--right", req.right, "right side hyperelliptic")->required();
  bridge->add_option("--format", req.format, "output format")->check(CLI::IsMember(formats));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return 2;
  }
  req.command = app.get_subcommands().front()->get_name();
  if (req.format == "dot" && req.command != "tree" && req.command != "dot") {
    err << "--format dot is available for tree and dot\n";
    return 2;
  }

  try {
    return detail::run_request(req, out);
  } catch (const IncompleteOracle& e) {
    detail::emit(err, {{"error", to_string(e.code())}, {"message", e.what()}, {"missing", e.missing()}});
    return 3;
  } catch (const Error& e) {
    detail::emit(err, {{"error", to_string(e.code())}, {"message", e.what()}});
    return exit_code(e.code());
  } catch (const nlohmann::json::exception& e) {
    detail::emit(err, {{"error", "MalformedInput"}, {"message", e.what()}});
    return 2;
  }
}

}  // namespace sepcanon::cli
