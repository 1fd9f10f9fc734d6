// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fail.
// Every check compares library output with an independent computation from
// tests/support (edge deletion plus union-find) or with hand-derived numbers.

#include <chrono>
#include <filesystem>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include "sepcanon/io.hpp"
#include "sepcanon/sepcanonical.hpp"
#include "support/graphs.hpp"

using namespace sepcanon;
namespace ts = testing_support;

namespace {

// Tolerances and corpus sizes are fixed here.
constexpr int kMaxVertices = 5;
constexpr int kMaxEdges = 6;
constexpr int kRandomGraphs = 500;
constexpr double kCutRuntimeLimitSeconds = 60.0;
constexpr int kAzimuthTriples = 1000;
constexpr std::size_t kMinCorpus = 20;

struct Outcome {
  bool pass = true;
  std::ostringstream detail;
  long checks = 0;
  long failed = 0;
  std::map<std::string, long> failed_by_kind;

  void expect(bool ok, const std::string& what, const std::string& kind = {}) {
    ++checks;
    if (!ok && pass) detail << what;
    if (!ok && !kind.empty()) ++failed_by_kind[kind];
    failed += !ok;
    pass = pass && ok;
  }
};

std::vector<CurveGraph> cut_corpus() {
  std::vector<CurveGraph> out;
  for (const auto& s : ts::enumerate_multigraphs(kMaxVertices, kMaxEdges)) out.push_back(ts::build(s));
  std::mt19937 rng(20240601);
  for (int i = 0; i < kRandomGraphs; ++i) out.push_back(ts::build(ts::random_multigraph(rng, 8, 8, 3)));
  return out;
}

/// Same multigraph with genus i % 3 on vertex i, so genus sums are nontrivial.
CurveGraph with_genera(const CurveGraph& g) {
  auto vs = g.vertices();
  for (std::size_t i = 0; i < vs.size(); ++i) vs[i].genus = static_cast<int>(i % 3);
  return CurveGraph(vs, g.edges());
}

std::string describe(const CurveGraph& g) { return io::to_json(g).dump(); }

// ---- 1 ----

Outcome cut_equivalence(const std::vector<CurveGraph>& corpus, double& seconds) {
  Outcome r;
  const auto start = std::chrono::steady_clock::now();
  for (const auto& g : corpus) {
    auto compare = [&](const std::vector<StarSep>& lib, const std::vector<ts::BruteCut>& brute, const char* what) {
      bool same = lib.size() == brute.size();
      for (std::size_t i = 0; same && i < lib.size(); ++i) {
        same = lib[i].edges == brute[i].edges && lib[i].left == brute[i].left;
      }
      r.expect(same, std::string(what) + " differ on " + describe(g));
    };
    compare(find_seps(g), ts::brute_seps(g), "seps");
    compare(find_biseps(g), ts::brute_biseps(g), "biseps");
  }
  seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  r.expect(seconds < kCutRuntimeLimitSeconds, "runtime over limit");
  return r;
}

// ---- 2 ----

/// Parts of G after deleting the class edges; each must touch exactly two of them.
bool simple_ngon(const CurveGraph& g, const Polyseparator& p) {
  const std::set<std::string> cut(p.edges.begin(), p.edges.end());
  const auto labels = ts::labels_without(g, cut);
  std::map<std::size_t, std::set<std::string>> touching;
  for (const auto& e : p.edges) {
    for (const auto& end : g.edge(e).ends) touching[labels[g.vertex_index(end)]].insert(e);
  }
  const std::set<std::size_t> parts(labels.begin(), labels.end());
  if (parts.size() != p.edges.size() || touching.size() != parts.size()) return false;
  for (const auto& [part, edges] : touching) {
    if (edges.size() != 2) return false;
  }
  return true;
}

bool tree_is_tree(const SeparationTree& t) {
  std::map<std::string, std::size_t> index;
  for (const auto& v : t.vertices) index.emplace(v.id, index.size());
  if (index.size() != t.vertices.size() || t.edges.size() + 1 != t.vertices.size()) return false;
  ts::Components uf(index.size());
  for (const auto& e : t.edges) {
    if (!index.count(e.ends[0]) || !index.count(e.ends[1])) return false;
    const auto a = uf.find(index[e.ends[0]]), b = uf.find(index[e.ends[1]]);
    if (a == b) return false;  // cycle
    uf.unite(a, b);
  }
  return true;
}

/// A 2-component may contain a sep or bisep of its own subgraph only if the
/// cut separates its marks; an unmarked side would make the cut global.
bool component_inseparable(const TwoComponent& y) {
  const auto& h = y.subgraph;
  if (!ts::brute_seps(h).empty()) return false;
  std::set<std::string> marked;
  for (const auto& u : y.unimarks) marked.insert(h.vertices()[*h.point_vertex(u.point)].id);
  for (const auto& b : y.bimarks) {
    for (const auto& p : b.points) marked.insert(h.vertices()[*h.point_vertex(p)].id);
  }
  for (const auto& b : ts::brute_biseps(h)) {
    bool left = false, right = false;
    for (const auto& v : marked) (b.left.count(v) ? left : right) = true;
    if (!left || !right) return false;
  }
  return true;
}

Outcome structure_lemmas(const std::vector<CurveGraph>& corpus) {
  Outcome r;
  for (const auto& g : corpus) {
    try {
      const SeparationAnalysis a(g);
      const auto& classes = a.polyseparators();
      std::map<std::string, int> owner;
      for (const auto& p : classes) {
        for (const auto& e : p.edges) ++owner[e];
      }
      bool disjoint = true;
      for (const auto& [e, n] : owner) disjoint = disjoint && n == 1;
      r.expect(disjoint, "classes overlap on " + describe(g), "disjoint classes");

      std::vector<std::set<std::string>> lib;
      for (const auto& p : classes) lib.emplace_back(p.edges.begin(), p.edges.end());
      std::sort(lib.begin(), lib.end());
      r.expect(lib == ts::brute_bisep_classes(g), "classes differ from brute force on " + describe(g), "classes");

      for (const auto& b : ts::brute_biseps(g)) {
        int holders = 0;
        for (const auto& p : classes) holders += p.contains(b.edges[0]) && p.contains(b.edges[1]);
        r.expect(holders == 1, "bisep " + ts::cut_id(b) + " not in exactly one class on " + describe(g), "one class per bisep");
      }
      for (const auto& p : classes) r.expect(simple_ngon(g, p), "class " + p.id() + " is not an n-gon on " + describe(g), "n-gon");
      r.expect(tree_is_tree(a.tree()), "separation tree is not a tree on " + describe(g), "tree");

      const auto blown = a.blown_edges();
      bool any_separable = false;
      for (const auto& y : a.two_components()) {
        const bool inseparable = component_inseparable(y);
        any_separable = any_separable || !inseparable;
        r.expect(inseparable, "component " + y.id + " separable on " + describe(g), "inseparable components");
        bool clean = true;
        for (const auto& e : y.subgraph.edges()) clean = clean && !blown.count(e.id);
        r.expect(clean, "component " + y.id + " keeps a blown edge on " + describe(g), "blown edges");
      }
      const auto& recorded = a.structure_violations();
      const bool library_separable = std::any_of(recorded.begin(), recorded.end(), [](const std::string& v) {
        return v.find("internal sep") != std::string::npos || v.find("relative to its marks") != std::string::npos;
      });
      r.expect(any_separable == library_separable,
               "library and brute force disagree on separable components of " + describe(g), "violation record");
    } catch (const Error& e) {
      r.expect(false, std::string("error ") + e.what() + " on " + describe(g), "thrown");
    }
  }
  return r;
}

// ---- 3 ----

Outcome genus_accounting(const std::vector<CurveGraph>& corpus) {
  Outcome r;
  for (const auto& base : corpus) {
    for (const auto& g : {base, with_genera(base)}) {
      const SeparationAnalysis a(g);
      long sum = 0;
      for (const auto& y : a.two_components()) sum += arithmetic_genus(y.subgraph);
      // Independent pa: sum of genera + E - V + 1 on a connected graph.
      long pa = static_cast<long>(g.edge_count()) - static_cast<long>(g.vertex_count()) + 1;
      for (const auto& v : g.vertices()) pa += v.genus;
      const long blown = static_cast<long>(a.blown_edges().size());
      const long c = static_cast<long>(a.two_components().size());
      r.expect(sum == pa - blown + (c - 1), "genus accounting fails on " + describe(g));
    }
  }
  return r;
}

// ---- 4 ----

Outcome interlace_arithmetic() {
  Outcome r;
  for (int n = 3; n <= 6; ++n) {
    std::vector<std::array<std::string, 3>> edges;
    for (int i = 0; i < n; ++i) edges.push_back({"e" + std::to_string(i), "P", "Q"});
    const auto g = ts::graph({{"P", 0}, {"Q", 0}}, edges);
    r.expect(arithmetic_genus(g) == n - 1, "pa of r=" + std::to_string(n));
    ModuliOracle o;
    o.components["P+Q"].interlace = true;
    r.expect(classify_2inseparable(g, o) == InseparableClass::interlace, "flagged r=" + std::to_string(n));
    if (n >= 4) {
      o.components["P+Q"].interlace = false;
      r.expect(classify_2inseparable(g, o) == InseparableClass::very_ample, "unflagged r=" + std::to_string(n));
    }
  }
  return r;
}

// ---- 5 ----

Errc error_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return Errc::invariant_violation;  // stands for "no error"
}

Outcome azimuth_algebra() {
  Outcome r;
  std::mt19937 rng(99);
  std::uniform_int_distribution<long> num(-40, 40), den(1, 40), zero(0, 9);
  auto coord = [&]() -> Rational {
    if (zero(rng) == 0) return 0;
    Rational x(num(rng), den(rng));
    return x == 0 ? Rational(1) : x;
  };
  auto random_azimuth = [&]() {
    for (;;) {
      const Rational a = coord(), b = coord();
      if (a != 0 || b != 0) return Azimuth(a, b);
    }
  };
  int tried = 0;
  while (tried < kAzimuthTriples) {
    const Azimuth left = random_azimuth(), right = random_azimuth();
    const Rational ma = left.first() * right.first(), mb = left.second() * right.second();
    if (ma == 0 && mb == 0) continue;  // opposite singular points have no middle
    ++tried;
    const Azimuth middle(ma, mb);  // computed here, not with compose
    r.expect(compose(left, right) == middle, "compose " + left.to_string() + right.to_string());
    r.expect(complete_triple({left, middle, right, ""}).middle == middle, "full triple rejected");

    if (left.is_singular() && right.is_singular()) {
      r.expect(error_of([&] { complete_triple({left, std::nullopt, right, ""}); }) == Errc::both_singular,
               "both-singular sides accepted");
    } else {
      r.expect(*complete_triple({left, std::nullopt, right, ""}).middle == middle, "middle round trip");
    }
    auto side_round_trip = [&](const Azimuth& known, const Azimuth& missing, bool known_is_left) {
      const AzimuthTriple t = known_is_left ? AzimuthTriple{known, middle, std::nullopt, ""}
                                            : AzimuthTriple{std::nullopt, middle, known, ""};
      if (known.is_regular()) {
        const auto done = complete_triple(t);
        r.expect(*(known_is_left ? done.right : done.left) == missing, "side round trip " + missing.to_string());
      } else {
        r.expect(error_of([&] { complete_triple(t); }) == Errc::both_singular,
                 "singular side with singular middle accepted");
      }
    };
    side_round_trip(left, right, true);
    side_round_trip(right, left, false);
  }
  const Azimuth zero_pt(0, 1), inf(1, 0), reg(2, 3);
  r.expect(error_of([&] { complete_triple({inf, std::nullopt, zero_pt, ""}); }) == Errc::inconsistent_singular,
           "opposite singular sides");
  r.expect(error_of([&] { complete_triple({inf, std::nullopt, inf, ""}); }) == Errc::both_singular,
           "equal singular sides");
  r.expect(error_of([&] { complete_triple({inf, inf, std::nullopt, ""}); }) == Errc::both_singular,
           "singular side and middle");
  r.expect(error_of([&] { complete_triple({inf, zero_pt, std::nullopt, ""}); }) == Errc::inconsistent_singular,
           "singular side opposite middle");
  r.expect(error_of([&] { complete_triple({inf, reg, std::nullopt, ""}); }) == Errc::inconsistent_singular,
           "singular side with regular middle");
  r.expect(error_of([&] { complete_triple({reg, std::nullopt, std::nullopt, ""}); }) == Errc::under_determined,
           "one entry");
  r.expect(error_of([&] { compose(inf, zero_pt); }) == Errc::incompatible_singular, "compose of opposite points");
  r.expect(error_of([&] { complete_triple({reg, reg, reg, ""}); }) == Errc::incompatible_triple, "bad full triple");
  return r;
}

// ---- 6 ----

struct CorpusCase {
  std::string name;
  CurveGraph curve;
  ModuliOracle oracle;
  MiddleAzimuthData azimuths;
  Overall expected;
};

std::vector<CorpusCase> load_corpus() {
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(SEPCANON_CORPUS_DIR)) {
    if (entry.path().extension() == ".json") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  std::vector<CorpusCase> out;
  for (const auto& f : files) {
    const auto j = io::load_file(f.string());
    const auto label = j.at("expected").get<std::string>();
    out.push_back({f.stem().string(), io::curve_from_json(j.at("curve")), io::oracle_from_json(j.at("oracle")),
                   io::azimuths_from_json(j.at("azimuths")),
                   label == "Hyperelliptic" ? Overall::hyperelliptic : Overall::not_hyperelliptic});
  }
  return out;
}

Outcome hyperelliptic_dichotomy() {
  Outcome r;
  const auto corpus = load_corpus();
  r.expect(corpus.size() >= kMinCorpus, "corpus has only " + std::to_string(corpus.size()) + " curves");
  for (const auto& c : corpus) {
    try {
      const auto verdict = classify_curve(c.curve, c.oracle, c.azimuths);
      r.expect(verdict.overall == c.expected, c.name + " classified " + to_string(verdict.overall));
      const auto& stable = verdict.stable_model ? verdict.stable_model->graph : c.curve;
      if (verdict.overall == Overall::hyperelliptic) {
        const auto classes = ts::brute_bisep_classes(stable);
        r.expect(std::none_of(classes.begin(), classes.end(), [](const auto& cls) { return cls.size() >= 3; }),
                 c.name + " is hyperelliptic but not of semicompact type");
      }
      const auto report = full_report(c.curve, c.oracle, c.azimuths);
      for (const auto& [id, entry] : report.components) {
        if (entry.verdict != ComponentVerdict::two_to_one) continue;
        r.expect(entry.system.bundle_degree == 2 * (entry.system.system_dim - 1),
                 c.name + ": degree identity fails on " + id);
      }
    } catch (const Error& e) {
      r.expect(false, c.name + ": " + e.what());
    }
  }
  return r;
}

// ---- 7 ----

MarkedUnimark unimark(const std::string& p, bool co) { return {p, co, co ? 2 : 3, "", ""}; }

/// Every single-flag flip of `xi` moves the dimension by +1 (co to non) or -1.
void check_flips(Outcome& r, const TwoComponent& y, const AzimuthalMarking& xi, const std::string& where) {
  const long base = system_dimension(y, xi).system_dim;
  for (std::size_t i = 0; i < xi.unimarks.size(); ++i) {
    auto flipped_xi = xi;
    auto& u = flipped_xi.unimarks[i];
    u.co_hyperelliptic = !u.co_hyperelliptic;
    u.multiplicity = u.co_hyperelliptic ? 2 : 3;
    const long want = base + (u.co_hyperelliptic ? -1 : 1);
    r.expect(system_dimension(y, flipped_xi).system_dim == want, where + ": unimark flip " + u.point);
  }
  for (std::size_t i = 0; i < xi.bimarks.size(); ++i) {
    auto flipped_xi = xi;
    auto& b = flipped_xi.bimarks[i];
    b.co_hyperelliptic = !b.co_hyperelliptic;
    if (b.co_hyperelliptic) {
      b.azimuth = Azimuth(1, 1);
    } else {
      b.azimuth.reset();
    }
    const long want = base + (b.co_hyperelliptic ? -1 : 1);
    r.expect(system_dimension(y, flipped_xi).system_dim == want, where + ": bimark flip " + b.key());
  }
}

Outcome dimension_regression() {
  Outcome r;
  // 2-inseparable component without marks: dim = g.
  {
    const SeparationAnalysis a(ts::graph({{"A", 3}}, {}));
    const auto e = system_dimension(a.two_components()[0], {});
    r.expect(e.system_dim == 3 && e.h0_ambient == 3 && e.residue_conditions == 0, "unmarked genus 3");
  }
  // Genus 2 with one co-hyperelliptic bimark: h0 5, residue 0, azimuthal 1, dim 4, degree 6.
  {
    const SeparationAnalysis a(ts::graph({{"A", 2}, {"B", 2}}, {{"e1", "A", "B"}, {"e2", "A", "B"}}));
    const auto& y = a.component("A");
    AzimuthalMarking xi;
    xi.bimarks.push_back({{"e1.0", "e2.0"}, true, Azimuth(2, 3), "e1|e2", {"", ""}});
    const auto e = system_dimension(y, xi);
    r.expect(e.h0_ambient == 5 && e.residue_conditions == 0 && e.azimuthal_conditions == 1 && e.system_dim == 4 &&
                 e.bundle_degree == 6,
             "genus 2 with a co-hyperelliptic bimark");
    check_flips(r, y, xi, "genus 2 bimark");
  }
  // Genus 1 with two plain unimarks: h0 6, residue 1, dim 5.
  {
    const SeparationAnalysis a(ts::graph({{"A", 2}, {"B", 1}, {"C", 2}}, {{"s", "A", "B"}, {"t", "B", "C"}}));
    const auto& y = a.component("B");
    AzimuthalMarking xi;
    xi.unimarks = {unimark("s.1", false), unimark("t.0", false)};
    const auto e = system_dimension(y, xi);
    r.expect(e.h0_ambient == 6 && e.residue_conditions == 1 && e.azimuthal_conditions == 0 && e.system_dim == 5,
             "genus 1 with two unimarks");
    check_flips(r, y, xi, "genus 1 unimarks");
  }
  // Report on a 2-inseparable curve: one entry, dim = g.
  {
    ModuliOracle o;
    o.components["A"].hyperelliptic = false;
    const auto rep = full_report(ts::graph({{"A", 3}}, {}), o, {});
    r.expect(rep.components.size() == 1 && rep.components.at("A").system.system_dim == 3 &&
                 rep.components.at("A").verdict == ComponentVerdict::essentially_very_ample,
             "report on a smooth genus-3 curve");
  }
  // Hyperelliptic chain of two genus-2 components.
  {
    ModuliOracle o;
    o.unimarks["s.0"].weierstrass = o.unimarks["s.1"].weierstrass = true;
    const auto g = ts::graph({{"A", 2}, {"B", 2}}, {{"s", "A", "B"}});
    const auto rep = full_report(g, o, {});
    const SeparationAnalysis a(g);
    for (const auto* id : {"A", "B"}) {
      const auto& entry = rep.components.at(id);
      r.expect(entry.system.twist.degree() == 2 && entry.system.system_dim == 3 &&
                   entry.verdict == ComponentVerdict::two_to_one,
               std::string("chain entry ") + id);
      check_flips(r, a.component(id), entry.marking, std::string("chain ") + id);
    }
  }
  // Triangle of genus-1 components.
  {
    const auto g = ts::graph({{"A", 1}, {"B", 1}, {"C", 1}}, {{"ab", "A", "B"}, {"bc", "B", "C"}, {"ca", "C", "A"}});
    const auto rep = full_report(g, {}, {});
    const SeparationAnalysis a(g);
    bool ok = rep.components.size() == 3;
    for (const auto& [id, entry] : rep.components) {
      ok = ok && entry.system.twist.degree() == 4 && entry.system.system_dim == 4 &&
           entry.verdict == ComponentVerdict::essentially_very_ample;
      check_flips(r, a.component(id), entry.marking, "triangle " + id);
    }
    r.expect(ok, "triangle entries");
  }
  return r;
}

// ---- 8 ----

Outcome bridge_recipe() {
  Outcome r;
  using M = std::vector<Monomial>;
  r.expect(bridge_system(true, true) == M{{2, 0}, {0, 2}}, "(true,true)");
  r.expect(bridge_system(true, false) == M{{3, 0}, {2, 1}, {0, 3}}, "(true,false)");
  r.expect(bridge_system(false, true) == M{{3, 0}, {1, 2}, {0, 3}}, "(false,true)");
  r.expect(bridge_system(false, false) == M{{4, 0}, {3, 1}, {1, 3}, {0, 4}}, "(false,false)");
  return r;
}

}  // namespace

int main() {
  int failures = 0;
  auto report = [&](int n, const std::string& title, const Outcome& o, const std::string& extra = {}) {
    std::cout << "criterion " << n << ": " << (o.pass ? "PASS" : "FAIL") << "  " << title << " (" << o.checks
              << " checks, " << o.failed << " failed" << extra << ")";
    if (!o.pass) {
      for (const auto& [kind, n] : o.failed_by_kind) std::cout << "\n    failed " << kind << ": " << n;
      std::cout << "\n    first failure: " << o.detail.str();
    }
    std::cout << "\n" << std::flush;
    failures += !o.pass;
  };
  auto guarded = [](const std::function<Outcome()>& f) {
    try {
      return f();
    } catch (const std::exception& e) {
      Outcome o;
      o.expect(false, std::string("uncaught: ") + e.what());
      return o;
    }
  };

  const auto corpus = cut_corpus();
  double seconds = 0;
  std::ostringstream timing;
  const auto c1 = guarded([&] { return cut_equivalence(corpus, seconds); });
  timing << ", " << corpus.size() << " graphs, " << seconds << " s";
  report(1, "seps and biseps match brute-force removal", c1, timing.str());
  report(2, "structure lemmas on the cut corpus", guarded([&] { return structure_lemmas(corpus); }));
  report(3, "genus accounting for every blowup", guarded([&] { return genus_accounting(corpus); }));
  report(4, "interlace genus and classification", guarded(interlace_arithmetic));
  report(5, "azimuth algebra round trips and errors", guarded(azimuth_algebra));
  report(6, "hyperelliptic dichotomy on the curated corpus", guarded(hyperelliptic_dichotomy));
  report(7, "sepcanonical dimension regression", guarded(dimension_regression));
  report(8, "bridge recipe monomials", guarded(bridge_recipe));
  return failures == 0 ? 0 : 1;
}
