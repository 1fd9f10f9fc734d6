#include <catch_amalgamated.hpp>

#include <random>

#include "sepcanon/sepcanonical.hpp"
#include "support/graphs.hpp"

using namespace sepcanon;
using testing_support::graph;

namespace {

Errc code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return Errc::invariant_violation;
}

CurveGraph triangle() {
  return graph({{"A", 1}, {"B", 1}, {"C", 1}}, {{"ab", "A", "B"}, {"bc", "B", "C"}, {"ca", "C", "A"}});
}

CurveGraph interlace(int r) {
  std::vector<std::array<std::string, 3>> es;
  for (int i = 0; i < r; ++i) es.push_back({"e" + std::to_string(i), "P", "Q"});
  return graph({{"P", 0}, {"Q", 0}}, es);
}

}  // namespace

TEST_CASE("twist divisor") {
  const SeparationAnalysis d(graph({{"A", 2}, {"B", 2}}, {{"s", "A", "B"}}));
  const auto& a = d.component("A");
  const auto one = twist_divisor(a, {{{"s.0", true, 2, "s", {}}}, {}});
  CHECK(one.coefficients.at("s.0") == 2);
  CHECK(one.degree() == 2);
  CHECK(twist_divisor(a, {}).degree() == 0);
  CHECK(code_of([&] { twist_divisor(a, {{{"s.1", true, 2, "s", {}}}, {}}); }) == Errc::mark_off_component);

  // C -s- A =e1,e2= B: A carries a unimark and a bimark
  const SeparationAnalysis m(graph({{"A", 2}, {"B", 2}, {"C", 2}}, {{"s", "C", "A"}, {"e1", "A", "B"}, {"e2", "A", "B"}}));
  const auto& am = m.component("A");
  AzimuthalMarking xi{{{"s.1", false, 3, "s", {}}}, {{{"e1.0", "e2.0"}, false, std::nullopt, "e1|e2", {}}}};
  const auto t = twist_divisor(am, xi);
  CHECK(t.degree() == 7);
  CHECK(t.coefficients.at("e1.0") == 2);
  CHECK(t.coefficients.at("e2.0") == 2);
}

TEST_CASE("system dimension") {
  const SeparationAnalysis single(graph({{"A", 3}}, {}));
  const auto e0 = system_dimension(single.component("A"), {});
  CHECK(e0.system_dim == 3);
  CHECK(e0.h0_ambient == 3);

  const SeparationAnalysis b(graph({{"A", 2}, {"B", 2}}, {{"e1", "A", "B"}, {"e2", "A", "B"}}));
  AzimuthalMarking xi{{}, {{{"e1.0", "e2.0"}, true, Azimuth(2, 3), "e1|e2", {}}}};
  const auto e1 = system_dimension(b.component("A"), xi);
  CHECK(e1.h0_ambient == 5);
  CHECK(e1.residue_conditions == 0);
  CHECK(e1.azimuthal_conditions == 1);
  CHECK(e1.system_dim == 4);
  CHECK(e1.bundle_degree == 6);
  CHECK(e1.bundle_degree == 2 * (e1.system_dim - 1));

  const SeparationAnalysis c(graph({{"A", 2}, {"B", 1}, {"C", 2}}, {{"s", "A", "B"}, {"t", "B", "C"}}));
  AzimuthalMarking two{{{"s.1", false, 3, "s", {}}, {"t.0", false, 3, "t", {}}}, {}};
  const auto e2 = system_dimension(c.component("B"), two);
  CHECK(e2.h0_ambient == 6);
  CHECK(e2.residue_conditions == 1);
  CHECK(e2.azimuthal_conditions == 0);
  CHECK(e2.system_dim == 5);
}

TEST_CASE("degree-0 vanishing certificate") {
  const auto t = triangle();
  const auto biseps = find_biseps(t);
  const auto ok = deg0_vanishing_certificate(t, {{{"A", 1}, {"B", -1}, {"C", -1}}}, biseps);
  CHECK(ok.certified);

  const auto big = deg0_vanishing_certificate(t, {{{"A", 3}, {"B", -2}, {"C", -2}}}, biseps);
  CHECK_FALSE(big.certified);
  CHECK(big.failure == "subcurve");
  CHECK(big.witness == VertexSet{"A"});
  CHECK(big.degree == 3);

  const auto side = deg0_vanishing_certificate(t, {{{"A", 2}, {"B", -1}, {"C", -2}}}, biseps);
  CHECK_FALSE(side.certified);
  CHECK(side.failure == "bisep_side");
  CHECK(side.witness == VertexSet{"A"});
  CHECK(side.bisep == "ab|ca");

  const auto total = deg0_vanishing_certificate(t, {{{"A", 1}, {"B", 0}, {"C", 0}}}, biseps);
  CHECK(total.failure == "total");

  const auto dumbbell = graph({{"A", 1}, {"B", 1}}, {{"s", "A", "B"}});
  CHECK(code_of([&] { deg0_vanishing_certificate(dumbbell, {{{"A", 0}, {"B", 0}}}, {}); }) == Errc::separable);
}

TEST_CASE("degree-0 certificate agrees with subset enumeration") {
  std::mt19937 rng(11);
  std::uniform_int_distribution<int> deg(-3, 3);
  int checked = 0;
  while (checked < 200) {
    const auto g = testing_support::build(testing_support::random_multigraph(rng, 5, 5, 1));
    if (!testing_support::brute_seps(g).empty()) continue;
    Multidegree l;
    for (const auto& v : g.vertices()) l.degrees[v.id] = deg(rng);
    // independent oracle: every subset, then every bisep side
    bool expect = l.total() <= 0;
    const auto n = g.vertex_count();
    for (std::size_t mask = 1; expect && mask < (std::size_t{1} << n); ++mask) {
      int d = 0;
      for (std::size_t i = 0; i < n; ++i) {
        if (mask >> i & 1) d += l.degrees.at(g.vertices()[i].id);
      }
      expect = d <= 2;
    }
    for (const auto& b : testing_support::brute_biseps(g)) {
      int left = 0, total = l.total();
      for (const auto& v : b.left) left += l.degrees.at(v);
      expect = expect && left <= 1 && total - left <= 1;
    }
    CHECK(deg0_vanishing_certificate(g, l, find_biseps(g)).certified == expect);
    ++checked;
  }
}

TEST_CASE("very ampleness dispatch") {
  const auto i3 = interlace(3);
  const auto v = very_ampleness_dispatch(i3, {{"p1", "P", 1}, {"p2", "P", 1}, {"p3", "P", 1}}, {});
  CHECK(v.verdict == Ampleness::very_ample);
  CHECK(v.lemma == AmplenessLemma::higher_twist_two_inseparable);

  const auto g2 = graph({{"A", 2}}, {});
  DispatchOracle hyp{true, Azimuth(1, 1), std::nullopt};
  const auto h = very_ampleness_dispatch(g2, {{"p", "A", 1}, {"q", "A", 1}}, hyp);
  CHECK(h.verdict == Ampleness::hyperelliptic_exception);
  CHECK(h.lemma == AmplenessLemma::degree_two_two_inseparable);

  DispatchOracle constrained{true, Azimuth(1, 1), Azimuth(2, 1)};
  const auto c = very_ampleness_dispatch(g2, {{"p", "A", 1}, {"q", "A", 1}}, constrained);
  CHECK(c.verdict == Ampleness::very_ample_off_a);
  CHECK(c.lemma == AmplenessLemma::azimuth_constrained);
  constrained.constraint = Azimuth(3, 3);
  CHECK(very_ampleness_dispatch(g2, {{"p", "A", 1}, {"q", "A", 1}}, constrained).verdict ==
        Ampleness::hyperelliptic_exception);
  CHECK(very_ampleness_dispatch(g2, {{"p", "A", 2}}, constrained).verdict == Ampleness::not_applicable);

  // inseparable but 2-separable, support on both sides of the bisep
  const auto b = graph({{"A", 2}, {"B", 2}}, {{"e1", "A", "B"}, {"e2", "A", "B"}});
  const auto r = very_ampleness_dispatch(b, {{"p", "A", 1}, {"q", "B", 1}}, hyp);
  CHECK(r.verdict == Ampleness::very_ample_off_a);
  CHECK(r.lemma == AmplenessLemma::degree_two_relative);
  CHECK(very_ampleness_dispatch(b, {{"p", "A", 1}, {"q", "A", 1}}, {}).verdict == Ampleness::not_applicable);
  CHECK(very_ampleness_dispatch(b, {{"p", "A", 2}, {"q", "B", 1}}, {}).lemma == AmplenessLemma::higher_twist_relative);

  const auto dumbbell = graph({{"A", 2}, {"B", 2}}, {{"s", "A", "B"}});
  CHECK(very_ampleness_dispatch(dumbbell, {{"p", "A", 1}, {"q", "B", 2}}, {}).verdict == Ampleness::not_applicable);
  CHECK(very_ampleness_dispatch(g2, {{"p", "A", 1}}, {}).verdict == Ampleness::not_applicable);
}

TEST_CASE("very ampleness dispatch is monotone in degree") {
  std::mt19937 rng(5);
  auto rank = [](Ampleness a) {
    switch (a) {
      case Ampleness::very_ample: return 3;
      case Ampleness::very_ample_off_a: return 2;
      case Ampleness::hyperelliptic_exception: return 1;
      case Ampleness::not_applicable: return 0;
    }
    return 0;
  };
  for (int i = 0; i < 200; ++i) {
    const auto g = testing_support::build(testing_support::random_multigraph(rng, 4, 4, 2));
    std::uniform_int_distribution<std::size_t> pick(0, g.vertex_count() - 1);
    const auto u = g.vertices()[pick(rng)].id, w = g.vertices()[pick(rng)].id;
    const DispatchOracle o{static_cast<bool>(rng() & 1), std::nullopt, std::nullopt};
    const auto two = very_ampleness_dispatch(g, {{"p", u, 1}, {"q", w, 1}}, o);
    const auto three = very_ampleness_dispatch(g, {{"p", u, 2}, {"q", w, 1}}, o);
    if (three.verdict != Ampleness::not_applicable) CHECK(rank(three.verdict) >= rank(two.verdict));
  }
}

TEST_CASE("bridge systems") {
  CHECK(bridge_system(true, true) == std::vector<Monomial>{{2, 0}, {0, 2}});
  CHECK(bridge_system(true, false) == std::vector<Monomial>{{3, 0}, {2, 1}, {0, 3}});
  CHECK(bridge_system(false, true) == std::vector<Monomial>{{3, 0}, {1, 2}, {0, 3}});
  CHECK(bridge_system(false, false) == std::vector<Monomial>{{4, 0}, {3, 1}, {1, 3}, {0, 4}});
  for (bool l : {false, true}) {
    for (bool r : {false, true}) {
      const auto s = bridge_system(l, r);
      const int d = s.front().first;
      CHECK(std::count(s.begin(), s.end(), Monomial{d, 0}) == 1);
      CHECK(std::count(s.begin(), s.end(), Monomial{0, d}) == 1);
      for (const auto& [a, b] : s) CHECK(a + b == d);
      CHECK(static_cast<int>(s.size()) == 4 - l - r);
    }
  }
}

TEST_CASE("full report") {
  ModuliOracle o;
  o.components["A"].hyperelliptic = false;
  const auto single = full_report(graph({{"A", 4}}, {}), o, {});
  REQUIRE(single.components.size() == 1);
  CHECK(single.components.at("A").system.system_dim == 4);
  CHECK(single.components.at("A").verdict == ComponentVerdict::essentially_very_ample);

  ModuliOracle w;
  w.unimarks["s.0"].weierstrass = true;
  w.unimarks["s.1"].weierstrass = true;
  const auto chain = full_report(graph({{"A", 2}, {"B", 2}}, {{"s", "A", "B"}}), w, {});
  for (const auto& [id, c] : chain.components) {
    CHECK(c.system.twist.degree() == 2);
    CHECK(c.system.system_dim == 3);
    CHECK(c.verdict == ComponentVerdict::two_to_one);
  }
  CHECK(chain.genus.holds());

  const auto t = full_report(triangle(), {}, {});
  REQUIRE(t.components.size() == 3);
  for (const auto& [id, c] : t.components) {
    CHECK(c.system.twist.degree() == 4);
    CHECK(c.system.system_dim == 4);
    CHECK(c.system.residue_conditions == 0);
    CHECK(c.system.azimuthal_conditions == 0);
    CHECK(c.verdict == ComponentVerdict::essentially_very_ample);
  }
  CHECK(t.genus.component_genus_sum == 3);
  CHECK(t.genus.expected() == 3);

  // an explicit empty theta makes every mark non-co-hyperelliptic
  const auto bare = full_report(graph({{"A", 2}, {"B", 2}}, {{"s", "A", "B"}}), w, {}, std::vector<std::string>{});
  CHECK_FALSE(bare.default_theta);
  CHECK(bare.components.at("A").system.system_dim == 4);
  CHECK(code_of([&] { full_report(triangle(), {}, {}, std::vector<std::string>{"ab|bc"}); }) == Errc::invalid_theta);
}

TEST_CASE("full report of a semistable curve places a system on the bridge") {
  const auto g = graph({{"A", 2}, {"N", 0}, {"B", 2}}, {{"x", "A", "N"}, {"y", "N", "B"}});
  ModuliOracle o;
  o.unimarks["x.0"].weierstrass = true;
  o.unimarks["y.1"].weierstrass = false;
  const auto r = full_report(g, o, {});
  REQUIRE(r.stable_model.has_value());
  REQUIRE(r.bridges.size() == 1);
  CHECK(r.bridges[0].separating);
  CHECK(r.bridges[0].left_hyperelliptic);
  CHECK_FALSE(r.bridges[0].right_hyperelliptic);
  CHECK(r.bridges[0].monomials == bridge_system(true, false));

  const auto cyc = graph({{"A", 1}, {"N", 0}}, {{"x", "A", "N"}, {"y", "N", "A"}});
  CHECK(code_of([&] { full_report(cyc, {}, {}); }) == Errc::incomplete_oracle);
  ModuliOracle nb;
  nb.nonseparating_bridges["x~y"].hyperelliptic_divisor = true;
  const auto rc = full_report(cyc, nb, {});
  REQUIRE(rc.bridges.size() == 1);
  CHECK_FALSE(rc.bridges[0].separating);
  CHECK(rc.bridges[0].monomials == bridge_system(true, true));
}

TEST_CASE("a nonzero twist keeps residue conditions only") {
  const SeparationAnalysis a(graph({{"A", 2}, {"B", 2}}, {{"e1", "A", "B"}, {"e2", "A", "B"}}));
  const auto& y = a.component("A");
  AzimuthalMarking xi;
  xi.bimarks.push_back({{"e1.0", "e2.0"}, true, Azimuth(2, 3), "e1|e2", {"", ""}});
  const auto plain = all_non_hyperelliptic(xi);
  CHECK_FALSE(plain.bimarks[0].co_hyperelliptic);
  const auto e = system_dimension(y, plain);
  CHECK(e.azimuthal_conditions == 0);
  CHECK(e.system_dim == system_dimension(y, xi).system_dim + 1);
}
