#include <cmath>
#include <random>

#include "doctest.h"
#include "dham/expander.hpp"
#include "dham/generators.hpp"
#include "oracles.hpp"

using namespace dham;

namespace {

SpecialFrame plain_frame(int a, int b) {
  SpecialFrame f;
  f.v1 = VertexSet::range(0, a);
  f.v2 = VertexSet::range(a, a + b);
  return f;
}

Graph random_graph(int n, double p, std::mt19937_64& rng) {
  std::bernoulli_distribution coin(p);
  std::vector<Edge> e;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (coin(rng)) e.emplace_back(u, v);
  return Graph(n, e);
}

// Neighborhood restricted to target, computed without the library.
int nbhd_in(const Graph& g, const VertexSet& x, const VertexSet& target) {
  std::uint32_t xm = 0, tm = 0;
  for (Vertex v : x) xm |= 1U << v;
  for (Vertex v : target) tm |= 1U << v;
  return test_oracles::brute_nbhd(g, xm, tm);
}

}  // namespace

TEST_CASE("params validation") {
  CHECK_THROWS_AS((ExpanderParams{0, 2, 0}).validate(), DomainError);
  CHECK_THROWS_AS((ExpanderParams{1.5, 2, 0}).validate(), DomainError);
  CHECK_THROWS_AS((ExpanderParams{0.1, 0.5, 0}).validate(), DomainError);
  CHECK_THROWS_AS((ExpanderParams{0.1, 2, -1}).validate(), DomainError);
  CHECK_NOTHROW((ExpanderParams{1, 1, 0}).validate());
}

TEST_CASE("half-expander reference instances") {
  const ExpanderParams p{0.25, 2, 0};

  auto e = check_half_expander(gen::empty(10), p, CheckMode::exact());
  REQUIRE(e.verdict == Verdict::fails);
  CHECK(e.counterexample->condition == "i");
  CHECK(e.counterexample->x.size() == 1);
  CHECK(recheck_counterexample(gen::empty(10), ExpanderKind::half, p, *e.counterexample));

  // eps^(1/5) > 1/2 here, so (iii) quantifies over empty sets and fails.
  auto k10 = check_half_expander(gen::complete(10), p, CheckMode::exact());
  REQUIRE(k10.verdict == Verdict::fails);
  CHECK(k10.counterexample->condition == "iii");
  CHECK(k10.counterexample->observed == 0);
  CHECK_FALSE(test_oracles::brute_half_expander(gen::complete(10), 0.25, 2).iii);

  // Tiny eps pushes the (iii) sizes to n/2, where e(X,Y) = 25 > 20.
  const ExpanderParams tiny{1e-7, 2, 0};
  CHECK(check_half_expander(gen::complete(10), tiny, CheckMode::exact()).verdict == Verdict::holds);
  CHECK(test_oracles::brute_half_expander(gen::complete(10), 1e-7, 2).all());

  const Graph bridge = gen::two_cliques_bridge(5);
  auto b = check_half_expander(bridge, {0.1, 2, 0}, CheckMode::exact());
  REQUIRE(b.verdict == Verdict::fails);
  CHECK(b.counterexample->condition == "iii");
  CHECK(recheck_counterexample(bridge, ExpanderKind::half, {0.1, 2, 0}, *b.counterexample));
  const auto brute = test_oracles::brute_half_expander(bridge, 0.1, 2);
  CHECK(brute.i);
  CHECK(brute.ii);
  CHECK_FALSE(brute.iii);

  // At the (iii) size 3 the two cliques give X, Y inside different halves.
  const ExpanderParams mid{0.0004, 1, 0};
  auto bm = check_half_expander(bridge, mid, CheckMode::exact());
  REQUIRE(bm.verdict == Verdict::fails);
  CHECK(bm.counterexample->condition == "iii");
  CHECK(bm.counterexample->x.size() == 3);
  CHECK(bm.counterexample->observed == 0);
}

TEST_CASE("half-expander hypothesis slack") {
  auto rep = check_half_expander(gen::complete(8), {0.5, 3, 0}, CheckMode::exact());
  REQUIRE(rep.hypothesis_slack.has_value());
  CHECK(*rep.hypothesis_slack == doctest::Approx(3 - 16 * 8 * std::log(8.0)));
  CHECK_FALSE(check_expander(gen::complete(8), {0.5, 3, 0}, CheckMode::exact()).hypothesis_slack.has_value());
}

TEST_CASE("expander reference instances") {
  const ExpanderParams p{0.25, 2, 0};
  CHECK(check_expander(gen::complete(10), p, CheckMode::exact()).verdict == Verdict::holds);
  CHECK(test_oracles::brute_expander(gen::complete(10), 0.25, 2).all());

  const Graph star = gen::star(9);
  auto s = check_expander(star, p, CheckMode::exact());
  REQUIRE(s.verdict == Verdict::fails);
  CHECK(s.counterexample->condition == "i");
  CHECK_FALSE(s.counterexample->x.contains(0));
  CHECK(nbhd_in(star, s.counterexample->x, VertexSet::all(10)) == 1);

  const Graph c10 = gen::cycle(10);
  auto c = check_expander(c10, {0.25, 3, 0}, CheckMode::exact());
  REQUIRE(c.verdict == Verdict::fails);
  CHECK(c.counterexample->condition == "i");
  CHECK(c.counterexample->observed <= 2.0 * static_cast<double>(c.counterexample->x.size()));
  CHECK_FALSE(test_oracles::brute_expander(c10, 0.25, 3).i);
}

TEST_CASE("bipartite expander reference instances") {
  const Graph k55 = gen::complete_bipartite(5, 5);
  const auto fr = plain_frame(5, 5);

  // n / r^(3/2) = 3.53, so sets of size 3 need 6 neighbors among 5.
  auto r2 = check_bipartite_expander(k55, fr, {0.25, 2, 0}, CheckMode::exact());
  REQUIRE(r2.verdict == Verdict::fails);
  CHECK(r2.counterexample->condition == "i");
  CHECK(r2.counterexample->x.size() == 3);
  CHECK(recheck_counterexample(k55, ExpanderKind::bipartite, {0.25, 2, 0}, *r2.counterexample, &fr));

  CHECK(check_bipartite_expander(k55, fr, {0.25, 3, 0}, CheckMode::exact()).verdict == Verdict::holds);

  // Y's neighbors all lie on the special edge {0,1}; V1'' = {2}.
  const Graph avoid(5, std::vector<Edge>{{0, 1}, {0, 2}, {0, 3}, {0, 4}, {1, 3}, {1, 4}});
  SpecialFrame sf;
  sf.v1 = {0, 1, 2};
  sf.v2 = {3, 4};
  sf.special_edges = {{0, 1}};
  sf.special_vertices = {0};
  auto av = check_bipartite_expander(avoid, sf, {0.25, 2, 1}, CheckMode::exact());
  REQUIRE(av.verdict == Verdict::fails);
  CHECK(recheck_counterexample(avoid, ExpanderKind::bipartite, {0.25, 2, 1}, *av.counterexample, &sf));
  const Counterexample y{"ii", {3}, {}, 0, 2};
  CHECK(recheck_counterexample(avoid, ExpanderKind::bipartite, {0.25, 2, 1}, y, &sf));
  CHECK(nbhd_in(avoid, {3}, sf.v1_double_prime()) == 0);

  const Graph c8 = gen::cycle(8);
  SpecialFrame cf;
  cf.v1 = {0, 2, 4, 6};
  cf.v2 = {1, 3, 5, 7};
  auto c = check_bipartite_expander(c8, cf, {0.25, 3, 0}, CheckMode::exact());
  REQUIRE(c.verdict == Verdict::fails);
  CHECK(nbhd_in(c8, c.counterexample->x, c.counterexample->condition == "i" ? cf.v2 : cf.v1) <
        3 * static_cast<int>(c.counterexample->x.size()));

  CHECK_THROWS_AS(check_bipartite_expander(k55, fr, {0.25, 2, 1}, CheckMode::exact()), PreconditionError);
}

TEST_CASE("exact mode agrees with literal enumeration") {
  std::mt19937_64 rng(5);
  const double eps_grid[] = {1e-6, 0.001, 0.05, 0.25, 0.8};
  const double r_grid[] = {1, 1.5, 2, 3};
  int fails = 0, holds = 0;
  for (int trial = 0; trial < 120; ++trial) {
    const int n = 4 + static_cast<int>(rng() % 5);
    const Graph g = random_graph(n, 0.3 + 0.1 * static_cast<double>(rng() % 7), rng);
    const ExpanderParams p{eps_grid[rng() % 5], r_grid[rng() % 4], 0};
    const auto hb = test_oracles::brute_half_expander(g, p.epsilon, p.r);
    const auto h = check_half_expander(g, p, CheckMode::exact());
    CHECK((h.verdict == Verdict::holds) == hb.all());
    if (h.counterexample) CHECK(recheck_counterexample(g, ExpanderKind::half, p, *h.counterexample));

    const auto pb = test_oracles::brute_expander(g, p.epsilon, p.r);
    const auto e = check_expander(g, p, CheckMode::exact());
    CHECK((e.verdict == Verdict::holds) == pb.all());
    if (e.counterexample) {
      CHECK(recheck_counterexample(g, ExpanderKind::plain, p, *e.counterexample));
      CHECK(nbhd_in(g, e.counterexample->x, VertexSet::all(n)) == static_cast<int>(e.counterexample->observed));
    }
    (e.verdict == Verdict::holds ? holds : fails)++;
  }
  CHECK(holds > 10);
  CHECK(fails > 10);
}

TEST_CASE("sampled mode never contradicts exact mode") {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 8 + static_cast<int>(rng() % 7);
    const Graph g = random_graph(n, 0.5 + 0.05 * static_cast<double>(rng() % 8), rng);
    const ExpanderParams p{0.25, 1.5 + 0.5 * static_cast<double>(rng() % 3), 0};
    const auto s = check_expander(g, p, CheckMode::sampled(rng(), 200));
    const auto x = check_expander(g, p, CheckMode::exact());
    if (s.verdict == Verdict::fails) {
      CHECK(x.verdict == Verdict::fails);
      CHECK(recheck_counterexample(g, ExpanderKind::plain, p, *s.counterexample));
    } else {
      CHECK(s.verdict == Verdict::sampled_no_counterexample);
    }
    const auto hs = check_half_expander(g, p, CheckMode::sampled(rng(), 200));
    if (hs.verdict == Verdict::fails) {
      CHECK(check_half_expander(g, p, CheckMode::exact()).verdict == Verdict::fails);
      CHECK(recheck_counterexample(g, ExpanderKind::half, p, *hs.counterexample));
    }
  }
}

TEST_CASE("sampled mode scales past the exact budget") {
  CHECK_THROWS_AS(check_expander(gen::complete(17), {0.25, 2, 0}, CheckMode::exact()), BudgetExceeded);
  auto rep = check_expander(gen::complete(40), {0.25, 2, 0}, CheckMode::sampled(1, 100));
  CHECK(rep.verdict == Verdict::sampled_no_counterexample);
  CHECK(rep.sets_checked > 0);
  auto cyc = check_expander(gen::cycle(40), {0.25, 3, 0}, CheckMode::sampled(1, 100));
  REQUIRE(cyc.verdict == Verdict::fails);
  CHECK(recheck_counterexample(gen::cycle(40), ExpanderKind::plain, {0.25, 3, 0}, *cyc.counterexample));
  CHECK_THROWS_AS(check_expander(gen::complete(10), {0.25, 2, 0}, CheckMode::sampled(1, 0)), DomainError);
}

TEST_CASE("adding edges never breaks expansion") {
  std::mt19937_64 rng(17);
  int checked = 0;
  for (int trial = 0; trial < 80; ++trial) {
    const int n = 6 + static_cast<int>(rng() % 6);
    Graph g = random_graph(n, 0.6, rng);
    const ExpanderParams p{0.3, 1.5, 0};
    if (check_expander(g, p, CheckMode::exact()).verdict != Verdict::holds) continue;
    ++checked;
    for (int step = 0; step < 5; ++step) {
      const Vertex u = static_cast<Vertex>(rng() % n), v = static_cast<Vertex>(rng() % n);
      if (u == v) continue;
      const std::vector<Edge> add{make_edge(u, v)};
      g = with_edges(g, add);
      CHECK(check_expander(g, p, CheckMode::exact()).verdict == Verdict::holds);
    }
  }
  CHECK(checked > 10);
}

TEST_CASE("recheck rejects non-witnesses") {
  const Graph k10 = gen::complete(10);
  Counterexample fake{"i", {0}, {}, 9, 2};
  CHECK_FALSE(recheck_counterexample(k10, ExpanderKind::plain, {0.25, 2, 0}, fake));
  Counterexample pair{"iii", {0, 1, 2, 3, 4}, {5, 6, 7, 8, 9}, 25, 20};
  CHECK_FALSE(recheck_counterexample(k10, ExpanderKind::half, {1e-7, 2, 0}, pair));
  Counterexample overlap{"iii", {0, 1}, {1, 2}, 0, 20};
  CHECK_FALSE(recheck_counterexample(k10, ExpanderKind::half, {0.25, 2, 0}, overlap));
}
