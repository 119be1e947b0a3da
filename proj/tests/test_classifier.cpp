#include <random>

#include "doctest.h"
#include "dham/classifier.hpp"
#include "dham/errors.hpp"
#include "dham/generators.hpp"
#include "oracles.hpp"

using namespace dham;

namespace {
const ClassifierParams kRelaxed{0.001, 0.032};
const ClassifierParams kLoose{1.0 / 320.0, 0.1};
}  // namespace

TEST_CASE("params validation") {
  CHECK_NOTHROW(kRelaxed.validate());
  CHECK_THROWS_AS((ClassifierParams{0.01, 0.1}.validate()), DomainError);
  CHECK_THROWS_AS((ClassifierParams{0.001, 0.2}.validate()), DomainError);
  CHECK_THROWS_AS((ClassifierParams{0.003, 0.05}.validate()), DomainError);
}

TEST_CASE("sparsest half-set pair: reference values") {
  auto k12 = sparsest_halfset_pair(gen::complete(12), SearchMode::exact, 0);
  CHECK(k12.crossing == test_oracles::brute_sparsest_crossing(gen::complete(12)));
  CHECK(k12.crossing == 30);
  CHECK(k12.a == k12.b);

  auto tcm = sparsest_halfset_pair(gen::two_cliques_matching(5), SearchMode::exact, 0);
  CHECK(tcm.crossing == test_oracles::brute_sparsest_crossing(gen::two_cliques_matching(5)));
  CHECK(tcm.crossing == 5);
  CHECK(tcm.a == VertexSet::range(0, 5));
  CHECK(tcm.b == VertexSet::range(5, 10));

  auto kb = sparsest_halfset_pair(gen::complete_bipartite(5, 5), SearchMode::exact, 0);
  CHECK(kb.crossing == 0);
  CHECK(kb.a == kb.b);

  CHECK_THROWS_AS(sparsest_halfset_pair(gen::complete(13), SearchMode::exact, 0), BudgetExceeded);
}

TEST_CASE("exact search agrees with double enumeration and dominates local search") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 4 + static_cast<int>(rng() % 7);
    const Graph g = gen::gnp(n, 0.5, rng());
    auto ex = sparsest_halfset_pair(g, SearchMode::exact, 0);
    CHECK(ex.crossing == test_oracles::brute_sparsest_crossing(g));
    CHECK(pair_count(g, ex.a, ex.b) == ex.crossing);
    auto loc = sparsest_halfset_pair(g, SearchMode::local_search, rng());
    CHECK(ex.crossing <= loc.crossing);
    CHECK(pair_count(g, loc.a, loc.b) == loc.crossing);
  }
}

TEST_CASE("local search result is swap-stable") {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 14 + static_cast<int>(rng() % 10);
    const Graph g = gen::random_dirac(n, rng());
    auto loc = sparsest_halfset_pair(g, SearchMode::local_search, rng(), 4);
    // No single exchange of a member of A with a non-member lowers e(A,B).
    for (Vertex out : loc.a)
      for (Vertex in = 0; in < n; ++in) {
        if (loc.a.contains(in)) continue;
        auto m = loc.a.members();
        std::replace(m.begin(), m.end(), out, in);
        CHECK(test_oracles::brute_pair_count(g, VertexSet(m), loc.b) >= loc.crossing);
      }
  }
}

TEST_CASE("classify: K12 is dense crossing") {
  auto c = classify(gen::complete(12), kLoose, SearchMode::exact);
  CHECK(c.kind == StructureCase::dense_crossing);
  CHECK_FALSE(c.heuristic);
  CHECK(verify_classification(gen::complete(12), c, kLoose));
}

TEST_CASE("classify: complete bipartite is near bipartite") {
  const Graph g = gen::complete_bipartite(8, 8);
  auto c = classify(g, kRelaxed, SearchMode::local_search, 1);
  CHECK(c.kind == StructureCase::near_bipartite);
  CHECK(c.diagnostics.cross_edges == 64);
  CHECK(verify_classification(g, c, kRelaxed));
}

TEST_CASE("classify: clique pair at large n is near disconnected") {
  const Graph g = gen::two_cliques_matching(100);
  auto c = classify(g, kLoose, SearchMode::local_search, 4);
  CHECK(c.kind == StructureCase::near_disconnected);
  CHECK(c.diagnostics.cross_edges == 100);
  CHECK(verify_classification(g, c, kLoose));
}

TEST_CASE("verify rejects wrong claims") {
  const Graph kb = gen::complete_bipartite(8, 8);
  Classification wrong;
  wrong.kind = StructureCase::near_disconnected;
  wrong.a = VertexSet::range(0, 8);
  CHECK_FALSE(verify_classification(kb, wrong, kRelaxed));

  const Graph tcm = gen::two_cliques_matching(8);
  Classification wrong2;
  wrong2.kind = StructureCase::near_bipartite;
  wrong2.a = VertexSet::range(0, 8);
  CHECK_FALSE(verify_classification(tcm, wrong2, kRelaxed));
  CHECK(measure(tcm, *wrong2.a).cross_edges == 8);
}

TEST_CASE("classify rejects non-Dirac input") {
  CHECK_THROWS_AS(classify(gen::path(6), kRelaxed, SearchMode::exact), PreconditionError);
}

TEST_CASE("classify output always verifies or throws") {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 8 + static_cast<int>(rng() % 5);
    const Graph g = gen::random_dirac(n, rng());
    try {
      auto c = classify(g, kLoose, SearchMode::exact);
      CHECK(verify_classification(g, c, kLoose));
      CHECK(c.repair_moves <= static_cast<int>(c.sparsest.a.size()));
    } catch (const ClassificationFailed& e) {
      CHECK_FALSE(verify_classification(g, e.attempt(), kLoose));
    }
  }
}
