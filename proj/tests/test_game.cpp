#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <random>
#include <set>

#include "doctest.h"
#include "dham/aux_hypergraphs.hpp"
#include "dham/combinators.hpp"
#include "dham/dirac_maker.hpp"
#include "dham/exhaustive.hpp"
#include "dham/generators.hpp"
#include "dham/potential.hpp"
#include "dham/strategies.hpp"
#include "game_oracles.hpp"

using namespace dham;

namespace {

WinningFamily fam(std::vector<std::vector<Element>> sets) { return WinningFamily{std::move(sets)}; }

WinningFamily random_family(std::mt19937_64& rng, int board, int max_sets) {
  std::uniform_int_distribution<int> count(0, max_sets), mask(1, (1 << board) - 1);
  WinningFamily f;
  const int k = count(rng);
  for (int i = 0; i < k; ++i) {
    const int m = mask(rng);
    std::vector<Element> s;
    for (int e = 0; e < board; ++e)
      if (m >> e & 1) s.push_back(e);
    f.sets.push_back(s);
  }
  return f;
}

/// Replays fixed element lists, then falls back to lowest free.
class Scripted : public Strategy {
 public:
  explicit Scripted(std::vector<std::vector<Element>> turns) : turns_(std::move(turns)) {}
  std::vector<Element> move(const GameState& s) override {
    if (next_ < turns_.size()) return turns_[next_++];
    return FirstFreeStrategy().move(s);
  }
  std::string name() const override { return "scripted"; }

 private:
  std::vector<std::vector<Element>> turns_;
  std::size_t next_ = 0;
};

class Liar : public Strategy {
 public:
  std::vector<Element> move(const GameState& s) override {
    for (Element e = 0; e < s.board_size(); ++e)
      if (!s.is_free(e)) return {e};
    return {s.board_size()};
  }
  std::string name() const override { return "liar"; }
};

Graph near_bipartite_11() {
  std::vector<Edge> es;
  for (Vertex a = 0; a < 6; ++a)
    for (Vertex b = 6; b < 11; ++b) es.push_back({a, b});
  for (Vertex a = 0; a < 6; a += 2) es.push_back({a, a + 1});
  return Graph(11, es);
}

}  // namespace

TEST_CASE("game state bookkeeping") {
  GameState s(5, Bias{1, 2}, Player::maker);
  s.claim(0);
  CHECK(s.to_move() == Player::breaker);
  CHECK(s.remaining_in_turn() == 2);
  s.claim(1);
  CHECK(s.to_move() == Player::breaker);
  s.claim(2);
  CHECK(s.to_move() == Player::maker);
  try {
    s.claim(1);
    FAIL("claimed element accepted");
  } catch (const IllegalMove& ex) {
    CHECK(ex.reason() == "claimed");
  }
  CHECK_THROWS_AS(s.claim(9), IllegalMove);
  s.claim(3);
  // One free element left: Breaker's turn is short.
  CHECK(s.remaining_in_turn() == 1);
  s.claim(4);
  CHECK(s.board_full());
  CHECK_NOTHROW(s.check_invariants());
  const GameState r = GameState::replay(5, Bias{1, 2}, Player::maker, s.history());
  CHECK(r.claims(Player::breaker) == s.claims(Player::breaker));
  CHECK_THROWS_AS(GameState(3, Bias{0, 1}, Player::maker), DomainError);
  WinningFamily bad = fam({{0, 0}});
  CHECK_THROWS_AS(bad.normalize(3), PreconditionError);
  bad = fam({{}});
  CHECK_THROWS_AS(bad.normalize(3), PreconditionError);
  bad = fam({{4}});
  CHECK_THROWS_AS(bad.normalize(3), PreconditionError);
}

TEST_CASE("beck_criterion") {
  auto r = beck_criterion(fam({{0, 1}}), 1, 1);
  CHECK(r.value == doctest::Approx(0.25));
  CHECK(r.breaker_wins_guaranteed);
  r = beck_criterion(fam({{0}}), 1, 1);
  CHECK(r.value == doctest::Approx(0.5));
  CHECK_FALSE(r.breaker_wins_guaranteed);
  r = beck_criterion(fam({{0, 1, 2, 3}}), 2, 1);
  CHECK(r.value == doctest::Approx(0.25));
  CHECK(r.breaker_wins_guaranteed);
  r = beck_criterion(fam({}), 1, 1);
  CHECK(r.value == 0);
  CHECK(r.breaker_wins_guaranteed);
  CHECK_THROWS_AS(beck_criterion(fam({}), 0, 1), DomainError);
}

TEST_CASE("potential") {
  const WinningFamily f = fam({{0, 1}});
  GameState s(2, Bias{1, 1}, Player::maker);
  CHECK(potential(f, s, 1, 1) == doctest::Approx(0.25));
  s.claim(0);
  CHECK(potential(f, s, 1, 1) == doctest::Approx(0.5));
  GameState t(2, Bias{1, 1}, Player::breaker);
  t.claim(0);
  CHECK(potential(f, t, 1, 1) == 0.0);
  // A fully Maker-held surviving set contributes 1.
  GameState u(3, Bias{1, 1}, Player::maker);
  u.claim(0);
  u.claim(2);
  u.claim(1);
  CHECK(potential(fam({{0, 1}, {1, 2}}), u, 1, 1) == doctest::Approx(1.0));
}

TEST_CASE("breaker_potential_move") {
  const WinningFamily f = fam({{0, 1}, {0, 2}});
  GameState s(3, Bias{1, 1}, Player::breaker);
  // Candidate decreases: claiming e kills every set through e.
  std::map<Element, double> decrease;
  for (Element e = 0; e < 3; ++e) {
    GameState t = s;
    t.claim(e);
    decrease[e] = potential(f, s, 1, 1) - potential(f, t, 1, 1);
  }
  CHECK(decrease[0] > decrease[1]);
  CHECK(decrease[0] > decrease[2]);
  CHECK(breaker_potential_move(f, s) == std::vector<Element>{0});

  GameState x(4, Bias{1, 1}, Player::breaker);
  CHECK(breaker_potential_move(fam({{2}}), x) == std::vector<Element>{2});

  GameState y(4, Bias{1, 2}, Player::breaker);
  y.claim(0);
  y.claim(3);
  y.claim(1);
  CHECK(y.to_move() == Player::breaker);
  CHECK(breaker_potential_move(fam({{0, 1}}), y) == std::vector<Element>{2});

  GameState z(5, Bias{1, 2}, Player::maker);
  CHECK_THROWS_AS(breaker_potential_move(f, z), PreconditionError);
  z.claim(4);
  CHECK(breaker_potential_move(fam({}), z) == std::vector<Element>{0, 1});
}

TEST_CASE("breaker_potential_move never raises the potential") {
  std::mt19937_64 rng(11);
  for (int it = 0; it < 300; ++it) {
    const int board = 6;
    WinningFamily f = random_family(rng, board, 5);
    const int b = 1 + static_cast<int>(rng() % 2);
    GameState s(board, Bias{1, b}, Player::maker);
    RandomStrategy maker(rng());
    while (!s.board_full()) {
      if (s.to_move() == Player::maker) {
        for (Element e : maker.move(s)) s.claim(e);
        continue;
      }
      const double before = potential(f, s, 1, b);
      const auto mv = breaker_potential_move(f, s);
      CHECK(static_cast<int>(mv.size()) == std::min(b, s.free_count()));
      for (Element e : mv) s.claim(e);
      CHECK(potential(f, s, 1, b) <= before + 1e-12);
    }
  }
}

TEST_CASE("play examples") {
  const WinningFamily f = fam({{0, 1}, {0, 2}});
  MinimaxStrategy m1(3, f, Bias{1, 1}), m2(3, f, Bias{1, 1});
  FamilyGoal goal(f);
  auto t = play(3, goal, m1, m2, Bias{1, 1});
  CHECK(t.winner == Player::maker);
  for (Element e : goal.winning_set()) CHECK(t.final_state.owner(e) == Owner::maker);

  const WinningFamily single = fam({{0}});
  FamilyGoal g1(single);
  PotentialBreaker pb(single);
  FirstFreeStrategy ff;
  PlayOptions first_breaker;
  first_breaker.first = Player::breaker;
  t = play(3, g1, ff, pb, Bias{1, 1}, first_breaker);
  CHECK(t.winner == Player::breaker);
  CHECK(t.final_state.owner(0) == Owner::breaker);

  const WinningFamily none = fam({});
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    FamilyGoal g0(none);
    RandomStrategy a(seed), b(seed + 100);
    CHECK(play(6, g0, a, b, Bias{1, 2}).winner == Player::breaker);
  }
}

TEST_CASE("play records potentials and forfeits") {
  const WinningFamily f = fam({{0, 1}, {2, 3}});
  FamilyGoal goal(f);
  FirstFreeStrategy a;
  PotentialBreaker b(f);
  PlayOptions opts;
  opts.potential_family = &f;
  auto t = play(4, goal, a, b, Bias{1, 1}, opts);
  REQUIRE(!t.potentials.empty());
  CHECK(t.potentials.front() == doctest::Approx(0.5));
  CHECK(t.potentials.size() == t.final_state.history().size() + 1);

  Liar liar;
  FamilyGoal g2(f);
  FirstFreeStrategy ff;
  t = play(4, g2, ff, liar, Bias{1, 1});
  REQUIRE(t.forfeit.has_value());
  CHECK(*t.forfeit == Player::breaker);
  CHECK(t.forfeit_reason == "claimed");
  CHECK(t.winner == Player::maker);

  Scripted too_many({{0, 1}});
  FamilyGoal g3(f);
  t = play(4, g3, too_many, ff, Bias{1, 1});
  REQUIRE(t.forfeit.has_value());
  CHECK(*t.forfeit == Player::maker);
  CHECK(t.forfeit_reason == "count");
  CHECK(t.winner == Player::breaker);
}

TEST_CASE("transcript winner matches the final claims") {
  std::mt19937_64 rng(5);
  for (int it = 0; it < 200; ++it) {
    WinningFamily f = random_family(rng, 7, 4);
    FamilyGoal goal(f);
    RandomStrategy a(rng()), b(rng());
    const Bias bias{1 + static_cast<int>(rng() % 2), 1 + static_cast<int>(rng() % 2)};
    const auto t = play(7, goal, a, b, bias);
    bool some = false;
    for (const auto& s : f.sets)
      some |= std::all_of(s.begin(), s.end(), [&](Element e) { return t.final_state.owner(e) == Owner::maker; });
    CHECK(some == (t.winner == Player::maker));
    // potential with u(B)=0 for some surviving set iff Maker won.
    CHECK((potential(f, t.final_state, bias.maker, bias.breaker) >= 1.0 - 1e-12) == some);
  }
}

TEST_CASE("exhaustive_value examples") {
  CHECK(exhaustive_value(3, fam({{0, 1}, {0, 2}}), Bias{1, 1}, Player::maker) == Player::maker);
  CHECK(test_oracles::brute_value(3, fam({{0, 1}, {0, 2}}), Bias{1, 1}, Player::maker) == Player::maker);
  CHECK(exhaustive_value(2, fam({{0, 1}}), Bias{1, 1}, Player::maker) == Player::breaker);
  CHECK(test_oracles::brute_value(2, fam({{0, 1}}), Bias{1, 1}, Player::maker) == Player::breaker);
  const WinningFamily pairs = fam({{0, 1}, {2, 3}, {4, 5}});
  CHECK(exhaustive_value(6, pairs, Bias{1, 2}, Player::maker) == Player::breaker);
  CHECK(test_oracles::brute_value(6, pairs, Bias{1, 2}, Player::maker) == Player::breaker);
  CHECK_THROWS_AS(exhaustive_value(17, fam({{0}}), Bias{1, 1}, Player::maker), BudgetExceeded);
  GameSolver tiny(12, fam({{0, 1, 2, 3, 4, 5}, {6, 7, 8, 9, 10, 11}, {0, 6}}), Bias{1, 1}, 10);
  CHECK_THROWS_AS(tiny.winner(GameState(12, Bias{1, 1}, Player::maker)), BudgetExceeded);
}

TEST_CASE("exhaustive solver agrees with plain recursion") {
  std::mt19937_64 rng(2024);
  for (int it = 0; it < 400; ++it) {
    const int board = 2 + static_cast<int>(rng() % 6);
    WinningFamily f = random_family(rng, board, 4);
    const Bias bias{1 + static_cast<int>(rng() % 2), 1 + static_cast<int>(rng() % 3)};
    const Player first = rng() % 2 ? Player::maker : Player::breaker;
    CHECK(exhaustive_value(board, f, bias, first) == test_oracles::brute_value(board, f, bias, first));
  }
}

TEST_CASE("minimax strategies realize the game value") {
  std::mt19937_64 rng(77);
  for (int it = 0; it < 100; ++it) {
    const int board = 3 + static_cast<int>(rng() % 4);
    WinningFamily f = random_family(rng, board, 3);
    const Bias bias{1, 1 + static_cast<int>(rng() % 2)};
    const Player value = exhaustive_value(board, f, bias, Player::maker);
    MinimaxStrategy mm(board, f, bias);
    RandomStrategy opp(rng());
    FamilyGoal goal(f);
    if (value == Player::maker) {
      CHECK(play(board, goal, mm, opp, bias).winner == Player::maker);
    } else {
      CHECK(play(board, goal, opp, mm, bias).winner == Player::breaker);
    }
  }
}

TEST_CASE("Beck-flagged families: the potential Breaker survives every Maker line") {
  std::mt19937_64 rng(99);
  int flagged = 0;
  for (int it = 0; it < 400; ++it) {
    const int board = 1 + static_cast<int>(rng() % 5);
    WinningFamily f = random_family(rng, board, 6);
    if (!beck_criterion(f, 1, 1).breaker_wins_guaranteed) continue;
    ++flagged;
    auto br = [&](const GameState& s) { return breaker_potential_move(f, s); };
    CHECK_FALSE(test_oracles::adversarial_maker_wins(test_oracles::set_masks(f), GameState(board, Bias{1, 1}, Player::maker), br));
    CHECK(exhaustive_value(board, f, Bias{1, 1}, Player::maker) == Player::breaker);
  }
  CHECK(flagged > 20);
}

TEST_CASE("split_board: a = 3 delivers at most 3b per sub-move") {
  for (int b = 1; b <= 2; ++b) {
    std::vector<std::unique_ptr<Strategy>> subs;
    for (int j = 0; j < 3; ++j) subs.push_back(std::make_unique<FirstFreeStrategy>());
    auto sb = split_board(9, {{0, 1, 2}, {3, 4, 5}, {6, 7, 8}}, std::move(subs));
    Scripted breaker(b == 1 ? std::vector<std::vector<Element>>{{8}, {5}, {7}}
                            : std::vector<std::vector<Element>>{{8, 5}, {7, 4}});
    FamilyGoal goal(fam({}));
    const auto t = play(9, goal, *sb, breaker, Bias{1, b});
    CHECK_FALSE(t.forfeit.has_value());
    int delivered = 0;
    for (int d : sb->delivered()) {
      CHECK(d <= 3 * b);
      delivered += d;
    }
    // Every Breaker element is delivered, except those after a board's last visit.
    CHECK(delivered <= static_cast<int>(t.final_state.claims(Player::breaker).size()));
    for (std::size_t i = 0; i < sb->visits().size(); ++i) {
      const GameState* v = sb->virtual_state(sb->visits()[i]);
      REQUIRE(v != nullptr);
      CHECK(v->bias().breaker == 3 * b);
    }
    // Round-robin on the first pass.
    REQUIRE(sb->visits().size() >= 3);
    CHECK(sb->visits()[0] == 0);
    CHECK(sb->visits()[1] == 1);
    CHECK(sb->visits()[2] == 2);
  }
}

TEST_CASE("split_board: virtual games mirror the real board") {
  std::mt19937_64 rng(3);
  for (int it = 0; it < 100; ++it) {
    const int a = 1 + static_cast<int>(rng() % 3), b = 1 + static_cast<int>(rng() % 3);
    std::vector<Element> perm(12);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<std::vector<Element>> parts(static_cast<std::size_t>(a));
    for (int i = 0; i < 12; ++i) parts[i % a].push_back(perm[i]);
    std::vector<std::unique_ptr<Strategy>> subs;
    for (int j = 0; j < a; ++j) subs.push_back(std::make_unique<RandomStrategy>(rng()));
    auto sb = split_board(12, parts, std::move(subs));
    RandomStrategy breaker(rng());
    FamilyGoal goal(fam({}));
    const auto t = play(12, goal, *sb, breaker, Bias{1, b});
    CHECK_FALSE(t.forfeit.has_value());
    for (int j = 0; j < a; ++j) {
      const GameState* v = sb->virtual_state(j);
      REQUIRE(v != nullptr);
      CHECK_NOTHROW(v->check_invariants());
      // Maker's virtual claims are exactly its real claims on the board.
      for (std::size_t i = 0; i < parts[j].size(); ++i)
        if (v->owner(static_cast<Element>(i)) == Owner::maker) CHECK(t.final_state.owner(parts[j][i]) == Owner::maker);
    }
  }
}

TEST_CASE("split_board: a = 1 is the identity") {
  std::vector<std::unique_ptr<Strategy>> subs;
  subs.push_back(std::make_unique<RandomStrategy>(42));
  auto sb = split_board(8, {{0, 1, 2, 3, 4, 5, 6, 7}}, std::move(subs));
  RandomStrategy direct(42);
  RandomStrategy b1(7), b2(7);
  FamilyGoal g1(fam({})), g2(fam({}));
  const auto t1 = play(8, g1, *sb, b1, Bias{1, 1});
  const auto t2 = play(8, g2, direct, b2, Bias{1, 1});
  CHECK(t1.final_state.claims(Player::maker) == t2.final_state.claims(Player::maker));
}

TEST_CASE("split_board errors") {
  auto subs2 = [] {
    std::vector<std::unique_ptr<Strategy>> s;
    s.push_back(std::make_unique<FirstFreeStrategy>());
    s.push_back(std::make_unique<FirstFreeStrategy>());
    return s;
  };
  CHECK_THROWS_AS(split_board(5, {{0, 1}, {2, 3}}, subs2()), PreconditionError);
  CHECK_THROWS_AS(split_board(4, {{0, 1}, {1, 2, 3}}, subs2()), PreconditionError);
  CHECK_THROWS_AS(split_board(4, {{0, 1}, {2, 3}}, {}), PreconditionError);
  auto sb = split_board(4, {{0, 1}, {2, 3}}, subs2());
  CHECK_THROWS_AS(sb->move(GameState(4, Bias{2, 1}, Player::maker)), PreconditionError);

  std::vector<std::unique_ptr<Strategy>> liar;
  liar.push_back(std::make_unique<Liar>());
  auto bad = split_board(3, {{0, 1, 2}}, std::move(liar));
  FirstFreeStrategy ff;
  FamilyGoal goal(fam({}));
  const auto t = play(3, goal, *bad, ff, Bias{1, 1});
  REQUIRE(t.forfeit.has_value());
  CHECK(t.forfeit_reason == "sub-strategy");
}

TEST_CASE("fake_bias") {
  auto inner = std::make_unique<FirstFreeStrategy>();
  Strategy* raw = inner.get();
  CHECK(fake_bias(std::move(inner), 2, 2).get() == raw);
  CHECK_THROWS_AS(fake_bias(std::make_unique<FirstFreeStrategy>(), 1, 2), DomainError);

  // b0 = b + 1, Breaker always claims a current fake when one exists.
  auto fb = std::make_unique<FakeBias>(std::make_unique<FirstFreeStrategy>(), 2);
  FakeBias* wrapper = fb.get();
  struct FakeHunter : Strategy {
    FakeBias* w;
    explicit FakeHunter(FakeBias* w) : w(w) {}
    std::vector<Element> move(const GameState& s) override {
      for (std::size_t e = 0; e < w->fakes().size(); ++e)
        if (w->fakes()[e] && s.is_free(static_cast<Element>(e))) return {static_cast<Element>(e)};
      return FirstFreeStrategy().move(s);
    }
    std::string name() const override { return "hunter"; }
  } hunter(wrapper);
  FamilyGoal goal(fam({}));
  const auto t = play(20, goal, *fb, hunter, Bias{1, 1});
  CHECK_FALSE(t.forfeit.has_value());
  CHECK(wrapper->replacements() > 0);
  for (std::size_t e = 0; e < wrapper->fakes().size(); ++e)
    if (wrapper->fakes()[e]) CHECK(t.final_state.owner(static_cast<Element>(e)) != Owner::maker);
  REQUIRE(wrapper->virtual_state() != nullptr);
  CHECK_NOTHROW(wrapper->virtual_state()->check_invariants());
}

TEST_CASE("fake_bias: the inner game sees exactly b0 per round") {
  std::mt19937_64 rng(8);
  for (int it = 0; it < 100; ++it) {
    const int b = 1 + static_cast<int>(rng() % 2), b0 = b + 1 + static_cast<int>(rng() % 2);
    auto fb = std::make_unique<FakeBias>(std::make_unique<RandomStrategy>(rng()), b0);
    FakeBias* w = fb.get();
    RandomStrategy breaker(rng());
    FamilyGoal goal(fam({}));
    PlayOptions opts;
    opts.first = rng() % 2 ? Player::maker : Player::breaker;
    const auto t = play(30, goal, *fb, breaker, Bias{1, b}, opts);
    CHECK_FALSE(t.forfeit.has_value());
    // Full rounds of b0, then at most one short round when the inner
    // board runs out, then nothing.
    const auto& d = w->delivered();
    std::size_t i = 0;
    while (i < d.size() && d[i] == b0) ++i;
    if (i < d.size() && d[i] > 0) ++i;
    for (; i < d.size(); ++i) CHECK(d[i] == 0);
    CHECK(d.size() >= 5u);
    CHECK(d[0] == b0);
  }
}

TEST_CASE("aux H1 matches a direct recount") {
  const Graph g = gen::random_dirac(8, 4);
  const AuxFamily h = aux_hypergraphs(g, AuxKind::h1);
  // l = 3, blocks {0,1}, {2,3}, {4,5}; J ranges over the 2-subsets of 3.
  const std::vector<std::vector<Vertex>> blocks{{0, 1}, {2, 3}, {4, 5}};
  std::multiset<std::vector<Element>> expect;
  int empty = 0;
  for (Vertex x = 0; x < 8; ++x)
    for (int skip = 0; skip < 3; ++skip) {
      std::vector<Element> set;
      for (int j = 0; j < 3; ++j)
        if (j != skip)
          for (Vertex y : blocks[j])
            if (y != x && g.has_edge(x, y)) set.push_back(g.edge_id(x, y));
      std::sort(set.begin(), set.end());
      if (set.empty()) ++empty;
      else expect.insert(set);
    }
  CHECK(h.constructed == 24);
  CHECK(h.dropped_empty == empty);
  CHECK(std::multiset<std::vector<Element>>(h.family.sets.begin(), h.family.sets.end()) == expect);
  CHECK(h.size_bound == doctest::Approx(8.0 / 7));
  std::int64_t small = 0;
  for (const auto& s : h.family.sets) small += s.size() < 8.0 / 7;
  CHECK(h.slack_violations == small);
}

TEST_CASE("aux H2 size equals the binomial count") {
  AuxParams p;
  p.x_size = 1;
  p.y_size = 5;
  const AuxFamily h = aux_hypergraphs(gen::complete(8), AuxKind::h2, p);
  CHECK(h.constructed == 8 * 56);
  CHECK(h.family.sets.size() == 8u * 56u);
  p.x_size = 2;
  p.y_size = 6;
  const AuxFamily h2 = aux_hypergraphs(gen::complete(8), AuxKind::h2, p);
  CHECK(h2.family.sets.size() == 28u * 28u);
  for (const auto& s : h2.family.sets) CHECK((s.size() == 8u || s.size() == 10u || s.size() == 12u));
  // Default |X| = ceil(n / (eps r)) exceeds n here: nothing is placed.
  CHECK(aux_hypergraphs(gen::complete(8), AuxKind::h2).constructed == 0);
}

TEST_CASE("aux H3") {
  // K8: every disjoint pair has e(X,Y) <= 16 = 2n, so nothing is placed.
  CHECK(aux_hypergraphs(gen::complete(8), AuxKind::h3).family.sets.empty());
  // K9 with |X|,|Y| >= 4: only the (4,5) splits exceed 2n, by 2 edges each.
  AuxParams p;
  p.pair_min = 4;
  const AuxFamily h = aux_hypergraphs(gen::complete(9), AuxKind::h3, p);
  CHECK(h.family.sets.size() == 126u * 190u);
  for (const auto& s : h.family.sets) CHECK(s.size() == 2u);
  CHECK(h.slack_violations == 0);
  p.max_sets = 1000;
  CHECK_THROWS_AS(aux_hypergraphs(gen::complete(9), AuxKind::h3, p), BudgetExceeded);
  CHECK_THROWS_AS(aux_hypergraphs(gen::complete(11), AuxKind::h1), BudgetExceeded);
}

TEST_CASE("dirac maker self-play on K8 and two K6 joined by a matching") {
  for (const Graph& g : {gen::complete(8), gen::two_cliques_matching(6)}) {
    auto mk = maker_dirac_strategy(g, 1, 1);
    GreedyBlockBreaker br(g);
    HamiltonGoal goal(g);
    const auto t = play(static_cast<int>(g.m()), goal, *mk, br, Bias{1, 1});
    CHECK_FALSE(t.forfeit.has_value());
    REQUIRE(t.winner == Player::maker);
    const Graph m = maker_graph(g, t.final_state);
    REQUIRE(verify_hamilton_cycle(m, goal.cycle()));
    if (g.n() == 12) {
      // Exactly two cross edges, disjoint, and each half is traversed as a path.
      const auto& c = goal.cycle();
      std::vector<Edge> cross;
      for (std::size_t i = 0; i < c.size(); ++i) {
        const Vertex u = c[i], v = c[(i + 1) % c.size()];
        if ((u < 6) != (v < 6)) cross.push_back(make_edge(u, v));
      }
      REQUIRE(cross.size() == 2u);
      std::set<Vertex> ends{cross[0].first, cross[0].second, cross[1].first, cross[1].second};
      CHECK(ends.size() == 4u);
    }
  }
}

TEST_CASE("dirac maker plays legal moves and loses gracefully") {
  const Graph k8 = gen::complete(8);
  auto mk = maker_dirac_strategy(k8, 28, 0);
  GreedyBlockBreaker br(k8);
  HamiltonGoal goal(k8);
  const auto t = play(28, goal, *mk, br, Bias{1, 28});
  CHECK_FALSE(t.forfeit.has_value());
  CHECK(t.winner == Player::breaker);
  CHECK(t.final_state.claims(Player::maker).size() == 1u);
  CHECK_THROWS_AS(maker_dirac_strategy(gen::cycle(8), 1, 0), PreconditionError);

  for (std::uint64_t seed = 0; seed < 20; ++seed)
    for (int b = 1; b <= 3; ++b) {
      const Graph g = gen::random_dirac(10, seed);
      auto m2 = maker_dirac_strategy(g, b, seed);
      RandomStrategy rb(seed * 7 + 1);
      HamiltonGoal hg(g);
      const auto r = play(static_cast<int>(g.m()), hg, *m2, rb, Bias{1, b});
      CHECK_FALSE(r.forfeit.has_value());
      if (r.winner == Player::maker) CHECK(verify_hamilton_cycle(maker_graph(g, r.final_state), hg.cycle()));
    }
}

TEST_CASE("stage-two claims join S_P and T_v") {
  DiracMakerOptions opts;
  opts.beta = 0;
  int boosters = 0;
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const Graph g = gen::complete(10);
    auto mk = maker_dirac_strategy(g, 1, seed, opts);
    RandomStrategy rb(seed + 50);
    HamiltonGoal goal(g);
    const auto t = play(static_cast<int>(g.m()), goal, *mk, rb, Bias{1, 1});
    CHECK_FALSE(t.forfeit.has_value());
    REQUIRE(mk->core() != nullptr);
    CHECK(mk->core()->stage() == 2);
    for (const auto& r : mk->core()->boosters()) {
      ++boosters;
      const Vertex other = r.edge.first == r.v ? r.edge.second : r.edge.first;
      CHECK((r.edge.first == r.v || r.edge.second == r.v));
      CHECK(r.s_p.contains(r.v));
      CHECK(r.t_v.contains(other));
      CHECK(t.final_state.owner(g.edge_id(r.edge.first, r.edge.second)) == Owner::maker);
    }
  }
  CHECK(boosters > 0);
}

TEST_CASE("forced split cases play legally") {
  const Graph g = gen::two_cliques_matching(6);
  DiracMakerOptions opts;
  Classification c;
  c.kind = StructureCase::near_disconnected;
  c.a = VertexSet::range(0, 6);
  opts.forced = c;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    auto mk = maker_dirac_strategy(g, 1, seed, opts);
    CHECK(mk->structure() == StructureCase::near_disconnected);
    CHECK(mk->core() == nullptr);
    RandomStrategy rb(seed);
    HamiltonGoal goal(g);
    const auto t = play(static_cast<int>(g.m()), goal, *mk, rb, Bias{1, 1});
    CHECK_FALSE(t.forfeit.has_value());
  }
  const Graph h = near_bipartite_11();
  REQUIRE(is_dirac(h));
  Classification c3;
  c3.kind = StructureCase::near_bipartite;
  c3.a = VertexSet::range(0, 6);
  opts.forced = c3;
  int wins = 0;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    auto mk = maker_dirac_strategy(h, 1, seed, opts);
    GreedyBlockBreaker br(h);
    HamiltonGoal goal(h);
    const auto t = play(static_cast<int>(h.m()), goal, *mk, br, Bias{1, 1});
    CHECK_FALSE(t.forfeit.has_value());
    if (t.winner == Player::maker) {
      ++wins;
      CHECK(verify_hamilton_cycle(maker_graph(h, t.final_state), goal.cycle()));
    }
  }
  CHECK(wins > 0);
}
