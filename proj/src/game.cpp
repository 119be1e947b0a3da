#include "dham/game.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "dham/hamilton_oracle.hpp"
#include "dham/potential.hpp"

namespace dham {

const char* to_string(Player p) { return p == Player::maker ? "Maker" : "Breaker"; }

void Bias::validate() const {
  if (maker < 1 || breaker < 1) throw DomainError("bias entries must be positive");
}

void WinningFamily::normalize(int board_size) {
  for (auto& s : sets) {
    if (s.empty()) throw PreconditionError("winning sets must be nonempty");
    std::sort(s.begin(), s.end());
    if (std::adjacent_find(s.begin(), s.end()) != s.end()) throw PreconditionError("repeated element in a winning set");
    if (s.front() < 0 || s.back() >= board_size) throw PreconditionError("winning set element outside the board");
  }
}

GameState::GameState(int board_size, Bias bias, Player first)
    : bias_(bias), first_(first), to_move_(first), free_(board_size) {
  if (board_size < 0) throw DomainError("negative board size");
  bias.validate();
  owner_.assign(static_cast<std::size_t>(board_size), Owner::none);
  quota_ = std::min(bias_.of(first), free_);
}

std::vector<Element> GameState::free_elements() const {
  std::vector<Element> out;
  for (Element e = 0; e < board_size(); ++e)
    if (owner_[e] == Owner::none) out.push_back(e);
  return out;
}

void GameState::next_turn() {
  to_move_ = other(to_move_);
  ++turn_;
  claimed_in_turn_ = 0;
  quota_ = std::min(bias_.of(to_move_), free_);
}

void GameState::claim(Element e) {
  if (free_ == 0) throw IllegalMove("game over", "the board is full");
  if (e < 0 || e >= board_size()) throw IllegalMove("out of range", "element " + std::to_string(e) + " is not on the board");
  if (owner_[e] != Owner::none) throw IllegalMove("claimed", "element " + std::to_string(e) + " is already claimed");
  owner_[e] = to_move_ == Player::maker ? Owner::maker : Owner::breaker;
  (to_move_ == Player::maker ? maker_ : breaker_).push_back(e);
  history_.push_back({to_move_, e, turn_});
  --free_;
  if (++claimed_in_turn_ >= quota_) next_turn();
}

void GameState::pass() {
  if (free_ == 0) throw IllegalMove("game over", "the board is full");
  history_.push_back({to_move_, -1, turn_});
  next_turn();
}

void GameState::check_invariants() const {
  std::set<Element> m(maker_.begin(), maker_.end()), b(breaker_.begin(), breaker_.end());
  if (m.size() != maker_.size() || b.size() != breaker_.size()) throw std::logic_error("repeated claim");
  for (Element e : m)
    if (b.count(e)) throw std::logic_error("element held by both players");
  if (static_cast<int>(m.size() + b.size()) + free_ != board_size()) throw std::logic_error("free count drifted");
  // Per-turn counts never exceed the bias.
  std::vector<int> per_turn(static_cast<std::size_t>(turn_ + 1), 0);
  for (const auto& mv : history_) {
    if (mv.element >= 0 && ++per_turn[mv.turn] > bias_.of(mv.player)) throw std::logic_error("turn exceeded bias");
    if (mv.player != ((mv.turn % 2 == 0) ? first_ : other(first_))) throw std::logic_error("move out of turn order");
  }
  const GameState r = replay(board_size(), bias_, first_, history_);
  if (r.owner_ != owner_ || r.turn_ != turn_ || r.to_move_ != to_move_) throw std::logic_error("history does not replay");
}

GameState GameState::replay(int board_size, Bias bias, Player first, const std::vector<Move>& history) {
  GameState s(board_size, bias, first);
  for (const auto& mv : history) {
    if (mv.player != s.to_move() || mv.turn != s.turn()) throw IllegalMove("wrong turn", "history out of order");
    if (mv.element < 0)
      s.pass();
    else
      s.claim(mv.element);
  }
  return s;
}

bool FamilyGoal::maker_won(const GameState& state) {
  for (const auto& s : family_.sets) {
    bool all = true;
    for (Element e : s)
      if (state.owner(e) != Owner::maker) {
        all = false;
        break;
      }
    if (all) {
      winning_ = s;
      return true;
    }
  }
  return false;
}

Graph maker_graph(const Graph& g, const GameState& state) {
  if (state.board_size() != static_cast<int>(g.m())) throw PreconditionError("board does not match the graph");
  return edge_subgraph(g, state.claims(Player::maker));
}

HamiltonGoal::HamiltonGoal(Graph g, SearchBudget budget) : g_(std::move(g)), budget_(budget) {}

bool HamiltonGoal::maker_won(const GameState& state) {
  const auto& mine = state.claims(Player::maker);
  if (mine.size() == checked_maker_) return !cycle_.empty();
  checked_maker_ = mine.size();
  if (!cycle_.empty()) return true;
  const int n = g_.n();
  if (n < 3 || static_cast<int>(mine.size()) < n) return false;
  const Graph m = maker_graph(g_, state);
  if (min_degree(m) < 2 || !is_connected(m)) return false;
  auto r = find_hamilton_cycle(m, budget_, mine.size());
  if (r.found && verify_hamilton_cycle(m, r.certificate)) {
    cycle_ = std::move(r.certificate);
    return true;
  }
  if (n <= 12)
    if (auto c = oracle::hamilton_cycle(m)) {
      cycle_ = std::move(*c);
      return true;
    }
  return false;
}

Transcript play(int board_size, Goal& goal, Strategy& maker, Strategy& breaker, Bias bias, PlayOptions opts) {
  Transcript t{GameState(board_size, bias, opts.first), Player::breaker, {}, std::nullopt, {}};
  GameState& s = t.final_state;
  auto record = [&] {
    if (opts.potential_family) t.potentials.push_back(potential(*opts.potential_family, s, bias.maker, bias.breaker));
  };
  record();
  while (!s.board_full()) {
    const Player p = s.to_move();
    const int need = s.remaining_in_turn();
    std::vector<Element> mv;
    std::string bad;
    try {
      mv = (p == Player::maker ? maker : breaker).move(s);
    } catch (const IllegalMove& ex) {
      bad = ex.reason();
    }
    if (!bad.empty()) {
    } else if (static_cast<int>(mv.size()) != need) {
      bad = "count";
    } else {
      std::set<Element> seen;
      for (Element e : mv) {
        if (e < 0 || e >= board_size) bad = "out of range";
        else if (!s.is_free(e)) bad = "claimed";
        else if (!seen.insert(e).second) bad = "repeated element";
        if (!bad.empty()) break;
      }
    }
    if (!bad.empty()) {
      t.forfeit = p;
      t.forfeit_reason = bad;
      t.winner = other(p);
      return t;
    }
    for (Element e : mv) {
      s.claim(e);
      if (p == Player::maker && goal.maker_won(s)) {
        t.winner = Player::maker;
        s.check_invariants();
        record();
        return t;
      }
    }
    s.check_invariants();
    record();
  }
  t.winner = goal.maker_won(s) ? Player::maker : Player::breaker;
  return t;
}

}  // namespace dham
