#include "dham/exhaustive.hpp"

#include <bit>

namespace dham {

GameSolver::GameSolver(int board_size, WinningFamily f, Bias bias, std::size_t max_states)
    : size_(board_size), bias_(bias), max_states_(max_states) {
  if (board_size > kExhaustiveMaxBoard)
    throw BudgetExceeded("exhaustive play needs at most " + std::to_string(kExhaustiveMaxBoard) + " elements");
  bias.validate();
  f.normalize(board_size);
  for (const auto& s : f.sets) {
    std::uint32_t m = 0;
    for (Element e : s) m |= 1U << e;
    sets_.push_back(m);
  }
}

std::uint32_t GameSolver::mask(const GameState& s, Player p) {
  std::uint32_t m = 0;
  for (Element e : s.claims(p)) m |= 1U << e;
  return m;
}

bool GameSolver::maker_wins(std::uint32_t mk, std::uint32_t bk, Player mover, int claimed) {
  bool alive = false;
  for (auto s : sets_) {
    if ((s & mk) == s) return true;
    if (!(s & bk)) alive = true;
  }
  const std::uint32_t full = size_ == 32 ? ~0U : ((1U << size_) - 1);
  const std::uint32_t freem = full & ~(mk | bk);
  if (!alive || freem == 0) return false;
  const std::uint64_t key = mk | (static_cast<std::uint64_t>(bk) << 16) |
                            (static_cast<std::uint64_t>(mover == Player::maker) << 32) |
                            (static_cast<std::uint64_t>(claimed) << 33);
  if (auto it = memo_.find(key); it != memo_.end()) return it->second;
  if (memo_.size() >= max_states_) throw BudgetExceeded("exhaustive solver exceeded its state cap");
  // Quota of this turn: the bias, capped by what was free when it began.
  const int quota = std::min(bias_.of(mover), std::popcount(freem) + claimed);
  bool result = mover == Player::breaker;
  for (std::uint32_t rest = freem; rest; rest &= rest - 1) {
    const std::uint32_t bit = rest & (~rest + 1);
    const bool last = claimed + 1 >= quota;
    const Player next = last ? other(mover) : mover;
    const int nc = last ? 0 : claimed + 1;
    const bool w = mover == Player::maker ? maker_wins(mk | bit, bk, next, nc) : maker_wins(mk, bk | bit, next, nc);
    if (mover == Player::maker && w) {
      result = true;
      break;
    }
    if (mover == Player::breaker && !w) {
      result = false;
      break;
    }
  }
  memo_.emplace(key, result);
  return result;
}

Player GameSolver::winner(const GameState& state) {
  if (state.board_size() != size_) throw PreconditionError("state is for a different board");
  return maker_wins(mask(state, Player::maker), mask(state, Player::breaker), state.to_move(), state.claimed_in_turn())
             ? Player::maker
             : Player::breaker;
}

Element GameSolver::best_claim(const GameState& state) {
  if (state.board_full()) throw PreconditionError("no free element");
  const Player me = state.to_move();
  Element fallback = -1;
  for (Element e = 0; e < size_; ++e) {
    if (!state.is_free(e)) continue;
    if (fallback < 0) fallback = e;
    GameState next = state;
    next.claim(e);
    if (winner(next) == me) return e;
  }
  return fallback;
}

Player exhaustive_value(int board_size, const WinningFamily& f, Bias bias, Player first) {
  GameSolver solver(board_size, f, bias);
  return solver.winner(GameState(board_size, bias, first));
}

std::vector<Element> MinimaxStrategy::move(const GameState& state) {
  GameState s = state;
  std::vector<Element> out;
  const Player me = state.to_move();
  while (!s.board_full() && s.to_move() == me && static_cast<int>(out.size()) < state.remaining_in_turn()) {
    const Element e = solver_.best_claim(s);
    out.push_back(e);
    s.claim(e);
  }
  return out;
}

}  // namespace dham
