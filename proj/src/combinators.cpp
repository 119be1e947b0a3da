#include "dham/combinators.hpp"

#include <algorithm>
#include <stdexcept>

namespace dham {

SplitBoard::SplitBoard(int board_size, std::vector<std::vector<Element>> partition,
                       std::vector<std::unique_ptr<Strategy>> subs)
    : parts_(std::move(partition)), subs_(std::move(subs)) {
  if (parts_.empty() || parts_.size() != subs_.size())
    throw PreconditionError("need one sub-strategy per sub-board, and at least one board");
  board_of_.assign(static_cast<std::size_t>(board_size), -1);
  local_of_.assign(static_cast<std::size_t>(board_size), -1);
  for (std::size_t j = 0; j < parts_.size(); ++j)
    for (std::size_t i = 0; i < parts_[j].size(); ++i) {
      const Element e = parts_[j][i];
      if (e < 0 || e >= board_size) throw PreconditionError("partition element outside the board");
      if (board_of_[e] >= 0) throw PreconditionError("partition boards overlap");
      board_of_[e] = static_cast<int>(j);
      local_of_[e] = static_cast<int>(i);
    }
  for (int b : board_of_)
    if (b < 0) throw PreconditionError("partition does not cover the board");
  virt_.resize(parts_.size());
  pending_.resize(parts_.size());
}

std::vector<Element> SplitBoard::move(const GameState& state) {
  if (state.bias().maker != 1) throw PreconditionError("split_board needs Maker bias 1");
  if (state.board_size() != static_cast<int>(board_of_.size())) throw PreconditionError("board size changed");
  const int a = boards();
  if (!virt_[0])
    for (int j = 0; j < a; ++j)
      virt_[j].emplace(static_cast<int>(parts_[j].size()), Bias{1, a * state.bias().breaker}, Player::breaker);
  const auto& hist = state.history();
  for (; synced_ < hist.size(); ++synced_) {
    const Move& mv = hist[synced_];
    if (mv.player == Player::breaker && mv.element >= 0)
      pending_[board_of_[mv.element]].push_back(local_of_[mv.element]);
  }
  for (int step = 0; step < a; ++step) {
    const int j = (next_board_ + step) % a;
    GameState& v = *virt_[j];
    const int count = static_cast<int>(pending_[j].size());
    for (Element local : pending_[j]) {
      if (v.to_move() != Player::breaker) throw std::logic_error("split_board delivery exceeded the virtual bias");
      v.claim(local);
    }
    pending_[j].clear();
    if (v.board_full()) continue;
    if (v.to_move() == Player::breaker) v.pass();
    std::vector<Element> sub = subs_[j]->move(v);
    if (sub.size() != 1 || sub[0] < 0 || sub[0] >= v.board_size() || !v.is_free(sub[0]))
      throw IllegalMove("sub-strategy", "sub-strategy " + std::to_string(j) + " made an illegal move");
    v.claim(sub[0]);
    next_board_ = (j + 1) % a;
    visits_.push_back(j);
    delivered_.push_back(count);
    return {parts_[j][sub[0]]};
  }
  throw std::logic_error("split_board found no board with a free element");
}

std::unique_ptr<SplitBoard> split_board(int board_size, std::vector<std::vector<Element>> partition,
                                        std::vector<std::unique_ptr<Strategy>> subs) {
  return std::make_unique<SplitBoard>(board_size, std::move(partition), std::move(subs));
}

FakeBias::FakeBias(std::unique_ptr<Strategy> inner, int b0) : inner_(std::move(inner)), b0_(b0) {
  if (!inner_) throw PreconditionError("fake_bias needs an inner strategy");
  if (b0 < 1) throw DomainError("b0 must be positive");
}

Element FakeBias::fresh_fake(const GameState& real) const {
  for (Element e = 0; e < real.board_size(); ++e)
    if (real.is_free(e) && !fake_[e] && virt_->is_free(e)) return e;
  return -1;
}

std::vector<Element> FakeBias::move(const GameState& state) {
  const int b = state.bias().breaker;
  if (b > b0_) throw DomainError("actual Breaker bias exceeds b0");
  if (!virt_) {
    virt_.emplace(state.board_size(), Bias{state.bias().maker, b0_}, state.first());
    fake_.assign(static_cast<std::size_t>(state.board_size()), 0);
  }
  GameState& v = *virt_;
  const auto& hist = state.history();
  while (synced_ < hist.size()) {
    if (hist[synced_].player != Player::breaker) {
      ++synced_;
      continue;
    }
    // One real Breaker turn.
    const int turn = hist[synced_].turn;
    int count = 0;
    for (; synced_ < hist.size() && hist[synced_].player == Player::breaker && hist[synced_].turn == turn; ++synced_) {
      const Element e = hist[synced_].element;
      if (e < 0 || v.board_full()) continue;
      if (fake_[e]) {
        fake_[e] = 0;
        ++replacements_;
        const Element f = fresh_fake(state);
        if (f < 0) continue;
        fake_[f] = 1;
        v.claim(f);
      } else {
        v.claim(e);
      }
      ++count;
    }
    for (int k = 0; k < b0_ - b && !v.board_full() && v.to_move() == Player::breaker; ++k) {
      const Element f = fresh_fake(state);
      if (f < 0) break;
      fake_[f] = 1;
      v.claim(f);
      ++count;
    }
    if (!v.board_full() && v.to_move() == Player::breaker) v.pass();
    delivered_.push_back(count);
  }

  std::vector<Element> out;
  if (!v.board_full() && v.to_move() == Player::maker) {
    out = inner_->move(v);
    for (Element e : out) {
      if (e < 0 || e >= v.board_size() || !v.is_free(e))
        throw IllegalMove("inner", "inner strategy made an illegal move");
      v.claim(e);
    }
  }
  // The inner game ran out while the real one did not: claim fakes.
  for (Element e = 0; e < state.board_size() && static_cast<int>(out.size()) < state.remaining_in_turn(); ++e) {
    if (!state.is_free(e) || std::find(out.begin(), out.end(), e) != out.end()) continue;
    fake_[e] = 0;
    out.push_back(e);
    ++fallbacks_;
  }
  return out;
}

std::unique_ptr<Strategy> fake_bias(std::unique_ptr<Strategy> inner, int b0, int actual_b) {
  if (actual_b < 1) throw DomainError("Breaker bias must be positive");
  if (actual_b > b0) throw DomainError("fake_bias needs actual b <= b0");
  if (actual_b == b0) return inner;
  return std::make_unique<FakeBias>(std::move(inner), b0);
}

}  // namespace dham
