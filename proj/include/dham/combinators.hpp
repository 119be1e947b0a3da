#pragma once

#include <memory>
#include <vector>

#include "dham/game.hpp"

namespace dham {

/**
   Maker strategy that splits the board into a sub-boards and visits them
   round-robin, one Maker claim per turn. Sub-strategy j plays a virtual
   (1 : a*b) game on its board (local ids = positions in partition[j]) as
   the second player; every Breaker claim made in its board since its last
   move is delivered as one virtual Breaker turn before it moves. Boards
   with no free element are skipped. Requires Maker bias 1.
 */
class SplitBoard : public Strategy {
 public:
  SplitBoard(int board_size, std::vector<std::vector<Element>> partition, std::vector<std::unique_ptr<Strategy>> subs);

  std::vector<Element> move(const GameState& state) override;
  std::string name() const override { return "split-board"; }

  int boards() const { return static_cast<int>(parts_.size()); }
  /// Breaker elements delivered before each sub-move, in order.
  const std::vector<int>& delivered() const { return delivered_; }
  /// Board visited by each sub-move, in order.
  const std::vector<int>& visits() const { return visits_; }
  const GameState* virtual_state(int j) const { return virt_[j] ? &*virt_[j] : nullptr; }

 private:
  std::vector<std::vector<Element>> parts_;
  std::vector<std::unique_ptr<Strategy>> subs_;
  std::vector<int> board_of_;
  std::vector<int> local_of_;
  std::vector<std::optional<GameState>> virt_;
  std::vector<std::vector<Element>> pending_;
  std::size_t synced_ = 0;
  int next_board_ = 0;
  std::vector<int> delivered_;
  std::vector<int> visits_;
};

std::unique_ptr<SplitBoard> split_board(int board_size, std::vector<std::vector<Element>> partition,
                                        std::vector<std::unique_ptr<Strategy>> subs);

/**
   Maker strategy facing bias b that runs `inner` as if Breaker had bias b0.
   After each real Breaker turn the inner game receives that turn's claims
   plus b0 - b fake claims on free elements (lowest id). A real claim of a
   fake element is replaced by a fresh fake. Fakes are free in the real
   game and never Maker-held. When fakes fill the inner board, Maker claims
   a fake element itself.
 */
class FakeBias : public Strategy {
 public:
  FakeBias(std::unique_ptr<Strategy> inner, int b0);

  std::vector<Element> move(const GameState& state) override;
  std::string name() const override { return "fake-bias(" + inner_->name() + ")"; }

  const std::vector<char>& fakes() const { return fake_; }
  /// Breaker elements (real plus fake) delivered per virtual Breaker turn.
  const std::vector<int>& delivered() const { return delivered_; }
  int replacements() const { return replacements_; }
  int fallbacks() const { return fallbacks_; }
  const GameState* virtual_state() const { return virt_ ? &*virt_ : nullptr; }

 private:
  std::unique_ptr<Strategy> inner_;
  int b0_;
  std::optional<GameState> virt_;
  std::vector<char> fake_;
  std::size_t synced_ = 0;
  std::vector<int> delivered_;
  int replacements_ = 0;
  int fallbacks_ = 0;

  Element fresh_fake(const GameState& real) const;
};

/// Identity when actual_b == b0; DomainError when actual_b > b0.
std::unique_ptr<Strategy> fake_bias(std::unique_ptr<Strategy> inner, int b0, int actual_b);

}  // namespace dham
