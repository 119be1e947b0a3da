#pragma once

#include <cstdint>
#include <unordered_map>

#include "dham/game.hpp"

namespace dham {

inline constexpr int kExhaustiveMaxBoard = 16;

/**
   Memoized minimax over claim states (Maker mask, Breaker mask, mover,
   claims made in the current turn). Maker wins a position iff some line
   completes a winning set before the board fills.
 */
class GameSolver {
 public:
  GameSolver(int board_size, WinningFamily f, Bias bias, std::size_t max_states = 20'000'000);

  /// Game value of the position under optimal play.
  Player winner(const GameState& state);
  /// The mover's next claim: lowest-id element keeping a won position won,
  /// otherwise the lowest free element.
  Element best_claim(const GameState& state);
  std::size_t states() const { return memo_.size(); }

 private:
  int size_;
  Bias bias_;
  std::vector<std::uint32_t> sets_;
  std::size_t max_states_;
  std::unordered_map<std::uint64_t, bool> memo_;

  bool maker_wins(std::uint32_t mk, std::uint32_t bk, Player mover, int claimed);
  static std::uint32_t mask(const GameState& s, Player p);
};

/// Value of the game from the empty board. Throws BudgetExceeded above
/// kExhaustiveMaxBoard elements or when the memo outgrows its cap.
Player exhaustive_value(int board_size, const WinningFamily& f, Bias bias, Player first);

class MinimaxStrategy : public Strategy {
 public:
  MinimaxStrategy(int board_size, WinningFamily f, Bias bias) : solver_(board_size, std::move(f), bias) {}
  std::vector<Element> move(const GameState& state) override;
  std::string name() const override { return "minimax"; }

 private:
  GameSolver solver_;
};

}  // namespace dham
