#pragma once

#include <vector>

#include "dham/game.hpp"

namespace dham {

struct BeckResult {
  double value = 0;
  bool breaker_wins_guaranteed = true;
};

/// Sum over B of (1+q)^(-|B|/p), flagged when below 1/(1+q).
BeckResult beck_criterion(const WinningFamily& f, int p, int q);

/// Sum over Breaker-free B of (1+q)^(-u(B)/p), u(B) = |B minus Maker's claims|.
double potential(const WinningFamily& f, const GameState& state, int p, int q);

/**
   Breaker's greedy potential reply: min(remaining claims, free) elements
   chosen one at a time, each removing the largest potential mass (the
   weights of surviving sets through it); ties to the lowest id. Weights
   use the state's bias as (p:q).
 */
std::vector<Element> breaker_potential_move(const WinningFamily& f, const GameState& state);

class PotentialBreaker : public Strategy {
 public:
  explicit PotentialBreaker(WinningFamily f) : family_(std::move(f)) {}
  std::vector<Element> move(const GameState& state) override { return breaker_potential_move(family_, state); }
  std::string name() const override { return "potential"; }

 private:
  WinningFamily family_;
};

}  // namespace dham
