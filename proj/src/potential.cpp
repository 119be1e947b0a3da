#include "dham/potential.hpp"

#include <cmath>

namespace dham {

namespace {

void check_pq(int p, int q) {
  if (p < 1 || q < 1) throw DomainError("p and q must be positive integers");
}

double weight(int unclaimed, int p, int q) { return std::pow(1.0 + q, -static_cast<double>(unclaimed) / p); }

}  // namespace

BeckResult beck_criterion(const WinningFamily& f, int p, int q) {
  check_pq(p, q);
  BeckResult r;
  for (const auto& s : f.sets) r.value += weight(static_cast<int>(s.size()), p, q);
  r.breaker_wins_guaranteed = r.value < 1.0 / (1 + q);
  return r;
}

double potential(const WinningFamily& f, const GameState& state, int p, int q) {
  check_pq(p, q);
  double total = 0;
  for (const auto& s : f.sets) {
    int u = 0;
    bool dead = false;
    for (Element e : s) {
      if (state.owner(e) == Owner::breaker) {
        dead = true;
        break;
      }
      u += state.owner(e) == Owner::none;
    }
    if (!dead) total += weight(u, p, q);
  }
  return total;
}

std::vector<Element> breaker_potential_move(const WinningFamily& f, const GameState& state) {
  if (state.board_full() || state.to_move() != Player::breaker)
    throw PreconditionError("breaker_potential_move called when Breaker is not to move");
  const int p = state.bias().maker, q = state.bias().breaker;
  const int n = state.board_size();
  std::vector<Owner> own(static_cast<std::size_t>(n));
  for (Element e = 0; e < n; ++e) own[e] = state.owner(e);
  std::vector<Element> out;
  for (int k = 0; k < state.remaining_in_turn(); ++k) {
    std::vector<double> gain(static_cast<std::size_t>(n), 0.0);
    for (const auto& s : f.sets) {
      int u = 0;
      bool dead = false;
      for (Element e : s) {
        if (own[e] == Owner::breaker) {
          dead = true;
          break;
        }
        u += own[e] == Owner::none;
      }
      if (dead) continue;
      const double w = weight(u, p, q);
      for (Element e : s)
        if (own[e] == Owner::none) gain[e] += w;
    }
    Element best = -1;
    for (Element e = 0; e < n; ++e)
      if (own[e] == Owner::none && (best < 0 || gain[e] > gain[best])) best = e;
    own[best] = Owner::breaker;
    out.push_back(best);
  }
  return out;
}

}  // namespace dham
