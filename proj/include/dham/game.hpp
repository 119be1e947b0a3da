#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "dham/errors.hpp"
#include "dham/graph.hpp"
#include "dham/rotation.hpp"

namespace dham {

/// Board element id, dense in 0..board_size-1. On a graph board the element
/// is the edge id.
using Element = int;

enum class Player { maker, breaker };
const char* to_string(Player p);
inline Player other(Player p) { return p == Player::maker ? Player::breaker : Player::maker; }

enum class Owner : std::int8_t { none, maker, breaker };

/// (m : b) claims per turn.
struct Bias {
  int maker = 1;
  int breaker = 1;

  int of(Player p) const { return p == Player::maker ? maker : breaker; }
  void validate() const;
};

/// Winning sets as sorted element lists.
struct WinningFamily {
  std::vector<std::vector<Element>> sets;

  /// Sorts each set; throws PreconditionError on empty sets, duplicates
  /// inside a set, or elements outside the board.
  void normalize(int board_size);
};

/// Claim rejected by GameState. reason() is a short code: "claimed",
/// "out of range", "game over", "count", "wrong turn".
class IllegalMove : public PreconditionError {
 public:
  IllegalMove(const std::string& reason, const std::string& what) : PreconditionError(what), reason_(reason) {}
  const std::string& reason() const { return reason_; }

 private:
  std::string reason_;
};

/// element -1 marks a pass (a turn ended early, used by virtual games).
struct Move {
  Player player = Player::maker;
  Element element = -1;
  int turn = 0;
};

/**
   Claims, whose turn it is and how many claims remain in the turn. A turn
   has quota min(bias of the mover, free elements at turn start), so the
   last turn is short when the board runs out.
 */
class GameState {
 public:
  GameState(int board_size, Bias bias, Player first);

  int board_size() const { return static_cast<int>(owner_.size()); }
  Bias bias() const { return bias_; }
  Player first() const { return first_; }
  Player to_move() const { return to_move_; }
  int turn() const { return turn_; }
  int remaining_in_turn() const { return quota_ - claimed_in_turn_; }
  int claimed_in_turn() const { return claimed_in_turn_; }

  Owner owner(Element e) const { return owner_[e]; }
  bool is_free(Element e) const { return owner_[e] == Owner::none; }
  int free_count() const { return free_; }
  bool board_full() const { return free_ == 0; }
  const std::vector<Element>& claims(Player p) const { return p == Player::maker ? maker_ : breaker_; }
  const std::vector<Move>& history() const { return history_; }
  std::vector<Element> free_elements() const;

  /// Claim by the player to move. Throws IllegalMove.
  void claim(Element e);
  /// Ends the current turn with claims left unused.
  void pass();

  /// Disjointness, per-turn counts and history replay; throws std::logic_error.
  void check_invariants() const;

  static GameState replay(int board_size, Bias bias, Player first, const std::vector<Move>& history);

 private:
  Bias bias_;
  Player first_;
  Player to_move_;
  int turn_ = 0;
  int quota_ = 0;
  int claimed_in_turn_ = 0;
  int free_ = 0;
  std::vector<Owner> owner_;
  std::vector<Element> maker_;
  std::vector<Element> breaker_;
  std::vector<Move> history_;

  void next_turn();
};

/// A player. move() returns exactly state.remaining_in_turn() distinct free
/// elements; it is called once per turn on the player's own turn.
class Strategy {
 public:
  virtual ~Strategy() = default;
  virtual std::vector<Element> move(const GameState& state) = 0;
  virtual std::string name() const = 0;
};

/// Decides whether Maker's claims already contain a winning structure.
class Goal {
 public:
  virtual ~Goal() = default;
  virtual bool maker_won(const GameState& state) = 0;
};

class FamilyGoal : public Goal {
 public:
  explicit FamilyGoal(WinningFamily f) : family_(std::move(f)) {}
  bool maker_won(const GameState& state) override;
  /// The set Maker completed, after maker_won returned true.
  const std::vector<Element>& winning_set() const { return winning_; }
  const WinningFamily& family() const { return family_; }

 private:
  WinningFamily family_;
  std::vector<Element> winning_;
};

/**
   Hamiltonicity game on a graph board. The family of Hamilton cycles is
   never built; Maker's graph is tested on each claim by the rotation
   engine, with the exact oracle for n <= 12.
 */
class HamiltonGoal : public Goal {
 public:
  explicit HamiltonGoal(Graph g, SearchBudget budget = {4, 50'000});
  bool maker_won(const GameState& state) override;
  const std::vector<Vertex>& cycle() const { return cycle_; }
  const Graph& graph() const { return g_; }

 private:
  Graph g_;
  SearchBudget budget_;
  std::vector<Vertex> cycle_;
  std::size_t checked_maker_ = 0;
};

/// Maker's claims as a spanning subgraph of the board graph.
Graph maker_graph(const Graph& g, const GameState& state);

struct Transcript {
  GameState final_state;
  Player winner = Player::breaker;
  std::vector<double> potentials;  // after each turn, when a family was given
  std::optional<Player> forfeit;
  std::string forfeit_reason;
};

struct PlayOptions {
  Player first = Player::maker;
  /// When set, records potential(family) with weights from the bias after each turn.
  const WinningFamily* potential_family = nullptr;
};

/**
   Runs the game to board exhaustion or an earlier Maker win. An illegal
   strategy answer ends the game as a forfeit against the offender.
 */
Transcript play(int board_size, Goal& goal, Strategy& maker, Strategy& breaker, Bias bias, PlayOptions opts = {});

}  // namespace dham
