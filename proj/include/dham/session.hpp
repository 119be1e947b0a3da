#pragma once

#include <chrono>
#include <condition_variable>
#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>

#include "dham/game.hpp"
#include "dham/json_codec.hpp"

namespace dham {

struct SessionConfig {
  Graph graph;
  Bias bias;
  Player human = Player::breaker;
  Player first = Player::maker;
  std::string engine;  // empty: "dirac" for an engine Maker, "greedy-block" for an engine Breaker
  std::uint64_t seed = 0;
  double beta = 1.0;
  std::int64_t max_steps = 100'000;  // engine budget per reply
};

/// Parses a POST /games body. Throws ParseError.
SessionConfig session_config_from_json(const Json& body);

/// One player's turn as pushed on the stream.
struct Delta {
  int ply = 0;  // 1-based
  Player player = Player::maker;
  std::vector<Element> elements;
  std::string state_hash;  // after the turn
  std::vector<Vertex> maker_path;
  bool finished = false;
  std::optional<Player> winner;

  Json to_json() const;
};

class SessionNotFound : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// reason(): "wrong turn", "claimed", "count", "out of range", "repeated element", "game over".
class MoveRejected : public std::runtime_error {
 public:
  MoveRejected(std::string reason, const std::string& what) : std::runtime_error(what), reason_(std::move(reason)) {}
  const std::string& reason() const { return reason_; }

 private:
  std::string reason_;
};

/**
   In-memory game sessions. Each session has one mutex; a move request
   holds it while the engine computes its reply. With a persist directory
   every session appends JSON lines ({"create": ...}, {"delta": ...},
   {"delete": true}) to <dir>/<id>.jsonl.
 */
class SessionManager {
 public:
  explicit SessionManager(std::optional<std::filesystem::path> persist_dir = std::nullopt);
  ~SessionManager();

  /// Creates a session; the engine moves first when it is the first player.
  std::string create(const SessionConfig& cfg);
  Json snapshot(const std::string& id);
  /// Applies the human turn and the engine reply. Returns the new deltas and the snapshot.
  Json post_moves(const std::string& id, const std::vector<Element>& elements);
  bool remove(const std::string& id);

  /// Deltas with ply > after_ply; waits up to `wait` for new ones.
  /// `closed` is set when the game is over or the session is gone.
  std::vector<Delta> deltas_after(const std::string& id, int after_ply, std::chrono::milliseconds wait, bool& closed);

  /// Rebuilds sessions from the persist directory by replaying their deltas.
  int restore();
  std::size_t size() const;

 private:
  struct Session;
  std::optional<std::filesystem::path> dir_;
  mutable std::mutex mu_;
  std::map<std::string, std::shared_ptr<Session>> sessions_;
  std::uint64_t counter_ = 0;
  std::uint64_t salt_;

  std::shared_ptr<Session> find(const std::string& id) const;
  std::shared_ptr<Session> build(const std::string& id, const SessionConfig& cfg);
};

}  // namespace dham
