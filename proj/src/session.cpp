#include "dham/session.hpp"

#include <ctime>
#include <fstream>
#include <random>
#include <set>

#include "dham/dirac_maker.hpp"
#include "dham/errors.hpp"
#include "dham/hamilton_oracle.hpp"
#include "dham/potential.hpp"
#include "dham/strategies.hpp"

namespace dham {

namespace {

std::string now_iso() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string default_engine(Player engine_role) { return engine_role == Player::maker ? "dirac" : "greedy-block"; }

std::unique_ptr<Strategy> make_engine(const SessionConfig& cfg) {
  const Player role = other(cfg.human);
  const std::string name = cfg.engine.empty() ? default_engine(role) : cfg.engine;
  if (name == "random") return std::make_unique<RandomStrategy>(cfg.seed);
  if (name == "first-free") return std::make_unique<FirstFreeStrategy>();
  if (role == Player::maker && name == "dirac") {
    DiracMakerOptions o;
    o.beta = cfg.beta;
    o.max_steps = cfg.max_steps;
    return maker_dirac_strategy(cfg.graph, cfg.bias.breaker, cfg.seed, o);
  }
  if (role == Player::breaker && name == "greedy-block") return std::make_unique<GreedyBlockBreaker>(cfg.graph);
  if (role == Player::breaker && name == "potential") {
    if (cfg.graph.n() > 12) throw DomainError("the potential engine needs n <= 12");
    WinningFamily f{oracle::enumerate_hamilton_cycles(cfg.graph, 200'000)};
    return std::make_unique<PotentialBreaker>(std::move(f));
  }
  throw ParseError("engine '" + name + "' cannot play " + to_string(role));
}

std::vector<Vertex> maker_overlay(const Graph& g, const GameState& s) {
  if (s.claims(Player::maker).empty()) return {};
  const std::vector<Vertex> p = long_path(maker_graph(g, s), 1, 20'000);
  return p.size() >= 2 ? p : std::vector<Vertex>{};
}

}  // namespace

Json Delta::to_json() const {
  Json j{{"ply", ply},
         {"player", dham::to_string(player)},
         {"elements", elements},
         {"state_hash", state_hash},
         {"maker_path_overlay", maker_path},
         {"finished", finished}};
  if (winner) j["winner"] = dham::to_string(*winner);
  return j;
}

SessionConfig session_config_from_json(const Json& body) {
  if (!body.is_object()) throw ParseError("request body must be a JSON object");
  SessionConfig c;
  try {
    if (!body.contains("graph")) throw ParseError("missing field 'graph'");
    c.graph = graph_from_json(body["graph"]);
    if (!body.contains("bias")) throw ParseError("missing field 'bias'");
    const Json& b = body["bias"];
    if (b.is_string()) {
      c.bias = bias_from_string(b.get<std::string>());
    } else if (b.is_object()) {
      c.bias = Bias{b.value("maker", 1), b.at("breaker").get<int>()};
    } else if (b.is_array() && b.size() == 2) {
      c.bias = Bias{b[0].get<int>(), b[1].get<int>()};
    } else {
      throw ParseError("bias must be \"m:b\", [m, b] or {maker, breaker}");
    }
    if (c.bias.maker < 1 || c.bias.breaker < 1) throw ParseError("bias entries must be positive");
    c.human = player_from_string(body.value("human_role", std::string("Breaker")));
    c.first = player_from_string(body.value("first", std::string("Maker")));
    c.engine = body.value("engine", std::string());
    if (body.contains("seed")) {
      c.seed = body["seed"].get<std::uint64_t>();
    } else {
      c.seed = std::random_device{}();
    }
    c.beta = body.value("beta", 1.0);
    c.max_steps = body.value("max_steps", static_cast<std::int64_t>(100'000));
  } catch (const Json::exception& e) {
    throw ParseError(std::string("malformed request: ") + e.what());
  }
  if (c.graph.m() == 0) throw ParseError("the graph has no edges");
  return c;
}

struct SessionManager::Session {
  std::string id;
  SessionConfig cfg;
  GameState state;
  HamiltonGoal goal;
  std::unique_ptr<Strategy> engine;
  std::vector<Delta> deltas;
  bool finished = false;
  bool deleted = false;
  std::optional<Player> winner;
  std::string created, updated;
  std::mutex mu;
  std::condition_variable cv;
  std::ofstream log;

  Session(std::string id_, SessionConfig c)
      : id(std::move(id_)),
        cfg(std::move(c)),
        state(static_cast<int>(cfg.graph.m()), cfg.bias, cfg.first),
        goal(cfg.graph, SearchBudget{4, cfg.max_steps}) {}

  void write(const Json& j) {
    if (log.is_open()) {
      log << j.dump() << '\n';
      log.flush();
    }
  }

  /// Claims one full turn for the player to move (elements already validated).
  const Delta& apply(const std::vector<Element>& elements, bool persist) {
    const Player p = state.to_move();
    Delta d;
    d.player = p;
    for (Element e : elements) {
      state.claim(e);
      d.elements.push_back(e);
      if (p == Player::maker && goal.maker_won(state)) {
        finished = true;
        winner = Player::maker;
        break;
      }
    }
    if (!finished && state.board_full()) {
      finished = true;
      winner = goal.maker_won(state) ? Player::maker : Player::breaker;
    }
    d.ply = static_cast<int>(deltas.size()) + 1;
    d.state_hash = state_hash(state);
    d.maker_path = p == Player::maker ? maker_overlay(cfg.graph, state)
                                      : (deltas.empty() ? std::vector<Vertex>{} : deltas.back().maker_path);
    d.finished = finished;
    d.winner = winner;
    updated = now_iso();
    deltas.push_back(std::move(d));
    if (persist) write(Json{{"delta", deltas.back().to_json()}});
    cv.notify_all();
    return deltas.back();
  }

  std::string check(const std::vector<Element>& elements) const {
    if (finished) return "game over";
    if (static_cast<int>(elements.size()) != state.remaining_in_turn()) return "count";
    std::set<Element> seen;
    for (Element e : elements) {
      if (e < 0 || e >= state.board_size()) return "out of range";
      if (!state.is_free(e)) return "claimed";
      if (!seen.insert(e).second) return "repeated element";
    }
    return {};
  }

  /// Engine turns until the human is to move or the game ends.
  std::vector<Delta> engine_reply() {
    std::vector<Delta> out;
    while (!finished && state.to_move() != cfg.human) {
      std::vector<Element> mv;
      std::string bad;
      try {
        mv = engine->move(state);
        bad = check(mv);
      } catch (const IllegalMove& ex) {
        bad = ex.reason();
      }
      if (!bad.empty()) {
        // An engine forfeit ends the game in the human's favour.
        finished = true;
        winner = cfg.human;
        write(Json{{"engine_forfeit", bad}});
        cv.notify_all();
        break;
      }
      out.push_back(apply(mv, true));
    }
    return out;
  }

  Json snapshot() const {
    Json j{{"id", id},
           {"graph", graph_to_json(cfg.graph)},
           {"bias", {{"maker", cfg.bias.maker}, {"breaker", cfg.bias.breaker}}},
           {"human_role", to_string(cfg.human)},
           {"engine", engine->name()},
           {"first", to_string(cfg.first)},
           {"seed", cfg.seed},
           {"ply", deltas.size()},
           {"state", game_state_to_json(state)},
           {"state_hash", state_hash(state)},
           {"finished", finished},
           {"winner", winner ? Json(to_string(*winner)) : Json(nullptr)},
           {"maker_path_overlay", deltas.empty() ? std::vector<Vertex>{} : deltas.back().maker_path},
           {"created", created},
           {"updated", updated}};
    if (winner == Player::maker && !goal.cycle().empty()) j["cycle"] = goal.cycle();
    return j;
  }
};

SessionManager::SessionManager(std::optional<std::filesystem::path> persist_dir) : dir_(std::move(persist_dir)) {
  salt_ = (static_cast<std::uint64_t>(std::random_device{}()) << 32) ^ std::random_device{}();
  if (dir_) std::filesystem::create_directories(*dir_);
}

SessionManager::~SessionManager() {
  std::lock_guard lk(mu_);
  for (auto& [id, s] : sessions_) {
    std::lock_guard sl(s->mu);
    s->deleted = true;
    s->cv.notify_all();
  }
}

std::shared_ptr<SessionManager::Session> SessionManager::find(const std::string& id) const {
  std::lock_guard lk(mu_);
  auto it = sessions_.find(id);
  if (it == sessions_.end()) throw SessionNotFound("no session " + id);
  return it->second;
}

std::shared_ptr<SessionManager::Session> SessionManager::build(const std::string& id, const SessionConfig& cfg) {
  auto s = std::make_shared<Session>(id, cfg);
  s->engine = make_engine(cfg);
  s->created = s->updated = now_iso();
  return s;
}

std::string SessionManager::create(const SessionConfig& cfg) {
  std::string id;
  {
    std::lock_guard lk(mu_);
    char buf[24];
    std::snprintf(buf, sizeof buf, "g%016llx", static_cast<unsigned long long>(salt_ ^ (++counter_ * 0x9E3779B97F4A7C15ull)));
    id = buf;
  }
  auto s = build(id, cfg);
  std::lock_guard sl(s->mu);
  if (dir_) {
    s->log.open(*dir_ / (id + ".jsonl"), std::ios::app);
    s->write(Json{{"create",
                   {{"id", id},
                    {"graph", graph_to_json(cfg.graph)},
                    {"bias", std::to_string(cfg.bias.maker) + ":" + std::to_string(cfg.bias.breaker)},
                    {"human_role", to_string(cfg.human)},
                    {"first", to_string(cfg.first)},
                    {"engine", cfg.engine},
                    {"seed", cfg.seed},
                    {"beta", cfg.beta},
                    {"max_steps", cfg.max_steps}}}});
  }
  {
    std::lock_guard lk(mu_);
    sessions_[id] = s;
  }
  s->engine_reply();
  return id;
}

Json SessionManager::snapshot(const std::string& id) {
  auto s = find(id);
  std::lock_guard sl(s->mu);
  return s->snapshot();
}

Json SessionManager::post_moves(const std::string& id, const std::vector<Element>& elements) {
  auto s = find(id);
  std::lock_guard sl(s->mu);
  if (s->deleted) throw SessionNotFound("no session " + id);
  if (s->finished) throw MoveRejected("game over", "the game is over");
  if (s->state.to_move() != s->cfg.human) throw MoveRejected("wrong turn", "it is the engine's turn");
  if (const std::string bad = s->check(elements); !bad.empty()) {
    std::string what = bad;
    if (bad == "count")
      what = "expected " + std::to_string(s->state.remaining_in_turn()) + " elements, got " + std::to_string(elements.size());
    throw MoveRejected(bad, what);
  }
  Json deltas = Json::array();
  deltas.push_back(s->apply(elements, true).to_json());
  Json engine = Json::array();
  for (const Delta& d : s->engine_reply()) {
    deltas.push_back(d.to_json());
    engine.push_back(d.elements);
  }
  return {{"accepted", elements}, {"engine_moves", engine}, {"deltas", deltas}, {"state", s->snapshot()}};
}

bool SessionManager::remove(const std::string& id) {
  std::shared_ptr<Session> s;
  {
    std::lock_guard lk(mu_);
    auto it = sessions_.find(id);
    if (it == sessions_.end()) return false;
    s = it->second;
    sessions_.erase(it);
  }
  std::lock_guard sl(s->mu);
  s->deleted = true;
  s->write(Json{{"delete", true}});
  s->cv.notify_all();
  return true;
}

std::vector<Delta> SessionManager::deltas_after(const std::string& id, int after_ply, std::chrono::milliseconds wait,
                                                bool& closed) {
  auto s = find(id);
  std::unique_lock sl(s->mu);
  auto ready = [&] { return s->deleted || s->finished || static_cast<int>(s->deltas.size()) > after_ply; };
  s->cv.wait_for(sl, wait, ready);
  std::vector<Delta> out;
  for (std::size_t i = static_cast<std::size_t>(std::max(after_ply, 0)); i < s->deltas.size(); ++i) out.push_back(s->deltas[i]);
  closed = s->deleted || s->finished;
  return out;
}

int SessionManager::restore() {
  if (!dir_) return 0;
  int restored = 0;
  for (const auto& entry : std::filesystem::directory_iterator(*dir_)) {
    if (entry.path().extension() != ".jsonl") continue;
    std::ifstream in(entry.path());
    std::string line;
    std::shared_ptr<Session> s;
    bool deleted = false;
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      const Json j = Json::parse(line, nullptr, false);
      if (j.is_discarded()) throw ParseError("corrupt persistence line in " + entry.path().string());
      if (j.contains("create")) {
        const Json& c = j["create"];
        SessionConfig cfg = session_config_from_json(c);
        s = build(c.at("id").get<std::string>(), cfg);
      } else if (j.contains("delta") && s) {
        const Json& d = j["delta"];
        s->apply(d.at("elements").get<std::vector<Element>>(), false);
        if (s->deltas.back().state_hash != d.at("state_hash").get<std::string>())
          throw ParseError("replayed state hash differs in " + entry.path().string());
      } else if (j.contains("engine_forfeit") && s) {
        s->finished = true;
        s->winner = s->cfg.human;
      } else if (j.contains("delete")) {
        deleted = true;
      }
    }
    if (!s || deleted) continue;
    s->log.open(entry.path(), std::ios::app);
    std::lock_guard lk(mu_);
    sessions_[s->id] = s;
    ++restored;
  }
  return restored;
}

std::size_t SessionManager::size() const {
  std::lock_guard lk(mu_);
  return sessions_.size();
}

}  // namespace dham
