#include "dham/json_codec.hpp"

#include <cctype>
#include <cstdio>
#include <sstream>

#include "dham/errors.hpp"
#include "dham/generators.hpp"
#include "dham/graph_io.hpp"

namespace dham {

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(s);
  while (std::getline(is, cur, sep)) out.push_back(cur);
  return out;
}

int to_int(const std::string& s) {
  try {
    std::size_t used = 0;
    const int v = std::stoi(s, &used);
    if (used != s.size()) throw ParseError("bad integer '" + s + "'");
    return v;
  } catch (const std::logic_error&) {
    throw ParseError("bad integer '" + s + "'");
  }
}

double to_double(const std::string& s) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw ParseError("bad number '" + s + "'");
    return v;
  } catch (const std::logic_error&) {
    throw ParseError("bad number '" + s + "'");
  }
}

}  // namespace

Json to_json_value(const VertexSet& s) { return Json(std::vector<Vertex>(s.begin(), s.end())); }

Json to_json_value(const std::vector<Edge>& edges) {
  Json out = Json::array();
  for (const auto& [u, v] : edges) out.push_back({u, v});
  return out;
}

Json graph_to_json(const Graph& g) { return {{"n", g.n()}, {"edges", to_json_value(g.edges())}}; }

Graph graph_from_spec(const std::string& spec) {
  const auto parts = split(spec, ':');
  if (parts.size() < 2) throw ParseError("graph spec needs the form family:args");
  const std::string& fam = parts[0];
  auto need = [&](std::size_t k) {
    if (parts.size() != k) throw ParseError("graph spec '" + spec + "' has the wrong number of fields");
  };
  try {
    if (fam == "complete") return need(2), gen::complete(to_int(parts[1]));
    if (fam == "cycle") return need(2), gen::cycle(to_int(parts[1]));
    if (fam == "path") return need(2), gen::path(to_int(parts[1]));
    if (fam == "empty") return need(2), gen::empty(to_int(parts[1]));
    if (fam == "two-cliques-matching") return need(2), gen::two_cliques_matching(to_int(parts[1]));
    if (fam == "two-cliques-bridge") return need(2), gen::two_cliques_bridge(to_int(parts[1]));
    if (fam == "bipartite") {
      need(2);
      const auto ab = split(parts[1], ',');
      if (ab.size() != 2) throw ParseError("bipartite spec needs a,b");
      return gen::complete_bipartite(to_int(ab[0]), to_int(ab[1]));
    }
    if (fam == "random-dirac") return need(3), gen::random_dirac(to_int(parts[1]), static_cast<std::uint64_t>(to_int(parts[2])));
    if (fam == "gnp")
      return need(4), gen::gnp(to_int(parts[1]), to_double(parts[2]), static_cast<std::uint64_t>(to_int(parts[3])));
  } catch (const DomainError& e) {
    throw ParseError(std::string("graph spec '") + spec + "': " + e.what());
  }
  throw ParseError("unknown graph family '" + fam + "'");
}

Graph graph_from_json(const Json& j) {
  if (j.is_object()) return parse_graph_json(j.dump());
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && (std::isdigit(static_cast<unsigned char>(s[first])) || s[first] == '{'))
      return parse_graph(s);
    return graph_from_spec(s);
  }
  throw ParseError("graph must be an object or a string");
}

Json classification_to_json(const Graph& g, const Classification& c, const ClassifierParams& params) {
  Json j;
  j["kind"] = to_string(c.kind);
  j["a"] = c.a ? to_json_value(*c.a) : Json(nullptr);
  j["sparsest"] = {{"a", to_json_value(c.sparsest.a)}, {"b", to_json_value(c.sparsest.b)}, {"crossing", c.sparsest.crossing}};
  j["heuristic"] = c.heuristic;
  j["repair_moves"] = c.repair_moves;
  const Diagnostics& d = c.diagnostics;
  j["diagnostics"] = {{"n", d.n},
                      {"size_a", d.size_a},
                      {"cross_edges", d.cross_edges},
                      {"min_internal_degree_a", d.min_internal_degree_a},
                      {"min_internal_degree_complement", d.min_internal_degree_complement},
                      {"cross_min_degree", d.cross_min_degree},
                      {"max_internal_degree_a", d.max_internal_degree_a}};
  Json slack = Json::object();
  for (const auto& s : classification_slack(g, c, params)) slack[s.name] = s.value;
  j["slack"] = slack;
  j["verified"] = verify_classification(g, c, params);
  j["alpha"] = params.alpha;
  j["gamma"] = params.gamma;
  return j;
}

Json expansion_to_json(const ExpansionReport& r) {
  Json j;
  j["verdict"] = to_string(r.verdict);
  j["sets_checked"] = r.sets_checked;
  if (r.counterexample) {
    const auto& c = *r.counterexample;
    j["counterexample"] = {{"condition", c.condition},
                           {"x", to_json_value(c.x)},
                           {"y", to_json_value(c.y)},
                           {"observed", c.observed},
                           {"required", c.required}};
  } else {
    j["counterexample"] = nullptr;
  }
  j["hypothesis_slack"] = r.hypothesis_slack ? Json(*r.hypothesis_slack) : Json(nullptr);
  return j;
}

std::string canonical_state(const GameState& s) {
  std::string out;
  out.reserve(static_cast<std::size_t>(s.board_size()) + 16);
  for (Element e = 0; e < s.board_size(); ++e)
    out += s.owner(e) == Owner::maker ? 'M' : s.owner(e) == Owner::breaker ? 'B' : '.';
  out += '|';
  out += s.to_move() == Player::maker ? 'M' : 'B';
  out += '|' + std::to_string(s.remaining_in_turn()) + '|' + std::to_string(s.turn());
  return out;
}

std::string state_hash(const GameState& s) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : canonical_state(s)) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

Json game_state_to_json(const GameState& s) {
  return {{"board_size", s.board_size()},
          {"bias", {{"maker", s.bias().maker}, {"breaker", s.bias().breaker}}},
          {"first", to_string(s.first())},
          {"to_move", to_string(s.to_move())},
          {"turn", s.turn()},
          {"remaining_in_turn", s.remaining_in_turn()},
          {"maker", s.claims(Player::maker)},
          {"breaker", s.claims(Player::breaker)},
          {"free", s.free_count()},
          {"state_hash", state_hash(s)}};
}

Json transcript_to_json(const Transcript& t) {
  Json moves = Json::array();
  for (const Move& m : t.final_state.history())
    if (m.element >= 0) moves.push_back({to_string(m.player), m.element, m.turn});
  Json j{{"moves", moves}, {"winner", to_string(t.winner)}, {"state", game_state_to_json(t.final_state)}};
  if (!t.potentials.empty()) j["potentials"] = t.potentials;
  if (t.forfeit) j["forfeit"] = {{"player", to_string(*t.forfeit)}, {"reason", t.forfeit_reason}};
  return j;
}

Player player_from_string(const std::string& s) {
  if (s == "Maker" || s == "maker") return Player::maker;
  if (s == "Breaker" || s == "breaker") return Player::breaker;
  throw ParseError("player must be Maker or Breaker, got '" + s + "'");
}

Bias bias_from_string(const std::string& s) {
  const auto parts = split(s, ':');
  Bias b;
  if (parts.size() == 1) {
    b.breaker = to_int(parts[0]);
  } else if (parts.size() == 2) {
    b.maker = to_int(parts[0]);
    b.breaker = to_int(parts[1]);
  } else {
    throw ParseError("bias must be m:b or b");
  }
  if (b.maker < 1 || b.breaker < 1) throw ParseError("bias entries must be positive");
  return b;
}

}  // namespace dham
