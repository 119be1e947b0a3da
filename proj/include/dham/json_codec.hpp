#pragma once

#include <string>

#include "json.hpp"

#include "dham/classifier.hpp"
#include "dham/expander.hpp"
#include "dham/game.hpp"
#include "dham/graph.hpp"
#include "dham/random_lab.hpp"

namespace dham {

using Json = nlohmann::json;

Json to_json_value(const VertexSet& s);
Json to_json_value(const std::vector<Edge>& edges);

/// {"n": .., "edges": [[u, v], ...]}
Json graph_to_json(const Graph& g);

/**
   Graph from a request field: an object {"n", "edges"}, graph text, or a
   generator spec such as "complete:6", "cycle:5", "bipartite:3,4",
   "two-cliques-matching:6", "two-cliques-bridge:5", "random-dirac:10:7",
   "gnp:20:0.3:1". Throws ParseError.
 */
Graph graph_from_json(const Json& j);
/// Generator spec only (see graph_from_json). Throws ParseError.
Graph graph_from_spec(const std::string& spec);

Json classification_to_json(const Graph& g, const Classification& c, const ClassifierParams& params);
Json expansion_to_json(const ExpansionReport& r);

/// Claims, turn bookkeeping and the canonical hash.
Json game_state_to_json(const GameState& s);

/**
   Canonical serialization: one character per element ('.', 'M', 'B'),
   then "|" mover ('M' or 'B'), "|" claims left in the turn, "|" turn
   index. The hash is FNV-1a 64 of that string, as 16 lower-case hex digits.
 */
std::string canonical_state(const GameState& s);
std::string state_hash(const GameState& s);

/// moves: [[player, element, turn], ...] (passes omitted).
Json transcript_to_json(const Transcript& t);

Player player_from_string(const std::string& s);
/// "m:b" or "b" (Maker 1). Throws ParseError.
Bias bias_from_string(const std::string& s);

}  // namespace dham
