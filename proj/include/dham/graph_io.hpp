#pragma once

#include <string>
#include <string_view>

#include "dham/graph.hpp"

namespace dham {

/// Text format: first line "n m", then m lines "u v" with 0-based u < v.
Graph parse_graph_text(std::string_view text);
/// JSON format: {"n": int, "edges": [[u, v], ...]}.
Graph parse_graph_json(std::string_view text);
/// Dispatches on the first non-blank character ('{' means JSON).
Graph parse_graph(std::string_view text);
Graph read_graph_file(const std::string& path);

std::string to_text(const Graph& g);
std::string to_json(const Graph& g);

}  // namespace dham
