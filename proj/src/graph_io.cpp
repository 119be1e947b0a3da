#include "dham/graph_io.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

#include "dham/errors.hpp"

namespace dham {

namespace {

Graph build_checked(int n, const std::vector<Edge>& edges) {
  try {
    return Graph(n, edges);
  } catch (const InvalidSet& e) {
    throw ParseError(e.what());
  }
}

}  // namespace

Graph parse_graph_text(std::string_view text) {
  std::istringstream in{std::string(text)};
  long long n = 0, m = 0;
  if (!(in >> n >> m)) throw ParseError("graph text: expected header 'n m'");
  if (n < 0 || m < 0) throw ParseError("graph text: negative header value");
  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(m));
  for (long long i = 0; i < m; ++i) {
    long long u = 0, v = 0;
    if (!(in >> u >> v)) throw ParseError("graph text: expected " + std::to_string(m) + " edge lines, got " + std::to_string(i));
    if (u == v) throw ParseError("graph text: self-loop at vertex " + std::to_string(u));
    if (u > v) throw ParseError("graph text: edge lines must satisfy u < v (line " + std::to_string(i + 2) + ")");
    if (u < 0 || v >= n) throw ParseError("graph text: vertex out of range on line " + std::to_string(i + 2));
    edges.emplace_back(static_cast<Vertex>(u), static_cast<Vertex>(v));
  }
  std::string rest;
  if (in >> rest) throw ParseError("graph text: trailing content after " + std::to_string(m) + " edges");
  return build_checked(static_cast<int>(n), edges);
}

Graph parse_graph_json(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("graph json: ") + e.what());
  }
  if (!j.is_object() || !j.contains("n") || !j.contains("edges") || !j["n"].is_number_integer() ||
      !j["edges"].is_array())
    throw ParseError("graph json: expected {\"n\": int, \"edges\": [[u,v],...]}");
  const long long n = j["n"].get<long long>();
  if (n < 0) throw ParseError("graph json: negative n");
  std::vector<Edge> edges;
  for (const auto& e : j["edges"]) {
    if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() || !e[1].is_number_integer())
      throw ParseError("graph json: each edge must be a pair of integers");
    long long u = e[0].get<long long>(), v = e[1].get<long long>();
    if (u < 0 || v < 0 || u >= n || v >= n) throw ParseError("graph json: vertex out of range");
    edges.emplace_back(static_cast<Vertex>(u), static_cast<Vertex>(v));
  }
  return build_checked(static_cast<int>(n), edges);
}

Graph parse_graph(std::string_view text) {
  auto pos = text.find_first_not_of(" \t\r\n");
  if (pos != std::string_view::npos && text[pos] == '{') return parse_graph_json(text);
  return parse_graph_text(text);
}

Graph read_graph_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open graph file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_graph(ss.str());
}

std::string to_text(const Graph& g) {
  std::ostringstream out;
  out << g.n() << ' ' << g.m() << '\n';
  for (auto [u, v] : g.edges()) out << u << ' ' << v << '\n';
  return out.str();
}

std::string to_json(const Graph& g) {
  nlohmann::json j;
  j["n"] = g.n();
  j["edges"] = nlohmann::json::array();
  for (auto [u, v] : g.edges()) j["edges"].push_back({u, v});
  return j.dump();
}

}  // namespace dham
