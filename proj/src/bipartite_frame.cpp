#include "dham/bipartite_frame.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>

namespace dham {

VertexSet SpecialFrame::v1_prime() const { return set_difference(v1, special_vertices); }

VertexSet SpecialFrame::v1_double_prime() const {
  std::vector<Vertex> touched;
  for (auto [a, b] : special_edges) {
    touched.push_back(a);
    touched.push_back(b);
  }
  std::sort(touched.begin(), touched.end());
  touched.erase(std::unique(touched.begin(), touched.end()), touched.end());
  return set_difference(v1, VertexSet(touched));
}

Vertex SpecialFrame::special_partner(Vertex v) const {
  for (auto [a, b] : special_edges) {
    if (a == v) return b;
    if (b == v) return a;
  }
  return -1;
}

bool SpecialFrame::is_special_edge(Vertex a, Vertex b) const {
  const Edge e = make_edge(a, b);
  return std::find(special_edges.begin(), special_edges.end(), e) != special_edges.end();
}

void SpecialFrame::validate(const Graph& g) const {
  check_valid(g, v1);
  check_valid(g, v2);
  if (!set_intersection(v1, v2).empty() || static_cast<int>(v1.size() + v2.size()) != g.n())
    throw PreconditionError("V1 and V2 must partition the vertex set");
  if (static_cast<int>(v1.size()) - static_cast<int>(v2.size()) != k())
    throw PreconditionError("|V1| - |V2| must equal the number of special edges");
  if (static_cast<int>(special_vertices.size()) != k())
    throw PreconditionError("need exactly one special vertex per special edge");
  std::set<Vertex> used;
  for (auto [a, b] : special_edges) {
    if (!g.has_edge(a, b)) throw PreconditionError("special edge is not an edge of G");
    if (!v1.contains(a) || !v1.contains(b)) throw PreconditionError("special edge must lie inside V1");
    if (!used.insert(a).second || !used.insert(b).second)
      throw PreconditionError("special edges must be vertex-disjoint");
    if (special_vertices.contains(a) == special_vertices.contains(b))
      throw PreconditionError("each special edge must carry exactly one special vertex");
  }
  for (Vertex s : special_vertices)
    if (!used.count(s)) throw PreconditionError("special vertex without special edge");
}

std::vector<Edge> hall_matching(const Graph& g, const VertexSet& left, const VertexSet& right) {
  check_valid(g, left);
  check_valid(g, right);
  if (left.size() != right.size()) throw PreconditionError("hall_matching needs |left| = |right|");
  const int n = g.n();
  std::vector<char> in_right(static_cast<std::size_t>(n), 0);
  for (Vertex r : right) in_right[r] = 1;
  std::vector<Vertex> match_l(static_cast<std::size_t>(n), -1), match_r(static_cast<std::size_t>(n), -1);
  std::vector<int> stamp(static_cast<std::size_t>(n), -1);
  int round = 0;
  auto augment = [&](auto&& self, Vertex u) -> bool {
    for (Vertex w : g.neighbors(u)) {
      if (!in_right[w] || stamp[w] == round) continue;
      stamp[w] = round;
      if (match_r[w] < 0 || self(self, match_r[w])) {
        match_l[u] = w;
        match_r[w] = u;
        return true;
      }
    }
    return false;
  };
  for (Vertex u : left) {
    ++round;
    if (augment(augment, u)) continue;
    // Alternating reachability from the exposed vertex u.
    std::vector<Vertex> xs{u}, ns;
    std::vector<char> seen_l(static_cast<std::size_t>(n), 0), seen_r(static_cast<std::size_t>(n), 0);
    seen_l[u] = 1;
    for (std::size_t i = 0; i < xs.size(); ++i)
      for (Vertex w : g.neighbors(xs[i])) {
        if (!in_right[w] || seen_r[w]) continue;
        seen_r[w] = 1;
        ns.push_back(w);
        const Vertex m = match_r[w];
        if (m >= 0 && !seen_l[m]) {
          seen_l[m] = 1;
          xs.push_back(m);
        }
      }
    VertexSet x(xs), nx(ns);
    throw HallViolation("Hall's condition fails: " + std::to_string(x.size()) + " left vertices see only " +
                            std::to_string(nx.size()) + " right vertices",
                        x, nx);
  }
  std::vector<Edge> out;
  for (Vertex u : left) out.emplace_back(u, match_l[u]);
  return out;
}

MatchedFrame build_matched_frame(const Graph& g, const VertexSet& v1, const VertexSet& v2,
                                 const std::vector<Edge>& special_edges) {
  MatchedFrame mf;
  mf.frame.v1 = v1;
  mf.frame.v2 = v2;
  std::vector<Vertex> sv;
  for (auto e : special_edges) {
    const Edge c = make_edge(e.first, e.second);
    if (c.first == c.second) throw PreconditionError("special edge is a loop");
    mf.frame.special_edges.push_back(c);
    sv.push_back(c.first);
  }
  std::sort(sv.begin(), sv.end());
  if (std::adjacent_find(sv.begin(), sv.end()) != sv.end())
    throw PreconditionError("special edges must be vertex-disjoint");
  mf.frame.special_vertices = VertexSet(sv);
  mf.frame.validate(g);
  mf.f.assign(static_cast<std::size_t>(g.n()), -1);
  // Only framed edges may serve in the matching.
  const Graph h = framed_graph(g, mf.frame);
  for (auto [a, b] : hall_matching(h, mf.frame.v1_prime(), v2)) {
    mf.f[a] = b;
    mf.f[b] = a;
  }
  return mf;
}

Graph framed_graph(const Graph& g, const SpecialFrame& frame) {
  std::vector<Edge> keep;
  for (auto [a, b] : g.edges())
    if (frame.v1.contains(a) != frame.v1.contains(b) || frame.is_special_edge(a, b)) keep.emplace_back(a, b);
  return Graph(g.n(), keep);
}

namespace {

ProperCheck fail(std::string why) { return {false, std::move(why)}; }

ProperCheck check_common(const Graph& g, const MatchedFrame& mf, const std::vector<Vertex>& seq, bool closed) {
  const int n = g.n();
  const auto& fr = mf.frame;
  if (seq.size() < 2) return fail("too short");
  std::vector<char> on(static_cast<std::size_t>(n), 0);
  for (Vertex v : seq) {
    if (v < 0 || v >= n) return fail("vertex out of range");
    if (on[v]) return fail("repeated vertex " + std::to_string(v));
    on[v] = 1;
  }
  const std::size_t m = closed ? seq.size() : seq.size() - 1;
  std::set<Edge> path_edges;
  for (std::size_t i = 0; i < m; ++i) {
    const Vertex a = seq[i], b = seq[(i + 1) % seq.size()];
    if (!g.has_edge(a, b)) return fail("not an edge: " + std::to_string(a) + "-" + std::to_string(b));
    if (fr.v1.contains(a) == fr.v1.contains(b) && !fr.is_special_edge(a, b))
      return fail("edge " + std::to_string(a) + "-" + std::to_string(b) + " neither crosses nor is special");
    path_edges.insert(make_edge(a, b));
  }
  for (Vertex v : seq) {
    if (fr.special_vertices.contains(v)) {
      if (!path_edges.count(make_edge(v, fr.special_partner(v))))
        return fail("special vertex " + std::to_string(v) + " without its special edge");
    } else if (!on[mf.f[v]]) {
      return fail("matching partner of " + std::to_string(v) + " is missing");
    }
  }
  return {};
}

}  // namespace

ProperCheck check_proper_path(const Graph& g, const MatchedFrame& mf, const std::vector<Vertex>& seq) {
  auto c = check_common(g, mf, seq, false);
  if (!c.ok) return c;
  if (mf.frame.v1.contains(seq.front()) == mf.frame.v1.contains(seq.back()))
    return fail("endpoints must lie in different parts");
  return c;
}

ProperCheck check_proper_cycle(const Graph& g, const MatchedFrame& mf, const std::vector<Vertex>& seq) {
  if (seq.size() < 3) return fail("too short");
  return check_common(g, mf, seq, true);
}

int count_special_edges(const MatchedFrame& mf, const std::vector<Vertex>& seq, bool closed) {
  int c = 0;
  const std::size_t m = closed ? seq.size() : seq.size() - 1;
  for (std::size_t i = 0; i < m; ++i)
    if (mf.frame.is_special_edge(seq[i], seq[(i + 1) % seq.size()])) ++c;
  return c;
}

std::optional<std::vector<Vertex>> proper_extension(const Graph& g, const MatchedFrame& mf,
                                                    const std::vector<Vertex>& seq) {
  const auto& fr = mf.frame;
  std::vector<char> on(static_cast<std::size_t>(g.n()), 0);
  for (Vertex v : seq) on[v] = 1;
  const Vertex x = seq.front();  // in V2
  const Vertex z = seq.back();   // in V1
  // Front: an off-path neighbor y in V1.
  for (Vertex y : g.neighbors(x)) {
    if (on[y] || !fr.v1.contains(y)) continue;
    std::vector<Vertex> pre;
    if (!fr.special_vertices.contains(y)) {
      pre = {mf.f[y], y};
    } else {
      const Vertex yp = fr.special_partner(y);
      if (on[yp]) continue;
      pre = {mf.f[yp], yp, y};
    }
    std::vector<Vertex> out = pre;
    out.insert(out.end(), seq.begin(), seq.end());
    return out;
  }
  // Back: an off-path neighbor w in V2.
  for (Vertex w : g.neighbors(z)) {
    if (on[w] || !fr.v2.contains(w)) continue;
    std::vector<Vertex> out = seq;
    out.push_back(w);
    out.push_back(mf.f[w]);
    return out;
  }
  // Back: the special partner of z is off the path.
  if (const Vertex s = fr.special_partner(z); s >= 0 && !on[s]) {
    std::vector<Vertex> out = seq;
    out.push_back(s);
    return out;
  }
  return std::nullopt;
}

namespace {

// Breadth-first closure over distinct proper paths. `front`: rotate the V2
// front with pivots in V1''; otherwise rotate the V1 back with pivots in V2.
std::map<Vertex, PathState> proper_closure(const Graph& h, const MatchedFrame& mf, const PathState& start, bool front,
                                           std::int64_t cap, std::int64_t& steps, bool& truncated) {
  const VertexSet v1pp = mf.frame.v1_double_prime();
  std::map<Vertex, PathState> reached;
  reached.emplace(front ? start.front() : start.back(), start);
  std::set<std::vector<Vertex>> seen{start.seq()};
  std::deque<PathState> queue{start};
  const int l = start.length();
  while (!queue.empty()) {
    PathState cur = std::move(queue.front());
    queue.pop_front();
    const auto& s = cur.seq();
    const Vertex end = front ? s.front() : s.back();
    for (int i = 0; i <= l; ++i) {
      if (front ? i < 2 : i > l - 2) continue;
      const Vertex pivot = s[i];
      if (front ? !v1pp.contains(pivot) : !mf.frame.v2.contains(pivot)) continue;
      if (!cur.adjacent(h, end, pivot)) continue;
      if (cur.is_fixed(front ? s[i - 1] : s[i + 1], pivot)) continue;
      if (steps >= cap) {
        truncated = true;
        return reached;
      }
      ++steps;
      PathState nxt = front ? rotate_front(cur, h, i) : rotate(cur, h, i);
      if (!seen.insert(nxt.seq()).second) continue;
      reached.emplace(front ? nxt.front() : nxt.back(), nxt);
      queue.push_back(std::move(nxt));
    }
  }
  return reached;
}

}  // namespace

EndpointAtlas proper_endpoint_closure(const Graph& g, const MatchedFrame& mf, const PathState& pp, bool compute_T) {
  if (auto c = check_proper_path(g, mf, pp.seq()); !c.ok) throw PreconditionError("path is not proper: " + c.reason);
  if (!mf.frame.v2.contains(pp.front())) throw PreconditionError("orient the proper path with its V2 end first");
  if (proper_extension(g, mf, pp.seq())) throw PreconditionError("proper path can be extended; extend it first");
  const Graph h = framed_graph(g, mf.frame);
  const std::int64_t cap = 4LL * g.n() * g.n();
  EndpointAtlas atlas;
  atlas.fixed_end = pp.back();
  atlas.reached = proper_closure(h, mf, pp, true, cap, atlas.steps, atlas.truncated);
  if (compute_T)
    for (const auto& [v, w] : atlas.reached) {
      std::int64_t steps = 0;
      bool trunc = false;
      atlas.t[v] = proper_closure(h, mf, w, false, cap, steps, trunc);
      atlas.steps += steps;
      atlas.truncated = atlas.truncated || trunc;
    }
  return atlas;
}

}  // namespace dham
