#include "dham/rotation.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <string>

#include "dham/errors.hpp"

namespace dham {

PathState::PathState(std::vector<Vertex> seq, std::optional<Edge> fixed_edge) : seq_(std::move(seq)) {
  if (seq_.empty()) throw PreconditionError("a path needs at least one vertex");
  if (fixed_edge) fixed_ = make_edge(fixed_edge->first, fixed_edge->second);
  rebuild_positions();
  for (std::size_t i = 0; i < seq_.size(); ++i)
    if (pos_[seq_[i]] != static_cast<int>(i)) throw PreconditionError("path repeats a vertex");
  if (fixed_) {
    const int a = position(fixed_->first), b = position(fixed_->second);
    if (a < 0 || b < 0 || std::abs(a - b) != 1) throw PreconditionError("fixed edge is not on the path");
  }
  auto o = std::make_shared<Origin>();
  o->seq = seq_;
  o->pos = pos_;
  origin_ = std::move(o);
}

void PathState::rebuild_positions() {
  Vertex hi = 0;
  for (Vertex v : seq_) {
    if (v < 0) throw InvalidSet("negative vertex id on path");
    hi = std::max(hi, v);
  }
  pos_.assign(static_cast<std::size_t>(hi) + 1, -1);
  for (std::size_t i = 0; i < seq_.size(); ++i)
    if (pos_[seq_[i]] < 0) pos_[seq_[i]] = static_cast<int>(i);
}

bool PathState::on_path(Vertex v) const { return position(v) >= 0; }

int PathState::position(Vertex v) const {
  if (v < 0 || v >= static_cast<Vertex>(pos_.size())) return -1;
  return pos_[v];
}

bool PathState::origin_edge(Vertex u, Vertex v) const {
  const auto& p = origin_->pos;
  if (u < 0 || v < 0 || u >= static_cast<Vertex>(p.size()) || v >= static_cast<Vertex>(p.size())) return false;
  if (p[u] < 0 || p[v] < 0) return false;
  return std::abs(p[u] - p[v]) == 1;
}

bool PathState::adjacent(const Graph& g, Vertex u, Vertex v) const {
  if (u < g.n() && v < g.n() && g.has_edge(u, v)) return true;
  return origin_edge(u, v);
}

bool PathState::is_fixed(Vertex u, Vertex v) const { return fixed_ && *fixed_ == make_edge(u, v); }

PathState rotate(const PathState& ps, const Graph& g, int i) {
  const int l = ps.length();
  if (i < 0 || i > l - 2) throw PreconditionError("pivot index must satisfy 0 <= i <= l-2");
  const auto& s = ps.seq();
  if (!ps.adjacent(g, s[l], s[i])) throw PreconditionError("no edge between the moving end and the pivot");
  if (ps.is_fixed(s[i], s[i + 1])) throw PreconditionError("rotation would break the fixed edge");
  PathState out = ps;
  std::reverse(out.seq_.begin() + i + 1, out.seq_.end());
  for (int j = i + 1; j <= l; ++j) out.pos_[out.seq_[j]] = j;
  out.log_.push_back({s[i], make_edge(s[i], s[i + 1]), false});
  return out;
}

PathState rotate_front(const PathState& ps, const Graph& g, int i) {
  const int l = ps.length();
  if (i < 2 || i > l) throw PreconditionError("front pivot index must satisfy 2 <= i <= l");
  const auto& s = ps.seq();
  if (!ps.adjacent(g, s[0], s[i])) throw PreconditionError("no edge between the moving end and the pivot");
  if (ps.is_fixed(s[i - 1], s[i])) throw PreconditionError("rotation would break the fixed edge");
  PathState out = ps;
  std::reverse(out.seq_.begin(), out.seq_.begin() + i);
  for (int j = 0; j < i; ++j) out.pos_[out.seq_[j]] = j;
  out.log_.push_back({s[i], make_edge(s[i - 1], s[i]), true});
  return out;
}

PathState replay(const PathState& ps, const Graph& g) {
  PathState cur(ps.origin(), ps.fixed_edge());
  cur.origin_ = ps.origin_;
  for (const auto& step : ps.log()) {
    const int i = cur.position(step.pivot);
    if (i < 0) throw PreconditionError("replay: pivot not on path");
    cur = step.front_moved ? rotate_front(cur, g, i) : rotate(cur, g, i);
    if (cur.log().back().broken != step.broken) throw PreconditionError("replay: broken edge mismatch");
  }
  return cur;
}

// Appends (back) or prepends (front) w; the result starts a fresh origin.
PathState extend_path(const PathState& ps, Vertex w, bool at_back) {
  std::vector<Vertex> seq = ps.seq();
  if (at_back)
    seq.push_back(w);
  else
    seq.insert(seq.begin(), w);
  return PathState(std::move(seq), ps.fixed_edge());
}

namespace {

Vertex lowest_off_path(const Graph& g, const PathState& ps, Vertex v) {
  if (v >= g.n()) return -1;
  for (Vertex w : g.neighbors(v))
    if (!ps.on_path(w)) return w;
  return -1;
}

}  // namespace

bool is_maximal(const Graph& g, const PathState& ps) {
  return lowest_off_path(g, ps, ps.back()) < 0 && lowest_off_path(g, ps, ps.front()) < 0;
}

StepResult extend_or_close(const Graph& g, const PathState& ps) {
  StepResult r;
  if (Vertex w = lowest_off_path(g, ps, ps.back()); w >= 0) {
    r.kind = StepKind::extended;
    r.path = extend_path(ps, w, true);
    return r;
  }
  if (Vertex w = lowest_off_path(g, ps, ps.front()); w >= 0) {
    r.kind = StepKind::extended;
    r.path = extend_path(ps, w, false);
    return r;
  }
  const auto& s = ps.seq();
  const int len = static_cast<int>(s.size());
  if (len < 3 || !ps.adjacent(g, s.front(), s.back())) return r;
  // Closed cycle s[0..len-1]. Reopen at a vertex with an off-cycle neighbor
  // by dropping one of its cycle edges that is not fixed.
  for (int j = 0; j < len; ++j) {
    const Vertex w = lowest_off_path(g, ps, s[j]);
    if (w < 0) continue;
    const Vertex next = s[(j + 1) % len];
    const Vertex prev = s[(j - 1 + len) % len];
    std::vector<Vertex> seq;
    if (!ps.is_fixed(s[j], next)) {
      // next ... s[j], then w
      for (int k = 1; k <= len; ++k) seq.push_back(s[(j + k) % len]);
      seq.push_back(w);
    } else if (!ps.is_fixed(prev, s[j])) {
      for (int k = 0; k < len; ++k) seq.push_back(s[(j - k + len) % len]);
      seq.push_back(w);
    } else {
      continue;
    }
    r.kind = StepKind::extended;
    r.path = PathState(std::move(seq), ps.fixed_edge());
    return r;
  }
  r.kind = StepKind::closed;
  r.cycle = s;
  return r;
}

VertexSet EndpointAtlas::s_p() const {
  std::vector<Vertex> out;
  for (const auto& [v, _] : reached) out.push_back(v);
  return VertexSet(out);
}

VertexSet EndpointAtlas::t_of(Vertex v) const {
  auto it = t.find(v);
  if (it == t.end()) return {};
  std::vector<Vertex> out;
  for (const auto& [w, _] : it->second) out.push_back(w);
  return VertexSet(out);
}

namespace {

std::int64_t step_cap(const Graph& g, ClosureCaps caps) {
  return caps.max_steps >= 0 ? caps.max_steps : 4LL * g.n() * g.n();
}

// Breadth-first closure over distinct paths; `front` selects which end
// moves. Returns endpoint -> first witness.
std::map<Vertex, PathState> closure(const Graph& g, const PathState& start, bool front, std::int64_t cap,
                                    std::int64_t& steps, bool& truncated) {
  std::map<Vertex, PathState> reached;
  const int l = start.length();
  const std::size_t max_ends = static_cast<std::size_t>(std::min(l, std::max(g.n(), 1)));
  std::set<std::vector<Vertex>> seen{start.seq()};
  std::deque<PathState> queue{start};
  reached.emplace(front ? start.front() : start.back(), start);
  while (!queue.empty()) {
    if (reached.size() >= max_ends && max_ends > 0) break;
    PathState cur = std::move(queue.front());
    queue.pop_front();
    const auto& s = cur.seq();
    const Vertex end = front ? s.front() : s.back();
    for (int i = 0; i <= l; ++i) {
      if (front ? (i < 2) : (i > l - 2)) continue;
      if (!cur.adjacent(g, end, s[i])) continue;
      const bool breaks_fixed = front ? cur.is_fixed(s[i - 1], s[i]) : cur.is_fixed(s[i], s[i + 1]);
      if (breaks_fixed) continue;
      if (steps >= cap) {
        truncated = true;
        return reached;
      }
      ++steps;
      PathState nxt = front ? rotate_front(cur, g, i) : rotate(cur, g, i);
      if (!seen.insert(nxt.seq()).second) continue;
      const Vertex e = front ? nxt.front() : nxt.back();
      reached.emplace(e, nxt);
      queue.push_back(std::move(nxt));
    }
  }
  return reached;
}

}  // namespace

EndpointAtlas endpoint_closure(const Graph& g, const PathState& ps, bool compute_T, ClosureCaps caps) {
  if (!is_maximal(g, ps)) throw PreconditionError("path can be extended; extend it before computing the closure");
  EndpointAtlas atlas;
  atlas.fixed_end = ps.back();
  if (ps.length() < 1) {
    atlas.reached.emplace(ps.front(), ps);
    return atlas;
  }
  atlas.reached = closure(g, ps, true, step_cap(g, caps), atlas.steps, atlas.truncated);
  if (compute_T)
    for (const auto& [v, _] : atlas.reached) compute_t(g, atlas, v, caps);
  return atlas;
}

void compute_t(const Graph& g, EndpointAtlas& atlas, Vertex v, ClosureCaps caps) {
  auto it = atlas.reached.find(v);
  if (it == atlas.reached.end()) throw PreconditionError("vertex " + std::to_string(v) + " is not in S_P");
  if (atlas.t.count(v)) return;
  std::int64_t steps = 0;
  bool truncated = false;
  atlas.t[v] = closure(g, it->second, false, step_cap(g, caps), steps, truncated);
  atlas.steps += steps;
  atlas.truncated = atlas.truncated || truncated;
}

}  // namespace dham
