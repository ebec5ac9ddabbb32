#include "ushift/ultrapath.hpp"

#include <algorithm>

#include "cursor.hpp"
#include "ushift/error.hpp"

namespace ushift {

namespace {

[[noreturn]] void invalid(const std::string& message) { throw Error(ErrorCode::InvalidPath, message); }

void require_edges(const Ultragraph& g, const EdgePath& edges) {
  for (Index e : edges) {
    if (!g.has_edge(e)) invalid("no edge e" + std::to_string(e));
  }
}

bool follows(const Ultragraph& g, Index e, Index next) { return g.range(e).contains(g.source(next)); }

}  // namespace

bool is_path(const Ultragraph& g, const EdgePath& edges) {
  for (Index e : edges) {
    if (!g.has_edge(e)) return false;
  }
  for (std::size_t i = 1; i < edges.size(); ++i) {
    if (!follows(g, edges[i - 1], edges[i])) return false;
  }
  return true;
}

const UPSet& path_range(const Ultragraph& g, const EdgePath& edges) {
  if (edges.empty()) invalid("the empty path has no range");
  return g.range(edges.back());
}

std::vector<UPSet> m_alpha(const Ultragraph& g, const EdgePath& alpha) {
  if (alpha.empty()) return g.minimal_infinite_emitters();
  return g.minimal_in_range(alpha.back());
}

void check_ultrapath(const Ultragraph& g, const Ultrapath& u) {
  if (!is_path(g, u.edges)) invalid(to_string(u.edges) + " is not a path");
  if (u.terminal.is_empty()) invalid("empty terminal set");
  if (!u.edges.empty() && !u.terminal.subset_of(g.range(u.edges.back()))) {
    invalid("terminal set " + u.terminal.to_string() + " not inside r(" + to_string(u.edges) + ")");
  }
  if (!g.in_gzero(u.terminal)) invalid("terminal set " + u.terminal.to_string() + " not in G0");
}

Ultrapath embed(const Ultragraph& g, const EdgePath& alpha) {
  if (!is_path(g, alpha)) invalid(to_string(alpha) + " is not a path");
  return Ultrapath{alpha, path_range(g, alpha)};
}

UPSet source(const Ultragraph& g, const Ultrapath& u) {
  if (u.edges.empty()) return u.terminal;
  return g.vertex_set({g.source(u.edges.front())});
}

Ultrapath concat(const Ultragraph& g, const Ultrapath& x, const Ultrapath& y) {
  if (y.edges.empty()) {
    UPSet meet = x.terminal.intersect(y.terminal);
    if (meet.is_empty()) throw Error(ErrorCode::NotComposable, "terminal sets do not meet");
    return Ultrapath{x.edges, std::move(meet)};
  }
  if (!x.terminal.contains(g.source(y.edges.front()))) {
    throw Error(ErrorCode::NotComposable,
                "s(e" + std::to_string(y.edges.front()) + ") not in " + x.terminal.to_string());
  }
  Ultrapath out{x.edges, y.terminal};
  out.edges.insert(out.edges.end(), y.edges.begin(), y.edges.end());
  return out;
}

Point Point::finite(const Ultragraph& g, EdgePath edges, UPSet terminal) {
  require_edges(g, edges);
  if (!is_path(g, edges)) invalid(ushift::to_string(edges) + " is not a path");
  const auto candidates = m_alpha(g, edges);
  if (std::find(candidates.begin(), candidates.end(), terminal) == candidates.end()) {
    invalid(terminal.to_string() + " is not a minimal infinite emitter in the range of " +
            (edges.empty() ? std::string("the empty path") : ushift::to_string(edges)));
  }
  return Point(std::move(edges), {}, std::move(terminal));
}

Point Point::infinite(const Ultragraph& g, EdgePath prefix, EdgePath cycle) {
  if (cycle.empty()) invalid("empty cycle");
  require_edges(g, prefix);
  require_edges(g, cycle);
  // prefix + cycle + first cycle edge covers every consecutive pair.
  EdgePath walk = prefix;
  walk.insert(walk.end(), cycle.begin(), cycle.end());
  walk.push_back(cycle.front());
  if (!is_path(g, walk)) invalid(ushift::to_string(prefix) + "(" + ushift::to_string(cycle) + ") is not a path");
  Point p(std::move(prefix), std::move(cycle), UPSet::empty(g.vertex_universe()));
  p.canonicalize();
  return p;
}

void Point::canonicalize() {
  const std::size_t n = cycle_.size();
  for (std::size_t d = 1; d < n; ++d) {
    if (n % d != 0) continue;
    bool repeats = true;
    for (std::size_t i = d; i < n && repeats; ++i) repeats = cycle_[i] == cycle_[i - d];
    if (repeats) {
      cycle_.resize(d);
      break;
    }
  }
  while (!edges_.empty() && edges_.back() == cycle_.back()) {
    std::rotate(cycle_.rbegin(), cycle_.rbegin() + 1, cycle_.rend());
    edges_.pop_back();
  }
}

std::optional<Index> Point::length() const {
  if (is_infinite()) return std::nullopt;
  return static_cast<Index>(edges_.size());
}

Index Point::edge(Index k) const {
  const auto n = static_cast<Index>(edges_.size());
  if (k <= n) return edges_[static_cast<std::size_t>(k - 1)];
  if (!is_infinite()) invalid("edge index past the end of the point");
  const auto c = static_cast<Index>(cycle_.size());
  return cycle_[static_cast<std::size_t>((k - n - 1) % c)];
}

EdgePath Point::first_edges(Index n) const {
  if (!is_infinite()) n = std::min(n, static_cast<Index>(edges_.size()));
  EdgePath out;
  for (Index k = 1; k <= n; ++k) out.push_back(edge(k));
  return out;
}

UPSet Point::source(const Ultragraph& g) const {
  if (!is_infinite() && edges_.empty()) return terminal_;
  return g.vertex_set({g.source(edge(1))});
}

Point Point::shifted() const {
  if (!is_infinite()) {
    if (edges_.empty()) return *this;
    return Point(EdgePath(edges_.begin() + 1, edges_.end()), {}, terminal_);
  }
  if (!edges_.empty()) return Point(EdgePath(edges_.begin() + 1, edges_.end()), cycle_, terminal_);
  EdgePath rotated(cycle_.begin() + 1, cycle_.end());
  rotated.push_back(cycle_.front());
  return Point({}, std::move(rotated), terminal_);
}

std::string Point::to_string() const {
  if (is_infinite()) return "path " + ushift::to_string(edges_) + "(cycle " + ushift::to_string(cycle_) + ")";
  return "fin " + ushift::to_string(edges_) + ":[" + terminal_.to_string() + "]";
}

Point concat_point(const Ultragraph& g, const Ultrapath& y, const Point& gamma) {
  const bool zero = !gamma.is_infinite() && gamma.edges().empty();
  if (zero) {
    if (!gamma.terminal().subset_of(y.terminal)) {
      throw Error(ErrorCode::NotComposable, gamma.terminal().to_string() + " not inside " + y.terminal.to_string());
    }
  } else if (!y.terminal.contains(g.source(gamma.edge(1)))) {
    throw Error(ErrorCode::NotComposable,
                "s(e" + std::to_string(gamma.edge(1)) + ") not in " + y.terminal.to_string());
  }
  if (y.edges.empty()) return gamma;
  EdgePath joined = y.edges;
  joined.insert(joined.end(), gamma.edges().begin(), gamma.edges().end());
  if (gamma.is_infinite()) return Point::infinite(g, std::move(joined), gamma.cycle());
  return Point::finite(g, std::move(joined), gamma.terminal());
}

namespace {

EdgePath edge_list(detail::Cursor& in) {
  EdgePath edges;
  if (!in.at_edge()) return edges;
  edges.push_back(in.edge());
  while (in.accept('.')) edges.push_back(in.edge());
  return edges;
}

}  // namespace

Point parse_point(const Ultragraph& g, const std::string& text, int line, int column) {
  detail::Cursor in(text, line, column);
  if (in.accept_word("path")) {
    EdgePath prefix = edge_list(in);
    in.expect('(');
    in.expect_word("cycle");
    EdgePath cycle = edge_list(in);
    if (cycle.empty()) in.fail("empty cycle");
    in.expect(')');
    in.finish();
    return Point::infinite(g, std::move(prefix), std::move(cycle));
  }
  if (in.accept_word("fin")) {
    EdgePath edges = edge_list(in);
    in.expect(':');
    UPSet terminal = in.set_in_brackets(g.vertex_universe());
    in.finish();
    return Point::finite(g, std::move(edges), std::move(terminal));
  }
  in.fail("expected 'path' or 'fin'");
}

EdgePath parse_edge_path(const std::string& text, int line, int column) {
  detail::Cursor in(text, line, column);
  EdgePath edges = edge_list(in);
  in.finish();
  return edges;
}

std::string to_string(const EdgePath& edges) {
  std::string out;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    if (i > 0) out += '.';
    out += 'e' + std::to_string(edges[i]);
  }
  return out;
}

}  // namespace ushift
