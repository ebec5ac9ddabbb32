#include "ushift/dynamics.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <sstream>

#include "ushift/error.hpp"

namespace ushift {

Point shift(const Point& x) { return x.shifted(); }

Cylinder local_window(const Ultragraph& g, const Point& x) {
  if (x.is_infinite()) {
    const Index e = x.edge(1);
    return Cylinder::full(g, {e}, g.range(e));
  }
  if (x.edges().empty()) throw Error(ErrorCode::LengthZeroPoint, "length-zero points have no window");
  return Cylinder::restricted(g, x.edges(), x.terminal(), UPSet::empty(g.edge_universe()));
}

Index GraphConversion::edge_for(Index e, Index v) const {
  const auto it = std::lower_bound(labels.begin(), labels.end(), std::pair{e, v});
  if (it == labels.end() || *it != std::pair{e, v}) {
    throw Error(ErrorCode::InvalidPath, "no graph edge for (e" + std::to_string(e) + ", v" + std::to_string(v) + ")");
  }
  return static_cast<Index>(it - labels.begin()) + 1;
}

Point GraphConversion::phi(const Ultragraph& source, const Ultragraph& target, const Point& x) const {
  if (!x.is_infinite()) {
    throw Error(ErrorCode::InvalidPath, "a finite ultragraph has no finite points in its shift space");
  }
  const EdgePath& prefix = x.edges();
  const EdgePath& cycle = x.cycle();
  auto image = [&](Index k) { return edge_for(x.edge(k), source.source(x.edge(k + 1))); };
  EdgePath new_prefix, new_cycle;
  const auto n = static_cast<Index>(prefix.size());
  for (Index k = 1; k <= n; ++k) new_prefix.push_back(image(k));
  for (Index k = n + 1; k <= n + static_cast<Index>(cycle.size()); ++k) new_cycle.push_back(image(k));
  return Point::infinite(target, std::move(new_prefix), std::move(new_cycle));
}

EdgePath GraphConversion::phi_path(const Ultragraph& source, const EdgePath& alpha, Index v) const {
  EdgePath out;
  for (std::size_t i = 0; i < alpha.size(); ++i) {
    const Index next = i + 1 < alpha.size() ? source.source(alpha[i + 1]) : v;
    out.push_back(edge_for(alpha[i], next));
  }
  return out;
}

std::pair<EdgePath, Index> GraphConversion::unphi_path(const EdgePath& path) const {
  EdgePath alpha;
  Index v = 0;
  for (Index f : path) {
    const auto& [e, w] = labels.at(static_cast<std::size_t>(f - 1));
    alpha.push_back(e);
    v = w;
  }
  return {alpha, v};
}

GraphConversion to_graph(const Ultragraph& g) {
  if (!g.is_finite()) throw Error(ErrorCode::NotFinite, "to_graph needs finitely many vertices and edges");
  GraphConversion out;
  out.graph.name = g.presentation().name + "-graph";
  out.graph.vertices = g.vertex_universe();
  for (Index e : g.edges().members()) {
    for (Index v : g.range(e).members()) out.labels.emplace_back(e, v);
  }
  out.graph.edges = Universe::finite(static_cast<Index>(out.labels.size()));
  for (std::size_t k = 0; k < out.labels.size(); ++k) {
    const auto& [e, v] = out.labels[k];
    out.graph.families.push_back(
        SingleEdge{static_cast<Index>(k) + 1, g.source(e), UPSet::singleton(out.graph.vertices, v)});
  }
  return out;
}

BijectionReport check_path_bijection(const Ultragraph& source, const Ultragraph& target,
                                     const GraphConversion& conversion, Index max_length) {
  BijectionReport report;
  report.counts.assign(static_cast<std::size_t>(max_length), {0, 0});
  auto fail = [&](const std::string& message) {
    if (report.ok) report.failure = message;
    report.ok = false;
  };

  // Every ultrapath (alpha, {v}) maps to a graph path and back.
  const auto edges = source.edges().members();
  EdgePath alpha;
  std::function<void()> walk = [&] {
    if (!report.ok) return;
    for (Index v : source.range(alpha.back()).members()) {
      const EdgePath image = conversion.phi_path(source, alpha, v);
      if (!is_path(target, image)) fail("phi(" + to_string(alpha) + ") is not a graph path");
      if (conversion.unphi_path(image) != std::pair{alpha, v}) fail("phi is not invertible at " + to_string(alpha));
      ++report.counts[alpha.size() - 1].first;
    }
    if (static_cast<Index>(alpha.size()) == max_length) return;
    for (Index e : edges) {
      if (!source.range(alpha.back()).contains(source.source(e))) continue;
      alpha.push_back(e);
      walk();
      alpha.pop_back();
    }
  };
  for (Index e : edges) {
    alpha = {e};
    walk();
  }

  // Graph paths counted by last edge.
  const auto graph_edges = target.edges().members();
  std::map<Index, Index> ending;
  for (Index f : graph_edges) ending[f] = 1;
  for (Index len = 1; len <= max_length; ++len) {
    Index total = 0;
    for (const auto& [f, count] : ending) total += count;
    report.counts[static_cast<std::size_t>(len - 1)].second = total;
    std::map<Index, Index> next;
    for (Index f : graph_edges) {
      Index sum = 0;
      for (const auto& [h, count] : ending) {
        if (target.range(h).contains(target.source(f))) sum += count;
      }
      next[f] = sum;
    }
    ending = std::move(next);
  }
  for (Index len = 1; len <= max_length; ++len) {
    const auto& [ours, theirs] = report.counts[static_cast<std::size_t>(len - 1)];
    if (ours != theirs) {
      fail("length " + std::to_string(len) + ": " + std::to_string(ours) + " ultrapaths vs " + std::to_string(theirs) +
           " graph paths");
    }
  }
  return report;
}

MorphismReport morphism_check(const MorphismTable& table, Index depth) {
  MorphismReport report;
  std::map<Point, Point> lookup(table.entries.begin(), table.entries.end());
  auto fail = [&](bool& flag, const std::string& message) {
    flag = false;
    report.failures.push_back(message);
  };

  std::map<Point, Point> seen_images;
  for (const auto& [x, y] : table.entries) {
    ++report.checked;
    if (x.length() != y.length()) fail(report.preserves_length, "length changes at " + x.to_string());
    const auto [it, fresh] = seen_images.emplace(y, x);
    if (!fresh && it->second != x) {
      fail(report.injective, it->second.to_string() + " and " + x.to_string() + " share the image " + y.to_string());
    }

    Point sx = x;
    Point sy = y;
    for (Index k = 1; k <= depth; ++k) {
      sx = shift(sx);
      sy = shift(sy);
      const auto found = lookup.find(sx);
      if (found == lookup.end()) {
        throw Error(ErrorCode::TableNotShiftClosed, "sigma^" + std::to_string(k) + " of " + x.to_string() +
                                                        " is missing from the table");
      }
      if (found->second != sy) {
        fail(report.commutes, "phi(sigma^" + std::to_string(k) + " " + x.to_string() + ") = " +
                                  found->second.to_string() + " but sigma^" + std::to_string(k) + " phi = " +
                                  sy.to_string());
      }
    }

    // phi(a.x') = b.phi(x') with x' = sigma(x) and b the first edge of phi(x).
    const bool moves = x.is_infinite() || !x.edges().empty();
    const bool image_moves = y.is_infinite() || !y.edges().empty();
    if (depth >= 1 && moves && image_moves) {
      const Index b = y.edge(1);
      const Point& tail_image = lookup.at(shift(x));
      try {
        const Point joined = concat_point(*table.target, embed(*table.target, {b}), tail_image);
        if (joined != y) fail(report.prefix_rule, "phi(" + x.to_string() + ") != e" + std::to_string(b) + ".phi(sigma x)");
      } catch (const Error&) {
        fail(report.prefix_rule, "e" + std::to_string(b) + " does not compose with " + tail_image.to_string());
      }
    }
  }
  return report;
}

MorphismTable parse_morphism_table(const Ultragraph& source, const Ultragraph& target, const std::string& text) {
  MorphismTable table;
  table.source = &source;
  table.target = &target;
  std::istringstream in(text);
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    std::string content = raw.substr(0, raw.find('#'));
    const auto begin = content.find_first_not_of(" \t\r");
    if (begin == std::string::npos) continue;
    if (content.compare(begin, 4, "map ") != 0) {
      if (content.compare(begin, 18, "length_preserving ") == 0 || content.compare(begin, 17, "length_preserving") == 0) {
        const auto eq = content.find('=');
        if (eq == std::string::npos) throw ParseError("expected '='", line, static_cast<int>(begin) + 1);
        std::string value = content.substr(eq + 1);
        value.erase(0, value.find_first_not_of(" \t"));
        value.erase(value.find_last_not_of(" \t\r") + 1);
        if (value != "true" && value != "false") {
          throw ParseError("expected true or false", line, static_cast<int>(eq) + 2);
        }
        table.length_preserving = value == "true";
        continue;
      }
      throw ParseError("expected 'map <point> -> <point>'", line, static_cast<int>(begin) + 1);
    }
    const auto arrow = content.find("->");
    if (arrow == std::string::npos) throw ParseError("missing '->'", line, static_cast<int>(content.size()) + 1);
    const std::size_t from = begin + 4;
    const Point x = parse_point(source, content.substr(from, arrow - from), line, static_cast<int>(from) + 1);
    const Point y = parse_point(target, content.substr(arrow + 2), line, static_cast<int>(arrow) + 3);
    table.entries.emplace_back(x, y);
  }
  return table;
}

std::string write_morphism_table(const MorphismTable& table) {
  std::string out = std::string("length_preserving = ") + (table.length_preserving ? "true" : "false") + "\n";
  for (const auto& [x, y] : table.entries) out += "map " + x.to_string() + " -> " + y.to_string() + "\n";
  return out;
}

}  // namespace ushift
