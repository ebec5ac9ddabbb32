#include "ushift/topology.hpp"

#include <algorithm>
#include <iterator>

#include "cursor.hpp"
#include "ushift/error.hpp"

namespace ushift {

namespace {

[[noreturn]] void bad_cylinder(const std::string& message) {
  throw Error(ErrorCode::InvalidCylinder, message);
}

std::string base_text(const EdgePath& base) { return to_string(base); }

}  // namespace

Cylinder Cylinder::full(const Ultragraph& g, EdgePath base, UPSet b) {
  if (!is_path(g, base)) bad_cylinder(base_text(base) + " is not a path");
  if (b.is_empty()) bad_cylinder("empty set in a cylinder");
  if (!base.empty() && !b.subset_of(path_range(g, base))) {
    bad_cylinder(b.to_string() + " not inside r(" + base_text(base) + ")");
  }
  if (!g.in_gzero(b)) bad_cylinder(b.to_string() + " not in G0");
  return Cylinder{Kind::Full, std::move(base), std::move(b), UPSet::empty(g.edge_universe())};
}

Cylinder Cylinder::restricted(const Ultragraph& g, EdgePath base, UPSet b, UPSet f) {
  if (!is_path(g, base)) bad_cylinder(base_text(base) + " is not a path");
  const auto candidates = m_alpha(g, base);
  if (std::find(candidates.begin(), candidates.end(), b) == candidates.end()) {
    bad_cylinder(b.to_string() + " is not a minimal infinite emitter at " + base_text(base));
  }
  if (!f.is_finite() || !f.subset_of(g.epsilon(b))) {
    bad_cylinder(f.to_string() + " is not a finite subset of eps(" + b.to_string() + ")");
  }
  return Cylinder{Kind::Restricted, std::move(base), std::move(b), std::move(f)};
}

bool Cylinder::contains(const Ultragraph& g, const Point& x) const {
  const auto n = static_cast<Index>(base.size());
  const auto len = x.length();
  if (len && *len < n) return false;
  for (Index k = 1; k <= n; ++k) {
    if (x.edge(k) != base[static_cast<std::size_t>(k - 1)]) return false;
  }
  if (len && *len == n) {
    return kind == Kind::Full ? x.terminal().subset_of(set) : x.terminal() == set;
  }
  const Index next = x.edge(n + 1);
  return set.contains(g.source(next)) && !(kind == Kind::Restricted && excluded.contains(next));
}

std::string Cylinder::to_string() const {
  std::string out = (kind == Kind::Full ? "full " : "restricted ") + base_text(base) + ":[" + set.to_string() + "]";
  if (kind == Kind::Restricted) out += " without [" + excluded.to_string() + "]";
  return out;
}

Cylinder parse_cylinder(const Ultragraph& g, const std::string& text, int line, int column) {
  detail::Cursor in(text, line, column);
  const bool full = in.accept_word("full");
  if (!full && !in.accept_word("restricted")) in.fail("expected 'full' or 'restricted'");
  EdgePath base;
  if (in.at_edge()) {
    base.push_back(in.edge());
    while (in.accept('.')) base.push_back(in.edge());
  }
  in.expect(':');
  UPSet b = in.set_in_brackets(g.vertex_universe());
  if (full) {
    in.finish();
    return Cylinder::full(g, std::move(base), std::move(b));
  }
  UPSet f = UPSet::empty(g.edge_universe());
  if (in.accept_word("without")) f = in.set_in_brackets(g.edge_universe());
  in.finish();
  return Cylinder::restricted(g, std::move(base), std::move(b), std::move(f));
}

// ---------------------------------------------------------------------------
// Clopen trie

namespace {

using Node = Clopen::Node;

enum class Op { Union, Intersect, Difference };

// Edges allowed after a prefix ending in `last` and the atoms possible
// there; `last` = 0 is the root.
const UPSet& valid_edges(const Ultragraph& g, Index last) {
  return last == 0 ? g.edges() : g.successors(last);
}

const std::vector<UPSet>& possible_atoms(const Ultragraph& g, Index last) {
  return last == 0 ? g.all_minimal_emitters() : g.minimal_in_range(last);
}

Node empty_node(const Ultragraph& g, Index edge) {
  Node n;
  n.edge = edge;
  n.full_edges = UPSet::empty(g.edge_universe());
  return n;
}

Node full_node(const Ultragraph& g, Index edge) {
  Node n;
  n.edge = edge;
  n.atoms = possible_atoms(g, edge);
  std::sort(n.atoms.begin(), n.atoms.end());
  n.full_edges = valid_edges(g, edge);
  return n;
}

bool is_empty_node(const Node& n) { return n.atoms.empty() && n.full_edges.is_empty() && n.children.empty(); }

bool is_full_node(const Ultragraph& g, const Node& n) {
  return n.children.empty() && n.atoms.size() == possible_atoms(g, n.edge).size() &&
         n.full_edges == valid_edges(g, n.edge);
}

void adopt(const Ultragraph& g, Node& parent, Node child) {
  if (is_empty_node(child)) return;
  if (is_full_node(g, child)) {
    parent.full_edges = parent.full_edges.unite(UPSet::singleton(g.edge_universe(), child.edge));
    return;
  }
  parent.children.push_back(std::move(child));
}

UPSet apply(Op op, const UPSet& a, const UPSet& b) {
  switch (op) {
    case Op::Union: return a.unite(b);
    case Op::Intersect: return a.intersect(b);
    case Op::Difference: return a.minus(b);
  }
  return a;
}

std::vector<UPSet> apply(Op op, const std::vector<UPSet>& a, const std::vector<UPSet>& b) {
  std::vector<UPSet> out;
  switch (op) {
    case Op::Union: std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out)); break;
    case Op::Intersect:
      std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
      break;
    case Op::Difference:
      std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
      break;
  }
  return out;
}

const Node* find_child(const Node& n, Index e) {
  const auto it = std::lower_bound(n.children.begin(), n.children.end(), e,
                                   [](const Node& c, Index key) { return c.edge < key; });
  return it != n.children.end() && it->edge == e ? &*it : nullptr;
}

// The part of `n` below edge e as a standalone node.
Node view(const Ultragraph& g, const Node& n, Index e) {
  if (const Node* child = find_child(n, e)) return *child;
  if (n.full_edges.contains(e)) return full_node(g, e);
  return empty_node(g, e);
}

Node combine(const Ultragraph& g, const Node& a, const Node& b, Op op) {
  Node out = empty_node(g, a.edge);
  out.atoms = apply(op, a.atoms, b.atoms);
  std::vector<Index> keys;
  for (const auto& c : a.children) keys.push_back(c.edge);
  for (const auto& c : b.children) keys.push_back(c.edge);
  std::sort(keys.begin(), keys.end());
  keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
  out.full_edges = apply(op, a.full_edges, b.full_edges).minus(UPSet::of(g.edge_universe(), keys));
  for (Index e : keys) {
    adopt(g, out, combine(g, view(g, a, e), view(g, b, e), op));
  }
  return out;
}

// Hangs `leaf` (a node for the slot after beta) below the path beta.
Node chain(const Ultragraph& g, const EdgePath& beta, Node leaf) {
  if (beta.empty()) {
    leaf.edge = 0;
    return leaf;
  }
  leaf.edge = beta.back();
  for (std::size_t i = beta.size(); i-- > 0;) {
    Node parent = empty_node(g, i == 0 ? 0 : beta[i - 1]);
    adopt(g, parent, std::move(leaf));
    leaf = std::move(parent);
  }
  return leaf;
}

void collect(const Node& n, EdgePath& prefix, std::vector<Patch>& out) {
  for (const auto& a : n.atoms) out.push_back({Patch::Kind::Atom, prefix, a});
  if (!n.full_edges.is_empty()) out.push_back({Patch::Kind::Tail, prefix, n.full_edges});
  for (const auto& c : n.children) {
    prefix.push_back(c.edge);
    collect(c, prefix, out);
    prefix.pop_back();
  }
}

}  // namespace

Clopen Clopen::empty(const Ultragraph& g) { return Clopen(g, empty_node(g, 0)); }

Clopen Clopen::whole(const Ultragraph& g) { return Clopen(g, full_node(g, 0)); }

Clopen Clopen::cone(const Ultragraph& g, const EdgePath& beta) {
  if (!is_path(g, beta)) return empty(g);
  return Clopen(g, chain(g, beta, full_node(g, beta.empty() ? 0 : beta.back())));
}

Clopen Clopen::from_cylinder(const Ultragraph& g, const Cylinder& c) {
  Node leaf = empty_node(g, c.base.empty() ? 0 : c.base.back());
  if (c.kind == Cylinder::Kind::Full) {
    for (const auto& a : m_alpha(g, c.base)) {
      if (a.subset_of(c.set)) leaf.atoms.push_back(a);
    }
    std::sort(leaf.atoms.begin(), leaf.atoms.end());
    leaf.full_edges = g.epsilon(c.set);
  } else {
    leaf.atoms = {c.set};
    leaf.full_edges = g.epsilon(c.set).minus(c.excluded);
  }
  return Clopen(g, chain(g, c.base, std::move(leaf)));
}

Clopen Clopen::tail(const Ultragraph& g, const EdgePath& beta, const UPSet& edges) {
  if (!is_path(g, beta)) bad_cylinder(ushift::to_string(beta) + " is not a path");
  const Index last = beta.empty() ? 0 : beta.back();
  if (!edges.subset_of(valid_edges(g, last))) bad_cylinder(edges.to_string() + " cannot follow the base");
  Node leaf = empty_node(g, last);
  leaf.full_edges = edges;
  return Clopen(g, chain(g, beta, std::move(leaf)));
}

Clopen Clopen::vertex_set(const Ultragraph& g, const UPSet& a) {
  Node root = empty_node(g, 0);
  for (const auto& m : g.all_minimal_emitters()) {
    if (m.subset_of(a)) root.atoms.push_back(m);
  }
  std::sort(root.atoms.begin(), root.atoms.end());
  root.full_edges = g.epsilon(a);
  return Clopen(g, std::move(root));
}

Clopen Clopen::atom(const Ultragraph& g, const Point& x) {
  if (x.is_infinite()) throw Error(ErrorCode::InvalidCylinder, "an infinite path is not a clopen point");
  Node leaf = empty_node(g, 0);
  leaf.atoms = {x.terminal()};
  return Clopen(g, chain(g, x.edges(), std::move(leaf)));
}

bool Clopen::contains(const Point& x) const {
  const Node* node = &root_;
  const auto len = x.length();
  for (Index k = 0;; ++k) {
    if (len && k == *len) return std::binary_search(node->atoms.begin(), node->atoms.end(), x.terminal());
    const Index e = x.edge(k + 1);
    if (node->full_edges.contains(e)) return true;
    node = find_child(*node, e);
    if (!node) return false;
  }
}

bool Clopen::is_empty() const { return is_empty_node(root_); }

Clopen Clopen::unite(const Clopen& other) const {
  return Clopen(*graph_, combine(*graph_, root_, other.root_, Op::Union));
}

Clopen Clopen::intersect(const Clopen& other) const {
  return Clopen(*graph_, combine(*graph_, root_, other.root_, Op::Intersect));
}

Clopen Clopen::minus(const Clopen& other) const {
  return Clopen(*graph_, combine(*graph_, root_, other.root_, Op::Difference));
}

Clopen Clopen::complement() const { return whole(*graph_).minus(*this); }

Clopen Clopen::strip_prefix(const EdgePath& beta) const {
  const Ultragraph& g = *graph_;
  if (!is_path(g, beta)) return empty(g);
  const Node* node = &root_;
  for (Index e : beta) {
    if (node->full_edges.contains(e)) return Clopen(g, chain(g, {}, full_node(g, beta.back())));
    node = find_child(*node, e);
    if (!node) return empty(g);
  }
  return Clopen(g, chain(g, {}, *node));
}

Clopen Clopen::attach_prefix(const EdgePath& beta) const {
  const Ultragraph& g = *graph_;
  if (beta.empty()) return *this;
  if (!is_path(g, beta)) throw Error(ErrorCode::OutsideDomain, ushift::to_string(beta) + " is not a path");
  if (!subset_of(vertex_set(g, path_range(g, beta)))) {
    throw Error(ErrorCode::OutsideDomain, "set leaves X_r(" + ushift::to_string(beta) + ")");
  }
  return Clopen(g, chain(g, beta, root_));
}

std::vector<Patch> Clopen::patches() const {
  std::vector<Patch> out;
  EdgePath prefix;
  collect(root_, prefix, out);
  return out;
}

std::string Clopen::to_string() const {
  std::string out = "{";
  bool first = true;
  for (const auto& p : patches()) {
    if (!first) out += "; ";
    first = false;
    out += (p.kind == Patch::Kind::Atom ? "fin " : "tail ") + ushift::to_string(p.base) + ":[" + p.set.to_string() + "]";
  }
  return out + "}";
}

// ---------------------------------------------------------------------------
// Separation and convergence

std::pair<Cylinder, Cylinder> separate(const Ultragraph& g, const Point& x, const Point& y) {
  if (x == y) throw Error(ErrorCode::PointsEqual, "cannot separate a point from itself");
  const auto lx = x.length();
  const auto ly = y.length();
  auto shorter = [](std::optional<Index> len, Index k) { return !len || k < *len; };
  Index k = 0;
  while (shorter(lx, k) && shorter(ly, k) && x.edge(k + 1) == y.edge(k + 1)) ++k;

  auto next_cone = [&](const Point& p) {
    const EdgePath beta = p.first_edges(k + 1);
    return Cylinder::full(g, beta, g.range(beta.back()));
  };
  // p ends at depth k; q continues with one more edge.
  auto finite_vs_longer = [&](const Point& p, const Point& q) {
    const Index f = q.edge(k + 1);
    const UPSet& a = p.terminal();
    if (a.contains(g.source(f))) {
      return std::pair{Cylinder::restricted(g, p.edges(), a, g.edge_set({f})), next_cone(q)};
    }
    return std::pair{Cylinder::full(g, p.edges(), a), next_cone(q)};
  };

  if (shorter(lx, k) && shorter(ly, k)) return {next_cone(x), next_cone(y)};
  if (!shorter(lx, k) && shorter(ly, k)) return finite_vs_longer(x, y);
  if (shorter(lx, k) && !shorter(ly, k)) {
    auto [cy, cx] = finite_vs_longer(y, x);
    return {cx, cy};
  }
  const UPSet& a = x.terminal();
  const UPSet& b = y.terminal();
  const UPSet meet = a.intersect(b);
  if (meet.is_empty()) return {Cylinder::full(g, x.edges(), a), Cylinder::full(g, y.edges(), b)};
  const UPSet f = g.epsilon(meet);
  return {Cylinder::restricted(g, x.edges(), a, f), Cylinder::restricted(g, y.edges(), b, f)};
}

ConvergenceReport converges(const Ultragraph& g, const std::function<Point(Index)>& sequence, const Point& x,
                            Index horizon) {
  ConvergenceReport report;
  report.horizon = horizon;
  std::vector<Point> terms;
  for (Index n = 1; n <= horizon; ++n) terms.push_back(sequence(n));

  auto run = [&](std::string label, const std::function<bool(const Point&)>& holds) {
    Index last = 0;
    for (Index n = 1; n <= horizon; ++n) {
      if (!holds(terms[static_cast<std::size_t>(n - 1)])) last = n;
    }
    report.tests.push_back({std::move(label), last});
  };

  const Index depth_tests = std::max<Index>(1, horizon / 4);
  if (x.is_infinite()) {
    for (Index m = 1; m <= depth_tests; ++m) {
      run("M=" + std::to_string(m), [&](const Point& p) {
        if (p.length() && *p.length() < m) return false;
        for (Index i = 1; i <= m; ++i) {
          if (p.edge(i) != x.edge(i)) return false;
        }
        return true;
      });
    }
  } else {
    const Index k = *x.length();
    const UPSet eps = g.epsilon(x.terminal());
    const auto firsts = eps.first_members(static_cast<std::size_t>(depth_tests));
    for (std::size_t size = 1; size <= firsts.size(); ++size) {
      const std::vector<Index> f(firsts.begin(), firsts.begin() + static_cast<std::ptrdiff_t>(size));
      std::string label = "F={";
      for (std::size_t i = 0; i < f.size(); ++i) label += (i ? ",e" : "e") + std::to_string(f[i]);
      label += "}";
      run(std::move(label), [&](const Point& p) {
        if (p == x) return true;
        if (p.length() && *p.length() <= k) return false;
        for (Index i = 1; i <= k; ++i) {
          if (p.edge(i) != x.edge(i)) return false;
        }
        const Index next = p.edge(k + 1);
        return eps.contains(next) && !std::binary_search(f.begin(), f.end(), next);
      });
    }
  }

  for (std::size_t i = 0; i < report.tests.size(); ++i) {
    if (report.tests[i].last_violation == horizon) {
      report.failing = i;
      report.verdict = ConvergenceReport::Verdict::CounterExample;
      return report;
    }
  }
  const bool settled = std::all_of(report.tests.begin(), report.tests.end(),
                                   [&](const ConvergenceTest& t) { return t.last_violation <= horizon / 2; });
  report.verdict = settled ? ConvergenceReport::Verdict::Certificate : ConvergenceReport::Verdict::Inconclusive;
  return report;
}

std::string to_string(ConvergenceReport::Verdict verdict) {
  switch (verdict) {
    case ConvergenceReport::Verdict::Certificate: return "Certificate";
    case ConvergenceReport::Verdict::CounterExample: return "CounterExample";
    case ConvergenceReport::Verdict::Inconclusive: return "Inconclusive";
  }
  return "";
}

}  // namespace ushift
