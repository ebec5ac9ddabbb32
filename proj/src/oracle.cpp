#include "ushift/oracle.hpp"

#include <algorithm>
#include <set>

#include "ushift/error.hpp"

namespace ushift::oracle {

namespace {

const EdgeFamily* family_of(const Presentation& p, Index e) {
  for (const auto& family : p.families) {
    if (const auto* single = std::get_if<SingleEdge>(&family)) {
      if (single->edge == e) return &family;
    } else if (std::get<IndexedFamily>(family).indices.contains(e)) {
      return &family;
    }
  }
  return nullptr;
}

using Bits = std::vector<bool>;

Bits truncate(const UPSet& s, Index cap) {
  Bits bits(static_cast<std::size_t>(cap));
  for (Index i = 1; i <= cap; ++i) bits[static_cast<std::size_t>(i - 1)] = s.contains(i);
  return bits;
}

Bits meet(const Bits& a, const Bits& b) {
  Bits out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] && b[i];
  return out;
}

bool any(const Bits& a) { return std::find(a.begin(), a.end(), true) != a.end(); }

bool proper_subset(const Bits& a, const Bits& b) {
  if (a == b) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] && !b[i]) return false;
  }
  return true;
}

}  // namespace

Index naive_source(const Presentation& p, Index e) {
  const EdgeFamily* family = family_of(p, e);
  if (!family) throw Error(ErrorCode::InvalidPath, "no edge e" + std::to_string(e));
  if (const auto* single = std::get_if<SingleEdge>(family)) return single->source;
  const auto& indexed = std::get<IndexedFamily>(*family);
  return indexed.source.scale * e + indexed.source.offset;
}

bool naive_in_range(const Presentation& p, Index e, Index v) {
  const EdgeFamily* family = family_of(p, e);
  if (!family) throw Error(ErrorCode::InvalidPath, "no edge e" + std::to_string(e));
  if (const auto* single = std::get_if<SingleEdge>(family)) return single->range.contains(v);
  const auto& indexed = std::get<IndexedFamily>(*family);
  const auto q = static_cast<Index>(indexed.ranges.size());
  return indexed.ranges[static_cast<std::size_t>(e % q)].contains(v);
}

std::vector<Index> naive_edges(const Presentation& p, Index cap) {
  std::vector<Index> out;
  for (Index e = 1; e <= cap; ++e) {
    if (family_of(p, e)) out.push_back(e);
  }
  return out;
}

std::vector<Point> enumerate_points(const Ultragraph& g, Index max_prefix, Index max_cycle, std::optional<Index> cap) {
  const Presentation& p = g.presentation();
  if (!cap) {
    if (p.edges.is_infinite()) throw Error(ErrorCode::CapRequired, "an index cap is needed for infinite edge sets");
    cap = p.edges.size();
  }
  const std::vector<Index> edges = naive_edges(p, *cap);
  auto follows = [&](Index e, Index f) { return naive_in_range(p, e, naive_source(p, f)); };

  // All paths of length <= n over `edges`, shortest first.
  auto paths_up_to = [&](Index n) {
    std::vector<EdgePath> out{{}};
    std::size_t begin = 0;
    for (Index len = 1; len <= n; ++len) {
      const std::size_t end = out.size();
      for (std::size_t i = begin; i < end; ++i) {
        for (Index e : edges) {
          if (out[i].empty() || follows(out[i].back(), e)) {
            EdgePath next = out[i];
            next.push_back(e);
            out.push_back(std::move(next));
          }
        }
      }
      begin = end;
    }
    return out;
  };

  const auto prefixes = paths_up_to(max_prefix);
  std::set<Point> points;
  for (const auto& alpha : prefixes) {
    for (const auto& a : m_alpha(g, alpha)) points.insert(Point::finite(g, alpha, a));
  }
  const auto cycles = paths_up_to(max_cycle);
  for (const auto& cycle : cycles) {
    if (cycle.empty() || !follows(cycle.back(), cycle.front())) continue;
    for (const auto& prefix : prefixes) {
      if (!prefix.empty() && !follows(prefix.back(), cycle.front())) continue;
      points.insert(Point::infinite(g, prefix, cycle));
    }
  }
  return {points.begin(), points.end()};
}

std::vector<UPSet> naive_minimal_emitters(const Presentation& p, Index cap) {
  const Universe truncated = Universe::finite(cap);
  const Index vertex_cap = p.vertices.is_infinite() ? cap : std::min(cap, p.vertices.size());
  const std::vector<Index> edges = naive_edges(p, cap);

  std::vector<Bits> ranges;
  for (Index e : edges) {
    Bits r(static_cast<std::size_t>(cap));
    for (Index v = 1; v <= vertex_cap; ++v) r[static_cast<std::size_t>(v - 1)] = naive_in_range(p, e, v);
    if (std::find(ranges.begin(), ranges.end(), r) == ranges.end()) ranges.push_back(std::move(r));
  }
  // Closure under nonempty intersections.
  std::vector<Bits> lattice = ranges;
  for (bool grew = true; grew;) {
    grew = false;
    const std::size_t n = lattice.size();
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        Bits m = meet(lattice[i], lattice[j]);
        if (any(m) && std::find(lattice.begin(), lattice.end(), m) == lattice.end()) {
          lattice.push_back(std::move(m));
          grew = true;
        }
      }
    }
  }

  // A family with a non-constant source gives each vertex at most one edge,
  // so beating the family count among late edges means infinitely many.
  const auto families = static_cast<Index>(p.families.size());
  auto emits_late = [&](const Bits& s) {
    Index count = 0;
    for (Index e : edges) {
      if (2 * e <= cap) continue;
      const Index v = naive_source(p, e);
      if (v <= cap && s[static_cast<std::size_t>(v - 1)]) ++count;
    }
    return count > families;
  };

  std::vector<Bits> candidates;
  for (const auto& l : lattice) {
    if (emits_late(l)) candidates.push_back(l);
  }
  for (Index v = 1; v <= vertex_cap; ++v) {
    Bits single(static_cast<std::size_t>(cap));
    single[static_cast<std::size_t>(v - 1)] = true;
    if (emits_late(single) && std::find(candidates.begin(), candidates.end(), single) == candidates.end()) {
      candidates.push_back(std::move(single));
    }
  }

  std::vector<UPSet> out;
  for (const auto& c : candidates) {
    const bool minimal =
        std::none_of(candidates.begin(), candidates.end(), [&](const Bits& d) { return proper_subset(d, c); });
    if (!minimal) continue;
    std::vector<Index> members;
    for (Index v = 1; v <= cap; ++v) {
      if (c[static_cast<std::size_t>(v - 1)]) members.push_back(v);
    }
    out.push_back(UPSet::of(truncated, members));
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool in_cylinder(const Presentation& p, const Cylinder& c, const Point& x, Index cap) {
  const auto n = static_cast<Index>(c.base.size());
  const auto len = x.length();
  if (len && *len < n) return false;
  for (Index k = 1; k <= n; ++k) {
    if (x.edge(k) != c.base[static_cast<std::size_t>(k - 1)]) return false;
  }
  if (len && *len == n) {
    // Terminal sets are ultimately periodic; agreement on [1, cap] with cap
    // past every threshold and period in play decides them.
    const Bits a = truncate(x.terminal(), cap);
    const Bits b = truncate(c.set, cap);
    if (c.kind == Cylinder::Kind::Restricted) return a == b;
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (a[i] && !b[i]) return false;
    }
    return true;
  }
  const Index next = x.edge(n + 1);
  if (!c.set.contains(naive_source(p, next))) return false;
  return !(c.kind == Cylinder::Kind::Restricted && c.excluded.contains(next));
}

bool in_vertex_set(const Presentation& p, const UPSet& a, const Point& x) {
  if (x.length() && *x.length() == 0) {
    for (Index v = 1; v <= 64; ++v) {
      if (x.terminal().contains(v) && !a.contains(v)) return false;
    }
    return true;
  }
  return a.contains(naive_source(p, x.edge(1)));
}

namespace {

bool naive_path(const Presentation& p, const EdgePath& a) {
  for (Index e : a) {
    if (!family_of(p, e)) return false;
  }
  for (std::size_t i = 1; i < a.size(); ++i) {
    if (!naive_in_range(p, a[i - 1], naive_source(p, a[i]))) return false;
  }
  return true;
}

// Every vertex <= 64 of the start of x lies in r(e) (and in r(f) if given).
bool starts_inside(const Presentation& p, const Point& x, std::size_t skip, Index e, std::optional<Index> f) {
  const auto ok = [&](Index v) { return naive_in_range(p, e, v) && (!f || naive_in_range(p, *f, v)); };
  const auto len = x.length();
  if (len && *len == static_cast<Index>(skip)) {
    for (Index v = 1; v <= 64; ++v) {
      if (x.terminal().contains(v) && !ok(v)) return false;
    }
    return true;
  }
  return ok(naive_source(p, x.edge(static_cast<Index>(skip) + 1)));
}

bool has_prefix(const Point& x, const EdgePath& a) {
  const auto len = x.length();
  if (len && *len < static_cast<Index>(a.size())) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (x.edge(static_cast<Index>(i) + 1) != a[i]) return false;
  }
  return true;
}

}  // namespace

bool in_word_domain(const Presentation& p, const EdgePath& a, const EdgePath& b, const Point& x) {
  if (!naive_path(p, a) || !naive_path(p, b)) return false;
  if (a.empty() && b.empty()) return true;
  if (b.empty()) return has_prefix(x, a);
  if (a.empty()) return starts_inside(p, x, 0, b.back(), std::nullopt);
  return has_prefix(x, a) && starts_inside(p, x, a.size(), a.back(), b.back());
}

Point replace_prefix(const Ultragraph& g, const EdgePath& a, const EdgePath& b, const Point& x) {
  const std::size_t k = b.size();
  if (!x.is_infinite()) {
    EdgePath edges = a;
    edges.insert(edges.end(), x.edges().begin() + static_cast<std::ptrdiff_t>(k), x.edges().end());
    return Point::finite(g, edges, x.terminal());
  }
  EdgePath prefix = a;
  EdgePath cycle = x.cycle();
  if (k <= x.edges().size()) {
    prefix.insert(prefix.end(), x.edges().begin() + static_cast<std::ptrdiff_t>(k), x.edges().end());
  } else {
    const std::size_t j = (k - x.edges().size()) % cycle.size();
    std::rotate(cycle.begin(), cycle.begin() + static_cast<std::ptrdiff_t>(j), cycle.end());
  }
  return Point::infinite(g, prefix, cycle);
}

Rational PointwiseElem::at(const FWord& g, const Point& x) const {
  auto it = terms.find(g);
  return it == terms.end() ? Rational(0) : it->second(x);
}

namespace {

using Coefficient = std::function<Rational(const Point&)>;

bool in_domain(const Presentation& p, const FWord& w, const Point& x) {
  if (w.shape() == FWord::Shape::Degenerate) return false;
  return in_word_domain(p, w.positive_part(), w.negative_part(), x);
}

void accumulate(PointwiseElem& out, const FWord& w, Coefficient f) {
  auto it = out.terms.find(w);
  if (it == out.terms.end()) {
    out.terms.emplace(w, std::move(f));
  } else {
    Coefficient old = it->second;
    it->second = [old, f](const Point& x) { return old(x) + f(x); };
  }
}

}  // namespace

PointwiseElem pointwise(const Ultragraph& g, const GenExpr& x) {
  const Presentation& p = g.presentation();
  const Ultragraph* gp = &g;
  PointwiseElem out;
  switch (x.op()) {
    case GenExpr::Op::Zero:
      break;
    case GenExpr::Op::S: {
      const FWord w = FWord::path({x.edge()});
      const EdgePath a{x.edge()};
      out.terms.emplace(w, [&p, a](const Point& y) { return Rational(in_word_domain(p, a, {}, y) ? 1 : 0); });
      break;
    }
    case GenExpr::Op::P: {
      const UPSet set = x.set();
      out.terms.emplace(FWord{}, [&p, set](const Point& y) { return Rational(in_vertex_set(p, set, y) ? 1 : 0); });
      break;
    }
    case GenExpr::Op::Star: {
      for (const auto& [w, f] : pointwise(g, x.lhs()).terms) {
        const FWord inv = w.inverse();
        const Coefficient fc = f;
        // f(theta_w(y)) on the domain of w^-1
        accumulate(out, inv, [&p, gp, w, inv, fc](const Point& y) {
          if (!in_domain(p, inv, y)) return Rational(0);
          return fc(replace_prefix(*gp, w.positive_part(), w.negative_part(), y));
        });
      }
      break;
    }
    case GenExpr::Op::Mul: {
      const PointwiseElem l = pointwise(g, x.lhs());
      const PointwiseElem r = pointwise(g, x.rhs());
      for (const auto& [w, f] : l.terms) {
        for (const auto& [t, h] : r.terms) {
          const Coefficient fc = f;
          const Coefficient hc = h;
          // f(y) h(theta_{w^-1}(y)) on the domain of w
          accumulate(out, w * t, [&p, gp, w, fc, hc](const Point& y) {
            if (!in_domain(p, w, y)) return Rational(0);
            const Rational a = fc(y);
            if (a == Rational(0)) return a;
            return a * hc(replace_prefix(*gp, w.negative_part(), w.positive_part(), y));
          });
        }
      }
      break;
    }
    case GenExpr::Op::Add:
    case GenExpr::Op::Sub: {
      out = pointwise(g, x.lhs());
      const Rational sign = x.op() == GenExpr::Op::Add ? 1 : -1;
      for (const auto& [w, f] : pointwise(g, x.rhs()).terms) {
        const Coefficient fc = f;
        accumulate(out, w, [fc, sign](const Point& y) { return sign * fc(y); });
      }
      break;
    }
  }
  return out;
}

std::optional<std::string> cross_check(const PartialAction& pa, const GenExpr& lhs, const GenExpr& rhs,
                                       const std::vector<Point>& points) {
  const Ultragraph& g = pa.graph();
  const PointwiseElem l = pointwise(g, lhs);
  const PointwiseElem r = pointwise(g, rhs);
  const CrossedElem ls = evaluate(pa, lhs);
  const CrossedElem rs = evaluate(pa, rhs);
  std::set<FWord> words;
  for (const auto& [w, f] : l.terms) words.insert(w);
  for (const auto& [w, f] : r.terms) words.insert(w);
  for (const auto& [w, f] : ls.terms()) words.insert(w);
  for (const auto& [w, f] : rs.terms()) words.insert(w);
  for (const auto& w : words) {
    const IndicatorCombo lc = ls.coefficient(w);
    const IndicatorCombo rc = rs.coefficient(w);
    for (const auto& x : points) {
      const Rational a = l.at(w, x);
      const Rational b = r.at(w, x);
      const std::string where = " at " + w.to_string() + ", " + x.to_string();
      if (a != b) return "sides differ" + where;
      if (lc.at(x) != a) return "symbolic left side differs" + where;
      if (rc.at(x) != b) return "symbolic right side differs" + where;
    }
  }
  return std::nullopt;
}

}  // namespace ushift::oracle
