#pragma once

// Brute-force counterparts of the symbolic modules, for cross-checking.
// Everything here works on explicit enumerations read straight off the
// presentation and never calls the algorithms it is meant to check.

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ushift/crossed.hpp"
#include "ushift/topology.hpp"
#include "ushift/ultragraph.hpp"
#include "ushift/ultrapath.hpp"

namespace ushift::oracle {

// s(e) and membership in r(e) evaluated from the families.
Index naive_source(const Presentation& p, Index e);
bool naive_in_range(const Presentation& p, Index e, Index v);
// All edge indices <= cap (or the whole finite edge universe).
std::vector<Index> naive_edges(const Presentation& p, Index cap);

// Every point with at most `max_prefix` edges before the end (finite
// points, terminals from m_alpha) or before a cycle of length at most
// `max_cycle`, using edges with index <= cap.  Throws CapRequired when
// the edge set is infinite and no cap is given.
std::vector<Point> enumerate_points(const Ultragraph& g, Index max_prefix, Index max_cycle,
                                    std::optional<Index> cap = std::nullopt);

// Minimal infinite emitters recomputed on sets truncated to [1, cap].  A
// truncated set counts as an infinite emitter when it emits more edges
// with index in (cap/2, cap] than there are families.  Results are over
// Universe::finite(cap).
std::vector<UPSet> naive_minimal_emitters(const Presentation& p, Index cap);

// Cylinder membership from the definition, with sources read off the
// presentation and terminal sets compared pointwise up to `cap`.
bool in_cylinder(const Presentation& p, const Cylinder& c, const Point& x, Index cap = 64);

// s(x) inside A.
bool in_vertex_set(const Presentation& p, const UPSet& a, const Point& x);

// x in X_{a b^-1}, decided from prefixes and pointwise range checks.
// Degenerate words have empty domain; `b` empty means a positive word.
bool in_word_domain(const Presentation& p, const EdgePath& a, const EdgePath& b, const Point& x);
// theta_{a b^-1}(x) by literal prefix replacement; x must be in the
// domain of b a^-1.
Point replace_prefix(const Ultragraph& g, const EdgePath& a, const EdgePath& b, const Point& x);

// A crossed-product element as coefficient functions x -> f_g(x), built
// by composing prefix replacements point by point.
struct PointwiseElem {
  std::map<FWord, std::function<Rational(const Point&)>> terms;
  Rational at(const FWord& g, const Point& x) const;
};

PointwiseElem pointwise(const Ultragraph& g, const GenExpr& x);

// nullopt when lhs and rhs agree pointwise on `points` and the symbolic
// value of each side matches its pointwise evaluation; else the first
// disagreement.
std::optional<std::string> cross_check(const PartialAction& pa, const GenExpr& lhs, const GenExpr& rhs,
                                       const std::vector<Point>& points);

}  // namespace ushift::oracle
