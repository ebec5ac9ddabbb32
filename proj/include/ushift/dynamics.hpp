#pragma once

// The shift map, local windows, the conversion of a finite ultragraph into
// a graph with its conjugacy, and a table-based shift-morphism checker.

#include <string>
#include <utility>
#include <vector>

#include "ushift/topology.hpp"
#include "ushift/ultragraph.hpp"
#include "ushift/ultrapath.hpp"

namespace ushift {

// sigma: drops the first edge; (e, A) |-> (A, A); identity on (A, A).
Point shift(const Point& x);

// A basic neighbourhood of x without length-zero points on which sigma is
// injective.  Throws LengthZeroPoint when |x| = 0.
Cylinder local_window(const Ultragraph& g, const Point& x);

// Graph with edges f_{e,v}, v in r(e), numbered in (e, v) order, and
// s(f_{e,v}) = s(e), r(f_{e,v}) = {v}.
struct GraphConversion {
  Presentation graph;
  std::vector<std::pair<Index, Index>> labels;  // labels[k-1] = (e, v) for f_k

  Index edge_for(Index e, Index v) const;
  // g_i = f_{e_i, s(e_{i+1})} on an infinite path of the ultragraph.
  Point phi(const Ultragraph& source, const Ultragraph& target, const Point& x) const;
  // (alpha, {v}) |-> the graph path of length |alpha| ending in f_{e_n, v}.
  EdgePath phi_path(const Ultragraph& source, const EdgePath& alpha, Index v) const;
  // Inverse of phi_path.
  std::pair<EdgePath, Index> unphi_path(const EdgePath& path) const;
};

// Throws NotFinite unless both the vertex and edge sets are finite.
GraphConversion to_graph(const Ultragraph& g);

struct BijectionReport {
  bool ok = true;
  // Per length: (ultrapaths (alpha, {v}), graph paths).
  std::vector<std::pair<Index, Index>> counts;
  std::string failure;
};

// phi_path is a bijection from ultrapaths (alpha, {v}), v in r(alpha),
// 1 <= |alpha| <= max_length, onto graph paths of the same lengths.
BijectionReport check_path_bijection(const Ultragraph& source, const Ultragraph& target,
                                     const GraphConversion& conversion, Index max_length);

// Finite partial map between two shift spaces.
struct MorphismTable {
  const Ultragraph* source = nullptr;
  const Ultragraph* target = nullptr;
  std::vector<std::pair<Point, Point>> entries;
  bool length_preserving = true;
};

struct MorphismReport {
  bool commutes = true;
  bool preserves_length = true;
  bool injective = true;
  bool prefix_rule = true;  // phi(a.x) = b.phi(x)
  Index checked = 0;
  std::vector<std::string> failures;

  bool ok(bool require_length) const {
    return commutes && injective && prefix_rule && (preserves_length || !require_length);
  }
};

// Checks phi(sigma^k x) = sigma^k phi(x) for k <= depth, length
// preservation, injectivity and phi(a.x) = b.phi(x) on the table.  Throws
// TableNotShiftClosed when some sigma^k x (k <= depth) is missing.
MorphismReport morphism_check(const MorphismTable& table, Index depth);

// Table text: `map <point> -> <point>` lines, `#` comments.
MorphismTable parse_morphism_table(const Ultragraph& source, const Ultragraph& target, const std::string& text);
std::string write_morphism_table(const MorphismTable& table);

}  // namespace ushift
