#pragma once

// Finite paths, ultrapaths (alpha, A) and points of the shift space.

#include <compare>
#include <optional>
#include <string>
#include <vector>

#include "ushift/setcalc.hpp"
#include "ushift/ultragraph.hpp"

namespace ushift {

using EdgePath = std::vector<Index>;

// True when s(e_{i+1}) lies in r(e_i) for consecutive edges of `edges`.
bool is_path(const Ultragraph& g, const EdgePath& edges);
// r(alpha) = r(last edge); the empty path has no range.
const UPSet& path_range(const Ultragraph& g, const EdgePath& edges);
// Minimal infinite emitters inside r(alpha); all of them for the empty path.
std::vector<UPSet> m_alpha(const Ultragraph& g, const EdgePath& alpha);

// (alpha, A) with A in G^0, A inside r(alpha) when alpha is nonempty.
struct Ultrapath {
  EdgePath edges;
  UPSet terminal;

  Index length() const { return static_cast<Index>(edges.size()); }
  const UPSet& range() const { return terminal; }
  auto operator<=>(const Ultrapath&) const = default;
};

// Throws InvalidPath unless `u` is an ultrapath of `g`.
void check_ultrapath(const Ultragraph& g, const Ultrapath& u);
// alpha |-> (alpha, r(alpha)).
Ultrapath embed(const Ultragraph& g, const EdgePath& alpha);
// s((alpha, A)) = {s(alpha)}; s(A) = A.
UPSet source(const Ultragraph& g, const Ultrapath& u);

// x . y, covering the vertex-vertex, vertex-path, path-vertex and
// path-path cases.  Throws NotComposable when undefined.
Ultrapath concat(const Ultragraph& g, const Ultrapath& x, const Ultrapath& y);

// A point of X: either a finite path ended by a minimal infinite emitter
// or an eventually periodic infinite path prefix.cycle.cycle...
//
// Infinite paths are kept canonical: the cycle is primitive and the prefix
// never ends with the cycle's last edge, so equal paths compare equal.
class Point {
 public:
  static Point finite(const Ultragraph& g, EdgePath edges, UPSet terminal);
  static Point infinite(const Ultragraph& g, EdgePath prefix, EdgePath cycle);

  bool is_infinite() const { return !cycle_.empty(); }
  // Number of edges; nullopt for infinite paths.
  std::optional<Index> length() const;
  // Finite path, or the prefix of an infinite path.
  const EdgePath& edges() const { return edges_; }
  const EdgePath& cycle() const { return cycle_; }
  const UPSet& terminal() const { return terminal_; }
  // k-th edge, 1-based; k must not exceed the length.
  Index edge(Index k) const;
  // The first min(n, length) edges.
  EdgePath first_edges(Index n) const;
  // s(x): the source vertex set ({s(e_1)}, or A for (A, A)).
  UPSet source(const Ultragraph& g) const;
  // Drops the first edge; identity on length-zero points.
  Point shifted() const;

  std::string to_string() const;
  auto operator<=>(const Point&) const = default;

 private:
  Point(EdgePath edges, EdgePath cycle, UPSet terminal)
      : edges_(std::move(edges)), cycle_(std::move(cycle)), terminal_(std::move(terminal)) {}
  void canonicalize();

  EdgePath edges_;
  EdgePath cycle_;
  UPSet terminal_;
};

// y . gamma.  Zero-length y = A keeps gamma when s(gamma) lies in A; a
// zero-length gamma = (B, B) needs B inside r(y).
Point concat_point(const Ultragraph& g, const Ultrapath& y, const Point& gamma);

// `path e1.e3(cycle e4.e5)` or `fin e1:[ap(3,1,1)]`.
Point parse_point(const Ultragraph& g, const std::string& text, int line = 1, int column = 1);
// `e1.e2.e3`; the empty string is the empty path.
EdgePath parse_edge_path(const std::string& text, int line = 1, int column = 1);
std::string to_string(const EdgePath& edges);

}  // namespace ushift
