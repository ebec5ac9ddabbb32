#pragma once

// Cylinder sets, the boolean algebra they generate, Hausdorff separation
// and convergence checks.

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "ushift/setcalc.hpp"
#include "ushift/ultragraph.hpp"
#include "ushift/ultrapath.hpp"

namespace ushift {

// D_(beta,B) or D_(beta,B),F.
struct Cylinder {
  enum class Kind { Full, Restricted };

  Kind kind = Kind::Full;
  EdgePath base;
  UPSet set;
  UPSet excluded;  // edges; Restricted only

  // Throws InvalidCylinder unless B is a nonempty G^0 set inside r(beta).
  static Cylinder full(const Ultragraph& g, EdgePath base, UPSet b);
  // Throws InvalidCylinder unless (beta, B) is a point and F a finite
  // subset of eps(B).
  static Cylinder restricted(const Ultragraph& g, EdgePath base, UPSet b, UPSet f);

  // Membership straight from the definition.
  bool contains(const Ultragraph& g, const Point& x) const;

  std::string to_string() const;
  auto operator<=>(const Cylinder&) const = default;
};

// `full e1:[ap(3,1,1)]` or `restricted e1:[ap(3,1,1)] without [fin{3}]`.
Cylinder parse_cylinder(const Ultragraph& g, const std::string& text, int line = 1, int column = 1);

// One piece of a clopen set in normal form: the single point (base, set)
// or the tail {base.x' : first edge of x' in set}.
struct Patch {
  enum class Kind { Atom, Tail };
  Kind kind;
  EdgePath base;
  UPSet set;
};

// A set in the boolean algebra generated by cylinders, stored as a prefix
// trie.  The node at prefix beta holds
//   atoms       terminal sets A of points (beta, A) in the set,
//   full_edges  edges e whose whole cone beta.e... lies in the set,
//   children    partial cones, keyed by edge.
// Nodes are kept coarsest: full children are folded into full_edges and
// empty ones dropped, so equality is structural.
class Clopen {
 public:
  struct Node {
    Index edge = 0;  // edge leading here; 0 at the root
    std::vector<UPSet> atoms;
    UPSet full_edges;
    std::vector<Node> children;  // sorted by edge

    bool operator==(const Node&) const = default;
  };

  static Clopen empty(const Ultragraph& g);
  static Clopen whole(const Ultragraph& g);
  // Every point with prefix beta (D_(beta, r(beta)); X for the empty path).
  static Clopen cone(const Ultragraph& g, const EdgePath& beta);
  static Clopen from_cylinder(const Ultragraph& g, const Cylinder& c);
  // Tail(beta, E) = {beta.x' : first edge of x' in E}; E must lie in eps(r(beta)).
  static Clopen tail(const Ultragraph& g, const EdgePath& beta, const UPSet& edges);
  // X_A = {x : s(x) inside A}.
  static Clopen vertex_set(const Ultragraph& g, const UPSet& a);
  // {(alpha, A)} for a finite point.
  static Clopen atom(const Ultragraph& g, const Point& x);

  const Ultragraph& graph() const { return *graph_; }
  const Node& root() const { return root_; }

  bool contains(const Point& x) const;
  bool is_empty() const;
  bool subset_of(const Clopen& other) const { return minus(other).is_empty(); }

  Clopen unite(const Clopen& other) const;
  Clopen intersect(const Clopen& other) const;
  Clopen minus(const Clopen& other) const;
  // X minus this set.
  Clopen complement() const;

  // {x' : beta.x' in S}.
  Clopen strip_prefix(const EdgePath& beta) const;
  // {beta.x' : x' in S}; throws OutsideDomain unless S lies in X_{r(beta)}.
  Clopen attach_prefix(const EdgePath& beta) const;

  std::vector<Patch> patches() const;
  // `{}` or `{fin e1:[ap(3,1,1)]; tail e1:[ap(3,1,1)]}`.
  std::string to_string() const;

  bool operator==(const Clopen& other) const { return root_ == other.root_; }

 private:
  Clopen(const Ultragraph& g, Node root) : graph_(&g), root_(std::move(root)) {}

  const Ultragraph* graph_;
  Node root_;
};

// Disjoint basic neighbourhoods of x and y.  Throws PointsEqual.
std::pair<Cylinder, Cylinder> separate(const Ultragraph& g, const Point& x, const Point& y);

struct ConvergenceTest {
  std::string label;     // `M=3` or `F={e3,e4}`
  Index last_violation;  // 0 when the condition holds from the start
};

struct ConvergenceReport {
  enum class Verdict { Certificate, CounterExample, Inconclusive };
  Verdict verdict = Verdict::Inconclusive;
  Index horizon = 0;
  std::vector<ConvergenceTest> tests;
  // Index into tests of the first one still failing at the horizon.
  std::optional<std::size_t> failing;
};

// Checks the convergence criterion for x^1, ..., x^horizon against x.
// Finite sets F tested are the k smallest edges of eps(A), and depths M
// run over 1 .. horizon/4.  Certificate when every test settles by
// horizon/2, CounterExample when one still fails at the horizon.
ConvergenceReport converges(const Ultragraph& g, const std::function<Point(Index)>& sequence, const Point& x,
                            Index horizon);

std::string to_string(ConvergenceReport::Verdict verdict);

}  // namespace ushift
