#pragma once

#include <optional>
#include <utility>
#include <string>
#include <variant>
#include <vector>

#include "ushift/setcalc.hpp"

namespace ushift {

// s(e_i) = scale * i + offset.  scale == 0 gives a constant source, which is
// how a single vertex emits infinitely many edges.
struct AffineRule {
  Index scale = 1;
  Index offset = 0;

  Index operator()(Index i) const { return scale * i + offset; }
  auto operator<=>(const AffineRule&) const = default;
};

struct SingleEdge {
  Index edge = 0;
  Index source = 0;
  UPSet range;
};

// Edges e_i, i in `indices`, with s(e_i) = source(i) and
// r(e_i) = ranges[i mod ranges.size()].
struct IndexedFamily {
  UPSet indices;
  AffineRule source;
  std::vector<UPSet> ranges;
};

using EdgeFamily = std::variant<SingleEdge, IndexedFamily>;

struct Presentation {
  std::string name;
  Universe vertices = Universe::infinite();
  Universe edges = Universe::infinite();
  std::vector<EdgeFamily> families;
};

// An element of G^0 together with a witness of the form
// (union of range intersections) disjoint-union (finite vertex set).
struct GSet {
  UPSet set;
  std::vector<UPSet> lattice_parts;
  UPSet finite_part;
};

struct NotInGZero {
  UPSet residual;
};

struct ValidationReport {
  std::vector<UPSet> distinct_ranges;
  UPSet edge_set;
};

struct RangeDecomposition {
  Index edge = 0;  // smallest edge carrying this range
  UPSet range;
  std::vector<UPSet> minimal_emitters;
  std::vector<Index> vertices;
};

struct RfumPass {
  std::vector<RangeDecomposition> decompositions;
};

struct RfumFail {
  Index edge = 0;
  UPSet residual;
};

using RfumResult = std::variant<RfumPass, RfumFail>;

// Checks pairwise disjoint index sets, nonempty ranges, sources and ranges
// inside the vertex universe, and the absence of sinks.  Throws Error with
// OverlappingIndices, EmptyRange, SinkFound or InvalidPresentation.
ValidationReport validate(const Presentation& p);

// A validated presentation with its set-algebraic analysis precomputed.
// Immutable after construction.
class Ultragraph {
 public:
  explicit Ultragraph(Presentation p);

  const Presentation& presentation() const { return presentation_; }
  Universe vertex_universe() const { return presentation_.vertices; }
  Universe edge_universe() const { return presentation_.edges; }
  bool is_finite() const;

  const UPSet& edges() const { return edge_set_; }
  bool has_edge(Index e) const { return edge_set_.contains(e); }
  Index source(Index e) const;
  const UPSet& range(Index e) const;
  // eps(r(e)): the edges that may follow e in a path.
  const UPSet& successors(Index e) const;
  // Minimal infinite emitters contained in r(e).
  const std::vector<UPSet>& minimal_in_range(Index e) const;

  // eps(A) = {e : s(e) in A}
  UPSet epsilon(const UPSet& vertices) const;
  UPSet out_edges(Index v) const;
  bool is_infinite_emitter(const UPSet& vertices) const;
  // Vertices v with eps({v}) infinite (finitely many for any presentation).
  const std::vector<Index>& infinite_emitter_vertices() const { return infinite_vertices_; }

  const std::vector<UPSet>& distinct_ranges() const { return distinct_ranges_; }
  // Smallest edge whose range equals the i-th distinct range.
  Index range_witness(std::size_t i) const { return range_witness_[i]; }
  // Nonempty intersections of nonempty families of ranges.
  const std::vector<UPSet>& range_lattice() const { return lattice_; }

  // All minimal infinite emitters, or only those contained in `within`.
  std::vector<UPSet> minimal_infinite_emitters(const std::optional<UPSet>& within = std::nullopt) const;
  const std::vector<UPSet>& all_minimal_emitters() const { return minimal_emitters_; }
  bool is_minimal_infinite_emitter(const UPSet& a) const;

  std::variant<GSet, NotInGZero> gzero_member(const UPSet& s) const;
  bool in_gzero(const UPSet& s) const { return std::holds_alternative<GSet>(gzero_member(s)); }

  const RfumResult& rfum() const { return rfum_; }
  bool satisfies_rfum() const { return std::holds_alternative<RfumPass>(rfum_); }

  UPSet vertex_set(const std::vector<Index>& members) const {
    return UPSet::of(vertex_universe(), members);
  }
  UPSet edge_set(const std::vector<Index>& members) const {
    return UPSet::of(edge_universe(), members);
  }

 private:
  RfumResult compute_rfum() const;
  // Family holding e and the slot of its range in distinct_ranges_.
  std::pair<std::size_t, std::size_t> locate(Index e) const;

  Presentation presentation_;
  UPSet edge_set_;
  std::vector<UPSet> distinct_ranges_;
  std::vector<std::vector<std::size_t>> family_range_slots_;
  std::vector<UPSet> range_successors_;
  std::vector<std::vector<UPSet>> range_minimal_;
  std::vector<Index> range_witness_;
  std::vector<UPSet> lattice_;
  std::vector<Index> infinite_vertices_;
  std::vector<UPSet> minimal_emitters_;
  RfumResult rfum_;
};

}  // namespace ushift
