#include "ushift/ultragraph.hpp"

#include <algorithm>

#include "ushift/error.hpp"

namespace ushift {

namespace {

UPSet family_indices(const EdgeFamily& family, Universe edges) {
  if (const auto* single = std::get_if<SingleEdge>(&family)) {
    if (!edges.contains(single->edge)) {
      throw Error(ErrorCode::InvalidPresentation,
                  "edge e" + std::to_string(single->edge) + " outside edge universe");
    }
    return UPSet::singleton(edges, single->edge);
  }
  const auto& indexed = std::get<IndexedFamily>(family);
  if (indexed.indices.universe() != edges) {
    throw Error(ErrorCode::InvalidPresentation, "family index set over the wrong universe");
  }
  return indexed.indices;
}

UPSet residue_class(Universe u, Index modulus, Index residue) {
  return UPSet::from_predicate(u, 1, modulus, [=](Index i) { return i % modulus == residue; });
}

struct RangeUse {
  UPSet range;
  Index witness;
};

// Ranges actually carried by some edge, each with the smallest such edge.
std::vector<RangeUse> used_ranges(const Presentation& p) {
  std::vector<RangeUse> uses;
  for (const auto& family : p.families) {
    if (const auto* single = std::get_if<SingleEdge>(&family)) {
      uses.push_back({single->range, single->edge});
      continue;
    }
    const auto& indexed = std::get<IndexedFamily>(family);
    const auto q = static_cast<Index>(indexed.ranges.size());
    for (Index r = 0; r < q; ++r) {
      const UPSet carriers = indexed.indices.intersect(residue_class(p.edges, q, r));
      if (auto first = carriers.min_element()) {
        uses.push_back({indexed.ranges[static_cast<std::size_t>(r)], *first});
      }
    }
  }
  return uses;
}

bool set_order(const UPSet& a, const UPSet& b) {
  const auto ma = a.min_element();
  const auto mb = b.min_element();
  if (ma != mb) return ma < mb;
  return a.to_string() < b.to_string();
}

void sort_unique(std::vector<UPSet>& sets) {
  std::sort(sets.begin(), sets.end(), set_order);
  sets.erase(std::unique(sets.begin(), sets.end()), sets.end());
}

}  // namespace

ValidationReport validate(const Presentation& p) {
  if (p.families.empty()) {
    throw Error(ErrorCode::InvalidPresentation, "presentation has no edges");
  }
  ValidationReport report{{}, UPSet::empty(p.edges)};
  UPSet sources = UPSet::empty(p.vertices);
  for (const auto& family : p.families) {
    const UPSet indices = family_indices(family, p.edges);
    if (indices.is_empty()) {
      throw Error(ErrorCode::InvalidPresentation, "family with an empty index set");
    }
    const UPSet overlap = report.edge_set.intersect(indices);
    if (!overlap.is_empty()) {
      throw Error(ErrorCode::OverlappingIndices,
                  "edge e" + std::to_string(*overlap.min_element()) + " belongs to two families");
    }
    report.edge_set = report.edge_set.unite(indices);

    if (const auto* single = std::get_if<SingleEdge>(&family)) {
      if (!p.vertices.contains(single->source)) {
        throw Error(ErrorCode::InvalidPresentation,
                    "source of e" + std::to_string(single->edge) + " outside vertex universe");
      }
      if (single->range.universe() != p.vertices) {
        throw Error(ErrorCode::InvalidPresentation, "range over the wrong universe");
      }
      if (single->range.is_empty()) {
        throw Error(ErrorCode::EmptyRange, "empty range at e" + std::to_string(single->edge));
      }
      sources = sources.unite(UPSet::singleton(p.vertices, single->source));
      continue;
    }

    const auto& indexed = std::get<IndexedFamily>(family);
    const AffineRule rule = indexed.source;
    if (rule.scale < 0) {
      throw Error(ErrorCode::InvalidPresentation, "source rule needs a >= 0");
    }
    if (indexed.ranges.empty()) {
      throw Error(ErrorCode::InvalidPresentation, "indexed family without ranges");
    }
    const Index first = *indices.min_element();
    if (rule(first) < 1) {
      throw Error(ErrorCode::InvalidPresentation,
                  "source of e" + std::to_string(first) + " is not a vertex index");
    }
    if (!p.vertices.is_infinite() && rule.scale > 0 && indices.cardinality().infinite) {
      throw Error(ErrorCode::InvalidPresentation,
                  "injective source rule on infinitely many edges needs infinitely many vertices");
    }
    const auto q = static_cast<Index>(indexed.ranges.size());
    for (Index r = 0; r < q; ++r) {
      const UPSet& range = indexed.ranges[static_cast<std::size_t>(r)];
      if (range.universe() != p.vertices) {
        throw Error(ErrorCode::InvalidPresentation, "range over the wrong universe");
      }
      const UPSet carriers = indices.intersect(residue_class(p.edges, q, r));
      if (!carriers.is_empty() && range.is_empty()) {
        throw Error(ErrorCode::EmptyRange,
                    "empty range at e" + std::to_string(*carriers.min_element()));
      }
    }
    sources = sources.unite(indices.image_affine(p.vertices, rule.scale, rule.offset));
  }

  const UPSet sinks = UPSet::all(p.vertices).minus(sources);
  if (!sinks.is_empty()) {
    throw Error(ErrorCode::SinkFound, "vertex v" + std::to_string(*sinks.min_element()) + " is a sink");
  }

  auto uses = used_ranges(p);
  std::stable_sort(uses.begin(), uses.end(),
                   [](const RangeUse& a, const RangeUse& b) { return a.witness < b.witness; });
  for (const auto& use : uses) {
    if (std::find(report.distinct_ranges.begin(), report.distinct_ranges.end(), use.range) ==
        report.distinct_ranges.end()) {
      report.distinct_ranges.push_back(use.range);
    }
  }
  return report;
}

Ultragraph::Ultragraph(Presentation p) : presentation_(std::move(p)) {
  ValidationReport report = validate(presentation_);
  edge_set_ = std::move(report.edge_set);
  distinct_ranges_ = std::move(report.distinct_ranges);

  auto slot_of = [this](const UPSet& range) {
    const auto it = std::find(distinct_ranges_.begin(), distinct_ranges_.end(), range);
    return static_cast<std::size_t>(it - distinct_ranges_.begin());
  };
  for (const auto& family : presentation_.families) {
    std::vector<std::size_t> slots;
    if (const auto* single = std::get_if<SingleEdge>(&family)) {
      slots.push_back(slot_of(single->range));
    } else {
      // Residue classes carrying no edge get an out-of-range slot; locate()
      // never returns them.
      for (const auto& range : std::get<IndexedFamily>(family).ranges) slots.push_back(slot_of(range));
    }
    family_range_slots_.push_back(std::move(slots));
  }

  auto uses = used_ranges(presentation_);
  for (const auto& range : distinct_ranges_) {
    Index witness = 0;
    for (const auto& use : uses) {
      if (use.range == range && (witness == 0 || use.witness < witness)) witness = use.witness;
    }
    range_witness_.push_back(witness);
  }

  // Closure of the distinct ranges under nonempty intersection.
  lattice_ = distinct_ranges_;
  for (std::size_t i = 0; i < lattice_.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      UPSet meet = lattice_[i].intersect(lattice_[j]);
      if (!meet.is_empty() && std::find(lattice_.begin(), lattice_.end(), meet) == lattice_.end()) {
        lattice_.push_back(std::move(meet));
      }
    }
  }
  sort_unique(lattice_);

  for (const auto& family : presentation_.families) {
    const auto* indexed = std::get_if<IndexedFamily>(&family);
    if (indexed && indexed->source.scale == 0 && indexed->indices.cardinality().infinite) {
      infinite_vertices_.push_back(indexed->source.offset);
    }
  }
  std::sort(infinite_vertices_.begin(), infinite_vertices_.end());
  infinite_vertices_.erase(std::unique(infinite_vertices_.begin(), infinite_vertices_.end()),
                           infinite_vertices_.end());

  // Candidates: infinite-emitter range intersections and singletons (docs/minimality.md).
  std::vector<UPSet> candidates;
  for (const auto& l : lattice_) {
    if (is_infinite_emitter(l)) candidates.push_back(l);
  }
  for (Index v : infinite_vertices_) candidates.push_back(vertex_set({v}));
  sort_unique(candidates);
  for (const auto& c : candidates) {
    const bool minimal = std::none_of(candidates.begin(), candidates.end(), [&](const UPSet& d) {
      return d != c && d.subset_of(c);
    });
    if (minimal) minimal_emitters_.push_back(c);
  }

  for (const auto& range : distinct_ranges_) {
    range_successors_.push_back(epsilon(range));
    range_minimal_.push_back(minimal_infinite_emitters(range));
  }
  rfum_ = compute_rfum();
}

bool Ultragraph::is_finite() const {
  return !vertex_universe().is_infinite() && !edge_set_.cardinality().infinite;
}

std::pair<std::size_t, std::size_t> Ultragraph::locate(Index e) const {
  const auto& families = presentation_.families;
  for (std::size_t f = 0; f < families.size(); ++f) {
    if (const auto* single = std::get_if<SingleEdge>(&families[f])) {
      if (single->edge == e) return {f, family_range_slots_[f][0]};
    } else {
      const auto& indexed = std::get<IndexedFamily>(families[f]);
      if (indexed.indices.contains(e)) {
        const auto q = static_cast<Index>(indexed.ranges.size());
        return {f, family_range_slots_[f][static_cast<std::size_t>(e % q)]};
      }
    }
  }
  throw Error(ErrorCode::InvalidPath, "no edge e" + std::to_string(e));
}

Index Ultragraph::source(Index e) const {
  const auto& family = presentation_.families[locate(e).first];
  if (const auto* single = std::get_if<SingleEdge>(&family)) return single->source;
  return std::get<IndexedFamily>(family).source(e);
}

const UPSet& Ultragraph::range(Index e) const { return distinct_ranges_[locate(e).second]; }

const UPSet& Ultragraph::successors(Index e) const { return range_successors_[locate(e).second]; }

const std::vector<UPSet>& Ultragraph::minimal_in_range(Index e) const {
  return range_minimal_[locate(e).second];
}

UPSet Ultragraph::epsilon(const UPSet& vertices) const {
  if (vertices.universe() != vertex_universe()) {
    throw Error(ErrorCode::UniverseMismatch, "vertex set over the wrong universe");
  }
  UPSet result = UPSet::empty(edge_universe());
  for (const auto& family : presentation_.families) {
    if (const auto* single = std::get_if<SingleEdge>(&family)) {
      if (vertices.contains(single->source)) {
        result = result.unite(UPSet::singleton(edge_universe(), single->edge));
      }
      continue;
    }
    const auto& indexed = std::get<IndexedFamily>(family);
    const UPSet hit =
        vertices.preimage_affine(edge_universe(), indexed.source.scale, indexed.source.offset);
    result = result.unite(hit.intersect(indexed.indices));
  }
  return result;
}

UPSet Ultragraph::out_edges(Index v) const { return epsilon(vertex_set({v})); }

bool Ultragraph::is_infinite_emitter(const UPSet& vertices) const {
  return epsilon(vertices).cardinality().infinite;
}

std::vector<UPSet> Ultragraph::minimal_infinite_emitters(const std::optional<UPSet>& within) const {
  if (!within) return minimal_emitters_;
  std::vector<UPSet> out;
  for (const auto& m : minimal_emitters_) {
    if (m.subset_of(*within)) out.push_back(m);
  }
  return out;
}

bool Ultragraph::is_minimal_infinite_emitter(const UPSet& a) const {
  return std::find(minimal_emitters_.begin(), minimal_emitters_.end(), a) != minimal_emitters_.end();
}

std::variant<GSet, NotInGZero> Ultragraph::gzero_member(const UPSet& s) const {
  if (s.universe() != vertex_universe()) {
    throw Error(ErrorCode::UniverseMismatch, "vertex set over the wrong universe");
  }
  std::vector<UPSet> inside;
  for (const auto& l : lattice_) {
    if (l.subset_of(s)) inside.push_back(l);
  }
  // Drop parts already covered by a larger part.
  std::vector<UPSet> parts;
  for (const auto& l : inside) {
    const bool covered = std::any_of(inside.begin(), inside.end(), [&](const UPSet& other) {
      return other != l && l.subset_of(other);
    });
    if (!covered) parts.push_back(l);
  }
  UPSet covered = UPSet::empty(vertex_universe());
  for (const auto& part : parts) covered = covered.unite(part);
  UPSet residual = s.minus(covered);
  if (residual.cardinality().infinite) return NotInGZero{std::move(residual)};
  return GSet{s, std::move(parts), std::move(residual)};
}

RfumResult Ultragraph::compute_rfum() const {
  RfumPass pass;
  for (std::size_t i = 0; i < distinct_ranges_.size(); ++i) {
    const UPSet& range = distinct_ranges_[i];
    RangeDecomposition decomposition{range_witness_[i], range, minimal_infinite_emitters(range), {}};
    UPSet covered = UPSet::empty(vertex_universe());
    for (const auto& m : decomposition.minimal_emitters) covered = covered.unite(m);
    const UPSet residual = range.minus(covered);
    if (residual.cardinality().infinite) return RfumFail{range_witness_[i], residual};
    decomposition.vertices = residual.members();
    pass.decompositions.push_back(std::move(decomposition));
  }
  return pass;
}

}  // namespace ushift
