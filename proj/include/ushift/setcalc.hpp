#pragma once

// Ultimately periodic subsets of a 1-based index universe.
//
// A set over the infinite universe {1, 2, 3, ...} is stored as a prefix of
// explicit membership bits for indices 1 .. start-1 followed by a pattern of
// `period` bits that repeats from index `start` on.  Sets over a finite
// universe {1, ..., n} keep all n bits in the prefix and have no pattern.
// Every value is kept canonical (minimal period, then minimal start), so two
// sets are equal exactly when their representations are equal.

#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace ushift {

using Index = std::int64_t;

class Universe {
 public:
  static Universe infinite() { return Universe(true, 0); }
  static Universe finite(Index size) { return Universe(false, size); }

  bool is_infinite() const { return infinite_; }
  Index size() const { return size_; }
  bool contains(Index i) const { return i >= 1 && (infinite_ || i <= size_); }

  auto operator<=>(const Universe&) const = default;
  std::string to_string() const;

 private:
  Universe(bool infinite, Index size) : infinite_(infinite), size_(size) {}

  bool infinite_;
  Index size_;
};

struct Cardinality {
  bool infinite = false;
  Index count = 0;  // meaningful only when finite

  auto operator<=>(const Cardinality&) const = default;
};

class UPSet {
 public:
  UPSet() : UPSet(empty(Universe::infinite())) {}

  static UPSet empty(Universe u);
  static UPSet all(Universe u);
  static UPSet of(Universe u, const std::vector<Index>& members);
  static UPSet singleton(Universe u, Index i) { return of(u, {i}); }
  // {i >= start : pattern[(i - start) mod pattern.size()]}
  static UPSet periodic(Universe u, Index start, const std::vector<bool>& pattern);
  // Builds a set from a predicate that is periodic with `period` for all
  // indices >= threshold.  Finite universes ignore threshold and period.
  static UPSet from_predicate(Universe u, Index threshold, Index period,
                              const std::function<bool(Index)>& member);

  const Universe& universe() const { return universe_; }
  bool contains(Index i) const;
  Cardinality cardinality() const;
  bool is_empty() const;
  bool is_finite() const { return !cardinality().infinite; }
  bool subset_of(const UPSet& other) const;
  bool intersects(const UPSet& other) const { return !intersect(other).is_empty(); }

  std::optional<Index> min_element() const;
  // Members in increasing order, at most `limit` of them.
  std::vector<Index> first_members(std::size_t limit) const;
  // All members; throws for infinite sets.
  std::vector<Index> members() const;
  // Members of the set that are <= bound.
  std::vector<Index> members_up_to(Index bound) const;

  UPSet unite(const UPSet& other) const;
  UPSet intersect(const UPSet& other) const;
  UPSet minus(const UPSet& other) const;
  UPSet complement() const;

  // {i in domain : scale * i + offset in *this}
  UPSet preimage_affine(Universe domain, Index scale, Index offset) const;
  // {scale * i + offset : i in *this}, as a subset of `codomain`.
  UPSet image_affine(Universe codomain, Index scale, Index offset) const;
  // Same members, reinterpreted over another universe (truncating if needed).
  UPSet rebase(Universe target) const;

  // Threshold after which membership is purely periodic, and the period.
  Index start() const { return static_cast<Index>(prefix_.size()) + 1; }
  Index period() const { return static_cast<Index>(pattern_.size()); }
  const std::vector<bool>& prefix_bits() const { return prefix_; }
  const std::vector<bool>& pattern_bits() const { return pattern_; }

  // Canonical literal: `fin{...}`, `ap(start,period,bits)` or `fin{...}|ap(...)`.
  std::string to_string() const;

  auto operator<=>(const UPSet&) const = default;

 private:
  UPSet(Universe u, std::vector<bool> prefix, std::vector<bool> pattern);

  void canonicalize();
  bool bit(Index i) const;

  enum class Op { Union, Intersect, Difference };
  static UPSet combine(const UPSet& a, const UPSet& b, Op op);

  Universe universe_;
  std::vector<bool> prefix_;
  std::vector<bool> pattern_;
};

// Set literal parser: `fin{1,3}`, `ap(start,period,bits)`, `all`, `none`,
// combined with `|`, `&`, `\`, unary `~` and parentheses.
// `line` and `column` locate the first character for diagnostics.
UPSet parse_set(const std::string& text, Universe u, int line = 1, int column = 1);

}  // namespace ushift
