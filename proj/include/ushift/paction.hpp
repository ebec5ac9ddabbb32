#pragma once

// Reduced words in the free group on the edges, and the partial action
// theta_c : X_{c^-1} -> X_c on the shift space.

#include <compare>
#include <string>
#include <vector>

#include "ushift/setcalc.hpp"
#include "ushift/topology.hpp"
#include "ushift/ultragraph.hpp"
#include "ushift/ultrapath.hpp"

namespace ushift {

struct Letter {
  Index edge = 0;
  bool inverse = false;
  auto operator<=>(const Letter&) const = default;
};

class FWord {
 public:
  enum class Shape { Zero, Pos, Neg, Mixed, Degenerate };

  FWord() = default;
  // Cancels adjacent x x^-1 pairs.
  static FWord reduce(const std::vector<Letter>& letters);
  static FWord path(const EdgePath& a);
  // a b^-1
  static FWord mixed(const EdgePath& a, const EdgePath& b);

  const std::vector<Letter>& letters() const { return letters_; }
  bool is_zero() const { return letters_.empty(); }
  Shape shape() const;
  // For a word a b^-1 (any of Zero/Pos/Neg/Mixed): a and b.
  EdgePath positive_part() const;
  EdgePath negative_part() const;

  FWord inverse() const;
  FWord operator*(const FWord& other) const;

  // `0`, `e1.e2`, `~e2~e1`, `e1.e2~e3`.
  std::string to_string() const;
  auto operator<=>(const FWord&) const = default;

 private:
  std::vector<Letter> letters_;
};

FWord parse_word(const std::string& text, int line = 1, int column = 1);
std::string to_string(FWord::Shape shape);

// #positive - #negative letters.  Throws DegenerateWord.
long long degree(const FWord& c);

struct AxiomReport {
  Index sampled = 0;
  Index checked = 0;  // points in X_{h^-1} sent into X_{t^-1}
  bool composition_ok = true;
  bool containment_ok = true;
  std::vector<std::string> failures;
  bool ok() const { return composition_ok && containment_ok; }
};

class PartialAction {
 public:
  // Throws RfumRequired.
  explicit PartialAction(const Ultragraph& g);

  const Ultragraph& graph() const { return *g_; }

  // X_c.
  Clopen domain(const FWord& c) const;
  // X_{e^-1} assembled from the range decomposition of r(e).
  Clopen range_domain_by_decomposition(Index e) const;
  // theta_c; throws OutsideDomain unless x lies in X_{c^-1}.
  Point act(const FWord& c, const Point& x) const;
  // theta_c(S cap X_{c^-1}).
  Clopen pushforward(const FWord& c, const Clopen& s) const;
  // X_A assembled from the G^0 certificate of A; throws NotInGZero.
  Clopen xa_set(const UPSet& a) const;
  // X_{v} for a single vertex.
  Clopen vertex_domain(Index v) const;

  AxiomReport axioms_check(const FWord& t, const FWord& h, const std::vector<Point>& sample) const;

 private:
  const Ultragraph* g_;
};

}  // namespace ushift
