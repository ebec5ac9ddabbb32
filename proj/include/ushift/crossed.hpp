#pragma once

// Finite sums f_g delta_g in the partial crossed product, with f_g a
// rational combination of clopen indicators.

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <boost/rational.hpp>

#include "ushift/paction.hpp"
#include "ushift/topology.hpp"

namespace ushift {

// Compare against Rational(0), not 0: the mixed operator== recurses under C++20.
using Rational = boost::rational<long long>;

std::string to_string(const Rational& q);

// sum c_i 1_{S_i} with the S_i disjoint and the c_i distinct and nonzero:
// one level set per value, so equal functions compare equal.
class IndicatorCombo {
 public:
  explicit IndicatorCombo(const Ultragraph& g) : graph_(&g) {}
  static IndicatorCombo indicator(const Clopen& s, Rational c = 1);

  const std::map<Rational, Clopen>& parts() const { return parts_; }
  bool is_zero() const { return parts_.empty(); }
  Clopen support() const;
  Rational at(const Point& x) const;

  IndicatorCombo operator+(const IndicatorCombo& other) const;
  IndicatorCombo operator-(const IndicatorCombo& other) const { return *this + other.scaled(-1); }
  // pointwise product
  IndicatorCombo operator*(const IndicatorCombo& other) const;
  IndicatorCombo scaled(Rational c) const;
  // f o theta_{c^-1}, supported in X_c.
  IndicatorCombo pushforward(const PartialAction& pa, const FWord& c) const;

  // `0` or `1*{...} + 1/2*{...}`
  std::string to_string() const;
  bool operator==(const IndicatorCombo& other) const { return parts_ == other.parts_; }

 private:
  // Pointwise sum of possibly overlapping pieces, regrouped by value.
  static IndicatorCombo collect(const Ultragraph& g, const std::vector<std::pair<Rational, Clopen>>& pieces);

  const Ultragraph* graph_;
  std::map<Rational, Clopen> parts_;
};

class CrossedElem {
 public:
  explicit CrossedElem(const PartialAction& pa) : pa_(&pa) {}
  // f delta_g; throws OutsideDomain unless the support of f lies in X_g.
  static CrossedElem term(const PartialAction& pa, const FWord& g, const IndicatorCombo& f);

  const PartialAction& action() const { return *pa_; }
  const std::map<FWord, IndicatorCombo>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  // Zero when g carries no term.
  IndicatorCombo coefficient(const FWord& g) const;

  CrossedElem operator+(const CrossedElem& other) const;
  CrossedElem operator-(const CrossedElem& other) const { return *this + other.scaled(-1); }
  CrossedElem scaled(Rational c) const;

  // One `term <word> = <combo>` line per nonzero term, or `zero`.
  std::string to_string() const;
  bool operator==(const CrossedElem& other) const { return terms_ == other.terms_; }

 private:
  void add(const FWord& g, const IndicatorCombo& f);

  const PartialAction* pa_;
  std::map<FWord, IndicatorCombo> terms_;
};

// (f d_g)(h d_t) = alpha_g(alpha_{g^-1}(f) h) d_{gt}
CrossedElem mul(const CrossedElem& x, const CrossedElem& y);
// (f d_g)* = alpha_{g^-1}(f) d_{g^-1}
CrossedElem star(const CrossedElem& x);

// 1_e d_e; throws InvalidPath for a non-edge.
CrossedElem phi_s(const PartialAction& pa, Index e);
// 1_A d_0; throws NotInGZero.
CrossedElem phi_p(const PartialAction& pa, const UPSet& a);
// phi_s(e1) ... phi_s(en)
CrossedElem phi_path(const PartialAction& pa, const EdgePath& a);

// Expressions in the generators s_e, p_A.
class GenExpr {
 public:
  enum class Op { Zero, S, P, Mul, Add, Sub, Star };

  static GenExpr zero();
  static GenExpr s(Index e);
  static GenExpr p(const UPSet& a);
  GenExpr star() const;
  friend GenExpr operator*(const GenExpr& x, const GenExpr& y);
  friend GenExpr operator+(const GenExpr& x, const GenExpr& y);
  friend GenExpr operator-(const GenExpr& x, const GenExpr& y);

  Op op() const { return op_; }
  Index edge() const { return edge_; }
  const UPSet& set() const { return *set_; }
  const GenExpr& lhs() const { return *args_[0]; }
  const GenExpr& rhs() const { return *args_[1]; }

  // `s e1 * star(s e1)`, `p [fin{1}] + p [ap(3,1,1)]`
  std::string to_string() const;

 private:
  GenExpr(Op op) : op_(op) {}
  std::string to_string(int precedence) const;

  Op op_;
  Index edge_ = 0;
  std::optional<UPSet> set_;
  std::vector<std::shared_ptr<const GenExpr>> args_;
};

// expr := term (('+'|'-') term)* ; term := factor ('*' factor)* ;
// factor := '0' | 's' edge | 'p' '[' set ']' | 'star' '(' expr ')' | '(' expr ')'
GenExpr parse_gen_expr(const Ultragraph& g, const std::string& text, int line = 1, int column = 1);

CrossedElem evaluate(const PartialAction& pa, const GenExpr& x);

struct RelationCheck {
  // p-empty, p-meet, p-join, partial-isometry, range, source, orthogonal, vertex
  std::string relation;
  std::string instance;
  GenExpr lhs;
  GenExpr rhs;
  bool pass = false;
};

struct RelationsReport {
  std::vector<RelationCheck> checks;
  bool ok() const;
  std::size_t failures() const;
};

struct RelationsOptions {
  Index edge_cap = 20;
  Index vrange = 20;
  // G^0 sets for the projection relations, all pairs tested.
  std::vector<UPSet> sets;
  // r(e) to use in s_e* s_e = p_{r(e)} instead of the true range.
  std::map<Index, UPSet> claimed_ranges;
};

// The defining relations of the ultragraph algebra, for the images of the
// generators.  `range` is s_e* s_e = p_{r(e)}; `source` is
// s_e s_e* <= p_{s(e)}, checked as s_e s_e* p_{s(e)} = s_e s_e*.
RelationsReport relations_report(const PartialAction& pa, const RelationsOptions& options);

struct GradingReport {
  std::size_t components = 0;
  std::vector<std::string> failures;
  bool ok() const { return failures.empty(); }
};

// Every nonzero component of mul(x, y) sits at a word k of the form a b^-1
// and every pair (g, t) feeding it has degree(g) + degree(t) = degree(k).
GradingReport grading_check(const CrossedElem& x, const CrossedElem& y);

}  // namespace ushift
