#include "ushift/crossed.hpp"

#include "cursor.hpp"
#include "ushift/error.hpp"

namespace ushift {

std::string to_string(const Rational& q) {
  std::string out = std::to_string(q.numerator());
  if (q.denominator() != 1) out += '/' + std::to_string(q.denominator());
  return out;
}

// IndicatorCombo

IndicatorCombo IndicatorCombo::indicator(const Clopen& s, Rational c) {
  IndicatorCombo f(s.graph());
  if (c != Rational(0) && !s.is_empty()) f.parts_.emplace(c, s);
  return f;
}

IndicatorCombo IndicatorCombo::collect(const Ultragraph& g, const std::vector<std::pair<Rational, Clopen>>& pieces) {
  std::vector<std::pair<Rational, Clopen>> level;  // disjoint
  for (const auto& [c, s] : pieces) {
    if (c == Rational(0) || s.is_empty()) continue;
    std::vector<std::pair<Rational, Clopen>> next;
    Clopen rest = s;
    for (const auto& [v, t] : level) {
      Clopen both = t.intersect(s);
      Clopen only = t.minus(s);
      if (!both.is_empty()) next.emplace_back(v + c, std::move(both));
      if (!only.is_empty()) next.emplace_back(v, std::move(only));
      rest = rest.minus(t);
    }
    if (!rest.is_empty()) next.emplace_back(c, std::move(rest));
    level = std::move(next);
  }
  IndicatorCombo f(g);
  for (auto& [v, t] : level) {
    if (v == Rational(0)) continue;
    auto it = f.parts_.find(v);
    if (it == f.parts_.end()) {
      f.parts_.emplace(v, std::move(t));
    } else {
      it->second = it->second.unite(t);
    }
  }
  return f;
}

Clopen IndicatorCombo::support() const {
  Clopen s = Clopen::empty(*graph_);
  for (const auto& [c, t] : parts_) s = s.unite(t);
  return s;
}

Rational IndicatorCombo::at(const Point& x) const {
  for (const auto& [c, t] : parts_) {
    if (t.contains(x)) return c;
  }
  return 0;
}

IndicatorCombo IndicatorCombo::operator+(const IndicatorCombo& other) const {
  std::vector<std::pair<Rational, Clopen>> pieces(parts_.begin(), parts_.end());
  pieces.insert(pieces.end(), other.parts_.begin(), other.parts_.end());
  return collect(*graph_, pieces);
}

IndicatorCombo IndicatorCombo::operator*(const IndicatorCombo& other) const {
  std::vector<std::pair<Rational, Clopen>> pieces;
  for (const auto& [a, s] : parts_) {
    for (const auto& [b, t] : other.parts_) pieces.emplace_back(a * b, s.intersect(t));
  }
  return collect(*graph_, pieces);
}

IndicatorCombo IndicatorCombo::scaled(Rational c) const {
  std::vector<std::pair<Rational, Clopen>> pieces;
  for (const auto& [a, s] : parts_) pieces.emplace_back(a * c, s);
  return collect(*graph_, pieces);
}

IndicatorCombo IndicatorCombo::pushforward(const PartialAction& pa, const FWord& c) const {
  std::vector<std::pair<Rational, Clopen>> pieces;
  for (const auto& [a, s] : parts_) pieces.emplace_back(a, pa.pushforward(c, s));
  return collect(*graph_, pieces);
}

std::string IndicatorCombo::to_string() const {
  if (parts_.empty()) return "0";
  std::string out;
  for (const auto& [c, s] : parts_) {
    if (!out.empty()) out += " + ";
    out += ushift::to_string(c) + '*' + s.to_string();
  }
  return out;
}

// CrossedElem

CrossedElem CrossedElem::term(const PartialAction& pa, const FWord& g, const IndicatorCombo& f) {
  if (!f.support().subset_of(pa.domain(g))) {
    throw Error(ErrorCode::OutsideDomain, "coefficient of " + g.to_string() + " not supported in its domain");
  }
  CrossedElem x(pa);
  x.add(g, f);
  return x;
}

void CrossedElem::add(const FWord& g, const IndicatorCombo& f) {
  if (f.is_zero()) return;
  auto it = terms_.find(g);
  if (it == terms_.end()) {
    terms_.emplace(g, f);
    return;
  }
  it->second = it->second + f;
  if (it->second.is_zero()) terms_.erase(it);
}

IndicatorCombo CrossedElem::coefficient(const FWord& g) const {
  auto it = terms_.find(g);
  return it == terms_.end() ? IndicatorCombo(pa_->graph()) : it->second;
}

CrossedElem CrossedElem::operator+(const CrossedElem& other) const {
  CrossedElem out = *this;
  for (const auto& [g, f] : other.terms_) out.add(g, f);
  return out;
}

CrossedElem CrossedElem::scaled(Rational c) const {
  CrossedElem out(*pa_);
  for (const auto& [g, f] : terms_) out.add(g, f.scaled(c));
  return out;
}

std::string CrossedElem::to_string() const {
  if (terms_.empty()) return "zero";
  std::string out;
  for (const auto& [g, f] : terms_) {
    if (!out.empty()) out += '\n';
    out += "term " + g.to_string() + " = " + f.to_string();
  }
  return out;
}

CrossedElem mul(const CrossedElem& x, const CrossedElem& y) {
  const PartialAction& pa = x.action();
  CrossedElem out(pa);
  for (const auto& [g, f] : x.terms()) {
    const FWord g_inv = g.inverse();
    const IndicatorCombo pulled = f.pushforward(pa, g_inv);
    for (const auto& [t, h] : y.terms()) {
      const IndicatorCombo product = pulled * h;
      if (product.is_zero()) continue;
      out = out + CrossedElem::term(pa, g * t, product.pushforward(pa, g));
    }
  }
  return out;
}

CrossedElem star(const CrossedElem& x) {
  const PartialAction& pa = x.action();
  CrossedElem out(pa);
  for (const auto& [g, f] : x.terms()) {
    const FWord g_inv = g.inverse();
    out = out + CrossedElem::term(pa, g_inv, f.pushforward(pa, g_inv));
  }
  return out;
}

CrossedElem phi_s(const PartialAction& pa, Index e) {
  if (!pa.graph().has_edge(e)) throw Error(ErrorCode::InvalidPath, "no edge e" + std::to_string(e));
  const FWord w = FWord::path({e});
  return CrossedElem::term(pa, w, IndicatorCombo::indicator(pa.domain(w)));
}

CrossedElem phi_p(const PartialAction& pa, const UPSet& a) {
  return CrossedElem::term(pa, FWord{}, IndicatorCombo::indicator(pa.xa_set(a)));
}

CrossedElem phi_path(const PartialAction& pa, const EdgePath& a) {
  if (a.empty()) return CrossedElem::term(pa, FWord{}, IndicatorCombo::indicator(Clopen::whole(pa.graph())));
  CrossedElem x = phi_s(pa, a.front());
  for (std::size_t i = 1; i < a.size(); ++i) x = mul(x, phi_s(pa, a[i]));
  return x;
}

// GenExpr

GenExpr GenExpr::zero() { return GenExpr(Op::Zero); }

GenExpr GenExpr::s(Index e) {
  GenExpr x(Op::S);
  x.edge_ = e;
  return x;
}

GenExpr GenExpr::p(const UPSet& a) {
  GenExpr x(Op::P);
  x.set_ = a;
  return x;
}

GenExpr GenExpr::star() const {
  GenExpr x(Op::Star);
  x.args_.push_back(std::make_shared<const GenExpr>(*this));
  return x;
}

GenExpr operator*(const GenExpr& x, const GenExpr& y) {
  GenExpr n(GenExpr::Op::Mul);
  n.args_ = {std::make_shared<const GenExpr>(x), std::make_shared<const GenExpr>(y)};
  return n;
}

GenExpr operator+(const GenExpr& x, const GenExpr& y) {
  GenExpr n(GenExpr::Op::Add);
  n.args_ = {std::make_shared<const GenExpr>(x), std::make_shared<const GenExpr>(y)};
  return n;
}

GenExpr operator-(const GenExpr& x, const GenExpr& y) {
  GenExpr n(GenExpr::Op::Sub);
  n.args_ = {std::make_shared<const GenExpr>(x), std::make_shared<const GenExpr>(y)};
  return n;
}

std::string GenExpr::to_string() const { return to_string(0); }

std::string GenExpr::to_string(int precedence) const {
  std::string out;
  int mine = 3;
  switch (op_) {
    case Op::Zero: return "0";
    case Op::S: return "s e" + std::to_string(edge_);
    case Op::P: return "p [" + set_->to_string() + "]";
    case Op::Star: return "star(" + lhs().to_string(0) + ")";
    case Op::Mul:
      mine = 2;
      out = lhs().to_string(2) + " * " + rhs().to_string(3);
      break;
    case Op::Add:
    case Op::Sub:
      mine = 1;
      out = lhs().to_string(1) + (op_ == Op::Add ? " + " : " - ") + rhs().to_string(2);
      break;
  }
  return mine < precedence ? "(" + out + ")" : out;
}

namespace {

GenExpr parse_sum(detail::Cursor& in, const Ultragraph& g);

GenExpr parse_factor(detail::Cursor& in, const Ultragraph& g) {
  if (in.accept('(')) {
    GenExpr x = parse_sum(in, g);
    in.expect(')');
    return x;
  }
  if (in.accept('0')) return GenExpr::zero();
  if (in.accept_word("star")) {
    in.expect('(');
    GenExpr x = parse_sum(in, g);
    in.expect(')');
    return x.star();
  }
  if (in.accept('s')) return GenExpr::s(in.edge());
  if (in.accept('p')) return GenExpr::p(in.set_in_brackets(g.vertex_universe()));
  in.fail("expected 's e<n>', 'p [set]', 'star(...)', '0' or '('");
}

GenExpr parse_product(detail::Cursor& in, const Ultragraph& g) {
  GenExpr x = parse_factor(in, g);
  while (in.accept('*')) x = x * parse_factor(in, g);
  return x;
}

GenExpr parse_sum(detail::Cursor& in, const Ultragraph& g) {
  GenExpr x = parse_product(in, g);
  for (;;) {
    if (in.accept('+')) {
      x = x + parse_product(in, g);
    } else if (in.accept('-')) {
      x = x - parse_product(in, g);
    } else {
      return x;
    }
  }
}

}  // namespace

GenExpr parse_gen_expr(const Ultragraph& g, const std::string& text, int line, int column) {
  detail::Cursor in(text, line, column);
  GenExpr x = parse_sum(in, g);
  in.finish();
  return x;
}

CrossedElem evaluate(const PartialAction& pa, const GenExpr& x) {
  switch (x.op()) {
    case GenExpr::Op::Zero: return CrossedElem(pa);
    case GenExpr::Op::S: return phi_s(pa, x.edge());
    case GenExpr::Op::P: return phi_p(pa, x.set());
    case GenExpr::Op::Star: return star(evaluate(pa, x.lhs()));
    case GenExpr::Op::Mul: return mul(evaluate(pa, x.lhs()), evaluate(pa, x.rhs()));
    case GenExpr::Op::Add: return evaluate(pa, x.lhs()) + evaluate(pa, x.rhs());
    case GenExpr::Op::Sub: return evaluate(pa, x.lhs()) - evaluate(pa, x.rhs());
  }
  return CrossedElem(pa);
}

// relations

bool RelationsReport::ok() const { return failures() == 0; }

std::size_t RelationsReport::failures() const {
  std::size_t n = 0;
  for (const auto& c : checks) n += c.pass ? 0 : 1;
  return n;
}

RelationsReport relations_report(const PartialAction& pa, const RelationsOptions& options) {
  const Ultragraph& g = pa.graph();
  RelationsReport report;
  const auto check = [&](std::string relation, std::string instance, const GenExpr& lhs, const GenExpr& rhs) {
    const bool pass = evaluate(pa, lhs) == evaluate(pa, rhs);
    report.checks.push_back({std::move(relation), std::move(instance), lhs, rhs, pass});
  };
  using E = GenExpr;

  check("p-empty", "", E::p(UPSet::empty(g.vertex_universe())), E::zero());
  for (std::size_t i = 0; i < options.sets.size(); ++i) {
    for (std::size_t j = i; j < options.sets.size(); ++j) {
      const UPSet& a = options.sets[i];
      const UPSet& b = options.sets[j];
      const std::string inst = "A=" + a.to_string() + " B=" + b.to_string();
      check("p-meet", inst, E::p(a) * E::p(b), E::p(a.intersect(b)));
      check("p-join", inst, E::p(a.unite(b)), E::p(a) + E::p(b) - E::p(a.intersect(b)));
    }
  }

  std::vector<Index> edges;
  for (Index e : g.edges().members_up_to(options.edge_cap)) edges.push_back(e);
  for (Index e : edges) {
    const std::string inst = "e" + std::to_string(e);
    const E s = E::s(e);
    check("partial-isometry", inst, s * s.star() * s, s);
    auto claimed = options.claimed_ranges.find(e);
    check("range", inst, s.star() * s, E::p(claimed == options.claimed_ranges.end() ? g.range(e) : claimed->second));
    check("source", inst, s * s.star() * E::p(UPSet::singleton(g.vertex_universe(), g.source(e))), s * s.star());
  }
  for (std::size_t i = 0; i < edges.size(); ++i) {
    for (std::size_t j = i + 1; j < edges.size(); ++j) {
      const E se = E::s(edges[i]);
      const E sf = E::s(edges[j]);
      check("orthogonal", "e" + std::to_string(edges[i]) + " e" + std::to_string(edges[j]),
            se * se.star() * (sf * sf.star()), E::zero());
    }
  }
  for (Index v = 1; v <= options.vrange && g.vertex_universe().contains(v); ++v) {
    const UPSet out = g.out_edges(v);
    if (out.is_empty() || !out.is_finite()) continue;
    std::optional<E> sum;
    for (Index e : out.members()) {
      const E term = E::s(e) * E::s(e).star();
      sum = sum ? *sum + term : term;
    }
    check("vertex", "v" + std::to_string(v), E::p(UPSet::singleton(g.vertex_universe(), v)), *sum);
  }
  return report;
}

GradingReport grading_check(const CrossedElem& x, const CrossedElem& y) {
  GradingReport report;
  const auto raw_degree = [](const FWord& w) {
    long long d = 0;
    for (const auto& l : w.letters()) d += l.inverse ? -1 : 1;
    return d;
  };
  const CrossedElem product = mul(x, y);
  for (const auto& [k, f] : product.terms()) {
    ++report.components;
    if (k.shape() == FWord::Shape::Degenerate) {
      report.failures.push_back("nonzero component at degenerate word " + k.to_string());
      continue;
    }
    const long long dk = degree(k);
    for (const auto& [g, a] : x.terms()) {
      for (const auto& [t, b] : y.terms()) {
        if (g * t != k) continue;
        if (raw_degree(g) + raw_degree(t) != dk) {
          report.failures.push_back(g.to_string() + " * " + t.to_string() + " lands in degree " + std::to_string(dk));
        }
      }
    }
  }
  return report;
}

}  // namespace ushift
