#include "ushift/paction.hpp"

#include <algorithm>

#include "cursor.hpp"
#include "ushift/error.hpp"

namespace ushift {

FWord FWord::reduce(const std::vector<Letter>& letters) {
  FWord w;
  for (const auto& l : letters) {
    if (!w.letters_.empty() && w.letters_.back().edge == l.edge && w.letters_.back().inverse != l.inverse) {
      w.letters_.pop_back();
    } else {
      w.letters_.push_back(l);
    }
  }
  return w;
}

FWord FWord::path(const EdgePath& a) { return mixed(a, {}); }

FWord FWord::mixed(const EdgePath& a, const EdgePath& b) {
  std::vector<Letter> letters;
  for (Index e : a) letters.push_back({e, false});
  for (auto it = b.rbegin(); it != b.rend(); ++it) letters.push_back({*it, true});
  return reduce(letters);
}

FWord::Shape FWord::shape() const {
  if (letters_.empty()) return Shape::Zero;
  // positives, then inverses
  std::size_t k = 0;
  while (k < letters_.size() && !letters_[k].inverse) ++k;
  for (std::size_t i = k; i < letters_.size(); ++i) {
    if (!letters_[i].inverse) return Shape::Degenerate;
  }
  if (k == letters_.size()) return Shape::Pos;
  return k == 0 ? Shape::Neg : Shape::Mixed;
}

EdgePath FWord::positive_part() const {
  EdgePath a;
  for (const auto& l : letters_) {
    if (l.inverse) break;
    a.push_back(l.edge);
  }
  return a;
}

EdgePath FWord::negative_part() const {
  EdgePath b;
  for (auto it = letters_.rbegin(); it != letters_.rend() && it->inverse; ++it) b.push_back(it->edge);
  return b;
}

FWord FWord::inverse() const {
  FWord w;
  for (auto it = letters_.rbegin(); it != letters_.rend(); ++it) w.letters_.push_back({it->edge, !it->inverse});
  return w;
}

FWord FWord::operator*(const FWord& other) const {
  std::vector<Letter> all = letters_;
  all.insert(all.end(), other.letters_.begin(), other.letters_.end());
  return reduce(all);
}

std::string FWord::to_string() const {
  if (letters_.empty()) return "0";
  std::string out;
  for (std::size_t i = 0; i < letters_.size(); ++i) {
    if (letters_[i].inverse) {
      out += '~';
    } else if (i > 0) {
      out += '.';
    }
    out += 'e' + std::to_string(letters_[i].edge);
  }
  return out;
}

FWord parse_word(const std::string& text, int line, int column) {
  detail::Cursor in(text, line, column);
  if (in.accept('0')) {
    in.finish();
    return FWord{};
  }
  std::vector<Letter> letters;
  bool first = true;
  while (first || !in.at_end()) {
    bool inverse = in.accept('~');
    if (!first && !inverse) {
      in.expect('.');
      inverse = in.accept('~');
    }
    letters.push_back({in.edge(), inverse});
    first = false;
  }
  return FWord::reduce(letters);
}

std::string to_string(FWord::Shape shape) {
  switch (shape) {
    case FWord::Shape::Zero: return "Zero";
    case FWord::Shape::Pos: return "Pos";
    case FWord::Shape::Neg: return "Neg";
    case FWord::Shape::Mixed: return "Mixed";
    case FWord::Shape::Degenerate: return "Degenerate";
  }
  return "?";
}

long long degree(const FWord& c) {
  if (c.shape() == FWord::Shape::Degenerate) {
    throw Error(ErrorCode::DegenerateWord, c.to_string() + " is not of the form a b^-1");
  }
  long long d = 0;
  for (const auto& l : c.letters()) d += l.inverse ? -1 : 1;
  return d;
}

PartialAction::PartialAction(const Ultragraph& g) : g_(&g) {
  if (!g.satisfies_rfum()) {
    const auto& fail = std::get<RfumFail>(g.rfum());
    throw Error(ErrorCode::RfumRequired,
                "condition RFUM fails at e" + std::to_string(fail.edge) + ", residual " + fail.residual.to_string());
  }
}

Clopen PartialAction::domain(const FWord& c) const {
  const auto& g = *g_;
  const EdgePath a = c.positive_part();
  const EdgePath b = c.negative_part();
  switch (c.shape()) {
    case FWord::Shape::Zero:
      return Clopen::whole(g);
    case FWord::Shape::Pos:
      return Clopen::cone(g, a);
    case FWord::Shape::Neg:
      if (!is_path(g, b)) return Clopen::empty(g);
      return Clopen::vertex_set(g, path_range(g, b));
    case FWord::Shape::Mixed: {
      if (!is_path(g, a) || !is_path(g, b)) return Clopen::empty(g);
      const UPSet meet = path_range(g, a).intersect(path_range(g, b));
      if (meet.is_empty()) return Clopen::empty(g);
      return Clopen::vertex_set(g, meet).attach_prefix(a);
    }
    case FWord::Shape::Degenerate:
      break;
  }
  return Clopen::empty(g);
}

Clopen PartialAction::range_domain_by_decomposition(Index e) const {
  const auto& g = *g_;
  const auto& pass = std::get<RfumPass>(g.rfum());
  Clopen out = Clopen::empty(g);
  for (const auto& d : pass.decompositions) {
    if (d.range != g.range(e)) continue;
    for (const auto& m : d.minimal_emitters) out = out.unite(Clopen::from_cylinder(g, Cylinder::full(g, {}, m)));
    for (Index v : d.vertices) {
      out = out.unite(Clopen::from_cylinder(g, Cylinder::full(g, {}, UPSet::singleton(g.vertex_universe(), v))));
    }
  }
  return out;
}

namespace {

Point strip(Point x, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) x = x.shifted();
  return x;
}

}  // namespace

Point PartialAction::act(const FWord& c, const Point& x) const {
  const auto& g = *g_;
  if (!domain(c.inverse()).contains(x)) {
    throw Error(ErrorCode::OutsideDomain, x.to_string() + " is outside the domain of theta_" + c.to_string());
  }
  const EdgePath a = c.positive_part();
  const EdgePath b = c.negative_part();
  Point y = strip(x, b.size());
  if (a.empty()) return y;
  return concat_point(g, embed(g, a), y);
}

Clopen PartialAction::pushforward(const FWord& c, const Clopen& s) const {
  const auto& g = *g_;
  if (c.shape() == FWord::Shape::Degenerate) return Clopen::empty(g);
  const Clopen in = s.intersect(domain(c.inverse()));
  if (in.is_empty()) return in;
  const EdgePath a = c.positive_part();
  const EdgePath b = c.negative_part();
  Clopen out = b.empty() ? in : in.strip_prefix(b);
  return a.empty() ? out : out.attach_prefix(a);
}

Clopen PartialAction::vertex_domain(Index v) const {
  const auto& g = *g_;
  const UPSet out = g.out_edges(v);
  if (out.is_finite()) {
    Clopen x = Clopen::empty(g);
    for (Index e : out.members()) x = x.unite(Clopen::cone(g, {e}));
    return x;
  }
  return Clopen::from_cylinder(g, Cylinder::full(g, {}, UPSet::singleton(g.vertex_universe(), v)));
}

Clopen PartialAction::xa_set(const UPSet& a) const {
  const auto& g = *g_;
  const auto member = g.gzero_member(a);
  if (const auto* no = std::get_if<NotInGZero>(&member)) {
    throw Error(ErrorCode::NotInGZero, a.to_string() + " is not in G0, residual " + no->residual.to_string());
  }
  const auto& cert = std::get<GSet>(member);
  Clopen x = Clopen::empty(g);
  for (const auto& part : cert.lattice_parts) x = x.unite(Clopen::from_cylinder(g, Cylinder::full(g, {}, part)));
  for (Index v : cert.finite_part.members()) x = x.unite(vertex_domain(v));
  return x;
}

AxiomReport PartialAction::axioms_check(const FWord& t, const FWord& h, const std::vector<Point>& sample) const {
  AxiomReport report;
  const FWord th = t * h;
  const Clopen dom_h_inv = domain(h.inverse());
  const Clopen dom_t_inv = domain(t.inverse());
  const Clopen dom_th_inv = domain(th.inverse());
  const auto fail = [&](const std::string& what) {
    report.composition_ok = false;
    if (report.failures.size() < 10) report.failures.push_back(what);
  };
  for (const auto& x : sample) {
    ++report.sampled;
    if (!dom_h_inv.contains(x)) continue;
    const Point y = act(h, x);
    const bool chained = dom_t_inv.contains(y);
    const bool direct = dom_th_inv.contains(x);
    if (!chained) continue;
    // only the inclusion theta_t o theta_h <= theta_th is required
    if (!direct) {
      fail(x.to_string() + ": theta_t(theta_h(x)) defined but theta_th(x) undefined");
      continue;
    }
    ++report.checked;
    const Point lhs = act(t, y);
    const Point rhs = act(th, x);
    if (lhs != rhs) fail(x.to_string() + ": " + lhs.to_string() + " != " + rhs.to_string());
  }
  const Clopen image = pushforward(t, dom_t_inv.intersect(domain(h)));
  if (!image.subset_of(domain(th))) {
    report.containment_ok = false;
    report.failures.push_back("theta_t(X_t^-1 cap X_h) not inside X_th");
  }
  return report;
}

}  // namespace ushift
