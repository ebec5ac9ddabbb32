#include <doctest.h>

#include <map>

#include "generators.hpp"
#include "ushift/error.hpp"
#include "ushift/oracle.hpp"
#include "ushift/topology.hpp"

using namespace ushift;
using testing::fixture;

namespace {

const Universe N = Universe::infinite();

UPSet set(const std::string& text, Universe u = N) { return parse_set(text, u); }

Cylinder cyl(const Ultragraph& g, const std::string& text) { return parse_cylinder(g, text); }
Clopen clopen(const Ultragraph& g, const std::string& text) { return Clopen::from_cylinder(g, cyl(g, text)); }
Point point(const Ultragraph& g, const std::string& text) { return parse_point(g, text); }

// A random boolean combination of cylinders with a pointwise evaluator.
struct Expr {
  Clopen value;
  std::function<bool(const Point&)> holds;
};

Expr random_expr(const Ultragraph& g, int depth, Index cap) {
  if (depth == 0 || testing::coin(0.3)) {
    const Cylinder c = testing::random_cylinder(g, 3, cap);
    const Presentation* p = &g.presentation();
    return {Clopen::from_cylinder(g, c), [p, c](const Point& x) { return oracle::in_cylinder(*p, c, x); }};
  }
  Expr a = random_expr(g, depth - 1, cap);
  Expr b = random_expr(g, depth - 1, cap);
  switch (testing::uniform(0, 3)) {
    case 0: return {a.value.unite(b.value), [a, b](const Point& x) { return a.holds(x) || b.holds(x); }};
    case 1: return {a.value.intersect(b.value), [a, b](const Point& x) { return a.holds(x) && b.holds(x); }};
    case 2: return {a.value.minus(b.value), [a, b](const Point& x) { return a.holds(x) && !b.holds(x); }};
    default: return {a.value.complement(), [a](const Point& x) { return !a.holds(x); }};
  }
}

bool in_patch(const Presentation& p, const Patch& patch, const Point& x) {
  const auto n = static_cast<Index>(patch.base.size());
  if (x.length() && *x.length() < n) return false;
  for (Index k = 1; k <= n; ++k) {
    if (x.edge(k) != patch.base[static_cast<std::size_t>(k - 1)]) return false;
  }
  const bool ends_here = x.length() && *x.length() == n;
  if (patch.kind == Patch::Kind::Atom) return ends_here && x.terminal() == patch.set;
  (void)p;
  return !ends_here && patch.set.contains(x.edge(n + 1));
}

}  // namespace

TEST_CASE("cylinders to clopen sets") {
  const Ultragraph ex1 = fixture("example1");
  const Clopen full = clopen(ex1, "full e1:[ap(3,1,1)]");
  const Clopen atom = Clopen::atom(ex1, point(ex1, "fin e1:[ap(3,1,1)]"));
  const Clopen tail = Clopen::tail(ex1, {1}, set("ap(3,1,1)"));
  CHECK(atom.intersect(tail).is_empty());
  CHECK(full == atom.unite(tail));
  // r(e1) = cofin3 makes this the whole cone over e1.
  CHECK(full.to_string() == "{tail :[fin{1}]}");
  CHECK(atom.to_string() == "{fin e1:[ap(3,1,1)]}");
  CHECK(tail.to_string() == "{tail e1:[ap(3,1,1)]}");
  CHECK(clopen(ex1, "restricted :[ap(3,1,1)]").to_string() == "{fin :[ap(3,1,1)]; tail :[ap(3,1,1)]}");
  for (int trial = 0; trial < 20; ++trial) {
    const Ultragraph g(testing::random_finite_presentation());
    const Index e = testing::pick(g.edges().members());
    const auto patches = Clopen::from_cylinder(g, Cylinder::full(g, {e}, g.range(e))).patches();
    REQUIRE(patches.size() <= 1);
    for (const auto& p : patches) CHECK(p.kind == Patch::Kind::Tail);
  }
}

TEST_CASE("cylinder validation") {
  const Ultragraph ex1 = fixture("example1");
  CHECK_THROWS_AS(cyl(ex1, "full e1:[fin{1}]"), Error);
  CHECK_THROWS_AS(cyl(ex1, "restricted e1:[ap(3,1,1)] without [fin{2}]"), Error);
  CHECK_THROWS_AS(cyl(ex1, "restricted e1:[ap(3,1,1)] without [ap(3,1,1)]"), Error);
  CHECK_THROWS_AS(cyl(ex1, "full e1:[]"), ParseError);
  CHECK(cyl(ex1, "restricted e1:[ap(3,1,1)] without [fin{3}]").to_string() ==
        "restricted e1:[ap(3,1,1)] without [fin{3}]");
}

TEST_CASE("membership examples") {
  const Ultragraph ex1 = fixture("example1");
  const Clopen d = clopen(ex1, "full e1:[ap(3,1,1)]");
  CHECK(d.contains(point(ex1, "fin e1:[ap(3,1,1)]")));
  CHECK(d.contains(point(ex1, "path e1(cycle e3)")));
  CHECK_FALSE(d.contains(point(ex1, "path (cycle e2)")));
  CHECK_FALSE(d.contains(point(ex1, "fin :[ap(3,1,1)]")));
}

TEST_CASE("clopen operation examples") {
  const Ultragraph b = fixture("matrixB");
  CHECK(clopen(b, "full e1:[all]").intersect(clopen(b, "full e1:[ap(1,2,10)]")) == clopen(b, "full e1:[ap(1,2,10)]"));
  CHECK(clopen(b, "full e1:[ap(2,2,10)|fin{1}]").intersect(clopen(b, "full e1:[ap(1,2,10)]")) ==
        clopen(b, "full e1:[fin{1}]"));
  CHECK(clopen(b, "full e2:[ap(1,2,10)]").intersect(clopen(b, "full e3:[ap(2,2,10)]")).is_empty());

  const Ultragraph ex1 = fixture("example1");
  const Clopen rest = clopen(ex1, "restricted e1:[ap(3,1,1)] without [fin{3,4}]");
  const Clopen cut = clopen(ex1, "full e1:[ap(3,1,1)]")
                         .minus(Clopen::cone(ex1, {1, 3}))
                         .minus(Clopen::cone(ex1, {1, 4}));
  CHECK(rest == cut);
}

TEST_CASE("whole space and complement") {
  const Ultragraph ex1 = fixture("example1");
  const Clopen whole = Clopen::whole(ex1);
  CHECK(whole.complement().is_empty());
  CHECK(Clopen::empty(ex1).complement() == whole);
  CHECK(Clopen::cone(ex1, {}) == whole);
  CHECK(Clopen::vertex_set(ex1, UPSet::all(N)) == whole);
  Clopen pieces = Clopen::empty(ex1);
  for (Index e = 1; e <= 8; ++e) pieces = pieces.unite(Clopen::cone(ex1, {e}));
  CHECK(pieces != whole);
  CHECK(pieces.subset_of(whole));
}

TEST_CASE("restricted cylinders equal the cut-out full cylinders") {
  for (const char* name : {"example1", "matrixA", "matrixB", "matrixC"}) {
    const Ultragraph g = fixture(name);
    for (int trial = 0; trial < 60; ++trial) {
      const Cylinder c = testing::random_cylinder(g, 3, 6);
      if (c.kind != Cylinder::Kind::Restricted) continue;
      Clopen cut = Clopen::from_cylinder(g, Cylinder::full(g, c.base, c.set));
      for (Index lambda : c.excluded.members()) {
        EdgePath longer = c.base;
        longer.push_back(lambda);
        cut = cut.minus(Clopen::from_cylinder(g, Cylinder::full(g, longer, g.range(lambda))));
      }
      CHECK(Clopen::from_cylinder(g, c) == cut);
    }
  }
}

TEST_CASE("clopen operations agree with pointwise membership") {
  for (const char* name : {"example1", "matrixB", "matrixC"}) {
    const Ultragraph g = fixture(name);
    const auto points = oracle::enumerate_points(g, 4, 1, 4);
    for (int trial = 0; trial < 25; ++trial) {
      const Expr e = random_expr(g, 3, 4);
      for (const auto& x : points) {
        INFO(name << " " << x.to_string() << " in " << e.value.to_string());
        REQUIRE(e.value.contains(x) == e.holds(x));
      }
    }
  }
}

TEST_CASE("patches are disjoint and conversion is idempotent") {
  const Ultragraph ex1 = fixture("example1");
  const auto points = oracle::enumerate_points(ex1, 3, 2, 5);
  for (int trial = 0; trial < 40; ++trial) {
    const Expr e = random_expr(ex1, 2, 5);
    const auto patches = e.value.patches();
    for (const auto& x : points) {
      int hits = 0;
      for (const auto& p : patches) hits += in_patch(ex1.presentation(), p, x);
      CHECK(hits <= 1);
      CHECK((hits == 1) == e.value.contains(x));
    }
    CHECK(e.value.unite(e.value) == e.value);
    CHECK(e.value.intersect(Clopen::whole(ex1)) == e.value);
  }
}

TEST_CASE("prefix strip and attach") {
  const Ultragraph ex1 = fixture("example1");
  const Clopen d = clopen(ex1, "full e1:[ap(3,1,1)]");
  CHECK(d.strip_prefix({1}) == Clopen::vertex_set(ex1, set("ap(3,1,1)")));
  CHECK(d.strip_prefix({1}).attach_prefix({1}) == d);
  CHECK(d.strip_prefix({2}).is_empty());
  CHECK_THROWS_AS(Clopen::cone(ex1, {2}).attach_prefix({1}), Error);
  CHECK(Clopen::cone(ex1, {1, 3}).strip_prefix({1, 3, 5}) == Clopen::vertex_set(ex1, UPSet::all(N)));
}

TEST_CASE("separation examples") {
  const Ultragraph ex1 = fixture("example1");
  auto [a, b] = separate(ex1, point(ex1, "path (cycle e2)"), point(ex1, "path (cycle e3)"));
  CHECK(a == cyl(ex1, "full e2:[all]"));
  CHECK(b == cyl(ex1, "full e3:[all]"));

  auto [c, d] = separate(ex1, point(ex1, "path e1(cycle e3)"), point(ex1, "fin e1:[ap(3,1,1)]"));
  CHECK(c == cyl(ex1, "full e1.e3:[all]"));
  CHECK(d == cyl(ex1, "restricted e1:[ap(3,1,1)] without [fin{3}]"));

  const Ultragraph bg = fixture("matrixB");
  auto [e, f] = separate(bg, point(bg, "fin e1:[ap(1,2,10)]"), point(bg, "fin e1:[ap(2,2,10)]"));
  CHECK(e == cyl(bg, "full e1:[ap(1,2,10)]"));
  CHECK(f == cyl(bg, "full e1:[ap(2,2,10)]"));

  const Point x = point(ex1, "path (cycle e2)");
  try {
    separate(ex1, x, x);
    FAIL("expected PointsEqual");
  } catch (const Error& err) {
    CHECK(err.code() == ErrorCode::PointsEqual);
  }
}

TEST_CASE("separation witnesses on random pairs") {
  for (const char* name : {"example1", "matrixB"}) {
    const Ultragraph g = fixture(name);
    const auto points = oracle::enumerate_points(g, 2, 2, 4);
    for (int trial = 0; trial < 400; ++trial) {
      const Point& x = testing::pick(points);
      const Point& y = testing::pick(points);
      if (x == y) continue;
      const auto [u, v] = separate(g, x, y);
      CHECK(u.contains(g, x));
      CHECK(v.contains(g, y));
      CHECK(Clopen::from_cylinder(g, u).intersect(Clopen::from_cylinder(g, v)).is_empty());
    }
  }
}

TEST_CASE("convergence") {
  const Ultragraph ex1 = fixture("example1");
  const Point limit = point(ex1, "fin e1:[ap(3,1,1)]");
  const auto dense = converges(
      ex1, [&](Index n) { return Point::infinite(ex1, {1}, {n + 2}); }, limit, 100);
  CHECK(dense.verdict == ConvergenceReport::Verdict::Certificate);
  CHECK(dense.tests.size() == 25);
  CHECK(dense.tests[0].label == "F={e3}");
  CHECK(dense.tests[0].last_violation == 1);

  const Point loop = point(ex1, "path e1(cycle e3)");
  const auto stuck = converges(ex1, [&](Index) { return loop; }, limit, 100);
  REQUIRE(stuck.verdict == ConvergenceReport::Verdict::CounterExample);
  CHECK(stuck.tests[*stuck.failing].label == "F={e3}");

  const auto constant = converges(ex1, [&](Index) { return loop; }, loop, 100);
  CHECK(constant.verdict == ConvergenceReport::Verdict::Certificate);
  const auto constant_fin = converges(ex1, [&](Index) { return limit; }, limit, 100);
  CHECK(constant_fin.verdict == ConvergenceReport::Verdict::Certificate);

  // e_{n+1} e_{n+1} ... drifts away from every infinite path.
  const auto drift = converges(
      ex1, [&](Index n) { return Point::infinite(ex1, {}, {n + 1}); }, point(ex1, "path (cycle e2)"), 100);
  CHECK(drift.verdict == ConvergenceReport::Verdict::CounterExample);
}
