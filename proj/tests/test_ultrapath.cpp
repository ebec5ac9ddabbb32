#include <doctest.h>

#include <optional>

#include "generators.hpp"
#include "ushift/error.hpp"
#include "ushift/ultrapath.hpp"

using namespace ushift;
using testing::fixture;

namespace {

const Universe N = Universe::infinite();

UPSet set(const std::string& text, Universe u = N) { return parse_set(text, u); }

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::Parse;
}

// Source vertex of e read off the presentation families.
Index naive_source(const Presentation& p, Index e) {
  for (const auto& family : p.families) {
    if (const auto* single = std::get_if<SingleEdge>(&family)) {
      if (single->edge == e) return single->source;
    } else {
      const auto& indexed = std::get<IndexedFamily>(family);
      if (indexed.indices.contains(e)) return indexed.source.scale * e + indexed.source.offset;
    }
  }
  throw std::logic_error("no such edge");
}

// Composer written from the case split: sets meet, or the next source lies
// in the current terminal set.
std::optional<Ultrapath> naive_concat(const Presentation& p, const Ultrapath& x, const Ultrapath& y) {
  if (y.edges.empty()) {
    const UPSet meet = x.terminal.intersect(y.terminal);
    if (meet.is_empty()) return std::nullopt;
    return Ultrapath{x.edges, meet};
  }
  if (!x.terminal.contains(naive_source(p, y.edges.front()))) return std::nullopt;
  EdgePath edges = x.edges;
  for (Index e : y.edges) edges.push_back(e);
  return Ultrapath{edges, y.terminal};
}

std::optional<Ultrapath> try_concat(const Ultragraph& g, const Ultrapath& x, const Ultrapath& y) {
  try {
    return concat(g, x, y);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotComposable);
    return std::nullopt;
  }
}

// Ultrapaths of length <= 2 over edges <= max_edge with terminals from `pool`.
std::vector<Ultrapath> small_ultrapaths(const Ultragraph& g, Index max_edge, const std::vector<UPSet>& pool) {
  std::vector<EdgePath> paths{{}};
  for (Index e = 1; e <= max_edge; ++e) {
    if (!g.has_edge(e)) continue;
    paths.push_back({e});
    for (Index f = 1; f <= max_edge; ++f) {
      if (g.has_edge(f) && is_path(g, {e, f})) paths.push_back({e, f});
    }
  }
  std::vector<Ultrapath> out;
  for (const auto& alpha : paths) {
    for (const auto& a : pool) {
      const Ultrapath u{alpha, a};
      if (!alpha.empty() && !a.subset_of(path_range(g, alpha))) continue;
      if (a.is_empty()) continue;
      out.push_back(u);
    }
  }
  return out;
}

}  // namespace

TEST_CASE("concatenation examples") {
  const Ultragraph ex1 = fixture("example1");
  const Ultrapath x{{}, set("fin{1,2}")};
  const Ultrapath y{{}, set("fin{1,4}")};
  CHECK(concat(ex1, x, y) == Ultrapath{{}, set("fin{1}")});

  const Ultrapath e1{{1}, set("ap(3,1,1)")};
  CHECK(concat(ex1, e1, Ultrapath{{}, set("fin{5}")}) == Ultrapath{{1}, set("fin{5}")});
  CHECK(code_of([&] { concat(ex1, e1, embed(ex1, {2})); }) == ErrorCode::NotComposable);
  CHECK(concat(ex1, e1, embed(ex1, {3})) == Ultrapath{{1, 3}, UPSet::all(N)});
  CHECK(code_of([&] { concat(ex1, x, Ultrapath{{}, set("fin{3}")}); }) == ErrorCode::NotComposable);
}

TEST_CASE("concatenation with points") {
  const Ultragraph ex1 = fixture("example1");
  const Point loop3 = Point::infinite(ex1, {}, {3});
  CHECK(concat_point(ex1, Ultrapath{{}, ex1.range(1)}, loop3) == loop3);

  const Ultrapath y{{1}, set("ap(3,1,1)")};
  const Point joined = concat_point(ex1, y, loop3);
  CHECK(joined.to_string() == "path e1(cycle e3)");
  for (Index k = 1; k <= 10; ++k) CHECK(joined.edge(k) == (k == 1 ? 1 : 3));

  const Point loop2 = Point::infinite(ex1, {}, {2});
  CHECK(code_of([&] { concat_point(ex1, y, loop2); }) == ErrorCode::NotComposable);

  const Point zero = Point::finite(ex1, {}, set("ap(3,1,1)"));
  CHECK(concat_point(ex1, y, zero) == Point::finite(ex1, {1}, set("ap(3,1,1)")));
}

TEST_CASE("m_alpha") {
  const Ultragraph ex1 = fixture("example1");
  CHECK(m_alpha(ex1, {1}) == std::vector<UPSet>{set("ap(3,1,1)")});
  const Ultragraph b = fixture("matrixB");
  CHECK(m_alpha(b, {2}) == std::vector<UPSet>{set("ap(1,2,10)")});
  for (int trial = 0; trial < 20; ++trial) {
    const Ultragraph g(testing::random_finite_presentation());
    for (Index e : g.edges().members()) CHECK(m_alpha(g, {e}).empty());
  }
}

TEST_CASE("accessors") {
  const Ultragraph ex1 = fixture("example1");
  const Ultrapath x{{1}, set("ap(3,1,1)")};
  CHECK(x.range() == set("ap(3,1,1)"));
  CHECK(Ultrapath{{}, set("ap(3,1,1)")}.length() == 0);
  CHECK(Point::infinite(ex1, {2}, {3}).source(ex1) == set("fin{2}"));
  CHECK(Point::finite(ex1, {}, set("ap(3,1,1)")).length() == 0);
  CHECK_FALSE(Point::infinite(ex1, {2}, {3}).length().has_value());
  CHECK(source(ex1, x) == set("fin{1}"));
  CHECK(embed(ex1, {1}) == x);
}

TEST_CASE("point validation") {
  const Ultragraph ex1 = fixture("example1");
  CHECK(code_of([&] { Point::finite(ex1, {1}, UPSet::all(N)); }) == ErrorCode::InvalidPath);
  CHECK(code_of([&] { Point::finite(ex1, {1, 2}, set("ap(3,1,1)")); }) == ErrorCode::InvalidPath);
  CHECK(code_of([&] { Point::infinite(ex1, {}, {1}); }) == ErrorCode::InvalidPath);
  CHECK(code_of([&] { Point::infinite(ex1, {1}, {2}); }) == ErrorCode::InvalidPath);
  CHECK_NOTHROW(Point::infinite(ex1, {2}, {1, 3}));
  CHECK(code_of([&] { check_ultrapath(ex1, Ultrapath{{1}, set("fin{1}")}); }) == ErrorCode::InvalidPath);
  CHECK_NOTHROW(check_ultrapath(ex1, Ultrapath{{1}, set("fin{3}")}));
}

TEST_CASE("infinite paths are canonical") {
  const Ultragraph ex1 = fixture("example1");
  CHECK(Point::infinite(ex1, {}, {3, 3}) == Point::infinite(ex1, {}, {3}));
  CHECK(Point::infinite(ex1, {4, 3}, {4, 3}) == Point::infinite(ex1, {}, {4, 3}));
  CHECK(Point::infinite(ex1, {5, 3, 4}, {3, 4}) == Point::infinite(ex1, {5}, {3, 4}));
  CHECK(Point::infinite(ex1, {5, 4}, {3, 4}) == Point::infinite(ex1, {5}, {4, 3}));
  for (int trial = 0; trial < 200; ++trial) {
    EdgePath prefix, cycle;
    for (Index k = testing::uniform(0, 4); k > 0; --k) prefix.push_back(testing::uniform(2, 4));
    for (Index k = testing::uniform(1, 4); k > 0; --k) cycle.push_back(testing::uniform(2, 4));
    const Point p = Point::infinite(ex1, prefix, cycle);
    const auto n = static_cast<Index>(prefix.size());
    const auto c = static_cast<Index>(cycle.size());
    for (Index k = 1; k <= 30; ++k) {
      const Index expected =
          k <= n ? prefix[static_cast<std::size_t>(k - 1)] : cycle[static_cast<std::size_t>((k - n - 1) % c)];
      CHECK(p.edge(k) == expected);
    }
  }
}

TEST_CASE("point literals round-trip") {
  const Ultragraph ex1 = fixture("example1");
  for (const char* text : {"path e1.e3(cycle e4.e5)", "fin e1:[ap(3,1,1)]", "fin :[ap(3,1,1)]", "path (cycle e2)"}) {
    CHECK(parse_point(ex1, text).to_string() == text);
  }
  CHECK(parse_point(ex1, " path e1 . e3 ( cycle e3 ) ").to_string() == "path e1(cycle e3)");
  try {
    parse_point(ex1, "fin e1:[ap(3,1]", 2, 5);
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
  }
  CHECK_THROWS_AS(parse_point(ex1, "loop e1"), ParseError);
  CHECK(parse_edge_path("e1.e2") == EdgePath{1, 2});
}

TEST_CASE("concat agrees with the case-split composer and is associative") {
  struct Case {
    const char* name;
    std::vector<std::string> pool;
  };
  for (const Case& c : {Case{"example1", {"ap(3,1,1)", "all", "fin{1,2}", "fin{3}", "fin{2,4}", "ap(2,2,10)"}},
                        Case{"matrixB", {"ap(1,2,10)", "ap(2,2,10)", "all", "fin{1}", "fin{2,3}"}}}) {
    const Ultragraph g = fixture(c.name);
    std::vector<UPSet> pool;
    for (const auto& s : c.pool) pool.push_back(set(s));
    const auto paths = small_ultrapaths(g, 4, pool);
    for (const auto& x : paths) {
      for (const auto& y : paths) {
        const auto xy = try_concat(g, x, y);
        const auto expected = naive_concat(g.presentation(), x, y);
        CHECK(xy == expected);
        if (!xy) continue;
        for (const auto& z : paths) {
          const auto yz = try_concat(g, y, z);
          const auto left = try_concat(g, *xy, z);
          const std::optional<Ultrapath> right = yz ? try_concat(g, x, *yz) : std::nullopt;
          CHECK(left == right);
        }
      }
    }
  }
}

TEST_CASE("shifted drops one edge") {
  const Ultragraph ex1 = fixture("example1");
  CHECK(parse_point(ex1, "path e2(cycle e3)").shifted().to_string() == "path (cycle e3)");
  CHECK(parse_point(ex1, "path (cycle e3.e4)").shifted().to_string() == "path (cycle e4.e3)");
  CHECK(parse_point(ex1, "fin e1:[ap(3,1,1)]").shifted().to_string() == "fin :[ap(3,1,1)]");
  CHECK(parse_point(ex1, "fin :[ap(3,1,1)]").shifted().to_string() == "fin :[ap(3,1,1)]");
}
