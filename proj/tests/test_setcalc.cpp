#include <doctest.h>

#include <functional>

#include "generators.hpp"
#include "ushift/error.hpp"
#include "ushift/setcalc.hpp"

using namespace ushift;
using testing::random_upset;
using testing::uniform;

namespace {

const Universe N = Universe::infinite();

UPSet set(const std::string& text, Universe u = N) { return parse_set(text, u); }

// Brute-force membership of every index below `bound`.
void expect_pointwise(const UPSet& result, const std::function<bool(Index)>& expected, Index bound) {
  for (Index i = 1; i < bound; ++i) {
    INFO("index " << i << " in " << result.to_string());
    REQUIRE(result.contains(i) == expected(i));
  }
}

}  // namespace

TEST_CASE("union, intersection and difference examples") {
  const UPSet odds = set("ap(1,2,10)");
  const UPSet evens = set("ap(2,2,10)");
  const UPSet cofin3 = set("ap(3,1,1)");
  CHECK(odds.unite(evens) == UPSet::all(N));
  CHECK(odds.intersect(evens).is_empty());
  CHECK(cofin3.intersect(set("fin{1,2,3}")) == set("fin{3}"));
}

TEST_CASE("cardinality examples") {
  CHECK(set("fin{1,2}").cardinality() == Cardinality{false, 2});
  CHECK(set("ap(1,2,10)").cardinality().infinite);
  CHECK(set("ap(3,1,1)").minus(set("ap(3,1,1)")).cardinality() == Cardinality{false, 0});
}

TEST_CASE("equality is structural on the canonical form") {
  CHECK(set("ap(1,2,10)") == set("ap(1,4,1010)"));
  CHECK(set("ap(1,2,10)") != set("ap(2,2,10)"));
  const UPSet s = set("fin{2,5}|ap(7,3,101)");
  CHECK(s == s.unite(UPSet::empty(N)));
  // A prefix that continues the pattern is absorbed into it.
  CHECK(set("fin{1,3}|ap(5,2,10)") == set("ap(1,2,10)"));
  CHECK(set("fin{1,3}|ap(5,2,10)").start() == 1);
}

TEST_CASE("canonical printing") {
  CHECK(set("ap(2,2,10)").to_string() == "ap(2,2,10)");
  CHECK(set("ap(1,2,01)").to_string() == "ap(2,2,10)");
  CHECK(set("ap(3,1,1)").to_string() == "ap(3,1,1)");
  CHECK(set("fin{1}|ap(2,2,10)").to_string() == "fin{1}|ap(2,2,10)");
  CHECK(set("none").to_string() == "fin{}");
  CHECK(set("~ap(1,2,10) & fin{1,2,3,4}").to_string() == "fin{2,4}");
  CHECK(set("all", Universe::finite(4)).to_string() == "fin{1,2,3,4}");
}

TEST_CASE("finite universes share the code path") {
  const Universe five = Universe::finite(5);
  const UPSet odd5 = set("ap(1,2,10)", five);
  CHECK(odd5 == set("fin{1,3,5}", five));
  CHECK(odd5.complement() == set("fin{2,4}", five));
  CHECK(odd5.cardinality() == Cardinality{false, 3});
  CHECK_THROWS_AS(set("fin{6}", five), ParseError);
  CHECK_THROWS_AS(odd5.unite(set("ap(1,2,10)")), Error);
}

TEST_CASE("parse errors carry a column") {
  try {
    parse_set("fin{1,2} | ap(1,2,1)", N, 4, 10);
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 4);
    CHECK(e.column() > 10);
  }
  CHECK_THROWS_AS(parse_set("odds", N), ParseError);
  CHECK_THROWS_AS(parse_set("fin{1,2", N), ParseError);
}

TEST_CASE("affine preimage and image agree with enumeration") {
  for (int trial = 0; trial < 200; ++trial) {
    const UPSet s = random_upset(N);
    const Index scale = uniform(0, 3);
    const Index offset = uniform(-2, 4);
    const UPSet pre = s.preimage_affine(N, scale, offset);
    expect_pointwise(pre, [&](Index i) { return s.contains(scale * i + offset); }, 400);
    if (scale > 0) {
      const UPSet indices = s.intersect(set("ap(3,1,1)"));
      const UPSet image = indices.image_affine(N, scale, offset);
      expect_pointwise(
          image,
          [&](Index j) {
            for (Index i = 1; scale * i + offset <= j; ++i) {
              if (scale * i + offset == j && indices.contains(i)) return true;
            }
            return false;
          },
          300);
    }
  }
}

TEST_CASE("operations agree with brute-force membership") {
  for (int trial = 0; trial < 300; ++trial) {
    const UPSet s = random_upset(N);
    const UPSet t = random_upset(N);
    const Index bound = 10 * (s.start() + t.start() + s.period() * t.period());
    expect_pointwise(s.unite(t), [&](Index i) { return s.contains(i) || t.contains(i); }, bound);
    expect_pointwise(s.intersect(t), [&](Index i) { return s.contains(i) && t.contains(i); }, bound);
    expect_pointwise(s.minus(t), [&](Index i) { return s.contains(i) && !t.contains(i); }, bound);
    expect_pointwise(s.complement(), [&](Index i) { return !s.contains(i); }, bound);
  }
}

TEST_CASE("De Morgan and distributivity") {
  for (int trial = 0; trial < 300; ++trial) {
    const UPSet a = random_upset(N);
    const UPSet b = random_upset(N);
    const UPSet c = random_upset(N);
    CHECK(a.unite(b).complement() == a.complement().intersect(b.complement()));
    CHECK(a.intersect(b).complement() == a.complement().unite(b.complement()));
    CHECK(a.intersect(b.unite(c)) == a.intersect(b).unite(a.intersect(c)));
    CHECK(a.unite(b.intersect(c)) == a.unite(b).intersect(a.unite(c)));
  }
}

TEST_CASE("finite cardinality counts memberships") {
  for (int trial = 0; trial < 300; ++trial) {
    const UPSet s = random_upset(N).intersect(random_upset(N).complement());
    const Cardinality card = s.cardinality();
    if (card.infinite) continue;
    Index count = 0;
    for (Index i = 1; i < s.start() + s.period(); ++i) count += s.contains(i);
    CHECK(count == card.count);
    CHECK(static_cast<Index>(s.members().size()) == card.count);
  }
}

TEST_CASE("printing round-trips through the parser") {
  for (int trial = 0; trial < 300; ++trial) {
    const UPSet s = random_upset(N);
    CHECK(parse_set(s.to_string(), N) == s);
  }
}
