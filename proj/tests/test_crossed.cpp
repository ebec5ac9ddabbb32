#include <doctest.h>

#include "generators.hpp"
#include "ushift/crossed.hpp"
#include "ushift/error.hpp"
#include "ushift/oracle.hpp"

using namespace ushift;
using testing::fixture;

namespace {

const Universe N = Universe::infinite();

UPSet set(const std::string& text) { return parse_set(text, N); }
Clopen clopen(const Ultragraph& g, const std::string& text) {
  return Clopen::from_cylinder(g, parse_cylinder(g, text));
}

GenExpr random_generator(const Ultragraph& g, Index cap) {
  switch (testing::uniform(0, 2)) {
    case 0: return GenExpr::s(testing::pick(g.edges().members_up_to(cap)));
    case 1: return GenExpr::s(testing::pick(g.edges().members_up_to(cap))).star();
    default: return GenExpr::p(testing::random_gzero(g, cap));
  }
}

GenExpr random_product(const Ultragraph& g, Index cap, Index max_factors = 3) {
  GenExpr x = random_generator(g, cap);
  for (Index k = testing::uniform(0, max_factors - 1); k > 0; --k) x = x * random_generator(g, cap);
  return x;
}

void check_supports(const CrossedElem& x) {
  for (const auto& [w, f] : x.terms()) CHECK(f.support().subset_of(x.action().domain(w)));
}

}  // namespace

TEST_CASE("rationals print in lowest terms") {
  CHECK(to_string(Rational(3)) == "3");
  CHECK(to_string(Rational(-2, 4)) == "-1/2");
}

TEST_CASE("indicator combinations are canonical") {
  const auto g = fixture("example1");
  const Clopen a = Clopen::cone(g, {2});
  const Clopen b = Clopen::cone(g, {2, 3});
  const Clopen c = Clopen::cone(g, {4});
  const auto f = IndicatorCombo::indicator(a) + IndicatorCombo::indicator(b);
  CHECK(f.parts().size() == 2);
  CHECK(f.parts().at(2) == b);
  CHECK(f.parts().at(1) == a.minus(b));
  CHECK(f - IndicatorCombo::indicator(b) == IndicatorCombo::indicator(a));
  CHECK((f - f).is_zero());
  CHECK(IndicatorCombo::indicator(a, Rational(1, 2)) + IndicatorCombo::indicator(a, Rational(1, 2)) ==
        IndicatorCombo::indicator(a));
  CHECK((IndicatorCombo::indicator(a) * IndicatorCombo::indicator(c)).is_zero());
  CHECK(IndicatorCombo::indicator(Clopen::empty(g), 5).is_zero());
  CHECK(IndicatorCombo(g).to_string() == "0");

  const auto points = oracle::enumerate_points(g, 2, 2, 5);
  for (int i = 0; i < 40; ++i) {
    const Clopen s = Clopen::from_cylinder(g, testing::random_cylinder(g, 2, 5));
    const Clopen t = Clopen::from_cylinder(g, testing::random_cylinder(g, 2, 5));
    const Rational p(testing::uniform(-3, 3), testing::uniform(1, 3));
    const Rational q(testing::uniform(-3, 3), testing::uniform(1, 3));
    const auto fs = IndicatorCombo::indicator(s, p);
    const auto ft = IndicatorCombo::indicator(t, q);
    const auto sum = fs + ft;
    const auto product = fs * ft;
    CHECK(sum == ft + fs);
    for (const auto& x : points) {
      CHECK(sum.at(x) == fs.at(x) + ft.at(x));
      CHECK(product.at(x) == fs.at(x) * ft.at(x));
    }
  }
}

TEST_CASE("generator images") {
  const auto g = fixture("example1");
  const PartialAction pa(g);
  const CrossedElem s1 = phi_s(pa, 1);
  CHECK(s1.to_string() == "term e1 = 1*" + clopen(g, "full e1:[ap(3,1,1)]").to_string());
  CHECK(phi_p(pa, set("ap(3,1,1)")) ==
        CrossedElem::term(pa, FWord{}, IndicatorCombo::indicator(clopen(g, "full :[ap(3,1,1)]"))));
  CHECK(phi_p(pa, UPSet::empty(N)).is_zero());
  CHECK_THROWS_AS(phi_p(pa, set("ap(1,2,10)")), Error);
  CHECK_THROWS_AS(CrossedElem::term(pa, parse_word("e1"), IndicatorCombo::indicator(Clopen::cone(g, {2}))), Error);
}

TEST_CASE("worked computations on example 1") {
  const auto g = fixture("example1");
  const PartialAction pa(g);
  for (Index e = 1; e <= 6; ++e) {
    const CrossedElem s = phi_s(pa, e);
    const FWord w = FWord::path({e});
    CHECK(mul(star(s), s) == phi_p(pa, g.range(e)));
    CHECK(mul(s, star(s)) == CrossedElem::term(pa, FWord{}, IndicatorCombo::indicator(pa.domain(w))));
    CHECK(star(s) == CrossedElem::term(pa, w.inverse(), IndicatorCombo::indicator(pa.domain(w.inverse()))));
    CHECK(star(star(s)) == s);
  }
  const UPSet a = set("ap(3,1,1)");
  const UPSet b = set("fin{1,2,5}");
  CHECK(mul(phi_p(pa, a), phi_p(pa, b)) == phi_p(pa, a.intersect(b)));
  CHECK(star(phi_p(pa, b)) == phi_p(pa, b));

  const EdgePath pa_a{1, 3, 4};
  const EdgePath pa_b{2, 5};
  const CrossedElem sa = phi_path(pa, pa_a);
  CHECK(sa == CrossedElem::term(pa, FWord::path(pa_a), IndicatorCombo::indicator(Clopen::cone(g, pa_a))));
  const FWord ab = FWord::mixed(pa_a, pa_b);
  CHECK(mul(sa, star(phi_path(pa, pa_b))) == CrossedElem::term(pa, ab, IndicatorCombo::indicator(pa.domain(ab))));
  CHECK(degree(ab) == 1);
}

TEST_CASE("grading") {
  const auto g = fixture("example1");
  const PartialAction pa(g);
  CHECK(degree(parse_word("e1.e3.e4~e2")) == 2);
  CHECK(degree(FWord{}) == 0);
  for (Index e = 1; e <= 4; ++e) {
    for (Index f = 1; f <= 4; ++f) {
      const CrossedElem x = phi_s(pa, e);
      const CrossedElem y = star(phi_s(pa, f));
      const auto report = grading_check(x, y);
      CHECK(report.ok());
      const CrossedElem xy = mul(x, y);
      for (const auto& [w, c] : xy.terms()) CHECK(degree(w) == 0);
    }
  }
}

TEST_CASE("associativity, star anti-homomorphism, supports") {
  for (const char* name : {"example1", "matrixB"}) {
    const auto g = fixture(name);
    const PartialAction pa(g);
    for (int i = 0; i < 25; ++i) {
      const CrossedElem x = evaluate(pa, random_product(g, 4));
      const CrossedElem y = evaluate(pa, random_product(g, 4));
      const CrossedElem z = evaluate(pa, random_product(g, 4));
      const CrossedElem xy = mul(x, y);
      CHECK(mul(xy, z) == mul(x, mul(y, z)));
      CHECK(star(xy) == mul(star(y), star(x)));
      CHECK(star(star(x)) == x);
      CHECK(mul(x + y, z) == mul(x, z) + mul(y, z));
      check_supports(xy);
      check_supports(star(xy));
      CHECK(grading_check(x, y).ok());
    }
  }
}

TEST_CASE("symbolic products agree with pointwise evaluation") {
  const auto g = fixture("example1");
  const PartialAction pa(g);
  const auto points = oracle::enumerate_points(g, 2, 2, 4);
  for (int i = 0; i < 20; ++i) {
    const GenExpr e = random_product(g, 4) * random_product(g, 4).star();
    const CrossedElem symbolic = evaluate(pa, e);
    const oracle::PointwiseElem naive = oracle::pointwise(g, e);
    for (const auto& [w, f] : naive.terms) {
      for (const auto& x : points) CHECK(symbolic.coefficient(w).at(x) == f(x));
    }
    for (const auto& [w, f] : symbolic.terms()) {
      for (const auto& x : points) CHECK(f.at(x) == naive.at(w, x));
    }
  }
}

TEST_CASE("generator expressions") {
  const auto g = fixture("example1");
  const GenExpr e = parse_gen_expr(g, "s e1 * star(s e1) - p [fin{1}] + (p [ap(3,1,1)] - 0)");
  CHECK(e.to_string() == "s e1 * star(s e1) - p [fin{1}] + (p [ap(3,1,1)] - 0)");
  CHECK(parse_gen_expr(g, e.to_string()).to_string() == e.to_string());
  CHECK(parse_gen_expr(g, "s e1 * (s e2 * s e3)").to_string() == "s e1 * (s e2 * s e3)");
  CHECK_THROWS_AS(parse_gen_expr(g, "s e1 *"), ParseError);
  CHECK_THROWS_AS(parse_gen_expr(g, "q e1"), ParseError);
}

TEST_CASE("relations on example 1 and matrix B") {
  for (const char* name : {"example1", "matrixB"}) {
    const auto g = fixture(name);
    const PartialAction pa(g);
    RelationsOptions options;
    options.edge_cap = 6;
    options.vrange = 6;
    for (int i = 0; i < 4; ++i) options.sets.push_back(testing::random_gzero(g));
    const auto report = relations_report(pa, options);
    CHECK(report.ok());
    CHECK(report.checks.size() > 20);
  }
}

TEST_CASE("a corrupted range is caught") {
  const auto g = fixture("example1");
  const PartialAction pa(g);
  RelationsOptions options;
  options.edge_cap = 3;
  options.vrange = 0;
  options.claimed_ranges.emplace(1, UPSet::all(N));
  const auto report = relations_report(pa, options);
  CHECK(report.failures() == 1);
  for (const auto& c : report.checks) {
    if (!c.pass) {
      CHECK(c.relation == "range");
      CHECK(c.instance == "e1");
    }
  }
}
