#include <doctest.h>

#include <random>

#include "cayspec/catalog.hpp"
#include "oracles.hpp"

using namespace cayspec;

namespace {

Element el(const FiniteGroup& g, std::string_view name) {
  const auto e = g.find(name);
  REQUIRE_MESSAGE(e.has_value(), "no element " << name);
  return *e;
}

}  // namespace

TEST_CASE("table validation rejects non-groups") {
  // Not a Latin square.
  CHECK_THROWS_AS(FiniteGroup(2, {0, 1, 1, 1}, {"a", "b"}), GroupError);
  // Latin square without associativity: the quasigroup x*y = 2x - y mod 3
  // has no identity.
  CHECK_THROWS_AS(FiniteGroup(3, {0, 2, 1, 2, 1, 0, 1, 0, 2}, {"a", "b", "c"}), GroupError);
  CHECK_THROWS_AS(FiniteGroup(2, {0, 1, 1}, {"a", "b"}), GroupError);
  CHECK_NOTHROW(FiniteGroup(2, {0, 1, 1, 0}, {"e", "a"}));
}

TEST_CASE("identity, inverses and powers") {
  const FiniteGroup g = build("S3");
  CHECK(g.name(g.identity()) == "id");
  for (Element a = 0; a < g.order(); ++a) {
    CHECK(g.mul(a, g.inverse(a)) == g.identity());
    CHECK(g.power(a, static_cast<std::int64_t>(element_order(g, a))) == g.identity());
    CHECK(g.power(a, -1) == g.inverse(a));
  }
  CHECK_THROWS_AS(g.mul(0, 6), std::out_of_range);
}

TEST_CASE("element order profiles") {
  CHECK(element_order_profile(build("Q8")) == std::vector<std::size_t>{1, 2, 4, 4, 4, 4, 4, 4});
  const auto z6 = element_order_profile(build("Z6"));
  CHECK(z6 == std::vector<std::size_t>{1, 2, 3, 3, 6, 6});
}

TEST_CASE("closure agrees with the brute-force oracle") {
  std::mt19937 rng(7);
  for (const char* expr : {"S4", "Q8xZ2", "D6", "A4", "Dic12", "Z2^2xZ4"}) {
    const FiniteGroup g = build(expr);
    for (int i = 0; i < 40; ++i) {
      const Mask gens = rng() & ((Mask{1} << g.order()) - 1) & rng();
      CHECK(closure(g, ElementSubset(g.order(), gens)).bits() == oracle::closure(g, gens));
    }
  }
}

TEST_CASE("subgroup and normality predicates") {
  const FiniteGroup s3 = build("S3");
  const auto a3 = ElementSubset::of(6, {el(s3, "id"), el(s3, "(123)"), el(s3, "(132)")});
  const auto t = ElementSubset::of(6, {el(s3, "id"), el(s3, "(12)")});
  CHECK(is_subgroup(s3, a3));
  CHECK(is_normal(s3, a3));
  CHECK(is_subgroup(s3, t));
  CHECK_FALSE(is_normal(s3, t));
  CHECK_FALSE(is_subgroup(s3, ElementSubset::of(6, {el(s3, "(12)")})));
}

TEST_CASE("centre, derived subgroup, perfection") {
  CHECK(center(build("Q8")).size() == 2);
  CHECK(center(build("S3")).size() == 1);
  CHECK(center(build("D4")).size() == 2);
  CHECK(derived_subgroup(build("A4")).size() == 4);
  CHECK(derived_subgroup(build("S4")).size() == 12);
  CHECK(derived_subgroup(build("SL2_3")).size() == 8);
  CHECK(derived_subgroup(build("Z12")).size() == 1);
  CHECK_FALSE(is_perfect(build("A4")));
  CHECK_FALSE(is_perfect(build("SL2_3")));
  CHECK(is_perfect(build("Z1")));
}

TEST_CASE("quotients") {
  const FiniteGroup q8 = build("Q8");
  const Quotient q = quotient(q8, center(q8));
  CHECK(q.group.order() == 4);
  CHECK(q.group.is_abelian());
  CHECK(element_order_profile(q.group) == std::vector<std::size_t>{1, 2, 2, 2});
  for (Element a = 0; a < 8; ++a)
    for (Element b = 0; b < 8; ++b) CHECK(q.projection[q8.mul(a, b)] == q.group.mul(q.projection[a], q.projection[b]));
  const FiniteGroup s3 = build("S3");
  CHECK_THROWS_AS(quotient(s3, ElementSubset::of(6, {el(s3, "id"), el(s3, "(12)")})), GroupError);

  // SL(2,3) / centre is A4.
  const FiniteGroup sl = build("SL2_3");
  const Quotient a4 = quotient(sl, center(sl));
  CHECK(a4.group.order() == 12);
  auto p1 = element_order_profile(a4.group), p2 = element_order_profile(build("A4"));
  std::sort(p1.begin(), p1.end());
  std::sort(p2.begin(), p2.end());
  CHECK(p1 == p2);
}

TEST_CASE("direct and semidirect products") {
  const FiniteGroup z2 = build("Z2"), z3 = build("Z3");
  const FiniteGroup p = direct_product(z2, z3);
  CHECK(p.order() == 6);
  CHECK(p.is_abelian());
  CHECK(p.name(1 * 3 + 2) == "(1,2)");
  // Z3 x| Z2 with inversion is S3-like: non-abelian of order 6.
  const std::vector<Element> inversion{0, 2, 1};
  const std::vector<ActionGenerator> action{{1, inversion}};
  const FiniteGroup s = semidirect_product(z3, z2, action);
  CHECK(s.order() == 6);
  CHECK_FALSE(s.is_abelian());
}

TEST_CASE("conjugation preserves subgroups and orders") {
  const FiniteGroup g = build("S4");
  const auto subs = subgroups_by_generators(g, 1);
  for (const auto& h : subs)
    for (Element a = 0; a < g.order(); ++a) {
      const ElementSubset c = conjugate_subset(g, h, a);
      CHECK(c.size() == h.size());
      CHECK(is_subgroup(g, c));
    }
}

TEST_CASE("subgroup counts") {
  // S4 has 30 subgroups; every one is 2-generated.
  CHECK(subgroups_by_generators(build("S4"), 2).size() == 30);
  CHECK(subgroups_by_generators(build("Q8"), 2).size() == 6);
  CHECK(subgroups_by_generators(build("Z2^3"), 3).size() == 16);
  CHECK(subgroups_by_generators(build("Z2^3"), 2).size() == 15);
}

TEST_CASE("materialised subgroups embed homomorphically") {
  const FiniteGroup g = build("D6");
  for (const auto& h : subgroups_by_generators(g, 2)) {
    const Subgroup s = subgroup(g, h);
    REQUIRE(s.group.order() == h.size());
    for (Element a = 0; a < s.group.order(); ++a)
      for (Element b = 0; b < s.group.order(); ++b)
        CHECK(s.embedding[s.group.mul(a, b)] == g.mul(s.embedding[a], s.embedding[b]));
  }
}
