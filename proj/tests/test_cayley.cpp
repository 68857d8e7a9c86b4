#include <doctest.h>

#include "cayspec/catalog.hpp"
#include "cayspec/search.hpp"
#include "oracles.hpp"

using namespace cayspec;

TEST_CASE("symmetric subset validation") {
  const FiniteGroup z4 = build("Z4");
  CHECK_NOTHROW(SymmetricSubset(z4, ElementSubset::of(4, {1, 3})));
  CHECK_THROWS_AS(SymmetricSubset(z4, ElementSubset::of(4, {1})), SubsetError);
  CHECK_THROWS_AS(SymmetricSubset(z4, ElementSubset::of(4, {0, 2})), SubsetError);
  CHECK(SymmetricSubset::is_symmetric(z4, ElementSubset::of(4, {2})));
}

TEST_CASE("subset literals") {
  const FiniteGroup q8 = build("Q8");
  CHECK(parse_subset_literal(q8, "i,-i").bits() == 0b1100);
  CHECK(parse_subset_literal(q8, " i , -i ").bits() == 0b1100);
  CHECK(parse_subset_literal(q8, "0xC").bits() == 0b1100);
  CHECK(parse_subset_literal(q8, "").is_empty());
  CHECK_THROWS_AS(parse_subset_literal(q8, "q"), ParseError);
  CHECK_THROWS_AS(parse_subset_literal(q8, "0x100"), ParseError);
  const FiniteGroup p = build("Q8xZ4");
  CHECK(parse_subset_literal(p, "(i,1),(-i,3)").size() == 2);
  CHECK(format_subset(q8, ElementSubset(8, 0b1100)) == "{i, -i}");
  CHECK(hex_mask(0x3E) == "0x3E");
}

TEST_CASE("adjacency follows x ~ y iff x y^-1 in S") {
  for (const char* expr : {"S3", "Q8", "D4", "Dic12", "A4"}) {
    const FiniteGroup g = build(expr);
    symmetric_subsets(g, false, [&](const SymmetricSubset& s) {
      const CayleyGraph c(g, s);
      const auto a = c.adjacency_entries();
      CHECK(a == oracle::adjacency(g, s.bits()));
      // |S|-regular and symmetric.
      for (std::size_t i = 0; i < g.order(); ++i) {
        std::int64_t deg = 0;
        for (std::size_t j = 0; j < g.order(); ++j) {
          deg += a[i * g.order() + j];
          CHECK(a[i * g.order() + j] == a[j * g.order() + i]);
        }
        CHECK(deg == static_cast<std::int64_t>(s.size()));
      }
    });
  }
}

TEST_CASE("generation and bipartiteness") {
  const FiniteGroup z6 = build("Z6");
  const CayleyGraph cycle(z6, SymmetricSubset(z6, ElementSubset::of(6, {1, 5})));
  CHECK(generates(cycle));
  CHECK(is_bipartite(cycle));
  const CayleyGraph triangles(z6, SymmetricSubset(z6, ElementSubset::of(6, {2, 4})));
  CHECK_FALSE(generates(triangles));
  CHECK_THROWS_AS(is_bipartite(triangles), SubsetError);
  const FiniteGroup z5 = build("Z5");
  CHECK_FALSE(is_bipartite(CayleyGraph(z5, SymmetricSubset(z5, ElementSubset::of(5, {1, 4})))));
}

TEST_CASE("complete multipartite iff complement is a subgroup") {
  const FiniteGroup z6 = build("Z6");
  // Complement {0,3}: K_{2,2,2}.
  CHECK(is_complete_multipartite(CayleyGraph(z6, SymmetricSubset(z6, ElementSubset::of(6, {1, 2, 4, 5})))));
  CHECK_FALSE(is_complete_multipartite(CayleyGraph(z6, SymmetricSubset(z6, ElementSubset::of(6, {1, 5})))));
}

TEST_CASE("lifts build the expected subsets") {
  const FiniteGroup z4 = build("Z4");
  const auto h = ElementSubset::of(4, {0, 2});
  const SymmetricSubset s(z4, ElementSubset::of(4, {2}));
  CHECK(lift_from_subgroup(z4, h, s).bits() == ElementSubset::of(4, {1, 2, 3}).bits());
  const FiniteGroup q = quotient(z4, h).group;
  const SymmetricSubset sbar(q, ElementSubset::full(2).without(q.identity()));
  CHECK(lift_from_quotient(z4, h, sbar).bits() == ElementSubset::of(4, {1, 3}).bits());
  const FiniteGroup z2 = build("Z2"), z3 = build("Z3");
  const SymmetricSubset a(z2, ElementSubset::of(2, {1}));
  const SymmetricSubset b(z3, ElementSubset::of(3, {1, 2}));
  const FiniteGroup p = direct_product(z2, z3);
  const SymmetricSubset u = union_product_subset(z2, z3, a, b);
  CHECK(format_subset(p, u.subset()) == "{(0,1), (0,2), (1,0)}");
  CHECK_THROWS_AS(lift_from_subgroup(z4, ElementSubset::of(4, {0, 1}), s), std::exception);
}
