#include <doctest.h>

#include <algorithm>
#include <set>

#include "cayspec/catalog.hpp"

using namespace cayspec;

namespace {

std::vector<std::size_t> sorted_profile(const FiniteGroup& g) {
  auto p = element_order_profile(g);
  std::sort(p.begin(), p.end());
  return p;
}

}  // namespace

TEST_CASE("expression round trip") {
  for (const char* text : {"Z4", "Q8xZ2^2", "SD(7,3,2)", "Z2^2xZ3", "Dic12xZ2", "S3xZ3", "D6"}) {
    const GroupExpr e = parse_group_expr(text);
    CHECK(to_string(e) == text);
    CHECK(parse_group_expr(to_string(e)) == e);
  }
}

TEST_CASE("parse errors") {
  for (const char* bad : {"", "Z", "Z0", "Q9", "Z2x", "x", "Z2^", "SD(7,3)", "Z2^0", "S5", "Zfoo"})
    CHECK_THROWS_AS(build(bad), ParseError);
  CHECK_THROWS_AS(build("Z65"), ParseError);
  CHECK_THROWS_AS(build("Z8^2xZ2"), GroupError);  // order 128
  CHECK_THROWS_AS(build("SD(7,3,3)"), GroupError);  // 3^3 != 1 mod 7
}

TEST_CASE("orders of named groups") {
  const std::vector<std::pair<const char*, std::size_t>> cases{
      {"Z1", 1},   {"Z12", 12},  {"D4", 8},     {"Q8", 8},      {"Dic12", 12}, {"S3", 6},    {"S4", 24},
      {"A4", 12},  {"E9", 18},   {"SL2_3", 24}, {"SD(7,3,2)", 21}, {"Q8xZ2^2", 32}, {"Z2^4", 16}};
  for (const auto& [expr, n] : cases) CHECK_MESSAGE(build(expr).order() == n, expr);
}

TEST_CASE("structural fingerprints") {
  CHECK(sorted_profile(build("Q8")) == std::vector<std::size_t>{1, 2, 4, 4, 4, 4, 4, 4});
  CHECK(sorted_profile(build("D4")) == std::vector<std::size_t>{1, 2, 2, 2, 2, 2, 4, 4});
  CHECK(sorted_profile(build("Dic12")) == std::vector<std::size_t>{1, 2, 3, 3, 4, 4, 4, 4, 4, 4, 6, 6});
  CHECK(sorted_profile(build("A4")) == std::vector<std::size_t>{1, 2, 2, 2, 3, 3, 3, 3, 3, 3, 3, 3});
  CHECK(center(build("SL2_3")).size() == 2);
  CHECK(sorted_profile(build("SD(7,3,2)")).back() == 7);
  CHECK_FALSE(build("SD(7,3,2)").is_abelian());
  CHECK_FALSE(build("E9").is_abelian());
  CHECK(center(build("E9")).size() == 1);
}

TEST_CASE("element naming conventions") {
  const FiniteGroup q8 = build("Q8");
  CHECK(q8.names() == std::vector<std::string>{"1", "-1", "i", "-i", "j", "-j", "k", "-k"});
  CHECK(q8.name(q8.mul(*q8.find("i"), *q8.find("j"))) == "k");
  const FiniteGroup d4 = build("D4");
  const Element x = *d4.find("x"), y = *d4.find("y");
  CHECK(element_order(d4, x) == 2);
  CHECK(element_order(d4, y) == 4);
  CHECK(d4.mul(d4.mul(x, y), x) == d4.inverse(y));
  const FiniteGroup dic = build("Dic12");
  const Element dx = *dic.find("x"), dy = *dic.find("y");
  CHECK(dic.mul(dic.mul(dy, dx), dic.inverse(dy)) == dic.inverse(dx));
  CHECK(build("Z2^3").name(0) == "0");
}

TEST_CASE("the catalog of orders 1..12") {
  const std::vector<std::size_t> expected_counts{1, 1, 1, 2, 1, 2, 1, 5, 2, 2, 1, 5};
  std::size_t total = 0;
  for (int n = 1; n <= 12; ++n) {
    const auto groups = all_groups_of_order(n);
    CHECK(groups.size() == expected_counts[static_cast<std::size_t>(n - 1)]);
    total += groups.size();
    // Pairwise non-isomorphic: distinguish by order profile, abelianness and centre.
    std::set<std::tuple<std::vector<std::size_t>, bool, std::size_t>> seen;
    for (const auto& e : groups) {
      CHECK(e.group.order() == static_cast<std::size_t>(n));
      CHECK(build(e.expr).table().size() == e.group.table().size());
      seen.insert({sorted_profile(e.group), e.group.is_abelian(), center(e.group).size()});
    }
    CHECK(seen.size() == groups.size());
  }
  CHECK(total == 24);
  CHECK_THROWS(all_groups_of_order(13));
}

TEST_CASE("permutation groups") {
  const FiniteGroup s4 = build("S4");
  std::set<std::vector<int>> perms;
  for (Element e = 0; e < s4.order(); ++e) perms.insert(permutation_of(s4, e));
  CHECK(perms.size() == 24);
  const FiniteGroup a4 = build("A4");
  for (Element e = 0; e < a4.order(); ++e) CHECK(permutation_of(a4, e).size() == 4);
}
