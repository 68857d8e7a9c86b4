#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>

#include <json.hpp>

#include "cayspec/catalog.hpp"
#include "cayspec/search.hpp"
#include "oracles.hpp"

using namespace cayspec;

namespace {

SymmetricSubset subset(const FiniteGroup& g, std::string_view literal) {
  return SymmetricSubset(g, parse_subset_literal(g, literal));
}

bool oracle_integral(const FiniteGroup& g, Mask s) {
  std::map<long, std::size_t> roots;
  const long k = static_cast<long>(std::popcount(s));
  return oracle::integer_roots(oracle::char_poly(oracle::adjacency(g, s), g.order()), k, roots) == 0;
}

bool complement_is_subgroup(const FiniteGroup& g, Mask s) {
  const Mask all = g.order() == 64 ? ~Mask{0} : (Mask{1} << g.order()) - 1;
  const Mask c = all & ~s;
  return oracle::closure(g, c) == c;
}

void same_verdict(const GroupVerdict& a, const GroupVerdict& b) {
  CHECK(a.holds == b.holds);
  CHECK(a.complete == b.complete);
  REQUIRE(a.witnesses.size() == b.witnesses.size());
  for (std::size_t i = 0; i < a.witnesses.size(); ++i) {
    CHECK(a.witnesses[i].counter == b.witnesses[i].counter);
    CHECK(a.witnesses[i].kind == b.witnesses[i].kind);
  }
  CHECK(a.stats.subsets_enumerated == b.stats.subsets_enumerated);
  CHECK(a.stats.reduced_count == b.stats.reduced_count);
  CHECK(a.stats.verdicts == b.stats.verdicts);
  CHECK(a.stats.integral == b.stats.integral);
}

}  // namespace

TEST_CASE("subset family of Z4") {
  const FiniteGroup z4 = build("Z4");
  const SubsetFamily fam(z4);
  REQUIRE(fam.cell_count() == 2);
  CHECK(fam.cells()[0] == 0b1010);  // {1,3}
  CHECK(fam.cells()[1] == 0b0100);  // {2}
  CHECK(fam.count() == 4);
  for (std::uint64_t c = 0; c < 4; ++c) CHECK(fam.counter(fam.bits(c)) == c);
  CHECK_THROWS_AS(fam.counter(0b0010), SubsetError);
  CHECK(fam.cell_of(3) == 0);
  CHECK(fam.cell_of(0) == -1);
}

TEST_CASE("symmetric subset counts match brute force") {
  for (const char* expr : {"Z1", "S3", "Q8", "Z4", "D4", "Dic12", "A4", "Z2^2xZ3", "D7", "Z2^4", "Q8xZ2", "Z16"}) {
    const FiniteGroup g = build(expr);
    CHECK_MESSAGE(SubsetFamily(g).count() == oracle::symmetric_subset_count(g), expr);
  }
  CHECK(SubsetFamily(build("S3")).count() == 16);
  CHECK(SubsetFamily(build("Q8")).count() == 16);
}

TEST_CASE("reduced enumeration keeps one subset per conjugacy orbit") {
  for (const char* expr : {"S3", "D4", "Q8", "A4", "Dic12", "D6"}) {
    const FiniteGroup g = build(expr);
    const auto all = list_symmetric_subsets(g, false);
    const auto reps = list_symmetric_subsets(g, true);
    std::set<Mask> orbits;
    for (const auto& s : all) {
      Mask smallest = s.bits();
      const SubsetFamily fam(g);
      std::uint64_t best = fam.counter(s.bits());
      for (Element a = 0; a < g.order(); ++a) {
        const Mask b = conjugate_subset(g, s.subset(), a).bits();
        if (fam.counter(b) < best) {
          best = fam.counter(b);
          smallest = b;
        }
      }
      orbits.insert(smallest);
    }
    std::set<Mask> got;
    for (const auto& s : reps) got.insert(s.bits());
    CHECK_MESSAGE(got == orbits, expr);
  }
}

TEST_CASE("documented group verdicts") {
  CHECK(is_cayley_integral(build("S3")).holds);
  CHECK(is_cayley_integral(build("Dic12")).holds);
  const GroupVerdict a4 = is_cayley_integral(build("A4"));
  CHECK_FALSE(a4.holds);
  REQUIRE(a4.witnesses.size() == 1);
  CHECK(a4.witnesses[0].kind == WitnessKind::nonintegral);
  CHECK_FALSE(oracle_integral(build("A4"), a4.witnesses[0].subset.bits()));

  CHECK(is_cis(build("Z4")).holds);
  CHECK(is_cis(build("Z9")).holds);
  const FiniteGroup cube = build("Z2^3");
  const GroupVerdict z23 = is_cis(cube);
  CHECK_FALSE(z23.holds);
  CHECK(z23.witnesses.at(0).kind == WitnessKind::integral_noncomplement);
  const FiniteGroup d4 = build("D4");
  const GroupVerdict dv = is_cis(d4);
  CHECK_FALSE(dv.holds);
  CHECK(format_subset(d4, dv.witnesses.at(0).subset.subset()) == "{y, y3, x}");
}

TEST_CASE("find_witness returns the smallest counter") {
  CHECK_FALSE(find_witness(build("Z2^2"), WitnessKind::nonintegral).has_value());
  CHECK_FALSE(find_witness(build("Z3"), WitnessKind::integral_noncomplement).has_value());
  const FiniteGroup q8 = build("Q8");
  const auto w = find_witness(q8, WitnessKind::integral_noncomplement);
  REQUIRE(w.has_value());
  const SubsetFamily fam(q8);
  CHECK(fam.counter(w->bits()) <= fam.counter(subset(q8, "i,-i,j,-j,-1").bits()));
  // Exhaustive scan for the least witness.
  std::optional<std::uint64_t> least;
  for (std::uint64_t c = 0; c < fam.count() && !least; ++c) {
    const Mask s = fam.bits(c);
    if (oracle::closure(q8, s) != 0xFF) continue;
    if (oracle_integral(q8, s) && !complement_is_subgroup(q8, s)) least = c;
  }
  CHECK(least == fam.counter(w->bits()));
}

TEST_CASE("reduction, threads and generating-only mode do not change verdicts") {
  for (int n = 1; n <= 12; ++n)
    for (const auto& e : all_groups_of_order(n)) {
      for (Predicate p : {Predicate::cayley_integral, Predicate::cis}) {
        SearchOptions plain;
        plain.reduce = false;
        SearchOptions reduced;
        SearchOptions threaded;
        threaded.threads = 3;
        threaded.block = 3;
        const GroupVerdict a = run_search(e.group, p, plain);
        const GroupVerdict b = run_search(e.group, p, reduced);
        CHECK_MESSAGE(a.holds == b.holds, e.expr);
        same_verdict(b, run_search(e.group, p, threaded));
        if (p == Predicate::cayley_integral) {
          SearchOptions gen;
          gen.generating_only = true;
          CHECK_MESSAGE(run_search(e.group, p, gen).holds == a.holds, e.expr);
        }
      }
    }
}

TEST_CASE("witness kinds are consistent with the oracle") {
  for (const char* expr : {"Z8", "Z6", "D4", "Q8", "A4", "Z3^2", "D5"}) {
    const FiniteGroup g = build(expr);
    SearchOptions all;
    all.stop_at_first = false;
    const GroupVerdict v = is_cis(g, all);
    for (const Witness& w : v.witnesses) {
      CHECK(oracle::closure(g, w.subset.bits()) == (Mask{1} << g.order()) - 1);
      const bool integral = oracle_integral(g, w.subset.bits());
      const bool complement = complement_is_subgroup(g, w.subset.bits());
      if (w.kind == WitnessKind::integral_noncomplement) CHECK((integral && !complement));
      // This direction never fires on the tested groups.
      CHECK(w.kind != WitnessKind::complement_nonintegral);
    }
  }
}

TEST_CASE("subgroups of CIS groups are CIS") {
  for (int n = 1; n <= 12; ++n)
    for (const auto& e : all_groups_of_order(n)) {
      if (!is_cis(e.group).holds) continue;
      for (const auto& h : subgroups_by_generators(e.group, 2))
        CHECK_MESSAGE(is_cis(subgroup(e.group, h).group).holds, e.expr);
    }
}

TEST_CASE("quotients of Cayley integral groups are Cayley integral") {
  for (const char* expr : {"Q8", "Dic12", "S3", "Z2^2xZ4", "Q8xZ2", "Z2^4", "Z4^2", "Z2xZ4"}) {
    const FiniteGroup g = build(expr);
    REQUIRE(is_cayley_integral(g).holds);
    for (const auto& nsub : subgroups_by_generators(g, 2))
      if (is_normal(g, nsub)) CHECK_MESSAGE(is_cayley_integral(quotient(g, nsub).group).holds, expr);
  }
}

TEST_CASE("bound statistics on Cayley integral groups") {
  for (const char* expr : {"Q8", "Dic12", "Z2^2xZ3", "Z2^3"}) {
    const GroupVerdict v = is_cayley_integral(build(expr));
    CHECK(v.stats.bound_applicable == v.stats.generating);
    CHECK(v.stats.bound_violations == 0);
    CHECK(v.stats.strong_violations == 0);
  }
}

TEST_CASE("exhaustive cap") {
  const FiniteGroup big = build("Z6^2");
  CHECK_THROWS_AS(is_cis(big), CapExceeded);
  SearchOptions forced;
  forced.force = true;
  CHECK_FALSE(is_cis(big, forced).holds);
}

TEST_CASE("checkpoints") {
  const auto path = (std::filesystem::temp_directory_path() / "cayspec_checkpoint_test.json").string();
  std::filesystem::remove(path);
  const FiniteGroup g = build("Z2^2xZ4");
  SearchOptions o;
  o.group_expr = "Z2^2xZ4";
  o.checkpoint = path;
  o.block = 16;
  const GroupVerdict first = is_cayley_integral(g, o);
  REQUIRE(std::filesystem::exists(path));
  nlohmann::ordered_json j;
  std::ifstream(path) >> j;
  CHECK(j.at("schema") == 1);
  CHECK(j.at("next_counter") == SubsetFamily(g).count());
  CHECK(j.at("cell_order").size() == SubsetFamily(g).cell_count());

  // A finished checkpoint short-circuits.
  const GroupVerdict again = is_cayley_integral(g, o);
  same_verdict(first, again);

  // Rewinding to zero replays the whole search.
  j["next_counter"] = 0;
  for (auto& [k, v] : j["partial_stats"].items()) v = 0;
  std::ofstream(path) << j.dump();
  same_verdict(first, is_cayley_integral(g, o));

  // A checkpoint for another search is rejected.
  SearchOptions other = o;
  other.reduce = false;
  CHECK_THROWS(is_cayley_integral(g, other));
  std::filesystem::remove(path);
}
