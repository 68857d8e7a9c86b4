#include <doctest.h>

#include "cayspec/catalog.hpp"
#include "cayspec/report.hpp"
#include "cayspec/suites.hpp"

using namespace cayspec;

TEST_CASE("group verdict JSON") {
  const FiniteGroup d4 = build("D4");
  SearchOptions o;
  o.group_expr = "D4";
  const Json j = to_json(is_cis(d4, o), d4);
  CHECK(j.at("schema") == kSchemaVersion);
  CHECK(j.at("group_expr") == "D4");
  CHECK(j.at("holds") == false);
  CHECK(j.at("witnesses").at(0).at("elements") == Json{"y", "y3", "x"});
  CHECK(j.at("witnesses").at(0).at("mask") == "0x1A");
}

TEST_CASE("spectrum JSON") {
  const FiniteGroup z4 = build("Z4");
  const Json j = to_json(verdict(CayleyGraph(z4, SymmetricSubset(z4, ElementSubset::of(4, {1, 3})))));
  CHECK(j.at("integral") == true);
  CHECK(j.at("spectrum").at(0) == Json{{"eigenvalue", 2}, {"multiplicity", 1}});
  const FiniteGroup d4 = build("D4");
  const Json k = to_json(verdict(CayleyGraph(d4, SymmetricSubset(d4, parse_subset_literal(d4, "x,xy"))),
                                 VerdictMethod::char_poly));
  CHECK(k.at("integral") == false);
  CHECK(k.at("integer_eigenspace_total") == 4);
  CHECK(k.at("remainder_degree") == 4);
}

TEST_CASE("reports round trip byte for byte") {
  const VerificationReport r = criterion_report(10);
  const std::string text = to_json(r).dump(2);
  CHECK(Json::parse(text).dump(2) == text);
  CHECK(to_json(r).at("pass") == true);
  const auto keys = {"schema", "tool", "version", "suite", "config", "pass", "wall_time_ms", "records"};
  const Json j = to_json(r);
  auto it = j.begin();
  for (const char* k : keys) CHECK((it++).key() == k);
}

TEST_CASE("report pass is the conjunction of its records") {
  VerificationReport r;
  r.suite = "t";
  CHECK(r.pass());
  CheckRecord ok;
  ok.pass = true;
  r.add(ok);
  CHECK(r.pass());
  r.add(CheckRecord{});
  CHECK_FALSE(r.pass());
  CHECK(summary(r).find("1/2 checks passed, FAIL") != std::string::npos);
}

TEST_CASE("suite registry") {
  const auto names = suite_names();
  for (const char* s : {"ab", "cis", "ks", "main", "bounds", "lifts", "ds", "s4-transitive", "oracles"})
    CHECK(std::find(names.begin(), names.end(), s) != names.end());
  CHECK_THROWS_AS(run_suite("nope"), std::invalid_argument);
  CHECK_THROWS_AS(criterion_report(11), std::invalid_argument);
}

TEST_CASE("quick suites pass") {
  for (const char* s : {"s4-transitive", "ds", "lifts", "ab", "ks"}) {
    const VerificationReport r = run_suite(s);
    CHECK_MESSAGE(r.pass(), summary(r));
  }
}
