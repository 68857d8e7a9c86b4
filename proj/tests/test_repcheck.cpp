#include <doctest.h>

#include <cmath>

#include "cayspec/catalog.hpp"
#include "cayspec/repcheck.hpp"
#include "cayspec/search.hpp"

using namespace cayspec;

namespace {

SymmetricSubset subset(const FiniteGroup& g, std::string_view literal) {
  return SymmetricSubset(g, parse_subset_literal(g, literal));
}

std::vector<double> sorted_real(const std::vector<Complex>& z) {
  std::vector<double> out;
  for (const auto& c : z) {
    CHECK(std::abs(c.imag()) < 1e-9);
    out.push_back(c.real());
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST_CASE("shipped systems are complete and homomorphic") {
  for (const char* expr : {"Z1", "Z5", "Z12", "D4", "D5", "D6", "Q8", "S3", "Dic12", "A4", "Z2^2xZ3", "Z2xZ4", "S3xZ3",
                           "Q8xZ2"}) {
    const auto sys = shipped_system(expr);
    REQUIRE_MESSAGE(sys.has_value(), expr);
    CHECK_MESSAGE(sys->is_complete(), expr);
    CHECK(sys->group.table().size() == build(expr).table().size());
    for (const auto& r : sys->reps) CHECK_MESSAGE(is_homomorphism(sys->group, r), expr << " " << r.label);
  }
  CHECK_FALSE(shipped_system("S4").has_value());
  CHECK(dic12_system().reps.size() == 6);
  CHECK(quaternion_system().reps.size() == 5);
}

TEST_CASE("non-homomorphisms are rejected") {
  const FiniteGroup z4 = build("Z4");
  CMatrix bad(1, 1);
  bad(0, 0) = Complex(-1, 0);
  CHECK_NOTHROW(rep_from_generators(z4, "sign", std::vector<std::pair<std::string, CMatrix>>{{"1", bad}}));
  bad(0, 0) = Complex(0.5, 0);
  CHECK_THROWS_AS(rep_from_generators(z4, "bad", std::vector<std::pair<std::string, CMatrix>>{{"1", bad}}), RepError);
}

TEST_CASE("rep sums of the documented witnesses") {
  const FiniteGroup d4 = build("D4");
  const SymmetricSubset s = subset(d4, "x,xy");
  const CMatrix m = rep_sum(theta_rep(d4, 4), s);
  const Complex w(0, 1);
  CHECK(std::abs(m(0, 0)) < 1e-12);
  CHECK(std::abs(m(1, 1)) < 1e-12);
  CHECK(std::abs(std::abs(m(0, 1)) - std::abs(1.0 + w)) < 1e-12);
  const auto ev = sorted_real(*rep_eigenvalues(theta_rep(d4, 4), s));
  CHECK(ev[0] == doctest::Approx(-std::sqrt(2.0)).epsilon(1e-12));
  CHECK(ev[1] == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));

  const FiniteGroup p = build("Q8xZ4");
  CMatrix want(2, 2);
  want << Complex(-2, 0), Complex(0, 2), Complex(0, -2), Complex(2, 0);
  CHECK((rep_sum(q8z4_rho(p), subset(p, "(i,1),(-i,3),(j,1),(-j,3)")) - want).norm() < 1e-12);
  CHECK(rep_sum(pi_rep(build("Q8")), SymmetricSubset(build("Q8"), ElementSubset::empty(8))).norm() == 0);

  const FiniteGroup s3z3 = build("S3xZ3");
  CHECK(rep_integral(s3z3_rep(s3z3), subset(s3z3, "((12),1),((12),2),((13),0)")) == RepIntegrality::nonintegral);
  const FiniteGroup e9 = build("E9");
  const auto e9ev = sorted_real(*rep_eigenvalues(e9_lifted_rep(e9), subset(e9, "xz,z,yz")));
  CHECK(e9ev[2] == doctest::Approx(3.0));
  CHECK(e9ev[0] == doctest::Approx(-std::sqrt(3.0)));
}

TEST_CASE("trivial representation is always integral") {
  const RepSystem sys = s3_system();
  const ExplicitRep& trivial = sys.reps.front();
  REQUIRE(trivial.degree == 1);
  for (const auto& s : list_symmetric_subsets(sys.group, false)) CHECK(rep_integral(trivial, s) == RepIntegrality::integral);
}

TEST_CASE("Q8 union decomposition") {
  const RepSystem sys = quaternion_system();
  const SymmetricSubset s = subset(sys.group, "i,-i,j,-j,-1");
  CHECK(ds_union_check(sys, s));
  const CMatrix pi = rep_sum(pi_rep(sys.group), s);
  CHECK((pi + CMatrix::Identity(2, 2)).norm() < 1e-12);
}

TEST_CASE("union property and integrality criterion over whole groups") {
  for (const char* expr : {"D4", "Q8", "S3", "Dic12", "Z6", "A4", "Z1"}) {
    const RepSystem sys = *shipped_system(expr);
    for (const auto& s : list_symmetric_subsets(sys.group, false)) {
      CHECK_MESSAGE(ds_union_check(sys, s), expr << " " << format_subset(sys.group, s.subset()));
      bool all = true;
      for (const auto& r : sys.reps) all = all && rep_integral(r, s) == RepIntegrality::integral;
      CHECK(all == verdict(CayleyGraph(sys.group, s)).is_integral());
    }
  }
}

TEST_CASE("incomplete systems are refused") {
  RepSystem sys = s3_system();
  sys.reps.pop_back();
  CHECK_FALSE(sys.is_complete());
  CHECK_THROWS_AS(ds_union_check(sys, SymmetricSubset(sys.group, ElementSubset::empty(6))), RepError);
}
