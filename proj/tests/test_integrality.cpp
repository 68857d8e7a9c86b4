#include <doctest.h>

#include <cmath>
#include <random>

#include "cayspec/catalog.hpp"
#include "cayspec/search.hpp"
#include "oracles.hpp"

using namespace cayspec;

namespace {

SymmetricSubset subset(const FiniteGroup& g, std::string_view literal) {
  return SymmetricSubset(g, parse_subset_literal(g, literal));
}

// Exact spectrum through the Faddeev-LeVerrier oracle; nullopt when not integral.
std::optional<Spectrum> oracle_spectrum(const FiniteGroup& g, const SymmetricSubset& s) {
  std::map<long, std::size_t> roots;
  const std::size_t left =
      oracle::integer_roots(oracle::char_poly(oracle::adjacency(g, s.bits()), g.order()), static_cast<long>(s.size()), roots);
  if (left) return std::nullopt;
  Spectrum out;
  for (const auto& [r, m] : roots) out[r] = m;
  return out;
}

void check_invariants(const FiniteGroup& g, const SymmetricSubset& s, const Spectrum& spec) {
  const auto n = static_cast<std::int64_t>(g.order()), k = static_cast<std::int64_t>(s.size());
  std::int64_t count = 0, trace = 0, trace2 = 0;
  for (const auto& [l, m] : spec) {
    const auto mm = static_cast<std::int64_t>(m);
    count += mm;
    trace += l * mm;
    trace2 += l * l * mm;
    CHECK(std::llabs(l) <= k);
  }
  CHECK(count == n);
  CHECK(trace == 0);
  CHECK(trace2 == n * k);
  const std::size_t components = g.order() / closure(g, s.subset()).size();
  CHECK(spec.at(k) == components);
  const CayleyGraph c(g, s);
  if (components == 1 && k > 0) CHECK((spec.contains(-k) ? spec.at(-k) : 0) == (is_bipartite(c) ? 1u : 0u));
}

}  // namespace

TEST_CASE("documented verdicts") {
  const FiniteGroup q8 = build("Q8");
  const SpectrumVerdict v = verdict(CayleyGraph(q8, subset(q8, "i,-i,j,-j,-1")));
  REQUIRE(v.is_integral());
  CHECK(v.spectrum() == Spectrum{{5, 1}, {1, 2}, {-1, 4}, {-3, 1}});

  const FiniteGroup cube = build("Z2^3");
  const SpectrumVerdict c = verdict(CayleyGraph(cube, subset(cube, "e1,e2,e3")));
  REQUIRE(c.is_integral());
  CHECK(c.spectrum() == Spectrum{{3, 1}, {1, 3}, {-1, 3}, {-3, 1}});

  const FiniteGroup d4 = build("D4");
  const CayleyGraph octagon(d4, subset(d4, "x,xy"));
  for (auto method : {VerdictMethod::rank, VerdictMethod::char_poly}) {
    const SpectrumVerdict w = verdict(octagon, method);
    REQUIRE_FALSE(w.is_integral());
    CHECK(w.certificate().integer_eigenspace_total == 4);
    CHECK(w.certificate().integer_part == Spectrum{{2, 1}, {0, 2}, {-2, 1}});
    CHECK(w.certificate().float_evidence.size() == 4);
    CHECK(w.certificate().remainder_degree.has_value() == (method == VerdictMethod::char_poly));
  }
  const IntPolynomial cp = char_poly(adjacency_matrix(octagon));
  CHECK(integer_root_split(cp, -2, 2).remainder == pow(IntPolynomial{-2, 0, 1}, 2));
}

TEST_CASE("trivial graphs") {
  const FiniteGroup z5 = build("Z5");
  const SymmetricSubset none(z5, z5.none());
  const SymmetricSubset all(z5, z5.all().without(z5.identity()));
  const std::vector<SymmetricSubset> list{none, all};
  const auto out = spectrum_of_subset_list(z5, list, 2);
  REQUIRE(out.size() == 2);
  CHECK(out[0].spectrum() == Spectrum{{0, 5}});
  CHECK(out[1].spectrum() == Spectrum{{4, 1}, {-1, 4}});
  const FiniteGroup z4 = build("Z4");
  const auto z4_subsets = list_symmetric_subsets(z4, false);
  CHECK(z4_subsets.size() == 4);
  for (const auto& v : spectrum_of_subset_list(z4, z4_subsets)) CHECK(v.is_integral());
}

TEST_CASE("verdict input validation") {
  CHECK_THROWS_AS(verdict_symmetric(std::vector<std::int64_t>{0, 1, 0, 0}, 2), DimensionError);
  CHECK_THROWS_AS(verdict_symmetric(std::vector<std::int64_t>{0, 1, 1}, 2), DimensionError);
  CHECK(verdict_symmetric(std::vector<std::int64_t>{}, 0).is_integral());
}

TEST_CASE("verdicts agree with the Faddeev-LeVerrier oracle on every subset") {
  for (const char* expr : {"Z6", "S3", "D4", "Q8", "Z2^3", "Dic12", "A4", "D5", "Z2^2xZ3", "Z12"}) {
    const FiniteGroup g = build(expr);
    symmetric_subsets(g, false, [&](const SymmetricSubset& s) {
      const auto want = oracle_spectrum(g, s);
      const CayleyGraph c(g, s);
      for (auto method : {VerdictMethod::rank, VerdictMethod::char_poly}) {
        const SpectrumVerdict v = verdict(c, method);
        REQUIRE(v.is_integral() == want.has_value());
        if (want) {
          CHECK(v.spectrum() == *want);
          check_invariants(g, s, v.spectrum());
        } else {
          CHECK(v.certificate().integer_eigenspace_total < g.order());
          CHECK_FALSE(v.certificate().float_evidence.empty());
        }
      }
      CHECK(is_integral(c) == want.has_value());
    });
  }
}

TEST_CASE("float eigenvalues sit within 1e-9 of integral spectra") {
  const FiniteGroup g = build("Q8xZ2");
  std::mt19937 rng(1);
  const auto all = list_symmetric_subsets(g, false);
  for (int t = 0; t < 50; ++t) {
    const SymmetricSubset& s = all[rng() % all.size()];
    const CayleyGraph c(g, s);
    const SpectrumVerdict v = verdict(c);
    REQUIRE(v.is_integral());
    const auto eig = float_eigenvalues(c.adjacency_entries(), g.order());
    REQUIRE(eig);
    Spectrum rounded;
    for (double x : *eig) {
      CHECK(std::abs(x - std::round(x)) < 1e-9);
      ++rounded[static_cast<std::int64_t>(std::llround(x))];
    }
    CHECK(rounded == v.spectrum());
  }
}

TEST_CASE("the fast integrality check matches full verdicts at order 32") {
  std::mt19937 rng(4);
  for (const char* expr : {"Q8xZ4", "Q8xZ2^2", "Z2^3xZ4", "D4xZ4", "Z8xZ4"}) {
    const FiniteGroup g = build(expr);
    const SubsetFamily fam(g);
    for (int t = 0; t < 25; ++t) {
      const std::uint64_t counter = (static_cast<std::uint64_t>(rng()) << 32 | rng()) % fam.count();
      const SymmetricSubset s(g, ElementSubset(g.order(), fam.bits(counter)));
      const CayleyGraph c(g, s);
      CHECK(is_integral(c) == verdict(c, VerdictMethod::char_poly).is_integral());
    }
  }
}

TEST_CASE("verdicts are invariant under conjugation") {
  const FiniteGroup g = build("S4");
  std::mt19937 rng(2);
  const SubsetFamily fam(g);
  for (int t = 0; t < 20; ++t) {
    const SymmetricSubset s(g, ElementSubset(g.order(), fam.bits(rng() % fam.count())));
    const Element a = rng() % g.order();
    const SymmetricSubset conj(g, conjugate_subset(g, s.subset(), a));
    const SpectrumVerdict v1 = verdict(CayleyGraph(g, s)), v2 = verdict(CayleyGraph(g, conj));
    REQUIRE(v1.is_integral() == v2.is_integral());
    if (v1.is_integral())
      CHECK(v1.spectrum() == v2.spectrum());
    else
      CHECK(v1.certificate().integer_part == v2.certificate().integer_part);
  }
}

TEST_CASE("divisibility bound examples") {
  const FiniteGroup s3 = build("S3");
  const BoundCheck two = divisibility_bound_check(CayleyGraph(s3, subset(s3, "(12),(13)")));
  CHECK(two.applies);
  CHECK(two.holds);  // 6 divides 12

  const FiniteGroup z6 = build("Z6");
  const BoundCheck four = divisibility_bound_check(CayleyGraph(z6, subset(z6, "1,2,4,5")));
  CHECK(four.applies);
  CHECK(four.strong);
  CHECK(four.strong_holds);  // 6 divides 7!

  const FiniteGroup z2 = build("Z2");
  const BoundCheck k2 = divisibility_bound_check(CayleyGraph(z2, subset(z2, "1")));
  CHECK(k2.applies);
  CHECK(k2.holds);
  CHECK_FALSE(k2.strong);
  CHECK(k2.ok());

  // Disconnected or non-integral graphs are out of scope.
  CHECK_FALSE(divisibility_bound_check(CayleyGraph(z6, subset(z6, "3"))).applies);
  const FiniteGroup d4 = build("D4");
  CHECK_FALSE(divisibility_bound_check(CayleyGraph(d4, subset(d4, "x,xy"))).applies);
}
