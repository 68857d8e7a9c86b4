#include <doctest.h>

#include <random>

#include "cayspec/linalg.hpp"
#include "oracles.hpp"

using namespace cayspec;

namespace {

std::vector<std::int64_t> random_matrix(std::mt19937& rng, std::size_t r, std::size_t c, int lo, int hi) {
  std::uniform_int_distribution<int> d(lo, hi);
  std::vector<std::int64_t> m(r * c);
  for (auto& x : m) x = d(rng);
  return m;
}

// A low-rank product so that rank deficiency is common.
std::vector<std::int64_t> low_rank(std::mt19937& rng, std::size_t n, std::size_t k) {
  const auto a = random_matrix(rng, n, k, -3, 3), b = random_matrix(rng, k, n, -3, 3);
  std::vector<std::int64_t> m(n * n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t l = 0; l < k; ++l) m[i * n + j] += a[i * k + l] * b[l * n + j];
  return m;
}

}  // namespace

TEST_CASE("rank on small fixtures") {
  CHECK(rank(IntMatrix{{1, 2}, {2, 4}}) == 1);
  CHECK(rank(IntMatrix{{0, 0}, {0, 0}}) == 0);
  CHECK(rank(IntMatrix::identity(5)) == 5);
  CHECK(rank(IntMatrix::ones(4)) == 1);
  CHECK(rank(IntMatrix{{1, 2, 3}, {4, 5, 6}}) == 2);
  CHECK_THROWS_AS(rank(std::vector<std::int64_t>{1, 2, 3}, 2, 2), DimensionError);
}

TEST_CASE("rank agrees with rational elimination") {
  std::mt19937 rng(11);
  for (int t = 0; t < 60; ++t) {
    const std::size_t n = 2 + rng() % 20, k = rng() % (n + 1);
    const auto m = low_rank(rng, n, k);
    const std::size_t want = oracle::rank(m, n, n);
    CHECK(rank(m, n, n) == want);
    CHECK(rank_mod(m, n, n, 2147483647u) <= want);
  }
}

TEST_CASE("rank survives int64 overflow via the GMP fallback") {
  std::mt19937 rng(5);
  const std::size_t n = 18;
  const auto m = random_matrix(rng, n, n, -1000000, 1000000);
  CHECK(rank(m, n, n) == oracle::rank(m, n, n));
}

TEST_CASE("determinants") {
  CHECK(determinant(IntMatrix{{2, 1}, {1, 3}}) == 5);
  CHECK(determinant(IntMatrix{{0, 1}, {1, 0}}) == -1);
  CHECK(determinant(IntMatrix::ones(3)) == 0);
  // Vandermonde on 1..5: prod (j - i).
  IntMatrix v(5, 5);
  for (std::size_t i = 0; i < 5; ++i)
    for (std::size_t j = 0; j < 5; ++j) {
      BigInt p = 1;
      for (std::size_t e = 0; e < j; ++e) p *= static_cast<long>(i + 1);
      v(i, j) = p;
    }
  CHECK(determinant(v) == 288);
}

TEST_CASE("polynomial arithmetic") {
  const IntPolynomial p{-2, 0, 1};  // x^2 - 2
  CHECK(p.degree() == 2);
  CHECK(p.to_string() == "x^2 - 2");
  CHECK(p.evaluate(3) == 7);
  IntPolynomial q{-6, 1, 1};  // (x+3)(x-2)
  CHECK(q.divide_root(2));
  CHECK(q == IntPolynomial{3, 1});
  CHECK_FALSE(q.divide_root(5));
  CHECK((IntPolynomial{1, 1} * IntPolynomial{-1, 1}) == IntPolynomial{-1, 0, 1});
  CHECK(IntPolynomial::from_roots({{1, 2}}) == IntPolynomial{1, -2, 1});
  CHECK(pow(IntPolynomial{1, 1}, 3) == IntPolynomial{1, 3, 3, 1});
  CHECK(IntPolynomial{-1, 0, 1}.divide_exact(IntPolynomial{1, 1}) == IntPolynomial{-1, 1});
  CHECK_FALSE(IntPolynomial{-2, 0, 1}.divide_exact(IntPolynomial{1, 1}).has_value());
}

TEST_CASE("char_poly matches Faddeev-LeVerrier") {
  std::mt19937 rng(3);
  for (int t = 0; t < 30; ++t) {
    const std::size_t n = 1 + rng() % 10;
    auto m = random_matrix(rng, n, n, -9, 9);
    const auto want = oracle::char_poly(m, n);
    CHECK(char_poly(IntMatrix(n, n, m)).coefficients() == want);
  }
  CHECK(char_poly(IntMatrix{{0, 1}, {1, 0}}) == IntPolynomial{-1, 0, 1});
}

TEST_CASE("char_poly_mod reduces the exact polynomial") {
  std::mt19937 rng(9);
  for (int t = 0; t < 20; ++t) {
    const std::size_t n = 1 + rng() % 12;
    const auto m = random_matrix(rng, n, n, -20, 20);
    const auto exact = char_poly(IntMatrix(n, n, m)).coefficients();
    for (std::size_t i : {0, 3}) {
      const std::uint32_t p = word_prime(i);
      const auto mod = char_poly_mod(m, n, p);
      REQUIRE(mod.size() == n + 1);
      for (std::size_t k = 0; k <= n; ++k) {
        mpz_class r = exact[k] % p;
        if (r < 0) r += p;
        CHECK(mod[k] == r.get_ui());
      }
    }
  }
}

TEST_CASE("word primes are distinct primes below 2^31") {
  std::uint32_t prev = 0xFFFFFFFFu;
  for (std::size_t i = 0; i < 20; ++i) {
    const std::uint32_t p = word_prime(i);
    CHECK(p < prev);
    CHECK(p < (1u << 31));
    CHECK(mpz_probab_prime_p(mpz_class(p).get_mpz_t(), 30) > 0);
    prev = p;
  }
  CHECK(word_prime(0) == 2147483647u);
}

TEST_CASE("integer root split") {
  const IntPolynomial p = IntPolynomial::from_roots({{3, 1}, {-1, 2}}) * IntPolynomial{-2, 0, 1};
  const RootSplit s = integer_root_split(p, -5, 5);
  CHECK(s.roots == std::map<std::int64_t, std::size_t>{{-1, 2}, {3, 1}});
  CHECK(s.remainder == IntPolynomial{-2, 0, 1});
}

TEST_CASE("annihilator oracle") {
  CHECK(annihilator_product_oracle(IntMatrix{{0, 1}, {1, 0}}, 1));
  CHECK_FALSE(annihilator_product_oracle(IntMatrix{{1, 1}, {1, 0}}, 2));
  CHECK_THROWS(annihilator_product_oracle(IntMatrix::identity(13), 1));
}

TEST_CASE("kron and shifts") {
  const IntMatrix k = kron(IntMatrix{{1, 2}}, IntMatrix{{0, 1}, {1, 0}});
  CHECK(k == IntMatrix{{0, 1, 0, 2}, {1, 0, 2, 0}});
  CHECK(shifted(IntMatrix::ones(2), 1) == IntMatrix{{0, 1}, {1, 0}});
  CHECK_THROWS_AS(matmul(IntMatrix(2, 3), IntMatrix(2, 3)), DimensionError);
}
