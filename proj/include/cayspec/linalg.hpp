#pragma once

// Exact integer linear algebra: dense matrices of arbitrary-precision
// integers, fraction-free (Bareiss) rank and determinant, characteristic
// polynomials by multi-modular CRT, and integer-root extraction.

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace cayspec {

using BigInt = mpz_class;

class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols);
  IntMatrix(std::size_t rows, std::size_t cols, std::span<const std::int64_t> entries);
  IntMatrix(std::initializer_list<std::initializer_list<long>> rows);

  static IntMatrix identity(std::size_t n);
  static IntMatrix ones(std::size_t rows, std::size_t cols);
  static IntMatrix ones(std::size_t n) { return ones(n, n); }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  BigInt& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const BigInt& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  bool is_symmetric() const;
  bool is_zero() const;
  /// Entries as int64 when every entry fits.
  std::optional<std::vector<std::int64_t>> to_int64() const;

  IntMatrix transpose() const;

  friend bool operator==(const IntMatrix& a, const IntMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<BigInt> data_;
};

class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

IntMatrix operator+(const IntMatrix& a, const IntMatrix& b);
IntMatrix operator-(const IntMatrix& a, const IntMatrix& b);
IntMatrix operator*(const BigInt& s, const IntMatrix& a);
IntMatrix matmul(const IntMatrix& a, const IntMatrix& b);
IntMatrix kron(const IntMatrix& a, const IntMatrix& b);
/// a - lambda * I
IntMatrix shifted(const IntMatrix& a, const BigInt& lambda);

/// Rank over the rationals by fraction-free elimination. Runs in checked
/// 64-bit arithmetic first and falls back to GMP on overflow.
std::size_t rank(const IntMatrix& a);
std::size_t rank(std::span<const std::int64_t> entries, std::size_t rows, std::size_t cols);
/// Rank over GF(p). Never exceeds the rational rank.
std::size_t rank_mod(std::span<const std::int64_t> entries, std::size_t rows, std::size_t cols,
                     std::uint32_t p);
BigInt determinant(const IntMatrix& a);

/// det(xI - A) mod p, ascending coefficients in [0, p).
std::vector<std::uint64_t> char_poly_mod(std::span<const std::int64_t> entries, std::size_t n, std::uint32_t p);
/// The i-th prime below 2^31, descending from 2^31 - 1.
std::uint32_t word_prime(std::size_t i);

/// Integer polynomial, coefficients in ascending degree.
class IntPolynomial {
 public:
  IntPolynomial() = default;
  explicit IntPolynomial(std::vector<BigInt> coefficients);
  IntPolynomial(std::initializer_list<long> coefficients);

  static IntPolynomial monomial(std::size_t degree);
  /// prod (x - r)^m over the map.
  static IntPolynomial from_roots(const std::map<std::int64_t, std::size_t>& roots);

  /// Degree of the zero polynomial is reported as -1.
  long degree() const { return static_cast<long>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  bool is_one() const { return coeffs_.size() == 1 && coeffs_[0] == 1; }
  const std::vector<BigInt>& coefficients() const { return coeffs_; }
  BigInt coefficient(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : BigInt(0); }
  const BigInt& leading() const { return coeffs_.back(); }

  BigInt evaluate(const BigInt& x) const;
  /// Divides by (x - r) when r is a root; returns false (and leaves *this
  /// unchanged) otherwise.
  bool divide_root(const BigInt& r);
  /// Exact division by a monic divisor. Returns nullopt if it leaves a remainder.
  std::optional<IntPolynomial> divide_exact(const IntPolynomial& divisor) const;

  friend IntPolynomial operator*(const IntPolynomial& a, const IntPolynomial& b);
  friend IntPolynomial operator+(const IntPolynomial& a, const IntPolynomial& b);
  friend bool operator==(const IntPolynomial& a, const IntPolynomial& b) { return a.coeffs_ == b.coeffs_; }

  std::string to_string() const;

 private:
  void normalize();
  std::vector<BigInt> coeffs_;
};

IntPolynomial pow(const IntPolynomial& p, std::size_t e);

/// det(xI - A), computed modulo enough word-size primes to exceed twice the
/// Hadamard-type coefficient bound, then reconstructed by CRT.
IntPolynomial char_poly(const IntMatrix& a);

struct RootSplit {
  std::map<std::int64_t, std::size_t> roots;
  IntPolynomial remainder;
};

/// Strips every integer root in [lo, hi] from p (with multiplicity).
RootSplit integer_root_split(const IntPolynomial& p, std::int64_t lo, std::int64_t hi);

/// prod_{i=-k..k} (A - iI) == 0. Only for n <= 12 (entry growth).
bool annihilator_product_oracle(const IntMatrix& a, std::int64_t k);

}  // namespace cayspec
