#include "cayspec/linalg.hpp"

#include <algorithm>
#include <cassert>
#include <limits>
#include <mutex>
#include <sstream>
#include <stdexcept>

namespace cayspec {

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols, std::span<const std::int64_t> entries)
    : rows_(rows), cols_(cols) {
  if (entries.size() != rows * cols) throw DimensionError("entry count does not match dimensions");
  data_.reserve(entries.size());
  for (std::int64_t v : entries) data_.emplace_back(static_cast<long>(v));
}

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long>> rows)
    : rows_(rows.size()), cols_(rows.size() ? rows.begin()->size() : 0) {
  for (const auto& row : rows) {
    if (row.size() != cols_) throw DimensionError("ragged matrix literal");
    for (long v : row) data_.emplace_back(v);
  }
}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::ones(std::size_t rows, std::size_t cols) {
  IntMatrix m(rows, cols);
  for (auto& v : m.data_) v = 1;
  return m;
}

bool IntMatrix::is_symmetric() const {
  if (!is_square()) return false;
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = i + 1; j < cols_; ++j)
      if ((*this)(i, j) != (*this)(j, i)) return false;
  return true;
}

bool IntMatrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const BigInt& v) { return v == 0; });
}

std::optional<std::vector<std::int64_t>> IntMatrix::to_int64() const {
  std::vector<std::int64_t> out;
  out.reserve(data_.size());
  for (const auto& v : data_) {
    if (!v.fits_slong_p()) return std::nullopt;
    out.push_back(v.get_si());
  }
  return out;
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

IntMatrix operator+(const IntMatrix& a, const IntMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw DimensionError("matrix sum: dimension mismatch");
  IntMatrix c(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = a(i, j) + b(i, j);
  return c;
}

IntMatrix operator-(const IntMatrix& a, const IntMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw DimensionError("matrix difference: dimension mismatch");
  IntMatrix c(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = a(i, j) - b(i, j);
  return c;
}

IntMatrix operator*(const BigInt& s, const IntMatrix& a) {
  IntMatrix c(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = s * a(i, j);
  return c;
}

IntMatrix matmul(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols() != b.rows()) throw DimensionError("matmul: dimension mismatch");
  IntMatrix c(a.rows(), b.cols());
  BigInt t;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (a(i, k) == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) {
        if (b(k, j) == 0) continue;
        mpz_addmul(c(i, j).get_mpz_t(), a(i, k).get_mpz_t(), b(k, j).get_mpz_t());
      }
    }
  return c;
}

IntMatrix kron(const IntMatrix& a, const IntMatrix& b) {
  IntMatrix c(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l) c(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
  return c;
}

IntMatrix shifted(const IntMatrix& a, const BigInt& lambda) {
  if (!a.is_square()) throw DimensionError("shift of a non-square matrix");
  IntMatrix c = a;
  for (std::size_t i = 0; i < a.rows(); ++i) c(i, i) -= lambda;
  return c;
}

namespace {

/// Fraction-free elimination in 64-bit storage with 128-bit intermediates.
/// Returns nullopt as soon as an entry leaves the int64 range.
std::optional<std::size_t> rank_int64(std::vector<std::int64_t> a, std::size_t rows, std::size_t cols) {
  constexpr __int128 lo = std::numeric_limits<std::int64_t>::min();
  constexpr __int128 hi = std::numeric_limits<std::int64_t>::max();
  std::int64_t prev = 1;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && a[piv * cols + c] == 0) ++piv;
    if (piv == rows) continue;
    if (piv != r) std::swap_ranges(a.begin() + static_cast<long>(piv * cols), a.begin() + static_cast<long>((piv + 1) * cols),
                                   a.begin() + static_cast<long>(r * cols));
    const std::int64_t p = a[r * cols + c];
    const std::int64_t* pivot_row = &a[r * cols];
    for (std::size_t i = r + 1; i < rows; ++i) {
      std::int64_t* row = &a[i * cols];
      const std::int64_t f = row[c];
      for (std::size_t j = c + 1; j < cols; ++j) {
        __int128 t = static_cast<__int128>(p) * row[j] - static_cast<__int128>(f) * pivot_row[j];
        t /= prev;
        if (t < lo || t > hi) return std::nullopt;
        row[j] = static_cast<std::int64_t>(t);
      }
      row[c] = 0;
    }
    prev = p;
    ++r;
  }
  return r;
}

/// Fraction-free elimination over GMP integers. Returns the rank and, for
/// square input, the determinant.
std::pair<std::size_t, BigInt> bareiss(std::vector<BigInt> a, std::size_t rows, std::size_t cols) {
  BigInt prev = 1, tmp;
  std::size_t r = 0;
  int sign = 1;
  bool full = true;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && a[piv * cols + c] == 0) ++piv;
    if (piv == rows) {
      full = false;
      continue;
    }
    if (piv != r) {
      for (std::size_t j = 0; j < cols; ++j) std::swap(a[piv * cols + j], a[r * cols + j]);
      sign = -sign;
    }
    const BigInt p = a[r * cols + c];
    for (std::size_t i = r + 1; i < rows; ++i) {
      const BigInt f = a[i * cols + c];
      for (std::size_t j = c + 1; j < cols; ++j) {
        BigInt& x = a[i * cols + j];
        x *= p;
        tmp = f * a[r * cols + j];
        x -= tmp;
        mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), prev.get_mpz_t());
      }
      a[i * cols + c] = 0;
    }
    prev = p;
    ++r;
  }
  BigInt det = 0;
  if (rows == cols && full && r == rows) det = sign * prev;
  return {r, det};
}

std::uint64_t inverse_mod(std::uint64_t a, std::uint64_t p) {
  std::uint64_t result = 1, e = p - 2;
  a %= p;
  while (e) {
    if (e & 1u) result = result * a % p;
    a = a * a % p;
    e >>= 1;
  }
  return result;
}

bool is_prime(std::uint32_t n) {
  if (n < 2) return false;
  for (std::uint32_t d = 2; static_cast<std::uint64_t>(d) * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

/// i-th prime below 2^31 in descending order; products of two residues fit in 64 bits.
std::uint32_t nth_prime(std::size_t i) {
  static std::vector<std::uint32_t> list;
  static std::mutex lock;
  std::lock_guard guard(lock);
  std::uint32_t candidate = list.empty() ? (1u << 31) - 1 : list.back() - 2;
  while (list.size() <= i) {
    if (is_prime(candidate)) list.push_back(candidate);
    candidate -= 2;
  }
  return list[i];
}

/// det(xI - A) mod p via reduction to upper Hessenberg form.
std::vector<std::uint64_t> hessenberg_char_poly(std::vector<std::uint64_t> h, std::size_t n, std::uint64_t p) {
  auto at = [&](std::size_t i, std::size_t j) -> std::uint64_t& { return h[i * n + j]; };

  for (std::size_t m = 1; m + 1 < n; ++m) {
    std::size_t i = m;
    while (i < n && at(i, m - 1) == 0) ++i;
    if (i == n) continue;
    if (i != m) {
      for (std::size_t j = 0; j < n; ++j) std::swap(at(i, j), at(m, j));
      for (std::size_t j = 0; j < n; ++j) std::swap(at(j, i), at(j, m));
    }
    const std::uint64_t t_inv = inverse_mod(at(m, m - 1), p);
    for (std::size_t r = m + 1; r < n; ++r) {
      if (at(r, m - 1) == 0) continue;
      const std::uint64_t u = at(r, m - 1) * t_inv % p;
      for (std::size_t j = 0; j < n; ++j) at(r, j) = (at(r, j) + (p - u) * at(m, j)) % p;
      for (std::size_t j = 0; j < n; ++j) at(j, m) = (at(j, m) + u * at(j, r)) % p;
    }
  }

  // polys[m] = characteristic polynomial of the leading m x m block.
  std::vector<std::vector<std::uint64_t>> polys(n + 1);
  polys[0] = {1};
  for (std::size_t m = 1; m <= n; ++m) {
    std::vector<std::uint64_t> next(m + 1, 0);
    const auto& prevp = polys[m - 1];
    const std::uint64_t diag = at(m - 1, m - 1);
    for (std::size_t d = 0; d < prevp.size(); ++d) {
      next[d + 1] = (next[d + 1] + prevp[d]) % p;
      next[d] = (next[d] + (p - diag) * prevp[d]) % p;
    }
    std::uint64_t t = 1;
    for (std::size_t i = 1; i < m; ++i) {
      t = t * at(m - i, m - i - 1) % p;
      const std::uint64_t c = t * at(m - i - 1, m - 1) % p;
      if (c == 0) continue;
      const auto& q = polys[m - i - 1];
      for (std::size_t d = 0; d < q.size(); ++d) next[d] = (next[d] + (p - c) * q[d]) % p;
    }
    polys[m] = std::move(next);
  }
  return polys[n];
}

std::vector<std::uint64_t> char_poly_mod(const IntMatrix& a, std::uint64_t p) {
  const std::size_t n = a.rows();
  std::vector<std::uint64_t> h(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      BigInt r = a(i, j) % static_cast<unsigned long>(p);
      if (r < 0) r += static_cast<unsigned long>(p);
      h[i * n + j] = r.get_ui();
    }
  return hessenberg_char_poly(std::move(h), n, p);
}

std::uint64_t reduce_mod(std::int64_t v, std::uint64_t p) {
  const std::int64_t r = v % static_cast<std::int64_t>(p);
  return static_cast<std::uint64_t>(r < 0 ? r + static_cast<std::int64_t>(p) : r);
}

}  // namespace

std::vector<std::uint64_t> char_poly_mod(std::span<const std::int64_t> entries, std::size_t n, std::uint32_t prime) {
  if (entries.size() != n * n) throw DimensionError("char_poly_mod: entry count is not n*n");
  std::vector<std::uint64_t> h(n * n);
  for (std::size_t i = 0; i < h.size(); ++i) h[i] = reduce_mod(entries[i], prime);
  return hessenberg_char_poly(std::move(h), n, prime);
}

std::uint32_t word_prime(std::size_t i) { return nth_prime(i); }

std::size_t rank(std::span<const std::int64_t> entries, std::size_t rows, std::size_t cols) {
  if (entries.size() != rows * cols) throw DimensionError("entry count does not match dimensions");
  if (auto r = rank_int64({entries.begin(), entries.end()}, rows, cols)) return *r;
  std::vector<BigInt> big;
  big.reserve(entries.size());
  for (std::int64_t v : entries) big.emplace_back(static_cast<long>(v));
  return bareiss(std::move(big), rows, cols).first;
}

std::size_t rank(const IntMatrix& a) {
  if (auto small = a.to_int64()) return rank(*small, a.rows(), a.cols());
  std::vector<BigInt> big;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) big.push_back(a(i, j));
  return bareiss(std::move(big), a.rows(), a.cols()).first;
}

std::size_t rank_mod(std::span<const std::int64_t> entries, std::size_t rows, std::size_t cols,
                     std::uint32_t prime) {
  const std::uint64_t p = prime;
  std::vector<std::uint64_t> a(entries.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    const std::int64_t r = entries[i] % static_cast<std::int64_t>(p);
    a[i] = static_cast<std::uint64_t>(r < 0 ? r + static_cast<std::int64_t>(p) : r);
  }
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && a[piv * cols + c] == 0) ++piv;
    if (piv == rows) continue;
    if (piv != r)
      for (std::size_t j = 0; j < cols; ++j) std::swap(a[piv * cols + j], a[r * cols + j]);
    const std::uint64_t inv = inverse_mod(a[r * cols + c], p);
    for (std::size_t i = r + 1; i < rows; ++i) {
      const std::uint64_t f = a[i * cols + c] * inv % p;
      if (f == 0) continue;
      for (std::size_t j = c; j < cols; ++j) a[i * cols + j] = (a[i * cols + j] + (p - f) * a[r * cols + j]) % p;
    }
    ++r;
  }
  return r;
}

BigInt determinant(const IntMatrix& a) {
  if (!a.is_square()) throw DimensionError("determinant of a non-square matrix");
  if (a.rows() == 0) return 1;
  std::vector<BigInt> big;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) big.push_back(a(i, j));
  return bareiss(std::move(big), a.rows(), a.cols()).second;
}

IntPolynomial::IntPolynomial(std::vector<BigInt> coefficients) : coeffs_(std::move(coefficients)) { normalize(); }

IntPolynomial::IntPolynomial(std::initializer_list<long> coefficients) {
  for (long c : coefficients) coeffs_.emplace_back(c);
  normalize();
}

void IntPolynomial::normalize() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

IntPolynomial IntPolynomial::monomial(std::size_t degree) {
  std::vector<BigInt> c(degree + 1);
  c[degree] = 1;
  return IntPolynomial(std::move(c));
}

IntPolynomial IntPolynomial::from_roots(const std::map<std::int64_t, std::size_t>& roots) {
  IntPolynomial p{1};
  for (const auto& [r, m] : roots)
    for (std::size_t i = 0; i < m; ++i) p = p * IntPolynomial{-static_cast<long>(r), 1};
  return p;
}

BigInt IntPolynomial::evaluate(const BigInt& x) const {
  BigInt acc = 0;
  for (std::size_t i = coeffs_.size(); i-- > 0;) acc = acc * x + coeffs_[i];
  return acc;
}

bool IntPolynomial::divide_root(const BigInt& r) {
  if (coeffs_.empty()) return false;
  const std::size_t n = coeffs_.size() - 1;
  if (n == 0) return false;
  std::vector<BigInt> q(n);
  q[n - 1] = coeffs_[n];
  for (std::size_t i = n - 1; i > 0; --i) q[i - 1] = coeffs_[i] + r * q[i];
  if (coeffs_[0] + r * q[0] != 0) return false;
  coeffs_ = std::move(q);
  return true;
}

std::optional<IntPolynomial> IntPolynomial::divide_exact(const IntPolynomial& divisor) const {
  if (divisor.is_zero() || divisor.leading() != 1) throw std::invalid_argument("divide_exact needs a monic divisor");
  if (is_zero()) return IntPolynomial{};
  if (degree() < divisor.degree()) return std::nullopt;
  std::vector<BigInt> rem = coeffs_;
  const std::size_t dd = static_cast<std::size_t>(divisor.degree());
  std::vector<BigInt> q(rem.size() - dd);
  for (std::size_t i = q.size(); i-- > 0;) {
    q[i] = rem[i + dd];
    for (std::size_t j = 0; j <= dd; ++j) rem[i + j] -= q[i] * divisor.coeffs_[j];
  }
  for (const auto& c : rem)
    if (c != 0) return std::nullopt;
  return IntPolynomial(std::move(q));
}

IntPolynomial operator*(const IntPolynomial& a, const IntPolynomial& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<BigInt> c(a.coeffs_.size() + b.coeffs_.size() - 1);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j)
      mpz_addmul(c[i + j].get_mpz_t(), a.coeffs_[i].get_mpz_t(), b.coeffs_[j].get_mpz_t());
  return IntPolynomial(std::move(c));
}

IntPolynomial operator+(const IntPolynomial& a, const IntPolynomial& b) {
  std::vector<BigInt> c(std::max(a.coeffs_.size(), b.coeffs_.size()));
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = a.coefficient(i) + b.coefficient(i);
  return IntPolynomial(std::move(c));
}

std::string IntPolynomial::to_string() const {
  if (coeffs_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (std::size_t i = coeffs_.size(); i-- > 0;) {
    const BigInt& c = coeffs_[i];
    if (c == 0) continue;
    const BigInt mag = abs(c);
    if (first) {
      if (c < 0) out << "-";
    } else {
      out << (c < 0 ? " - " : " + ");
    }
    if (mag != 1 || i == 0) out << mag;
    if (i > 0) out << "x";
    if (i > 1) out << "^" << i;
    first = false;
  }
  return out.str();
}

IntPolynomial pow(const IntPolynomial& p, std::size_t e) {
  IntPolynomial result{1}, base = p;
  while (e) {
    if (e & 1u) result = result * base;
    base = base * base;
    e >>= 1;
  }
  return result;
}

IntPolynomial char_poly(const IntMatrix& a) {
  if (!a.is_square()) throw DimensionError("char_poly of a non-square matrix");
  const std::size_t n = a.rows();
  if (n == 0) return IntPolynomial{1};

  // Every coefficient is a signed sum of principal minors; Hadamard bounds a
  // minor by the product of its row norms, so |c_j| <= prod_i (1 + r_i).
  BigInt bound = 1;
  for (std::size_t i = 0; i < n; ++i) {
    BigInt sq = 0;
    for (std::size_t j = 0; j < n; ++j) sq += a(i, j) * a(i, j);
    BigInt r;
    mpz_sqrt(r.get_mpz_t(), sq.get_mpz_t());
    if (r * r < sq) r += 1;
    bound *= r + 1;
  }
  const BigInt needed = 2 * bound + 1;

  std::vector<BigInt> coeffs(n + 1, 0);
  BigInt modulus = 1;
  std::size_t used = 0;
  while (modulus <= needed) {
    const std::uint64_t p = nth_prime(used);
    ++used;
    const auto residues = char_poly_mod(a, p);
    const std::uint64_t inv = inverse_mod(BigInt(modulus % static_cast<unsigned long>(p)).get_ui(), p);
    for (std::size_t k = 0; k <= n; ++k) {
      // x' = x + modulus * ((r - x) * inv mod p)
      BigInt diff = (BigInt(static_cast<unsigned long>(residues[k])) - coeffs[k]) % static_cast<unsigned long>(p);
      if (diff < 0) diff += static_cast<unsigned long>(p);
      const std::uint64_t step = diff.get_ui() * inv % p;
      coeffs[k] += modulus * static_cast<unsigned long>(step);
    }
    modulus *= static_cast<unsigned long>(p);
  }
  assert(modulus > 2 * bound);
  const BigInt half = modulus / 2;
  for (auto& c : coeffs)
    if (c > half) c -= modulus;
  return IntPolynomial(std::move(coeffs));
}

RootSplit integer_root_split(const IntPolynomial& p, std::int64_t lo, std::int64_t hi) {
  RootSplit out{{}, p};
  for (std::int64_t r = lo; r <= hi; ++r) {
    std::size_t m = 0;
    while (out.remainder.divide_root(BigInt(static_cast<long>(r)))) ++m;
    if (m) out.roots[r] = m;
  }
  return out;
}

bool annihilator_product_oracle(const IntMatrix& a, std::int64_t k) {
  if (!a.is_square()) throw DimensionError("annihilator oracle needs a square matrix");
  if (a.rows() > 12) throw std::invalid_argument("annihilator oracle refuses matrices larger than 12x12");
  IntMatrix product = IntMatrix::identity(a.rows());
  for (std::int64_t i = -k; i <= k; ++i) product = matmul(product, shifted(a, BigInt(static_cast<long>(i))));
  return product.is_zero();
}

}  // namespace cayspec
