#pragma once

// Exact integrality verdicts for Cayley graph spectra.

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "cayspec/cayley.hpp"

namespace cayspec {

using Spectrum = std::map<std::int64_t, std::size_t>;

struct IntegralSpectrum {
  Spectrum multiplicities;  // eigenvalue -> multiplicity, zero entries omitted
};

struct NonIntegralCertificate {
  /// Sum of exact integer eigenspace dimensions; always < n.
  std::size_t integer_eigenspace_total = 0;
  /// The exact integer part of the spectrum.
  Spectrum integer_part;
  /// Degree of the integer-root-free factor of the characteristic polynomial.
  /// Only set by the char-poly method.
  std::optional<long> remainder_degree;
  /// Eigenvalues at distance > 1e-6 from every integer, ascending. Advisory.
  std::vector<double> float_evidence;
};

class SpectrumVerdict {
 public:
  SpectrumVerdict(IntegralSpectrum s) : v_(std::move(s)) {}
  SpectrumVerdict(NonIntegralCertificate c) : v_(std::move(c)) {}

  bool is_integral() const { return std::holds_alternative<IntegralSpectrum>(v_); }
  const Spectrum& spectrum() const { return std::get<IntegralSpectrum>(v_).multiplicities; }
  const NonIntegralCertificate& certificate() const { return std::get<NonIntegralCertificate>(v_); }

 private:
  std::variant<IntegralSpectrum, NonIntegralCertificate> v_;
};

enum class VerdictMethod {
  rank,       // n - rank(A - lambda I) for each integer candidate
  char_poly,  // integer-root split of the exact characteristic polynomial
};

/// Verdict for a symmetric integer matrix given row-major.
SpectrumVerdict verdict_symmetric(std::span<const std::int64_t> entries, std::size_t n,
                                  VerdictMethod method = VerdictMethod::rank);
SpectrumVerdict verdict(const CayleyGraph& c, VerdictMethod method = VerdictMethod::rank);

/// Exact yes/no integrality, much cheaper than a full verdict. Uses float
/// eigenvalues as candidates, certifies them by checking that
/// prod (A - lambda I) vanishes, and refutes by factoring det(xI - A) mod p.
bool is_integral(const CayleyGraph& c);

/// Ascending eigenvalues of a symmetric matrix in double precision, or
/// nullopt when the solver does not converge.
std::optional<std::vector<double>> float_eigenvalues(std::span<const std::int64_t> entries, std::size_t n);

struct BoundCheck {
  bool applies = false;       // connected and integral
  bool strong = false;        // G perfect, or S has an element of odd order
  bool holds = false;         // |G| divides 2 (2k-1)!
  bool strong_holds = false;  // |G| divides (2k-1)!
  bool ok() const { return !applies || (holds && (!strong || strong_holds)); }
};

/// `perfect` may carry a cached is_perfect(G).
BoundCheck divisibility_bound_check(const CayleyGraph& c, const SpectrumVerdict& v,
                                    std::optional<bool> perfect = std::nullopt);
BoundCheck divisibility_bound_check(const CayleyGraph& c, bool integral, std::optional<bool> perfect = std::nullopt);
BoundCheck divisibility_bound_check(const CayleyGraph& c);

/// Element-wise verdicts in input order.
std::vector<SpectrumVerdict> spectrum_of_subset_list(const FiniteGroup& g, std::span<const SymmetricSubset> subsets,
                                                     unsigned threads = 1);

}  // namespace cayspec
