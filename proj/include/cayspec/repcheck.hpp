#pragma once

// Explicit complex representations and the decomposition of Cayley spectra
// over a complete set of irreducibles. Cross-validation only: the exact
// verdict engine stays authoritative.

#include <complex>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "cayspec/cayley.hpp"

namespace cayspec {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;

inline constexpr double kRepTolerance = 1e-9;

class RepError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ExplicitRep {
  std::string label;
  std::size_t degree = 0;
  std::vector<CMatrix> images;  // indexed by element
  /// Every entry is a Gaussian integer, so sums are computed exactly in double.
  bool exact = false;
};

/// Extends generator images to the whole group and checks the homomorphism
/// property on all pairs. Throws RepError when the images do not define one.
ExplicitRep rep_from_generators(const FiniteGroup& g, std::string label,
                                const std::vector<std::pair<Element, CMatrix>>& generators);
/// Convenience overload looking generators up by element name.
ExplicitRep rep_from_generators(const FiniteGroup& g, std::string label,
                                const std::vector<std::pair<std::string, CMatrix>>& generators);

bool is_homomorphism(const FiniteGroup& g, const ExplicitRep& r, double tol = kRepTolerance);

/// r composed with a projection G -> image group.
ExplicitRep pullback(const ExplicitRep& r, const std::vector<Element>& projection, std::string label);
/// Outer tensor product on direct_product(a, b) (index ia * |b| + ib).
ExplicitRep tensor(const ExplicitRep& a, const ExplicitRep& b);

CMatrix rep_sum(const ExplicitRep& r, const SymmetricSubset& s);

/// Eigenvalues of rep_sum, or nullopt when the solver fails.
std::optional<std::vector<Complex>> rep_eigenvalues(const ExplicitRep& r, const SymmetricSubset& s);

enum class RepIntegrality { integral, nonintegral, indeterminate };
std::string to_string(RepIntegrality r);
RepIntegrality rep_integral(const ExplicitRep& r, const SymmetricSubset& s, double tol = kRepTolerance);

struct RepSystem {
  std::string label;
  FiniteGroup group;
  std::vector<ExplicitRep> reps;

  std::size_t degree_square_sum() const;
  bool is_complete() const { return degree_square_sum() == group.order(); }
};

/// Multiset union of d_t copies of the eigenvalues of rho_t(S) against the
/// exact adjacency spectrum. Throws RepError for an incomplete system.
bool ds_union_check(const RepSystem& rs, const SymmetricSubset& s);

// Shipped irreducible systems, on the catalog's element indexing.
RepSystem cyclic_system(std::size_t n);
RepSystem dihedral_system(std::size_t n);
RepSystem quaternion_system();
RepSystem s3_system();
RepSystem dic12_system();
RepSystem a4_system();
RepSystem product_system(const RepSystem& a, const RepSystem& b);
/// System for a group expression whose factors all have shipped systems
/// (Z<n> and its powers, D<n>, Q8, S3, Dic12, A4). nullopt otherwise.
std::optional<RepSystem> shipped_system(std::string_view group_expr);

// Explicit representations used as witnesses.
ExplicitRep theta_rep(const FiniteGroup& dihedral, std::size_t n);  // x -> swap, y -> diag(w, w^-1)
ExplicitRep pi_rep(const FiniteGroup& q8);                           // i -> diag(i,-i), j -> [[0,1],[-1,0]]
ExplicitRep q8z4_rho(const FiniteGroup& q8xz4);                      // (a, t^j) -> i^j pi(a)
ExplicitRep permutation_rep(const FiniteGroup& perm_group);          // symmetric_group / alternating_group4
ExplicitRep s3z3_rep(const FiniteGroup& s3xz3);                      // (sigma, x^j) -> w^j P(sigma)
ExplicitRep e9_lifted_rep(const FiniteGroup& e9);                    // through E9/<x> = S3, y -> (123), z -> (12)

}  // namespace cayspec
