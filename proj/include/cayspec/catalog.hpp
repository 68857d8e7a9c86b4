#pragma once

// Named groups and group expressions such as "Q8xZ2^2" or "SD(7,3,2)".
//
//   expr := term ('x' term)*
//   term := name ('^' int)?
//   name := Z<int> | D<int> | Q8 | Dic12 | S3 | S4 | A4 | E9 | SL2_3 | SD(<p>,<q>,<r>)

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cayspec/group.hpp"

namespace cayspec {

struct GroupExpr {
  enum class Kind { named, product, power };

  Kind kind = Kind::named;
  std::string name;              // named: "Z", "D", "Q8", "SD", ...
  std::vector<int> params;       // named: Z<k> -> {k}, SD(p,q,r) -> {p,q,r}
  std::vector<GroupExpr> children;  // product: factors; power: {base}
  int exponent = 1;              // power

  static GroupExpr named_group(std::string name, std::vector<int> params = {});
  static GroupExpr product(std::vector<GroupExpr> factors);
  static GroupExpr power(GroupExpr base, int exponent);

  friend bool operator==(const GroupExpr&, const GroupExpr&) = default;
};

GroupExpr parse_group_expr(std::string_view text);
std::string to_string(const GroupExpr& expr);

FiniteGroup build(const GroupExpr& expr);
FiniteGroup build(std::string_view text);

// Named constructors. Element names follow the usual presentations.
FiniteGroup cyclic_group(std::size_t n);                  // "0".."n-1"
FiniteGroup elementary_power(std::size_t m, std::size_t k);  // Z_m^k, names like "e1+2e3"
FiniteGroup dihedral_group(std::size_t n);                // <x,y | x^2=y^n=1, xyx=y^-1>, order 2n
FiniteGroup quaternion_group();                           // 1,-1,i,-i,j,-j,k,-k
FiniteGroup dicyclic12();                                 // <x,y | x^3=y^4=1, yxy^-1=x^-1>
FiniteGroup symmetric_group(std::size_t n);               // n <= 4, cycle notation
FiniteGroup alternating_group4();
FiniteGroup e9_group();                                   // (Z3 x Z3) x| Z2, z inverting
FiniteGroup sl2_3();
/// Z_p x| Z_q with y x y^-1 = x^r; requires r^q = 1 (mod p).
FiniteGroup semidirect_cyclic(std::size_t p, std::size_t q, std::size_t r);

/// Permutation of {0..n-1} for element `e` of symmetric_group(n) or alternating_group4().
std::vector<int> permutation_of(const FiniteGroup& g, Element e);

struct CatalogEntry {
  std::string expr;
  FiniteGroup group;
};

/// Complete list of groups of order n (1 <= n <= 12) up to isomorphism.
std::vector<CatalogEntry> all_groups_of_order(int n);

}  // namespace cayspec
