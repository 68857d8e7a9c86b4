#pragma once

// Finite groups as explicit multiplication tables.
//
// Elements are dense indices 0..n-1 (n <= 64) so every subset fits in a
// single 64-bit word.

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace cayspec {

using Element = std::uint32_t;
using Mask = std::uint64_t;

inline constexpr std::size_t kMaxOrder = 64;

class GroupError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed group expression or subset literal.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr Mask bit(Element e) { return Mask{1} << e; }

/// Subset of a group of a given order, stored as a bitmask.
class ElementSubset {
 public:
  ElementSubset() = default;
  ElementSubset(std::size_t order, Mask bits);

  static ElementSubset empty(std::size_t order) { return {order, 0}; }
  static ElementSubset full(std::size_t order);
  static ElementSubset of(std::size_t order, std::initializer_list<Element> elements);

  std::size_t order() const { return order_; }
  Mask bits() const { return bits_; }
  bool contains(Element e) const { return e < order_ && (bits_ >> e) & 1u; }
  std::size_t size() const;
  bool is_empty() const { return bits_ == 0; }
  std::vector<Element> elements() const;

  ElementSubset complement() const;
  ElementSubset with(Element e) const { return {order_, bits_ | bit(e)}; }
  ElementSubset without(Element e) const { return {order_, bits_ & ~bit(e)}; }

  friend bool operator==(const ElementSubset&, const ElementSubset&) = default;

 private:
  std::size_t order_ = 0;
  Mask bits_ = 0;
};

class FiniteGroup {
 public:
  /// Validates the table (Latin square, identity, inverses, associativity)
  /// and derives identity and inverses. Throws GroupError on failure.
  FiniteGroup(std::size_t order, std::vector<Element> table, std::vector<std::string> names);

  std::size_t order() const { return order_; }
  Element identity() const { return identity_; }

  Element mul(Element a, Element b) const {
    check(a);
    check(b);
    return table_[a * order_ + b];
  }
  Element inverse(Element a) const {
    check(a);
    return inverses_[a];
  }
  Element power(Element a, std::int64_t exponent) const;

  const std::string& name(Element a) const {
    check(a);
    return names_[a];
  }
  const std::vector<std::string>& names() const { return names_; }
  std::optional<Element> find(std::string_view name) const;

  /// Row-major n*n multiplication table.
  std::span<const Element> table() const { return table_; }

  bool is_abelian() const;
  ElementSubset all() const { return ElementSubset::full(order_); }
  ElementSubset none() const { return ElementSubset::empty(order_); }

  /// Same multiplication table with different element names.
  FiniteGroup renamed(std::vector<std::string> names) const;

 private:
  void check(Element a) const {
    if (a >= order_) throw std::out_of_range("element index " + std::to_string(a) + " out of range");
  }

  std::size_t order_;
  std::vector<Element> table_;
  std::vector<std::string> names_;
  Element identity_ = 0;
  std::vector<Element> inverses_;
};

struct Quotient {
  FiniteGroup group;
  /// projection[g] = index of the coset containing g.
  std::vector<Element> projection;
};

/// Subgroup H of G materialised as a group, with embedding[h] = element of G.
struct Subgroup {
  FiniteGroup group;
  std::vector<Element> embedding;
};

/// Automorphism of the normal factor attached to a generator of the acting group.
struct ActionGenerator {
  Element generator;
  std::vector<Element> image;  // permutation of the normal factor's elements
};

Element mul(const FiniteGroup& g, Element a, Element b);
std::size_t element_order(const FiniteGroup& g, Element a);
std::vector<std::size_t> element_order_profile(const FiniteGroup& g);

ElementSubset closure(const FiniteGroup& g, const ElementSubset& gens);
bool is_subgroup(const FiniteGroup& g, const ElementSubset& s);
bool is_normal(const FiniteGroup& g, const ElementSubset& s);
ElementSubset center(const FiniteGroup& g);
ElementSubset conjugate_subset(const FiniteGroup& g, const ElementSubset& s, Element a);

Quotient quotient(const FiniteGroup& g, const ElementSubset& normal);
Subgroup subgroup(const FiniteGroup& g, const ElementSubset& h);

ElementSubset derived_subgroup(const FiniteGroup& g);
bool is_perfect(const FiniteGroup& g);

/// Index of (a, b) is a * |b| + b; names are "(a,b)".
FiniteGroup direct_product(const FiniteGroup& a, const FiniteGroup& b);

/// N x| H with (a,s)(b,t) = (a * act(s)(b), s t). The action is given on
/// generators of H and extended as a homomorphism; index of (a,s) is
/// a * |H| + s.
FiniteGroup semidirect_product(const FiniteGroup& normal, const FiniteGroup& acting,
                               std::span<const ActionGenerator> action);

/// Every subgroup generated by at most `max_generators` elements, sorted by bits.
std::vector<ElementSubset> subgroups_by_generators(const FiniteGroup& g, std::size_t max_generators);

}  // namespace cayspec
