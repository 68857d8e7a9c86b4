#pragma once

// Cayley graphs Cay(G, S): vertices G, x ~ y iff x * y^-1 in S.

#include <string>
#include <string_view>
#include <vector>

#include "cayspec/group.hpp"
#include "cayspec/linalg.hpp"

namespace cayspec {

class SubsetError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Inverse-closed subset not containing the identity.
class SymmetricSubset {
 public:
  SymmetricSubset() = default;
  /// Throws SubsetError when `s` contains the identity or is not inverse-closed.
  SymmetricSubset(const FiniteGroup& g, const ElementSubset& s);

  static bool is_symmetric(const FiniteGroup& g, const ElementSubset& s);

  const ElementSubset& subset() const { return subset_; }
  Mask bits() const { return subset_.bits(); }
  std::size_t size() const { return subset_.size(); }
  std::size_t order() const { return subset_.order(); }
  bool contains(Element e) const { return subset_.contains(e); }
  std::vector<Element> elements() const { return subset_.elements(); }

  friend bool operator==(const SymmetricSubset&, const SymmetricSubset&) = default;

 private:
  ElementSubset subset_;
};

/// Parses "name,name,..." (element names) or a hex bitmask "0x8E".
ElementSubset parse_subset_literal(const FiniteGroup& g, std::string_view literal);
std::string format_subset(const FiniteGroup& g, const ElementSubset& s);
std::string hex_mask(Mask bits);

/// Lightweight view; the group must outlive the graph.
class CayleyGraph {
 public:
  CayleyGraph(const FiniteGroup& g, SymmetricSubset s);

  const FiniteGroup& group() const { return *group_; }
  const SymmetricSubset& subset() const { return subset_; }
  std::size_t order() const { return group_->order(); }
  std::size_t degree() const { return subset_.size(); }

  /// 0/1 adjacency as row-major int64 entries.
  std::vector<std::int64_t> adjacency_entries() const;

 private:
  const FiniteGroup* group_;
  SymmetricSubset subset_;
};

IntMatrix adjacency_matrix(const CayleyGraph& c);
bool generates(const CayleyGraph& c);
/// Two-colourability by BFS. Throws SubsetError for disconnected graphs.
bool is_bipartite(const CayleyGraph& c);
/// G \ S is a subgroup.
bool is_complete_multipartite(const CayleyGraph& c);

/// T = s u (G \ H) for a subgroup H and a symmetric s inside H.
SymmetricSubset lift_from_subgroup(const FiniteGroup& g, const ElementSubset& h, const SymmetricSubset& s);
/// T = union of the cosets in sbar, where sbar lives in quotient(g, n).group.
SymmetricSubset lift_from_quotient(const FiniteGroup& g, const ElementSubset& n, const SymmetricSubset& sbar);
/// T = preimage of s under a projection onto the image group.
SymmetricSubset lift_preimage(const FiniteGroup& g, const std::vector<Element>& projection,
                              const SymmetricSubset& s);
/// (s1 x {1}) u ({1} x s2) inside direct_product(a, b).
SymmetricSubset union_product_subset(const FiniteGroup& a, const FiniteGroup& b, const SymmetricSubset& s1,
                                     const SymmetricSubset& s2);

}  // namespace cayspec
