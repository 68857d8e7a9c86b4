#include "cayspec/cayley.hpp"

#include <bit>
#include <cctype>
#include <cstdio>
#include <deque>

namespace cayspec {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

// Element names such as "(i,1)" contain commas, so only split at depth 0.
std::vector<std::string_view> split_top_level(std::string_view s) {
  std::vector<std::string_view> parts;
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const char c = s[i];
    if (c == '(' || c == '[') ++depth;
    if (c == ')' || c == ']') --depth;
    if (c == ',' && depth == 0) {
      parts.push_back(trim(s.substr(start, i - start)));
      start = i + 1;
    }
  }
  parts.push_back(trim(s.substr(start)));
  return parts;
}

void require_same_order(const FiniteGroup& g, const ElementSubset& s, const char* what) {
  if (s.order() != g.order()) throw SubsetError(std::string(what) + ": subset belongs to a group of another order");
}

}  // namespace

SymmetricSubset::SymmetricSubset(const FiniteGroup& g, const ElementSubset& s) : subset_(s) {
  require_same_order(g, s, "symmetric subset");
  if (s.contains(g.identity())) throw SubsetError("subset contains the identity " + g.name(g.identity()));
  for (Element e : s.elements())
    if (!s.contains(g.inverse(e)))
      throw SubsetError("subset is not inverse-closed: " + g.name(e) + " present but " + g.name(g.inverse(e)) +
                        " missing");
}

bool SymmetricSubset::is_symmetric(const FiniteGroup& g, const ElementSubset& s) {
  if (s.order() != g.order() || s.contains(g.identity())) return false;
  for (Element e : s.elements())
    if (!s.contains(g.inverse(e))) return false;
  return true;
}

ElementSubset parse_subset_literal(const FiniteGroup& g, std::string_view literal) {
  literal = trim(literal);
  if (literal.empty()) return g.none();
  if (literal.size() > 2 && literal[0] == '0' && (literal[1] == 'x' || literal[1] == 'X')) {
    Mask bits = 0;
    for (char c : literal.substr(2)) {
      int digit;
      if (c >= '0' && c <= '9') digit = c - '0';
      else if (c >= 'a' && c <= 'f') digit = c - 'a' + 10;
      else if (c >= 'A' && c <= 'F') digit = c - 'A' + 10;
      else throw ParseError("bad hex digit in subset mask '" + std::string(literal) + "'");
      if (bits >> 60) throw ParseError("subset mask wider than 64 bits");
      bits = bits << 4 | static_cast<Mask>(digit);
    }
    if (g.order() < 64 && (bits >> g.order()) != 0)
      throw ParseError("subset mask has bits beyond the group order " + std::to_string(g.order()));
    return {g.order(), bits};
  }
  Mask bits = 0;
  for (std::string_view part : split_top_level(literal)) {
    if (part.empty()) throw ParseError("empty element name in subset '" + std::string(literal) + "'");
    const auto e = g.find(part);
    if (!e) throw ParseError("unknown element '" + std::string(part) + "'");
    bits |= bit(*e);
  }
  return {g.order(), bits};
}

std::string format_subset(const FiniteGroup& g, const ElementSubset& s) {
  std::string out = "{";
  bool first = true;
  for (Element e : s.elements()) {
    if (!first) out += ", ";
    out += g.name(e);
    first = false;
  }
  return out + "}";
}

std::string hex_mask(Mask bits) {
  char buf[24];
  std::snprintf(buf, sizeof buf, "0x%llX", static_cast<unsigned long long>(bits));
  return buf;
}

CayleyGraph::CayleyGraph(const FiniteGroup& g, SymmetricSubset s) : group_(&g), subset_(std::move(s)) {
  require_same_order(g, subset_.subset(), "Cayley graph");
}

std::vector<std::int64_t> CayleyGraph::adjacency_entries() const {
  const std::size_t n = order();
  const Mask s = subset_.bits();
  std::vector<std::int64_t> a(n * n, 0);
  for (Element y = 0; y < n; ++y) {
    const Element yi = group_->inverse(y);
    for (Element x = 0; x < n; ++x)
      if ((s >> group_->mul(x, yi)) & 1u) a[x * n + y] = 1;
  }
  return a;
}

IntMatrix adjacency_matrix(const CayleyGraph& c) {
  const auto entries = c.adjacency_entries();
  return IntMatrix(c.order(), c.order(), entries);
}

bool generates(const CayleyGraph& c) { return closure(c.group(), c.subset().subset()) == c.group().all(); }

bool is_bipartite(const CayleyGraph& c) {
  if (!generates(c)) throw SubsetError("is_bipartite: Cayley graph is disconnected");
  const FiniteGroup& g = c.group();
  const auto gens = c.subset().elements();
  std::vector<int> colour(g.order(), -1);
  std::deque<Element> queue{g.identity()};
  colour[g.identity()] = 0;
  while (!queue.empty()) {
    const Element v = queue.front();
    queue.pop_front();
    // Neighbours of v are s*v.
    for (Element s : gens) {
      const Element w = g.mul(s, v);
      if (colour[w] < 0) {
        colour[w] = 1 - colour[v];
        queue.push_back(w);
      } else if (colour[w] == colour[v]) {
        return false;
      }
    }
  }
  return true;
}

bool is_complete_multipartite(const CayleyGraph& c) {
  return is_subgroup(c.group(), c.subset().subset().complement());
}

SymmetricSubset lift_from_subgroup(const FiniteGroup& g, const ElementSubset& h, const SymmetricSubset& s) {
  require_same_order(g, h, "lift_from_subgroup");
  require_same_order(g, s.subset(), "lift_from_subgroup");
  if (!is_subgroup(g, h)) throw SubsetError("lift_from_subgroup: h is not a subgroup");
  if ((s.bits() & ~h.bits()) != 0) throw SubsetError("lift_from_subgroup: s is not contained in h");
  return SymmetricSubset(g, ElementSubset(g.order(), s.bits() | h.complement().bits()));
}

SymmetricSubset lift_preimage(const FiniteGroup& g, const std::vector<Element>& projection,
                              const SymmetricSubset& s) {
  if (projection.size() != g.order()) throw SubsetError("lift_preimage: projection size differs from |G|");
  Mask bits = 0;
  for (Element x = 0; x < g.order(); ++x) {
    if (projection[x] >= s.order()) throw SubsetError("lift_preimage: projection leaves the image group");
    if (s.contains(projection[x])) bits |= bit(x);
  }
  // A projection that is not a homomorphism could still yield an asymmetric set;
  // the constructor catches that.
  return SymmetricSubset(g, ElementSubset(g.order(), bits));
}

SymmetricSubset lift_from_quotient(const FiniteGroup& g, const ElementSubset& n, const SymmetricSubset& sbar) {
  require_same_order(g, n, "lift_from_quotient");
  if (!is_subgroup(g, n) || !is_normal(g, n)) throw SubsetError("lift_from_quotient: n is not a normal subgroup");
  const Quotient q = quotient(g, n);
  if (sbar.order() != q.group.order()) throw SubsetError("lift_from_quotient: sbar is not a subset of G/N");
  return lift_preimage(g, q.projection, sbar);
}

SymmetricSubset union_product_subset(const FiniteGroup& a, const FiniteGroup& b, const SymmetricSubset& s1,
                                     const SymmetricSubset& s2) {
  require_same_order(a, s1.subset(), "union_product_subset");
  require_same_order(b, s2.subset(), "union_product_subset");
  const std::size_t order = a.order() * b.order();
  if (order > kMaxOrder) throw SubsetError("union_product_subset: product order exceeds 64");
  Mask bits = 0;
  const auto nb = static_cast<Element>(b.order());
  for (Element x : s1.elements()) bits |= bit(x * nb + b.identity());
  for (Element y : s2.elements()) bits |= bit(a.identity() * nb + y);
  return SymmetricSubset(direct_product(a, b), ElementSubset(order, bits));
}

}  // namespace cayspec
