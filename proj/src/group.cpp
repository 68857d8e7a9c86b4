#include "cayspec/group.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <set>

namespace cayspec {

ElementSubset::ElementSubset(std::size_t order, Mask bits) : order_(order), bits_(bits) {
  if (order > kMaxOrder) throw GroupError("subset of a group of order > 64");
  if (order < kMaxOrder && (bits >> order) != 0) throw GroupError("subset bits exceed group order");
}

ElementSubset ElementSubset::full(std::size_t order) {
  return {order, order == kMaxOrder ? ~Mask{0} : (Mask{1} << order) - 1};
}

ElementSubset ElementSubset::of(std::size_t order, std::initializer_list<Element> elements) {
  Mask m = 0;
  for (Element e : elements) {
    if (e >= order) throw std::out_of_range("element index out of range");
    m |= bit(e);
  }
  return {order, m};
}

std::size_t ElementSubset::size() const { return static_cast<std::size_t>(std::popcount(bits_)); }

std::vector<Element> ElementSubset::elements() const {
  std::vector<Element> out;
  out.reserve(size());
  for (Mask m = bits_; m; m &= m - 1) out.push_back(static_cast<Element>(std::countr_zero(m)));
  return out;
}

ElementSubset ElementSubset::complement() const { return {order_, full(order_).bits() & ~bits_}; }

FiniteGroup::FiniteGroup(std::size_t order, std::vector<Element> table, std::vector<std::string> names)
    : order_(order), table_(std::move(table)), names_(std::move(names)) {
  const std::size_t n = order_;
  if (n == 0 || n > kMaxOrder) throw GroupError("group order must be in 1..64");
  if (table_.size() != n * n) throw GroupError("multiplication table has wrong size");
  if (names_.size() != n) throw GroupError("name table has wrong size");

  // Latin square.
  for (std::size_t i = 0; i < n; ++i) {
    Mask row = 0, col = 0;
    for (std::size_t j = 0; j < n; ++j) {
      const Element r = table_[i * n + j], c = table_[j * n + i];
      if (r >= n || c >= n) throw GroupError("table entry out of range");
      row |= bit(r);
      col |= bit(c);
    }
    if (row != ElementSubset::full(n).bits() || col != ElementSubset::full(n).bits())
      throw GroupError("table is not a Latin square");
  }

  // Identity: the unique e with e*e = e in a Latin square that is a group.
  bool found = false;
  for (Element e = 0; e < n && !found; ++e) {
    bool ok = true;
    for (Element x = 0; x < n && ok; ++x) ok = table_[e * n + x] == x && table_[x * n + e] == x;
    if (ok) {
      identity_ = e;
      found = true;
    }
  }
  if (!found) throw GroupError("table has no two-sided identity");

  inverses_.assign(n, 0);
  for (Element x = 0; x < n; ++x) {
    bool ok = false;
    for (Element y = 0; y < n; ++y) {
      if (table_[x * n + y] == identity_) {
        if (table_[y * n + x] != identity_) throw GroupError("left and right inverses differ");
        inverses_[x] = y;
        ok = true;
        break;
      }
    }
    if (!ok) throw GroupError("element without inverse");
  }

  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      const std::size_t ab = table_[a * n + b];
      for (std::size_t c = 0; c < n; ++c)
        if (table_[ab * n + c] != table_[a * n + table_[b * n + c]])
          throw GroupError("multiplication table is not associative");
    }

  std::set<std::string> unique(names_.begin(), names_.end());
  if (unique.size() != n) throw GroupError("element names are not unique");
}

Element FiniteGroup::power(Element a, std::int64_t exponent) const {
  check(a);
  Element base = exponent < 0 ? inverses_[a] : a;
  std::uint64_t e = exponent < 0 ? static_cast<std::uint64_t>(-exponent) : static_cast<std::uint64_t>(exponent);
  Element result = identity_;
  while (e) {
    if (e & 1u) result = table_[result * order_ + base];
    base = table_[base * order_ + base];
    e >>= 1;
  }
  return result;
}

std::optional<Element> FiniteGroup::find(std::string_view name) const {
  for (Element i = 0; i < order_; ++i)
    if (names_[i] == name) return i;
  return std::nullopt;
}

bool FiniteGroup::is_abelian() const {
  for (std::size_t a = 0; a < order_; ++a)
    for (std::size_t b = a + 1; b < order_; ++b)
      if (table_[a * order_ + b] != table_[b * order_ + a]) return false;
  return true;
}

FiniteGroup FiniteGroup::renamed(std::vector<std::string> names) const {
  return FiniteGroup(order_, table_, std::move(names));
}

Element mul(const FiniteGroup& g, Element a, Element b) { return g.mul(a, b); }

std::size_t element_order(const FiniteGroup& g, Element a) {
  std::size_t t = 1;
  for (Element x = a; x != g.identity(); x = g.mul(x, a)) ++t;
  return t;
}

std::vector<std::size_t> element_order_profile(const FiniteGroup& g) {
  std::vector<std::size_t> orders;
  for (Element a = 0; a < g.order(); ++a) orders.push_back(element_order(g, a));
  std::sort(orders.begin(), orders.end());
  return orders;
}

namespace {

void require_same_order(const FiniteGroup& g, const ElementSubset& s) {
  if (s.order() != g.order()) throw GroupError("subset belongs to a group of different order");
}

}  // namespace

ElementSubset closure(const FiniteGroup& g, const ElementSubset& gens) {
  require_same_order(g, gens);
  Mask closed = bit(g.identity());
  std::vector<Element> frontier{g.identity()};
  const auto generators = gens.elements();
  // Finite group: closure under multiplication by generators already
  // contains all inverses.
  while (!frontier.empty()) {
    const Element x = frontier.back();
    frontier.pop_back();
    for (Element s : generators) {
      const Element y = g.mul(x, s);
      if (!(closed & bit(y))) {
        closed |= bit(y);
        frontier.push_back(y);
      }
    }
  }
  return {g.order(), closed};
}

bool is_subgroup(const FiniteGroup& g, const ElementSubset& s) {
  require_same_order(g, s);
  if (!s.contains(g.identity())) return false;
  const auto elems = s.elements();
  for (Element a : elems) {
    if (!s.contains(g.inverse(a))) return false;
    for (Element b : elems)
      if (!s.contains(g.mul(a, b))) return false;
  }
  return true;
}

ElementSubset conjugate_subset(const FiniteGroup& g, const ElementSubset& s, Element a) {
  require_same_order(g, s);
  const Element a_inv = g.inverse(a);
  Mask out = 0;
  for (Element x : s.elements()) out |= bit(g.mul(g.mul(a, x), a_inv));
  return {g.order(), out};
}

bool is_normal(const FiniteGroup& g, const ElementSubset& s) {
  if (!is_subgroup(g, s)) throw GroupError("is_normal: subset is not a subgroup");
  for (Element a = 0; a < g.order(); ++a)
    if (conjugate_subset(g, s, a) != s) return false;
  return true;
}

ElementSubset center(const FiniteGroup& g) {
  Mask out = 0;
  for (Element a = 0; a < g.order(); ++a) {
    bool central = true;
    for (Element b = 0; b < g.order() && central; ++b) central = g.mul(a, b) == g.mul(b, a);
    if (central) out |= bit(a);
  }
  return {g.order(), out};
}

Quotient quotient(const FiniteGroup& g, const ElementSubset& normal) {
  if (!is_normal(g, normal)) throw GroupError("quotient: subgroup is not normal");
  const std::size_t n = g.order();
  std::vector<Element> projection(n, n);
  std::vector<Element> reps;
  for (Element x = 0; x < n; ++x) {
    if (projection[x] != n) continue;
    const auto coset = static_cast<Element>(reps.size());
    reps.push_back(x);
    for (Element h : normal.elements()) projection[g.mul(x, h)] = coset;
  }
  const std::size_t m = reps.size();
  std::vector<Element> table(m * m);
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b) table[a * m + b] = projection[g.mul(reps[a], reps[b])];
  std::vector<std::string> names;
  for (Element r : reps) names.push_back("[" + g.name(r) + "]");
  return {FiniteGroup(m, std::move(table), std::move(names)), std::move(projection)};
}

Subgroup subgroup(const FiniteGroup& g, const ElementSubset& h) {
  if (!is_subgroup(g, h)) throw GroupError("subgroup: subset is not a subgroup");
  std::vector<Element> embedding = h.elements();
  std::vector<Element> local(g.order(), 0);
  for (std::size_t i = 0; i < embedding.size(); ++i) local[embedding[i]] = static_cast<Element>(i);
  const std::size_t m = embedding.size();
  std::vector<Element> table(m * m);
  std::vector<std::string> names;
  for (std::size_t a = 0; a < m; ++a) {
    names.push_back(g.name(embedding[a]));
    for (std::size_t b = 0; b < m; ++b) table[a * m + b] = local[g.mul(embedding[a], embedding[b])];
  }
  return {FiniteGroup(m, std::move(table), std::move(names)), std::move(embedding)};
}

ElementSubset derived_subgroup(const FiniteGroup& g) {
  Mask commutators = 0;
  for (Element a = 0; a < g.order(); ++a)
    for (Element b = 0; b < g.order(); ++b)
      commutators |= bit(g.mul(g.mul(a, b), g.mul(g.inverse(a), g.inverse(b))));
  return closure(g, {g.order(), commutators});
}

bool is_perfect(const FiniteGroup& g) { return derived_subgroup(g) == g.all(); }

FiniteGroup direct_product(const FiniteGroup& a, const FiniteGroup& b) {
  const std::size_t na = a.order(), nb = b.order(), n = na * nb;
  if (n > kMaxOrder) throw GroupError("direct product of order > 64");
  std::vector<Element> table(n * n);
  std::vector<std::string> names(n);
  for (Element x = 0; x < n; ++x) {
    const Element xa = x / nb, xb = x % nb;
    names[x] = "(" + a.name(xa) + "," + b.name(xb) + ")";
    for (Element y = 0; y < n; ++y)
      table[x * n + y] = a.mul(xa, y / nb) * nb + b.mul(xb, y % nb);
  }
  return FiniteGroup(n, std::move(table), std::move(names));
}

FiniteGroup semidirect_product(const FiniteGroup& normal, const FiniteGroup& acting,
                               std::span<const ActionGenerator> action) {
  const std::size_t nn = normal.order(), nh = acting.order(), n = nn * nh;
  if (n > kMaxOrder) throw GroupError("semidirect product of order > 64");

  for (const auto& gen : action) {
    if (gen.generator >= nh) throw GroupError("action generator out of range");
    if (gen.image.size() != nn) throw GroupError("action image has wrong size");
    Mask seen = 0;
    for (Element e : gen.image) {
      if (e >= nn) throw GroupError("action image out of range");
      seen |= bit(e);
    }
    if (seen != normal.all().bits()) throw GroupError("action image is not a permutation");
    for (Element x = 0; x < nn; ++x)
      for (Element y = 0; y < nn; ++y)
        if (gen.image[normal.mul(x, y)] != normal.mul(gen.image[x], gen.image[y]))
          throw GroupError("action image is not an automorphism");
  }

  // Extend to a homomorphism H -> Aut(N): act(g s) = act(g) o act(s).
  std::vector<std::vector<Element>> act(nh);
  std::vector<Element> id(nn);
  std::iota(id.begin(), id.end(), Element{0});
  act[acting.identity()] = id;
  std::vector<Element> frontier{acting.identity()};
  while (!frontier.empty()) {
    const Element g = frontier.back();
    frontier.pop_back();
    for (const auto& gen : action) {
      const Element gs = acting.mul(g, gen.generator);
      std::vector<Element> composed(nn);
      for (Element x = 0; x < nn; ++x) composed[x] = act[g][gen.image[x]];
      if (act[gs].empty()) {
        act[gs] = std::move(composed);
        frontier.push_back(gs);
      } else if (act[gs] != composed) {
        throw GroupError("action does not extend to a homomorphism");
      }
    }
  }
  for (Element g = 0; g < nh; ++g)
    if (act[g].empty()) throw GroupError("action generators do not generate the acting group");
  for (Element g = 0; g < nh; ++g)
    for (Element h = 0; h < nh; ++h)
      for (Element x = 0; x < nn; ++x)
        if (act[acting.mul(g, h)][x] != act[g][act[h][x]])
          throw GroupError("action does not extend to a homomorphism");

  std::vector<Element> table(n * n);
  std::vector<std::string> names(n);
  for (Element x = 0; x < n; ++x) {
    const Element a = x / nh, s = x % nh;
    names[x] = "(" + normal.name(a) + "," + acting.name(s) + ")";
    for (Element y = 0; y < n; ++y) {
      const Element b = y / nh, t = y % nh;
      table[x * n + y] = normal.mul(a, act[s][b]) * nh + acting.mul(s, t);
    }
  }
  return FiniteGroup(n, std::move(table), std::move(names));
}

std::vector<ElementSubset> subgroups_by_generators(const FiniteGroup& g, std::size_t max_generators) {
  std::set<Mask> found{closure(g, g.none()).bits()};
  std::vector<Mask> layer{found.begin(), found.end()};
  for (std::size_t round = 0; round < max_generators; ++round) {
    std::vector<Mask> next;
    for (Mask h : layer)
      for (Element x = 0; x < g.order(); ++x) {
        if (h & bit(x)) continue;
        const Mask c = closure(g, {g.order(), h | bit(x)}).bits();
        if (found.insert(c).second) next.push_back(c);
      }
    layer = std::move(next);
  }
  std::vector<ElementSubset> out;
  for (Mask m : found) out.emplace_back(g.order(), m);
  return out;
}

}  // namespace cayspec
