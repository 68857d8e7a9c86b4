#include "cayspec/catalog.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <numeric>

namespace cayspec {

GroupExpr GroupExpr::named_group(std::string name, std::vector<int> params) {
  GroupExpr e;
  e.kind = Kind::named;
  e.name = std::move(name);
  e.params = std::move(params);
  return e;
}

GroupExpr GroupExpr::product(std::vector<GroupExpr> factors) {
  if (factors.size() == 1) return std::move(factors.front());
  GroupExpr e;
  e.kind = Kind::product;
  e.children = std::move(factors);
  return e;
}

GroupExpr GroupExpr::power(GroupExpr base, int exponent) {
  GroupExpr e;
  e.kind = Kind::power;
  e.children.push_back(std::move(base));
  e.exponent = exponent;
  return e;
}

namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  GroupExpr parse() {
    std::vector<GroupExpr> factors{term()};
    while (pos_ < text_.size() && text_[pos_] == 'x') {
      ++pos_;
      factors.push_back(term());
    }
    if (pos_ != text_.size()) fail("unexpected character");
    return GroupExpr::product(std::move(factors));
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError("group expression '" + std::string(text_) + "': " + what + " at position " +
                     std::to_string(pos_));
  }

  bool consume(std::string_view token) {
    if (text_.substr(pos_).starts_with(token)) {
      pos_ += token.size();
      return true;
    }
    return false;
  }

  int integer() {
    int value = 0;
    const char* begin = text_.data() + pos_;
    const char* end = text_.data() + text_.size();
    auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc{} || ptr == begin) fail("expected an integer");
    pos_ += static_cast<std::size_t>(ptr - begin);
    return value;
  }

  GroupExpr name() {
    if (consume("Dic12")) return GroupExpr::named_group("Dic12");
    if (consume("SL2_3")) return GroupExpr::named_group("SL2_3");
    if (consume("SD(")) {
      const int p = integer();
      if (!consume(",")) fail("expected ','");
      const int q = integer();
      if (!consume(",")) fail("expected ','");
      const int r = integer();
      if (!consume(")")) fail("expected ')'");
      if (p < 1 || q < 1 || r < 0) fail("SD parameters out of range");
      return GroupExpr::named_group("SD", {p, q, r});
    }
    if (consume("Q8")) return GroupExpr::named_group("Q8");
    if (consume("A4")) return GroupExpr::named_group("A4");
    if (consume("E9")) return GroupExpr::named_group("E9");
    if (consume("S")) {
      const int n = integer();
      if (n < 1 || n > 4) fail("symmetric group degree must be in 1..4");
      return GroupExpr::named_group("S", {n});
    }
    if (consume("Z")) {
      const int n = integer();
      if (n < 1 || n > 64) fail("cyclic group order must be in 1..64");
      return GroupExpr::named_group("Z", {n});
    }
    if (consume("D")) {
      const int n = integer();
      if (n < 1 || n > 32) fail("dihedral parameter must be in 1..32");
      return GroupExpr::named_group("D", {n});
    }
    fail("unknown group name");
  }

  GroupExpr term() {
    GroupExpr base = name();
    if (consume("^")) {
      const int k = integer();
      if (k < 1) fail("exponent must be positive");
      if (k == 1) return base;
      return GroupExpr::power(std::move(base), k);
    }
    return base;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

struct Generator {
  const char* letter;
  std::size_t exponent;
};

std::string word(std::initializer_list<Generator> gens) {
  std::string out;
  for (const auto& g : gens) {
    if (g.exponent == 0) continue;
    out += g.letter;
    if (g.exponent > 1) out += std::to_string(g.exponent);
  }
  return out.empty() ? "1" : out;
}

std::string cycle_notation(const std::vector<int>& perm) {
  std::string out;
  std::vector<bool> seen(perm.size(), false);
  for (std::size_t i = 0; i < perm.size(); ++i) {
    if (seen[i] || perm[i] == static_cast<int>(i)) continue;
    out += '(';
    for (std::size_t j = i; !seen[j]; j = static_cast<std::size_t>(perm[j])) {
      seen[j] = true;
      out += static_cast<char>('1' + j);
    }
    out += ')';
  }
  return out.empty() ? "id" : out;
}

FiniteGroup permutation_group(std::vector<std::vector<int>> perms) {
  const std::size_t n = perms.size();
  std::vector<Element> table(n * n);
  std::vector<std::string> names;
  for (std::size_t a = 0; a < n; ++a) {
    names.push_back(cycle_notation(perms[a]));
    for (std::size_t b = 0; b < n; ++b) {
      // (ab)(i) = a(b(i))
      std::vector<int> c(perms[a].size());
      for (std::size_t i = 0; i < c.size(); ++i) c[i] = perms[a][static_cast<std::size_t>(perms[b][i])];
      const auto it = std::find(perms.begin(), perms.end(), c);
      if (it == perms.end()) throw GroupError("permutation set is not closed");
      table[a * n + b] = static_cast<Element>(it - perms.begin());
    }
  }
  return FiniteGroup(n, std::move(table), std::move(names));
}

bool is_even(const std::vector<int>& perm) {
  std::size_t inversions = 0;
  for (std::size_t i = 0; i < perm.size(); ++i)
    for (std::size_t j = i + 1; j < perm.size(); ++j)
      if (perm[i] > perm[j]) ++inversions;
  return inversions % 2 == 0;
}

std::vector<std::vector<int>> all_permutations(std::size_t n) {
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  std::vector<std::vector<int>> out;
  do out.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  return out;
}

/// Flattened direct product with names "(a,b,c)".
FiniteGroup tuple_product(const std::vector<FiniteGroup>& factors) {
  FiniteGroup acc = factors.front();
  for (std::size_t i = 1; i < factors.size(); ++i) acc = direct_product(acc, factors[i]);
  std::vector<std::string> names(acc.order());
  for (Element x = 0; x < acc.order(); ++x) {
    std::vector<std::string> parts(factors.size());
    Element rest = x;
    for (std::size_t i = factors.size(); i-- > 0;) {
      parts[i] = factors[i].name(rest % factors[i].order());
      rest /= static_cast<Element>(factors[i].order());
    }
    std::string name = "(";
    for (std::size_t i = 0; i < parts.size(); ++i) name += (i ? "," : "") + parts[i];
    names[x] = name + ")";
  }
  return acc.renamed(std::move(names));
}

FiniteGroup build_named(const GroupExpr& e) {
  const auto param = [&](std::size_t i) { return static_cast<std::size_t>(e.params.at(i)); };
  if (e.name == "Z") return cyclic_group(param(0));
  if (e.name == "D") return dihedral_group(param(0));
  if (e.name == "Q8") return quaternion_group();
  if (e.name == "Dic12") return dicyclic12();
  if (e.name == "S") return symmetric_group(param(0));
  if (e.name == "A4") return alternating_group4();
  if (e.name == "E9") return e9_group();
  if (e.name == "SL2_3") return sl2_3();
  if (e.name == "SD") return semidirect_cyclic(param(0), param(1), param(2));
  throw GroupError("unknown group name '" + e.name + "'");
}

void collect_factors(const GroupExpr& e, std::vector<FiniteGroup>& out) {
  switch (e.kind) {
    case GroupExpr::Kind::named:
      out.push_back(build_named(e));
      return;
    case GroupExpr::Kind::product:
      for (const auto& c : e.children) collect_factors(c, out);
      return;
    case GroupExpr::Kind::power: {
      const GroupExpr& base = e.children.at(0);
      if (base.kind == GroupExpr::Kind::named && base.name == "Z") {
        out.push_back(elementary_power(static_cast<std::size_t>(base.params.at(0)),
                                       static_cast<std::size_t>(e.exponent)));
        return;
      }
      for (int i = 0; i < e.exponent; ++i) collect_factors(base, out);
      return;
    }
  }
}

std::size_t expr_order(const GroupExpr& e) {
  switch (e.kind) {
    case GroupExpr::Kind::named: {
      const auto param = [&](std::size_t i) { return static_cast<std::size_t>(e.params.at(i)); };
      if (e.name == "Z") return param(0);
      if (e.name == "D") return 2 * param(0);
      if (e.name == "S") {
        std::size_t f = 1;
        for (std::size_t i = 2; i <= param(0); ++i) f *= i;
        return f;
      }
      if (e.name == "SD") return param(0) * param(1);
      if (e.name == "Q8") return 8;
      if (e.name == "Dic12" || e.name == "A4") return 12;
      if (e.name == "E9") return 18;
      if (e.name == "SL2_3") return 24;
      throw GroupError("unknown group name '" + e.name + "'");
    }
    case GroupExpr::Kind::product: {
      std::size_t n = 1;
      for (const auto& c : e.children) {
        n *= expr_order(c);
        if (n > kMaxOrder) return n;
      }
      return n;
    }
    case GroupExpr::Kind::power: {
      std::size_t n = 1;
      const std::size_t b = expr_order(e.children.at(0));
      for (int i = 0; i < e.exponent && n <= kMaxOrder; ++i) n *= b;
      return n;
    }
  }
  return 0;
}

}  // namespace

GroupExpr parse_group_expr(std::string_view text) { return Parser(trim(text)).parse(); }

std::string to_string(const GroupExpr& e) {
  switch (e.kind) {
    case GroupExpr::Kind::named:
      if (e.name == "SD")
        return "SD(" + std::to_string(e.params.at(0)) + "," + std::to_string(e.params.at(1)) + "," +
               std::to_string(e.params.at(2)) + ")";
      return e.params.empty() ? e.name : e.name + std::to_string(e.params.front());
    case GroupExpr::Kind::power:
      return to_string(e.children.at(0)) + "^" + std::to_string(e.exponent);
    case GroupExpr::Kind::product: {
      std::string out;
      for (std::size_t i = 0; i < e.children.size(); ++i) out += (i ? "x" : "") + to_string(e.children[i]);
      return out;
    }
  }
  return {};
}

FiniteGroup build(const GroupExpr& expr) {
  if (expr_order(expr) > kMaxOrder) throw GroupError("group order exceeds 64");
  std::vector<FiniteGroup> factors;
  collect_factors(expr, factors);
  if (factors.size() == 1) return std::move(factors.front());
  return tuple_product(factors);
}

FiniteGroup build(std::string_view text) { return build(parse_group_expr(text)); }

FiniteGroup cyclic_group(std::size_t n) {
  if (n == 0 || n > kMaxOrder) throw GroupError("cyclic group order must be in 1..64");
  std::vector<Element> table(n * n);
  std::vector<std::string> names;
  for (std::size_t a = 0; a < n; ++a) {
    names.push_back(std::to_string(a));
    for (std::size_t b = 0; b < n; ++b) table[a * n + b] = static_cast<Element>((a + b) % n);
  }
  return FiniteGroup(n, std::move(table), std::move(names));
}

FiniteGroup elementary_power(std::size_t m, std::size_t k) {
  if (k == 0) return cyclic_group(1);
  std::vector<FiniteGroup> factors(k, cyclic_group(m));
  FiniteGroup acc = factors.front();
  for (std::size_t i = 1; i < k; ++i) acc = direct_product(acc, factors[i]);
  if (k == 1) return acc;
  std::vector<std::string> names(acc.order());
  for (Element x = 0; x < acc.order(); ++x) {
    std::vector<std::size_t> digits(k);
    Element rest = x;
    for (std::size_t i = k; i-- > 0;) {
      digits[i] = rest % m;
      rest /= static_cast<Element>(m);
    }
    std::string name;
    for (std::size_t i = 0; i < k; ++i) {
      if (digits[i] == 0) continue;
      if (!name.empty()) name += '+';
      if (digits[i] > 1) name += std::to_string(digits[i]);
      name += "e" + std::to_string(i + 1);
    }
    names[x] = name.empty() ? "0" : name;
  }
  return acc.renamed(std::move(names));
}

FiniteGroup dihedral_group(std::size_t n) {
  if (n == 0 || 2 * n > kMaxOrder) throw GroupError("dihedral group order must be in 2..64");
  // Element a*n + b is x^a y^b; x^a y^b x^c y^d = x^(a+c) y^((-1)^c b + d).
  const std::size_t order = 2 * n;
  std::vector<Element> table(order * order);
  std::vector<std::string> names;
  for (std::size_t u = 0; u < order; ++u) {
    const std::size_t a = u / n, b = u % n;
    names.push_back(word({{"x", a}, {"y", b}}));
    for (std::size_t v = 0; v < order; ++v) {
      const std::size_t c = v / n, d = v % n;
      const std::size_t yb = c ? (n - b) % n : b;
      table[u * order + v] = static_cast<Element>(((a + c) % 2) * n + (yb + d) % n);
    }
  }
  return FiniteGroup(order, std::move(table), std::move(names));
}

FiniteGroup quaternion_group() {
  // Units 1,i,j,k as 0..3; unit_mul[u][v] = {sign, unit}.
  static constexpr std::array<std::array<std::pair<int, int>, 4>, 4> unit_mul{{
      {{{1, 0}, {1, 1}, {1, 2}, {1, 3}}},
      {{{1, 1}, {-1, 0}, {1, 3}, {-1, 2}}},
      {{{1, 2}, {-1, 3}, {-1, 0}, {1, 1}}},
      {{{1, 3}, {1, 2}, {-1, 1}, {-1, 0}}},
  }};
  static const std::array<std::string, 4> unit_names{"1", "i", "j", "k"};
  std::vector<Element> table(64);
  std::vector<std::string> names;
  for (int u = 0; u < 8; ++u) {
    const int su = u % 2 ? -1 : 1, uu = u / 2;
    names.push_back((su < 0 ? "-" : "") + unit_names[static_cast<std::size_t>(uu)]);
    for (int v = 0; v < 8; ++v) {
      const int sv = v % 2 ? -1 : 1, vv = v / 2;
      const auto [s, w] = unit_mul[static_cast<std::size_t>(uu)][static_cast<std::size_t>(vv)];
      const int sign = su * sv * s;
      table[static_cast<std::size_t>(u * 8 + v)] = static_cast<Element>(2 * w + (sign < 0 ? 1 : 0));
    }
  }
  return FiniteGroup(8, std::move(table), std::move(names));
}

FiniteGroup dicyclic12() { return semidirect_cyclic(3, 4, 2); }

FiniteGroup symmetric_group(std::size_t n) {
  if (n == 0 || n > 4) throw GroupError("symmetric group degree must be in 1..4");
  return permutation_group(all_permutations(n));
}

FiniteGroup alternating_group4() {
  auto perms = all_permutations(4);
  std::erase_if(perms, [](const auto& p) { return !is_even(p); });
  return permutation_group(std::move(perms));
}

FiniteGroup e9_group() {
  const FiniteGroup z3 = cyclic_group(3);
  const FiniteGroup base = direct_product(z3, z3);  // index 3a + b is x^a y^b
  std::vector<Element> invert(base.order());
  for (Element e = 0; e < base.order(); ++e) invert[e] = base.inverse(e);
  const ActionGenerator act{1, invert};
  const FiniteGroup g = semidirect_product(base, cyclic_group(2), std::span(&act, 1));
  std::vector<std::string> names(g.order());
  for (Element e = 0; e < g.order(); ++e) {
    const std::size_t n = e / 2, c = e % 2;
    names[e] = word({{"x", n / 3}, {"y", n % 3}, {"z", c}});
  }
  return g.renamed(std::move(names));
}

FiniteGroup sl2_3() {
  using Mat = std::array<int, 4>;  // a b / c d over F3
  std::vector<Mat> mats{{1, 0, 0, 1}};
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      for (int c = 0; c < 3; ++c)
        for (int d = 0; d < 3; ++d) {
          const Mat m{a, b, c, d};
          if (((a * d - b * c) % 3 + 3) % 3 == 1 && m != mats.front()) mats.push_back(m);
        }
  const std::size_t n = mats.size();
  std::vector<Element> table(n * n);
  std::vector<std::string> names;
  for (std::size_t u = 0; u < n; ++u) {
    const Mat& x = mats[u];
    names.push_back("[" + std::to_string(x[0]) + std::to_string(x[1]) + ";" + std::to_string(x[2]) +
                    std::to_string(x[3]) + "]");
    for (std::size_t v = 0; v < n; ++v) {
      const Mat& y = mats[v];
      const Mat p{(x[0] * y[0] + x[1] * y[2]) % 3, (x[0] * y[1] + x[1] * y[3]) % 3,
                  (x[2] * y[0] + x[3] * y[2]) % 3, (x[2] * y[1] + x[3] * y[3]) % 3};
      table[u * n + v] = static_cast<Element>(std::find(mats.begin(), mats.end(), p) - mats.begin());
    }
  }
  return FiniteGroup(n, std::move(table), std::move(names));
}

FiniteGroup semidirect_cyclic(std::size_t p, std::size_t q, std::size_t r) {
  if (p == 0 || q == 0 || p * q > kMaxOrder) throw GroupError("SD: order must be in 1..64");
  std::size_t rq = 1 % p;
  for (std::size_t i = 0; i < q; ++i) rq = rq * r % p;
  if (rq != 1 % p) throw GroupError("SD: need r^q = 1 (mod p)");
  std::vector<Element> image(p);
  for (std::size_t b = 0; b < p; ++b) image[b] = static_cast<Element>(b * r % p);
  const ActionGenerator act{q > 1 ? Element{1} : Element{0}, image};
  const FiniteGroup g = semidirect_product(cyclic_group(p), cyclic_group(q), std::span(&act, 1));
  std::vector<std::string> names(g.order());
  for (Element e = 0; e < g.order(); ++e) names[e] = word({{"x", e / q}, {"y", e % q}});
  return g.renamed(std::move(names));
}

std::vector<int> permutation_of(const FiniteGroup& g, Element e) {
  int degree = 1;
  for (const auto& name : g.names())
    for (char c : name)
      if (std::isdigit(static_cast<unsigned char>(c))) degree = std::max(degree, c - '0');
  std::vector<int> perm(static_cast<std::size_t>(degree));
  std::iota(perm.begin(), perm.end(), 0);
  const std::string& name = g.name(e);
  if (name == "id") return perm;
  std::vector<int> cycle;
  for (char c : name) {
    if (c == '(') {
      cycle.clear();
    } else if (c == ')') {
      for (std::size_t i = 0; i < cycle.size(); ++i)
        perm[static_cast<std::size_t>(cycle[i])] = cycle[(i + 1) % cycle.size()];
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      cycle.push_back(c - '1');
    } else {
      throw GroupError("element '" + name + "' is not a permutation");
    }
  }
  return perm;
}

std::vector<CatalogEntry> all_groups_of_order(int n) {
  static const std::vector<std::vector<std::string>> exprs{
      {"Z1"},
      {"Z2"},
      {"Z3"},
      {"Z4", "Z2^2"},
      {"Z5"},
      {"Z6", "S3"},
      {"Z7"},
      {"Z8", "Z2xZ4", "Z2^3", "D4", "Q8"},
      {"Z9", "Z3^2"},
      {"Z10", "D5"},
      {"Z11"},
      {"Z12", "Z2^2xZ3", "A4", "D6", "Dic12"},
  };
  if (n < 1 || n > 12) throw GroupError("complete catalog covers orders 1..12 only");
  std::vector<CatalogEntry> out;
  for (const auto& e : exprs[static_cast<std::size_t>(n - 1)]) out.push_back({e, build(e)});
  return out;
}

}  // namespace cayspec
