#include "cayspec/suites.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <map>
#include <mutex>
#include <numeric>
#include <random>
#include <set>
#include <stdexcept>

#include "cayspec/catalog.hpp"
#include "cayspec/repcheck.hpp"

namespace cayspec {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point since) {
  return std::chrono::duration<double, std::milli>(Clock::now() - since).count();
}

VerificationReport new_report(std::string suite, const SuiteOptions& o) {
  VerificationReport r;
  r.suite = std::move(suite);
  r.config = Json{{"threads", o.threads}, {"reduce", o.reduce}};
  return r;
}

SymmetricSubset named_subset(const FiniteGroup& g, std::string_view literal) {
  return SymmetricSubset(g, parse_subset_literal(g, literal));
}

Json spectrum_json(const Spectrum& s) {
  Json out = Json::object();
  for (auto it = s.rbegin(); it != s.rend(); ++it) out[std::to_string(it->first)] = it->second;
  return out;
}

std::vector<double> distinct_sorted(std::vector<double> v, double tol) {
  std::sort(v.begin(), v.end());
  std::vector<double> out;
  for (double x : v)
    if (out.empty() || x - out.back() > tol) out.push_back(x);
  return out;
}

// Every value is within tol of some target and every target is hit.
bool same_value_set(const std::vector<double>& values, std::vector<double> targets, double tol) {
  const auto d = distinct_sorted(values, tol);
  std::sort(targets.begin(), targets.end());
  if (d.size() != targets.size()) return false;
  for (std::size_t i = 0; i < d.size(); ++i)
    if (std::abs(d[i] - targets[i]) > tol) return false;
  return true;
}

std::vector<double> real_parts(const std::vector<Complex>& z, bool& real) {
  std::vector<double> out;
  real = true;
  for (const Complex& c : z) {
    real = real && std::abs(c.imag()) < kRepTolerance;
    out.push_back(c.real());
  }
  return out;
}

Json rounded(const std::vector<double>& v) {
  Json out = Json::array();
  for (double x : v) out.push_back(std::round(x * 1e9) / 1e9);
  return out;
}

// Exponent of G: lcm of element orders.
std::size_t exponent(const FiniteGroup& g) {
  std::size_t e = 1;
  for (Element a = 0; a < g.order(); ++a) e = std::lcm(e, element_order(g, a));
  return e;
}

// Symmetric subsets counted from the element-order profile: each involution
// is free, and so is each inverse pair.
std::uint64_t symmetric_subset_count(const FiniteGroup& g) {
  std::size_t involutions = 0, others = 0;
  for (Element a = 0; a < g.order(); ++a) {
    const std::size_t o = element_order(g, a);
    if (o == 2) ++involutions;
    if (o > 2) ++others;
  }
  return std::uint64_t{1} << (involutions + others / 2);
}

CheckRecord predicate_record(const std::string& name, const std::string& expr, const FiniteGroup& g,
                             const GroupVerdict& v, bool expected) {
  CheckRecord r;
  r.name = name;
  r.group_expr = expr;
  r.order = g.order();
  r.expected = expected;
  r.observed = v.holds;
  r.pass = v.holds == expected;
  for (const Witness& w : v.witnesses) r.witnesses.push_back(make_witness_record(g, to_string(w.kind), w.subset.subset()));
  r.stats = v.stats;
  return r;
}

// ---------------------------------------------------------------- criterion 1

void witness_eigenvalues(VerificationReport& rep) {
  const double r2 = std::sqrt(2.0), r3 = std::sqrt(3.0), r17 = std::sqrt(17.0);

  for (auto [expr, n, root] : {std::tuple{"D4", 4, r2}, std::tuple{"D6", 6, r3}}) {
    const FiniteGroup g = build(expr);
    const SymmetricSubset s = named_subset(g, "x,xy");
    const SpectrumVerdict v = verdict(CayleyGraph(g, s));
    bool real = false;
    const auto theta = rep_eigenvalues(theta_rep(g, static_cast<std::size_t>(n)), s);
    const auto theta_real = theta ? real_parts(*theta, real) : std::vector<double>{};
    CheckRecord r;
    r.name = std::string("witness ") + expr + " {x,xy}";
    r.group_expr = expr;
    r.order = g.order();
    r.expected = Json{{"integral", false}, {"evidence", rounded({-root, root})}};
    r.observed = Json{{"integral", v.is_integral()},
                      {"evidence", v.is_integral() ? Json::array() : rounded(distinct_sorted(v.certificate().float_evidence, 1e-9))},
                      {"theta", rounded(theta_real)}};
    r.pass = !v.is_integral() && same_value_set(v.certificate().float_evidence, {-root, root}, 1e-9) && real &&
             same_value_set(theta_real, {-root, root}, 1e-9);
    r.witnesses.push_back(make_witness_record(g, "nonintegral", s.subset()));
    rep.add(std::move(r));
  }

  {
    const FiniteGroup g = build("A4");
    const SymmetricSubset s = named_subset(g, "(13)(24),(14)(23),(123),(132)");
    const CayleyGraph c(g, s);
    const SpectrumVerdict v = verdict(c);
    const IntPolynomial quad{-4, 1, 1};
    const bool divides = char_poly(adjacency_matrix(c)).divide_exact(quad).has_value();
    // The permutation representation sum is an integer matrix.
    const CMatrix m = rep_sum(permutation_rep(g), s);
    IntMatrix im(static_cast<std::size_t>(m.rows()), static_cast<std::size_t>(m.cols()));
    for (Eigen::Index i = 0; i < m.rows(); ++i)
      for (Eigen::Index j = 0; j < m.cols(); ++j) im(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = static_cast<long>(std::lround(m(i, j).real()));
    const IntPolynomial rep_cp = char_poly(im);
    const IntPolynomial want = IntPolynomial{-4, 1} * IntPolynomial{1, 1} * quad;
    CheckRecord r;
    r.name = "witness A4 char poly";
    r.group_expr = "A4";
    r.order = g.order();
    r.expected = Json{{"integral", false}, {"rep_char_poly", want.to_string()}, {"adjacency_divisible_by", quad.to_string()}};
    r.observed = Json{{"integral", v.is_integral()}, {"rep_char_poly", rep_cp.to_string()}, {"adjacency_divisible_by", divides}};
    r.pass = !v.is_integral() && rep_cp == want && divides &&
             same_value_set(v.certificate().float_evidence, {(-1 - r17) / 2, (-1 + r17) / 2}, 1e-9);
    r.witnesses.push_back(make_witness_record(g, "nonintegral", s.subset()));
    rep.add(std::move(r));
  }

  struct RepWitness {
    const char* expr;
    const char* subset;
    ExplicitRep (*rep)(const FiniteGroup&);
    std::vector<double> rep_values;
    std::vector<double> evidence;
  };
  const std::vector<RepWitness> rep_witnesses{
      {"S3xZ3", "((12),1),((12),2),((13),0)", s3z3_rep, {-r3, 0, r3}, {-r3, r3}},
      {"E9", "xz,z,yz", e9_lifted_rep, {-r3, r3, 3}, {-r3, r3}},
  };
  for (const auto& w : rep_witnesses) {
    const FiniteGroup g = build(w.expr);
    const SymmetricSubset s = named_subset(g, w.subset);
    const SpectrumVerdict v = verdict(CayleyGraph(g, s));
    const ExplicitRep rho = w.rep(g);
    bool real = false;
    const auto ev = rep_eigenvalues(rho, s);
    const auto ev_real = ev ? real_parts(*ev, real) : std::vector<double>{};
    CheckRecord r;
    r.name = std::string("witness ") + w.expr + " rep eigenvalues";
    r.group_expr = w.expr;
    r.order = g.order();
    r.expected = Json{{"integral", false}, {"rep_eigenvalues", rounded(w.rep_values)}};
    r.observed = Json{{"integral", v.is_integral()}, {"rep_eigenvalues", rounded(distinct_sorted(ev_real, 1e-9))},
                      {"rep_integral", to_string(rep_integral(rho, s))}};
    r.pass = !v.is_integral() && real && same_value_set(ev_real, w.rep_values, 1e-9) &&
             same_value_set(v.certificate().float_evidence, w.evidence, 1e-6) &&
             rep_integral(rho, s) == RepIntegrality::nonintegral;
    r.witnesses.push_back(make_witness_record(g, "nonintegral", s.subset()));
    rep.add(std::move(r));
  }

  {
    const FiniteGroup g = build("Q8xZ4");
    const SymmetricSubset s = named_subset(g, "(i,1),(-i,3),(j,1),(-j,3)");
    const SpectrumVerdict v = verdict(CayleyGraph(g, s));
    const ExplicitRep rho = q8z4_rho(g);
    const CMatrix sum = rep_sum(rho, s);
    CMatrix want(2, 2);
    want << Complex(-2, 0), Complex(0, 2), Complex(0, -2), Complex(2, 0);
    bool real = false;
    const auto ev = rep_eigenvalues(rho, s);
    const auto ev_real = ev ? real_parts(*ev, real) : std::vector<double>{};
    const double e = 2 * r2;
    CheckRecord r;
    r.name = "witness Q8xZ4 rho(S)";
    r.group_expr = "Q8xZ4";
    r.order = g.order();
    r.expected = Json{{"integral", false}, {"rho_sum_matches", true}, {"rep_eigenvalues", rounded({-e, e})}};
    r.observed = Json{{"integral", v.is_integral()}, {"rho_sum_matches", (sum - want).norm() < 1e-12},
                      {"rep_eigenvalues", rounded(distinct_sorted(ev_real, 1e-9))}};
    r.pass = !v.is_integral() && (sum - want).norm() < 1e-12 && real && same_value_set(ev_real, {-e, e}, 1e-9) &&
             same_value_set(v.certificate().float_evidence, {-e, e}, 1e-6);
    r.witnesses.push_back(make_witness_record(g, "nonintegral", s.subset()));
    rep.add(std::move(r));
  }
}

// ---------------------------------------------------------------- criterion 2

const std::vector<std::string>& sporadic_groups() {
  static const std::vector<std::string> list{"S3", "Dic12", "Q8", "Q8xZ2", "Q8xZ2^2"};
  return list;
}

void sporadic_positive(VerificationReport& rep, const SuiteOptions& o) {
  for (const auto& expr : sporadic_groups()) {
    const FiniteGroup g = build(expr);
    const GroupVerdict& v = cached_search(expr, Predicate::cayley_integral, o);
    CheckRecord r = predicate_record("cayley-integral " + expr, expr, g, v, true);
    const std::uint64_t want = symmetric_subset_count(g);
    r.expected = Json{{"cayley_integral", true}, {"subsets", want}};
    r.observed = Json{{"cayley_integral", v.holds}, {"subsets", v.stats.subsets_enumerated}};
    r.pass = v.holds && v.complete && v.stats.subsets_enumerated == want;
    rep.add(std::move(r));
  }
}

// ---------------------------------------------------------------- criterion 3

const std::set<std::string>& integral_catalog() {
  static const std::set<std::string> s{"Z1", "Z2",  "Z3", "Z4",     "Z2^2", "Z6",   "S3",
                                       "Z2^3", "Z2xZ4", "Q8", "Z3^2", "Z2^2xZ3", "Dic12"};
  return s;
}

const std::vector<std::pair<std::string, bool>>& integral_spot_checks() {
  static const std::vector<std::pair<std::string, bool>> list{
      {"Z2^2xZ4", true}, {"Z2^4", true},    {"Q8xZ2", true},     {"Z3^2xZ2", true}, {"D4", false},
      {"Z8", false},     {"Z12", false},    {"A4", false},       {"D6", false},     {"SL2_3", false},
      {"Dic12xZ2", false}, {"S4", false},   {"S3xZ3", false},    {"E9", false},     {"Q8xZ4", false}};
  return list;
}

std::vector<std::string> catalog_exprs(int max_order = 12) {
  std::vector<std::string> out;
  for (int n = 1; n <= max_order; ++n)
    for (const auto& e : all_groups_of_order(n)) out.push_back(e.expr);
  return out;
}

void main_theorem(VerificationReport& rep, const SuiteOptions& o) {
  Json found = Json::array();
  std::size_t groups = 0;
  for (int n = 1; n <= 12; ++n)
    for (const auto& e : all_groups_of_order(n)) {
      ++groups;
      const GroupVerdict& v = cached_search(e.expr, Predicate::cayley_integral, o);
      rep.add(predicate_record("cayley-integral " + e.expr, e.expr, e.group, v, integral_catalog().contains(e.expr)));
      if (v.holds) found.push_back(e.expr);
    }
  CheckRecord census;
  census.name = "cayley-integral groups of order <= 12";
  census.expected = Json{{"catalog_size", 24}, {"integral", integral_catalog()}};
  std::vector<std::string> got = found.get<std::vector<std::string>>();
  std::sort(got.begin(), got.end());
  census.observed = Json{{"catalog_size", groups}, {"integral", got}};
  census.pass = groups == 24 && std::set<std::string>(got.begin(), got.end()) == integral_catalog();
  rep.add(std::move(census));

  for (const auto& [expr, expected] : integral_spot_checks()) {
    const FiniteGroup g = build(expr);
    rep.add(predicate_record("cayley-integral " + expr, expr, g, cached_search(expr, Predicate::cayley_integral, o),
                             expected));
  }
}

// ---------------------------------------------------------------- criterion 4

const std::set<std::string>& cis_expected() {
  static const std::set<std::string> s{"Z1", "Z2", "Z3", "Z4", "Z9", "Z2^2", "Z5", "Z7", "Z11", "Z25"};
  return s;
}

std::vector<std::string> cis_universe() {
  auto out = catalog_exprs();
  out.push_back("Z25");
  out.push_back("Z27");
  return out;
}

// S = Z_{p^3} \ (Y \ Z) without the identity; Y = <p>, Z = <p^2>.
SymmetricSubset prime_cube_witness(const FiniteGroup& g, std::size_t p) {
  Mask bits = 0;
  for (Element a = 1; a < g.order(); ++a) {
    const bool in_y = a % p == 0, in_z = a % (p * p) == 0;
    if (!(in_y && !in_z)) bits |= bit(a);
  }
  return SymmetricSubset(g, ElementSubset(g.order(), bits));
}

void cis_theorem(VerificationReport& rep, const SuiteOptions& o) {
  std::vector<std::string> found;
  for (const auto& expr : cis_universe()) {
    const FiniteGroup g = build(expr);
    const GroupVerdict& v = cached_search(expr, Predicate::cis, o);
    CheckRecord r = predicate_record("cis " + expr, expr, g, v, cis_expected().contains(expr));
    if (!v.holds && v.witnesses.empty()) r.pass = false;
    rep.add(std::move(r));
    if (v.holds) found.push_back(expr);
  }
  CheckRecord census;
  census.name = "cis groups among order <= 12, Z25, Z27";
  census.expected = cis_expected();
  std::sort(found.begin(), found.end());
  census.observed = found;
  census.pass = std::set<std::string>(found.begin(), found.end()) == cis_expected();
  census.detail = "Z1 counts as CIS by convention";
  rep.add(std::move(census));

  for (std::size_t p : {2, 3}) {
    const std::string expr = "Z" + std::to_string(p * p * p);
    const FiniteGroup g = build(expr);
    const SymmetricSubset s = prime_cube_witness(g, p);
    const CayleyGraph c(g, s);
    const bool integral = verdict(c).is_integral();
    const bool gen = generates(c);
    const bool multipartite = is_complete_multipartite(c);
    CheckRecord r;
    r.name = "prime-cube witness " + expr;
    r.group_expr = expr;
    r.order = g.order();
    r.expected = Json{{"integral", true}, {"generating", true}, {"complement_subgroup", false}};
    r.observed = Json{{"integral", integral}, {"generating", gen}, {"complement_subgroup", multipartite}};
    r.pass = integral && gen && !multipartite;
    r.witnesses.push_back(make_witness_record(g, "integral_noncomplement", s.subset()));
    rep.add(std::move(r));
  }
}

// --------------------------------------------------------------- criterion 10

void sd_witness(VerificationReport& rep) {
  const std::string expr = "SD(7,3,2)";
  const FiniteGroup g = build(expr);
  const Element x = *g.find("x"), y = *g.find("y");
  Mask bits = 0;
  for (std::int64_t a = 1; a < 7; ++a) bits |= bit(g.power(x, a));
  for (std::int64_t b = 1; b < 3; ++b) bits |= bit(g.power(y, b));
  const SymmetricSubset s(g, ElementSubset(g.order(), bits));
  const CayleyGraph c(g, s);
  const SpectrumVerdict v = verdict(c);
  const std::set<std::int64_t> allowed{-2, 1, 5, 8};
  bool inside = v.is_integral();
  if (inside)
    for (const auto& [lambda, m] : v.spectrum()) inside = inside && allowed.contains(lambda);
  const bool multipartite = is_complete_multipartite(c);
  CheckRecord r;
  r.name = "SD(7,3,2) powers of x and y";
  r.group_expr = expr;
  r.order = g.order();
  r.expected = Json{{"integral", true}, {"eigenvalues_within", allowed}, {"complement_subgroup", false}};
  r.observed = Json{{"integral", v.is_integral()},
                    {"spectrum", v.is_integral() ? spectrum_json(v.spectrum()) : Json::object()},
                    {"complement_subgroup", multipartite}};
  r.pass = inside && !multipartite && generates(c);
  r.witnesses.push_back(make_witness_record(g, "integral_noncomplement", s.subset()));
  rep.add(std::move(r));
}

// ---------------------------------------------------------------- criterion 5

std::vector<std::pair<std::string, Predicate>> bound_universe() {
  std::vector<std::pair<std::string, Predicate>> out;
  for (const auto& e : sporadic_groups()) out.emplace_back(e, Predicate::cayley_integral);
  for (const auto& e : catalog_exprs()) out.emplace_back(e, Predicate::cayley_integral);
  for (const auto& [e, expected] : integral_spot_checks()) out.emplace_back(e, Predicate::cayley_integral);
  for (const auto& e : cis_universe()) out.emplace_back(e, Predicate::cis);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

void divisibility_bounds(VerificationReport& rep, const SuiteOptions& o) {
  SearchStats total;
  std::size_t nontrivial_perfect = 0;
  for (const auto& [expr, p] : bound_universe()) {
    const GroupVerdict& v = cached_search(expr, p, o);
    total += v.stats;
    if (v.perfect && v.order > 1) ++nontrivial_perfect;
    CheckRecord r;
    r.name = "bound " + to_string(p) + " " + expr;
    r.group_expr = expr;
    r.order = v.order;
    r.expected = Json{{"bound_violations", 0}, {"strong_violations", 0}};
    r.observed = Json{{"applicable", v.stats.bound_applicable},
                      {"bound_violations", v.stats.bound_violations},
                      {"strong_applicable", v.stats.strong_applicable},
                      {"strong_violations", v.stats.strong_violations}};
    r.pass = v.stats.bound_violations == 0 && v.stats.strong_violations == 0;
    rep.add(std::move(r));
  }
  CheckRecord agg;
  agg.name = "bound over every integral connected graph encountered";
  agg.expected = Json{{"bound_violations", 0}, {"strong_violations", 0}};
  agg.observed = Json{{"applicable", total.bound_applicable},
                      {"bound_violations", total.bound_violations},
                      {"strong_applicable", total.strong_applicable},
                      {"strong_violations", total.strong_violations}};
  agg.pass = total.bound_applicable > 0 && total.bound_violations == 0 && total.strong_violations == 0;
  rep.add(std::move(agg));

  CheckRecord perfect;
  perfect.name = "perfect groups in the tested universe";
  perfect.expected = 0;
  perfect.observed = nontrivial_perfect;
  perfect.pass = nontrivial_perfect == 0;
  perfect.detail = "the perfect-group case of the strong bound holds vacuously";
  rep.add(std::move(perfect));
}

// ---------------------------------------------------------------- criterion 6

constexpr std::size_t kLiftInstances = 200;

std::vector<FiniteGroup> lift_pool() {
  std::vector<FiniteGroup> out;
  for (int n = 1; n <= 12; ++n)
    for (auto& e : all_groups_of_order(n)) out.push_back(std::move(e.group));
  for (const char* expr : {"Z13", "Z14", "D7", "Z15", "Z16", "Z2^4", "Z4^2", "Z2^2xZ4", "Q8xZ2", "D8", "Z2xD4", "Z2xZ8"})
    out.push_back(build(expr));
  return out;
}

// Random symmetric subset using only elements of `within`.
SymmetricSubset random_subset(const FiniteGroup& g, Mask within, std::mt19937& rng) {
  Mask bits = 0;
  std::bernoulli_distribution coin(0.5);
  for (Element a = 0; a < g.order(); ++a) {
    if (a == g.identity() || !((within >> a) & 1u)) continue;
    const Element b = g.inverse(a);
    if (b < a) continue;
    if (coin(rng)) bits |= bit(a) | bit(b);
  }
  return SymmetricSubset(g, ElementSubset(g.order(), bits));
}

Mask full_mask(std::size_t n) { return n == 64 ? ~Mask{0} : (Mask{1} << n) - 1; }

IntMatrix adjacency(const FiniteGroup& g, const SymmetricSubset& s) { return adjacency_matrix(CayleyGraph(g, s)); }

IntMatrix all_ones(std::size_t n) { return IntMatrix::ones(n); }

CheckRecord lift_record(const std::string& op, std::size_t passed, std::size_t total, const std::string& first_failure) {
  CheckRecord r;
  r.name = "lift " + op;
  r.expected = total;
  r.observed = passed;
  r.pass = passed == total;
  r.detail = first_failure.empty() ? std::to_string(total) + " random instances" : "first failure: " + first_failure;
  return r;
}

void lift_formulas(VerificationReport& rep) {
  const auto pool = lift_pool();
  std::vector<const FiniteGroup*> small;
  for (const auto& g : pool)
    if (g.order() <= 8) small.push_back(&g);
  std::mt19937 rng(20240601);
  auto pick = [&](std::size_t size) { return std::uniform_int_distribution<std::size_t>(0, size - 1)(rng); };

  {  // T = s u (G \ H)
    std::size_t ok = 0;
    std::string fail;
    for (std::size_t i = 0; i < kLiftInstances; ++i) {
      const FiniteGroup& g = pool[pick(pool.size())];
      const auto subgroups = subgroups_by_generators(g, 2);
      const ElementSubset h = subgroups[pick(subgroups.size())];
      const SymmetricSubset s = random_subset(g, h.bits(), rng);
      const SymmetricSubset t = lift_from_subgroup(g, h, s);
      const Subgroup sub = subgroup(g, h);
      Mask local = 0;
      for (Element j = 0; j < sub.group.order(); ++j)
        if (s.contains(sub.embedding[j])) local |= bit(j);
      const SymmetricSubset s_h(sub.group, ElementSubset(sub.group.order(), local));
      const std::size_t n = h.size(), k = g.order() / n;
      const IntMatrix b = kron(adjacency(sub.group, s_h), IntMatrix::identity(k)) +
                          kron(all_ones(n), all_ones(k) - IntMatrix::identity(k));
      if (char_poly(adjacency(g, t)) == char_poly(b))
        ++ok;
      else if (fail.empty())
        fail = format_subset(g, t.subset());
    }
    rep.add(lift_record("from_subgroup", ok, kLiftInstances, fail));
  }

  {  // T = union of the cosets in sbar
    std::size_t ok = 0;
    std::string fail;
    for (std::size_t i = 0; i < kLiftInstances; ++i) {
      const FiniteGroup& g = pool[pick(pool.size())];
      std::vector<ElementSubset> normals;
      for (const auto& h : subgroups_by_generators(g, 2))
        if (is_normal(g, h)) normals.push_back(h);
      const ElementSubset nsub = normals[pick(normals.size())];
      const Quotient q = quotient(g, nsub);
      const SymmetricSubset sbar = random_subset(q.group, full_mask(q.group.order()), rng);
      const SymmetricSubset t = lift_from_quotient(g, nsub, sbar);
      const IntMatrix b = kron(all_ones(nsub.size()), adjacency(q.group, sbar));
      if (char_poly(adjacency(g, t)) == char_poly(b))
        ++ok;
      else if (fail.empty())
        fail = format_subset(g, t.subset());
    }
    rep.add(lift_record("from_quotient", ok, kLiftInstances, fail));
  }

  {  // preimage under the projection a x b -> a
    std::size_t ok = 0;
    std::string fail;
    for (std::size_t i = 0; i < kLiftInstances; ++i) {
      const FiniteGroup* a = small[pick(small.size())];
      const FiniteGroup* b = small[pick(small.size())];
      if (a->order() * b->order() > 16) {
        --i;
        continue;
      }
      const FiniteGroup g = direct_product(*a, *b);
      std::vector<Element> projection(g.order());
      for (Element e = 0; e < g.order(); ++e) projection[e] = static_cast<Element>(e / b->order());
      const SymmetricSubset s = random_subset(*a, full_mask(a->order()), rng);
      const SymmetricSubset t = lift_preimage(g, projection, s);
      const IntMatrix bm = kron(adjacency(*a, s), all_ones(b->order()));
      if (char_poly(adjacency(g, t)) == char_poly(bm))
        ++ok;
      else if (fail.empty())
        fail = format_subset(g, t.subset());
    }
    rep.add(lift_record("preimage", ok, kLiftInstances, fail));
  }

  {  // (s1 x 1) u (1 x s2): Cartesian product of graphs
    std::size_t ok = 0;
    std::string fail;
    for (std::size_t i = 0; i < kLiftInstances; ++i) {
      const FiniteGroup* a = small[pick(small.size())];
      const FiniteGroup* b = small[pick(small.size())];
      if (a->order() * b->order() > 16) {
        --i;
        continue;
      }
      const FiniteGroup g = direct_product(*a, *b);
      const SymmetricSubset s1 = random_subset(*a, full_mask(a->order()), rng);
      const SymmetricSubset s2 = random_subset(*b, full_mask(b->order()), rng);
      const SymmetricSubset t = union_product_subset(*a, *b, s1, s2);
      const IntMatrix bm = kron(adjacency(*a, s1), IntMatrix::identity(b->order())) +
                           kron(IntMatrix::identity(a->order()), adjacency(*b, s2));
      if (char_poly(adjacency(g, t)) == char_poly(bm))
        ++ok;
      else if (fail.empty())
        fail = format_subset(g, t.subset());
    }
    rep.add(lift_record("union_product", ok, kLiftInstances, fail));
  }
}

// ---------------------------------------------------------------- criterion 7

void oracle_equivalence(VerificationReport& rep) {
  for (int n = 1; n <= 12; ++n)
    for (const auto& e : all_groups_of_order(n)) {
      const FiniteGroup& g = e.group;
      std::size_t subsets = 0, agree = 0;
      std::string fail;
      symmetric_subsets(g, false, [&](const SymmetricSubset& s) {
        ++subsets;
        const CayleyGraph c(g, s);
        const SpectrumVerdict by_rank = verdict(c, VerdictMethod::rank);
        const SpectrumVerdict by_poly = verdict(c, VerdictMethod::char_poly);
        const bool oracle = annihilator_product_oracle(adjacency_matrix(c), static_cast<std::int64_t>(s.size()));
        bool same = by_rank.is_integral() == oracle && by_poly.is_integral() == oracle && is_integral(c) == oracle;
        if (same && oracle) same = by_rank.spectrum() == by_poly.spectrum();
        if (same && !oracle)
          same = by_rank.certificate().integer_part == by_poly.certificate().integer_part &&
                 by_rank.certificate().integer_eigenspace_total == by_poly.certificate().integer_eigenspace_total;
        if (same)
          ++agree;
        else if (fail.empty())
          fail = format_subset(g, s.subset());
      });
      CheckRecord r;
      r.name = "oracles agree on " + e.expr;
      r.group_expr = e.expr;
      r.order = g.order();
      r.expected = subsets;
      r.observed = agree;
      r.pass = subsets == agree && subsets == symmetric_subset_count(g);
      r.detail = fail.empty() ? "rank, char poly, annihilator product, fast check" : "first disagreement: " + fail;
      rep.add(std::move(r));
    }
}

// ---------------------------------------------------------------- criterion 8

void ds_union(VerificationReport& rep, bool extras) {
  std::vector<std::string> groups{"D4", "Q8", "S3", "Dic12"};
  if (extras)
    for (const char* e : {"A4", "D6", "Z2xZ4", "Z2^2xZ3", "S3xZ3"}) groups.emplace_back(e);
  for (const auto& expr : groups) {
    const auto system = shipped_system(expr);
    CheckRecord r;
    r.name = "union property " + expr;
    r.group_expr = expr;
    if (!system) {
      r.detail = "no shipped representation system";
      rep.add(std::move(r));
      continue;
    }
    const FiniteGroup& g = system->group;
    r.order = g.order();
    std::size_t subsets = 0, unions = 0, criterion = 0;
    std::string fail;
    symmetric_subsets(g, false, [&](const SymmetricSubset& s) {
      ++subsets;
      const bool u = ds_union_check(*system, s);
      bool all_integral = true, determinate = true;
      for (const auto& rho : system->reps) {
        const RepIntegrality ri = rep_integral(rho, s);
        determinate = determinate && ri != RepIntegrality::indeterminate;
        all_integral = all_integral && ri == RepIntegrality::integral;
      }
      const bool c = determinate && all_integral == verdict(CayleyGraph(g, s)).is_integral();
      unions += u;
      criterion += c;
      if ((!u || !c) && fail.empty()) fail = format_subset(g, s.subset());
    });
    r.expected = Json{{"complete_system", true}, {"union_matches", subsets}, {"integrality_criterion", subsets}};
    r.observed = Json{{"complete_system", system->is_complete()}, {"union_matches", unions}, {"integrality_criterion", criterion}};
    r.pass = system->is_complete() && unions == subsets && criterion == subsets;
    r.detail = std::to_string(system->reps.size()) + " irreducibles" + (fail.empty() ? "" : ", first failure: " + fail);
    rep.add(std::move(r));
  }
}

// ---------------------------------------------------------------- criterion 9

void s4_transitive(VerificationReport& rep, const SuiteOptions& o) {
  const FiniteGroup s4 = build("S4");
  const auto by2 = subgroups_by_generators(s4, 2);
  const auto by3 = subgroups_by_generators(s4, 3);
  CheckRecord all;
  all.name = "subgroups of S4";
  all.group_expr = "S4";
  all.order = s4.order();
  all.expected = by3.size();
  all.observed = by2.size();
  all.pass = by2 == by3;
  all.detail = "two generators reach every subgroup found with three";
  rep.add(std::move(all));

  bool orders_ok = true, klein = false;
  std::size_t transitive = 0;
  Json integral_orders = Json::array();
  for (const ElementSubset& h : by2) {
    Mask orbit = 1;  // points reached from 0
    for (Element e : h.elements()) orbit |= Mask{1} << permutation_of(s4, e).at(0);
    if (orbit != 0xF) continue;
    ++transitive;
    const Subgroup sub = subgroup(s4, h);
    SearchOptions so;
    so.reduce = o.reduce;
    so.threads = o.threads;
    const GroupVerdict v = is_cayley_integral(sub.group, so);
    if (!v.holds) continue;
    integral_orders.push_back(h.size());
    orders_ok = orders_ok && h.size() == 4;
    bool all_involutions = true;
    for (Element e : h.elements()) all_involutions = all_involutions && (e == s4.identity() || element_order(s4, e) == 2);
    klein = klein || (h.size() == 4 && all_involutions);
  }
  CheckRecord orders;
  orders.name = "integral transitive subgroups of S4 have order 4";
  orders.group_expr = "S4";
  orders.order = s4.order();
  orders.expected = Json{{"orders", 4}, {"klein_present", true}};
  orders.observed = Json{{"orders", integral_orders}, {"klein_present", klein}, {"transitive_subgroups", transitive}};
  orders.pass = orders_ok && klein && !integral_orders.empty();
  rep.add(std::move(orders));
}

// ----------------------------------------------------------- abelian suites

std::vector<std::string> abelian_universe() {
  std::vector<std::string> out;
  for (int n = 1; n <= 12; ++n)
    for (const auto& e : all_groups_of_order(n))
      if (e.group.is_abelian()) out.push_back(e.expr);
  for (const char* e : {"Z13", "Z16", "Z2^4", "Z4^2", "Z2^2xZ4", "Z3^2xZ2", "Z25", "Z27"}) out.emplace_back(e);
  return out;
}

bool prime(std::size_t n) {
  if (n < 2) return false;
  for (std::size_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

// Z_p, Z_{p^2} or Z2^2 (Z1 by convention).
bool ab_family(const FiniteGroup& g) {
  const std::size_t n = g.order();
  if (n == 1 || prime(n)) return true;
  const std::size_t e = exponent(g);
  if (e == n) {
    for (std::size_t p = 2; p * p <= n; ++p)
      if (p * p == n && prime(p)) return true;
    return false;
  }
  return n == 4;
}

void ab_suite(VerificationReport& rep, const SuiteOptions& o) {
  for (const auto& expr : abelian_universe()) {
    const FiniteGroup g = build(expr);
    CheckRecord r = predicate_record("cis " + expr, expr, g, cached_search(expr, Predicate::cis, o), ab_family(g));
    rep.add(std::move(r));
  }
  for (std::size_t p : {2, 3}) {
    const std::string expr = "Z" + std::to_string(p * p * p);
    const FiniteGroup g = build(expr);
    const SymmetricSubset s = prime_cube_witness(g, p);
    const CayleyGraph c(g, s);
    CheckRecord r;
    r.name = "prime-cube witness " + expr;
    r.group_expr = expr;
    r.order = g.order();
    r.expected = Json{{"integral", true}, {"complement_subgroup", false}};
    r.observed = Json{{"integral", verdict(c).is_integral()}, {"complement_subgroup", is_complete_multipartite(c)}};
    r.pass = r.observed == r.expected && generates(c);
    r.witnesses.push_back(make_witness_record(g, "integral_noncomplement", s.subset()));
    rep.add(std::move(r));
  }
  const FiniteGroup cube = build("Z2^3");
  const SymmetricSubset s = named_subset(cube, "e1,e2,e3");
  const SpectrumVerdict v = verdict(CayleyGraph(cube, s));
  CheckRecord r;
  r.name = "3-cube";
  r.group_expr = "Z2^3";
  r.order = 8;
  const Spectrum want{{3, 1}, {1, 3}, {-1, 3}, {-3, 1}};
  r.expected = spectrum_json(want);
  r.observed = v.is_integral() ? spectrum_json(v.spectrum()) : Json("not integral");
  r.pass = v.is_integral() && v.spectrum() == want && !is_complete_multipartite(CayleyGraph(cube, s));
  r.witnesses.push_back(make_witness_record(cube, "integral_noncomplement", s.subset()));
  rep.add(std::move(r));
}

void ks_suite(VerificationReport& rep, const SuiteOptions& o) {
  for (const auto& expr : abelian_universe()) {
    const FiniteGroup g = build(expr);
    const std::size_t e = exponent(g);
    CheckRecord r = predicate_record("cayley-integral " + expr, expr, g,
                                     cached_search(expr, Predicate::cayley_integral, o), 4 % e == 0 || 6 % e == 0);
    r.detail = "exponent " + std::to_string(e);
    rep.add(std::move(r));
  }
}

struct SuiteEntry {
  const char* name;
  std::vector<int> criteria;
  void (*extra)(VerificationReport&, const SuiteOptions&);
};

const std::vector<SuiteEntry>& suites() {
  static const std::vector<SuiteEntry> list{
      {"ab", {}, ab_suite},
      {"ks", {}, ks_suite},
      {"main", {1, 2, 3}, nullptr},
      {"cis", {4, 10}, nullptr},
      {"bounds", {5}, nullptr},
      {"lifts", {6}, nullptr},
      {"oracles", {7}, nullptr},
      {"ds", {8}, nullptr},
      {"s4-transitive", {9}, nullptr},
  };
  return list;
}

}  // namespace

const GroupVerdict& cached_search(const std::string& group_expr, Predicate p, const SuiteOptions& opts) {
  static std::map<std::string, GroupVerdict> cache;
  static std::mutex lock;
  const std::string key = group_expr + "|" + to_string(p) + "|" + (opts.reduce ? "r" : "-");
  {
    std::lock_guard guard(lock);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
  }
  const FiniteGroup g = build(group_expr);
  SearchOptions so;
  so.reduce = opts.reduce;
  so.threads = opts.threads;
  so.force = true;
  so.group_expr = group_expr;
  GroupVerdict v = run_search(g, p, so);
  std::lock_guard guard(lock);
  return cache.emplace(key, std::move(v)).first->second;
}

std::vector<std::string> suite_names() {
  std::vector<std::string> out;
  for (const auto& s : suites()) out.emplace_back(s.name);
  return out;
}

VerificationReport criterion_report(int criterion, const SuiteOptions& opts) {
  const auto start = Clock::now();
  VerificationReport rep = new_report("criterion-" + std::to_string(criterion), opts);
  switch (criterion) {
    case 1: witness_eigenvalues(rep); break;
    case 2: sporadic_positive(rep, opts); break;
    case 3: main_theorem(rep, opts); break;
    case 4: cis_theorem(rep, opts); break;
    case 5: divisibility_bounds(rep, opts); break;
    case 6: lift_formulas(rep); break;
    case 7: oracle_equivalence(rep); break;
    case 8: ds_union(rep, true); break;
    case 9: s4_transitive(rep, opts); break;
    case 10: sd_witness(rep); break;
    default: throw std::invalid_argument("no criterion " + std::to_string(criterion));
  }
  rep.wall_time_ms = elapsed_ms(start);
  return rep;
}

VerificationReport run_suite(std::string_view name, const SuiteOptions& opts) {
  const auto it = std::find_if(suites().begin(), suites().end(), [&](const SuiteEntry& s) { return s.name == name; });
  if (it == suites().end()) throw std::invalid_argument("unknown suite: " + std::string(name));
  const auto start = Clock::now();
  VerificationReport rep = new_report(it->name, opts);
  for (int c : it->criteria) rep.append(criterion_report(c, opts));
  if (it->extra) it->extra(rep, opts);
  rep.wall_time_ms = elapsed_ms(start);
  return rep;
}

}  // namespace cayspec
