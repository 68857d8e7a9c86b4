#include "cayspec/repcheck.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numbers>

#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/KroneckerProduct>

#include "cayspec/catalog.hpp"
#include "cayspec/integrality.hpp"

namespace cayspec {

namespace {

const Complex kI{0.0, 1.0};

Complex root_of_unity(std::size_t n, std::int64_t k) {
  const double angle = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n);
  return std::polar(1.0, angle);
}

CMatrix scalar(Complex c) {
  CMatrix m(1, 1);
  m(0, 0) = c;
  return m;
}

CMatrix mat2(Complex a, Complex b, Complex c, Complex d) {
  CMatrix m(2, 2);
  m << a, b, c, d;
  return m;
}

bool gaussian_integer(Complex z) {
  return z.real() == std::round(z.real()) && z.imag() == std::round(z.imag());
}

bool all_gaussian(const std::vector<CMatrix>& images) {
  for (const auto& m : images)
    for (Eigen::Index i = 0; i < m.size(); ++i)
      if (!gaussian_integer(m.data()[i])) return false;
  return true;
}

Element element(const FiniteGroup& g, std::string_view name) {
  const auto e = g.find(name);
  if (!e) throw RepError("group has no element named '" + std::string(name) + "'");
  return *e;
}

// Permutation matrix with P(s) e_i = e_{s(i)}, so P(ab) = P(a) P(b) for (ab)(i) = a(b(i)).
CMatrix permutation_matrix(const std::vector<int>& perm) {
  const auto n = static_cast<Eigen::Index>(perm.size());
  CMatrix m = CMatrix::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) m(perm[static_cast<std::size_t>(i)], i) = 1.0;
  return m;
}

// Orthonormal basis of the sum-zero subspace of C^n, as columns.
Eigen::MatrixXd sum_zero_basis(std::size_t n) {
  const auto dim = static_cast<Eigen::Index>(n);
  Eigen::MatrixXd q(dim, dim - 1);
  for (Eigen::Index j = 0; j + 1 < dim; ++j) {
    Eigen::VectorXd v = Eigen::VectorXd::Zero(dim);
    v(j) = 1.0;
    v(j + 1) = -1.0;
    for (Eigen::Index k = 0; k < j; ++k) v -= q.col(k).dot(v) * q.col(k);
    q.col(j) = v.normalized();
  }
  return q;
}

std::vector<int> padded_permutation(const FiniteGroup& g, Element e, std::size_t points) {
  auto perm = permutation_of(g, e);
  for (std::size_t i = perm.size(); i < points; ++i) perm.push_back(static_cast<int>(i));
  return perm;
}

ExplicitRep standard_rep(const FiniteGroup& g, std::size_t points, std::string label) {
  const Eigen::MatrixXcd q = sum_zero_basis(points).cast<Complex>();
  ExplicitRep r;
  r.label = std::move(label);
  r.degree = points - 1;
  for (Element e = 0; e < g.order(); ++e)
    r.images.push_back(q.adjoint() * permutation_matrix(padded_permutation(g, e, points)) * q);
  r.exact = all_gaussian(r.images);
  if (!is_homomorphism(g, r)) throw RepError(r.label + " is not a homomorphism");
  return r;
}

void collect_named(const GroupExpr& e, std::vector<GroupExpr>& out) {
  switch (e.kind) {
    case GroupExpr::Kind::named:
      out.push_back(e);
      return;
    case GroupExpr::Kind::product:
      for (const auto& c : e.children) collect_named(c, out);
      return;
    case GroupExpr::Kind::power:
      for (int i = 0; i < e.exponent; ++i) collect_named(e.children.at(0), out);
      return;
  }
}

std::optional<RepSystem> named_system(const GroupExpr& e) {
  if (e.name == "Z") return cyclic_system(static_cast<std::size_t>(e.params.at(0)));
  if (e.name == "D") return dihedral_system(static_cast<std::size_t>(e.params.at(0)));
  if (e.name == "Q8") return quaternion_system();
  if (e.name == "S" && e.params.at(0) == 3) return s3_system();
  if (e.name == "Dic12") return dic12_system();
  if (e.name == "A4") return a4_system();
  return std::nullopt;
}

}  // namespace

ExplicitRep rep_from_generators(const FiniteGroup& g, std::string label,
                                const std::vector<std::pair<Element, CMatrix>>& generators) {
  if (generators.empty() && g.order() > 1) throw RepError(label + ": no generators given");
  const Eigen::Index d = generators.empty() ? 1 : generators.front().second.rows();
  for (const auto& [gen, m] : generators)
    if (m.rows() != d || m.cols() != d) throw RepError(label + ": generator images differ in size");
  std::vector<std::optional<CMatrix>> images(g.order());
  images[g.identity()] = CMatrix::Identity(d, d);
  std::deque<Element> queue{g.identity()};
  while (!queue.empty()) {
    const Element e = queue.front();
    queue.pop_front();
    for (const auto& [gen, m] : generators) {
      const Element next = g.mul(e, gen);
      if (images[next]) continue;
      images[next] = *images[e] * m;
      queue.push_back(next);
    }
  }
  ExplicitRep r;
  r.label = std::move(label);
  r.degree = static_cast<std::size_t>(d);
  for (auto& m : images) {
    if (!m) throw RepError(r.label + ": generators do not generate the group");
    r.images.push_back(std::move(*m));
  }
  r.exact = all_gaussian(r.images);
  if (!is_homomorphism(g, r)) throw RepError(r.label + ": generator images violate a group relation");
  return r;
}

ExplicitRep rep_from_generators(const FiniteGroup& g, std::string label,
                                const std::vector<std::pair<std::string, CMatrix>>& generators) {
  std::vector<std::pair<Element, CMatrix>> by_index;
  for (const auto& [name, m] : generators) by_index.emplace_back(element(g, name), m);
  return rep_from_generators(g, std::move(label), by_index);
}

bool is_homomorphism(const FiniteGroup& g, const ExplicitRep& r, double tol) {
  if (r.images.size() != g.order()) return false;
  for (Element a = 0; a < g.order(); ++a)
    for (Element b = 0; b < g.order(); ++b)
      if ((r.images[a] * r.images[b] - r.images[g.mul(a, b)]).cwiseAbs().maxCoeff() > tol) return false;
  return true;
}

ExplicitRep pullback(const ExplicitRep& r, const std::vector<Element>& projection, std::string label) {
  ExplicitRep out;
  out.label = std::move(label);
  out.degree = r.degree;
  for (Element image : projection) out.images.push_back(r.images.at(image));
  out.exact = r.exact;
  return out;
}

ExplicitRep tensor(const ExplicitRep& a, const ExplicitRep& b) {
  ExplicitRep out;
  out.label = a.label + "(x)" + b.label;
  out.degree = a.degree * b.degree;
  for (const auto& ma : a.images)
    for (const auto& mb : b.images) out.images.push_back(Eigen::kroneckerProduct(ma, mb).eval());
  out.exact = a.exact && b.exact;
  return out;
}

CMatrix rep_sum(const ExplicitRep& r, const SymmetricSubset& s) {
  const auto d = static_cast<Eigen::Index>(r.degree);
  CMatrix sum = CMatrix::Zero(d, d);
  for (Element e : s.elements()) sum += r.images.at(e);
  return sum;
}

std::optional<std::vector<Complex>> rep_eigenvalues(const ExplicitRep& r, const SymmetricSubset& s) {
  const CMatrix m = rep_sum(r, s);
  std::vector<Complex> out;
  if ((m - m.adjoint()).cwiseAbs().maxCoeff() <= kRepTolerance) {
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(m, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) return std::nullopt;
    for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) out.emplace_back(solver.eigenvalues()(i), 0.0);
    return out;
  }
  Eigen::ComplexEigenSolver<CMatrix> solver(m, false);
  if (solver.info() != Eigen::Success) return std::nullopt;
  for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) out.push_back(solver.eigenvalues()(i));
  return out;
}

std::string to_string(RepIntegrality r) {
  switch (r) {
    case RepIntegrality::integral:
      return "integral";
    case RepIntegrality::nonintegral:
      return "nonintegral";
    case RepIntegrality::indeterminate:
      return "indeterminate";
  }
  return "?";
}

RepIntegrality rep_integral(const ExplicitRep& r, const SymmetricSubset& s, double tol) {
  const auto eig = rep_eigenvalues(r, s);
  if (!eig) return RepIntegrality::indeterminate;
  for (const auto& z : *eig)
    if (std::abs(z.imag()) > tol || std::abs(z.real() - std::round(z.real())) > tol) return RepIntegrality::nonintegral;
  return RepIntegrality::integral;
}

std::size_t RepSystem::degree_square_sum() const {
  std::size_t sum = 0;
  for (const auto& r : reps) sum += r.degree * r.degree;
  return sum;
}

bool ds_union_check(const RepSystem& rs, const SymmetricSubset& s) {
  if (!rs.is_complete())
    throw RepError(rs.label + ": sum of squared degrees " + std::to_string(rs.degree_square_sum()) +
                   " differs from |G| = " + std::to_string(rs.group.order()));
  std::vector<double> union_values;
  for (const auto& r : rs.reps) {
    const auto eig = rep_eigenvalues(r, s);
    if (!eig) return false;
    for (const auto& z : *eig) {
      if (std::abs(z.imag()) > 1e-6) return false;
      for (std::size_t t = 0; t < r.degree; ++t) union_values.push_back(z.real());
    }
  }
  std::sort(union_values.begin(), union_values.end());

  const CayleyGraph c(rs.group, s);
  const SpectrumVerdict v = verdict(c);
  if (v.is_integral()) {
    Spectrum from_reps;
    for (double x : union_values) {
      const double rounded = std::round(x);
      if (std::abs(x - rounded) > 1e-6) return false;
      ++from_reps[static_cast<std::int64_t>(rounded)];
    }
    return from_reps == v.spectrum();
  }
  const auto adjacency = c.adjacency_entries();
  const auto exact_floats = float_eigenvalues(adjacency, c.order());
  if (!exact_floats || exact_floats->size() != union_values.size()) return false;
  for (std::size_t i = 0; i < union_values.size(); ++i)
    if (std::abs(union_values[i] - (*exact_floats)[i]) > 1e-6) return false;
  // The integer part of the certificate must agree as well.
  std::size_t integer_values = 0;
  for (double x : union_values)
    if (std::abs(x - std::round(x)) <= 1e-6) ++integer_values;
  return integer_values == v.certificate().integer_eigenspace_total;
}

RepSystem cyclic_system(std::size_t n) {
  RepSystem rs{"Z" + std::to_string(n), cyclic_group(n), {}};
  for (std::size_t m = 0; m < n; ++m) {
    ExplicitRep r;
    r.label = "chi" + std::to_string(m);
    r.degree = 1;
    for (std::size_t a = 0; a < n; ++a) r.images.push_back(scalar(root_of_unity(n, static_cast<std::int64_t>(m * a))));
    r.exact = all_gaussian(r.images);
    rs.reps.push_back(std::move(r));
  }
  return rs;
}

RepSystem dihedral_system(std::size_t n) {
  RepSystem rs{"D" + std::to_string(n), dihedral_group(n), {}};
  const FiniteGroup& g = rs.group;
  const std::vector<double> y_signs = n % 2 == 0 ? std::vector<double>{1.0, -1.0} : std::vector<double>{1.0};
  for (double sx : {1.0, -1.0})
    for (double sy : y_signs) {
      const std::string label = std::string("lin") + (sx > 0 ? "+" : "-") + (sy > 0 ? "+" : "-");
      if (n == 1)
        rs.reps.push_back(rep_from_generators(g, label, std::vector<std::pair<std::string, CMatrix>>{{"x", scalar(sx)}}));
      else
        rs.reps.push_back(rep_from_generators(
            g, label, std::vector<std::pair<std::string, CMatrix>>{{"x", scalar(sx)}, {"y", scalar(sy)}}));
    }
  for (std::size_t h = 1; 2 * h < n; ++h) {
    ExplicitRep r = rep_from_generators(
        g, "theta" + std::to_string(h),
        std::vector<std::pair<std::string, CMatrix>>{
            {"x", mat2(0, 1, 1, 0)},
            {"y", mat2(root_of_unity(n, static_cast<std::int64_t>(h)), 0, 0,
                       root_of_unity(n, -static_cast<std::int64_t>(h)))}});
    rs.reps.push_back(std::move(r));
  }
  return rs;
}

RepSystem quaternion_system() {
  RepSystem rs{"Q8", quaternion_group(), {}};
  for (double si : {1.0, -1.0})
    for (double sj : {1.0, -1.0})
      rs.reps.push_back(rep_from_generators(rs.group,
                                            std::string("lin") + (si > 0 ? "+" : "-") + (sj > 0 ? "+" : "-"),
                                            std::vector<std::pair<std::string, CMatrix>>{{"i", scalar(si)},
                                                                                         {"j", scalar(sj)}}));
  rs.reps.push_back(pi_rep(rs.group));
  return rs;
}

RepSystem s3_system() {
  RepSystem rs{"S3", symmetric_group(3), {}};
  const FiniteGroup& g = rs.group;
  rs.reps.push_back(rep_from_generators(
      g, "trivial", std::vector<std::pair<std::string, CMatrix>>{{"(12)", scalar(1)}, {"(123)", scalar(1)}}));
  rs.reps.push_back(rep_from_generators(
      g, "sign", std::vector<std::pair<std::string, CMatrix>>{{"(12)", scalar(-1)}, {"(123)", scalar(1)}}));
  rs.reps.push_back(standard_rep(g, 3, "standard"));
  return rs;
}

RepSystem dic12_system() {
  RepSystem rs{"Dic12", dicyclic12(), {}};
  const FiniteGroup& g = rs.group;
  using Gens = std::vector<std::pair<std::string, CMatrix>>;
  for (std::int64_t m = 0; m < 4; ++m)
    rs.reps.push_back(rep_from_generators(g, "lin" + std::to_string(m),
                                          Gens{{"x", scalar(1)}, {"y", scalar(root_of_unity(4, m))}}));
  const CMatrix x = mat2(root_of_unity(3, 1), 0, 0, root_of_unity(3, -1));
  // y^2 -> I: factors through Dic12 / <y^2> = S3.
  rs.reps.push_back(rep_from_generators(g, "s3-lift", Gens{{"x", x}, {"y", mat2(0, 1, 1, 0)}}));
  // y^2 -> -I.
  rs.reps.push_back(rep_from_generators(g, "faithful", Gens{{"x", x}, {"y", mat2(0, -1, 1, 0)}}));
  return rs;
}

RepSystem a4_system() {
  RepSystem rs{"A4", alternating_group4(), {}};
  const FiniteGroup& g = rs.group;
  using Gens = std::vector<std::pair<std::string, CMatrix>>;
  // Linear characters factor through A4 / V4 = Z3.
  for (std::int64_t m = 0; m < 3; ++m)
    rs.reps.push_back(rep_from_generators(g, "lin" + std::to_string(m),
                                          Gens{{"(123)", scalar(root_of_unity(3, m))}, {"(12)(34)", scalar(1)}}));
  rs.reps.push_back(standard_rep(g, 4, "standard"));
  return rs;
}

RepSystem product_system(const RepSystem& a, const RepSystem& b) {
  RepSystem rs{a.label + "x" + b.label, direct_product(a.group, b.group), {}};
  for (const auto& ra : a.reps)
    for (const auto& rb : b.reps) rs.reps.push_back(tensor(ra, rb));
  return rs;
}

std::optional<RepSystem> shipped_system(std::string_view group_expr) {
  const GroupExpr expr = parse_group_expr(group_expr);
  std::vector<GroupExpr> factors;
  collect_named(expr, factors);
  std::optional<RepSystem> acc;
  for (const auto& f : factors) {
    auto sys = named_system(f);
    if (!sys) return std::nullopt;
    acc = acc ? product_system(*acc, *sys) : std::move(*sys);
  }
  FiniteGroup g = build(expr);
  if (!std::equal(g.table().begin(), g.table().end(), acc->group.table().begin(), acc->group.table().end()))
    throw RepError("shipped system for " + std::string(group_expr) + " does not match the catalog indexing");
  acc->group = std::move(g);
  acc->label = std::string(group_expr);
  return acc;
}

ExplicitRep theta_rep(const FiniteGroup& dihedral, std::size_t n) {
  return rep_from_generators(
      dihedral, "theta",
      std::vector<std::pair<std::string, CMatrix>>{
          {"x", mat2(0, 1, 1, 0)}, {"y", mat2(root_of_unity(n, 1), 0, 0, root_of_unity(n, -1))}});
}

ExplicitRep pi_rep(const FiniteGroup& q8) {
  return rep_from_generators(
      q8, "pi", std::vector<std::pair<std::string, CMatrix>>{{"i", mat2(kI, 0, 0, -kI)}, {"j", mat2(0, 1, -1, 0)}});
}

ExplicitRep q8z4_rho(const FiniteGroup& q8xz4) {
  return rep_from_generators(q8xz4, "rho",
                             std::vector<std::pair<std::string, CMatrix>>{{"(i,0)", mat2(kI, 0, 0, -kI)},
                                                                          {"(j,0)", mat2(0, 1, -1, 0)},
                                                                          {"(1,1)", mat2(kI, 0, 0, kI)}});
}

ExplicitRep permutation_rep(const FiniteGroup& perm_group) {
  std::size_t points = 0;
  for (Element e = 0; e < perm_group.order(); ++e) points = std::max(points, permutation_of(perm_group, e).size());
  ExplicitRep r;
  r.label = "P";
  r.degree = points;
  for (Element e = 0; e < perm_group.order(); ++e)
    r.images.push_back(permutation_matrix(padded_permutation(perm_group, e, points)));
  r.exact = true;
  if (!is_homomorphism(perm_group, r)) throw RepError("permutation representation is not a homomorphism");
  return r;
}

ExplicitRep s3z3_rep(const FiniteGroup& s3xz3) {
  const FiniteGroup s3 = symmetric_group(3);
  const CMatrix p12 = permutation_matrix(padded_permutation(s3, element(s3, "(12)"), 3));
  const CMatrix p123 = permutation_matrix(padded_permutation(s3, element(s3, "(123)"), 3));
  return rep_from_generators(s3xz3, "omega^j P",
                             std::vector<std::pair<std::string, CMatrix>>{
                                 {"((12),0)", p12},
                                 {"((123),0)", p123},
                                 {"(id,1)", root_of_unity(3, 1) * CMatrix::Identity(3, 3)}});
}

ExplicitRep e9_lifted_rep(const FiniteGroup& e9) {
  const FiniteGroup s3 = symmetric_group(3);
  const CMatrix p12 = permutation_matrix(padded_permutation(s3, element(s3, "(12)"), 3));
  const CMatrix p123 = permutation_matrix(padded_permutation(s3, element(s3, "(123)"), 3));
  return rep_from_generators(e9, "P lifted",
                             std::vector<std::pair<std::string, CMatrix>>{
                                 {"x", CMatrix::Identity(3, 3)}, {"y", p123}, {"z", p12}});
}

}  // namespace cayspec
