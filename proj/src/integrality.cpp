#include "cayspec/integrality.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <thread>

#include <Eigen/Eigenvalues>

namespace cayspec {

namespace {

constexpr std::uint32_t kRankPrime = 2147483647u;
constexpr double kEvidenceTolerance = 1e-6;

std::int64_t spectral_radius_bound(std::span<const std::int64_t> a, std::size_t n) {
  std::int64_t best = 0;
  for (std::size_t i = 0; i < n; ++i) {
    std::int64_t row = 0;
    for (std::size_t j = 0; j < n; ++j) row += std::llabs(a[i * n + j]);
    best = std::max(best, row);
  }
  return best;
}

std::vector<std::int64_t> shifted_entries(std::span<const std::int64_t> a, std::size_t n, std::int64_t lambda) {
  std::vector<std::int64_t> out(a.begin(), a.end());
  for (std::size_t i = 0; i < n; ++i) out[i * n + i] -= lambda;
  return out;
}

std::vector<double> non_integer(const std::vector<double>& eig) {
  std::vector<double> out;
  for (double x : eig)
    if (std::abs(x - std::round(x)) > kEvidenceTolerance) out.push_back(x);
  return out;
}

// Candidates ordered by descending float vote, then 0, 1, -1, 2, -2, ...
std::vector<std::pair<std::int64_t, std::size_t>> ordered_candidates(const std::optional<std::vector<double>>& eig,
                                                                     std::int64_t radius) {
  std::map<std::int64_t, std::size_t> votes;
  if (eig)
    for (double x : *eig) {
      const double r = std::round(x);
      if (std::abs(x - r) <= kEvidenceTolerance && std::abs(r) <= static_cast<double>(radius))
        ++votes[static_cast<std::int64_t>(r)];
    }
  std::vector<std::pair<std::int64_t, std::size_t>> out;
  for (std::int64_t step = 0; step <= radius; ++step) {
    out.emplace_back(step, votes.count(step) ? votes[step] : 0);
    if (step) out.emplace_back(-step, votes.count(-step) ? votes[-step] : 0);
  }
  std::stable_sort(out.begin(), out.end(), [](const auto& x, const auto& y) { return x.second > y.second; });
  return out;
}

SpectrumVerdict rank_verdict(std::span<const std::int64_t> a, std::size_t n, std::int64_t radius) {
  const auto eig = float_eigenvalues(a, n);
  Spectrum found;
  std::size_t total = 0;
  for (const auto& [lambda, votes] : ordered_candidates(eig, radius)) {
    const auto m = shifted_entries(a, n, lambda);
    // Unvoted candidates are usually absent; rank mod p bounds the
    // multiplicity from above and is much cheaper than the exact rank.
    if (votes == 0 && rank_mod(m, n, n, kRankPrime) == n) continue;
    const std::size_t mult = n - rank(m, n, n);
    if (mult == 0) continue;
    found[lambda] = mult;
    total += mult;
    if (total == n) return IntegralSpectrum{std::move(found)};
  }
  NonIntegralCertificate cert;
  cert.integer_eigenspace_total = total;
  cert.integer_part = std::move(found);
  if (eig) cert.float_evidence = non_integer(*eig);
  return cert;
}

SpectrumVerdict char_poly_verdict(std::span<const std::int64_t> a, std::size_t n, std::int64_t radius) {
  const IntPolynomial cp = char_poly(IntMatrix(n, n, a));
  RootSplit split = integer_root_split(cp, -radius, radius);
  if (split.remainder.is_one()) {
    std::erase_if(split.roots, [](const auto& kv) { return kv.second == 0; });
    return IntegralSpectrum{std::move(split.roots)};
  }
  NonIntegralCertificate cert;
  for (const auto& [lambda, mult] : split.roots) cert.integer_eigenspace_total += mult;
  cert.integer_part = std::move(split.roots);
  cert.remainder_degree = split.remainder.degree();
  if (const auto eig = float_eigenvalues(a, n)) cert.float_evidence = non_integer(*eig);
  return cert;
}

// m divides factor * top!
bool divides_factorial(std::size_t m, std::size_t top, std::size_t factor) {
  unsigned __int128 acc = factor % m;
  for (std::size_t i = 2; i <= top && acc != 0; ++i) acc = acc * i % m;
  return acc == 0;
}

std::uint64_t residue(std::int64_t v, std::uint64_t p) {
  const std::int64_t r = v % static_cast<std::int64_t>(p);
  return static_cast<std::uint64_t>(r < 0 ? r + static_cast<std::int64_t>(p) : r);
}

// prod (A - lambda I) over `lambda` is zero. The product commutes with right
// translations, so it vanishes iff its identity column does.
bool annihilates(const CayleyGraph& c, const std::vector<std::int64_t>& lambdas) {
  const FiniteGroup& g = c.group();
  const std::size_t n = g.order();
  const std::vector<Element> s = c.subset().elements();
  const double k = static_cast<double>(s.size());
  double log_bound = 1;
  for (std::int64_t l : lambdas) log_bound += std::log2(k + static_cast<double>(std::llabs(l)));
  double covered = 0;
  std::vector<std::uint64_t> v(n), w(n);
  for (std::size_t i = 0; covered <= log_bound; ++i) {
    const std::uint64_t p = word_prime(i);
    covered += std::log2(static_cast<double>(p));
    std::fill(v.begin(), v.end(), 0);
    v[g.identity()] = 1;
    for (std::int64_t l : lambdas) {
      const std::uint64_t shift = residue(-l, p);
      for (Element x = 0; x < n; ++x) {
        std::uint64_t acc = shift * v[x];
        for (Element t : s) acc += v[g.mul(t, x)];
        w[x] = acc % p;
      }
      std::swap(v, w);
    }
    if (std::any_of(v.begin(), v.end(), [](std::uint64_t x) { return x != 0; })) return false;
  }
  return true;
}

// Degree of what remains of the char poly mod p after removing every root in [-r, r].
std::size_t unsplit_degree_mod(std::vector<std::uint64_t> cp, std::uint64_t p, std::int64_t r) {
  for (std::int64_t l = -r; l <= r && cp.size() > 1; ++l) {
    const std::uint64_t root = residue(l, p);
    for (;;) {
      // Synthetic division by (x - root).
      std::vector<std::uint64_t> q(cp.size() - 1);
      std::uint64_t carry = 0;
      for (std::size_t d = cp.size(); d-- > 1;) {
        carry = (cp[d] + carry * root) % p;
        q[d - 1] = carry;
      }
      if ((cp[0] + carry * root) % p != 0) break;
      cp = std::move(q);
      if (cp.size() == 1) break;
    }
  }
  return cp.size() - 1;
}

}  // namespace

bool is_integral(const CayleyGraph& c) {
  const std::size_t n = c.order();
  if (c.degree() == 0) return true;
  const auto a = c.adjacency_entries();
  if (const auto eig = float_eigenvalues(a, n)) {
    std::vector<std::int64_t> lambdas;
    bool near = true;
    for (double x : *eig) {
      near = near && std::abs(x - std::round(x)) < 0.25;
      lambdas.push_back(static_cast<std::int64_t>(std::round(x)));
    }
    lambdas.erase(std::unique(lambdas.begin(), lambdas.end()), lambdas.end());
    if (near && annihilates(c, lambdas)) return true;
  }
  const auto radius = static_cast<std::int64_t>(c.degree());
  if (unsplit_degree_mod(char_poly_mod(a, n, kRankPrime), kRankPrime, radius) > 0) return false;
  return verdict(c).is_integral();
}

std::optional<std::vector<double>> float_eigenvalues(std::span<const std::int64_t> entries, std::size_t n) {
  if (entries.size() != n * n) throw DimensionError("float_eigenvalues: entry count is not n*n");
  if (n == 0) return std::vector<double>{};
  Eigen::MatrixXd m(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = static_cast<double>(entries[i * n + j]);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) return std::nullopt;
  const auto& ev = solver.eigenvalues();
  return std::vector<double>(ev.data(), ev.data() + ev.size());
}

SpectrumVerdict verdict_symmetric(std::span<const std::int64_t> entries, std::size_t n, VerdictMethod method) {
  if (entries.size() != n * n) throw DimensionError("verdict: entry count is not n*n");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (entries[i * n + j] != entries[j * n + i]) throw DimensionError("verdict: matrix is not symmetric");
  if (n == 0) return IntegralSpectrum{};
  if (std::all_of(entries.begin(), entries.end(), [](std::int64_t x) { return x == 0; }))
    return IntegralSpectrum{{{0, n}}};
  const std::int64_t radius = spectral_radius_bound(entries, n);
  return method == VerdictMethod::rank ? rank_verdict(entries, n, radius) : char_poly_verdict(entries, n, radius);
}

SpectrumVerdict verdict(const CayleyGraph& c, VerdictMethod method) {
  const auto a = c.adjacency_entries();
  return verdict_symmetric(a, c.order(), method);
}

BoundCheck divisibility_bound_check(const CayleyGraph& c, const SpectrumVerdict& v, std::optional<bool> perfect) {
  return divisibility_bound_check(c, v.is_integral(), perfect);
}

BoundCheck divisibility_bound_check(const CayleyGraph& c, bool integral, std::optional<bool> perfect) {
  BoundCheck out;
  if (!integral || !generates(c)) return out;
  out.applies = true;
  const FiniteGroup& g = c.group();
  const std::size_t n = g.order();
  const std::size_t k = c.degree();
  if (k == 0) {
    // Only the trivial group is generated by the empty set.
    out.holds = out.strong_holds = (n == 1);
  } else {
    out.holds = divides_factorial(n, 2 * k - 1, 2);
    out.strong_holds = divides_factorial(n, 2 * k - 1, 1);
  }
  bool odd = false;
  for (Element s : c.subset().elements()) odd = odd || element_order(g, s) % 2 == 1;
  out.strong = odd || (perfect ? *perfect : is_perfect(g));
  return out;
}

BoundCheck divisibility_bound_check(const CayleyGraph& c) { return divisibility_bound_check(c, verdict(c)); }

std::vector<SpectrumVerdict> spectrum_of_subset_list(const FiniteGroup& g, std::span<const SymmetricSubset> subsets,
                                                     unsigned threads) {
  std::vector<std::optional<SpectrumVerdict>> slots(subsets.size());
  std::atomic<std::size_t> next{0};
  const auto work = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < subsets.size();) slots[i] = verdict(CayleyGraph(g, subsets[i]));
  };
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(subsets.size())));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  std::vector<SpectrumVerdict> out;
  out.reserve(slots.size());
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

}  // namespace cayspec
