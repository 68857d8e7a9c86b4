#pragma once

// Exhaustive enumeration of symmetric subsets and per-group predicates.
//
// Symmetric subsets are unions of cells ({g} for involutions, {g, g^-1}
// otherwise). Cells are sorted by their smallest element and a subset is
// addressed by a binary counter whose bit i selects cell i. All witness
// choices are "smallest counter", which makes results independent of the
// thread count and of conjugacy reduction.

#include <chrono>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "cayspec/integrality.hpp"

namespace cayspec {

class SubsetFamily {
 public:
  explicit SubsetFamily(const FiniteGroup& g);

  const std::vector<Mask>& cells() const { return cells_; }
  std::size_t cell_count() const { return cells_.size(); }
  /// 2^cell_count.
  std::uint64_t count() const { return std::uint64_t{1} << cells_.size(); }

  int cell_of(Element e) const { return cell_of_.at(e); }

  Mask bits(std::uint64_t counter) const;
  /// Inverse of bits(); throws SubsetError for sets that are not unions of cells.
  std::uint64_t counter(Mask bits) const;

 private:
  std::vector<Mask> cells_;
  std::vector<int> cell_of_;  // element -> cell index (-1 for the identity)
};

/// Orbit representatives under inner automorphisms: a counter is canonical iff
/// it is the smallest in its conjugation orbit.
class ConjugacyReducer {
 public:
  ConjugacyReducer(const FiniteGroup& g, const SubsetFamily& family);
  bool is_canonical(std::uint64_t counter) const;
  /// Distinct inner automorphisms, identity included.
  std::size_t automorphism_count() const { return cell_maps_.size() + 1; }

 private:
  std::vector<std::vector<std::uint8_t>> cell_maps_;  // non-identity automorphisms, as cell permutations
};

/// Calls `visit` for every symmetric subset (or one per conjugacy orbit), in
/// counter order.
void symmetric_subsets(const FiniteGroup& g, bool reduce_conjugacy,
                       const std::function<void(const SymmetricSubset&)>& visit);
std::vector<SymmetricSubset> list_symmetric_subsets(const FiniteGroup& g, bool reduce_conjugacy);

enum class Predicate { cayley_integral, cis };
std::string to_string(Predicate p);

enum class WitnessKind {
  nonintegral,             // Cay(G,S) is not integral
  integral_noncomplement,  // integral and generating, complement not a subgroup
  complement_nonintegral,  // generating, complement a subgroup, not integral
};
std::string to_string(WitnessKind k);

struct Witness {
  WitnessKind kind;
  SymmetricSubset subset;
  std::uint64_t counter;
};

struct SearchStats {
  std::uint64_t subsets_enumerated = 0;  // counters scanned
  std::uint64_t reduced_count = 0;       // orbit representatives kept
  std::uint64_t generating = 0;          // representatives that generate G
  std::uint64_t verdicts = 0;            // exact verdicts computed
  std::uint64_t integral = 0;
  // Divisibility bound on integral connected graphs.
  std::uint64_t bound_applicable = 0;
  std::uint64_t bound_violations = 0;
  std::uint64_t strong_applicable = 0;
  std::uint64_t strong_violations = 0;
  double wall_time_ms = 0;

  SearchStats& operator+=(const SearchStats& o);
};

struct GroupVerdict {
  std::string group_expr;
  std::size_t order = 0;
  Predicate predicate = Predicate::cayley_integral;
  bool holds = false;
  bool complete = false;  // every counter scanned (false after an early witness)
  bool perfect = false;
  std::vector<Witness> witnesses;
  SearchStats stats;
};

class CapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr std::size_t kExhaustiveCap = 32;

struct SearchOptions {
  bool reduce = true;
  unsigned threads = 1;
  bool force = false;            // allow |G| > kExhaustiveCap
  bool generating_only = false;  // cayley_integral: restrict to generating subsets
  bool stop_at_first = true;
  std::string group_expr;              // echoed in results and checkpoints
  std::optional<std::string> checkpoint;  // JSON progress file
  std::uint64_t block = 1024;
};

GroupVerdict run_search(const FiniteGroup& g, Predicate p, const SearchOptions& opts = {});
GroupVerdict is_cayley_integral(const FiniteGroup& g, const SearchOptions& opts = {});
GroupVerdict is_cis(const FiniteGroup& g, const SearchOptions& opts = {});

/// Smallest-counter witness of the given kind. `complement_nonintegral` is
/// accepted as well.
std::optional<SymmetricSubset> find_witness(const FiniteGroup& g, WitnessKind kind, const SearchOptions& opts = {});

}  // namespace cayspec
