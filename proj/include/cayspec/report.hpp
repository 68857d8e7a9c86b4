#pragma once

// Verification reports and their canonical JSON form.

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "cayspec/search.hpp"

namespace cayspec {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;
inline constexpr const char* kToolName = "cayley-spectra";
inline constexpr const char* kToolVersion = "0.1.0";

struct WitnessRecord {
  std::string kind;
  std::vector<std::string> elements;
  std::string mask;
};

WitnessRecord make_witness_record(const FiniteGroup& g, const std::string& kind, const ElementSubset& s);

/// One expectation: a group predicate, a formula check or a count.
struct CheckRecord {
  std::string name;
  std::string group_expr;  // empty when the check is not about one group
  std::size_t order = 0;
  Json expected;
  Json observed;
  bool pass = false;
  std::vector<WitnessRecord> witnesses;
  std::optional<SearchStats> stats;
  std::string detail;
};

struct VerificationReport {
  std::string suite;
  Json config = Json::object();
  std::vector<CheckRecord> records;
  double wall_time_ms = 0;

  bool pass() const;
  void add(CheckRecord r) { records.push_back(std::move(r)); }
  void append(const VerificationReport& other);
};

Json to_json(const SearchStats& s);
Json to_json(const CheckRecord& r);
Json to_json(const VerificationReport& r);
Json to_json(const GroupVerdict& v, const FiniteGroup& g);
Json to_json(const SpectrumVerdict& v);

/// Human-readable summary, one line per record plus a verdict line.
std::string summary(const VerificationReport& r);

}  // namespace cayspec
