#include "cayspec/report.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

namespace cayspec {

WitnessRecord make_witness_record(const FiniteGroup& g, const std::string& kind, const ElementSubset& s) {
  WitnessRecord w{kind, {}, hex_mask(s.bits())};
  for (Element e : s.elements()) w.elements.push_back(g.name(e));
  return w;
}

bool VerificationReport::pass() const {
  return std::all_of(records.begin(), records.end(), [](const CheckRecord& r) { return r.pass; });
}

void VerificationReport::append(const VerificationReport& other) {
  records.insert(records.end(), other.records.begin(), other.records.end());
  wall_time_ms += other.wall_time_ms;
}

Json to_json(const SearchStats& s) {
  return Json{{"subsets_enumerated", s.subsets_enumerated},
              {"reduced_count", s.reduced_count},
              {"generating", s.generating},
              {"verdicts", s.verdicts},
              {"integral", s.integral},
              {"bound_applicable", s.bound_applicable},
              {"bound_violations", s.bound_violations},
              {"strong_applicable", s.strong_applicable},
              {"strong_violations", s.strong_violations},
              {"wall_time_ms", s.wall_time_ms}};
}

namespace {

Json witness_json(const WitnessRecord& w) {
  return Json{{"kind", w.kind}, {"elements", w.elements}, {"mask", w.mask}};
}

}  // namespace

Json to_json(const CheckRecord& r) {
  Json j{{"name", r.name}, {"group_expr", r.group_expr}, {"order", r.order},
         {"expected", r.expected}, {"observed", r.observed}, {"pass", r.pass}};
  Json ws = Json::array();
  for (const auto& w : r.witnesses) ws.push_back(witness_json(w));
  j["witnesses"] = std::move(ws);
  if (r.stats) {
    j["subsets_enumerated"] = r.stats->subsets_enumerated;
    j["reduced_count"] = r.stats->reduced_count;
    j["wall_time_ms"] = r.stats->wall_time_ms;
  }
  if (!r.detail.empty()) j["detail"] = r.detail;
  return j;
}

Json to_json(const VerificationReport& r) {
  Json records = Json::array();
  for (const auto& c : r.records) records.push_back(to_json(c));
  return Json{{"schema", kSchemaVersion},
              {"tool", kToolName},
              {"version", kToolVersion},
              {"suite", r.suite},
              {"config", r.config},
              {"pass", r.pass()},
              {"wall_time_ms", r.wall_time_ms},
              {"records", std::move(records)}};
}

Json to_json(const GroupVerdict& v, const FiniteGroup& g) {
  Json ws = Json::array();
  for (const auto& w : v.witnesses) ws.push_back(witness_json(make_witness_record(g, to_string(w.kind), w.subset.subset())));
  return Json{{"schema", kSchemaVersion},
              {"group_expr", v.group_expr},
              {"order", v.order},
              {"predicate", to_string(v.predicate)},
              {"holds", v.holds},
              {"complete", v.complete},
              {"witnesses", std::move(ws)},
              {"stats", to_json(v.stats)}};
}

Json to_json(const SpectrumVerdict& v) {
  if (v.is_integral()) {
    Json spec = Json::array();
    for (auto it = v.spectrum().rbegin(); it != v.spectrum().rend(); ++it)
      spec.push_back(Json{{"eigenvalue", it->first}, {"multiplicity", it->second}});
    return Json{{"integral", true}, {"spectrum", std::move(spec)}};
  }
  const auto& c = v.certificate();
  Json part = Json::array();
  for (auto it = c.integer_part.rbegin(); it != c.integer_part.rend(); ++it)
    part.push_back(Json{{"eigenvalue", it->first}, {"multiplicity", it->second}});
  Json j{{"integral", false},
         {"integer_eigenspace_total", c.integer_eigenspace_total},
         {"integer_part", std::move(part)}};
  if (c.remainder_degree) j["remainder_degree"] = *c.remainder_degree;
  j["float_evidence"] = c.float_evidence;
  return j;
}

std::string summary(const VerificationReport& r) {
  std::ostringstream out;
  std::size_t passed = 0;
  for (const auto& c : r.records) {
    if (c.pass) ++passed;
    out << (c.pass ? "  ok    " : "  FAIL  ") << c.name;
    if (!c.group_expr.empty() && c.name.find(c.group_expr) == std::string::npos) out << " [" << c.group_expr << "]";
    out << ": observed " << c.observed.dump();
    if (!c.pass) out << ", expected " << c.expected.dump();
    if (!c.witnesses.empty()) {
      out << ", witness {";
      for (std::size_t i = 0; i < c.witnesses.front().elements.size(); ++i)
        out << (i ? "," : "") << c.witnesses.front().elements[i];
      out << "}";
    }
    if (!c.detail.empty()) out << " (" << c.detail << ")";
    out << '\n';
  }
  char time[32];
  std::snprintf(time, sizeof time, "%.1f", r.wall_time_ms / 1000.0);
  out << "suite " << r.suite << ": " << passed << "/" << r.records.size() << " checks passed, "
      << (r.pass() ? "PASS" : "FAIL") << " in " << time << " s\n";
  return out.str();
}

}  // namespace cayspec
