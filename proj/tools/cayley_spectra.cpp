// cayley-spectra: command-line front end.

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <string>
#include <thread>

#include <CLI11.hpp>

#include "cayspec/catalog.hpp"
#include "cayspec/report.hpp"
#include "cayspec/suites.hpp"

namespace {

using namespace cayspec;

enum Exit { kOk = 0, kMismatch = 1, kParse = 2, kAsymmetric = 3, kCap = 4 };

unsigned default_threads() {
  if (const char* env = std::getenv("CAYLEY_SPECTRA_THREADS")) {
    char* end = nullptr;
    const unsigned long v = std::strtoul(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<unsigned>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

void emit_json(const std::string& path, const Json& j) {
  if (path.empty()) return;
  if (path == "-") {
    std::cout << j.dump(2) << '\n';
    return;
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << j.dump(2) << '\n';
}

std::string spectrum_text(const Spectrum& s) {
  std::string out = "{";
  bool first = true;
  for (auto it = s.rbegin(); it != s.rend(); ++it) {
    out += (first ? "" : ", ") + std::to_string(it->first) + ":" + std::to_string(it->second);
    first = false;
  }
  return out + "}";
}

int cmd_spectrum(const std::string& expr, const std::string& literal, const std::string& method, const std::string& json) {
  const FiniteGroup g = build(expr);
  const SymmetricSubset s(g, parse_subset_literal(g, literal));
  const SpectrumVerdict v = verdict(CayleyGraph(g, s), method == "char-poly" ? VerdictMethod::char_poly : VerdictMethod::rank);
  std::cout << "Cay(" << expr << ", " << format_subset(g, s.subset()) << ")\n";
  if (v.is_integral()) {
    std::cout << "integral " << spectrum_text(v.spectrum()) << '\n';
  } else {
    const auto& c = v.certificate();
    std::cout << "not integral: integer eigenspaces cover " << c.integer_eigenspace_total << " of " << g.order();
    if (!c.integer_part.empty()) std::cout << ", integer part " << spectrum_text(c.integer_part);
    if (c.remainder_degree) std::cout << ", irreducible remainder of degree " << *c.remainder_degree;
    std::cout << '\n';
    if (!c.float_evidence.empty()) {
      std::cout << "evidence:";
      for (double x : c.float_evidence) std::cout << ' ' << std::setprecision(12) << x;
      std::cout << '\n';
    }
  }
  Json j{{"schema", kSchemaVersion},
         {"group_expr", expr},
         {"order", g.order()},
         {"subset", make_witness_record(g, "subset", s.subset()).elements},
         {"mask", hex_mask(s.bits())}};
  j["verdict"] = to_json(v);
  emit_json(json, j);
  return kOk;
}

struct SearchFlags {
  unsigned threads = 0;
  bool force = false;
  bool no_reduce = false;
  bool generating_only = false;
  bool all_witnesses = false;
  std::string checkpoint;
  std::string json;
};

int cmd_check(const std::string& expr, const std::string& predicate, const SearchFlags& f) {
  Predicate p;
  if (predicate == "cayley-integral")
    p = Predicate::cayley_integral;
  else if (predicate == "cis")
    p = Predicate::cis;
  else
    throw ParseError("unknown predicate '" + predicate + "' (expected cayley-integral or cis)");
  const FiniteGroup g = build(expr);
  SearchOptions o;
  o.threads = f.threads ? f.threads : default_threads();
  o.force = f.force;
  o.reduce = !f.no_reduce;
  o.generating_only = f.generating_only;
  o.stop_at_first = !f.all_witnesses;
  o.group_expr = expr;
  if (!f.checkpoint.empty()) o.checkpoint = f.checkpoint;
  const GroupVerdict v = run_search(g, p, o);
  std::cout << expr << " (order " << g.order() << ") " << to_string(p) << ": " << (v.holds ? "true" : "false") << '\n';
  for (const Witness& w : v.witnesses)
    std::cout << "  witness " << to_string(w.kind) << ' ' << format_subset(g, w.subset.subset()) << ' '
              << hex_mask(w.subset.bits()) << '\n';
  std::cout << "  " << v.stats.subsets_enumerated << " subsets scanned, " << v.stats.reduced_count
            << " orbit representatives, " << v.stats.verdicts << " verdicts, " << std::fixed << std::setprecision(1)
            << v.stats.wall_time_ms << " ms\n";
  emit_json(f.json, to_json(v, g));
  return kOk;
}

int cmd_verify(const std::string& suite, unsigned threads, bool no_reduce, const std::string& json) {
  SuiteOptions o;
  o.threads = threads ? threads : default_threads();
  o.reduce = !no_reduce;
  const VerificationReport r = run_suite(suite, o);
  std::cout << summary(r);
  emit_json(json, to_json(r));
  return r.pass() ? kOk : kMismatch;
}

int cmd_catalog_list(int order, const std::string& json) {
  Json j = Json::array();
  for (int n = 1; n <= 12; ++n) {
    if (order && n != order) continue;
    for (const auto& e : all_groups_of_order(n)) {
      std::cout << std::setw(3) << n << "  " << e.expr << '\n';
      j.push_back(Json{{"expr", e.expr}, {"order", n}});
    }
  }
  emit_json(json, Json{{"schema", kSchemaVersion}, {"groups", j}});
  return kOk;
}

int cmd_catalog_show(const std::string& expr, const std::string& json) {
  const FiniteGroup g = build(expr);
  const std::size_t n = g.order();
  std::size_t width = 1;
  for (const auto& name : g.names()) width = std::max(width, name.size());
  std::cout << expr << ", order " << n << (g.is_abelian() ? ", abelian" : "") << '\n';
  std::cout << std::setw(static_cast<int>(width)) << "*" << " |";
  for (Element b = 0; b < n; ++b) std::cout << ' ' << std::setw(static_cast<int>(width)) << g.name(b);
  std::cout << '\n' << std::string(width + 2 + n * (width + 1), '-') << '\n';
  Json table = Json::array();
  for (Element a = 0; a < n; ++a) {
    std::cout << std::setw(static_cast<int>(width)) << g.name(a) << " |";
    Json row = Json::array();
    for (Element b = 0; b < n; ++b) {
      std::cout << ' ' << std::setw(static_cast<int>(width)) << g.name(g.mul(a, b));
      row.push_back(g.mul(a, b));
    }
    std::cout << '\n';
    table.push_back(std::move(row));
  }
  emit_json(json, Json{{"schema", kSchemaVersion}, {"group_expr", expr}, {"order", n}, {"names", g.names()}, {"table", table}});
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact spectra of Cayley graphs of small groups"};
  app.set_version_flag("--version", std::string(kToolVersion));
  app.require_subcommand(1);

  std::string json;
  std::string expr, literal, method = "rank";
  auto* spectrum = app.add_subcommand("spectrum", "Exact spectrum of Cay(G, S)");
  spectrum->add_option("group", expr, "group expression, e.g. Q8xZ2")->required();
  spectrum->add_option("subset", literal, "element names separated by commas, or a hex mask")->required();
  spectrum->add_option("--method", method, "rank or char-poly")->check(CLI::IsMember({"rank", "char-poly"}));
  spectrum->add_option("--json", json, "write JSON to PATH ('-' for stdout)");

  SearchFlags flags;
  std::string predicate;
  auto* check = app.add_subcommand("check", "Exhaustive verdict for a group predicate");
  check->add_option("group", expr, "group expression")->required();
  check->add_option("predicate", predicate, "cayley-integral or cis")->required();
  check->add_option("--threads", flags.threads, "worker threads");
  check->add_flag("--force", flags.force, "allow groups above the exhaustive cap");
  check->add_flag("--no-reduce", flags.no_reduce, "disable conjugacy reduction");
  check->add_flag("--generating-only", flags.generating_only, "cayley-integral over generating subsets only");
  check->add_flag("--all-witnesses", flags.all_witnesses, "scan everything instead of stopping at the first witness");
  check->add_option("--checkpoint", flags.checkpoint, "resumable progress file");
  check->add_option("--json", flags.json, "write JSON to PATH ('-' for stdout)");

  std::string suite;
  unsigned verify_threads = 0;
  bool verify_no_reduce = false;
  auto* verify = app.add_subcommand("verify", "Run a verification suite");
  verify->add_option("suite", suite, "suite name")->required()->check(CLI::IsMember(suite_names()));
  verify->add_option("--threads", verify_threads, "worker threads");
  verify->add_flag("--no-reduce", verify_no_reduce, "disable conjugacy reduction");
  verify->add_option("--json", json, "write the report to PATH ('-' for stdout)");

  int order = 0;
  auto* catalog = app.add_subcommand("catalog", "Group catalog");
  catalog->require_subcommand(1);
  auto* list = catalog->add_subcommand("list", "Groups of order <= 12");
  list->add_option("--order", order, "only this order")->check(CLI::Range(1, 12));
  list->add_option("--json", json, "write JSON to PATH ('-' for stdout)");
  auto* show = catalog->add_subcommand("show", "Multiplication table");
  show->add_option("group", expr, "group expression")->required();
  show->add_option("--json", json, "write JSON to PATH ('-' for stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kParse;
  }

  try {
    if (*spectrum) return cmd_spectrum(expr, literal, method, json);
    if (*check) return cmd_check(expr, predicate, flags);
    if (*verify) return cmd_verify(suite, verify_threads, verify_no_reduce, json);
    if (*list) return cmd_catalog_list(order, json);
    if (*show) return cmd_catalog_show(expr, json);
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return kParse;
  } catch (const GroupError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return kParse;
  } catch (const SubsetError& e) {
    std::cerr << "invalid subset: " << e.what() << '\n';
    return kAsymmetric;
  } catch (const CapExceeded& e) {
    std::cerr << e.what() << " (use --force)\n";
    return kCap;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kMismatch;
  }
  return kOk;
}
