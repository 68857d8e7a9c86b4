#include "cayspec/search.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <exception>
#include <filesystem>
#include <fstream>
#include <limits>
#include <mutex>
#include <set>
#include <thread>

#include <json.hpp>

namespace cayspec {

namespace {

using Clock = std::chrono::steady_clock;
using Json = nlohmann::ordered_json;

constexpr std::uint64_t kNone = std::numeric_limits<std::uint64_t>::max();

double elapsed_ms(Clock::time_point since) {
  return std::chrono::duration<double, std::milli>(Clock::now() - since).count();
}

// Connectivity of Cay(G,S) by BFS from the identity.
bool generates_bits(const FiniteGroup& g, Mask s) {
  const std::size_t n = g.order();
  const Mask all = n == 64 ? ~Mask{0} : (Mask{1} << n) - 1;
  Mask seen = bit(g.identity());
  Mask frontier = seen;
  while (frontier) {
    Mask next = 0;
    for (Mask f = frontier; f; f &= f - 1) {
      const auto v = static_cast<Element>(std::countr_zero(f));
      for (Mask t = s; t; t &= t - 1) next |= bit(g.mul(static_cast<Element>(std::countr_zero(t)), v));
    }
    frontier = next & ~seen;
    seen |= next;
  }
  return seen == all;
}

Json stats_to_json(const SearchStats& s) {
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

SearchStats stats_from_json(const Json& j) {
  SearchStats s;
  s.subsets_enumerated = j.at("subsets_enumerated").get<std::uint64_t>();
  s.reduced_count = j.at("reduced_count").get<std::uint64_t>();
  s.generating = j.at("generating").get<std::uint64_t>();
  s.verdicts = j.at("verdicts").get<std::uint64_t>();
  s.integral = j.at("integral").get<std::uint64_t>();
  s.bound_applicable = j.at("bound_applicable").get<std::uint64_t>();
  s.bound_violations = j.at("bound_violations").get<std::uint64_t>();
  s.strong_applicable = j.at("strong_applicable").get<std::uint64_t>();
  s.strong_violations = j.at("strong_violations").get<std::uint64_t>();
  s.wall_time_ms = j.at("wall_time_ms").get<double>();
  return s;
}

WitnessKind kind_from_string(const std::string& s) {
  for (auto k : {WitnessKind::nonintegral, WitnessKind::integral_noncomplement, WitnessKind::complement_nonintegral})
    if (to_string(k) == s) return k;
  throw std::runtime_error("unknown witness kind '" + s + "'");
}

struct Checkpoint {
  std::uint64_t next_counter = 0;
  SearchStats stats;
  std::vector<std::pair<WitnessKind, std::uint64_t>> witnesses;
};

class CheckpointFile {
 public:
  CheckpointFile(std::string path, const FiniteGroup& g, Predicate p, const SearchOptions& opts,
                 const SubsetFamily& family)
      : path_(std::move(path)) {
    header_ = Json{{"schema", 1},
                   {"group_expr", opts.group_expr},
                   {"order", g.order()},
                   {"predicate", to_string(p)},
                   {"reduce", opts.reduce},
                   {"generating_only", opts.generating_only}};
    Json cells = Json::array();
    for (Mask c : family.cells()) cells.push_back(hex_mask(c));
    header_["cell_order"] = std::move(cells);
  }

  std::optional<Checkpoint> load() const {
    std::ifstream in(path_);
    if (!in) return std::nullopt;
    Json j;
    try {
      j = Json::parse(in);
    } catch (const Json::exception& e) {
      throw std::runtime_error("checkpoint " + path_ + " is not valid JSON: " + e.what());
    }
    for (const auto& [key, value] : header_.items())
      if (!j.contains(key) || j.at(key) != value)
        throw std::runtime_error("checkpoint " + path_ + " belongs to a different search (field '" + key + "')");
    Checkpoint c;
    c.next_counter = j.at("next_counter").get<std::uint64_t>();
    c.stats = stats_from_json(j.at("partial_stats"));
    for (const auto& w : j.at("witnesses"))
      c.witnesses.emplace_back(kind_from_string(w.at("kind").get<std::string>()), w.at("counter").get<std::uint64_t>());
    return c;
  }

  void save(const Checkpoint& c) const {
    Json j = header_;
    j["next_counter"] = c.next_counter;
    j["partial_stats"] = stats_to_json(c.stats);
    Json ws = Json::array();
    for (const auto& [kind, counter] : c.witnesses) ws.push_back(Json{{"kind", to_string(kind)}, {"counter", counter}});
    j["witnesses"] = std::move(ws);
    const std::string tmp = path_ + ".tmp";
    {
      std::ofstream out(tmp, std::ios::trunc);
      if (!out) throw std::runtime_error("cannot write checkpoint " + tmp);
      out << j.dump(2) << '\n';
    }
    std::filesystem::rename(tmp, path_);
  }

 private:
  std::string path_;
  Json header_;
};

struct ChunkResult {
  std::uint64_t start = 0;
  SearchStats stats;
  std::uint64_t witness = kNone;
  WitnessKind kind = WitnessKind::nonintegral;
  // Smallest counter of each kind seen in this chunk (for stop_at_first = false).
  std::uint64_t first_of_kind[3] = {kNone, kNone, kNone};
};

class Searcher {
 public:
  Searcher(const FiniteGroup& g, Predicate p, const SearchOptions& opts, std::optional<WitnessKind> only)
      : g_(g), p_(p), opts_(opts), only_(only), family_(g), reducer_(g, family_), perfect_(is_perfect(g)) {}

  GroupVerdict run() {
    if (g_.order() > kExhaustiveCap && !opts_.force)
      throw CapExceeded("group order " + std::to_string(g_.order()) + " exceeds the exhaustive cap of " +
                        std::to_string(kExhaustiveCap) + "; pass --force to override");
    if (family_.cell_count() > 40) throw CapExceeded("too many subset cells for exhaustive search");

    const auto t0 = Clock::now();
    Checkpoint state;
    std::optional<CheckpointFile> file;
    if (opts_.checkpoint) {
      file.emplace(*opts_.checkpoint, g_, p_, opts_, family_);
      if (auto loaded = file->load()) state = std::move(*loaded);
    }
    const double prior_ms = state.stats.wall_time_ms;
    const std::uint64_t total = family_.count();
    const unsigned threads = std::max(1u, opts_.threads);
    const std::uint64_t block = std::max<std::uint64_t>(1, opts_.block);
    auto last_save = Clock::now();

    const auto done = [&] { return opts_.stop_at_first && !state.witnesses.empty(); };
    while (state.next_counter < total && !done()) {
      const std::uint64_t begin = state.next_counter;
      const std::uint64_t end = std::min(total, begin + block * threads * 4);
      const auto chunks = run_window(begin, end, block, threads);
      merge(chunks, state);
      state.next_counter = end;
      if (done()) {
        state.next_counter = state.witnesses.front().second + 1;
      }
      if (file && (done() || state.next_counter == total || Clock::now() - last_save > std::chrono::seconds(2))) {
        Checkpoint snapshot = state;
        snapshot.stats.wall_time_ms = prior_ms + elapsed_ms(t0);
        file->save(snapshot);
        last_save = Clock::now();
      }
    }

    GroupVerdict out;
    out.group_expr = opts_.group_expr;
    out.order = g_.order();
    out.predicate = p_;
    out.perfect = perfect_;
    out.complete = state.next_counter >= total;
    out.stats = state.stats;
    out.stats.wall_time_ms = prior_ms + elapsed_ms(t0);
    for (const auto& [kind, counter] : state.witnesses)
      out.witnesses.push_back({kind, SymmetricSubset(g_, ElementSubset(g_.order(), family_.bits(counter))), counter});
    out.holds = out.witnesses.empty();
    if (!out.holds) return out;
    if (!out.complete) throw std::logic_error("search ended early without a witness");
    return out;
  }

 private:
  std::vector<ChunkResult> run_window(std::uint64_t begin, std::uint64_t end, std::uint64_t block, unsigned threads) {
    const std::size_t n_chunks = static_cast<std::size_t>((end - begin + block - 1) / block);
    std::vector<ChunkResult> chunks(n_chunks);
    std::atomic<std::size_t> cursor{0};
    std::atomic<std::uint64_t> best{kNone};
    std::exception_ptr error;
    std::mutex error_mutex;
    const auto worker = [&] {
      try {
        for (std::size_t i; (i = cursor.fetch_add(1)) < n_chunks;) {
          ChunkResult& r = chunks[i];
          r.start = begin + i * block;
          if (opts_.stop_at_first && r.start > best.load()) continue;
          const std::uint64_t stop = std::min(end, r.start + block);
          for (std::uint64_t c = r.start; c < stop; ++c) {
            if (opts_.stop_at_first && c > best.load()) break;
            if (evaluate(c, r) && opts_.stop_at_first) {
              std::uint64_t cur = best.load();
              while (c < cur && !best.compare_exchange_weak(cur, c)) {
              }
              break;
            }
          }
        }
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
      }
    };
    const unsigned spawn = static_cast<unsigned>(std::min<std::size_t>(threads, n_chunks));
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < spawn; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
    return chunks;
  }

  // Chunks beyond the first witness are discarded so that stats do not
  // depend on scheduling.
  void merge(const std::vector<ChunkResult>& chunks, Checkpoint& state) const {
    std::uint64_t best = kNone;
    WitnessKind best_kind = WitnessKind::nonintegral;
    if (opts_.stop_at_first)
      for (const auto& r : chunks)
        if (r.witness < best) {
          best = r.witness;
          best_kind = r.kind;
        }
    for (const auto& r : chunks) {
      if (r.start > best) continue;
      state.stats += r.stats;
    }
    if (opts_.stop_at_first) {
      if (best != kNone) state.witnesses.emplace_back(best_kind, best);
      return;
    }
    for (int k = 0; k < 3; ++k) {
      const auto kind = static_cast<WitnessKind>(k);
      const bool have = std::any_of(state.witnesses.begin(), state.witnesses.end(),
                                    [&](const auto& w) { return w.first == kind; });
      if (have) continue;
      std::uint64_t first = kNone;
      for (const auto& r : chunks) first = std::min(first, r.first_of_kind[k]);
      if (first != kNone) state.witnesses.emplace_back(kind, first);
    }
    std::sort(state.witnesses.begin(), state.witnesses.end(),
              [](const auto& a, const auto& b) { return a.second < b.second; });
  }

  // Returns true when `c` is a witness.
  bool evaluate(std::uint64_t c, ChunkResult& r) const {
    SearchStats& st = r.stats;
    ++st.subsets_enumerated;
    if (opts_.reduce && !reducer_.is_canonical(c)) return false;
    ++st.reduced_count;
    const Mask bits = family_.bits(c);
    const bool gen = generates_bits(g_, bits);
    if (gen) ++st.generating;
    if (!gen && (p_ == Predicate::cis || opts_.generating_only)) return false;

    const CayleyGraph graph(g_, SymmetricSubset(g_, ElementSubset(g_.order(), bits)));
    const bool integral = is_integral(graph);
    ++st.verdicts;
    if (integral) ++st.integral;
    if (gen && integral) {
      const BoundCheck b = divisibility_bound_check(graph, true, perfect_);
      ++st.bound_applicable;
      if (!b.holds) ++st.bound_violations;
      if (b.strong) {
        ++st.strong_applicable;
        if (!b.strong_holds) ++st.strong_violations;
      }
    }

    std::optional<WitnessKind> kind;
    if (p_ == Predicate::cayley_integral) {
      if (!integral) kind = WitnessKind::nonintegral;
    } else {
      const bool multipartite = is_complete_multipartite(graph);
      if (integral && !multipartite) kind = WitnessKind::integral_noncomplement;
      if (!integral && multipartite) kind = WitnessKind::complement_nonintegral;
    }
    if (!kind || (only_ && *kind != *only_)) return false;
    auto& first = r.first_of_kind[static_cast<int>(*kind)];
    first = std::min(first, c);
    if (c < r.witness) {
      r.witness = c;
      r.kind = *kind;
    }
    return true;
  }

  const FiniteGroup& g_;
  Predicate p_;
  SearchOptions opts_;
  std::optional<WitnessKind> only_;
  SubsetFamily family_;
  ConjugacyReducer reducer_;
  bool perfect_;
};

}  // namespace

SearchStats& SearchStats::operator+=(const SearchStats& o) {
  subsets_enumerated += o.subsets_enumerated;
  reduced_count += o.reduced_count;
  generating += o.generating;
  verdicts += o.verdicts;
  integral += o.integral;
  bound_applicable += o.bound_applicable;
  bound_violations += o.bound_violations;
  strong_applicable += o.strong_applicable;
  strong_violations += o.strong_violations;
  wall_time_ms += o.wall_time_ms;
  return *this;
}

SubsetFamily::SubsetFamily(const FiniteGroup& g) : cell_of_(g.order(), -1) {
  for (Element e = 0; e < g.order(); ++e) {
    if (e == g.identity() || cell_of_[e] >= 0) continue;
    const Element inv = g.inverse(e);
    cell_of_[e] = cell_of_[inv] = static_cast<int>(cells_.size());
    cells_.push_back(bit(e) | bit(inv));
  }
}

Mask SubsetFamily::bits(std::uint64_t counter) const {
  Mask out = 0;
  for (std::uint64_t c = counter; c; c &= c - 1) out |= cells_[static_cast<std::size_t>(std::countr_zero(c))];
  return out;
}

std::uint64_t SubsetFamily::counter(Mask bits) const {
  std::uint64_t out = 0;
  for (Mask b = bits; b; b &= b - 1) {
    const auto e = static_cast<std::size_t>(std::countr_zero(b));
    if (e >= cell_of_.size() || cell_of_[e] < 0) throw SubsetError("subset contains the identity or leaves the group");
    out |= std::uint64_t{1} << cell_of_[e];
  }
  if (this->bits(out) != bits) throw SubsetError("subset is not inverse-closed");
  return out;
}

ConjugacyReducer::ConjugacyReducer(const FiniteGroup& g, const SubsetFamily& family) {
  std::set<std::vector<std::uint8_t>> seen;
  std::vector<std::uint8_t> identity(family.cell_count());
  for (std::size_t i = 0; i < identity.size(); ++i) identity[i] = static_cast<std::uint8_t>(i);
  seen.insert(identity);
  for (Element a = 0; a < g.order(); ++a) {
    std::vector<std::uint8_t> map(family.cell_count());
    for (std::size_t i = 0; i < map.size(); ++i) {
      const auto rep = static_cast<Element>(std::countr_zero(family.cells()[i]));
      const Element image = g.mul(g.mul(a, rep), g.inverse(a));
      map[i] = static_cast<std::uint8_t>(family.cell_of(image));
    }
    if (seen.insert(map).second) cell_maps_.push_back(std::move(map));
  }
}

bool ConjugacyReducer::is_canonical(std::uint64_t counter) const {
  for (const auto& map : cell_maps_) {
    std::uint64_t image = 0;
    for (std::uint64_t c = counter; c; c &= c - 1) image |= std::uint64_t{1} << map[std::countr_zero(c)];
    if (image < counter) return false;
  }
  return true;
}

void symmetric_subsets(const FiniteGroup& g, bool reduce_conjugacy,
                       const std::function<void(const SymmetricSubset&)>& visit) {
  const SubsetFamily family(g);
  if (family.cell_count() > 40) throw CapExceeded("too many subset cells to enumerate");
  const ConjugacyReducer reducer(g, family);
  for (std::uint64_t c = 0; c < family.count(); ++c) {
    if (reduce_conjugacy && !reducer.is_canonical(c)) continue;
    visit(SymmetricSubset(g, ElementSubset(g.order(), family.bits(c))));
  }
}

std::vector<SymmetricSubset> list_symmetric_subsets(const FiniteGroup& g, bool reduce_conjugacy) {
  std::vector<SymmetricSubset> out;
  symmetric_subsets(g, reduce_conjugacy, [&](const SymmetricSubset& s) { out.push_back(s); });
  return out;
}

std::string to_string(Predicate p) { return p == Predicate::cis ? "cis" : "cayley-integral"; }

std::string to_string(WitnessKind k) {
  switch (k) {
    case WitnessKind::nonintegral:
      return "nonintegral";
    case WitnessKind::integral_noncomplement:
      return "integral_noncomplement";
    case WitnessKind::complement_nonintegral:
      return "complement_nonintegral";
  }
  return "?";
}

GroupVerdict run_search(const FiniteGroup& g, Predicate p, const SearchOptions& opts) {
  return Searcher(g, p, opts, std::nullopt).run();
}

GroupVerdict is_cayley_integral(const FiniteGroup& g, const SearchOptions& opts) {
  return run_search(g, Predicate::cayley_integral, opts);
}

GroupVerdict is_cis(const FiniteGroup& g, const SearchOptions& opts) { return run_search(g, Predicate::cis, opts); }

std::optional<SymmetricSubset> find_witness(const FiniteGroup& g, WitnessKind kind, const SearchOptions& opts) {
  SearchOptions o = opts;
  o.stop_at_first = true;
  o.checkpoint.reset();
  const Predicate p = kind == WitnessKind::nonintegral ? Predicate::cayley_integral : Predicate::cis;
  const GroupVerdict v = Searcher(g, p, o, kind).run();
  if (v.witnesses.empty()) return std::nullopt;
  return v.witnesses.front().subset;
}

}  // namespace cayspec
