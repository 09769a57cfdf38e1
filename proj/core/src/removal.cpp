#include "grl/removal.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <chrono>
#include <cmath>
#include <iomanip>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>
#include <tuple>

#include "grl/error.hpp"
#include "grl/random.hpp"
#include "grl/solutions.hpp"

namespace grl {

ArcMask ArcRemovalSet::mask(const BlowupGraph& blowup) const {
  ArcMask m(blowup.arc_count(), false);
  for (auto id : arcs) {
    if (id >= blowup.arc_count()) throw InvalidParameter("arc id out of range");
    m[id] = true;
  }
  return m;
}

std::size_t RemovalReport::total_removed() const {
  std::size_t n = 0;
  for (const auto& b : removed) n += b.size();
  return n;
}

namespace {

// Arcs of every copy, m per copy, in enumeration order.
std::vector<ArcId> collect_copy_arcs(const BlowupGraph& blowup, std::uint64_t max_copies) {
  std::vector<ArcId> flat;
  std::uint64_t copies = 0;
  const auto& base = blowup.base();
  for_each_copy(blowup, [&](const ColoredCopy& c) {
    if (++copies > max_copies) {
      throw SizeLimit("more than " + std::to_string(max_copies) + " copies to hit");
    }
    for (const auto& arc : base.arcs()) {
      flat.push_back(*blowup.find_arc(arc.color, c.phi[arc.tail], c.labels[arc.color]));
    }
    return true;
  });
  return flat;
}

void require_copy_free(const BlowupGraph& blowup, const ArcRemovalSet& e) {
  const auto mask = e.mask(blowup);
  if (count_copies(blowup, &mask) != 0) {
    throw ContractViolation("arc set does not hit every copy of the base graph");
  }
}

}  // namespace

ArcRemovalSet greedy_arc_hitting_set(const BlowupGraph& blowup, std::uint64_t max_copies) {
  const std::size_t m = blowup.color_count();
  const auto flat = collect_copy_arcs(blowup, max_copies);
  const std::size_t copies = m == 0 ? 0 : flat.size() / m;
  if (copies == 0) return {};

  // Compress the touched arcs and build arc -> copies adjacency.
  std::vector<ArcId> local(flat);
  std::sort(local.begin(), local.end());
  local.erase(std::unique(local.begin(), local.end()), local.end());
  const auto index_of = [&](ArcId id) {
    return static_cast<std::size_t>(std::lower_bound(local.begin(), local.end(), id) -
                                    local.begin());
  };
  std::vector<std::size_t> start(local.size() + 1, 0);
  std::vector<std::size_t> flat_local(flat.size());
  for (std::size_t i = 0; i < flat.size(); ++i) {
    flat_local[i] = index_of(flat[i]);
    ++start[flat_local[i] + 1];
  }
  for (std::size_t i = 0; i < local.size(); ++i) start[i + 1] += start[i];
  std::vector<std::size_t> on_arc(flat.size()), fill(start.begin(), start.end() - 1);
  for (std::size_t i = 0; i < flat.size(); ++i) on_arc[fill[flat_local[i]]++] = i / m;

  // Priority: most copies, then smallest (color, label, tail element).
  using Key = std::tuple<std::int64_t, std::size_t, Element, Element, std::size_t>;
  std::vector<std::uint64_t> count(local.size());
  std::vector<Key> key(local.size());
  std::set<Key> queue;
  for (std::size_t a = 0; a < local.size(); ++a) {
    count[a] = start[a + 1] - start[a];
    const auto info = blowup.arc(local[a]);
    key[a] = Key{-static_cast<std::int64_t>(count[a]), info.color, info.label, info.tail_element, a};
    queue.insert(key[a]);
  }

  std::vector<bool> alive(copies, true);
  ArcRemovalSet e;
  while (!queue.empty()) {
    const auto top = *queue.begin();
    const std::size_t a = std::get<4>(top);
    if (count[a] == 0) break;
    e.arcs.push_back(local[a]);
    for (std::size_t p = start[a]; p < start[a + 1]; ++p) {
      const std::size_t c = on_arc[p];
      if (!alive[c]) continue;
      alive[c] = false;
      for (std::size_t j = 0; j < m; ++j) {
        const std::size_t b = flat_local[c * m + j];
        queue.erase(key[b]);
        --count[b];
        std::get<0>(key[b]) = -static_cast<std::int64_t>(count[b]);
        queue.insert(key[b]);
      }
    }
  }
  std::sort(e.arcs.begin(), e.arcs.end());
  require_copy_free(blowup, e);
  return e;
}

ArcRemovalSet random_arc_hitting_set(const BlowupGraph& blowup, std::uint64_t seed,
                                     std::uint64_t max_copies) {
  const std::size_t m = blowup.color_count();
  const auto flat = collect_copy_arcs(blowup, max_copies);
  const std::size_t copies = m == 0 ? 0 : flat.size() / m;
  std::vector<std::size_t> order(copies);
  for (std::size_t i = 0; i < copies; ++i) order[i] = i;
  SplitMix64 rng(seed);
  for (std::size_t i = copies; i > 1; --i) std::swap(order[i - 1], order[rng.next_below(i)]);

  ArcMask hit(blowup.arc_count(), false);
  ArcRemovalSet e;
  for (auto c : order) {
    bool covered = false;
    for (std::size_t j = 0; j < m && !covered; ++j) covered = hit[flat[c * m + j]];
    if (covered) continue;
    const ArcId pick = flat[c * m + rng.next_below(m)];
    hit[pick] = true;
    e.arcs.push_back(pick);
  }
  std::sort(e.arcs.begin(), e.arcs.end());
  return e;
}

RemovalReport pigeonhole_reduce(const ArcRemovalSet& e, const BlowupGraph& blowup) {
  const auto t0 = std::chrono::steady_clock::now();
  if (!blowup.system()) throw InvalidParameter("pigeonhole reduction needs the blow-up's system");
  require_copy_free(blowup, e);

  const std::size_t m = blowup.color_count();
  const std::uint64_t n = blowup.group_order();
  std::vector<std::vector<std::uint64_t>> per_label(m, std::vector<std::uint64_t>(n, 0));
  for (auto id : e.arcs) {
    const auto info = blowup.arc(id);
    ++per_label[info.color][info.label];
  }

  RemovalReport r;
  r.e_size = e.size();
  for (std::size_t i = 0; i < m; ++i) {
    std::vector<Element> b;
    for (auto a : blowup.sets()[i].members()) {
      if (per_label[i][a] * m >= n) b.push_back(a);
    }
    // |B_i| <= m |E| / N
    if (static_cast<std::uint64_t>(b.size()) * n > m * r.e_size) {
      throw ContractViolation("|B_" + std::to_string(i + 1) + "| exceeds m|E|/N");
    }
    r.removed.emplace_back(std::move(b), n);
    r.reduced.push_back(blowup.sets()[i].set_difference(r.removed.back()));
  }
  r.residual_solutions = count_solutions(blowup.group(), r.reduced, *blowup.system());
  if (r.residual_solutions != 0) {
    throw ContractViolation(std::to_string(r.residual_solutions) +
                            " solutions survive the pigeonhole reduction");
  }
  r.elapsed_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

namespace {

class VertexCoverSearch {
 public:
  VertexCoverSearch(std::vector<std::uint64_t> edges, std::uint64_t budget)
      : edges_(std::move(edges)), budget_(budget) {}

  void run() {
    best_cover_ = greedy_cover();
    best_ = static_cast<std::size_t>(std::popcount(best_cover_));
    std::vector<std::size_t> all(edges_.size());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
    root_bound_ = packing_bound(all);
    solve(0, 0, 0);
  }

  std::uint64_t cover() const { return best_cover_; }
  std::size_t size() const { return best_; }
  bool exhausted() const { return exhausted_; }
  std::size_t root_bound() const { return root_bound_; }
  std::uint64_t nodes() const { return nodes_; }

 private:
  std::uint64_t greedy_cover() const {
    std::uint64_t cover = 0;
    for (;;) {
      std::array<std::size_t, 64> hits{};
      bool any = false;
      for (auto e : edges_) {
        if (e & cover) continue;
        any = true;
        for (auto bits = e; bits; bits &= bits - 1) ++hits[std::countr_zero(bits)];
      }
      if (!any) return cover;
      const auto best = std::max_element(hits.begin(), hits.end()) - hits.begin();
      cover |= std::uint64_t{1} << best;
    }
  }

  std::size_t packing_bound(const std::vector<std::size_t>& open) const {
    std::uint64_t used = 0;
    std::size_t n = 0;
    for (auto i : open) {
      if (edges_[i] & used) continue;
      used |= edges_[i];
      ++n;
    }
    return n;
  }

  void solve(std::uint64_t cover, std::uint64_t forbidden, std::size_t size) {
    if (exhausted_) return;
    if (++nodes_ > budget_) {
      exhausted_ = true;
      return;
    }
    std::vector<std::size_t> open;
    for (std::size_t i = 0; i < edges_.size(); ++i)
      if ((edges_[i] & cover) == 0) open.push_back(i);
    if (open.empty()) {
      if (size < best_) {
        best_ = size;
        best_cover_ = cover;
      }
      return;
    }
    if (size + packing_bound(open) >= best_) return;

    std::uint64_t branch = 0;
    int fewest = 65;
    for (auto i : open) {
      const auto allowed = edges_[i] & ~forbidden;
      const int c = std::popcount(allowed);
      if (c < fewest) {
        fewest = c;
        branch = allowed;
      }
    }
    if (fewest == 0) return;
    // Take the first allowed vertex, or skip it for good and take a later one.
    for (auto bits = branch; bits && !exhausted_; bits &= bits - 1) {
      const std::uint64_t v = bits & (~bits + 1);
      solve(cover | v, forbidden, size + 1);
      forbidden |= v;
    }
  }

  std::vector<std::uint64_t> edges_;
  std::uint64_t budget_;
  std::uint64_t best_cover_ = 0;
  std::size_t best_ = 0;
  std::size_t root_bound_ = 0;
  std::uint64_t nodes_ = 0;
  bool exhausted_ = false;
};

}  // namespace

MinRemovalResult exact_min_removal(const GroupTable& group, std::span<const ElementSet> sets,
                                   const EquationSystem& sys, const MinRemovalOptions& options) {
  std::size_t total = 0;
  std::vector<std::size_t> offset;
  for (const auto& s : sets) {
    offset.push_back(total);
    total += s.size();
  }
  if (total > options.max_total_elements || total > 64) {
    throw SizeLimit("exact removal is capped at " + std::to_string(options.max_total_elements) +
                    " elements in total, got " + std::to_string(total));
  }

  std::vector<std::uint64_t> edges;
  enumerate_solutions(group, sets, sys, [&](std::span<const Element> x) {
    if (edges.size() >= options.max_solutions) throw SizeLimit("too many solutions to cover");
    std::uint64_t e = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      const auto members = sets[i].members();
      const auto pos = std::lower_bound(members.begin(), members.end(), x[i]) - members.begin();
      e |= std::uint64_t{1} << (offset[i] + static_cast<std::size_t>(pos));
    }
    edges.push_back(e);
    return true;
  });

  MinRemovalResult result;
  std::uint64_t cover = 0;
  if (!edges.empty()) {
    VertexCoverSearch search(std::move(edges), options.node_budget);
    search.run();
    cover = search.cover();
    result.optimal = !search.exhausted();
    result.lower_bound = result.optimal ? search.size() : search.root_bound();
    result.nodes = search.nodes();
  }
  result.total = static_cast<std::size_t>(std::popcount(cover));
  for (std::size_t i = 0; i < sets.size(); ++i) {
    std::vector<Element> removed;
    const auto members = sets[i].members();
    for (std::size_t p = 0; p < members.size(); ++p) {
      if ((cover >> (offset[i] + p)) & 1u) removed.push_back(members[p]);
    }
    result.removed.emplace_back(std::move(removed), group.order());
  }
  return result;
}

PipelineResult run_pipeline(const Instance& inst, std::uint64_t max_copies,
                            std::uint64_t max_arcs) {
  const auto blowup = build_blowup(inst, max_arcs);
  PipelineResult out;
  out.copies = count_copies(blowup);
  out.solutions = count_solutions(inst.group, inst.sets, inst.system);
  out.e = greedy_arc_hitting_set(blowup, max_copies);
  out.report = pigeonhole_reduce(out.e, blowup);
  return out;
}

ExperimentConfig experiment_config_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ConfigError("sweep config must be a JSON object");
  ExperimentConfig c;
  try {
    c.group_family = j.value("group_family", c.group_family);
    c.sizes = j.at("sizes").get<std::vector<std::size_t>>();
    c.density = j.value("density", c.density);
    c.system = j.value("system", c.system);
    c.trials = j.value("trials", c.trials);
    c.seed = j.value("seed", c.seed);
    c.oracle = j.value("oracle", c.oracle);
    c.max_copies = j.value("max_copies", c.max_copies);
  } catch (const nlohmann::json::exception& ex) {
    throw ConfigError(std::string("bad sweep config: ") + ex.what());
  }
  if (c.sizes.empty()) throw ConfigError("sweep config needs at least one size");
  if (c.trials == 0) throw ConfigError("sweep config needs trials >= 1");
  if (!(c.density >= 0.0 && c.density <= 1.0)) throw ConfigError("density must lie in [0, 1]");
  if (c.group_family != "cyclic" && c.group_family != "dihedral" &&
      c.group_family != "symmetric") {
    throw ConfigError("group_family must be cyclic, dihedral or symmetric");
  }
  return c;
}

std::uint64_t trial_seed(std::uint64_t seed, std::size_t index) {
  // The index-th output of SplitMix64(seed).
  return SplitMix64(seed + 0x9E3779B97F4A7C15ULL * static_cast<std::uint64_t>(index)).next();
}

namespace {

GroupTable family_member(const std::string& family, std::size_t n) {
  if (family == "dihedral") return make_dihedral(n);
  if (family == "symmetric") return make_symmetric(n);
  return make_cyclic(n);
}

ExperimentRecord run_trial(const ExperimentConfig& c, const EquationSystem& sys,
                           const std::optional<Representation>& rep, std::size_t size_index,
                           std::size_t trial) {
  const std::size_t index = size_index * c.trials + trial;
  auto group = family_member(c.group_family, c.sizes[size_index]);
  const std::size_t n = group.order(), m = variable_count(sys), k = equation_count(sys);
  if (const auto* single = std::get_if<SingleEquation>(&sys); single && single->rhs >= n) {
    throw ConfigError("right-hand side g" + std::to_string(single->rhs) + " outside " +
                      group.name());
  }
  ExperimentRecord rec;
  rec.group = group.name();
  rec.n = n;
  rec.m = m;
  rec.k = k;
  rec.density = c.density;
  rec.seed = trial_seed(c.seed, index);
  rec.trial = trial;

  SplitMix64 rng(rec.seed);
  std::vector<ElementSet> sets;
  for (std::size_t i = 0; i < m; ++i) sets.push_back(random_element_set(rng, n, c.density));

  Instance inst{group, sets, sys, std::nullopt, std::nullopt, rec.seed};
  if (rep) {
    inst.graph = rep->graph;
    inst.tree = rep->tree;
  }
  const auto result = run_pipeline(inst, c.max_copies);
  rec.delta = static_cast<double>(result.solutions) /
              std::pow(static_cast<double>(n), static_cast<double>(m - k));
  rec.residual = result.report.residual_solutions;
  rec.e_size = result.report.e_size;
  const double scale = static_cast<double>(m * n);
  rec.pipeline_removed_fraction = static_cast<double>(result.report.total_removed()) / scale;

  std::size_t total = 0;
  for (const auto& s : sets) total += s.size();
  if (c.oracle && total <= MinRemovalOptions{}.max_total_elements) {
    const auto oracle = exact_min_removal(group, sets, sys);
    if (oracle.optimal) rec.oracle_removed_fraction = static_cast<double>(oracle.total) / scale;
  }
  return rec;
}

}  // namespace

std::vector<ExperimentRecord> removal_experiment(const ExperimentConfig& config) {
  const auto sys = parse_system(config.system);
  std::optional<Representation> rep;
  if (!std::holds_alternative<SingleEquation>(sys)) {
    // The representation does not depend on the group; resolve it once.
    Instance probe{make_cyclic(1), {}, sys, std::nullopt, std::nullopt, 0};
    rep = resolve_representation(probe);
  }

  const std::size_t total = config.sizes.size() * config.trials;
  std::vector<ExperimentRecord> records(total);
  std::atomic<std::size_t> next{0};
  std::mutex error_mutex;
  std::exception_ptr error;
  const auto worker = [&] {
    for (std::size_t i = next++; i < total; i = next++) {
      try {
        records[i] = run_trial(config, sys, rep, i / config.trials, i % config.trials);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
      }
    }
  };
  const std::size_t jobs = std::max<std::size_t>(1, std::min(config.jobs, total));
  std::vector<std::thread> pool;
  for (std::size_t j = 1; j < jobs; ++j) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
  return records;
}

void write_csv(std::ostream& out, const std::vector<ExperimentRecord>& records) {
  out << "group,N,m,k,density,delta,pipeline_removed_fraction,oracle_removed_fraction,residual,"
         "E_size,seed,trial\n";
  std::ostringstream line;
  line << std::setprecision(10);
  for (const auto& r : records) {
    line.str("");
    line << r.group << ',' << r.n << ',' << r.m << ',' << r.k << ',' << r.density << ','
         << r.delta << ',' << r.pipeline_removed_fraction << ',';
    if (r.oracle_removed_fraction) line << *r.oracle_removed_fraction;
    line << ',' << r.residual << ',' << r.e_size << ',' << r.seed << ',' << r.trial << '\n';
    out << line.str();
  }
}

nlohmann::json to_json(const RemovalReport& r) {
  auto removed = nlohmann::json::array(), reduced = nlohmann::json::array();
  for (const auto& s : r.removed) removed.push_back(to_json(s));
  for (const auto& s : r.reduced) reduced.push_back(to_json(s));
  return {{"E_size", r.e_size},
          {"removed", std::move(removed)},
          {"reduced", std::move(reduced)},
          {"total_removed", r.total_removed()},
          {"residual_solutions", r.residual_solutions},
          {"threshold", r.threshold},
          {"method", r.method}};
}

nlohmann::json to_json(const MinRemovalResult& r) {
  auto removed = nlohmann::json::array();
  for (const auto& s : r.removed) removed.push_back(to_json(s));
  return {{"removed", std::move(removed)},
          {"total", r.total},
          {"optimal", r.optimal},
          {"lower_bound", r.lower_bound}};
}

}  // namespace grl
