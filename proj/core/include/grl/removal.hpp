#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "grl/blowup.hpp"
#include "grl/instance.hpp"

namespace grl {

inline constexpr std::uint64_t kDefaultMaxCopies = 2'000'000;

/// A set of blow-up arcs, sorted and duplicate-free.
struct ArcRemovalSet {
  std::vector<ArcId> arcs;

  std::size_t size() const noexcept { return arcs.size(); }
  ArcMask mask(const BlowupGraph& blowup) const;
};

/// Repeatedly removes the arc lying on the most surviving copies (ties: the
/// smallest (color, label, tail element)) until no copy survives. This is an
/// exact hitting set computed by enumeration, not a regularity argument.
ArcRemovalSet greedy_arc_hitting_set(const BlowupGraph& blowup,
                                     std::uint64_t max_copies = kDefaultMaxCopies);

/// Walks the copies in a seeded random order and, for each copy not yet hit,
/// adds one of its arcs chosen at random. Every copy ends up hit.
ArcRemovalSet random_arc_hitting_set(const BlowupGraph& blowup, std::uint64_t seed,
                                     std::uint64_t max_copies = kDefaultMaxCopies);

struct RemovalReport {
  std::uint64_t e_size = 0;
  std::vector<ElementSet> removed;  // B_i
  std::vector<ElementSet> reduced;  // A'_i = A_i \ B_i
  std::uint64_t residual_solutions = 0;
  std::string threshold = "count*m >= N";
  std::string method = "exact hitting set (non-regularity)";
  double elapsed_ms = 0.0;

  std::size_t total_removed() const;
};

/// B_i = { a in A_i : at least N/m arcs of E are labeled [a, i] }, compared
/// exactly as count * m >= N. Throws ContractViolation if E misses a copy, if
/// some |B_i| > m|E|/N, or if a solution survives in the reduced sets. Needs a
/// blow-up with an attached system.
RemovalReport pigeonhole_reduce(const ArcRemovalSet& e, const BlowupGraph& blowup);

struct MinRemovalOptions {
  std::size_t max_total_elements = 40;  // cap on sum |A_i|
  std::uint64_t node_budget = 20'000'000;
  std::uint64_t max_solutions = 1'000'000;
};

struct MinRemovalResult {
  std::vector<ElementSet> removed;  // per set
  std::size_t total = 0;
  bool optimal = true;  // false: budget exhausted, `total` is the best found
  std::size_t lower_bound = 0;
  std::uint64_t nodes = 0;
};

/// Minimum number of elements (summed over all sets) whose removal leaves no
/// solution: a minimum vertex cover of the hypergraph whose vertices are
/// (set, element) pairs and whose edges are the solutions, found by branch
/// and bound with a greedy upper bound and a disjoint-edge packing lower bound.
MinRemovalResult exact_min_removal(const GroupTable& group, std::span<const ElementSet> sets,
                                   const EquationSystem& sys,
                                   const MinRemovalOptions& options = {});

struct PipelineResult {
  std::uint64_t copies = 0;
  std::uint64_t solutions = 0;
  ArcRemovalSet e;
  RemovalReport report;
};

/// Blow-up, greedy hitting set, pigeonhole reduction.
PipelineResult run_pipeline(const Instance& inst, std::uint64_t max_copies = kDefaultMaxCopies,
                            std::uint64_t max_arcs = kDefaultMaxArcs);

struct ExperimentConfig {
  std::string group_family = "cyclic";  // cyclic | dihedral | symmetric
  std::vector<std::size_t> sizes;
  double density = 0.3;
  std::string system = "x1 x2 x3 = g0";
  std::size_t trials = 1;
  std::uint64_t seed = 0;
  std::size_t jobs = 1;
  bool oracle = true;
  std::uint64_t max_copies = kDefaultMaxCopies;
};

/// {"group_family": "cyclic", "sizes": [5, 6], "density": 0.3,
///  "system": "x1 x2 x3 = g0", "trials": 3, "seed": 1, "oracle": true}
ExperimentConfig experiment_config_from_json(const nlohmann::json& j);

struct ExperimentRecord {
  std::string group;
  std::size_t n = 0;
  std::size_t m = 0;
  std::size_t k = 0;
  double density = 0.0;
  double delta = 0.0;  // solutions / N^(m-k)
  double pipeline_removed_fraction = 0.0;  // sum |B_i| / (m N)
  std::optional<double> oracle_removed_fraction;  // minimum / (m N), within the oracle cap
  std::uint64_t residual = 0;
  std::uint64_t e_size = 0;
  std::uint64_t seed = 0;
  std::size_t trial = 0;
};

/// Seed of one trial: the `index`-th output of SplitMix64(seed), where index
/// runs over (size position, trial) in row-major order.
std::uint64_t trial_seed(std::uint64_t seed, std::size_t index);

/// One record per (size, trial), in that order, independent of `jobs`.
std::vector<ExperimentRecord> removal_experiment(const ExperimentConfig& config);

void write_csv(std::ostream& out, const std::vector<ExperimentRecord>& records);

nlohmann::json to_json(const RemovalReport& r);
nlohmann::json to_json(const MinRemovalResult& r);

}  // namespace grl
