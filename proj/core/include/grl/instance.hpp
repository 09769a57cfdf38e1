#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "grl/blowup.hpp"
#include "grl/cycle_space.hpp"
#include "grl/equations.hpp"
#include "grl/group.hpp"
#include "grl/random.hpp"

namespace grl {

/// A complete problem: group, one set per variable, the system, and optionally
/// the base graph (and tree) to blow up.
struct Instance {
  GroupTable group;
  std::vector<ElementSet> sets;
  EquationSystem system;
  std::optional<ColoredDigraph> graph;
  std::optional<SpanningTree> tree;
  std::uint64_t seed = 0;
};

/// One set entry: an index array, "full", or {"density": d} drawn from `rng`.
ElementSet set_from_spec(const nlohmann::json& j, std::size_t group_order, SplitMix64& rng);

/// Reads an instance file:
///   {"group": {...}, "system": "x1 x2 x3 = g0" | {...},
///    "sets": [[0,1,2], {"density": 0.3}, "full", ...],
///    "seed": 1, "graph": {...}, "tree": [0,1,2], "g": 0}
/// Density sets are drawn in order from one SplitMix64 stream seeded with
/// `seed_override` if given, else the file's "seed" (default 0). "g", when
/// present, replaces the right-hand side of a single equation. Every
/// cross-module invariant is validated; failures throw grl::Error.
Instance instance_from_json(const nlohmann::json& j,
                            std::optional<std::uint64_t> seed_override = std::nullopt);

/// The base graph used for blow-ups: the given one, the m-cycle for single
/// equations, or a searched (strong) representation. Throws ContractViolation
/// if a given graph does not (strongly) represent the system and
/// NotFound (or SizeLimit past the search cap) if none can be found.
struct Representation {
  ColoredDigraph graph;
  std::optional<SpanningTree> tree;
};
Representation resolve_representation(const Instance& inst);

BlowupGraph build_blowup(const Instance& inst, std::uint64_t max_arcs = kDefaultMaxArcs);

/// m - k, the exponent of N in the solution-count normalization.
std::size_t free_dimension(const EquationSystem& sys);

}  // namespace grl
