#include "grl/instance.hpp"

#include "grl/error.hpp"
#include "grl/random.hpp"

namespace grl {

ElementSet set_from_spec(const nlohmann::json& j, std::size_t group_order, SplitMix64& rng) {
  if (j.is_string()) {
    if (j.get<std::string>() != "full") throw ConfigError("unknown set keyword '" + j.get<std::string>() + "'");
    return ElementSet::full(group_order);
  }
  if (j.is_object()) {
    if (!j.contains("density")) throw ConfigError("set object needs a 'density'");
    const auto& d = j.at("density");
    if (!d.is_number()) throw ConfigError("density must be a number");
    const double density = d.get<double>();
    if (!(density >= 0.0 && density <= 1.0)) throw ConfigError("density must lie in [0, 1]");
    return random_element_set(rng, group_order, density);
  }
  return element_set_from_json(j, group_order);
}

Instance instance_from_json(const nlohmann::json& j, std::optional<std::uint64_t> seed_override) {
  if (!j.is_object()) throw ConfigError("instance must be a JSON object");
  for (const char* key : {"group", "system", "sets"}) {
    if (!j.contains(key)) throw ConfigError(std::string("instance is missing '") + key + "'");
  }
  const auto group = group_from_json(j.at("group"));
  auto system = system_from_json(j.at("system"));
  if (j.contains("g")) {
    auto* single = std::get_if<SingleEquation>(&system);
    if (single == nullptr) throw ConfigError("'g' only applies to single equations");
    single->rhs = j.at("g").get<Element>();
  }
  if (const auto* single = std::get_if<SingleEquation>(&system)) {
    if (single->rhs >= group.order()) throw ConfigError("right-hand side outside the group");
  }
  if (std::holds_alternative<AbelianSystem>(system) && !group.is_abelian()) {
    throw ConfigError("an additive system needs an abelian group");
  }

  const std::uint64_t seed = seed_override.value_or(j.value("seed", std::uint64_t{0}));
  SplitMix64 rng(seed);
  const auto& raw_sets = j.at("sets");
  const std::size_t m = variable_count(system);
  if (!raw_sets.is_array() || raw_sets.size() != m) {
    throw ConfigError("expected " + std::to_string(m) + " sets for " + std::to_string(m) +
                      " variables");
  }
  std::vector<ElementSet> sets;
  for (const auto& s : raw_sets) sets.push_back(set_from_spec(s, group.order(), rng));

  std::optional<ColoredDigraph> graph;
  std::optional<SpanningTree> tree;
  if (j.contains("graph")) {
    graph = graph_from_json(j.at("graph"));
    if (graph->arc_count() != m) throw ConfigError("graph arc count does not match the system");
  }
  if (j.contains("tree")) {
    if (!graph) throw ConfigError("'tree' needs a 'graph'");
    tree = make_spanning_tree(*graph, j.at("tree").get<std::vector<std::size_t>>());
  }
  return Instance{group, std::move(sets), std::move(system), std::move(graph), std::move(tree),
                  seed};
}

Representation resolve_representation(const Instance& inst) {
  const auto& sys = inst.system;
  if (std::holds_alternative<SingleEquation>(sys)) {
    if (inst.graph) throw ConfigError("single equations always use the directed cycle");
    return {directed_cycle(variable_count(sys)), std::nullopt};
  }
  if (const auto* ordered = std::get_if<OrderedSystem>(&sys)) {
    if (inst.graph) {
      const auto tree = inst.tree ? *inst.tree : bfs_spanning_tree(*inst.graph);
      if (!is_strong_representation(*inst.graph, tree, *ordered)) {
        throw ContractViolation("given graph and tree do not strongly represent the system");
      }
      return {*inst.graph, tree};
    }
    auto found = search_strong_representation(*ordered, kMaxSearchVariables + 1);
    if (!found) throw NotFound("system has no strong graph representation");
    return {found->graph, found->tree};
  }
  const auto& abelian = std::get<AbelianSystem>(sys);
  if (inst.graph) {
    const auto check = is_graph_representation(*inst.graph, sys);
    if (!check) throw ContractViolation("given graph is not a representation: " + check.reason);
    return {*inst.graph, std::nullopt};
  }
  auto found = search_representation(abelian, kMaxSearchVariables + 1);
  if (!found) throw NotFound("system has no graph representation");
  return {*found, std::nullopt};
}

BlowupGraph build_blowup(const Instance& inst, std::uint64_t max_arcs) {
  if (const auto* single = std::get_if<SingleEquation>(&inst.system)) {
    return build_cycle_blowup(inst.group, inst.sets, single->rhs, max_arcs);
  }
  const auto rep = resolve_representation(inst);
  return build_system_blowup(inst.group, inst.sets, rep.graph, inst.system, max_arcs);
}

std::size_t free_dimension(const EquationSystem& sys) {
  return variable_count(sys) - equation_count(sys);
}

}  // namespace grl
