#include "commands.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "grl/blowup.hpp"
#include "grl/corollary.hpp"
#include "grl/cycle_space.hpp"
#include "grl/error.hpp"
#include "grl/instance.hpp"
#include "grl/removal.hpp"
#include "grl/solutions.hpp"

namespace grl::cli {

namespace {

nlohmann::json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open '" + path + "'");
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError("'" + path + "' is not valid JSON: " + e.what());
  }
}

Instance load_instance(const std::string& path, const GlobalOptions& opts) {
  return instance_from_json(load_json(path), opts.seed);
}

std::uint64_t max_arcs(const GlobalOptions& opts) {
  return opts.max_arcs ? opts.max_arcs : kDefaultMaxArcs;
}

std::uint64_t max_copies(const GlobalOptions& opts) {
  return opts.max_copies ? opts.max_copies : kDefaultMaxCopies;
}

double normalized(std::uint64_t solutions, std::size_t n, const EquationSystem& sys) {
  return static_cast<double>(solutions) /
         std::pow(static_cast<double>(n), static_cast<double>(free_dimension(sys)));
}

nlohmann::json tree_json(const SpanningTree& t) { return t.arcs; }

nlohmann::json header(const Instance& inst) {
  return {{"group", inst.group.name()},
          {"N", inst.group.order()},
          {"m", variable_count(inst.system)},
          {"k", equation_count(inst.system)},
          {"system", to_string(inst.system)}};
}

// The first spanning tree of g that strongly represents sys, if any.
std::optional<SpanningTree> strong_tree(const ColoredDigraph& g, const OrderedSystem& sys) {
  for (auto& t : spanning_trees(g)) {
    if (is_strong_representation(g, t, sys)) return t;
  }
  return std::nullopt;
}

}  // namespace

Result cmd_count(const std::string& path, const GlobalOptions& opts) {
  const auto inst = load_instance(path, opts);
  const auto solutions = count_solutions(inst.group, inst.sets, inst.system);
  auto j = header(inst);
  j["solutions"] = solutions;
  j["normalized"] = normalized(solutions, inst.group.order(), inst.system);
  return {j, std::nullopt};
}

Result cmd_represent(const std::string& path, const GlobalOptions&) {
  const auto spec = load_json(path);
  if (!spec.is_object() || !spec.contains("system")) {
    throw ConfigError("representation spec needs a 'system'");
  }
  const auto sys = system_from_json(spec.at("system"));
  const std::size_t m = variable_count(sys), k = equation_count(sys);
  nlohmann::json j{{"system", to_string(sys)}, {"m", m}, {"k", k}, {"h", m - k + 1}};

  if (spec.contains("graph")) {
    const auto g = graph_from_json(spec.at("graph"));
    if (g.arc_count() != m) throw ConfigError("graph arc count does not match the system");
    const auto check = is_graph_representation(g, sys);
    j["graph"] = to_json(g);
    j["representable-by-given-vectors"] = check.ok;
    j["representable"] = check.ok;
    j["reason"] = check.reason;
    j["determinant"] = check.determinant;
    j["strong"] = nullptr;
    j["tree"] = nullptr;
    if (const auto* ordered = std::get_if<OrderedSystem>(&sys)) {
      std::optional<SpanningTree> tree;
      if (spec.contains("tree")) {
        auto t = make_spanning_tree(g, spec.at("tree").get<std::vector<std::size_t>>());
        if (is_strong_representation(g, t, *ordered)) tree = std::move(t);
      } else {
        tree = strong_tree(g, *ordered);
      }
      j["strong"] = tree.has_value();
      if (tree) j["tree"] = tree_json(*tree);
    }
    return {j, std::nullopt};
  }

  if (const auto* single = std::get_if<SingleEquation>(&sys)) {
    const auto g = directed_cycle(single->m);
    j["representable"] = true;
    j["strong"] = true;
    j["graph"] = to_json(g);
    j["tree"] = tree_json(bfs_spanning_tree(g));
    j["reason"] = "";
    return {j, std::nullopt};
  }
  if (const auto* ordered = std::get_if<OrderedSystem>(&sys)) {
    if (auto strong = search_strong_representation(*ordered, kMaxSearchVariables + 1)) {
      j["representable"] = true;
      j["strong"] = true;
      j["graph"] = to_json(strong->graph);
      j["tree"] = tree_json(strong->tree);
      j["reason"] = "";
      return {j, std::nullopt};
    }
    auto plain = search_representation(abelian_shadow(*ordered), kMaxSearchVariables + 1);
    if (!plain) throw NotFound("no graph represents " + to_string(sys));
    j["representable"] = true;
    j["strong"] = false;
    j["graph"] = to_json(*plain);
    j["tree"] = nullptr;
    j["reason"] = "no spanning tree realizes the words";
    return {j, std::nullopt};
  }
  auto found = search_representation(std::get<AbelianSystem>(sys), kMaxSearchVariables + 1);
  if (!found) throw NotFound("no graph represents " + to_string(sys));
  j["representable"] = true;
  j["strong"] = nullptr;
  j["graph"] = to_json(*found);
  j["tree"] = nullptr;
  j["reason"] = "";
  return {j, std::nullopt};
}

Result cmd_verify(const std::string& path, const GlobalOptions& opts) {
  const auto inst = load_instance(path, opts);
  const auto solutions = count_solutions(inst.group, inst.sets, inst.system);
  auto j = header(inst);

  std::optional<BlowupGraph> blowup;
  if (std::holds_alternative<SingleEquation>(inst.system) || !inst.graph) {
    blowup.emplace(build_blowup(inst, max_arcs(opts)));
    j["graph_represents_system"] = true;
    j["reason"] = "";
  } else {
    // A given graph is blown up as is, so that graphs which fail the
    // representation test can be compared against the solution count too.
    const auto check = is_graph_representation(*inst.graph, inst.system);
    j["graph_represents_system"] = check.ok;
    j["reason"] = check.reason;
    blowup.emplace(build_system_blowup(inst.group, inst.sets, *inst.graph, inst.system,
                                       max_arcs(opts)));
  }
  const auto copies = count_copies(*blowup);
  const auto n_times = inst.group.order() * solutions;
  j["solutions"] = solutions;
  j["copies"] = copies;
  j["N_times_solutions"] = n_times;
  j["match"] = copies == n_times;
  j["graph"] = to_json(blowup->base());
  return {j, std::nullopt};
}

namespace {

nlohmann::json record_json(const ExperimentRecord& r) {
  nlohmann::json j{{"group", r.group},
                   {"N", r.n},
                   {"m", r.m},
                   {"k", r.k},
                   {"density", r.density},
                   {"delta", r.delta},
                   {"pipeline_removed_fraction", r.pipeline_removed_fraction},
                   {"oracle_removed_fraction", nullptr},
                   {"residual", r.residual},
                   {"E_size", r.e_size},
                   {"seed", r.seed},
                   {"trial", r.trial}};
  if (r.oracle_removed_fraction) j["oracle_removed_fraction"] = *r.oracle_removed_fraction;
  return j;
}

}  // namespace

Result cmd_removal(const std::string& path, RemovalMode mode, const GlobalOptions& opts) {
  if (mode == RemovalMode::kSweep) {
    auto config = experiment_config_from_json(load_json(path));
    if (opts.seed) config.seed = *opts.seed;
    config.jobs = opts.jobs;
    if (opts.max_copies) config.max_copies = opts.max_copies;
    const auto records = removal_experiment(config);
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& r : records) rows.push_back(record_json(r));
    std::ostringstream csv;
    write_csv(csv, records);
    return {{{"records", std::move(rows)}}, csv.str()};
  }

  const auto inst = load_instance(path, opts);
  auto j = header(inst);
  const auto solutions = count_solutions(inst.group, inst.sets, inst.system);
  j["solutions"] = solutions;
  j["delta"] = normalized(solutions, inst.group.order(), inst.system);

  if (mode == RemovalMode::kExact) {
    const auto result = exact_min_removal(inst.group, inst.sets, inst.system);
    std::vector<ElementSet> reduced;
    for (std::size_t i = 0; i < inst.sets.size(); ++i) {
      reduced.push_back(inst.sets[i].set_difference(result.removed[i]));
    }
    j["exact"] = to_json(result);
    j["total_removed"] = result.total;
    j["optimal"] = result.optimal;
    j["residual_solutions"] = count_solutions(inst.group, reduced, inst.system);
    return {j, std::nullopt};
  }

  const auto result = run_pipeline(inst, max_copies(opts), max_arcs(opts));
  j["copies"] = result.copies;
  j["E_size"] = result.report.e_size;
  j["total_removed"] = result.report.total_removed();
  j["residual_solutions"] = result.report.residual_solutions;
  j["removal"] = to_json(result.report);
  return {j, std::nullopt};
}

Result cmd_app(const std::string& which, const std::string& path, const GlobalOptions& opts) {
  const auto spec = load_json(path);
  if (!spec.is_object() || !spec.contains("group") || !spec.contains("a")) {
    throw ConfigError("application spec needs 'group' and 'a'");
  }
  const auto group = group_from_json(spec.at("group"));
  SplitMix64 rng(opts.seed.value_or(spec.value("seed", std::uint64_t{0})));
  const auto a = set_from_spec(spec.at("a"), group.order(), rng);
  const auto needs = [&](const char* key) {
    if (!spec.contains(key)) throw ConfigError(which + " needs '" + key + "'");
    return set_from_spec(spec.at(key), group.order(), rng);
  };

  ApplicationResult result;
  if (which == "product-free") {
    const auto e = needs("e");
    result = product_free_removal(group, a, e, max_copies(opts));
  } else if (which == "doubling") {
    result = small_doubling_removal(group, a, max_copies(opts));
  } else if (which == "commuting") {
    const auto b = needs("b");
    result = commuting_pairs_removal(group, a, b, max_copies(opts));
  } else {
    throw ConfigError("unknown application '" + which + "'");
  }
  auto j = to_json(result);
  j["group"] = group.name();
  j["N"] = group.order();
  j["holds"] = result.certificate.holds;
  j["total_removed"] = result.pipeline.report.total_removed();
  return {j, std::nullopt};
}

void emit(std::ostream& out, const Result& result, Format format) {
  if (format == Format::kJson) {
    out << result.json.dump(2) << '\n';
    return;
  }
  if (result.csv) {
    out << *result.csv;
    return;
  }
  std::string head, row;
  for (const auto& [key, value] : result.json.items()) {
    if (value.is_structured()) continue;
    if (!head.empty()) {
      head += ',';
      row += ',';
    }
    head += key;
    row += value.is_string() ? value.get<std::string>() : value.dump();
  }
  out << head << '\n' << row << '\n';
}

}  // namespace grl::cli
