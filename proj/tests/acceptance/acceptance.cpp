// Acceptance checks. Each criterion runs on its own (`--criterion N`) or all
// in sequence, and prints exactly one line: "AC<N> PASS|FAIL: <summary>".
// Expected values come from brute force in oracles.hpp, never from the
// library routine under test.

#include <cstdlib>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "grl/blowup.hpp"
#include "grl/corollary.hpp"
#include "grl/cycle_space.hpp"
#include "grl/error.hpp"
#include "grl/random.hpp"
#include "grl/removal.hpp"
#include "grl/solutions.hpp"
#include "oracles.hpp"
#include "run_cli.hpp"

using namespace grl;

namespace {

struct Outcome {
  bool pass = false;
  std::string summary;
};

std::vector<GroupTable> small_groups() {
  std::vector<GroupTable> groups;
  for (std::size_t n : {2, 3, 4, 5, 6, 7, 8, 9, 10, 12, 15, 16, 20, 24, 30}) {
    groups.push_back(make_cyclic(n));
  }
  groups.push_back(make_direct_product(make_direct_product(make_cyclic(2), make_cyclic(2)),
                                       make_cyclic(3)));
  groups.push_back(make_dihedral(4));
  groups.push_back(make_symmetric(3));
  return groups;
}

std::vector<ElementSet> random_sets(SplitMix64& rng, std::size_t count, std::size_t n,
                                    double density) {
  std::vector<ElementSet> sets;
  for (std::size_t i = 0; i < count; ++i) sets.push_back(random_element_set(rng, n, density));
  return sets;
}

std::string describe(const GroupTable& g, const EquationSystem& sys,
                     const std::vector<ElementSet>& sets) {
  std::ostringstream out;
  out << g.name() << " / " << to_string(sys) << " / sets";
  for (const auto& s : sets) out << ' ' << to_json(s).dump();
  return out.str();
}

// Draws one correspondence instance: a group, a system and sets together with
// the blow-up that should carry N copies per solution.
struct DrawnInstance {
  GroupTable group;
  EquationSystem system;
  std::vector<ElementSet> sets;
  BlowupGraph blowup;
};

DrawnInstance draw_instance(SplitMix64& rng, const std::vector<GroupTable>& groups,
                            std::size_t kind, std::size_t max_single_m) {
  const auto& g = groups[rng.next_below(groups.size())];
  const double density = 0.25 + 0.5 * rng.next_double();
  if (kind == 0 || (kind == 1 && !g.is_abelian())) {
    const std::size_t m = 2 + rng.next_below(max_single_m - 1);
    const auto rhs = static_cast<Element>(rng.next_below(g.order()));
    auto sets = random_sets(rng, m, g.order(), density);
    auto blowup = build_cycle_blowup(g, sets, rhs);
    return {g, make_single_equation(m, rhs), std::move(sets), std::move(blowup)};
  }
  if (kind == 1) {
    EquationSystem sys = make_abelian_system({{1, 1, 1}});
    auto sets = random_sets(rng, 3, g.order(), density);
    auto blowup = build_system_blowup(g, sets, directed_cycle(3), sys);
    return {g, std::move(sys), std::move(sets), std::move(blowup)};
  }
  EquationSystem sys = two_products_system();
  auto sets = random_sets(rng, 5, g.order(), density);
  auto blowup = build_system_blowup(g, sets, two_products_graph(), sys);
  return {g, std::move(sys), std::move(sets), std::move(blowup)};
}

Outcome correspondence() {
  const auto groups = small_groups();
  SplitMix64 rng(20240601);
  std::size_t checked = 0;
  std::map<std::string, std::size_t> by_kind;
  for (std::size_t i = 0; i < 240; ++i) {
    const std::size_t kind = i % 3;
    const auto inst = draw_instance(rng, groups, kind, 5);
    const auto expected = oracle::count_solutions(inst.group, inst.sets, inst.system);
    const auto copies = count_copies(inst.blowup);
    if (copies != inst.group.order() * expected) {
      std::ostringstream out;
      out << "copies " << copies << " != N x " << expected << " on "
          << describe(inst.group, inst.system, inst.sets);
      return {false, out.str()};
    }
    ++checked;
    ++by_kind[kind == 0 ? "single" : kind == 1 ? "triangle" : "two-products"];
  }
  std::ostringstream out;
  out << checked << " instances, copies = N x solutions on all (";
  bool first = true;
  for (const auto& [k, v] : by_kind) {
    out << (first ? "" : ", ") << k << ' ' << v;
    first = false;
  }
  out << ')';
  return {true, out.str()};
}

Outcome bowtie_discriminator() {
  const auto g = bowtie_graph();
  const CycleVector c1{1, 1, 1, 1, 1, 1}, c2{1, 1, 1, -1, -1, -1}, tri{1, 1, 1, 0, 0, 0};
  if (!in_cycle_space(c1, g) || !in_cycle_space(c2, g) || !in_cycle_space(tri, g)) {
    return {false, "a cycle vector was rejected by in_cycle_space"};
  }
  const auto check = integrally_generates({c1, c2}, g);
  if (check.ok || check.reason != "bad-determinant" || std::abs(check.determinant) != 2) {
    return {false, "pair check returned ok=" + std::to_string(check.ok) + " reason=" +
                       check.reason + " det=" + std::to_string(check.determinant)};
  }
  const auto trees = spanning_trees(g);
  for (const auto& t : trees) {
    if (!integrally_generates(fundamental_cycles(g, t), g)) {
      return {false, "a fundamental basis failed integral generation"};
    }
  }
  return {true, "C1, C2 and (1,1,1,0,0,0) in cycle space; {C1,C2} bad-determinant with |det| 2; "
                "all " + std::to_string(trees.size()) + " fundamental bases generate"};
}

Outcome strong_two_products() {
  const auto g = two_products_graph();
  const auto sys = two_products_system();
  const auto tree = make_spanning_tree(g, {0, 1, 2});
  const bool strong = is_strong_representation(g, tree, sys);
  const auto h = variable_count(sys) - equation_count(sys) + 1;
  const bool pass = strong && g.vertex_count() == 4 && g.arc_count() == 5 && h == 4;
  std::ostringstream out;
  out << "strong=" << strong << " vertices=" << g.vertex_count() << " arcs=" << g.arc_count()
      << " h=m-k+1=" << h;
  return {pass, out.str()};
}

// Checks one arc set against the reduction contract; empty string on success.
std::string check_reduction(const ArcRemovalSet& e, const DrawnInstance& inst, const char* which) {
  const auto mask = e.mask(inst.blowup);
  if (count_copies(inst.blowup, &mask) != 0) return std::string(which) + " set misses a copy";
  RemovalReport report;
  try {
    report = pigeonhole_reduce(e, inst.blowup);
  } catch (const ContractViolation& err) {
    return std::string(which) + ": " + err.what();
  }
  const std::size_t n = inst.group.order(), m = inst.sets.size();
  for (const auto& b : report.removed) {
    if (b.size() * n > m * e.size()) return std::string(which) + ": |B_i| > m|E|/N";
  }
  if (oracle::count_solutions(inst.group, report.reduced, inst.system) != 0 ||
      report.residual_solutions != 0) {
    return std::string(which) + ": a solution survives";
  }
  return {};
}

Outcome removal_soundness() {
  const auto groups = small_groups();
  SplitMix64 rng(77);
  std::size_t checked = 0, with_solutions = 0;
  for (std::size_t i = 0; i < 150; ++i) {
    const auto inst = draw_instance(rng, groups, i % 3, 4);
    const auto greedy = greedy_arc_hitting_set(inst.blowup);
    const auto randomized = random_arc_hitting_set(inst.blowup, rng.next());
    for (const auto& [e, which] : {std::pair{&greedy, "greedy"}, std::pair{&randomized, "random"}}) {
      if (auto err = check_reduction(*e, inst, which); !err.empty()) {
        return {false, err + " on " + describe(inst.group, inst.system, inst.sets)};
      }
    }
    ++checked;
    with_solutions += oracle::count_solutions(inst.group, inst.sets, inst.system) > 0;
  }
  return {true, std::to_string(checked) + " instances (" + std::to_string(with_solutions) +
                    " with solutions), greedy and random E: residual 0, |B_i| <= m|E|/N"};
}

Outcome oracle_dominance() {
  const auto groups = small_groups();
  SplitMix64 rng(5150);
  std::size_t checked = 0, strict = 0;
  MinRemovalOptions options;
  while (checked < 120) {
    auto inst = draw_instance(rng, groups, checked % 3, 4);
    std::size_t total = 0;
    for (const auto& s : inst.sets) total += s.size();
    if (total > options.max_total_elements) continue;

    const auto result = exact_min_removal(inst.group, inst.sets, inst.system, options);
    if (!result.optimal) continue;
    const auto e = greedy_arc_hitting_set(inst.blowup);
    const auto report = pigeonhole_reduce(e, inst.blowup);
    std::vector<ElementSet> reduced;
    for (std::size_t i = 0; i < inst.sets.size(); ++i) {
      reduced.push_back(inst.sets[i].set_difference(result.removed[i]));
    }
    const auto label = describe(inst.group, inst.system, inst.sets);
    if (oracle::count_solutions(inst.group, reduced, inst.system) != 0) {
      return {false, "oracle removal leaves a solution on " + label};
    }
    if (result.total > report.total_removed()) {
      return {false, "oracle removes " + std::to_string(result.total) + " > pipeline " +
                         std::to_string(report.total_removed()) + " on " + label};
    }
    if (total <= 20) {
      const auto brute = oracle::min_removal(inst.sets, oracle::solutions(inst.group, inst.sets,
                                                                         inst.system));
      if (brute != result.total) {
        return {false, "oracle total " + std::to_string(result.total) + " != subset search " +
                           std::to_string(brute) + " on " + label};
      }
    }
    strict += result.total < report.total_removed();
    ++checked;
  }
  return {true, std::to_string(checked) + " instances within the cap: oracle <= pipeline (" +
                    std::to_string(strict) + " strictly), oracle sets solution-free on recount"};
}

Outcome corollary_identities() {
  const auto groups = small_groups();
  SplitMix64 rng(909);
  const auto sys = two_products_system();
  for (int i = 0; i < 60; ++i) {
    const auto& g = groups[rng.next_below(groups.size())];
    const auto sets = random_sets(rng, 5, g.order(), 0.2 + 0.6 * rng.next_double());
    const auto stat = corollary_statistic(g, sets[0], sets[1], sets[2], sets[3], sets[4]);
    const auto expected = oracle::count_solutions(g, sets, sys);
    if (stat != expected || count_solutions_system(g, sets, sys) != expected) {
      return {false, "statistic " + std::to_string(stat) + " != " + std::to_string(expected) +
                         " on " + describe(g, sys, sets)};
    }
  }
  for (std::size_t n : {9, 12, 15, 30}) {
    std::vector<Element> third;
    for (std::size_t x = (n + 2) / 3; 3 * x < 2 * n; ++x) third.push_back(static_cast<Element>(x));
    const auto g = make_cyclic(n);
    const ElementSet a(third, n);
    const auto result = product_free_removal(g, a, a);
    bool empty = true;
    for (const auto& b : result.pipeline.report.removed) empty = empty && b.empty();
    if (result.statistic != 0 || !empty || !result.certificate.holds) {
      return {false, "middle third of Z_" + std::to_string(n) + " gave statistic " +
                         std::to_string(result.statistic)};
    }
  }
  std::size_t subgroups = 0;
  const auto check_subgroup = [&](const GroupTable& g, std::vector<Element> members) {
    const auto result = small_doubling_removal(g, ElementSet(std::move(members), g.order()));
    ++subgroups;
    return result.certificate.count("(A')^2") == result.certificate.count("A'") &&
           result.certificate.holds;
  };
  const auto z12 = make_cyclic(12), z30 = make_cyclic(30), s3 = make_symmetric(3),
             d4 = make_dihedral(4);
  const bool doubling = check_subgroup(z12, {0, 3, 6, 9}) && check_subgroup(z12, {0, 4, 8}) &&
                        check_subgroup(z12, {0, 2, 4, 6, 8, 10}) &&
                        check_subgroup(z30, {0, 5, 10, 15, 20, 25}) &&
                        check_subgroup(s3, {0, 3, 4}) && check_subgroup(d4, {0, 1, 2, 3}) &&
                        check_subgroup(d4, {0, 2}) && check_subgroup(s3, {0}) &&
                        check_subgroup(z12, {0});
  if (!doubling) return {false, "a subgroup instance had |(A')^2| != |A'|"};
  return {true, "60 five-set instances match brute force; middle thirds of Z_9, Z_12, Z_15, "
                "Z_30 give statistic 0 and no removals; " + std::to_string(subgroups) +
                " subgroups keep |(A')^2| = |A'|"};
}

// Over Z2 x Z2 the bowtie with equation vectors {C1, C2} is blown up as is and
// its copies are compared with N x solutions on every choice of sets drawn
// from a small family (empty, singletons, full), plus every shared set.
Outcome order_two_breakdown() {
  const auto g = make_direct_product(make_cyclic(2), make_cyclic(2));
  const std::size_t n = g.order();
  const auto graph = bowtie_graph();
  const EquationSystem sys = make_abelian_system({{1, 1, 1, 1, 1, 1}, {1, 1, 1, -1, -1, -1}});

  std::vector<ElementSet> family{ElementSet::full(n)};
  for (Element x = 0; x < n; ++x) family.push_back(ElementSet({x}, n));
  std::vector<std::vector<ElementSet>> choices;
  std::vector<std::size_t> pick(6, 0);
  for (;;) {
    std::vector<ElementSet> sets;
    for (auto p : pick) sets.push_back(family[p]);
    choices.push_back(std::move(sets));
    std::size_t i = 0;
    while (i < 6 && ++pick[i] == family.size()) pick[i++] = 0;
    if (i == 6) break;
  }
  for (std::uint32_t bits = 1; bits < (1u << n); ++bits) {
    std::vector<Element> members;
    for (Element x = 0; x < n; ++x)
      if (bits >> x & 1) members.push_back(x);
    choices.emplace_back(6, ElementSet(members, n));
  }

  std::size_t below = 0, strict = 0;
  std::string below_example, strict_example;
  for (const auto& sets : choices) {
    const auto blowup = build_system_blowup(g, sets, graph, sys);
    const auto copies = count_copies(blowup);
    const auto n_times = n * oracle::count_solutions(g, sets, sys);
    if (copies < n_times) {
      if (below++ == 0) {
        below_example = describe(g, sys, sets) + ": copies " + std::to_string(copies) +
                        " < N x solutions " + std::to_string(n_times);
      }
    } else if (copies > n_times && strict++ == 0) {
      strict_example = describe(g, sys, sets) + ": copies " + std::to_string(copies) + " > " +
                       std::to_string(n_times);
    }
  }
  std::ostringstream out;
  out << choices.size() << " set choices searched; copies > N x solutions on " << strict
      << ", copies < N x solutions on " << below;
  if (strict) out << "; first strict: " << strict_example;
  if (below) out << "; first below: " << below_example;
  return {below == 0 && strict > 0, out.str()};
}

Outcome cli_determinism() {
  using grl::testing::run_cli;
  using grl::testing::write_spec;
  const auto seeded = write_spec(
      "ac8_seeded.json",
      R"({"group":{"type":"dihedral","n":5},"system":"x1 x2 x4^-1 x3^-1 = 1; x1 x2 x5^-1 = 1",
          "sets":[{"density":0.5},{"density":0.5},{"density":0.5},{"density":0.5},{"density":0.5}],
          "seed":17})");
  const auto single = write_spec(
      "ac8_single.json",
      R"({"group":{"type":"cyclic","n":11},"system":"x1 x2 x3 = g4",
          "sets":[{"density":0.4},{"density":0.4},{"density":0.4}]})");
  const auto sweep = write_spec(
      "ac8_sweep.json",
      R"({"group_family":"cyclic","sizes":[5,7,9],"density":0.35,"system":"x1 x2 x3 = g0",
          "trials":3,"seed":8})");
  const auto app = write_spec(
      "ac8_app.json",
      R"({"group":{"type":"cyclic","n":15},"a":{"density":0.3},"b":{"density":0.3},
          "e":{"density":0.3}})");
  const auto represent = write_spec(
      "ac8_represent.json", R"({"system":"x1 x2 x4^-1 x3^-1 = 1; x1 x2 x5^-1 = 1"})");

  const std::vector<std::string> commands{
      "count " + seeded,
      "--seed 5 count " + single,
      "--format csv --seed 5 count " + single,
      "represent " + represent,
      "verify " + seeded,
      "--seed 3 removal --pipeline " + single,
      "--seed 3 removal --exact " + single,
      "removal --sweep " + sweep,
      "--format csv --jobs 4 removal --sweep " + sweep,
      "--seed 2 app product-free " + app,
      "--seed 2 app doubling " + app,
      "--seed 2 app commuting " + app,
  };
  for (const auto& c : commands) {
    const auto first = run_cli(c), second = run_cli(c);
    if (first.exit_code != 0) {
      return {false, "'grl " + c + "' exited with " + std::to_string(first.exit_code)};
    }
    if (first.out != second.out || first.exit_code != second.exit_code) {
      return {false, "'grl " + c + "' produced different output on rerun"};
    }
  }
  const auto serial = run_cli("--format csv --jobs 1 removal --sweep " + sweep);
  const auto parallel = run_cli("--format csv --jobs 4 removal --sweep " + sweep);
  if (serial.out != parallel.out) return {false, "sweep output depends on --jobs"};
  return {true, std::to_string(commands.size()) +
                    " commands byte-identical on rerun; sweep identical for --jobs 1 and 4"};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance checks"};
  int only = 0;
  app.add_option("--criterion", only, "Run one criterion (1-8)")->check(CLI::Range(1, 8));
  CLI11_PARSE(app, argc, argv);

  const std::vector<std::function<Outcome()>> criteria{
      correspondence,       bowtie_discriminator, strong_two_products, removal_soundness,
      oracle_dominance,     corollary_identities, order_two_breakdown, cli_determinism};
  bool all = true;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    if (only && static_cast<std::size_t>(only) != i + 1) continue;
    Outcome outcome;
    try {
      outcome = criteria[i]();
    } catch (const std::exception& e) {
      outcome = {false, std::string("exception: ") + e.what()};
    }
    std::cout << "AC" << i + 1 << (outcome.pass ? " PASS: " : " FAIL: ") << outcome.summary
              << std::endl;
    all = all && outcome.pass;
  }
  return all ? EXIT_SUCCESS : EXIT_FAILURE;
}
