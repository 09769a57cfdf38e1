#include "grl/corollary.hpp"

#include <cmath>

#include "grl/error.hpp"
#include "grl/solutions.hpp"

namespace grl {

std::uint64_t ApplicationCertificate::count(const std::string& name) const {
  for (const auto& [key, value] : counts) {
    if (key == name) return value;
  }
  throw InvalidParameter("certificate has no count named '" + name + "'");
}

const Representation& two_products_representation() {
  static const Representation rep = [] {
    auto graph = two_products_graph();
    auto tree = two_products_tree(graph);
    if (!is_strong_representation(graph, tree, two_products_system())) {
      throw ContractViolation("the fixed four-vertex graph no longer represents its system");
    }
    return Representation{std::move(graph), std::move(tree)};
  }();
  return rep;
}

ElementSet product_set(const GroupTable& group, const ElementSet& x, const ElementSet& y) {
  std::vector<Element> out;
  for (auto a : x.members()) {
    for (auto b : y.members()) out.push_back(group.op(a, b));
  }
  return ElementSet(std::move(out), group.order());
}

namespace {

void check_sets(const GroupTable& group, std::initializer_list<const ElementSet*> sets) {
  for (const auto* s : sets) {
    if (s->group_order() != group.order()) {
      throw InvalidParameter("set lives in a group of order " + std::to_string(s->group_order()) +
                             ", expected " + std::to_string(group.order()));
    }
  }
}

ApplicationResult run_application(std::string name, const GroupTable& group,
                                  std::vector<ElementSet> sets, std::uint64_t max_copies) {
  const auto& rep = two_products_representation();
  ApplicationResult r;
  r.application = std::move(name);
  r.statistic = corollary_statistic(group, sets[0], sets[1], sets[2], sets[3], sets[4]);
  r.normalized_statistic = static_cast<double>(r.statistic) / std::pow(group.order(), 3.0);
  r.inputs = sets;
  Instance inst{group, std::move(sets), two_products_system(), rep.graph, rep.tree, 0};
  r.pipeline = run_pipeline(inst, max_copies);
  return r;
}

ElementSet intersect(const std::vector<ElementSet>& sets, std::initializer_list<std::size_t> idx) {
  ElementSet out = sets[*idx.begin()];
  for (auto i : idx) out = out.set_intersection(sets[i]);
  return out;
}

}  // namespace

ApplicationResult product_free_removal(const GroupTable& group, const ElementSet& a,
                                       const ElementSet& e, std::uint64_t max_copies) {
  check_sets(group, {&a, &e});
  auto r = run_application("product-free", group, {a, a, a, a, e}, max_copies);
  const auto& reduced = r.pipeline.report.reduced;
  const auto a_prime = intersect(reduced, {0, 1, 2, 3});
  const auto& e_prime = reduced[4];
  const auto hits = product_set(group, a_prime, a_prime).set_intersection(e_prime);
  r.certificate = {"(A')^2 and E' are disjoint",
                   hits.empty(),
                   {{"A'", a_prime.size()}, {"E'", e_prime.size()}, {"(A')^2 in E'", hits.size()}}};
  return r;
}

ApplicationResult small_doubling_removal(const GroupTable& group, const ElementSet& a,
                                         std::uint64_t max_copies) {
  check_sets(group, {&a});
  const auto e = a.complement();
  auto r = run_application("doubling", group, {a, a, a, a, e}, max_copies);
  const auto& reduced = r.pipeline.report.reduced;
  const auto a_prime = intersect(reduced, {0, 1, 2, 3});
  const auto squares = product_set(group, a_prime, a_prime);
  const auto allowed = a.set_union(e.set_difference(reduced[4]));
  const auto outside = squares.set_difference(allowed);
  r.certificate = {"(A')^2 within A and the elements removed from E",
                   outside.empty(),
                   {{"A'", a_prime.size()},
                    {"(A')^2", squares.size()},
                    {"E removed", e.size() - reduced[4].size()},
                    {"(A')^2 outside", outside.size()}}};
  return r;
}

ApplicationResult commuting_pairs_removal(const GroupTable& group, const ElementSet& a,
                                          const ElementSet& b, std::uint64_t max_copies) {
  check_sets(group, {&a, &b});
  const auto all = ElementSet::full(group.order());
  auto r = run_application("commuting", group, {a, b, b, a, all}, max_copies);
  const auto& reduced = r.pipeline.report.reduced;
  const auto a_prime = intersect(reduced, {0, 3});
  const auto b_prime = intersect(reduced, {1, 2});
  const auto both =
      product_set(group, a_prime, b_prime).set_intersection(product_set(group, b_prime, a_prime));
  const auto outside = both.set_intersection(reduced[4]);
  r.certificate = {"A'B' and B'A' meet only in elements removed from G",
                   outside.empty(),
                   {{"A'", a_prime.size()},
                    {"B'", b_prime.size()},
                    {"A'B' and B'A'", both.size()},
                    {"G removed", all.size() - reduced[4].size()}}};
  return r;
}

nlohmann::json to_json(const ApplicationResult& r) {
  auto inputs = nlohmann::json::array();
  for (const auto& s : r.inputs) inputs.push_back(to_json(s));
  auto counts = nlohmann::json::object();
  for (const auto& [key, value] : r.certificate.counts) counts[key] = value;
  return {{"application", r.application},
          {"statistic", r.statistic},
          {"normalized_statistic", r.normalized_statistic},
          {"sets", std::move(inputs)},
          {"solutions", r.pipeline.solutions},
          {"copies", r.pipeline.copies},
          {"removal", to_json(r.pipeline.report)},
          {"certificate",
           {{"property", r.certificate.property},
            {"holds", r.certificate.holds},
            {"counts", std::move(counts)}}}};
}

}  // namespace grl
