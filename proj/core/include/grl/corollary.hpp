#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "grl/group.hpp"
#include "grl/removal.hpp"

namespace grl {

/// What holds after removal, recomputed from the reduced sets.
struct ApplicationCertificate {
  std::string property;
  bool holds = false;
  std::vector<std::pair<std::string, std::uint64_t>> counts;  // named witness sizes

  std::uint64_t count(const std::string& name) const;
};

/// Outcome of one application of the two-products system.
///
/// The five sets are (A, B, C, D, E) in the order of the variables x1..x5 of
/// two_products_system(). `statistic` is sum_{g in E} r_{A,B}(g) r_{C,D}(g).
struct ApplicationResult {
  std::string application;
  std::uint64_t statistic = 0;
  double normalized_statistic = 0.0;  // statistic / N^3
  std::vector<ElementSet> inputs;
  PipelineResult pipeline;
  ApplicationCertificate certificate;
};

/// The four-vertex graph and tree every application blows up, checked once to
/// strongly represent two_products_system().
const Representation& two_products_representation();

/// Sets (a, a, a, a, e). A' is the intersection of the four reduced copies of
/// a and E' the reduced e; certifies (A')^2 and E' are disjoint.
ApplicationResult product_free_removal(const GroupTable& group, const ElementSet& a,
                                       const ElementSet& e,
                                       std::uint64_t max_copies = kDefaultMaxCopies);

/// Sets (a, a, a, a, G \ a). Reports |(A')^2| and |A'| and checks the
/// containment (A')^2 within A together with the elements removed from E.
ApplicationResult small_doubling_removal(const GroupTable& group, const ElementSet& a,
                                         std::uint64_t max_copies = kDefaultMaxCopies);

/// Sets (a, b, b, a, G), so the statistic is sum_g r_{A,B}(g) r_{B,A}(g).
/// A' = A'_1 and A'_4, B' = A'_2 and A'_3 (intersections); reports
/// |A'B' and B'A'| and checks it lies among the elements removed from G.
ApplicationResult commuting_pairs_removal(const GroupTable& group, const ElementSet& a,
                                          const ElementSet& b,
                                          std::uint64_t max_copies = kDefaultMaxCopies);

/// The product set XY = {xy : x in X, y in Y}.
ElementSet product_set(const GroupTable& group, const ElementSet& x, const ElementSet& y);

nlohmann::json to_json(const ApplicationResult& r);

}  // namespace grl
