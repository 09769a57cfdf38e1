#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "grl/equations.hpp"
#include "grl/group.hpp"

namespace grl {

/// r_{A,B}(g) = |{(a, b) in A x B : ab = g}| for every g.
struct RepresentationFunction {
  std::vector<std::uint64_t> values;
  std::uint64_t total() const;
  std::uint64_t operator()(Element g) const { return values.at(g); }
};

RepresentationFunction representation_function(const GroupTable& group, const ElementSet& a,
                                               const ElementSet& b);

enum class CountMethod {
  kFast,   // convolution folding (single equations) / propagating backtracking (systems)
  kNaive,  // plain m-fold enumeration; the reference oracle
};

/// Number of (x_1..x_m) in A_1 x ... x A_m with x_1 x_2 ... x_m = g.
std::uint64_t count_solutions_single(const GroupTable& group, std::span<const ElementSet> sets,
                                     Element g, CountMethod method = CountMethod::kFast);

/// Number of assignments x_i in A_i satisfying every equation of the system.
/// Additive systems require an abelian group.
std::uint64_t count_solutions_system(const GroupTable& group, std::span<const ElementSet> sets,
                                     const EquationSystem& sys,
                                     CountMethod method = CountMethod::kFast);

/// Dispatches on the system kind (single equations use count_solutions_single).
std::uint64_t count_solutions(const GroupTable& group, std::span<const ElementSet> sets,
                              const EquationSystem& sys, CountMethod method = CountMethod::kFast);

/// Calls `visit` with each solution (x_1..x_m), in a deterministic order;
/// stops early when it returns false.
void enumerate_solutions(const GroupTable& group, std::span<const ElementSet> sets,
                         const EquationSystem& sys,
                         const std::function<bool(std::span<const Element>)>& visit);

/// Product x_{s(1)}^{e} ... x_{s(r)}^{e}, left to right.
Element evaluate_word(const GroupTable& group, std::span<const Term> word,
                      std::span<const Element> assignment);

bool satisfies(const GroupTable& group, const EquationSystem& sys,
               std::span<const Element> assignment);

/// sum_{g in E} r_{A,B}(g) r_{C,D}(g), unnormalized.
std::uint64_t corollary_statistic(const GroupTable& group, const ElementSet& a,
                                  const ElementSet& b, const ElementSet& c, const ElementSet& d,
                                  const ElementSet& e);

}  // namespace grl
