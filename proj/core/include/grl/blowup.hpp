#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "grl/cycle_space.hpp"
#include "grl/equations.hpp"
#include "grl/group.hpp"

namespace grl {

inline constexpr std::uint64_t kDefaultMaxArcs = 10'000'000;

/// Arcs are numbered color by color; within color i, by tail element g and then
/// by the position of the label a in A_i.
using ArcId = std::uint64_t;

struct ArcInfo {
  std::size_t color = 0;
  Element label = 0;         // a, the arc is labeled [a, color]
  Element tail_element = 0;  // g
  Element head_element = 0;  // g * a * twist(color)
  std::size_t tail_vertex = 0;  // packed g * h + u
  std::size_t head_vertex = 0;
};

/// Per-arc removal flags, indexed by ArcId.
using ArcMask = std::vector<bool>;

/// The blow-up H_0 of a colored base graph H by sets A_1..A_m over a group G.
///
/// Vertices are pairs (g, u), packed as g * h + u. For every base arc (u, v) of
/// color i, every g in G and every a in A_i there is an arc (g, u) -> (g a t_i, v)
/// labeled [a, i], where t_i is the color's twist (the identity except on the
/// closing arc of a single-equation cycle, where it is rhs^-1). Arcs are
/// implicit: everything is computed from the group table.
class BlowupGraph {
 public:
  BlowupGraph(GroupTable group, ColoredDigraph base, std::vector<ElementSet> sets,
              std::vector<Element> twists, std::optional<EquationSystem> system,
              std::uint64_t max_arcs = kDefaultMaxArcs);

  const GroupTable& group() const noexcept { return group_; }
  const ColoredDigraph& base() const noexcept { return base_; }
  std::span<const ElementSet> sets() const noexcept { return sets_; }
  const std::optional<EquationSystem>& system() const noexcept { return system_; }

  std::size_t group_order() const noexcept { return group_.order(); }
  std::size_t color_count() const noexcept { return base_.arc_count(); }
  std::size_t vertex_count() const noexcept { return base_.vertex_count() * group_.order(); }
  std::uint64_t arc_count() const noexcept { return offsets_.back(); }

  std::size_t pack(Element g, std::size_t u) const noexcept {
    return static_cast<std::size_t>(g) * base_.vertex_count() + u;
  }
  Element twist(std::size_t color) const { return twists_.at(color); }

  /// Position of a in A_color, or -1.
  int label_position(std::size_t color, Element a) const { return position_[color][a]; }

  ArcId arc_id(std::size_t color, Element tail_element, std::size_t label_position) const {
    return offsets_[color] +
           static_cast<std::uint64_t>(tail_element) * sets_[color].size() + label_position;
  }
  /// The arc of `color` leaving (tail_element, tail(color)) with label a, if any.
  std::optional<ArcId> find_arc(std::size_t color, Element tail_element, Element a) const;
  ArcInfo arc(ArcId id) const;

  /// Number of arcs labeled [a, color]: N if a is in A_color, else 0.
  std::uint64_t label_multiplicity(std::size_t color, Element a) const {
    return label_position(color, a) >= 0 ? group_.order() : 0;
  }

 private:
  GroupTable group_;
  ColoredDigraph base_;
  std::vector<ElementSet> sets_;
  std::vector<Element> twists_;
  std::optional<EquationSystem> system_;
  std::vector<std::vector<int>> position_;
  std::vector<std::uint64_t> offsets_;
};

/// H_0 over the directed m-cycle for x_1 ... x_m = g: layer i -> i+1 by A_i,
/// and the closing arc from layer m to layer 1 multiplies by a_m g^-1.
BlowupGraph build_cycle_blowup(const GroupTable& group, std::vector<ElementSet> sets, Element g,
                               std::uint64_t max_arcs = kDefaultMaxArcs);

/// H_0 over a colored base graph; `system`, when given, is what copies are
/// checked against and must have one variable per arc.
BlowupGraph build_system_blowup(const GroupTable& group, std::vector<ElementSet> sets,
                                const ColoredDigraph& base,
                                std::optional<EquationSystem> system = std::nullopt,
                                std::uint64_t max_arcs = kDefaultMaxArcs);

/// A color-preserving copy of the base graph: base vertex u maps to (phi[u], u).
struct ColoredCopy {
  std::vector<Element> phi;
  std::vector<Element> labels;  // label of the copy's arc of each color
  friend bool operator==(const ColoredCopy&, const ColoredCopy&) = default;
};

/// The copy with phi(root) = z built from a solution by walking `tree`
/// (default: breadth-first tree from vertex 0). Throws ContractViolation when
/// the labels do not close up into a copy or do not satisfy the attached system.
ColoredCopy solution_to_copy(std::span<const Element> solution, Element z,
                             const BlowupGraph& blowup,
                             const std::optional<SpanningTree>& tree = std::nullopt);

/// Reads the labels x_i = phi(u)^-1 phi(v) t_i^-1 off a copy and checks them
/// against the attached system. For every equation word that is a closed walk
/// in the base graph, also checks that the vertex elements telescope to 1.
std::vector<Element> copy_to_solution(const ColoredCopy& copy, const BlowupGraph& blowup);

/// ArcId of each colored arc of the copy, in color order.
std::vector<ArcId> copy_arcs(const ColoredCopy& copy, const BlowupGraph& blowup);

/// Number of color-preserving copies of the base graph avoiding `removed`,
/// counted by backtracking over base vertices in spanning-tree order.
std::uint64_t count_copies(const BlowupGraph& blowup, const ArcMask* removed = nullptr);

/// Visits every copy in the same order count_copies() explores them.
void for_each_copy(const BlowupGraph& blowup, const std::function<bool(const ColoredCopy&)>& visit,
                   const ArcMask* removed = nullptr);

/// Graphviz rendering; refuses blow-ups with more than 100 vertices.
std::string to_dot(const BlowupGraph& blowup);

}  // namespace grl
