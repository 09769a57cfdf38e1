#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "grl/equations.hpp"
#include "grl/exact_linalg.hpp"

namespace grl {

/// One arc of a colored digraph; the color is the variable index.
struct Arc {
  std::size_t tail = 0;
  std::size_t head = 0;
  std::size_t color = 0;
  friend bool operator==(const Arc&, const Arc&) = default;
};

/// A weakly connected loopless digraph with exactly one arc per color 0..m-1.
/// Arcs are stored by color, so "arc index" and "color" coincide.
class ColoredDigraph {
 public:
  /// Throws InvalidParameter on a self-loop, a missing or repeated color, an
  /// endpoint out of range, or a disconnected graph.
  ColoredDigraph(std::size_t vertex_count, std::vector<Arc> arcs);

  std::size_t vertex_count() const noexcept { return vertex_count_; }
  std::size_t arc_count() const noexcept { return arcs_.size(); }
  const Arc& arc(std::size_t color) const { return arcs_.at(color); }
  std::span<const Arc> arcs() const noexcept { return arcs_; }

  friend bool operator==(const ColoredDigraph&, const ColoredDigraph&) = default;

 private:
  std::size_t vertex_count_;
  std::vector<Arc> arcs_;
};

/// Directed m-cycle 0 -> 1 -> ... -> m-1 -> 0, arc i colored i.
ColoredDigraph directed_cycle(std::size_t m);

/// Integer vector indexed by arc; traversal-built cycles have entries in {-1,0,1}.
using CycleVector = std::vector<int>;

/// h-1 arcs forming a spanning tree of the underlying undirected graph.
struct SpanningTree {
  std::vector<std::size_t> arcs;  // sorted
  std::size_t root = 0;
};

/// Validates that `arcs` is a spanning tree of `g` (InvalidParameter otherwise).
SpanningTree make_spanning_tree(const ColoredDigraph& g, std::vector<std::size_t> arcs,
                                std::size_t root = 0);

/// Breadth-first spanning tree from `root`, scanning arcs in color order.
SpanningTree bfs_spanning_tree(const ColoredDigraph& g, std::size_t root = 0);

/// Every spanning tree of g, arc sets in lexicographic order. Capped at 16 arcs.
std::vector<SpanningTree> spanning_trees(const ColoredDigraph& g);

/// Column for arc (u, v) has -1 at row u and +1 at row v.
IntMatrix incidence_matrix(const ColoredDigraph& g);

/// A closed walk: each step uses `arc` forwards (+1) or backwards (-1).
struct WalkStep {
  std::size_t arc = 0;
  int direction = 1;
  friend bool operator==(const WalkStep&, const WalkStep&) = default;
};
using ClosedWalk = std::vector<WalkStep>;

/// For each non-tree arc (in color order): that arc forwards, then the tree
/// path from its head back to its tail.
std::vector<ClosedWalk> fundamental_walks(const ColoredDigraph& g, const SpanningTree& t);

/// Characteristic vectors of fundamental_walks(); +1 on the non-tree arc.
std::vector<CycleVector> fundamental_cycles(const ColoredDigraph& g, const SpanningTree& t);

CycleVector walk_vector(const ClosedWalk& walk, std::size_t arc_count);

bool in_cycle_space(std::span<const int> v, const ColoredDigraph& g);

/// Outcome of integrally_generates(); `reason` is empty on success.
struct GenerationCheck {
  bool ok = false;
  std::string reason;  // "not-in-space" | "wrong-rank" | "bad-determinant"
  std::int64_t determinant = 0;  // of the maximal nonsingular submatrix examined
  explicit operator bool() const noexcept { return ok; }
};

/// True iff the vectors lie in the cycle space, form a basis of it, and a
/// maximal nonsingular square submatrix has determinant +-1.
GenerationCheck integrally_generates(const std::vector<CycleVector>& vectors,
                                     const ColoredDigraph& g);

/// Brute-force form of the same criterion: every maximal square submatrix has
/// determinant in {0, +1, -1}. Exponential in m; meant for cross-checks.
bool all_maximal_minors_unimodular(const std::vector<CycleVector>& vectors);

/// The system's characteristic vectors integrally generate the cycle space of g.
GenerationCheck is_graph_representation(const ColoredDigraph& g, const EquationSystem& sys);

/// For each equation, the fundamental walk realizing its word (index into
/// fundamental_walks), or nullopt when t does not strongly represent sys.
std::optional<std::vector<std::size_t>> match_strong_representation(const ColoredDigraph& g,
                                                                    const SpanningTree& t,
                                                                    const OrderedSystem& sys);

/// The fundamental cycles of t are exactly the equations' words, read as
/// closed walks (up to rotation and reversal).
bool is_strong_representation(const ColoredDigraph& g, const SpanningTree& t,
                              const OrderedSystem& sys);

inline constexpr std::size_t kMaxSearchVariables = 10;

/// Calls `visit` on every graph with m - k + 1 vertices (up to vertex
/// relabeling, in a fixed deterministic order) whose cycle space contains the
/// system's characteristic vectors. Stops when `visit` returns false. Only
/// graphs that are actual representations are passed through.
void for_each_representation(const AbelianSystem& sys,
                             const std::function<bool(const ColoredDigraph&)>& visit);

/// First graph representation found, with vertices relabeled in order of first
/// appearance. nullopt if none exists or m - k + 1 > max_vertices.
std::optional<ColoredDigraph> search_representation(const AbelianSystem& sys,
                                                    std::size_t max_vertices);

struct StrongRepresentation {
  ColoredDigraph graph;
  SpanningTree tree;
};

/// First (graph, tree) pair strongly representing the system.
std::optional<StrongRepresentation> search_strong_representation(const OrderedSystem& sys,
                                                                 std::size_t max_vertices);

/// The four-vertex, five-arc graph realizing two_products_system():
/// x1: 0->1, x2: 1->2, x3: 0->3, x4: 3->2, x5: 0->2.
ColoredDigraph two_products_graph();
/// Tree {x1, x2, x3} of two_products_graph().
SpanningTree two_products_tree(const ColoredDigraph& g);

/// Two directed triangles sharing vertex 0: e0: 0->1, e1: 1->2, e2: 2->0,
/// e3: 0->3, e4: 3->4, e5: 4->0.
ColoredDigraph bowtie_graph();

/// {"vertices": h, "arcs": [{"tail":0,"head":1,"color":0}, ...]}
ColoredDigraph graph_from_json(const nlohmann::json& j);
nlohmann::json to_json(const ColoredDigraph& g);

}  // namespace grl
