#include "grl/cycle_space.hpp"

#include <algorithm>
#include <numeric>
#include <queue>

#include "grl/error.hpp"

namespace grl {

namespace {

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent_[b] = a;
    return true;
  }

 private:
  std::vector<std::size_t> parent_;
};

bool connected(std::size_t vertex_count, std::span<const Arc> arcs) {
  if (vertex_count == 0) return false;
  DisjointSets ds(vertex_count);
  std::size_t components = vertex_count;
  for (const auto& a : arcs)
    if (ds.unite(a.tail, a.head)) --components;
  return components == 1;
}

bool is_spanning_tree(const ColoredDigraph& g, std::span<const std::size_t> arcs) {
  if (arcs.size() + 1 != g.vertex_count()) return false;
  DisjointSets ds(g.vertex_count());
  for (auto idx : arcs) {
    if (idx >= g.arc_count()) return false;
    if (!ds.unite(g.arc(idx).tail, g.arc(idx).head)) return false;
  }
  return true;
}

}  // namespace

ColoredDigraph::ColoredDigraph(std::size_t vertex_count, std::vector<Arc> arcs)
    : vertex_count_(vertex_count), arcs_(std::move(arcs)) {
  if (vertex_count_ == 0) throw InvalidParameter("a graph needs at least one vertex");
  std::sort(arcs_.begin(), arcs_.end(),
            [](const Arc& a, const Arc& b) { return a.color < b.color; });
  for (std::size_t i = 0; i < arcs_.size(); ++i) {
    const auto& a = arcs_[i];
    if (a.color != i) {
      throw InvalidParameter("arc colors must be 0..m-1, each used exactly once");
    }
    if (a.tail >= vertex_count_ || a.head >= vertex_count_) {
      throw InvalidParameter("arc endpoint out of range");
    }
    if (a.tail == a.head) throw InvalidParameter("self-loops are not allowed");
  }
  if (!connected(vertex_count_, arcs_)) throw InvalidParameter("graph is not weakly connected");
}

ColoredDigraph directed_cycle(std::size_t m) {
  if (m < 2) throw InvalidParameter("a directed cycle needs at least two arcs");
  std::vector<Arc> arcs;
  for (std::size_t i = 0; i < m; ++i) arcs.push_back(Arc{i, (i + 1) % m, i});
  return ColoredDigraph(m, std::move(arcs));
}

SpanningTree make_spanning_tree(const ColoredDigraph& g, std::vector<std::size_t> arcs,
                                std::size_t root) {
  std::sort(arcs.begin(), arcs.end());
  if (root >= g.vertex_count()) throw InvalidParameter("tree root out of range");
  if (!is_spanning_tree(g, arcs)) throw InvalidParameter("arcs do not form a spanning tree");
  return SpanningTree{std::move(arcs), root};
}

SpanningTree bfs_spanning_tree(const ColoredDigraph& g, std::size_t root) {
  if (root >= g.vertex_count()) throw InvalidParameter("tree root out of range");
  std::vector<bool> seen(g.vertex_count(), false);
  std::vector<std::size_t> tree;
  std::queue<std::size_t> q;
  q.push(root);
  seen[root] = true;
  while (!q.empty()) {
    const auto u = q.front();
    q.pop();
    for (const auto& a : g.arcs()) {
      if (a.tail != u && a.head != u) continue;
      const auto v = a.tail == u ? a.head : a.tail;
      if (seen[v]) continue;
      seen[v] = true;
      tree.push_back(a.color);
      q.push(v);
    }
  }
  std::sort(tree.begin(), tree.end());
  return SpanningTree{std::move(tree), root};
}

std::vector<SpanningTree> spanning_trees(const ColoredDigraph& g) {
  const std::size_t m = g.arc_count(), size = g.vertex_count() - 1;
  if (m > 16) throw SizeLimit("spanning tree enumeration is capped at 16 arcs");
  std::vector<SpanningTree> out;
  std::vector<std::size_t> pick(size);
  for (std::size_t i = 0; i < size; ++i) pick[i] = i;
  for (;;) {
    if (is_spanning_tree(g, pick)) out.push_back({pick, 0});
    // Next combination in lexicographic order.
    std::size_t i = size;
    while (i > 0 && pick[i - 1] == m - size + i - 1) --i;
    if (i == 0) break;
    ++pick[i - 1];
    for (std::size_t j = i; j < size; ++j) pick[j] = pick[j - 1] + 1;
  }
  return out;
}

IntMatrix incidence_matrix(const ColoredDigraph& g) {
  IntMatrix b(g.vertex_count(), g.arc_count());
  for (const auto& a : g.arcs()) {
    b(a.tail, a.color) = -1;
    b(a.head, a.color) = 1;
  }
  return b;
}

std::vector<ClosedWalk> fundamental_walks(const ColoredDigraph& g, const SpanningTree& t) {
  const std::size_t h = g.vertex_count();
  std::vector<bool> in_tree(g.arc_count(), false);
  for (auto idx : t.arcs) in_tree.at(idx) = true;

  // Parent arc and depth of every vertex in the rooted tree.
  constexpr auto kNone = static_cast<std::size_t>(-1);
  std::vector<std::size_t> parent_arc(h, kNone), parent(h, kNone), depth(h, 0);
  std::vector<bool> seen(h, false);
  std::queue<std::size_t> q;
  q.push(t.root);
  seen[t.root] = true;
  while (!q.empty()) {
    const auto u = q.front();
    q.pop();
    for (auto idx : t.arcs) {
      const auto& a = g.arc(idx);
      if (a.tail != u && a.head != u) continue;
      const auto v = a.tail == u ? a.head : a.tail;
      if (seen[v]) continue;
      seen[v] = true;
      parent[v] = u;
      parent_arc[v] = idx;
      depth[v] = depth[u] + 1;
      q.push(v);
    }
  }
  if (std::find(seen.begin(), seen.end(), false) != seen.end()) {
    throw InvalidParameter("tree does not span the graph");
  }

  // Step from child c up to its parent.
  const auto up_step = [&](std::size_t c) {
    const auto& a = g.arc(parent_arc[c]);
    return WalkStep{a.color, a.tail == c ? 1 : -1};
  };

  std::vector<ClosedWalk> walks;
  for (const auto& a : g.arcs()) {
    if (in_tree[a.color]) continue;
    ClosedWalk walk{WalkStep{a.color, 1}};
    // Tree path from a.head back to a.tail.
    std::size_t x = a.head, y = a.tail;
    ClosedWalk down;  // built from the tail side, reversed at the end
    while (depth[x] > depth[y]) {
      walk.push_back(up_step(x));
      x = parent[x];
    }
    while (depth[y] > depth[x]) {
      auto s = up_step(y);
      down.push_back(WalkStep{s.arc, -s.direction});
      y = parent[y];
    }
    while (x != y) {
      walk.push_back(up_step(x));
      x = parent[x];
      auto s = up_step(y);
      down.push_back(WalkStep{s.arc, -s.direction});
      y = parent[y];
    }
    walk.insert(walk.end(), down.rbegin(), down.rend());
    walks.push_back(std::move(walk));
  }
  return walks;
}

CycleVector walk_vector(const ClosedWalk& walk, std::size_t arc_count) {
  CycleVector v(arc_count, 0);
  for (const auto& s : walk) v.at(s.arc) += s.direction;
  return v;
}

std::vector<CycleVector> fundamental_cycles(const ColoredDigraph& g, const SpanningTree& t) {
  std::vector<CycleVector> out;
  for (const auto& w : fundamental_walks(g, t)) out.push_back(walk_vector(w, g.arc_count()));
  return out;
}

bool in_cycle_space(std::span<const int> v, const ColoredDigraph& g) {
  if (v.size() != g.arc_count()) {
    throw InvalidParameter("vector length " + std::to_string(v.size()) + " does not match " +
                           std::to_string(g.arc_count()) + " arcs");
  }
  std::vector<std::int64_t> wide(v.begin(), v.end());
  const auto image = multiply(incidence_matrix(g), wide);
  return std::all_of(image.begin(), image.end(), [](std::int64_t x) { return x == 0; });
}

GenerationCheck integrally_generates(const std::vector<CycleVector>& vectors,
                                     const ColoredDigraph& g) {
  for (const auto& v : vectors) {
    if (!in_cycle_space(v, g)) return {false, "not-in-space", 0};
  }
  const std::size_t dim = g.arc_count() + 1 - g.vertex_count();
  if (vectors.size() != dim) return {false, "wrong-rank", 0};
  if (dim == 0) return {true, "", 1};
  const auto mat = IntMatrix::from_rows(vectors, g.arc_count());
  const auto ech = bareiss_echelon(mat);
  if (ech.rank != dim) return {false, "wrong-rank", 0};
  const auto det = determinant(mat.select_columns(ech.pivot_columns));
  if (det == 1 || det == -1) return {true, "", det};
  return {false, "bad-determinant", det};
}

bool all_maximal_minors_unimodular(const std::vector<CycleVector>& vectors) {
  if (vectors.empty()) return true;
  const std::size_t k = vectors.size(), m = vectors.front().size();
  if (k > m) return false;
  const auto mat = IntMatrix::from_rows(vectors, m);
  std::vector<bool> pick(m, false);
  std::fill(pick.begin(), pick.begin() + static_cast<std::ptrdiff_t>(k), true);
  do {
    std::vector<std::size_t> cols;
    for (std::size_t j = 0; j < m; ++j)
      if (pick[j]) cols.push_back(j);
    const auto det = determinant(mat.select_columns(cols));
    if (det > 1 || det < -1) return false;
  } while (std::prev_permutation(pick.begin(), pick.end()));
  return true;
}

GenerationCheck is_graph_representation(const ColoredDigraph& g, const EquationSystem& sys) {
  if (variable_count(sys) != g.arc_count()) {
    throw InvalidParameter("graph has " + std::to_string(g.arc_count()) + " arcs but system has " +
                           std::to_string(variable_count(sys)) + " variables");
  }
  return integrally_generates(characteristic_vectors(sys).to_rows(), g);
}

namespace {

bool same_cycle(const ClosedWalk& walk, const std::vector<Term>& word) {
  const std::size_t n = walk.size();
  if (word.size() != n) return false;
  for (int reversed = 0; reversed < 2; ++reversed) {
    for (std::size_t r = 0; r < n; ++r) {
      bool ok = true;
      for (std::size_t i = 0; i < n && ok; ++i) {
        const auto& s = walk[(i + r) % n];
        const auto& t = reversed ? word[n - 1 - i] : word[i];
        const int dir = reversed ? -t.exponent : t.exponent;
        ok = s.arc == t.var && s.direction == dir;
      }
      if (ok) return true;
    }
  }
  return false;
}

}  // namespace

std::optional<std::vector<std::size_t>> match_strong_representation(const ColoredDigraph& g,
                                                                    const SpanningTree& t,
                                                                    const OrderedSystem& sys) {
  if (sys.m != g.arc_count()) {
    throw InvalidParameter("graph has " + std::to_string(g.arc_count()) + " arcs but system has " +
                           std::to_string(sys.m) + " variables");
  }
  if (!is_spanning_tree(g, t.arcs)) throw InvalidParameter("tree does not span the graph");
  const auto walks = fundamental_walks(g, t);
  if (walks.size() != sys.k) return std::nullopt;

  std::vector<std::size_t> match(sys.k);
  std::vector<bool> used(walks.size(), false);
  for (std::size_t i = 0; i < sys.k; ++i) {
    bool found = false;
    for (std::size_t w = 0; w < walks.size() && !found; ++w) {
      if (!used[w] && same_cycle(walks[w], sys.words[i])) {
        used[w] = true;
        match[i] = w;
        found = true;
      }
    }
    if (!found) return std::nullopt;
  }

  // Each equation then owns a variable absent from every other equation.
  const auto chars = characteristic_vectors(sys);
  for (std::size_t i = 0; i < sys.k; ++i) {
    bool has_private = false;
    for (std::size_t j = 0; j < sys.m && !has_private; ++j) {
      if (chars(i, j) == 0) continue;
      bool elsewhere = false;
      for (std::size_t o = 0; o < sys.k && !elsewhere; ++o) elsewhere = o != i && chars(o, j) != 0;
      has_private = !elsewhere;
    }
    if (!has_private) {
      throw ContractViolation("strongly represented equation " + std::to_string(i + 1) +
                              " has no private variable");
    }
  }
  return match;
}

bool is_strong_representation(const ColoredDigraph& g, const SpanningTree& t,
                              const OrderedSystem& sys) {
  return match_strong_representation(g, t, sys).has_value();
}

// --- representation search -------------------------------------------------
//
// Row u of an incidence matrix (the "star" of vertex u) is orthogonal to every
// cycle vector, so a representation is a choice of h stars from
//   { b in {-1,0,1}^m \ {0} : E b = 0 }
// that covers each arc's tail slot (-1) and head slot (+1) exactly once.
// That exact cover is searched depth-first, always branching on the lowest
// uncovered slot, which visits each graph once up to vertex relabeling.

namespace {

struct Star {
  std::uint32_t tails = 0;  // bit j: arc j leaves this vertex
  std::uint32_t heads = 0;  // bit j: arc j enters this vertex
};

class RepresentationSearch {
 public:
  RepresentationSearch(const AbelianSystem& sys,
                       const std::function<bool(const ColoredDigraph&)>& visit)
      : sys_(sys), visit_(visit), m_(sys.m), h_(sys.m - sys.k + 1) {
    full_ = m_ == 32 ? ~std::uint32_t{0} : (std::uint32_t{1} << m_) - 1;
    enumerate_stars();
  }

  void run() {
    chosen_.clear();
    dfs(0, 0);
  }

 private:
  void enumerate_stars() {
    std::vector<int> b(m_, -1);
    for (;;) {
      bool nonzero = false, orthogonal = true;
      for (int x : b) nonzero = nonzero || x != 0;
      for (std::size_t i = 0; i < sys_.k && orthogonal; ++i) {
        int dot = 0;
        for (std::size_t j = 0; j < m_; ++j) dot += sys_.epsilon[i][j] * b[j];
        orthogonal = dot == 0;
      }
      if (nonzero && orthogonal) {
        Star s;
        for (std::size_t j = 0; j < m_; ++j) {
          if (b[j] < 0) s.tails |= 1u << j;
          if (b[j] > 0) s.heads |= 1u << j;
        }
        stars_.push_back(s);
      }
      // Odometer over {-1, 0, 1}^m, lexicographic.
      std::size_t pos = m_;
      while (pos > 0 && b[pos - 1] == 1) b[--pos] = -1;
      if (pos == 0) break;
      ++b[pos - 1];
    }
  }

  // Returns false once the visitor asked to stop.
  bool dfs(std::uint32_t tails, std::uint32_t heads) {
    if (tails == full_ && heads == full_) {
      if (chosen_.size() != h_) return true;
      return emit();
    }
    if (chosen_.size() == h_) return true;
    // A closed proper part can never connect to the rest.
    if (!chosen_.empty() && tails == heads) return true;

    const std::uint32_t open_tails = full_ & ~tails, open_heads = full_ & ~heads;
    const std::size_t j = static_cast<std::size_t>(__builtin_ctz(open_tails | open_heads));
    const bool want_tail = (open_tails >> j) & 1u;
    for (const auto& s : stars_) {
      if (want_tail ? !((s.tails >> j) & 1u) : !((s.heads >> j) & 1u)) continue;
      if ((s.tails & tails) != 0 || (s.heads & heads) != 0) continue;
      chosen_.push_back(s);
      const bool go_on = dfs(tails | s.tails, heads | s.heads);
      chosen_.pop_back();
      if (!go_on) return false;
    }
    return true;
  }

  bool emit() {
    std::vector<Arc> arcs(m_);
    for (std::size_t v = 0; v < chosen_.size(); ++v) {
      for (std::size_t j = 0; j < m_; ++j) {
        if ((chosen_[v].tails >> j) & 1u) arcs[j].tail = v;
        if ((chosen_[v].heads >> j) & 1u) arcs[j].head = v;
      }
    }
    for (std::size_t j = 0; j < m_; ++j) arcs[j].color = j;
    if (!connected(h_, arcs)) return true;
    ColoredDigraph g(h_, std::move(arcs));
    if (!integrally_generates(sys_.epsilon, g)) return true;
    return visit_(g);
  }

  const AbelianSystem& sys_;
  const std::function<bool(const ColoredDigraph&)>& visit_;
  std::size_t m_;
  std::size_t h_;
  std::uint32_t full_ = 0;
  std::vector<Star> stars_;
  std::vector<Star> chosen_;
};

// Vertices renumbered by first appearance when reading arcs in color order.
ColoredDigraph relabel_by_first_appearance(const ColoredDigraph& g) {
  constexpr auto kUnset = static_cast<std::size_t>(-1);
  std::vector<std::size_t> label(g.vertex_count(), kUnset);
  std::size_t next = 0;
  for (const auto& a : g.arcs()) {
    if (label[a.tail] == kUnset) label[a.tail] = next++;
    if (label[a.head] == kUnset) label[a.head] = next++;
  }
  std::vector<Arc> arcs;
  for (const auto& a : g.arcs()) arcs.push_back(Arc{label[a.tail], label[a.head], a.color});
  return ColoredDigraph(g.vertex_count(), std::move(arcs));
}

}  // namespace

void for_each_representation(const AbelianSystem& sys,
                             const std::function<bool(const ColoredDigraph&)>& visit) {
  if (sys.m > kMaxSearchVariables) {
    throw SizeLimit("representation search is capped at " + std::to_string(kMaxSearchVariables) +
                    " variables");
  }
  RepresentationSearch(sys, visit).run();
}

std::optional<ColoredDigraph> search_representation(const AbelianSystem& sys,
                                                    std::size_t max_vertices) {
  if (sys.m > kMaxSearchVariables) {
    throw SizeLimit("representation search is capped at " + std::to_string(kMaxSearchVariables) +
                    " variables");
  }
  if (sys.m + 1 - sys.k > max_vertices) return std::nullopt;
  std::optional<ColoredDigraph> found;
  for_each_representation(sys, [&](const ColoredDigraph& g) {
    found = relabel_by_first_appearance(g);
    return false;
  });
  return found;
}

std::optional<StrongRepresentation> search_strong_representation(const OrderedSystem& sys,
                                                                 std::size_t max_vertices) {
  if (sys.m > kMaxSearchVariables) {
    throw SizeLimit("representation search is capped at " + std::to_string(kMaxSearchVariables) +
                    " variables");
  }
  if (sys.m + 1 - sys.k > max_vertices) return std::nullopt;
  const auto chars = characteristic_vectors(sys);
  // Candidate non-tree arcs: variables owned by exactly one equation.
  std::vector<std::vector<std::size_t>> owned(sys.k);
  for (std::size_t j = 0; j < sys.m; ++j) {
    std::size_t owner = sys.k, uses = 0;
    for (std::size_t i = 0; i < sys.k; ++i) {
      if (chars(i, j) != 0) {
        owner = i;
        ++uses;
      }
    }
    if (uses == 1) owned[owner].push_back(j);
  }
  for (const auto& o : owned)
    if (o.empty()) return std::nullopt;

  std::optional<StrongRepresentation> found;
  for_each_representation(abelian_shadow(sys), [&](const ColoredDigraph& raw) {
    const auto g = relabel_by_first_appearance(raw);
    std::vector<std::size_t> choice(sys.k, 0);
    for (;;) {
      std::vector<bool> off_tree(sys.m, false);
      for (std::size_t i = 0; i < sys.k; ++i) off_tree[owned[i][choice[i]]] = true;
      std::vector<std::size_t> tree;
      for (std::size_t j = 0; j < sys.m; ++j)
        if (!off_tree[j]) tree.push_back(j);
      if (is_spanning_tree(g, tree)) {
        SpanningTree t{tree, 0};
        if (is_strong_representation(g, t, sys)) {
          found = StrongRepresentation{g, std::move(t)};
          return false;
        }
      }
      std::size_t i = 0;
      while (i < sys.k && ++choice[i] == owned[i].size()) choice[i++] = 0;
      if (i == sys.k) break;
    }
    return true;
  });
  return found;
}

ColoredDigraph two_products_graph() {
  return ColoredDigraph(4, {{0, 1, 0}, {1, 2, 1}, {0, 3, 2}, {3, 2, 3}, {0, 2, 4}});
}

SpanningTree two_products_tree(const ColoredDigraph& g) { return make_spanning_tree(g, {0, 1, 2}); }

ColoredDigraph bowtie_graph() {
  return ColoredDigraph(5, {{0, 1, 0}, {1, 2, 1}, {2, 0, 2}, {0, 3, 3}, {3, 4, 4}, {4, 0, 5}});
}

ColoredDigraph graph_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("vertices") || !j.contains("arcs")) {
    throw InvalidParameter("graph needs 'vertices' and 'arcs'");
  }
  std::vector<Arc> arcs;
  for (const auto& a : j.at("arcs")) {
    arcs.push_back(Arc{a.at("tail").get<std::size_t>(), a.at("head").get<std::size_t>(),
                       a.at("color").get<std::size_t>()});
  }
  return ColoredDigraph(j.at("vertices").get<std::size_t>(), std::move(arcs));
}

nlohmann::json to_json(const ColoredDigraph& g) {
  auto arcs = nlohmann::json::array();
  for (const auto& a : g.arcs()) {
    arcs.push_back({{"tail", a.tail}, {"head", a.head}, {"color", a.color}});
  }
  return {{"vertices", g.vertex_count()}, {"arcs", std::move(arcs)}};
}

}  // namespace grl
