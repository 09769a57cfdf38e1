#include "grl/blowup.hpp"

#include <queue>
#include <sstream>

#include "grl/error.hpp"
#include "grl/solutions.hpp"

namespace grl {

BlowupGraph::BlowupGraph(GroupTable group, ColoredDigraph base, std::vector<ElementSet> sets,
                         std::vector<Element> twists, std::optional<EquationSystem> system,
                         std::uint64_t max_arcs)
    : group_(std::move(group)),
      base_(std::move(base)),
      sets_(std::move(sets)),
      twists_(std::move(twists)),
      system_(std::move(system)) {
  const std::size_t m = base_.arc_count();
  if (sets_.size() != m) {
    throw InvalidParameter("base graph has " + std::to_string(m) + " arcs but " +
                           std::to_string(sets_.size()) + " sets were given");
  }
  if (twists_.size() != m) throw InvalidParameter("one twist per color is required");
  if (system_ && variable_count(*system_) != m) {
    throw InvalidParameter("system variable count does not match the base graph");
  }
  const std::size_t n = group_.order();
  position_.assign(m, std::vector<int>(n, -1));
  offsets_.assign(m + 1, 0);
  for (std::size_t i = 0; i < m; ++i) {
    if (sets_[i].group_order() != n) throw InvalidParameter("set over a different group");
    if (twists_[i] >= n) throw InvalidParameter("twist outside the group");
    const auto members = sets_[i].members();
    for (std::size_t p = 0; p < members.size(); ++p) position_[i][members[p]] = static_cast<int>(p);
    offsets_[i + 1] = offsets_[i] + static_cast<std::uint64_t>(n) * members.size();
  }
  if (offsets_.back() > max_arcs) {
    throw SizeLimit("blow-up would have " + std::to_string(offsets_.back()) +
                    " arcs, above the cap of " + std::to_string(max_arcs));
  }
}

std::optional<ArcId> BlowupGraph::find_arc(std::size_t color, Element tail_element,
                                           Element a) const {
  const int pos = label_position(color, a);
  if (pos < 0) return std::nullopt;
  return arc_id(color, tail_element, static_cast<std::size_t>(pos));
}

ArcInfo BlowupGraph::arc(ArcId id) const {
  if (id >= arc_count()) throw InvalidParameter("arc id out of range");
  std::size_t color = 0;
  while (offsets_[color + 1] <= id) ++color;
  const auto local = id - offsets_[color];
  const auto width = sets_[color].size();
  ArcInfo info;
  info.color = color;
  info.tail_element = static_cast<Element>(local / width);
  info.label = sets_[color].members()[local % width];
  info.head_element = group_.op(group_.op(info.tail_element, info.label), twists_[color]);
  info.tail_vertex = pack(info.tail_element, base_.arc(color).tail);
  info.head_vertex = pack(info.head_element, base_.arc(color).head);
  return info;
}

BlowupGraph build_cycle_blowup(const GroupTable& group, std::vector<ElementSet> sets, Element g,
                               std::uint64_t max_arcs) {
  const std::size_t m = sets.size();
  if (m < 2) throw InvalidParameter("a cycle blow-up needs m >= 2 sets");
  if (g >= group.order()) throw InvalidParameter("right-hand side outside the group");
  std::vector<Element> twists(m, group.identity());
  twists[m - 1] = group.inv(g);
  return BlowupGraph(group, directed_cycle(m), std::move(sets), std::move(twists),
                     make_single_equation(m, g), max_arcs);
}

BlowupGraph build_system_blowup(const GroupTable& group, std::vector<ElementSet> sets,
                                const ColoredDigraph& base, std::optional<EquationSystem> system,
                                std::uint64_t max_arcs) {
  if (sets.size() != base.arc_count()) {
    throw InvalidParameter("base graph has " + std::to_string(base.arc_count()) + " arcs but " +
                           std::to_string(sets.size()) + " sets were given");
  }
  std::vector<Element> twists(base.arc_count(), group.identity());
  return BlowupGraph(group, base, std::move(sets), std::move(twists), std::move(system), max_arcs);
}

namespace {

// Base vertices in tree order, each (except the first) reached through one
// tree arc from an earlier vertex; remaining arcs become closing checks.
struct CopyPlan {
  struct Step {
    std::size_t vertex = 0;
    std::size_t parent = 0;
    std::size_t color = 0;
    bool from_parent = true;           // tree arc is parent -> vertex
    std::vector<std::size_t> closing;  // non-tree colors checked once vertex is placed
  };
  std::vector<Step> steps;
};

CopyPlan make_plan(const ColoredDigraph& base, const SpanningTree& tree) {
  const std::size_t h = base.vertex_count();
  std::vector<bool> in_tree(base.arc_count(), false);
  for (auto c : tree.arcs) in_tree[c] = true;

  CopyPlan plan;
  std::vector<std::size_t> order_of(h, h);
  std::queue<std::size_t> q;
  q.push(tree.root);
  order_of[tree.root] = 0;
  plan.steps.push_back({tree.root, tree.root, 0, true, {}});
  while (!q.empty()) {
    const auto u = q.front();
    q.pop();
    for (auto c : tree.arcs) {
      const auto& a = base.arc(c);
      if (a.tail != u && a.head != u) continue;
      const auto v = a.tail == u ? a.head : a.tail;
      if (order_of[v] != h) continue;
      order_of[v] = plan.steps.size();
      plan.steps.push_back({v, u, c, a.tail == u, {}});
      q.push(v);
    }
  }
  for (const auto& a : base.arcs()) {
    if (in_tree[a.color]) continue;
    const auto last = std::max(order_of[a.tail], order_of[a.head]);
    plan.steps[last].closing.push_back(a.color);
  }
  return plan;
}

class CopyEnumerator {
 public:
  CopyEnumerator(const BlowupGraph& b, const ArcMask* removed)
      : b_(b), g_(b.group()), removed_(removed),
        plan_(make_plan(b.base(), bfs_spanning_tree(b.base(), 0))) {
    if (removed_ != nullptr && removed_->size() != b.arc_count()) {
      throw InvalidParameter("removal mask does not match the blow-up");
    }
    const std::size_t m = b.color_count();
    twist_inv_.resize(m);
    for (std::size_t c = 0; c < m; ++c) twist_inv_[c] = g_.inv(b.twist(c));
    copy_.phi.assign(b.base().vertex_count(), 0);
    copy_.labels.assign(m, 0);
  }

  void run(const std::function<bool(const ColoredCopy&)>* visit) {
    visit_ = visit;
    count_ = 0;
    stopped_ = false;
    for (Element z = 0; z < g_.order() && !stopped_; ++z) {
      copy_.phi[plan_.steps[0].vertex] = z;
      if (close(plan_.steps[0])) extend(1);
    }
  }

  std::uint64_t count() const { return count_; }

 private:
  bool removed(std::size_t color, Element tail, std::size_t pos) const {
    return removed_ != nullptr && (*removed_)[b_.arc_id(color, tail, pos)];
  }

  // Checks the closing arcs attached to a freshly placed vertex.
  bool close(const CopyPlan::Step& step) {
    for (auto c : step.closing) {
      const auto& arc = b_.base().arc(c);
      const Element tail = copy_.phi[arc.tail];
      const Element a =
          g_.op(g_.op(g_.inv(tail), copy_.phi[arc.head]), twist_inv_[c]);
      const int pos = b_.label_position(c, a);
      if (pos < 0 || removed(c, tail, static_cast<std::size_t>(pos))) return false;
      copy_.labels[c] = a;
    }
    return true;
  }

  void extend(std::size_t depth) {
    if (depth == plan_.steps.size()) {
      ++count_;
      if (visit_ != nullptr && !(*visit_)(copy_)) stopped_ = true;
      return;
    }
    const auto& step = plan_.steps[depth];
    const auto members = b_.sets()[step.color].members();
    const Element p = copy_.phi[step.parent];
    for (std::size_t pos = 0; pos < members.size() && !stopped_; ++pos) {
      const Element a = members[pos];
      Element x, tail;
      if (step.from_parent) {
        x = g_.op(g_.op(p, a), b_.twist(step.color));
        tail = p;
      } else {
        // x a t = p  =>  x = p t^-1 a^-1
        x = g_.op(g_.op(p, twist_inv_[step.color]), g_.inv(a));
        tail = x;
      }
      if (removed(step.color, tail, pos)) continue;
      copy_.phi[step.vertex] = x;
      copy_.labels[step.color] = a;
      if (close(step)) extend(depth + 1);
    }
  }

  const BlowupGraph& b_;
  const GroupTable& g_;
  const ArcMask* removed_;
  CopyPlan plan_;
  std::vector<Element> twist_inv_;
  ColoredCopy copy_;
  const std::function<bool(const ColoredCopy&)>* visit_ = nullptr;
  std::uint64_t count_ = 0;
  bool stopped_ = false;
};

// Copy of `blowup` whose arcs carry the given labels; no membership checks.
bool propagate(std::span<const Element> labels, Element z, const BlowupGraph& b,
               const SpanningTree& tree, std::vector<Element>& phi) {
  const auto& g = b.group();
  const auto plan = make_plan(b.base(), tree);
  phi.assign(b.base().vertex_count(), 0);
  phi[plan.steps[0].vertex] = z;
  for (std::size_t s = 1; s < plan.steps.size(); ++s) {
    const auto& st = plan.steps[s];
    const Element a = labels[st.color], t = b.twist(st.color), p = phi[st.parent];
    phi[st.vertex] = st.from_parent ? g.op(g.op(p, a), t) : g.op(g.op(p, g.inv(t)), g.inv(a));
  }
  for (const auto& arc : b.base().arcs()) {
    const Element expected = g.op(g.op(phi[arc.tail], labels[arc.color]), b.twist(arc.color));
    if (expected != phi[arc.head]) return false;
  }
  return true;
}

}  // namespace

ColoredCopy solution_to_copy(std::span<const Element> solution, Element z,
                             const BlowupGraph& blowup, const std::optional<SpanningTree>& tree) {
  const std::size_t m = blowup.color_count();
  if (solution.size() != m) throw InvalidParameter("solution length does not match the blow-up");
  if (z >= blowup.group_order()) throw InvalidParameter("z outside the group");
  for (std::size_t i = 0; i < m; ++i) {
    if (solution[i] >= blowup.group_order() || blowup.label_position(i, solution[i]) < 0) {
      throw ContractViolation("x" + std::to_string(i + 1) + " is not in its set");
    }
  }
  if (blowup.system() && !satisfies(blowup.group(), *blowup.system(), solution)) {
    throw ContractViolation("assignment does not satisfy the system");
  }
  const SpanningTree t = tree ? *tree : bfs_spanning_tree(blowup.base(), 0);
  ColoredCopy copy;
  if (!propagate(solution, z, blowup, t, copy.phi)) {
    throw ContractViolation("labels do not close up into a copy of the base graph");
  }
  copy.labels.assign(solution.begin(), solution.end());
  return copy;
}

std::vector<Element> copy_to_solution(const ColoredCopy& copy, const BlowupGraph& blowup) {
  const auto& g = blowup.group();
  const auto& base = blowup.base();
  if (copy.phi.size() != base.vertex_count()) {
    throw ContractViolation("copy does not assign every base vertex");
  }
  for (auto x : copy.phi)
    if (x >= g.order()) throw ContractViolation("copy vertex outside the group");

  std::vector<Element> x(blowup.color_count());
  for (const auto& arc : base.arcs()) {
    const Element a =
        g.op(g.op(g.inv(copy.phi[arc.tail]), copy.phi[arc.head]), g.inv(blowup.twist(arc.color)));
    if (blowup.label_position(arc.color, a) < 0) {
      throw ContractViolation("arc of color " + std::to_string(arc.color) + " is not in H_0");
    }
    if (!copy.labels.empty() && copy.labels.at(arc.color) != a) {
      throw ContractViolation("copy labels disagree with its vertices");
    }
    x[arc.color] = a;
  }
  if (!blowup.system()) return x;

  if (!satisfies(g, *blowup.system(), x)) {
    throw ContractViolation("copy does not yield a solution of the system");
  }
  if (const auto* ordered = std::get_if<OrderedSystem>(&*blowup.system())) {
    for (const auto& word : ordered->words) {
      // Walk the word through the base graph; g_{j-1}^-1 g_j must reproduce
      // each factor and the product must telescope to g_0^-1 g_r = 1.
      const auto start = [&](const Term& t) {
        return t.exponent > 0 ? base.arc(t.var).tail : base.arc(t.var).head;
      };
      const auto end = [&](const Term& t) {
        return t.exponent > 0 ? base.arc(t.var).head : base.arc(t.var).tail;
      };
      bool closed_walk = end(word.back()) == start(word.front());
      for (std::size_t j = 1; j < word.size() && closed_walk; ++j) {
        closed_walk = end(word[j - 1]) == start(word[j]);
      }
      if (!closed_walk) continue;
      Element product = g.identity();
      for (const auto& t : word) {
        const Element step = g.op(g.inv(copy.phi[start(t)]), copy.phi[end(t)]);
        const Element factor = t.exponent > 0 ? x[t.var] : g.inv(x[t.var]);
        if (step != factor) throw ContractViolation("word factor differs from its telescoping step");
        product = g.op(product, step);
      }
      if (product != g.identity()) throw ContractViolation("word does not telescope to 1");
    }
  }
  return x;
}

std::vector<ArcId> copy_arcs(const ColoredCopy& copy, const BlowupGraph& blowup) {
  const auto labels = copy_to_solution(ColoredCopy{copy.phi, {}}, blowup);
  std::vector<ArcId> out;
  for (const auto& arc : blowup.base().arcs()) {
    out.push_back(*blowup.find_arc(arc.color, copy.phi[arc.tail], labels[arc.color]));
  }
  return out;
}

std::uint64_t count_copies(const BlowupGraph& blowup, const ArcMask* removed) {
  for (const auto& s : blowup.sets())
    if (s.empty()) return 0;
  CopyEnumerator e(blowup, removed);
  e.run(nullptr);
  return e.count();
}

void for_each_copy(const BlowupGraph& blowup, const std::function<bool(const ColoredCopy&)>& visit,
                   const ArcMask* removed) {
  for (const auto& s : blowup.sets())
    if (s.empty()) return;
  CopyEnumerator e(blowup, removed);
  e.run(&visit);
}

std::string to_dot(const BlowupGraph& blowup) {
  if (blowup.vertex_count() > 100) throw SizeLimit("DOT export is limited to 100 vertices");
  const std::size_t h = blowup.base().vertex_count();
  std::ostringstream out;
  out << "digraph H0 {\n";
  for (std::size_t v = 0; v < blowup.vertex_count(); ++v) {
    out << "  v" << v << " [label=\"(" << v / h << "," << v % h + 1 << ")\"];\n";
  }
  for (ArcId id = 0; id < blowup.arc_count(); ++id) {
    const auto a = blowup.arc(id);
    out << "  v" << a.tail_vertex << " -> v" << a.head_vertex << " [label=\"[" << a.label << ","
        << a.color + 1 << "]\"];\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace grl
