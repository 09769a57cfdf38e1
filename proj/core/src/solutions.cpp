#include "grl/solutions.hpp"

#include <numeric>

#include "grl/error.hpp"

namespace grl {

namespace {

std::uint64_t checked_add(std::uint64_t a, std::uint64_t b) {
  std::uint64_t out = 0;
  if (__builtin_add_overflow(a, b, &out)) throw SizeLimit("solution count overflows 64 bits");
  return out;
}

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
  std::uint64_t out = 0;
  if (__builtin_mul_overflow(a, b, &out)) throw SizeLimit("solution count overflows 64 bits");
  return out;
}

void check_sets(const GroupTable& group, std::span<const ElementSet> sets, std::size_t m) {
  if (sets.size() != m) {
    throw InvalidParameter("expected " + std::to_string(m) + " sets, got " +
                           std::to_string(sets.size()));
  }
  for (const auto& s : sets) {
    if (s.group_order() != group.order()) {
      throw InvalidParameter("set belongs to a group of a different order");
    }
  }
}

Element power(const GroupTable& group, Element x, int exponent) {
  return exponent < 0 ? group.inv(x) : x;
}

// Backtracking over variables; an equation with a single unassigned variable
// determines it.
class SystemSolver {
 public:
  SystemSolver(const GroupTable& group, std::span<const ElementSet> sets,
               std::vector<WordEquation> equations, std::size_t m)
      : group_(group), sets_(sets), eqs_(std::move(equations)), m_(m), value_(m), assigned_(m) {
    // Membership tables for O(1) lookups of forced values.
    member_.assign(m, std::vector<bool>(group.order(), false));
    for (std::size_t i = 0; i < m; ++i)
      for (auto x : sets[i].members()) member_[i][x] = true;
  }

  void run(const std::function<bool(std::span<const Element>)>& visit) {
    visit_ = &visit;
    stopped_ = false;
    search(0);
  }

  std::uint64_t count() {
    std::uint64_t n = 0;
    std::function<bool(std::span<const Element>)> counter = [&n](std::span<const Element>) {
      n = checked_add(n, 1);
      return true;
    };
    run(counter);
    return n;
  }

 private:
  // Returns the unassigned variable of `eq` and its position, or m_ if none/many.
  std::pair<std::size_t, std::size_t> single_open(const WordEquation& eq) const {
    std::size_t open = m_, at = 0;
    for (std::size_t p = 0; p < eq.word.size(); ++p) {
      if (assigned_[eq.word[p].var]) continue;
      if (open != m_) return {m_, 0};
      open = eq.word[p].var;
      at = p;
    }
    return {open, at};
  }

  bool consistent() const {
    for (const auto& eq : eqs_) {
      bool complete = true;
      for (const auto& t : eq.word) complete = complete && assigned_[t.var];
      if (complete && evaluate_word(group_, eq.word, value_) != eq.rhs) return false;
    }
    return true;
  }

  void assign(std::size_t var, Element x, std::size_t depth) {
    value_[var] = x;
    assigned_[var] = true;
    if (consistent()) search(depth + 1);
    assigned_[var] = false;
  }

  void search(std::size_t depth) {
    if (stopped_) return;
    if (depth == m_) {
      if (!(*visit_)(value_)) stopped_ = true;
      return;
    }
    for (const auto& eq : eqs_) {
      auto [var, at] = single_open(eq);
      if (var == m_) continue;
      // L x^e R = rhs  =>  x^e = L^-1 rhs R^-1
      Element left = group_.identity(), right = group_.identity();
      for (std::size_t p = 0; p < at; ++p)
        left = group_.op(left, power(group_, value_[eq.word[p].var], eq.word[p].exponent));
      for (std::size_t p = at + 1; p < eq.word.size(); ++p)
        right = group_.op(right, power(group_, value_[eq.word[p].var], eq.word[p].exponent));
      const Element xe = group_.op(group_.op(group_.inv(left), eq.rhs), group_.inv(right));
      const Element x = power(group_, xe, eq.word[at].exponent);
      if (member_[var][x]) assign(var, x, depth);
      return;
    }
    std::size_t var = 0;
    while (assigned_[var]) ++var;
    for (auto x : sets_[var].members()) {
      assign(var, x, depth);
      if (stopped_) return;
    }
  }

  const GroupTable& group_;
  std::span<const ElementSet> sets_;
  std::vector<WordEquation> eqs_;
  std::size_t m_;
  std::vector<Element> value_;
  std::vector<bool> assigned_;
  std::vector<std::vector<bool>> member_;
  const std::function<bool(std::span<const Element>)>* visit_ = nullptr;
  bool stopped_ = false;
};

std::uint64_t count_naive(const GroupTable& group, std::span<const ElementSet> sets,
                          const std::vector<WordEquation>& eqs) {
  const std::size_t m = sets.size();
  for (const auto& s : sets)
    if (s.empty()) return 0;
  std::vector<std::size_t> idx(m, 0);
  std::vector<Element> x(m);
  std::uint64_t n = 0;
  for (;;) {
    for (std::size_t i = 0; i < m; ++i) x[i] = sets[i].members()[idx[i]];
    bool ok = true;
    for (const auto& eq : eqs) ok = ok && evaluate_word(group, eq.word, x) == eq.rhs;
    if (ok) ++n;
    std::size_t i = m;
    while (i > 0 && ++idx[i - 1] == sets[i - 1].size()) idx[--i] = 0;
    if (i == 0) return n;
  }
}

}  // namespace

std::uint64_t RepresentationFunction::total() const {
  return std::accumulate(values.begin(), values.end(), std::uint64_t{0});
}

RepresentationFunction representation_function(const GroupTable& group, const ElementSet& a,
                                               const ElementSet& b) {
  RepresentationFunction r{std::vector<std::uint64_t>(group.order(), 0)};
  for (auto x : a.members())
    for (auto y : b.members()) ++r.values[group.op(x, y)];
  return r;
}

std::uint64_t count_solutions_single(const GroupTable& group, std::span<const ElementSet> sets,
                                     Element g, CountMethod method) {
  if (sets.size() < 2) throw InvalidParameter("a single equation needs at least two sets");
  check_sets(group, sets, sets.size());
  if (g >= group.order()) throw InvalidParameter("right-hand side outside the group");
  if (method == CountMethod::kNaive) {
    return count_naive(group, sets, as_words(make_single_equation(sets.size(), g), group));
  }
  // f(y) = number of prefixes x_1..x_j with product y.
  std::vector<std::uint64_t> f(group.order(), 0), next(group.order());
  for (auto x : sets[0].members()) f[x] = 1;
  for (std::size_t j = 1; j < sets.size(); ++j) {
    std::fill(next.begin(), next.end(), 0);
    for (Element y = 0; y < group.order(); ++y) {
      if (f[y] == 0) continue;
      const auto row = group.row(y);
      for (auto a : sets[j].members()) next[row[a]] = checked_add(next[row[a]], f[y]);
    }
    f.swap(next);
  }
  return f[g];
}

std::uint64_t count_solutions_system(const GroupTable& group, std::span<const ElementSet> sets,
                                     const EquationSystem& sys, CountMethod method) {
  const std::size_t m = variable_count(sys);
  check_sets(group, sets, m);
  auto eqs = as_words(sys, group);
  if (method == CountMethod::kNaive) return count_naive(group, sets, eqs);
  for (const auto& s : sets)
    if (s.empty()) return 0;
  return SystemSolver(group, sets, std::move(eqs), m).count();
}

std::uint64_t count_solutions(const GroupTable& group, std::span<const ElementSet> sets,
                              const EquationSystem& sys, CountMethod method) {
  if (const auto* single = std::get_if<SingleEquation>(&sys)) {
    check_sets(group, sets, single->m);
    return count_solutions_single(group, sets, single->rhs, method);
  }
  return count_solutions_system(group, sets, sys, method);
}

void enumerate_solutions(const GroupTable& group, std::span<const ElementSet> sets,
                         const EquationSystem& sys,
                         const std::function<bool(std::span<const Element>)>& visit) {
  const std::size_t m = variable_count(sys);
  check_sets(group, sets, m);
  for (const auto& s : sets)
    if (s.empty()) return;
  SystemSolver(group, sets, as_words(sys, group), m).run(visit);
}

Element evaluate_word(const GroupTable& group, std::span<const Term> word,
                      std::span<const Element> assignment) {
  Element acc = group.identity();
  for (const auto& t : word) acc = group.op(acc, power(group, assignment[t.var], t.exponent));
  return acc;
}

bool satisfies(const GroupTable& group, const EquationSystem& sys,
               std::span<const Element> assignment) {
  if (assignment.size() != variable_count(sys)) return false;
  for (auto x : assignment)
    if (x >= group.order()) return false;
  for (const auto& eq : as_words(sys, group)) {
    if (evaluate_word(group, eq.word, assignment) != eq.rhs) return false;
  }
  return true;
}

std::uint64_t corollary_statistic(const GroupTable& group, const ElementSet& a,
                                  const ElementSet& b, const ElementSet& c, const ElementSet& d,
                                  const ElementSet& e) {
  const auto rab = representation_function(group, a, b);
  const auto rcd = representation_function(group, c, d);
  std::uint64_t sum = 0;
  for (auto g : e.members()) sum = checked_add(sum, checked_mul(rab(g), rcd(g)));
  return sum;
}

}  // namespace grl
