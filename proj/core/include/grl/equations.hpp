#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "grl/exact_linalg.hpp"
#include "grl/group.hpp"

namespace grl {

/// k equations  sum_j eps[i][j] x_j = 0  over an abelian group, eps in {-1,0,1}.
/// Construct through make_abelian_system(), which enforces the invariants.
struct AbelianSystem {
  std::size_t k = 0;
  std::size_t m = 0;
  std::vector<std::vector<int>> epsilon;
};

/// One factor x_var^exponent of an ordered word. `var` is 0-based.
struct Term {
  std::size_t var = 0;
  int exponent = 1;
  friend bool operator==(const Term&, const Term&) = default;
};

/// k words  x_{s(1)}^{e} ... x_{s(r)}^{e} = 1  evaluated strictly left to right.
/// Omitted variables have exponent 0. Construct through make_ordered_system().
struct OrderedSystem {
  std::size_t k = 0;
  std::size_t m = 0;
  std::vector<std::vector<Term>> words;
};

/// x_1 x_2 ... x_m = rhs.
struct SingleEquation {
  std::size_t m = 0;
  Element rhs = 0;
};

using EquationSystem = std::variant<AbelianSystem, OrderedSystem, SingleEquation>;

/// Validates entries, m >= 2, k >= 1, that every variable occurs, and that the
/// rows are independent over Q (IndependenceViolation otherwise).
AbelianSystem make_abelian_system(std::vector<std::vector<int>> epsilon);
OrderedSystem make_ordered_system(std::size_t m, std::vector<std::vector<Term>> words);
SingleEquation make_single_equation(std::size_t m, Element rhs);

/// Parses the equation language. Equations are separated by ';'.
///   abelian:  "x1 + x2 - x3 = 0"
///   ordered:  "x1 x2 x4^-1 x3^-1 = 1"
///   single:   "x1 x2 x3 = g5"
/// Throws ParseError (with line/column) or IndependenceViolation.
EquationSystem parse_system(std::string_view text);

/// Canonical text form accepted back by parse_system().
std::string to_string(const EquationSystem& sys);

/// k x m matrix of net exponents per variable.
IntMatrix characteristic_vectors(const EquationSystem& sys);

std::size_t variable_count(const EquationSystem& sys);
std::size_t equation_count(const EquationSystem& sys);

/// Words over x_1..x_m with a right-hand side, the common evaluation form of
/// every system kind. Abelian rows are read in variable order.
struct WordEquation {
  std::vector<Term> word;
  Element rhs = 0;
};
std::vector<WordEquation> as_words(const EquationSystem& sys, const GroupTable& group);

/// Abelian shadow of an ordered system: its characteristic vectors as an
/// abelian system.
AbelianSystem abelian_shadow(const OrderedSystem& sys);

/// The system  x1 x2 x4^-1 x3^-1 = 1;  x1 x2 x5^-1 = 1, whose solution count
/// with x1..x5 in A, B, C, D, E is  sum_{g in E} r_{A,B}(g) r_{C,D}(g).
OrderedSystem two_products_system();

/// {"abelian": [[1,1,-1], ...]}, {"ordered": [[["x1",1],["x2",-1]], ...]},
/// {"single": {"m": 3, "g": 0}}, or a string in the equation language.
EquationSystem system_from_json(const nlohmann::json& j);
nlohmann::json to_json(const EquationSystem& sys);

}  // namespace grl
