#include <gtest/gtest.h>

#include "grl/error.hpp"
#include "grl/equations.hpp"
#include "grl/random.hpp"

using namespace grl;

TEST(Parse, AbelianEquation) {
  const auto sys = parse_system("x1 + x2 + x3 = 0");
  const auto& a = std::get<AbelianSystem>(sys);
  EXPECT_EQ(a.k, 1u);
  EXPECT_EQ(a.m, 3u);
  EXPECT_EQ(a.epsilon, (std::vector<std::vector<int>>{{1, 1, 1}}));
}

TEST(Parse, TwoProductsSystem) {
  const auto sys = parse_system("x1 x2 x4^-1 x3^-1 = 1; x1 x2 x5^-1 = 1");
  const auto& o = std::get<OrderedSystem>(sys);
  EXPECT_EQ(o.k, 2u);
  EXPECT_EQ(o.m, 5u);
  const auto expected = two_products_system();
  EXPECT_EQ(o.words, expected.words);
  EXPECT_EQ(characteristic_vectors(sys).to_rows(),
            (std::vector<std::vector<int>>{{1, 1, -1, -1, 0}, {1, 1, 0, 0, -1}}));
  // Token order is kept: the fourth factor of the first word is x3^-1.
  EXPECT_EQ(o.words[0][3], (Term{2, -1}));
}

TEST(Parse, DependentRowsRejected) {
  try {
    parse_system("x1 + x2 = 0; x1 + x2 = 0");
    FAIL() << "expected an independence violation";
  } catch (const IndependenceViolation& e) {
    EXPECT_EQ(e.dependent_row(), 1u);
  }
}

TEST(Parse, SingleEquation) {
  const auto sys = parse_system("x1 x2 x3 = g5");
  const auto& s = std::get<SingleEquation>(sys);
  EXPECT_EQ(s.m, 3u);
  EXPECT_EQ(s.rhs, 5u);
  EXPECT_EQ(characteristic_vectors(sys).to_rows(), (std::vector<std::vector<int>>{{1, 1, 1}}));
}

TEST(Parse, Errors) {
  EXPECT_THROW(parse_system("x1 x1^-1 x2 = 1"), ParseError);   // repeated variable in a word
  EXPECT_THROW(parse_system("x1 + x3 = 0"), InvalidParameter);  // x2 unused
  EXPECT_THROW(parse_system("x1 + x2 = 0; x1 x2 = 1"), ParseError);  // mixed kinds
  EXPECT_THROW(parse_system("x1 + = 0"), ParseError);
  EXPECT_THROW(parse_system("x1 = 0"), InvalidParameter);  // m >= 2
  try {
    parse_system("x1 + x2 = 0;\nx1 + * = 0");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
    EXPECT_EQ(e.column(), 6u);
  }
}

TEST(Parse, CharacteristicVectorsOfAbelianAreEpsilon) {
  const auto a = make_abelian_system({{1, -1, 0, 1}, {0, 1, 1, 0}});
  EXPECT_EQ(characteristic_vectors(a).to_rows(), a.epsilon);
  EXPECT_EQ(variable_count(a), 4u);
  EXPECT_EQ(equation_count(a), 2u);
}

TEST(Parse, RoundTripIsStable) {
  const std::vector<std::string> texts = {
      "x1 + x2 + x3 = 0",
      "x1 - x2 = 0",
      "x1 + x2 - x3 = 0; x3 + x4 - x5 = 0",
      "x1 x2 x4^-1 x3^-1 = 1; x1 x2 x5^-1 = 1",
      "x2 x1^-1 = 1",
      "x1 x2 x3 x4 = g3",
  };
  for (const auto& t : texts) {
    SCOPED_TRACE(t);
    const auto once = parse_system(t);
    const auto text = to_string(once);
    const auto twice = parse_system(text);
    EXPECT_EQ(to_string(twice), text);
    EXPECT_EQ(characteristic_vectors(twice), characteristic_vectors(once));
  }
}

TEST(Parse, RandomRoundTrip) {
  SplitMix64 rng(3);
  int checked = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t m = 2 + rng.next_below(5), k = 1 + rng.next_below(2);
    std::vector<std::vector<int>> eps(k, std::vector<int>(m));
    for (auto& row : eps)
      for (auto& e : row) e = static_cast<int>(rng.next_below(3)) - 1;
    try {
      const EquationSystem sys = make_abelian_system(eps);
      const auto back = parse_system(to_string(sys));
      EXPECT_EQ(characteristic_vectors(back), characteristic_vectors(sys));
      ++checked;
    } catch (const Error&) {
      // Unused variable, zero row or dependent rows: rejected consistently.
    }
  }
  EXPECT_GT(checked, 50);
}

TEST(Json, SystemForms) {
  using nlohmann::json;
  const auto a = system_from_json(json::parse(R"({"abelian": [[1,1,-1]]})"));
  EXPECT_EQ(to_string(a), to_string(parse_system("x1 + x2 - x3 = 0")));
  const auto o = system_from_json(
      json::parse(R"({"ordered": [[["x1",1],["x2",1],["x4",-1],["x3",-1]], [["x1",1],["x2",1],["x5",-1]]]})"));
  EXPECT_EQ(std::get<OrderedSystem>(o).words, two_products_system().words);
  const auto s = system_from_json(json::parse(R"({"single": {"m": 3, "g": 2}})"));
  EXPECT_EQ(std::get<SingleEquation>(s).rhs, 2u);
  const auto t = system_from_json(json("x1 x2 = g1"));
  EXPECT_EQ(std::get<SingleEquation>(t).m, 2u);
  for (const auto& sys : {a, o, s}) EXPECT_EQ(to_string(system_from_json(to_json(sys))), to_string(sys));
}

TEST(Words, AbelianOnNonAbelianGroupRejected) {
  const auto sys = parse_system("x1 + x2 + x3 = 0");
  EXPECT_THROW(as_words(sys, make_symmetric(3)), InvalidParameter);
  EXPECT_EQ(as_words(sys, make_cyclic(3)).size(), 1u);
  EXPECT_EQ(abelian_shadow(two_products_system()).epsilon,
            (std::vector<std::vector<int>>{{1, 1, -1, -1, 0}, {1, 1, 0, 0, -1}}));
}
