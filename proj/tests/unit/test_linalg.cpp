#include <gtest/gtest.h>

#include "grl/error.hpp"
#include "grl/exact_linalg.hpp"
#include "grl/random.hpp"
#include "oracles.hpp"

using namespace grl;

namespace {

IntMatrix random_matrix(SplitMix64& rng, std::size_t rows, std::size_t cols, int spread) {
  IntMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j)
      m(i, j) = static_cast<std::int64_t>(rng.next_below(2 * spread + 1)) - spread;
  return m;
}

std::vector<std::vector<std::int64_t>> rows_of(const IntMatrix& m) {
  std::vector<std::vector<std::int64_t>> out(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) out[i].assign(m.row(i).begin(), m.row(i).end());
  return out;
}

}  // namespace

TEST(Linalg, SmallDeterminants) {
  EXPECT_EQ(determinant(IntMatrix{{2}}), 2);
  EXPECT_EQ(determinant(IntMatrix{{1, 2}, {3, 4}}), -2);
  EXPECT_EQ(determinant(IntMatrix{{0, 1}, {1, 0}}), -1);
  EXPECT_EQ(determinant(IntMatrix{{1, 2}, {2, 4}}), 0);
  EXPECT_EQ(rank(IntMatrix{{1, 2}, {2, 4}}), 1u);
}

TEST(Linalg, DeterminantMatchesLeibniz) {
  SplitMix64 rng(7);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 1 + rng.next_below(6);
    const auto m = random_matrix(rng, n, n, trial % 3 == 0 ? 1 : 4);
    EXPECT_EQ(determinant(m), oracle::determinant(rows_of(m)));
  }
}

TEST(Linalg, RankMatchesMinors) {
  SplitMix64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t r = 1 + rng.next_below(4), c = 1 + rng.next_below(6);
    auto m = random_matrix(rng, r, c, 1);
    if (trial % 4 == 0 && r > 1) {
      for (std::size_t j = 0; j < c; ++j) m(r - 1, j) = m(0, j) - (r > 2 ? m(1, j) : 0);
    }
    const auto e = bareiss_echelon(m);
    EXPECT_EQ(e.rank, oracle::rank(m));
    ASSERT_EQ(e.pivot_columns.size(), e.rank);
    if (e.rank == r) {
      // The pivot submatrix of a full-row-rank matrix is nonsingular.
      EXPECT_NE(determinant(m.select_columns(e.pivot_columns)), 0);
    }
  }
}

TEST(Linalg, FirstDependentRow) {
  EXPECT_EQ(first_dependent_row(IntMatrix{{1, 1}, {1, 1}}), std::optional<std::size_t>(1));
  EXPECT_EQ(first_dependent_row(IntMatrix{{1, 0}, {0, 1}}), std::nullopt);
  EXPECT_EQ(first_dependent_row(IntMatrix{{1, 0, 0}, {0, 1, 0}, {1, -1, 0}, {0, 0, 1}}),
            std::optional<std::size_t>(2));
}

TEST(Linalg, OverflowIsReported) {
  const std::int64_t big = std::int64_t{1} << 40;
  EXPECT_THROW(determinant(IntMatrix{{big, big + 1, 3}, {big - 1, big, 5}, {7, big, big}}),
               SizeLimit);
}

TEST(Linalg, MultiplyAndSelect) {
  const IntMatrix m{{1, 2, 3}, {4, 5, 6}};
  const std::vector<std::int64_t> v{1, 0, -1};
  EXPECT_EQ(multiply(m, v), (std::vector<std::int64_t>{-2, -2}));
  const std::vector<std::size_t> cols{0, 2};
  EXPECT_EQ(m.select_columns(cols), (IntMatrix{{1, 3}, {4, 6}}));
  const std::vector<std::size_t> rows{1};
  EXPECT_EQ(m.select_rows(rows), (IntMatrix{{4, 5, 6}}));
}
