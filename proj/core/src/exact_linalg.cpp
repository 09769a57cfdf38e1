#include "grl/exact_linalg.hpp"

#include <utility>

#include "grl/error.hpp"

namespace grl {
namespace {

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t out = 0;
  if (__builtin_mul_overflow(a, b, &out)) throw SizeLimit("integer overflow in exact elimination");
  return out;
}

std::int64_t checked_sub(std::int64_t a, std::int64_t b) {
  std::int64_t out = 0;
  if (__builtin_sub_overflow(a, b, &out)) throw SizeLimit("integer overflow in exact elimination");
  return out;
}

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t out = 0;
  if (__builtin_add_overflow(a, b, &out)) throw SizeLimit("integer overflow in exact arithmetic");
  return out;
}

// Bareiss elimination in place. Returns the pivot columns and the number of
// row swaps performed.
std::pair<std::vector<std::size_t>, std::size_t> eliminate(IntMatrix& a) {
  std::vector<std::size_t> pivots;
  std::size_t swaps = 0;
  std::int64_t prev = 1;
  std::size_t r = 0;
  for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
    std::size_t p = r;
    while (p < a.rows() && a(p, c) == 0) ++p;
    if (p == a.rows()) continue;
    if (p != r) {
      for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a(p, j), a(r, j));
      ++swaps;
    }
    for (std::size_t i = r + 1; i < a.rows(); ++i) {
      for (std::size_t j = c + 1; j < a.cols(); ++j) {
        // Exact: every intermediate is a minor of the input.
        a(i, j) = checked_sub(checked_mul(a(r, c), a(i, j)), checked_mul(a(i, c), a(r, j))) / prev;
      }
      a(i, c) = 0;
    }
    prev = a(r, c);
    pivots.push_back(c);
    ++r;
  }
  return {std::move(pivots), swaps};
}

}  // namespace

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<std::int64_t>> rows)
    : rows_(rows.size()), cols_(rows.size() == 0 ? 0 : rows.begin()->size()) {
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw InvalidParameter("ragged matrix literal");
    data_.insert(data_.end(), r.begin(), r.end());
  }
}

IntMatrix IntMatrix::from_rows(const std::vector<std::vector<int>>& rows, std::size_t cols) {
  IntMatrix m(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) throw InvalidParameter("row length does not match column count");
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

std::vector<std::vector<int>> IntMatrix::to_rows() const {
  std::vector<std::vector<int>> out(rows_, std::vector<int>(cols_));
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out[i][j] = static_cast<int>((*this)(i, j));
  return out;
}

IntMatrix IntMatrix::select_columns(std::span<const std::size_t> columns) const {
  IntMatrix out(rows_, columns.size());
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < columns.size(); ++j) out(i, j) = (*this)(i, columns[j]);
  return out;
}

IntMatrix IntMatrix::select_rows(std::span<const std::size_t> rows) const {
  IntMatrix out(rows.size(), cols_);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols_; ++j) out(i, j) = (*this)(rows[i], j);
  return out;
}

Echelon bareiss_echelon(const IntMatrix& m) {
  IntMatrix work = m;
  auto [pivots, swaps] = eliminate(work);
  (void)swaps;
  Echelon e;
  e.rank = pivots.size();
  e.pivot_columns = std::move(pivots);
  return e;
}

std::size_t rank(const IntMatrix& m) { return bareiss_echelon(m).rank; }

std::int64_t determinant(const IntMatrix& m) {
  if (m.rows() != m.cols()) throw InvalidParameter("determinant of a non-square matrix");
  if (m.rows() == 0) return 1;
  IntMatrix work = m;
  auto [pivots, swaps] = eliminate(work);
  if (pivots.size() < m.rows()) return 0;
  const std::int64_t det = work(m.rows() - 1, m.cols() - 1);
  return swaps % 2 == 0 ? det : -det;
}

std::optional<std::size_t> first_dependent_row(const IntMatrix& m) {
  for (std::size_t r = 0; r < m.rows(); ++r) {
    std::vector<std::size_t> prefix(r + 1);
    for (std::size_t i = 0; i <= r; ++i) prefix[i] = i;
    if (rank(m.select_rows(prefix)) < r + 1) return r;
  }
  return std::nullopt;
}

std::vector<std::int64_t> multiply(const IntMatrix& m, std::span<const std::int64_t> v) {
  if (v.size() != m.cols()) throw InvalidParameter("vector length does not match matrix");
  std::vector<std::int64_t> out(m.rows(), 0);
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      out[i] = checked_add(out[i], checked_mul(m(i, j), v[j]));
  return out;
}

}  // namespace grl
