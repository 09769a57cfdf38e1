#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <vector>

namespace grl {

/// Dense row-major integer matrix. Every computation on it is exact; an
/// intermediate that does not fit in 64 bits raises SizeLimit instead of
/// silently wrapping.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  IntMatrix(std::initializer_list<std::initializer_list<std::int64_t>> rows);
  static IntMatrix from_rows(const std::vector<std::vector<int>>& rows, std::size_t cols);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  std::int64_t& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  std::int64_t operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<const std::int64_t> row(std::size_t r) const {
    return {data_.data() + r * cols_, cols_};
  }
  std::vector<std::vector<int>> to_rows() const;

  IntMatrix select_columns(std::span<const std::size_t> columns) const;
  IntMatrix select_rows(std::span<const std::size_t> rows) const;

  friend bool operator==(const IntMatrix&, const IntMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<std::int64_t> data_;
};

/// Result of fraction-free (Bareiss) row reduction.
struct Echelon {
  std::size_t rank = 0;
  /// Columns holding the pivots, ascending; their submatrix is nonsingular.
  std::vector<std::size_t> pivot_columns;
};

Echelon bareiss_echelon(const IntMatrix& m);
std::size_t rank(const IntMatrix& m);

/// Determinant of a square matrix by Bareiss elimination.
std::int64_t determinant(const IntMatrix& m);

/// Index of the first row that lies in the rational span of the rows before it.
std::optional<std::size_t> first_dependent_row(const IntMatrix& m);

/// m * v, exact.
std::vector<std::int64_t> multiply(const IntMatrix& m, std::span<const std::int64_t> v);

}  // namespace grl
