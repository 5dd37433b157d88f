#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace cantube {

using Rational = mpq_class;

/// Dense row-major matrix over Q.
class RationalMatrix {
 public:
  RationalMatrix() = default;
  RationalMatrix(int rows, int cols) : rows_(rows), cols_(cols), a_(std::size_t(rows) * cols) {}

  static RationalMatrix identity(int n);

  int rows() const noexcept { return rows_; }
  int cols() const noexcept { return cols_; }
  Rational& operator()(int r, int c) { return a_[std::size_t(r) * cols_ + c]; }
  const Rational& operator()(int r, int c) const { return a_[std::size_t(r) * cols_ + c]; }

  bool is_zero() const;
  RationalMatrix operator*(const RationalMatrix& o) const;
  RationalMatrix operator+(const RationalMatrix& o) const;
  RationalMatrix scaled(const Rational& s) const;

  friend bool operator==(const RationalMatrix&, const RationalMatrix&) = default;

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<Rational> a_;
};

using SparseRow = std::vector<std::pair<int, Rational>>;  // sorted by column, no zeros

/// Incremental row echelon form over Q; rank() counts independent rows inserted.
class SparseEliminator {
 public:
  explicit SparseEliminator(int cols) : pivot_of_col_(cols, -1) {}

  /// Reduces `row` against the current pivots; returns true if it was independent.
  bool insert(SparseRow row);
  int rank() const noexcept { return static_cast<int>(pivots_.size()); }

 private:
  std::vector<int> pivot_of_col_;
  std::vector<SparseRow> pivots_;  // leading coefficient normalized to 1
};

int rank_of(int cols, const std::vector<SparseRow>& rows);
int rank_of(const RationalMatrix& m);

}  // namespace cantube
