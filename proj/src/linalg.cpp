#include "cantube/linalg.hpp"

#include <stdexcept>

namespace cantube {

RationalMatrix RationalMatrix::identity(int n) {
  RationalMatrix m(n, n);
  for (int k = 0; k < n; ++k) m(k, k) = 1;
  return m;
}

bool RationalMatrix::is_zero() const {
  for (const auto& x : a_)
    if (x != 0) return false;
  return true;
}

RationalMatrix RationalMatrix::operator*(const RationalMatrix& o) const {
  if (cols_ != o.rows_) throw std::invalid_argument("matrix shape mismatch in product");
  RationalMatrix out(rows_, o.cols_);
  for (int r = 0; r < rows_; ++r)
    for (int k = 0; k < cols_; ++k) {
      const Rational& x = (*this)(r, k);
      if (x == 0) continue;
      for (int c = 0; c < o.cols_; ++c) out(r, c) += x * o(k, c);
    }
  return out;
}

RationalMatrix RationalMatrix::operator+(const RationalMatrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_)
    throw std::invalid_argument("matrix shape mismatch in sum");
  RationalMatrix out = *this;
  for (std::size_t k = 0; k < a_.size(); ++k) out.a_[k] += o.a_[k];
  return out;
}

RationalMatrix RationalMatrix::scaled(const Rational& s) const {
  RationalMatrix out = *this;
  for (auto& x : out.a_) x *= s;
  return out;
}

namespace {

// row -= f * piv, both sorted sparse.
SparseRow axpy(const SparseRow& row, const Rational& f, const SparseRow& piv) {
  SparseRow out;
  out.reserve(row.size() + piv.size());
  std::size_t a = 0, b = 0;
  while (a < row.size() || b < piv.size()) {
    if (b == piv.size() || (a < row.size() && row[a].first < piv[b].first)) {
      out.push_back(row[a++]);
    } else if (a == row.size() || piv[b].first < row[a].first) {
      out.emplace_back(piv[b].first, -f * piv[b].second);
      ++b;
    } else {
      Rational v = row[a].second - f * piv[b].second;
      if (v != 0) out.emplace_back(row[a].first, std::move(v));
      ++a;
      ++b;
    }
  }
  return out;
}

}  // namespace

bool SparseEliminator::insert(SparseRow row) {
  std::size_t scan = 0;
  while (scan < row.size()) {
    const int col = row[scan].first;
    const int p = pivot_of_col_[col];
    if (p < 0) {
      ++scan;
      continue;
    }
    const Rational f = row[scan].second;
    row = axpy(row, f, pivots_[p]);
    // Columns before `scan` are untouched: pivots only carry columns >= their lead and the
    // lead columns of earlier entries have no pivot.
  }
  if (row.empty()) return false;
  // Leading entry is the first column without a pivot; all entries now lack pivots.
  const Rational lead = row.front().second;
  for (auto& e : row) e.second /= lead;
  pivot_of_col_[row.front().first] = static_cast<int>(pivots_.size());
  pivots_.push_back(std::move(row));
  return true;
}

int rank_of(int cols, const std::vector<SparseRow>& rows) {
  SparseEliminator e(cols);
  for (const auto& r : rows) e.insert(r);
  return e.rank();
}

int rank_of(const RationalMatrix& m) {
  std::vector<SparseRow> rows;
  for (int r = 0; r < m.rows(); ++r) {
    SparseRow row;
    for (int c = 0; c < m.cols(); ++c)
      if (m(r, c) != 0) row.emplace_back(c, m(r, c));
    rows.push_back(std::move(row));
  }
  return rank_of(m.cols(), rows);
}

}  // namespace cantube
