#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "cliffordlab/matrix.hpp"

namespace cliffordlab {

// Sparse row: (column, value) pairs sorted by column, no explicit zeros.
template <typename T>
using SparseRow = std::vector<std::pair<std::size_t, T>>;

// Incremental exact Gaussian elimination over a field. Rows are reduced
// against the current pivots as they arrive; the echelon form is turned
// into reduced row echelon form on demand.
template <ExactScalar T>
class RowReducer {
 public:
  explicit RowReducer(std::size_t cols) : cols_(cols) {}

  std::size_t cols() const { return cols_; }
  std::size_t rank() const { return pivots_.size(); }

  // Returns true when the row was independent of the rows seen so far.
  bool add_row(SparseRow<T> row) {
    normalize_input(row);
    while (!row.empty()) {
      auto it = pivots_.find(row.front().first);
      if (it == pivots_.end()) {
        T lead = row.front().second;
        for (auto& [c, v] : row) v /= lead;
        pivots_.emplace(row.front().first, std::move(row));
        reduced_ = false;
        return true;
      }
      T factor = row.front().second;
      row = axpy(row, it->second, factor);
    }
    return false;
  }

  bool add_dense_row(const std::vector<T>& dense) {
    SparseRow<T> row;
    for (std::size_t c = 0; c < dense.size(); ++c)
      if (!scalar_traits<T>::is_zero(dense[c])) row.emplace_back(c, dense[c]);
    return add_row(std::move(row));
  }

  // Whether the row lies in the span of the rows seen so far.
  bool in_span(SparseRow<T> row) const {
    normalize_input(row);
    while (!row.empty()) {
      auto it = pivots_.find(row.front().first);
      if (it == pivots_.end()) return false;
      T factor = row.front().second;
      row = axpy(row, it->second, factor);
    }
    return true;
  }

  const std::map<std::size_t, SparseRow<T>>& rref() {
    if (!reduced_) back_substitute();
    return pivots_;
  }

  std::vector<std::size_t> pivot_columns() const {
    std::vector<std::size_t> out;
    for (const auto& [c, row] : pivots_) out.push_back(c);
    return out;
  }

  // Basis of {x : row . x = 0 for all rows}, one vector per free column,
  // with a 1 in that free column.
  std::vector<std::vector<T>> nullspace() {
    const auto& reduced = rref();
    std::vector<bool> is_pivot(cols_, false);
    for (const auto& [c, row] : reduced) is_pivot[c] = true;
    std::vector<std::vector<T>> basis;
    for (std::size_t f = 0; f < cols_; ++f) {
      if (is_pivot[f]) continue;
      std::vector<T> x(cols_, T(0));
      x[f] = T(1);
      for (const auto& [c, row] : reduced) {
        for (const auto& [col, v] : row)
          if (col == f) x[c] = -v;
      }
      basis.push_back(std::move(x));
    }
    return basis;
  }

 private:
  static void normalize_input(SparseRow<T>& row) {
    std::sort(row.begin(), row.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    SparseRow<T> merged;
    for (auto& e : row) {
      if (!merged.empty() && merged.back().first == e.first)
        merged.back().second += e.second;
      else
        merged.push_back(std::move(e));
    }
    merged.erase(std::remove_if(merged.begin(), merged.end(),
                                [](const auto& e) { return scalar_traits<T>::is_zero(e.second); }),
                 merged.end());
    row = std::move(merged);
  }

  // row - factor * pivot
  static SparseRow<T> axpy(const SparseRow<T>& row, const SparseRow<T>& pivot, const T& factor) {
    SparseRow<T> out;
    out.reserve(row.size() + pivot.size());
    std::size_t a = 0, b = 0;
    while (a < row.size() || b < pivot.size()) {
      if (b == pivot.size() || (a < row.size() && row[a].first < pivot[b].first)) {
        out.push_back(row[a++]);
      } else if (a == row.size() || pivot[b].first < row[a].first) {
        out.emplace_back(pivot[b].first, -(factor * pivot[b].second));
        ++b;
      } else {
        T v = row[a].second - factor * pivot[b].second;
        if (!scalar_traits<T>::is_zero(v)) out.emplace_back(row[a].first, std::move(v));
        ++a;
        ++b;
      }
    }
    return out;
  }

  void back_substitute() {
    // Walk pivots from the right so each eliminated column is already clean.
    for (auto it = pivots_.rbegin(); it != pivots_.rend(); ++it) {
      const std::size_t col = it->first;
      const SparseRow<T>& pivot_row = it->second;
      for (auto& [other_col, other_row] : pivots_) {
        if (other_col >= col) break;
        auto hit = std::lower_bound(other_row.begin(), other_row.end(), col,
                                    [](const auto& e, std::size_t c) { return e.first < c; });
        if (hit == other_row.end() || hit->first != col) continue;
        T factor = hit->second;
        other_row = axpy(other_row, pivot_row, factor);
      }
    }
    reduced_ = true;
  }

  std::size_t cols_;
  std::map<std::size_t, SparseRow<T>> pivots_;
  bool reduced_ = true;
};

template <ExactScalar T>
std::size_t rank(const Matrix<T>& m) {
  RowReducer<T> reducer(m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r) {
    SparseRow<T> row;
    for (std::size_t c = 0; c < m.cols(); ++c)
      if (!scalar_traits<T>::is_zero(m(r, c))) row.emplace_back(c, m(r, c));
    reducer.add_row(std::move(row));
  }
  return reducer.rank();
}

// Basis of the right nullspace {x : m x = 0}.
template <ExactScalar T>
std::vector<std::vector<T>> nullspace(const Matrix<T>& m) {
  RowReducer<T> reducer(m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r) {
    SparseRow<T> row;
    for (std::size_t c = 0; c < m.cols(); ++c)
      if (!scalar_traits<T>::is_zero(m(r, c))) row.emplace_back(c, m(r, c));
    reducer.add_row(std::move(row));
  }
  return reducer.nullspace();
}

// Some solution of a x = b (free variables set to zero), or nullopt when
// the system is inconsistent.
template <ExactScalar T>
std::optional<std::vector<T>> solve(const Matrix<T>& a, const std::vector<T>& b) {
  if (b.size() != a.rows()) throw std::invalid_argument("solve: right-hand side size mismatch");
  const std::size_t n = a.cols();
  RowReducer<T> reducer(n + 1);
  for (std::size_t r = 0; r < a.rows(); ++r) {
    SparseRow<T> row;
    for (std::size_t c = 0; c < n; ++c)
      if (!scalar_traits<T>::is_zero(a(r, c))) row.emplace_back(c, a(r, c));
    if (!scalar_traits<T>::is_zero(b[r])) row.emplace_back(n, b[r]);
    reducer.add_row(std::move(row));
  }
  const auto& reduced = reducer.rref();
  if (reduced.count(n)) return std::nullopt;
  std::vector<T> x(n, T(0));
  for (const auto& [c, row] : reduced) {
    if (!row.empty() && row.back().first == n) x[c] = row.back().second;
  }
  return x;
}

// Sparse-system variant used by the large commutant / intertwiner solves.
template <ExactScalar T>
std::optional<std::vector<T>> solve_sparse(std::size_t unknowns, std::vector<SparseRow<T>> rows, const std::vector<T>& rhs) {
  RowReducer<T> reducer(unknowns + 1);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (!scalar_traits<T>::is_zero(rhs[r])) rows[r].emplace_back(unknowns, rhs[r]);
    reducer.add_row(std::move(rows[r]));
  }
  const auto& reduced = reducer.rref();
  if (reduced.count(unknowns)) return std::nullopt;
  std::vector<T> x(unknowns, T(0));
  for (const auto& [c, row] : reduced)
    if (!row.empty() && row.back().first == unknowns) x[c] = row.back().second;
  return x;
}

namespace detail {

template <typename T>
std::size_t choose_pivot(const Matrix<T>& m, std::size_t col, std::size_t from) {
  std::size_t best = m.rows();
  double best_mag = 0.0;
  for (std::size_t r = from; r < m.rows(); ++r) {
    if (scalar_traits<T>::is_zero(m(r, col))) continue;
    if constexpr (scalar_traits<T>::exact) {
      return r;
    } else {
      double mag = scalar_traits<T>::magnitude(m(r, col));
      if (mag > best_mag) {
        best_mag = mag;
        best = r;
      }
    }
  }
  return best;
}

}  // namespace detail

template <typename T>
T determinant(Matrix<T> m) {
  if (!m.square()) throw std::invalid_argument("determinant of non-square matrix");
  const std::size_t n = m.rows();
  T det(1);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = detail::choose_pivot(m, c, c);
    if (p == n) return T(0);
    if (p != c) {
      for (std::size_t k = 0; k < n; ++k) std::swap(m(p, k), m(c, k));
      det = -det;
    }
    T pivot = m(c, c);
    det *= pivot;
    for (std::size_t r = c + 1; r < n; ++r) {
      if (scalar_traits<T>::is_zero(m(r, c))) continue;
      T f = m(r, c) / pivot;
      for (std::size_t k = c; k < n; ++k) m(r, k) -= f * m(c, k);
    }
  }
  return det;
}

// Gauss-Jordan inverse; nullopt for singular input (exact layer) or a
// vanishing pivot (floating layer).
template <typename T>
std::optional<Matrix<T>> inverse(Matrix<T> m) {
  if (!m.square()) throw std::invalid_argument("inverse of non-square matrix");
  const std::size_t n = m.rows();
  Matrix<T> inv = Matrix<T>::identity(n);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = detail::choose_pivot(m, c, c);
    if (p == n) return std::nullopt;
    if constexpr (!scalar_traits<T>::exact) {
      if (scalar_traits<T>::magnitude(m(p, c)) < 1e-300) return std::nullopt;
    }
    if (p != c)
      for (std::size_t k = 0; k < n; ++k) {
        std::swap(m(p, k), m(c, k));
        std::swap(inv(p, k), inv(c, k));
      }
    T pivot = m(c, c);
    for (std::size_t k = 0; k < n; ++k) {
      m(c, k) /= pivot;
      inv(c, k) /= pivot;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || scalar_traits<T>::is_zero(m(r, c))) continue;
      T f = m(r, c);
      for (std::size_t k = 0; k < n; ++k) {
        m(r, k) -= f * m(c, k);
        inv(r, k) -= f * inv(c, k);
      }
    }
  }
  return inv;
}

// Vectorizes a matrix row-major.
template <typename T>
std::vector<T> vectorize(const Matrix<T>& m) {
  return m.data();
}

}  // namespace cliffordlab
