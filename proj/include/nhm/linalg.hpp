#pragma once

// Exact linear algebra over Q: a small sparse-row matrix, elimination-based
// rank and kernel, and Betti numbers of finite cochain complexes.

#include <nhm/rational.hpp>

#include <algorithm>
#include <cstddef>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace nhm {

class Matrix {
 public:
  using Row = std::map<std::size_t, Rational>;

  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Rational at(std::size_t r, std::size_t c) const {
    auto it = data_[r].find(c);
    return it == data_[r].end() ? Rational(0) : it->second;
  }

  void set(std::size_t r, std::size_t c, const Rational& v) {
    if (v == 0)
      data_[r].erase(c);
    else
      data_[r][c] = v;
  }

  void add(std::size_t r, std::size_t c, const Rational& v) {
    if (v == 0) return;
    auto& slot = data_[r][c];
    slot += v;
    if (slot == 0) data_[r].erase(c);
  }

  const Row& row(std::size_t r) const { return data_[r]; }

  bool is_zero() const {
    for (const auto& r : data_)
      if (!r.empty()) return false;
    return true;
  }

  std::size_t nonzeros() const {
    std::size_t n = 0;
    for (const auto& r : data_) n += r.size();
    return n;
  }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (const auto& [c, v] : data_[r]) t.data_[c][r] = v;
    return t;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("matrix product: shape mismatch");
    Matrix out(a.rows_, b.cols_);
    for (std::size_t r = 0; r < a.rows_; ++r)
      for (const auto& [k, v] : a.data_[r])
        for (const auto& [c, w] : b.data_[k]) out.add(r, c, v * w);
    return out;
  }

  friend Matrix operator+(const Matrix& a, const Matrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw std::invalid_argument("matrix sum: shape mismatch");
    Matrix out = a;
    for (std::size_t r = 0; r < b.rows_; ++r)
      for (const auto& [c, v] : b.data_[r]) out.add(r, c, v);
    return out;
  }

  Matrix scaled(const Rational& s) const {
    Matrix out(rows_, cols_);
    if (s == 0) return out;
    for (std::size_t r = 0; r < rows_; ++r)
      for (const auto& [c, v] : data_[r]) out.data_[r][c] = v * s;
    return out;
  }

  /// Places `block` with its top-left corner at (r0, c0).
  void paste(const Matrix& block, std::size_t r0, std::size_t c0) {
    for (std::size_t r = 0; r < block.rows_; ++r)
      for (const auto& [c, v] : block.data_[r]) add(r0 + r, c0 + c, v);
  }

  std::vector<Rational> apply(const std::vector<Rational>& x) const {
    if (x.size() != cols_) throw std::invalid_argument("matrix-vector product: shape mismatch");
    std::vector<Rational> y(rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (const auto& [c, v] : data_[r]) y[r] += v * x[c];
    return y;
  }

  /// Matrix whose columns are the given vectors.
  static Matrix from_columns(std::size_t rows, const std::vector<std::vector<Rational>>& columns) {
    Matrix m(rows, columns.size());
    for (std::size_t c = 0; c < columns.size(); ++c)
      for (std::size_t r = 0; r < rows; ++r) m.set(r, c, columns[c][r]);
    return m;
  }

  /// Side-by-side concatenation [a | b].
  static Matrix hcat(const Matrix& a, const Matrix& b) {
    if (a.rows_ != b.rows_) throw std::invalid_argument("hcat: row mismatch");
    Matrix out(a.rows_, a.cols_ + b.cols_);
    out.paste(a, 0, 0);
    out.paste(b, 0, a.cols_);
    return out;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Row> data_;
};

/// Reduced row echelon form. Returns pivot columns; `m` is overwritten.
inline std::vector<std::size_t> row_reduce(Matrix& m) {
  std::vector<Matrix::Row> rows(m.rows());
  for (std::size_t r = 0; r < m.rows(); ++r) rows[r] = m.row(r);

  std::vector<std::size_t> pivots;
  std::vector<Matrix::Row> reduced;  // rows with a pivot, in pivot order
  std::vector<bool> used(rows.size(), false);

  // column-major sweep; pick the sparsest available row as pivot
  for (std::size_t col = 0; col < m.cols(); ++col) {
    std::size_t best = rows.size();
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (used[r] || rows[r].empty() || rows[r].begin()->first != col) continue;
      if (best == rows.size() || rows[r].size() < rows[best].size()) best = r;
    }
    if (best == rows.size()) continue;
    used[best] = true;
    Rational inv = 1 / rows[best].begin()->second;
    for (auto& [c, v] : rows[best]) v *= inv;
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (used[r] || rows[r].empty() || rows[r].begin()->first != col) continue;
      Rational factor = rows[r].begin()->second;
      for (const auto& [c, v] : rows[best]) {
        auto& slot = rows[r][c];
        slot -= factor * v;
        if (slot == 0) rows[r].erase(c);
      }
    }
    pivots.push_back(col);
    reduced.push_back(rows[best]);
    rows[best].clear();
  }

  // back-substitution to clear entries above pivots
  for (std::size_t k = reduced.size(); k-- > 0;) {
    std::size_t col = pivots[k];
    for (std::size_t j = 0; j < k; ++j) {
      auto it = reduced[j].find(col);
      if (it == reduced[j].end()) continue;
      Rational factor = it->second;
      for (const auto& [c, v] : reduced[k]) {
        auto& slot = reduced[j][c];
        slot -= factor * v;
        if (slot == 0) reduced[j].erase(c);
      }
    }
  }

  Matrix out(m.rows(), m.cols());
  for (std::size_t k = 0; k < reduced.size(); ++k)
    for (const auto& [c, v] : reduced[k]) out.set(k, c, v);
  m = std::move(out);
  return pivots;
}

inline std::size_t rank(Matrix m) {
  // forward elimination only
  std::vector<Matrix::Row> rows(m.rows());
  for (std::size_t r = 0; r < m.rows(); ++r) rows[r] = m.row(r);
  std::vector<bool> used(rows.size(), false);
  std::size_t rk = 0;
  for (std::size_t col = 0; col < m.cols(); ++col) {
    std::size_t best = rows.size();
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (used[r] || rows[r].empty() || rows[r].begin()->first != col) continue;
      if (best == rows.size() || rows[r].size() < rows[best].size()) best = r;
    }
    if (best == rows.size()) continue;
    used[best] = true;
    ++rk;
    const Rational lead = rows[best].begin()->second;
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (used[r] || rows[r].empty() || rows[r].begin()->first != col) continue;
      Rational factor = rows[r].begin()->second / lead;
      for (const auto& [c, v] : rows[best]) {
        auto& slot = rows[r][c];
        slot -= factor * v;
        if (slot == 0) rows[r].erase(c);
      }
    }
  }
  return rk;
}

/// Basis of the right kernel {x : m x = 0}.
inline std::vector<std::vector<Rational>> nullspace(const Matrix& m) {
  Matrix r = m;
  auto pivots = row_reduce(r);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : pivots) is_pivot[p] = true;
  std::vector<std::vector<Rational>> basis;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    std::vector<Rational> x(m.cols());
    x[free] = 1;
    for (std::size_t k = 0; k < pivots.size(); ++k) x[pivots[k]] = -r.at(k, free);
    basis.push_back(std::move(x));
  }
  return basis;
}

/// Cochain complex of finite-dimensional Q-vector spaces:
/// C^0 -> C^1 -> ... -> C^N, with differentials[q] : C^q -> C^{q+1}.
struct FreeComplex {
  std::vector<std::vector<std::string>> basis;
  std::vector<Matrix> differentials;

  std::size_t dimension(std::size_t q) const { return q < basis.size() ? basis[q].size() : 0; }
};

/// Betti numbers b_q = dim ker d_q - rank d_{q-1}.
inline std::vector<std::size_t> betti(const FreeComplex& c) {
  const std::size_t n = c.basis.size();
  if (c.differentials.size() + 1 < n) throw std::invalid_argument("betti: missing differentials");
  for (std::size_t q = 0; q + 1 < n; ++q) {
    const auto& d = c.differentials[q];
    if (d.cols() != c.dimension(q) || d.rows() != c.dimension(q + 1))
      throw std::invalid_argument("betti: differential " + std::to_string(q) + " has wrong shape");
  }
  for (std::size_t q = 0; q + 2 < n; ++q)
    if (!(c.differentials[q + 1] * c.differentials[q]).is_zero())
      throw std::invalid_argument("betti: consecutive differentials do not compose to zero at degree " +
                                  std::to_string(q));
  std::vector<std::size_t> ranks(n, 0);
  for (std::size_t q = 0; q + 1 < n; ++q) ranks[q] = rank(c.differentials[q]);
  std::vector<std::size_t> b(n);
  for (std::size_t q = 0; q < n; ++q) {
    std::size_t kernel = c.dimension(q) - ranks[q];
    b[q] = kernel - (q > 0 ? ranks[q - 1] : 0);
  }
  return b;
}

}  // namespace nhm
