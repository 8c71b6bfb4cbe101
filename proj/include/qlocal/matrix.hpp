#pragma once

// Dense matrices over Scalar with exact elimination.

#include <qlocal/field.hpp>

#include <algorithm>
#include <cstddef>
#include <string>
#include <vector>

namespace qlocal {

class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  Matrix(std::size_t rows, std::size_t cols, std::vector<Scalar> data)
      : rows_(rows), cols_(cols), data_(std::move(data)) {
    if (data_.size() != rows * cols) throw Error("matrix data size mismatch");
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  static Matrix from_rows(const std::vector<std::vector<Scalar>>& rows) {
    std::size_t r = rows.size(), c = r ? rows[0].size() : 0;
    Matrix m(r, c);
    for (std::size_t i = 0; i < r; ++i) {
      if (rows[i].size() != c) throw Error("ragged matrix rows");
      for (std::size_t j = 0; j < c; ++j) m(i, j) = rows[i][j];
    }
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  Scalar& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Scalar& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  bool is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](const Scalar& s) { return s.is_zero(); });
  }

  /// True when this is c * identity for some c; c is written to *scale.
  bool is_scalar_multiple_of_identity(Scalar* scale = nullptr) const {
    if (!square()) return false;
    Scalar c = rows_ ? (*this)(0, 0) : Scalar(0);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j)
        if ((*this)(i, j) != (i == j ? c : Scalar(0))) return false;
    if (scale) *scale = c;
    return true;
  }

  friend Matrix operator+(Matrix a, const Matrix& b) {
    a.check_same(b);
    for (std::size_t k = 0; k < a.data_.size(); ++k) a.data_[k] += b.data_[k];
    return a;
  }
  friend Matrix operator-(Matrix a, const Matrix& b) {
    a.check_same(b);
    for (std::size_t k = 0; k < a.data_.size(); ++k) a.data_[k] -= b.data_[k];
    return a;
  }
  friend Matrix operator-(Matrix a) {
    for (auto& x : a.data_) x = -x;
    return a;
  }
  friend Matrix operator*(const Scalar& s, Matrix a) {
    for (auto& x : a.data_) x *= s;
    return a;
  }
  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_)
      throw Error("matrix product shape mismatch: " + a.shape() + " * " + b.shape());
    Matrix r(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const Scalar& x = a(i, k);
        if (x.is_zero()) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) {
          const Scalar& y = b(k, j);
          if (!y.is_zero()) r(i, j) += x * y;
        }
      }
    return r;
  }
  Matrix& operator+=(const Matrix& o) { return *this = *this + o; }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }
  friend bool operator!=(const Matrix& a, const Matrix& b) { return !(a == b); }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  /// Reduced row echelon form in place; returns pivot columns.
  std::vector<std::size_t> rref() {
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < cols_ && row < rows_; ++col) {
      std::size_t p = row;
      while (p < rows_ && (*this)(p, col).is_zero()) ++p;
      if (p == rows_) continue;
      swap_rows(p, row);
      Scalar inv = (*this)(row, col).inverse();
      for (std::size_t j = col; j < cols_; ++j) (*this)(row, j) *= inv;
      for (std::size_t i = 0; i < rows_; ++i) {
        if (i == row || (*this)(i, col).is_zero()) continue;
        Scalar f = (*this)(i, col);
        for (std::size_t j = col; j < cols_; ++j)
          if (!(*this)(row, j).is_zero()) (*this)(i, j) -= f * (*this)(row, j);
      }
      pivots.push_back(col);
      ++row;
    }
    return pivots;
  }

  std::size_t rank() const {
    Matrix m = *this;
    return m.rref().size();
  }

  /// Rank by Bareiss fraction-free elimination: every division is exact in the
  /// ring generated by the entries, so no intermediate fractions appear when
  /// the input is integral.
  std::size_t rank_fraction_free() const {
    Matrix m = *this;
    Scalar prev = 1;
    std::size_t r = 0;
    for (std::size_t col = 0; col < cols_ && r < rows_; ++col) {
      std::size_t p = r;
      while (p < rows_ && m(p, col).is_zero()) ++p;
      if (p == rows_) continue;
      m.swap_rows(p, r);
      const Scalar piv = m(r, col);
      for (std::size_t i = r + 1; i < rows_; ++i) {
        for (std::size_t j = col + 1; j < cols_; ++j)
          m(i, j) = (piv * m(i, j) - m(i, col) * m(r, j)) / prev;
        m(i, col) = 0;
      }
      prev = piv;
      ++r;
    }
    return r;
  }

  /// Basis of { x : A x = 0 } as columns of the result.
  Matrix nullspace() const {
    Matrix m = *this;
    auto pivots = m.rref();
    std::vector<bool> is_pivot(cols_, false);
    for (auto p : pivots) is_pivot[p] = true;
    std::vector<std::size_t> free;
    for (std::size_t j = 0; j < cols_; ++j)
      if (!is_pivot[j]) free.push_back(j);
    Matrix basis(cols_, free.size());
    for (std::size_t k = 0; k < free.size(); ++k) {
      basis(free[k], k) = 1;
      for (std::size_t i = 0; i < pivots.size(); ++i) basis(pivots[i], k) = -m(i, free[k]);
    }
    return basis;
  }

  Matrix inverse() const {
    if (!square()) throw Error("inverse of non-square matrix");
    Matrix aug(rows_, 2 * cols_);
    for (std::size_t i = 0; i < rows_; ++i) {
      for (std::size_t j = 0; j < cols_; ++j) aug(i, j) = (*this)(i, j);
      aug(i, cols_ + i) = 1;
    }
    auto piv = aug.rref();
    if (piv.size() < rows_ || (rows_ && piv[rows_ - 1] >= cols_)) throw Error("singular matrix");
    Matrix inv(rows_, cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) inv(i, j) = aug(i, cols_ + j);
    return inv;
  }

  Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
    Matrix b(nr, nc);
    for (std::size_t i = 0; i < nr; ++i)
      for (std::size_t j = 0; j < nc; ++j) b(i, j) = (*this)(r0 + i, c0 + j);
    return b;
  }

  void set_block(std::size_t r0, std::size_t c0, const Matrix& b) {
    for (std::size_t i = 0; i < b.rows(); ++i)
      for (std::size_t j = 0; j < b.cols(); ++j) (*this)(r0 + i, c0 + j) = b(i, j);
  }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
  }

  std::string shape() const { return std::to_string(rows_) + "x" + std::to_string(cols_); }

  const std::vector<Scalar>& data() const { return data_; }

 private:
  void check_same(const Matrix& b) const {
    if (rows_ != b.rows_ || cols_ != b.cols_)
      throw Error("matrix shape mismatch: " + shape() + " vs " + b.shape());
  }

  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Scalar> data_;
};

inline Matrix direct_sum(const Matrix& a, const Matrix& b) {
  Matrix r(a.rows() + b.rows(), a.cols() + b.cols());
  r.set_block(0, 0, a);
  r.set_block(a.rows(), a.cols(), b);
  return r;
}

/// Incrementally maintained row echelon basis of a subspace of F^n. Used for
/// span-closure computations.
class EchelonBasis {
 public:
  explicit EchelonBasis(std::size_t dim) : dim_(dim) {}

  std::size_t dim() const { return dim_; }
  std::size_t size() const { return rows_.size(); }

  /// Reduce v against the basis; returns the remainder.
  std::vector<Scalar> reduce(std::vector<Scalar> v) const {
    for (std::size_t k = 0; k < rows_.size(); ++k) {
      const Scalar c = v[pivots_[k]];
      if (c.is_zero()) continue;
      for (std::size_t j = 0; j < dim_; ++j)
        if (!rows_[k][j].is_zero()) v[j] -= c * rows_[k][j];
    }
    return v;
  }

  bool contains(const std::vector<Scalar>& v) const {
    auto r = reduce(v);
    return std::all_of(r.begin(), r.end(), [](const Scalar& s) { return s.is_zero(); });
  }

  /// Adds v if independent; returns whether the span grew.
  bool insert(std::vector<Scalar> v) {
    v = reduce(std::move(v));
    std::size_t p = 0;
    while (p < dim_ && v[p].is_zero()) ++p;
    if (p == dim_) return false;
    Scalar inv = v[p].inverse();
    for (auto& x : v) x *= inv;
    // keep existing rows reduced in the new pivot column
    for (auto& row : rows_) {
      const Scalar c = row[p];
      if (c.is_zero()) continue;
      for (std::size_t j = 0; j < dim_; ++j)
        if (!v[j].is_zero()) row[j] -= c * v[j];
    }
    rows_.push_back(std::move(v));
    pivots_.push_back(p);
    return true;
  }

 private:
  std::size_t dim_;
  std::vector<std::vector<Scalar>> rows_;
  std::vector<std::size_t> pivots_;
};

}  // namespace qlocal
