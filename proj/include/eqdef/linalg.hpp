#pragma once

// Dense exact linear algebra over k.

#include <optional>
#include <vector>

#include "eqdef/scalar.hpp"

namespace eqdef {

using Vector = std::vector<Scalar>;

inline Vector zero_vector(const Field& k, std::size_t n) { return Vector(n, Scalar::zero(k)); }

inline bool is_zero(const Vector& v) {
  for (const auto& x : v)
    if (!x.is_zero()) return false;
  return true;
}

/// v += c * w
inline void axpy(Vector& v, const Scalar& c, const Vector& w) {
  if (c.is_zero()) return;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (!w[i].is_zero()) v[i] += c * w[i];
}

class Matrix {
 public:
  Matrix() = default;
  Matrix(const Field& k, std::size_t rows, std::size_t cols)
      : k_(k), rows_(rows), cols_(cols), data_(rows * cols, Scalar::zero(k)) {}

  static Matrix identity(const Field& k, std::size_t n) {
    Matrix m(k, n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = Scalar::one(k);
    return m;
  }

  const Field& field() const { return k_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Scalar& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Scalar& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  Vector row(std::size_t r) const { return Vector(data_.begin() + r * cols_, data_.begin() + (r + 1) * cols_); }
  Vector column(std::size_t c) const {
    Vector v;
    v.reserve(rows_);
    for (std::size_t r = 0; r < rows_; ++r) v.push_back((*this)(r, c));
    return v;
  }

  Vector apply(const Vector& v) const {
    Vector out = zero_vector(k_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) {
        const auto& a = (*this)(r, c);
        if (!a.is_zero() && !v[c].is_zero()) out[r] += a * v[c];
      }
    return out;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    Matrix m(a.k_, a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t l = 0; l < a.cols_; ++l) {
        const auto& x = a(i, l);
        if (x.is_zero()) continue;
        for (std::size_t j = 0; j < b.cols_; ++j)
          if (!b(l, j).is_zero()) m(i, j) += x * b(l, j);
      }
    return m;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  Field k_;
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Scalar> data_;
};

/// An incrementally built row space kept in reduced row echelon form, so the
/// coordinates of a member vector are its entries at the pivot columns.
class EchelonBasis {
 public:
  EchelonBasis() = default;
  EchelonBasis(const Field& k, std::size_t dim) : k_(k), dim_(dim) {}

  std::size_t dim() const { return dim_; }
  std::size_t rank() const { return rows_.size(); }
  const std::vector<Vector>& rows() const { return rows_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }

  Vector reduce(Vector v) const {
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      const auto& c = v[pivots_[i]];
      if (!c.is_zero()) axpy(v, -c, rows_[i]);
    }
    return v;
  }

  bool contains(const Vector& v) const { return is_zero(reduce(v)); }

  /// Adds v to the span; returns false if it was already there.
  bool insert(const Vector& v) {
    Vector r = reduce(v);
    std::size_t p = 0;
    while (p < r.size() && r[p].is_zero()) ++p;
    if (p == r.size()) return false;
    Scalar inv = r[p].inverse();
    for (auto& x : r)
      if (!x.is_zero()) x *= inv;
    for (auto& row : rows_) {
      const Scalar c = row[p];
      if (!c.is_zero()) axpy(row, -c, r);
    }
    // keep rows ordered by pivot for deterministic output
    std::size_t at = 0;
    while (at < pivots_.size() && pivots_[at] < p) ++at;
    rows_.insert(rows_.begin() + static_cast<long>(at), std::move(r));
    pivots_.insert(pivots_.begin() + static_cast<long>(at), p);
    return true;
  }

  /// Coordinates of a member vector with respect to rows().
  Vector coordinates(const Vector& v) const {
    Vector c;
    c.reserve(rows_.size());
    for (auto p : pivots_) c.push_back(v[p]);
    return c;
  }

 private:
  Field k_;
  std::size_t dim_ = 0;
  std::vector<Vector> rows_;
  std::vector<std::size_t> pivots_;
};

/// Rank of the span of the given vectors.
inline std::size_t rank_of(const Field& k, std::size_t dim, const std::vector<Vector>& vs) {
  EchelonBasis b(k, dim);
  for (const auto& v : vs) b.insert(v);
  return b.rank();
}

/// Basis of { x : M x = 0 }, one vector per free column, in RREF order.
inline std::vector<Vector> nullspace(const Matrix& m) {
  const Field& k = m.field();
  EchelonBasis rows(k, m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r) rows.insert(m.row(r));
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : rows.pivots()) is_pivot[p] = true;
  std::vector<Vector> out;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    Vector x = zero_vector(k, m.cols());
    x[f] = Scalar::one(k);
    for (std::size_t i = 0; i < rows.rank(); ++i) x[rows.pivots()[i]] = -rows.rows()[i][f];
    out.push_back(std::move(x));
  }
  return out;
}

/// Some x with M x = b, if one exists.
inline std::optional<Vector> solve(const Matrix& m, const Vector& b) {
  const Field& k = m.field();
  const std::size_t n = m.cols();
  EchelonBasis rows(k, n + 1);
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Vector row = m.row(r);
    row.push_back(b[r]);
    rows.insert(row);
  }
  Vector x = zero_vector(k, n);
  for (std::size_t i = 0; i < rows.rank(); ++i) {
    auto p = rows.pivots()[i];
    if (p == n) return std::nullopt;
    x[p] = rows.rows()[i][n];
  }
  return x;
}

}  // namespace eqdef
