#pragma once

#include <cstddef>
#include <initializer_list>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "jetcomm/field.hpp"

namespace jetcomm {

/// Dense row-major matrix over an exact field.
template <ExactField F>
class Matrix {
 public:
  using value_type = typename F::value_type;

  Matrix(F field, std::size_t rows, std::size_t cols)
      : field_(std::move(field)), rows_(rows), cols_(cols), data_(rows * cols, field_.zero()) {}

  Matrix(F field, std::size_t rows, std::size_t cols, std::vector<value_type> entries)
      : field_(std::move(field)), rows_(rows), cols_(cols), data_(std::move(entries)) {
    if (data_.size() != rows_ * cols_) throw std::invalid_argument("entry count does not match shape");
  }

  static Matrix identity(const F& field, std::size_t n) {
    Matrix m(field, n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = field.one();
    return m;
  }

  /// Unit matrix e_{i,j} (0-based).
  static Matrix unit(const F& field, std::size_t n, std::size_t i, std::size_t j) {
    Matrix m(field, n, n);
    m(i, j) = field.one();
    return m;
  }

  static Matrix from_ints(const F& field, std::size_t rows, std::size_t cols,
                          std::initializer_list<std::int64_t> values) {
    if (values.size() != rows * cols) throw std::invalid_argument("entry count does not match shape");
    Matrix m(field, rows, cols);
    std::size_t idx = 0;
    for (auto v : values) m.data_[idx++] = field.from_int(v);
    return m;
  }

  static Matrix random(const F& field, std::size_t rows, std::size_t cols, Rng& rng) {
    Matrix m(field, rows, cols);
    for (auto& v : m.data_) v = field.random(rng);
    return m;
  }

  [[nodiscard]] const F& field() const { return field_; }
  [[nodiscard]] std::size_t rows() const { return rows_; }
  [[nodiscard]] std::size_t cols() const { return cols_; }
  [[nodiscard]] bool is_square() const { return rows_ == cols_; }

  value_type& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const value_type& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  [[nodiscard]] std::span<const value_type> row(std::size_t i) const {
    return {data_.data() + i * cols_, cols_};
  }
  [[nodiscard]] const std::vector<value_type>& data() const { return data_; }
  std::vector<value_type>& data() { return data_; }

  [[nodiscard]] bool is_zero() const {
    for (const auto& v : data_) {
      if (!field_.is_zero(v)) return false;
    }
    return true;
  }

  [[nodiscard]] Matrix transpose() const {
    Matrix t(field_, cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  [[nodiscard]] Matrix scaled(const value_type& c) const {
    Matrix r = *this;
    for (auto& v : r.data_) v = field_.mul(c, v);
    return r;
  }

  [[nodiscard]] value_type trace() const {
    require_square("trace");
    auto t = field_.zero();
    for (std::size_t i = 0; i < rows_; ++i) t = field_.add(t, (*this)(i, i));
    return t;
  }

  /// Copy of the rows [r0, r0+nr) x columns [c0, c0+nc).
  [[nodiscard]] Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
    Matrix b(field_, nr, nc);
    for (std::size_t i = 0; i < nr; ++i)
      for (std::size_t j = 0; j < nc; ++j) b(i, j) = (*this)(r0 + i, c0 + j);
    return b;
  }

  void set_block(std::size_t r0, std::size_t c0, const Matrix& b) {
    for (std::size_t i = 0; i < b.rows(); ++i)
      for (std::size_t j = 0; j < b.cols(); ++j) (*this)(r0 + i, c0 + j) = b(i, j);
  }

  Matrix& operator+=(const Matrix& o) {
    require_same_shape(o);
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] = field_.add(data_[i], o.data_[i]);
    return *this;
  }
  Matrix& operator-=(const Matrix& o) {
    require_same_shape(o);
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] = field_.sub(data_[i], o.data_[i]);
    return *this;
  }

  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend Matrix operator-(Matrix a) {
    for (auto& v : a.data_) v = a.field_.neg(v);
    return a;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("matrix product shape mismatch");
    const F& f = a.field_;
    Matrix c(f, a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i) {
      for (std::size_t m = 0; m < a.cols_; ++m) {
        const auto& aim = a(i, m);
        if (f.is_zero(aim)) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) = f.add(c(i, j), f.mul(aim, b(m, j)));
      }
    }
    return c;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  friend std::ostream& operator<<(std::ostream& os, const Matrix& m) {
    for (std::size_t i = 0; i < m.rows_; ++i) {
      for (std::size_t j = 0; j < m.cols_; ++j) os << (j ? " " : "") << m.field_.to_string(m(i, j));
      os << '\n';
    }
    return os;
  }

 private:
  void require_same_shape(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("matrix shape mismatch");
  }
  void require_square(const char* what) const {
    if (rows_ != cols_) throw std::invalid_argument(std::string(what) + " needs a square matrix");
  }

  F field_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<value_type> data_;
};

template <ExactField F>
Matrix<F> commutator(const Matrix<F>& a, const Matrix<F>& b) {
  return a * b - b * a;
}

template <ExactField F>
Matrix<F> power(const Matrix<F>& a, std::size_t e) {
  Matrix<F> r = Matrix<F>::identity(a.field(), a.rows());
  for (std::size_t i = 0; i < e; ++i) r = r * a;
  return r;
}

/// Block-diagonal direct sum.
template <ExactField F>
Matrix<F> direct_sum(const Matrix<F>& a, const Matrix<F>& b) {
  Matrix<F> r(a.field(), a.rows() + b.rows(), a.cols() + b.cols());
  r.set_block(0, 0, a);
  r.set_block(a.rows(), a.cols(), b);
  return r;
}

/// Nilpotent Jordan block J_n (ones on the superdiagonal).
template <ExactField F>
Matrix<F> jordan_block(const F& field, std::size_t n) {
  Matrix<F> j(field, n, n);
  for (std::size_t i = 0; i + 1 < n; ++i) j(i, i + 1) = field.one();
  return j;
}

template <ExactField F>
Matrix<F> diagonal(const F& field, const std::vector<typename F::value_type>& d) {
  Matrix<F> m(field, d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return m;
}

}  // namespace jetcomm
