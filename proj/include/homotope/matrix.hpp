#pragma once

#include <cstddef>
#include <initializer_list>
#include <iosfwd>
#include <vector>

#include "homotope/scalar.hpp"

namespace homotope {

/// Dense row-major matrix over a FieldSpec.
class Matrix {
 public:
  Matrix() = default;
  Matrix(const FieldSpec& field, std::size_t rows, std::size_t cols);

  static Matrix identity(const FieldSpec& field, std::size_t n);
  /// Integer literal rows, for tests and fixtures.
  static Matrix from_rows(const FieldSpec& field, std::initializer_list<std::initializer_list<long>> rows);
  static Matrix from_columns(const FieldSpec& field, std::size_t rows, const std::vector<Vector>& columns);
  static Matrix from_row_vectors(const FieldSpec& field, std::size_t cols, const std::vector<Vector>& rows);
  static Matrix column(const Vector& v);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const FieldSpec& field() const { return field_; }
  bool is_square() const { return rows_ == cols_; }

  Scalar& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Scalar& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  Vector row(std::size_t r) const;
  Vector col(std::size_t c) const;
  void set_col(std::size_t c, const Vector& v);
  /// Row-major flattening; used to treat matrices as vectors.
  const Vector& entries() const { return data_; }
  static Matrix from_entries(const FieldSpec& field, std::size_t rows, std::size_t cols, Vector entries);

  Matrix transpose() const;
  bool is_zero() const;
  Scalar trace() const;

  Matrix& operator+=(const Matrix& o);
  Matrix& operator-=(const Matrix& o);
  /// this += a * o
  void add_scaled(const Scalar& a, const Matrix& o);

  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend Matrix operator*(const Matrix& a, const Matrix& b);
  friend Matrix operator*(const Scalar& s, Matrix m);
  friend Vector operator*(const Matrix& a, const Vector& v);
  friend bool operator==(const Matrix& a, const Matrix& b);

 private:
  FieldSpec field_;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  Vector data_;
};

std::ostream& operator<<(std::ostream& os, const Matrix& m);

/// Block-diagonal sum of square or rectangular blocks.
Matrix block_diagonal(const FieldSpec& field, const std::vector<Matrix>& blocks);

}  // namespace homotope
