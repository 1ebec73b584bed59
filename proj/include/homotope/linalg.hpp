#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "homotope/matrix.hpp"
#include "homotope/scalar.hpp"

namespace homotope {

/// Incrementally maintained reduced row echelon form.
///
/// Rows are kept sorted by pivot column and fully reduced, so the basis is a
/// deterministic function of the row space (and, for a fixed insertion order,
/// pivots are chosen leftmost-first, topmost-first). Only columns below
/// `pivot_limit` may carry pivots; a vector whose leading `pivot_limit`
/// entries reduce to zero is rejected. The tail columns then act as a
/// bookkeeping area, which is how SpanSolver tracks combinations.
class EchelonBasis {
 public:
  EchelonBasis(const FieldSpec& field, std::size_t ncols);
  EchelonBasis(const FieldSpec& field, std::size_t ncols, std::size_t pivot_limit);

  const FieldSpec& field() const { return field_; }
  std::size_t ncols() const { return ncols_; }
  std::size_t rank() const { return rows_.size(); }
  const std::vector<Vector>& rows() const { return rows_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }
  bool is_pivot(std::size_t col) const { return pivot_row_[col] >= 0; }

  /// Reduces v in place against the current rows.
  void reduce_in_place(Vector& v) const;
  Vector reduce(Vector v) const {
    reduce_in_place(v);
    return v;
  }
  bool contains(const Vector& v) const;
  /// Returns true when v enlarged the span.
  bool insert(Vector v);
  /// Inserts every vector; returns the number that were new.
  std::size_t insert_all(const std::vector<Vector>& vs);

  /// Null space of the matrix whose rows span this space, one vector per
  /// non-pivot column in ascending order.
  std::vector<Vector> kernel() const;
  std::vector<std::size_t> free_columns() const;

 private:
  FieldSpec field_;
  std::size_t ncols_;
  std::size_t pivot_limit_;
  std::vector<Vector> rows_;
  std::vector<std::size_t> pivots_;
  std::vector<long> pivot_row_;
};

/// Expresses vectors as combinations of a fixed spanning list.
class SpanSolver {
 public:
  SpanSolver(const FieldSpec& field, std::size_t ambient_dim, const std::vector<Vector>& generators);

  std::size_t rank() const { return echelon_.rank(); }
  std::size_t generator_count() const { return count_; }
  /// Coefficients c with v = sum c_i g_i, or nullopt when v is outside the span.
  std::optional<Vector> coordinates(const Vector& v) const;
  bool contains(const Vector& v) const;

 private:
  FieldSpec field_;
  std::size_t dim_;
  std::size_t count_;
  EchelonBasis echelon_;
};

/// V / W for a subspace W of k^n. The complement basis is the set of
/// standard basis vectors at the non-pivot columns of W's echelon form.
class QuotientSpace {
 public:
  QuotientSpace(const FieldSpec& field, std::size_t ambient_dim, const std::vector<Vector>& subspace);
  explicit QuotientSpace(EchelonBasis subspace);

  std::size_t ambient_dim() const { return sub_.ncols(); }
  std::size_t dim() const { return complement_.size(); }
  const EchelonBasis& subspace() const { return sub_; }
  /// Ambient indices of the complement basis.
  const std::vector<std::size_t>& complement() const { return complement_; }

  Vector project(const Vector& v) const;
  /// Section of the projection: places coordinates on the complement.
  Vector lift(const Vector& coords) const;
  /// dim x ambient_dim matrix of the projection.
  Matrix projection_matrix() const;

 private:
  EchelonBasis sub_;
  std::vector<std::size_t> complement_;
};

std::size_t rank(const Matrix& m);
/// One exact solution of A x = b with free variables set to zero, or nullopt.
std::optional<Vector> solve(const Matrix& a, const Vector& b);
std::vector<Vector> kernel_basis(const Matrix& a);
std::optional<Matrix> invert(const Matrix& a);
/// Reduced row echelon form of m.
Matrix rref(const Matrix& m);

/// Basis (echelon) of the span of the given vectors.
std::vector<Vector> span_basis(const FieldSpec& field, std::size_t n, const std::vector<Vector>& vs);
std::size_t span_dim(const FieldSpec& field, std::size_t n, const std::vector<Vector>& vs);
bool subspace_contains(const FieldSpec& field, std::size_t n, const std::vector<Vector>& big,
                       const std::vector<Vector>& small);
bool same_subspace(const FieldSpec& field, std::size_t n, const std::vector<Vector>& a, const std::vector<Vector>& b);
/// Intersection of two subspaces of k^n.
std::vector<Vector> intersect(const FieldSpec& field, std::size_t n, const std::vector<Vector>& a,
                              const std::vector<Vector>& b);

}  // namespace homotope
