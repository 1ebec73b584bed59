#include "homotope/linalg.hpp"

#include <algorithm>

#include "homotope/errors.hpp"

namespace homotope {

EchelonBasis::EchelonBasis(const FieldSpec& field, std::size_t ncols) : EchelonBasis(field, ncols, ncols) {}

EchelonBasis::EchelonBasis(const FieldSpec& field, std::size_t ncols, std::size_t pivot_limit)
    : field_(field), ncols_(ncols), pivot_limit_(std::min(pivot_limit, ncols)), pivot_row_(ncols, -1) {}

void EchelonBasis::reduce_in_place(Vector& v) const {
  if (v.size() != ncols_) throw DimensionMismatch("echelon reduce: vector length mismatch");
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    std::size_t c = pivots_[r];
    if (v[c].is_zero()) continue;
    Scalar f = v[c];
    const Vector& row = rows_[r];
    for (std::size_t j = c; j < ncols_; ++j) {
      if (!row[j].is_zero()) v[j].sub_product(f, row[j]);
    }
  }
}

bool EchelonBasis::contains(const Vector& v) const {
  Vector w = reduce(v);
  for (std::size_t j = 0; j < pivot_limit_; ++j) {
    if (!w[j].is_zero()) return false;
  }
  return true;
}

bool EchelonBasis::insert(Vector v) {
  reduce_in_place(v);
  std::size_t lead = pivot_limit_;
  for (std::size_t j = 0; j < pivot_limit_; ++j) {
    if (!v[j].is_zero()) {
      lead = j;
      break;
    }
  }
  if (lead == pivot_limit_) return false;
  Scalar inv = v[lead].inverse();
  for (std::size_t j = lead; j < ncols_; ++j) {
    if (!v[j].is_zero()) v[j] *= inv;
  }
  for (auto& row : rows_) {
    if (row[lead].is_zero()) continue;
    Scalar f = row[lead];
    for (std::size_t j = lead; j < ncols_; ++j) {
      if (!v[j].is_zero()) row[j].sub_product(f, v[j]);
    }
  }
  auto pos = std::lower_bound(pivots_.begin(), pivots_.end(), lead) - pivots_.begin();
  rows_.insert(rows_.begin() + pos, std::move(v));
  pivots_.insert(pivots_.begin() + pos, lead);
  for (std::size_t r = static_cast<std::size_t>(pos); r < pivots_.size(); ++r) {
    pivot_row_[pivots_[r]] = static_cast<long>(r);
  }
  return true;
}

std::size_t EchelonBasis::insert_all(const std::vector<Vector>& vs) {
  std::size_t added = 0;
  for (const auto& v : vs) added += insert(v) ? 1 : 0;
  return added;
}

std::vector<std::size_t> EchelonBasis::free_columns() const {
  std::vector<std::size_t> out;
  for (std::size_t c = 0; c < ncols_; ++c) {
    if (pivot_row_[c] < 0) out.push_back(c);
  }
  return out;
}

std::vector<Vector> EchelonBasis::kernel() const {
  std::vector<Vector> out;
  for (std::size_t f : free_columns()) {
    Vector v = zero_vector(field_, ncols_);
    v[f] = Scalar::one(field_);
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      if (!rows_[r][f].is_zero()) v[pivots_[r]] = -rows_[r][f];
    }
    out.push_back(std::move(v));
  }
  return out;
}

SpanSolver::SpanSolver(const FieldSpec& field, std::size_t ambient_dim, const std::vector<Vector>& generators)
    : field_(field),
      dim_(ambient_dim),
      count_(generators.size()),
      echelon_(field, ambient_dim + generators.size(), ambient_dim) {
  for (std::size_t i = 0; i < generators.size(); ++i) {
    if (generators[i].size() != ambient_dim) throw DimensionMismatch("span solver: generator length mismatch");
    Vector row = generators[i];
    row.resize(ambient_dim + count_, Scalar::zero(field));
    row[ambient_dim + i] = Scalar::one(field);
    echelon_.insert(std::move(row));
  }
}

std::optional<Vector> SpanSolver::coordinates(const Vector& v) const {
  if (v.size() != dim_) throw DimensionMismatch("span solver: vector length mismatch");
  Vector row = v;
  row.resize(dim_ + count_, Scalar::zero(field_));
  echelon_.reduce_in_place(row);
  for (std::size_t j = 0; j < dim_; ++j) {
    if (!row[j].is_zero()) return std::nullopt;
  }
  Vector coords(row.begin() + static_cast<std::ptrdiff_t>(dim_), row.end());
  for (auto& c : coords) c = -c;
  return coords;
}

bool SpanSolver::contains(const Vector& v) const { return coordinates(v).has_value(); }

QuotientSpace::QuotientSpace(const FieldSpec& field, std::size_t ambient_dim, const std::vector<Vector>& subspace)
    : QuotientSpace([&] {
        EchelonBasis e(field, ambient_dim);
        e.insert_all(subspace);
        return e;
      }()) {}

QuotientSpace::QuotientSpace(EchelonBasis subspace) : sub_(std::move(subspace)), complement_(sub_.free_columns()) {}

Vector QuotientSpace::project(const Vector& v) const {
  Vector w = sub_.reduce(v);
  Vector out;
  out.reserve(complement_.size());
  for (std::size_t c : complement_) out.push_back(w[c]);
  return out;
}

Vector QuotientSpace::lift(const Vector& coords) const {
  if (coords.size() != complement_.size()) throw DimensionMismatch("quotient lift: length mismatch");
  Vector v = zero_vector(sub_.field(), sub_.ncols());
  for (std::size_t i = 0; i < complement_.size(); ++i) v[complement_[i]] = coords[i];
  return v;
}

Matrix QuotientSpace::projection_matrix() const {
  Matrix p(sub_.field(), dim(), ambient_dim());
  for (std::size_t c = 0; c < ambient_dim(); ++c) {
    p.set_col(c, project(unit_vector(sub_.field(), ambient_dim(), c)));
  }
  return p;
}

std::size_t rank(const Matrix& m) {
  EchelonBasis e(m.field(), m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r) e.insert(m.row(r));
  return e.rank();
}

std::optional<Vector> solve(const Matrix& a, const Vector& b) {
  if (a.rows() != b.size()) throw DimensionMismatch("solve: A.rows != b.rows");
  const std::size_t n = a.cols();
  EchelonBasis e(a.field(), n + 1);
  for (std::size_t r = 0; r < a.rows(); ++r) {
    Vector row = a.row(r);
    row.push_back(b[r]);
    e.insert(std::move(row));
  }
  if (e.is_pivot(n)) return std::nullopt;
  Vector x = zero_vector(a.field(), n);
  for (std::size_t r = 0; r < e.rank(); ++r) x[e.pivots()[r]] = e.rows()[r][n];
  return x;
}

std::vector<Vector> kernel_basis(const Matrix& a) {
  EchelonBasis e(a.field(), a.cols());
  for (std::size_t r = 0; r < a.rows(); ++r) e.insert(a.row(r));
  return e.kernel();
}

std::optional<Matrix> invert(const Matrix& a) {
  if (!a.is_square()) throw DimensionMismatch("invert: matrix is not square");
  const std::size_t n = a.rows();
  EchelonBasis e(a.field(), 2 * n, n);
  for (std::size_t r = 0; r < n; ++r) {
    Vector row = a.row(r);
    row.resize(2 * n, Scalar::zero(a.field()));
    row[n + r] = Scalar::one(a.field());
    e.insert(std::move(row));
  }
  if (e.rank() < n) return std::nullopt;
  Matrix inv(a.field(), n, n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) inv(r, c) = e.rows()[r][n + c];
  }
  return inv;
}

Matrix rref(const Matrix& m) {
  EchelonBasis e(m.field(), m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r) e.insert(m.row(r));
  Matrix out(m.field(), m.rows(), m.cols());
  for (std::size_t r = 0; r < e.rank(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) out(r, c) = e.rows()[r][c];
  }
  return out;
}

std::vector<Vector> span_basis(const FieldSpec& field, std::size_t n, const std::vector<Vector>& vs) {
  EchelonBasis e(field, n);
  e.insert_all(vs);
  return e.rows();
}

std::size_t span_dim(const FieldSpec& field, std::size_t n, const std::vector<Vector>& vs) {
  EchelonBasis e(field, n);
  e.insert_all(vs);
  return e.rank();
}

bool subspace_contains(const FieldSpec& field, std::size_t n, const std::vector<Vector>& big,
                       const std::vector<Vector>& small) {
  EchelonBasis e(field, n);
  e.insert_all(big);
  return std::all_of(small.begin(), small.end(), [&](const Vector& v) { return e.contains(v); });
}

bool same_subspace(const FieldSpec& field, std::size_t n, const std::vector<Vector>& a, const std::vector<Vector>& b) {
  return span_dim(field, n, a) == span_dim(field, n, b) && subspace_contains(field, n, a, b);
}

std::vector<Vector> intersect(const FieldSpec& field, std::size_t n, const std::vector<Vector>& a,
                              const std::vector<Vector>& b) {
  // x = sum s_i a_i = sum t_j b_j  <=>  (s, t) in ker [A | -B]
  auto ba = span_basis(field, n, a);
  auto bb = span_basis(field, n, b);
  Matrix m(field, n, ba.size() + bb.size());
  for (std::size_t i = 0; i < ba.size(); ++i) m.set_col(i, ba[i]);
  for (std::size_t j = 0; j < bb.size(); ++j) m.set_col(ba.size() + j, scaled(-Scalar::one(field), bb[j]));
  std::vector<Vector> out;
  for (const auto& k : kernel_basis(m)) {
    Vector x = zero_vector(field, n);
    for (std::size_t i = 0; i < ba.size(); ++i) axpy(x, k[i], ba[i]);
    out.push_back(std::move(x));
  }
  return span_basis(field, n, out);
}

}  // namespace homotope
