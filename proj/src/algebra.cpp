#include "homotope/algebra.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <set>
#include <sstream>

#include "homotope/errors.hpp"
#include "homotope/linalg.hpp"

namespace homotope {

Element& Element::operator+=(const Element& o) {
  if (o.size() != size()) throw DimensionMismatch("element sum: length mismatch");
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
  return *this;
}

Element& Element::operator-=(const Element& o) {
  if (o.size() != size()) throw DimensionMismatch("element difference: length mismatch");
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
  return *this;
}

Element operator-(Element a) {
  for (auto& x : a.c_) x = -x;
  return a;
}

Element operator*(const Scalar& s, Element a) {
  for (auto& x : a.c_) x *= s;
  return a;
}

Element WedderburnLift::block_identity(std::size_t b) const {
  Element e = units[b][0];
  for (std::size_t i = 1; i < block_sizes[b]; ++i) e += unit(b, i, i);
  return e;
}

Algebra::Algebra(const FieldSpec& field, std::size_t dim, const std::vector<StructureConstant>& sc,
                 std::vector<std::string> labels, std::optional<Element> unit)
    : field_(field), dim_(dim), labels_(std::move(labels)), table_(dim * dim) {
  if (labels_.empty()) {
    for (std::size_t i = 0; i < dim; ++i) labels_.push_back("e" + std::to_string(i));
  }
  if (labels_.size() != dim) throw DimensionMismatch("label count does not match dimension");
  std::set<std::string> seen(labels_.begin(), labels_.end());
  if (seen.size() != dim) throw ParseError("basis labels are not unique");
  for (const auto& s : sc) {
    if (s.i >= dim || s.j >= dim || s.l >= dim) {
      throw DimensionMismatch("structure constant index out of range: (" + std::to_string(s.i) + ", " +
                              std::to_string(s.j) + ", " + std::to_string(s.l) + ") with dim " +
                              std::to_string(dim));
    }
    if (!(s.c.field() == field)) throw FieldMismatch("structure constant over a different field");
    if (s.c.is_zero()) continue;
    auto& row = table_[s.i * dim + s.j];
    auto it = std::find_if(row.begin(), row.end(), [&](const auto& p) { return p.first == s.l; });
    if (it == row.end()) {
      row.emplace_back(s.l, s.c);
    } else {
      it->second += s.c;
    }
  }
  for (auto& row : table_) {
    std::erase_if(row, [](const auto& p) { return p.second.is_zero(); });
    std::sort(row.begin(), row.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  }
  if (unit) {
    check(*unit);
    for (std::size_t i = 0; i < dim; ++i) {
      Element e = basis(i);
      if (!(multiply(*unit, e) == e) || !(multiply(e, *unit) == e)) {
        throw NotUnital("declared unit fails on basis element " + labels_[i]);
      }
    }
    unit_ = std::move(unit);
  }
}

Algebra::Algebra(const Algebra& o)
    : field_(o.field_),
      dim_(o.dim_),
      labels_(o.labels_),
      table_(o.table_),
      unit_(o.unit_),
      lift_(o.lift_),
      augmented_(o.augmented_),
      assoc_(o.assoc_.load()) {}

Algebra& Algebra::operator=(const Algebra& o) {
  if (this == &o) return *this;
  field_ = o.field_;
  dim_ = o.dim_;
  labels_ = o.labels_;
  table_ = o.table_;
  unit_ = o.unit_;
  lift_ = o.lift_;
  augmented_ = o.augmented_;
  assoc_.store(o.assoc_.load());
  return *this;
}

std::optional<std::size_t> Algebra::index_of(const std::string& label) const {
  auto it = std::find(labels_.begin(), labels_.end(), label);
  if (it == labels_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - labels_.begin());
}

std::vector<StructureConstant> Algebra::structure_constants() const {
  std::vector<StructureConstant> out;
  for (std::size_t i = 0; i < dim_; ++i) {
    for (std::size_t j = 0; j < dim_; ++j) {
      for (const auto& [l, c] : product(i, j)) out.push_back({i, j, l, c});
    }
  }
  return out;
}

Element Algebra::element(Vector coords) const {
  Element e(std::move(coords));
  check(e);
  return e;
}

Element Algebra::element(std::initializer_list<long> coords) const {
  Vector v;
  for (long c : coords) v.emplace_back(field_, c);
  return element(std::move(v));
}

const Element& Algebra::one() const {
  if (!unit_) throw NotUnital("algebra has no unit");
  return *unit_;
}

void Algebra::check(const Element& x) const {
  if (x.size() != dim_) {
    throw DimensionMismatch("element of length " + std::to_string(x.size()) + " used in algebra of dimension " +
                            std::to_string(dim_));
  }
  if (dim_ > 0 && !(x[0].field() == field_)) throw FieldMismatch("element over a different field");
}

Element Algebra::multiply(const Element& x, const Element& y) const {
  check(x);
  check(y);
  Vector out = zero_vector(field_, dim_);
  Scalar xy = Scalar::zero(field_);
  for (std::size_t i = 0; i < dim_; ++i) {
    if (x[i].is_zero()) continue;
    for (std::size_t j = 0; j < dim_; ++j) {
      if (y[j].is_zero()) continue;
      const auto& row = product(i, j);
      if (row.empty()) continue;
      xy = x[i];
      xy *= y[j];
      for (const auto& [l, c] : row) out[l].add_product(xy, c);
    }
  }
  return Element(std::move(out));
}

Matrix Algebra::mult_operator(const Element& a, Side side) const {
  check(a);
  Matrix m(field_, dim_, dim_);
  for (std::size_t j = 0; j < dim_; ++j) {
    Element e = basis(j);
    m.set_col(j, (side == Side::Left ? multiply(a, e) : multiply(e, a)).coords());
  }
  return m;
}

bool Algebra::is_associative() const {
  int cached = assoc_.load();
  if (cached >= 0) return cached == 1;
  std::vector<Element> prod(dim_ * dim_);
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = 0; j < dim_; ++j) prod[i * dim_ + j] = multiply(basis(i), basis(j));
  bool ok = true;
  for (std::size_t i = 0; i < dim_ && ok; ++i) {
    for (std::size_t j = 0; j < dim_ && ok; ++j) {
      for (std::size_t k = 0; k < dim_ && ok; ++k) {
        ok = multiply(prod[i * dim_ + j], basis(k)) == multiply(basis(i), prod[j * dim_ + k]);
      }
    }
  }
  assoc_.store(ok ? 1 : 0);
  return ok;
}

bool Algebra::is_commutative() const {
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = i + 1; j < dim_; ++j)
      if (product(i, j) != product(j, i)) return false;
  return true;
}

void Algebra::require_associative() const {
  if (!is_associative()) throw NotAssociative("algebra is not associative");
}

void Algebra::require_associative_unital() const {
  require_associative();
  if (!unit_) throw NotUnital("algebra has no unit");
}

void Algebra::set_lift(WedderburnLift lift) {
  for (const auto& block : lift.units)
    for (const auto& u : block) check(u);
  for (const auto& r : lift.radical) check(r);
  lift_ = std::move(lift);
}

std::string Algebra::format(const Element& x) const {
  check(x);
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < dim_; ++i) {
    if (x[i].is_zero()) continue;
    if (!first) os << " + ";
    first = false;
    if (!x[i].is_one()) os << x[i] << "*";
    os << labels_[i];
  }
  return first ? "0" : os.str();
}

bool AlgebraMorphism::verify(const Algebra& s, const Algebra& t, const Matrix& m, bool unital) {
  if (m.rows() != t.dim() || m.cols() != s.dim()) return false;
  if (!(s.field() == t.field()) || !(m.field() == s.field())) return false;
  std::vector<Element> img;
  for (std::size_t i = 0; i < s.dim(); ++i) img.emplace_back(m.col(i));
  for (std::size_t i = 0; i < s.dim(); ++i) {
    for (std::size_t j = 0; j < s.dim(); ++j) {
      Vector lhs = zero_vector(t.field(), t.dim());
      for (const auto& [l, c] : s.product(i, j)) axpy(lhs, c, img[l].coords());
      if (!(lhs == t.multiply(img[i], img[j]).coords())) return false;
    }
  }
  if (unital) {
    if (!s.unit() || !t.unit()) return false;
    if (!(m * s.unit()->coords() == t.unit()->coords())) return false;
  }
  return true;
}

AlgebraMorphism::AlgebraMorphism(AlgebraPtr source, AlgebraPtr target, Matrix matrix, bool unital)
    : source_(std::move(source)), target_(std::move(target)), m_(std::move(matrix)), unital_(unital) {
  if (!verify(*source_, *target_, m_, unital_)) throw VerificationFailure("linear map is not an algebra morphism");
}

std::optional<AlgebraMorphism> AlgebraMorphism::try_make(AlgebraPtr source, AlgebraPtr target, Matrix matrix,
                                                         bool unital) {
  if (!verify(*source, *target, matrix, unital)) return std::nullopt;
  AlgebraMorphism f;
  f.source_ = std::move(source);
  f.target_ = std::move(target);
  f.m_ = std::move(matrix);
  f.unital_ = unital;
  return f;
}

Element AlgebraMorphism::operator()(const Element& x) const {
  source_->check(x);
  return Element(m_ * x.coords());
}

namespace {

std::string matrix_unit_label(std::size_t n, std::size_t i, std::size_t j) {
  if (n < 10) return "e" + std::to_string(i + 1) + std::to_string(j + 1);
  return "e" + std::to_string(i + 1) + "_" + std::to_string(j + 1);
}

std::string unique_label(std::string base, const std::set<std::string>& taken) {
  while (taken.count(base)) base += "'";
  return base;
}

Element pad(const Element& x, std::size_t before, std::size_t total, const FieldSpec& f) {
  Vector v = zero_vector(f, total);
  for (std::size_t i = 0; i < x.size(); ++i) v[before + i] = x[i];
  return Element(std::move(v));
}

}  // namespace

Algebra matrix_algebra(std::size_t n, const FieldSpec& field) {
  if (n == 0) throw DimensionMismatch("matrix algebra needs n >= 1");
  std::vector<StructureConstant> sc;
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      labels.push_back(matrix_unit_label(n, i, j));
      for (std::size_t l = 0; l < n; ++l) sc.push_back({i * n + j, j * n + l, i * n + l, Scalar::one(field)});
    }
  Vector u = zero_vector(field, n * n);
  for (std::size_t i = 0; i < n; ++i) u[i * n + i] = Scalar::one(field);
  Algebra a(field, n * n, sc, labels, Element(u));
  WedderburnLift lift;
  lift.block_sizes = {n};
  lift.units.emplace_back();
  for (std::size_t k = 0; k < n * n; ++k) lift.units[0].push_back(a.basis(k));
  a.set_lift(std::move(lift));
  return a;
}

Algebra upper_triangular(std::size_t n, const FieldSpec& field) {
  if (n == 0) throw DimensionMismatch("triangular algebra needs n >= 1");
  std::vector<std::pair<std::size_t, std::size_t>> idx;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) idx.emplace_back(i, j);
  auto pos = [&](std::size_t i, std::size_t j) {
    return static_cast<std::size_t>(std::find(idx.begin(), idx.end(), std::make_pair(i, j)) - idx.begin());
  };
  std::vector<StructureConstant> sc;
  std::vector<std::string> labels;
  for (std::size_t a = 0; a < idx.size(); ++a) {
    labels.push_back(matrix_unit_label(n, idx[a].first, idx[a].second));
    for (std::size_t b = 0; b < idx.size(); ++b) {
      if (idx[a].second == idx[b].first) sc.push_back({a, b, pos(idx[a].first, idx[b].second), Scalar::one(field)});
    }
  }
  Vector u = zero_vector(field, idx.size());
  for (std::size_t i = 0; i < n; ++i) u[pos(i, i)] = Scalar::one(field);
  Algebra t(field, idx.size(), sc, labels, Element(u));
  WedderburnLift lift;
  for (std::size_t i = 0; i < n; ++i) {
    lift.block_sizes.push_back(1);
    lift.units.push_back({t.basis(pos(i, i))});
    for (std::size_t j = i + 1; j < n; ++j) lift.radical.push_back(t.basis(pos(i, j)));
  }
  t.set_lift(std::move(lift));
  return t;
}

Algebra polynomial_quotient(const Polynomial& f) {
  if (f.degree() < 1) throw DimensionMismatch("k[x]/(f) needs deg f >= 1");
  const FieldSpec& field = f.field();
  const std::size_t n = static_cast<std::size_t>(f.degree());
  Polynomial g = f.monic();
  // x^k mod g for k < 2n - 1
  std::vector<Vector> powers;
  for (std::size_t k = 0; k + 1 < 2 * n; ++k) {
    Polynomial r = divide(Polynomial::monomial(field, k), g).remainder;
    Vector v = zero_vector(field, n);
    for (std::size_t i = 0; i < r.coeffs().size(); ++i) v[i] = r.coeffs()[i];
    powers.push_back(std::move(v));
  }
  std::vector<StructureConstant> sc;
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i) {
    labels.push_back(i == 0 ? "1" : (i == 1 ? "x" : "x^" + std::to_string(i)));
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t l = 0; l < n; ++l)
        if (!powers[i + j][l].is_zero()) sc.push_back({i, j, l, powers[i + j][l]});
  }
  return Algebra(field, n, sc, labels, Element(unit_vector(field, n, 0)));
}

Algebra direct_sum(const Algebra& a, const Algebra& b) {
  if (!(a.field() == b.field())) throw FieldMismatch("direct sum over different fields");
  const FieldSpec& f = a.field();
  const std::size_t da = a.dim(), d = a.dim() + b.dim();
  std::vector<StructureConstant> sc = a.structure_constants();
  for (const auto& s : b.structure_constants()) sc.push_back({s.i + da, s.j + da, s.l + da, s.c});
  std::vector<std::string> labels = a.labels();
  std::set<std::string> taken(labels.begin(), labels.end());
  for (const auto& l : b.labels()) {
    labels.push_back(unique_label(l, taken));
    taken.insert(labels.back());
  }
  std::optional<Element> unit;
  if (a.unit() && b.unit()) unit = pad(*a.unit(), 0, d, f) + pad(*b.unit(), da, d, f);
  Algebra s(f, d, sc, labels, unit);
  if (a.lift() && b.lift()) {
    WedderburnLift lift;
    for (int side = 0; side < 2; ++side) {
      const WedderburnLift& src = side == 0 ? *a.lift() : *b.lift();
      std::size_t off = side == 0 ? 0 : da;
      for (std::size_t blk = 0; blk < src.block_sizes.size(); ++blk) {
        lift.block_sizes.push_back(src.block_sizes[blk]);
        lift.units.emplace_back();
        for (const auto& u : src.units[blk]) lift.units.back().push_back(pad(u, off, d, f));
      }
      for (const auto& r : src.radical) lift.radical.push_back(pad(r, off, d, f));
    }
    s.set_lift(std::move(lift));
  }
  return s;
}

Algebra tensor_product(const Algebra& a, const Algebra& b) {
  if (!(a.field() == b.field())) throw FieldMismatch("tensor product over different fields");
  const FieldSpec& f = a.field();
  const std::size_t db = b.dim(), d = a.dim() * b.dim();
  std::vector<StructureConstant> sc;
  for (const auto& x : a.structure_constants())
    for (const auto& y : b.structure_constants())
      sc.push_back({x.i * db + y.i, x.j * db + y.j, x.l * db + y.l, x.c * y.c});
  std::vector<std::string> labels;
  for (const auto& la : a.labels())
    for (const auto& lb : b.labels()) labels.push_back(la + "." + lb);
  std::optional<Element> unit;
  if (a.unit() && b.unit()) {
    Vector u = zero_vector(f, d);
    for (std::size_t i = 0; i < a.dim(); ++i)
      for (std::size_t j = 0; j < db; ++j) u[i * db + j] = (*a.unit())[i] * (*b.unit())[j];
    unit = Element(u);
  }
  return Algebra(f, d, sc, labels, unit);
}

Algebra opposite(const Algebra& a) {
  std::vector<StructureConstant> sc;
  for (const auto& s : a.structure_constants()) sc.push_back({s.j, s.i, s.l, s.c});
  Algebra op(a.field(), a.dim(), sc, a.labels(), a.unit());
  if (a.lift()) {
    WedderburnLift lift = *a.lift();
    for (std::size_t b = 0; b < lift.block_sizes.size(); ++b) {
      std::size_t n = lift.block_sizes[b];
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) lift.units[b][i * n + j] = a.lift()->unit(b, j, i);
    }
    op.set_lift(std::move(lift));
  }
  return op;
}

Algebra adjoin_unit(const Algebra& a) {
  const FieldSpec& f = a.field();
  const std::size_t d = a.dim();
  std::vector<StructureConstant> sc;
  sc.push_back({0, 0, 0, Scalar::one(f)});
  for (std::size_t i = 0; i < d; ++i) {
    sc.push_back({0, i + 1, i + 1, Scalar::one(f)});
    sc.push_back({i + 1, 0, i + 1, Scalar::one(f)});
  }
  for (const auto& s : a.structure_constants()) sc.push_back({s.i + 1, s.j + 1, s.l + 1, s.c});
  std::set<std::string> taken(a.labels().begin(), a.labels().end());
  std::vector<std::string> labels{unique_label("1B", taken)};
  labels.insert(labels.end(), a.labels().begin(), a.labels().end());
  Algebra b(f, d + 1, sc, labels, Element(unit_vector(f, d + 1, 0)));
  b.mark_augmented();
  return b;
}

Algebra homotope_algebra(const Algebra& a, const Element& x, Side side) {
  a.check(x);
  const std::size_t d = a.dim();
  std::vector<StructureConstant> sc;
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      Element p = side == Side::Left ? a.multiply(a.basis(i), a.multiply(x, a.basis(j)))
                                     : a.multiply(a.multiply(a.basis(i), x), a.basis(j));
      for (std::size_t l = 0; l < d; ++l)
        if (!p[l].is_zero()) sc.push_back({i, j, l, p[l]});
    }
  }
  return Algebra(a.field(), d, sc, a.labels());
}

Algebra augmented_homotope(const Algebra& a, const Element& delta) {
  a.require_associative_unital();
  return adjoin_unit(homotope_algebra(a, delta, Side::Left));
}

std::optional<Element> find_unit(const Algebra& a) {
  const std::size_t d = a.dim();
  const FieldSpec& f = a.field();
  Matrix sys(f, 2 * d * d, d);
  Vector rhs = zero_vector(f, 2 * d * d);
  // rows (j, l): sum_i u_i c^l_{ij} = delta_{lj}, then the mirrored block.
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      for (const auto& [l, c] : a.product(i, j)) sys(j * d + l, i) += c;
      for (const auto& [l, c] : a.product(j, i)) sys(d * d + j * d + l, i) += c;
    }
  }
  for (std::size_t j = 0; j < d; ++j) {
    rhs[j * d + j] = Scalar::one(f);
    rhs[d * d + j * d + j] = Scalar::one(f);
  }
  auto u = solve(sys, rhs);
  if (!u) return std::nullopt;
  return Element(*u);
}

std::vector<Element> ideal_closure(const Algebra& a, const std::vector<Element>& generators) {
  EchelonBasis e(a.field(), a.dim());
  std::vector<Element> queue = generators;
  while (!queue.empty()) {
    Element v = std::move(queue.back());
    queue.pop_back();
    a.check(v);
    if (!e.insert(v.coords())) continue;
    for (std::size_t i = 0; i < a.dim(); ++i) {
      queue.push_back(a.multiply(a.basis(i), v));
      queue.push_back(a.multiply(v, a.basis(i)));
    }
  }
  std::vector<Element> out;
  for (const auto& r : e.rows()) out.emplace_back(r);
  return out;
}

bool is_two_sided_ideal(const Algebra& a, const std::vector<Element>& basis) {
  EchelonBasis e(a.field(), a.dim());
  for (const auto& b : basis) {
    a.check(b);
    e.insert(b.coords());
  }
  for (const auto& b : basis) {
    for (std::size_t i = 0; i < a.dim(); ++i) {
      if (!e.contains(a.multiply(a.basis(i), b).coords()) || !e.contains(a.multiply(b, a.basis(i)).coords())) {
        return false;
      }
    }
  }
  return true;
}

std::vector<Element> principal_two_sided_ideal(const Algebra& a, const Element& x) {
  a.require_associative_unital();
  a.check(x);
  EchelonBasis e(a.field(), a.dim());
  for (std::size_t j = 0; j < a.dim() && e.rank() < a.dim(); ++j) {
    Element xj = a.multiply(x, a.basis(j));
    if (xj.is_zero()) continue;
    for (std::size_t i = 0; i < a.dim() && e.rank() < a.dim(); ++i) e.insert(a.multiply(a.basis(i), xj).coords());
  }
  std::vector<Element> out;
  for (const auto& r : e.rows()) out.emplace_back(r);
  return out;
}

bool is_well_tempered_criterion(const Algebra& a, const Element& delta) {
  return principal_two_sided_ideal(a, delta).size() == a.dim();
}

QuotientResult quotient(const AlgebraPtr& a, const std::vector<Element>& ideal) {
  if (!is_two_sided_ideal(*a, ideal)) throw NotAnIdeal("subspace is not a two-sided ideal");
  const FieldSpec& f = a->field();
  std::vector<Vector> vs;
  for (const auto& x : ideal) vs.push_back(x.coords());
  QuotientSpace qs(f, a->dim(), vs);
  const auto& comp = qs.complement();
  std::vector<StructureConstant> sc;
  std::vector<std::string> labels;
  for (std::size_t p = 0; p < comp.size(); ++p) {
    labels.push_back(a->labels()[comp[p]]);
    for (std::size_t q = 0; q < comp.size(); ++q) {
      Vector img = qs.project(a->multiply(a->basis(comp[p]), a->basis(comp[q])).coords());
      for (std::size_t k = 0; k < img.size(); ++k)
        if (!img[k].is_zero()) sc.push_back({p, q, k, img[k]});
    }
  }
  std::optional<Element> unit;
  if (a->unit()) unit = Element(qs.project(a->unit()->coords()));
  AlgebraPtr qa = share(Algebra(f, comp.size(), sc, labels, unit));
  AlgebraMorphism proj(a, qa, qs.projection_matrix(), a->unit().has_value());
  return {qa, proj};
}

PsiMorphisms psi_morphisms(const AlgebraPtr& a, const Element& delta) {
  AlgebraPtr b = share(augmented_homotope(*a, delta));
  const std::size_t d = a->dim();
  Matrix m1(a->field(), d, d + 1), m2(a->field(), d, d + 1);
  m1.set_col(0, a->one().coords());
  m2.set_col(0, a->one().coords());
  for (std::size_t i = 0; i < d; ++i) {
    m1.set_col(i + 1, a->multiply(a->basis(i), delta).coords());
    m2.set_col(i + 1, a->multiply(delta, a->basis(i)).coords());
  }
  return {b, AlgebraMorphism(b, a, std::move(m1), true), AlgebraMorphism(b, a, std::move(m2), true)};
}

bool same_algebra(const Algebra& a, const Algebra& b) {
  if (&a == &b) return true;
  if (!(a.field() == b.field()) || a.dim() != b.dim()) return false;
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j)
      if (a.product(i, j) != b.product(i, j)) return false;
  return true;
}

HomotopeFunctoriality homotope_functoriality(const AlgebraPtr& a, const std::vector<Element>& ideal, const Element& x) {
  HomotopeFunctoriality r;
  QuotientResult q = quotient(a, ideal);
  Element xbar = q.projection(x);
  for (Side side : {Side::Left, Side::Right}) {
    AlgebraPtr h = share(homotope_algebra(*a, x, side));
    bool is_ideal = is_two_sided_ideal(*h, ideal);
    AlgebraPtr hq = share(homotope_algebra(*q.algebra, xbar, side));
    bool morphism = AlgebraMorphism::try_make(h, hq, q.projection.matrix(), false).has_value();
    bool commutes = is_ideal && same_algebra(*quotient(h, ideal).algebra, *hq);
    (side == Side::Left ? r.ideal_left : r.ideal_right) = is_ideal;
    (side == Side::Left ? r.projection_left : r.projection_right) = morphism;
    (side == Side::Left ? r.quotient_left : r.quotient_right) = commutes;
  }
  return r;
}

std::vector<Element> image_basis(const Matrix& m) {
  EchelonBasis e(m.field(), m.rows());
  for (std::size_t c = 0; c < m.cols(); ++c) e.insert(m.col(c));
  std::vector<Element> out;
  for (const auto& r : e.rows()) out.emplace_back(r);
  return out;
}

const char* to_string(TestProfile p) {
  switch (p) {
    case TestProfile::SplitSemisimple: return "split-semisimple";
    case TestProfile::SemisimplePlusNilpotent: return "semisimple-plus-nilpotent";
    case TestProfile::TriangularLike: return "triangular-like";
  }
  return "?";
}

namespace {

// Subalgebra of M_N(k) spanned by the given matrices, which must be linearly
// independent and closed under multiplication.
Algebra algebra_from_matrices(const FieldSpec& f, const std::vector<Matrix>& basis, std::vector<std::string> labels) {
  const std::size_t d = basis.size();
  const std::size_t n2 = basis.empty() ? 0 : basis[0].entries().size();
  std::vector<Vector> flat;
  for (const auto& b : basis) flat.push_back(b.entries());
  SpanSolver solver(f, n2, flat);
  if (solver.rank() != d) throw VerificationFailure("test algebra basis is not independent");
  std::vector<StructureConstant> sc;
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      auto c = solver.coordinates((basis[i] * basis[j]).entries());
      if (!c) throw VerificationFailure("test algebra basis is not closed under products");
      for (std::size_t l = 0; l < d; ++l)
        if (!(*c)[l].is_zero()) sc.push_back({i, j, l, (*c)[l]});
    }
  }
  std::size_t n = basis.empty() ? 0 : basis[0].rows();
  auto u = solver.coordinates(Matrix::identity(f, n).entries());
  return Algebra(f, d, sc, std::move(labels), u ? std::optional<Element>(Element(*u)) : std::nullopt);
}

Matrix unit_matrix(const FieldSpec& f, std::size_t n, std::size_t r, std::size_t c) {
  Matrix m(f, n, n);
  m(r, c) = Scalar::one(f);
  return m;
}

struct Shape {
  std::vector<std::size_t> sizes;
  // Radical pieces: (row block, column block, layer); layer 0 = same layer
  // (incidence style), otherwise a separate square-zero layer.
  std::vector<std::array<std::size_t, 3>> pieces;
  std::size_t layers = 1;
};

std::size_t shape_dim(const Shape& s) {
  std::size_t d = 0;
  for (auto n : s.sizes) d += n * n;
  for (const auto& p : s.pieces) d += s.sizes[p[0]] * s.sizes[p[1]];
  return d;
}

}  // namespace

Algebra random_test_algebra(std::uint64_t seed, TestProfile profile, const FieldSpec& field) {
  std::mt19937_64 rng(seed * 0x9E3779B97F4A7C15ULL + static_cast<std::uint64_t>(profile) + 1);
  auto pick = [&](std::size_t k) { return static_cast<std::size_t>(rng() % k); };
  Shape shape;
  for (int attempt = 0;; ++attempt) {
    shape = Shape{};
    std::size_t nblocks = 1 + pick(3);
    for (std::size_t b = 0; b < nblocks; ++b) shape.sizes.push_back(pick(4) == 0 ? 2 : 1);
    if (profile == TestProfile::SemisimplePlusNilpotent) {
      std::size_t npieces = 1 + pick(2);
      for (std::size_t t = 0; t < npieces; ++t) shape.pieces.push_back({pick(nblocks), pick(nblocks), t + 1});
      shape.layers = npieces + 1;
    } else if (profile == TestProfile::TriangularLike) {
      if (nblocks == 1) shape.sizes.push_back(1);
      nblocks = shape.sizes.size();
      // random order relation compatible with the index order, then closed
      std::vector<std::vector<bool>> rel(nblocks, std::vector<bool>(nblocks, false));
      for (std::size_t i = 0; i < nblocks; ++i)
        for (std::size_t j = i + 1; j < nblocks; ++j) rel[i][j] = pick(3) != 0;
      for (std::size_t k = 0; k < nblocks; ++k)
        for (std::size_t i = 0; i < nblocks; ++i)
          for (std::size_t j = 0; j < nblocks; ++j)
            if (rel[i][k] && rel[k][j]) rel[i][j] = true;
      for (std::size_t i = 0; i < nblocks; ++i)
        for (std::size_t j = i + 1; j < nblocks; ++j)
          if (rel[i][j]) shape.pieces.push_back({i, j, 0});
      if (shape.pieces.empty()) shape.pieces.push_back({0, 1, 0});
    }
    if (shape_dim(shape) <= 8) break;
    if (attempt > 1000) throw VerificationFailure("test algebra shape search did not terminate");
  }

  std::size_t width = 0;
  std::vector<std::size_t> offset;
  for (auto n : shape.sizes) {
    offset.push_back(width);
    width += n;
  }
  const std::size_t N = width * shape.layers;
  std::vector<Matrix> basis;
  std::vector<std::string> labels;
  struct Pos {
    std::size_t block, i, j;
  };
  std::vector<Pos> unit_pos;
  for (std::size_t b = 0; b < shape.sizes.size(); ++b) {
    const std::size_t n = shape.sizes[b];
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        Matrix m(field, N, N);
        for (std::size_t layer = 0; layer < shape.layers; ++layer)
          m(layer * width + offset[b] + i, layer * width + offset[b] + j) = Scalar::one(field);
        basis.push_back(std::move(m));
        labels.push_back(n == 1 ? "s" + std::to_string(b + 1) : "s" + std::to_string(b + 1) + "_" +
                                                                     std::to_string(i + 1) + std::to_string(j + 1));
        unit_pos.push_back({b, i, j});
      }
    }
  }
  const std::size_t semisimple_dim = basis.size();
  for (std::size_t p = 0; p < shape.pieces.size(); ++p) {
    const auto [rb, cb, layer] = shape.pieces[p];
    for (std::size_t i = 0; i < shape.sizes[rb]; ++i) {
      for (std::size_t j = 0; j < shape.sizes[cb]; ++j) {
        // layer 0: in the single layer; otherwise top layer `layer` to the bottom layer 0
        std::size_t r = (layer == 0 ? 0 : layer * width) + offset[rb] + i;
        std::size_t c = offset[cb] + j;
        if (layer == 0) {
          // incidence piece: every layer carries it
          Matrix m(field, N, N);
          for (std::size_t l = 0; l < shape.layers; ++l) m(l * width + offset[rb] + i, l * width + c) = Scalar::one(field);
          basis.push_back(std::move(m));
        } else {
          basis.push_back(unit_matrix(field, N, r, c));
        }
        labels.push_back("n" + std::to_string(p + 1) + "_" + std::to_string(i + 1) + std::to_string(j + 1));
      }
    }
  }
  const std::size_t d = basis.size();

  // Hide the shape behind a unitriangular change of basis for about half the seeds.
  Matrix change = Matrix::identity(field, d);
  if (pick(2) == 0) {
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = i + 1; j < d; ++j)
        if (pick(3) == 0) change(i, j) = Scalar(field, pick(2) == 0 ? 1 : -1);
    std::vector<Matrix> mixed;
    for (std::size_t j = 0; j < d; ++j) {
      Matrix m(field, N, N);
      for (std::size_t i = 0; i < d; ++i)
        if (!change(i, j).is_zero()) m.add_scaled(change(i, j), basis[i]);
      mixed.push_back(std::move(m));
    }
    std::vector<std::string> plain;
    for (std::size_t i = 0; i < d; ++i) plain.push_back("b" + std::to_string(i + 1));
    Algebra a = algebra_from_matrices(field, mixed, plain);
    Matrix inv = *invert(change);
    WedderburnLift lift;
    lift.block_sizes = shape.sizes;
    lift.units.resize(shape.sizes.size());
    for (std::size_t k = 0; k < semisimple_dim; ++k) lift.units[unit_pos[k].block].push_back(Element(inv.col(k)));
    for (std::size_t k = semisimple_dim; k < d; ++k) lift.radical.push_back(Element(inv.col(k)));
    a.set_lift(std::move(lift));
    return a;
  }
  Algebra a = algebra_from_matrices(field, basis, labels);
  WedderburnLift lift;
  lift.block_sizes = shape.sizes;
  lift.units.resize(shape.sizes.size());
  for (std::size_t k = 0; k < semisimple_dim; ++k) lift.units[unit_pos[k].block].push_back(a.basis(k));
  for (std::size_t k = semisimple_dim; k < d; ++k) lift.radical.push_back(a.basis(k));
  a.set_lift(std::move(lift));
  return a;
}

Algebra random_commutative_algebra(std::uint64_t seed, const FieldSpec& field) {
  std::mt19937_64 rng(seed ^ 0xc0ffeeULL);
  auto factor = [&](std::size_t budget) {
    std::size_t deg = 1 + rng() % budget;
    Polynomial f(field, {Scalar::one(field)});
    for (std::size_t i = 0; i < deg; ++i) {
      long root = static_cast<long>(rng() % 3) - 1;
      f = f * Polynomial::linear(Scalar(field, root));
    }
    return polynomial_quotient(f);
  };
  if (rng() % 4 == 0) {
    std::size_t p = 1 + rng() % 3, q = 1 + rng() % 2;
    Vector cx = zero_vector(field, p + 1), cy = zero_vector(field, q + 1);
    cx[p] = Scalar::one(field);
    cy[q] = Scalar::one(field);
    return tensor_product(polynomial_quotient(Polynomial(field, cx)), polynomial_quotient(Polynomial(field, cy)));
  }
  Algebra a = factor(4);
  while (a.dim() < 6 && rng() % 2) a = direct_sum(a, factor(6 - a.dim()));
  return a;
}

Element random_element(const Algebra& a, std::mt19937_64& rng, long range) {
  Vector v;
  const FieldSpec& f = a.field();
  for (std::size_t i = 0; i < a.dim(); ++i) {
    if (range == 0 && f.is_prime_field()) {
      v.emplace_back(f, mpz_class(static_cast<unsigned long>(rng() % f.characteristic())), mpz_class(1));
    } else {
      v.emplace_back(f, static_cast<long>(rng() % static_cast<std::uint64_t>(2 * range + 1)) - range);
    }
  }
  return Element(std::move(v));
}

Element random_delta(const Algebra& a, std::mt19937_64& rng) {
  if (!a.lift()) return random_element(a, rng);
  const WedderburnLift& L = *a.lift();
  const FieldSpec& f = a.field();
  auto small = [&] { return Scalar(f, static_cast<long>(rng() % 5) - 2); };
  auto radical_noise = [&] {
    Element r = a.zero();
    for (const auto& n : L.radical) r += small() * n;
    return r;
  };
  Element delta = a.zero();
  switch (rng() % 6) {
    case 0:
    case 1:
      return random_element(a, rng);
    case 2:  // drop some blocks entirely
      for (std::size_t b = 0; b < L.block_sizes.size(); ++b) {
        if (rng() % 2) continue;
        for (const auto& u : L.units[b]) delta += small() * u;
      }
      return delta + radical_noise();
    case 3:
      return radical_noise();
    case 4: {  // prescribed rank pattern per block, then a unit twist
      for (std::size_t b = 0; b < L.block_sizes.size(); ++b) {
        const std::size_t n = L.block_sizes[b];
        std::size_t r = rng() % (n + 1);
        for (std::size_t i = 0; i < r; ++i) delta += L.unit(b, i, i);
        if (n > 1 && r > 0 && rng() % 2) delta += L.unit(b, 0, n - 1);
      }
      return delta + radical_noise();
    }
    default:
      return a.zero();
  }
}

Element parse_element(const Algebra& a, const std::string& text) {
  if (auto idx = a.index_of(text)) return a.basis(*idx);
  Vector v;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item.erase(std::remove_if(item.begin(), item.end(), [](unsigned char c) { return std::isspace(c); }), item.end());
    try {
      v.push_back(Scalar::parse(a.field(), item));
    } catch (const ParseError&) {
      throw ParseError("element '" + text + "' is neither a basis label nor a coordinate list");
    }
  }
  if (v.size() != a.dim()) {
    throw ParseError("element '" + text + "' has " + std::to_string(v.size()) + " coordinates, algebra has dimension " +
                     std::to_string(a.dim()));
  }
  return Element(std::move(v));
}

}  // namespace homotope
