#include "homotope/homological.hpp"

#include <memory>

#include "homotope/errors.hpp"

namespace homotope {

namespace {

Matrix combination(const FieldSpec& f, std::size_t dim, const std::vector<Matrix>& mats, const Vector& x) {
  Matrix out(f, dim, dim);
  for (std::size_t i = 0; i < x.size(); ++i)
    if (!x[i].is_zero()) out.add_scaled(x[i], mats[i]);
  return out;
}

Vector slice(const Vector& v, std::size_t start, std::size_t len) {
  return Vector(v.begin() + static_cast<long>(start), v.begin() + static_cast<long>(start + len));
}

void require_same(const Algebra& a, const Algebra& b, const char* what) {
  if (!same_algebra(a, b)) throw DimensionMismatch(std::string(what) + ": modules over different algebras");
}

bool is_unit_basis(const Algebra& a, std::size_t i) { return a.unit() && a.basis(i) == *a.unit(); }

std::string side_name(Side s) { return s == Side::Left ? "left" : "right"; }

}  // namespace

ModuleRep::ModuleRep(AlgebraPtr algebra, Side side, std::size_t dim, std::vector<Matrix> action, std::string tag)
    : algebra_(std::move(algebra)), side_(side), dim_(dim), action_(std::move(action)), tag_(std::move(tag)) {
  const Algebra& a = *algebra_;
  if (action_.size() != a.dim()) throw DimensionMismatch("module needs one matrix per basis element");
  for (const auto& m : action_) {
    if (m.rows() != dim_ || m.cols() != dim_) throw DimensionMismatch("action matrix has the wrong size");
    if (!(m.field() == a.field())) throw FieldMismatch("action matrix over another field");
  }
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j) {
      Matrix lhs = side_ == Side::Left ? action_[i] * action_[j] : action_[j] * action_[i];
      for (const auto& [l, c] : a.product(i, j)) lhs.add_scaled(-c, action_[l]);
      if (!lhs.is_zero())
        throw VerificationFailure("action does not respect e" + std::to_string(i) + " e" + std::to_string(j));
    }
  if (a.unit() && !(act(*a.unit()) == Matrix::identity(a.field(), dim_)))
    throw VerificationFailure("unit does not act as the identity");
}

Matrix ModuleRep::act(const Element& x) const {
  algebra_->check(x);
  return combination(field(), dim_, action_, x.coords());
}

ModuleRep ModuleRep::tagged(std::string tag) const {
  ModuleRep m = *this;
  m.tag_ = std::move(tag);
  return m;
}

bool intertwines(const ModuleRep& s, const ModuleRep& t, const Matrix& m) {
  if (m.rows() != t.dim() || m.cols() != s.dim()) return false;
  for (std::size_t i = 0; i < s.action().size(); ++i)
    if (!(m * s.action(i) == t.action(i) * m)) return false;
  return true;
}

ModuleMorphism::ModuleMorphism(ModuleRep source, ModuleRep target, Matrix matrix)
    : source_(std::move(source)), target_(std::move(target)), m_(std::move(matrix)) {
  require_same(*source_.algebra(), *target_.algebra(), "morphism");
  if (source_.side() != target_.side()) throw DimensionMismatch("morphism between modules of different sides");
  if (m_.rows() != target_.dim() || m_.cols() != source_.dim()) throw DimensionMismatch("morphism matrix size");
  if (!intertwines(source_, target_, m_)) throw VerificationFailure("map is not a module morphism");
}

bool ModuleMorphism::is_isomorphism() const { return m_.is_square() && rank(m_) == m_.rows(); }

ModuleRep regular_module(const AlgebraPtr& a, Side side) {
  a->require_associative();
  std::vector<Matrix> act;
  for (std::size_t i = 0; i < a->dim(); ++i) act.push_back(a->mult_operator(a->basis(i), side));
  return ModuleRep(a, side, a->dim(), std::move(act), "regular " + side_name(side));
}

ModuleRep free_module(const AlgebraPtr& a, std::size_t n) {
  a->require_associative();
  std::vector<Matrix> act;
  for (std::size_t i = 0; i < a->dim(); ++i)
    act.push_back(block_diagonal(a->field(), std::vector<Matrix>(n, a->mult_operator(a->basis(i), Side::Left))));
  return ModuleRep(a, Side::Left, a->dim() * n, std::move(act), "free " + std::to_string(n));
}

ModuleRep trivial_module(const AlgebraPtr& b, Side side) {
  if (!b->is_augmented()) throw Error("trivial module needs an augmented algebra");
  std::vector<Matrix> act(b->dim(), Matrix(b->field(), 1, 1));
  act[0](0, 0) = Scalar::one(b->field());
  return ModuleRep(b, side, 1, std::move(act), "trivial");
}

ModuleRep zero_module(const AlgebraPtr& a, Side side) {
  return ModuleRep(a, side, 0, std::vector<Matrix>(a->dim(), Matrix(a->field(), 0, 0)), "zero");
}

ModuleRep direct_sum(const ModuleRep& m, const ModuleRep& n) {
  require_same(*m.algebra(), *n.algebra(), "direct sum");
  if (m.side() != n.side()) throw DimensionMismatch("direct sum of modules of different sides");
  std::vector<Matrix> act;
  for (std::size_t i = 0; i < m.action().size(); ++i)
    act.push_back(block_diagonal(m.field(), {m.action(i), n.action(i)}));
  return ModuleRep(m.algebra(), m.side(), m.dim() + n.dim(), std::move(act), m.tag() + " + " + n.tag());
}

ModuleRep restrict_along(const AlgebraMorphism& f, const ModuleRep& m) {
  require_same(*f.target(), *m.algebra(), "restriction");
  std::vector<Matrix> act;
  for (std::size_t i = 0; i < f.source()->dim(); ++i) act.push_back(m.act(f(f.source()->basis(i))));
  return ModuleRep(f.source(), m.side(), m.dim(), std::move(act), m.tag());
}

ModuleRep to_left(const ModuleRep& m) {
  if (m.side() == Side::Left) return m;
  return ModuleRep(share(opposite(*m.algebra())), Side::Left, m.dim(), m.action(), m.tag());
}

Submodule submodule(const ModuleRep& m, const std::vector<Vector>& span) {
  std::vector<Vector> basis = span_basis(m.field(), m.dim(), span);
  SpanSolver solver(m.field(), m.dim(), basis);
  std::vector<Matrix> act;
  for (const auto& a : m.action()) {
    Matrix r(m.field(), basis.size(), basis.size());
    for (std::size_t c = 0; c < basis.size(); ++c) {
      auto coords = solver.coordinates(a * basis[c]);
      if (!coords) throw VerificationFailure("subspace is not a submodule");
      r.set_col(c, *coords);
    }
    act.push_back(std::move(r));
  }
  return {ModuleRep(m.algebra(), m.side(), basis.size(), std::move(act), m.tag()), std::move(basis)};
}

QuotientModule quotient_module(const ModuleRep& m, const std::vector<Vector>& span) {
  QuotientSpace q(m.field(), m.dim(), span);
  for (const auto& row : q.subspace().rows())
    for (const auto& a : m.action())
      if (!q.subspace().contains(a * row)) throw VerificationFailure("subspace is not a submodule");
  std::vector<Matrix> act;
  for (const auto& a : m.action()) {
    Matrix r(m.field(), q.dim(), q.dim());
    for (std::size_t c = 0; c < q.dim(); ++c) r.set_col(c, q.project(a.col(q.complement()[c])));
    act.push_back(std::move(r));
  }
  return {ModuleRep(m.algebra(), m.side(), q.dim(), std::move(act), m.tag()), std::move(q)};
}

Presentation present(const ModuleRep& m) {
  if (m.side() != Side::Left) throw Error("present: expected a left module");
  const Algebra& x = *m.algebra();
  x.require_associative_unital();
  const FieldSpec& f = m.field();
  const std::size_t d = x.dim(), n = m.dim();
  Presentation p;
  EchelonBasis generated(f, n);
  for (std::size_t k = 0; k < n && generated.rank() < n; ++k) {
    Vector e = unit_vector(f, n, k);
    if (generated.contains(e)) continue;
    p.generators.push_back(e);
    for (const auto& a : m.action()) generated.insert(a * e);
  }
  const std::size_t g = p.generators.size();
  p.cover = Matrix(f, n, d * g);
  for (std::size_t j = 0; j < g; ++j)
    for (std::size_t a = 0; a < d; ++a) p.cover.set_col(j * d + a, m.action(a) * p.generators[j]);
  p.relations = kernel_basis(p.cover);
  std::vector<Vector> cols;
  for (std::size_t c = 0; c < d * g; ++c) cols.push_back(p.cover.col(c));
  SpanSolver solver(f, n, cols);
  p.section = Matrix(f, d * g, n);
  for (std::size_t k = 0; k < n; ++k) p.section.set_col(k, *solver.coordinates(unit_vector(f, n, k)));
  return p;
}

std::vector<Matrix> hom_basis(const ModuleRep& m_in, const ModuleRep& n_in) {
  require_same(*m_in.algebra(), *n_in.algebra(), "hom");
  if (m_in.side() != n_in.side()) throw DimensionMismatch("hom between modules of different sides");
  const ModuleRep m = to_left(m_in), n = to_left(n_in);
  const FieldSpec& f = m.field();
  if (m.dim() == 0 || n.dim() == 0) return {};
  const std::size_t d = m.algebra()->dim(), nd = n.dim();
  Presentation p = present(m);
  const std::size_t g = p.generators.size();
  // unknowns: images n_j of the generators, index j * nd + r
  EchelonBasis eqs(f, g * nd);
  for (const auto& k : p.relations) {
    std::vector<Matrix> acts;
    for (std::size_t j = 0; j < g; ++j) acts.push_back(n.act(Element(slice(k, j * d, d))));
    for (std::size_t r = 0; r < nd; ++r) {
      Vector row = zero_vector(f, g * nd);
      for (std::size_t j = 0; j < g; ++j)
        for (std::size_t c = 0; c < nd; ++c) row[j * nd + c] = acts[j](r, c);
      eqs.insert(std::move(row));
    }
    if (eqs.rank() == g * nd) return {};
  }
  std::vector<Matrix> out;
  for (const auto& sol : eqs.kernel()) {
    Matrix ext(f, nd, d * g);
    for (std::size_t j = 0; j < g; ++j) {
      Vector img = slice(sol, j * nd, nd);
      for (std::size_t a = 0; a < d; ++a) ext.set_col(j * d + a, n.action(a) * img);
    }
    out.push_back(ext * p.section);
  }
  return out;
}

std::vector<ModuleMorphism> hom_space(const ModuleRep& m, const ModuleRep& n) {
  std::vector<ModuleMorphism> out;
  for (auto& h : hom_basis(m, n)) out.emplace_back(m, n, std::move(h));
  return out;
}

Vector TensorProduct::project_pure(std::size_t a, std::size_t b) const {
  return space.project(unit_vector(space.subspace().field(), left_dim * right_dim, a * right_dim + b));
}

TensorProduct tensor_over_algebra(const ModuleRep& m, const ModuleRep& n) {
  if (m.side() != Side::Right || n.side() != Side::Left)
    throw DimensionMismatch("tensor product needs a right module and a left module");
  require_same(*m.algebra(), *n.algebra(), "tensor product");
  const FieldSpec& f = m.field();
  const std::size_t md = m.dim(), nd = n.dim();
  EchelonBasis rel(f, md * nd);
  for (std::size_t i = 0; i < m.action().size(); ++i) {
    if (is_unit_basis(*m.algebra(), i)) continue;
    const Matrix& mi = m.action(i);
    const Matrix& ni = n.action(i);
    for (std::size_t a = 0; a < md; ++a)
      for (std::size_t b = 0; b < nd; ++b) {
        Vector v = zero_vector(f, md * nd);
        for (std::size_t r = 0; r < md; ++r) v[r * nd + b] += mi(r, a);
        for (std::size_t s = 0; s < nd; ++s) v[a * nd + s] -= ni(s, b);
        rel.insert(std::move(v));
        if (rel.rank() == md * nd) return {md, nd, QuotientSpace(std::move(rel))};
      }
  }
  return {md, nd, QuotientSpace(std::move(rel))};
}

bool is_projective(const ModuleRep& m_in) {
  const ModuleRep m = to_left(m_in);
  if (m.dim() == 0) return true;
  const Algebra& x = *m.algebra();
  const FieldSpec& f = m.field();
  const std::size_t d = x.dim(), n = m.dim();
  Presentation p = present(m);
  const std::size_t g = p.generators.size(), fd = d * g;
  // unknowns z_j in X^g, index j * fd + t * d + b
  const std::size_t unknowns = g * fd;
  std::vector<Vector> rows;
  Vector rhs;
  for (const auto& k : p.relations) {
    std::vector<Matrix> lk;
    for (std::size_t j = 0; j < g; ++j) lk.push_back(x.mult_operator(Element(slice(k, j * d, d)), Side::Left));
    for (std::size_t t = 0; t < g; ++t)
      for (std::size_t r = 0; r < d; ++r) {
        Vector row = zero_vector(f, unknowns);
        for (std::size_t j = 0; j < g; ++j)
          for (std::size_t b = 0; b < d; ++b) row[j * fd + t * d + b] = lk[j](r, b);
        rows.push_back(std::move(row));
        rhs.push_back(Scalar::zero(f));
      }
  }
  for (std::size_t j = 0; j < g; ++j)
    for (std::size_t r = 0; r < n; ++r) {
      Vector row = zero_vector(f, unknowns);
      for (std::size_t c = 0; c < fd; ++c) row[j * fd + c] = p.cover(r, c);
      rows.push_back(std::move(row));
      rhs.push_back(p.generators[j][r]);
    }
  return solve(Matrix::from_row_vectors(f, unknowns, rows), rhs).has_value();
}

AugmentationModules augmentation_modules(const AlgebraPtr& a, const Element& delta) {
  PsiMorphisms psi = psi_morphisms(a, delta);
  const Algebra& b = *psi.b;
  std::vector<Matrix> left, right;
  for (std::size_t i = 0; i < b.dim(); ++i) {
    left.push_back(a->mult_operator(psi.psi1(b.basis(i)), Side::Left));
    right.push_back(a->mult_operator(psi.psi2(b.basis(i)), Side::Right));
  }
  ModuleRep l(psi.b, Side::Left, a->dim(), std::move(left), "B+ left");
  ModuleRep r(psi.b, Side::Right, a->dim(), std::move(right), "B+ right");
  ModuleRep k = trivial_module(psi.b, Side::Left);
  return {std::move(psi), std::move(l), std::move(r), std::move(k)};
}

std::size_t ext1_trivial(const AlgebraPtr& a, const Element& delta) {
  AugmentationModules m = augmentation_modules(a, delta);
  return hom_basis(m.b_plus_left, m.trivial).size();
}

std::size_t tor_low(const ModuleRep& m, const ModuleRep& v, int i) {
  if (i < 0 || i > 2) throw Error("tor_low supports degrees 0, 1, 2");
  if (m.side() != Side::Right || v.side() != Side::Left) throw DimensionMismatch("tor needs right and left modules");
  require_same(*m.algebra(), *v.algebra(), "tor");
  const FieldSpec& f = m.field();
  const AlgebraPtr& x = v.algebra();
  const std::size_t d = x->dim(), md = m.dim();

  // ranks[s] = g_s; maps[s] = d_s: M^{g_s} -> M^{g_{s-1}} for s >= 1
  std::vector<std::size_t> gens;
  std::vector<Matrix> maps(1);
  ModuleRep current = v;
  Matrix embed;  // basis of `current` inside the previous free module
  for (int s = 0; s <= i + 1; ++s) {
    Presentation p = present(current);
    const std::size_t g = p.generators.size();
    gens.push_back(g);
    if (s >= 1) {
      const std::size_t gp = gens[s - 1];
      Matrix dm(f, md * gp, md * g);
      for (std::size_t j = 0; j < g; ++j) {
        Vector y = embed * p.generators[j];
        for (std::size_t t = 0; t < gp; ++t) {
          Matrix block = m.act(Element(slice(y, t * d, d)));
          for (std::size_t r = 0; r < md; ++r)
            for (std::size_t c = 0; c < md; ++c) dm(t * md + r, j * md + c) = block(r, c);
        }
      }
      maps.push_back(std::move(dm));
    }
    if (s == i + 1) break;
    Submodule k = submodule(free_module(x, g), p.relations);
    embed = Matrix::from_columns(f, d * g, k.basis);
    current = k.module;
  }
  auto rk = [](const Matrix& a) { return a.rows() == 0 || a.cols() == 0 ? std::size_t{0} : rank(a); };
  const std::size_t chain = md * gens[i];
  const std::size_t kernel = i == 0 ? chain : chain - rk(maps[i]);
  return kernel - rk(maps[i + 1]);
}

Induced induce(const AlgebraMorphism& f, const ModuleRep& v) {
  if (v.side() != Side::Left) throw DimensionMismatch("induce: expected a left module");
  const AlgebraPtr& y = f.target();
  ModuleRep yx = restrict_along(f, regular_module(y, Side::Right));
  TensorProduct t = tensor_over_algebra(yx, v);
  const FieldSpec& fs = v.field();
  const std::size_t nd = v.dim();
  std::vector<Matrix> act;
  for (std::size_t c = 0; c < y->dim(); ++c) {
    Matrix l = y->mult_operator(y->basis(c), Side::Left);
    Matrix r(fs, t.dim(), t.dim());
    for (std::size_t q = 0; q < t.dim(); ++q) {
      std::size_t idx = t.space.complement()[q];
      std::size_t a = idx / nd, b = idx % nd;
      Vector img = zero_vector(fs, y->dim() * nd);
      for (std::size_t s = 0; s < y->dim(); ++s) img[s * nd + b] = l(s, a);
      r.set_col(q, t.space.project(img));
    }
    act.push_back(std::move(r));
  }
  ModuleRep mod(y, Side::Left, t.dim(), std::move(act), "induced " + v.tag());
  return {std::move(mod), std::move(t)};
}

std::optional<Vector> Coinduced::coordinates(const Matrix& phi) const {
  return solver->coordinates(phi.entries());
}

Coinduced coinduce(const AlgebraMorphism& f, const ModuleRep& v) {
  if (v.side() != Side::Left) throw DimensionMismatch("coinduce: expected a left module");
  const AlgebraPtr& y = f.target();
  const FieldSpec& fs = v.field();
  std::vector<Matrix> maps = hom_basis(restrict_along(f, regular_module(y, Side::Left)), v);
  std::vector<Vector> flat;
  for (const auto& m : maps) flat.push_back(m.entries());
  auto solver = std::make_shared<const SpanSolver>(fs, v.dim() * y->dim(), flat);
  std::vector<Matrix> act;
  for (std::size_t c = 0; c < y->dim(); ++c) {
    Matrix r = y->mult_operator(y->basis(c), Side::Right);
    Matrix out(fs, maps.size(), maps.size());
    for (std::size_t t = 0; t < maps.size(); ++t) {
      auto coords = solver->coordinates((maps[t] * r).entries());
      if (!coords) throw VerificationFailure("coinduced action left the hom space");
      out.set_col(t, *coords);
    }
    act.push_back(std::move(out));
  }
  ModuleRep mod(y, Side::Left, maps.size(), std::move(act), "coinduced " + v.tag());
  return {std::move(mod), std::move(maps), std::move(solver)};
}

namespace {

// phi_{a,b}: a' -> rho(iota(e_a' e_a)) e_b, as a V.dim x dim A matrix.
Matrix mu_image(const Algebra& a, const ModuleRep& v, const Vector& tensor) {
  const FieldSpec& f = a.field();
  const std::size_t d = a.dim(), nd = v.dim();
  Matrix phi(f, nd, d);
  for (std::size_t ap = 0; ap < d; ++ap) {
    Vector col = zero_vector(f, nd);
    for (std::size_t idx = 0; idx < tensor.size(); ++idx) {
      if (tensor[idx].is_zero()) continue;
      std::size_t ai = idx / nd, b = idx % nd;
      for (const auto& [l, c] : a.product(ap, ai)) axpy(col, tensor[idx] * c, v.action(l + 1).col(b));
    }
    phi.set_col(ap, col);
  }
  return phi;
}

}  // namespace

MuTransform mu_transform(const AlgebraPtr& a, const Element& delta, const ModuleRep& v) {
  PsiMorphisms psi = psi_morphisms(a, delta);
  require_same(*psi.b, *v.algebra(), "mu");
  ModuleRep vb(psi.b, v.side(), v.dim(), v.action(), v.tag());
  Induced ind = induce(psi.psi2, vb);
  Coinduced co = coinduce(psi.psi1, vb);
  for (const auto& rel : ind.tensor.space.subspace().rows())
    if (!mu_image(*a, vb, rel).is_zero()) throw VerificationFailure("mu is not well defined on the tensor product");
  Matrix mu(a->field(), co.maps.size(), ind.tensor.dim());
  for (std::size_t q = 0; q < ind.tensor.dim(); ++q) {
    Vector pure = unit_vector(a->field(), a->dim() * v.dim(), ind.tensor.space.complement()[q]);
    auto coords = co.coordinates(mu_image(*a, vb, pure));
    if (!coords) throw VerificationFailure("mu image is not a module map");
    mu.set_col(q, *coords);
  }
  ModuleMorphism map(ind.module, co.module, std::move(mu));
  bool iso = map.is_isomorphism();
  return {std::move(map), iso};
}

bool RecollementReport::all_passed() const {
  for (const auto& c : checks)
    if (!c.passed) return false;
  return true;
}

namespace {

using Rec = std::vector<IdentityCheck>;

long long ll(std::size_t x) { return static_cast<long long>(x); }

// [1 (x) v] in A (x) V, as a tensor-space coordinate matrix.
Matrix unit_into_tensor(const Algebra& a, const TensorProduct& t, std::size_t vdim) {
  const FieldSpec& f = a.field();
  Matrix out(f, t.dim(), vdim);
  const Vector& one = a.one().coords();
  for (std::size_t b = 0; b < vdim; ++b) {
    Vector pure = zero_vector(f, a.dim() * vdim);
    for (std::size_t s = 0; s < a.dim(); ++s) pure[s * vdim + b] = one[s];
    out.set_col(b, t.space.project(pure));
  }
  return out;
}

// [a (x) m] -> a m for an A-module M.
Matrix action_out_of_tensor(const TensorProduct& t, const ModuleRep& m) {
  Matrix out(m.field(), m.dim(), t.dim());
  for (std::size_t q = 0; q < t.dim(); ++q) {
    std::size_t idx = t.space.complement()[q];
    out.set_col(q, m.action(idx / m.dim()).col(idx % m.dim()));
  }
  return out;
}

// m -> (a' -> a' m) into Hom_B(A, M) for an A-module M.
Matrix eta_into_hom(const Coinduced& co, const ModuleRep& m) {
  Matrix out(m.field(), co.maps.size(), m.dim());
  const std::size_t d = m.algebra()->dim();
  for (std::size_t k = 0; k < m.dim(); ++k) {
    Matrix phi(m.field(), m.dim(), d);
    for (std::size_t ap = 0; ap < d; ++ap) phi.set_col(ap, m.action(ap).col(k));
    auto c = co.coordinates(phi);
    if (!c) throw VerificationFailure("a' -> a' m is not a module map");
    out.set_col(k, *c);
  }
  return out;
}

// phi -> phi(1).
Matrix evaluate_at_one(const Algebra& a, const Coinduced& co, std::size_t vdim) {
  Matrix out(a.field(), vdim, co.maps.size());
  for (std::size_t t = 0; t < co.maps.size(); ++t) out.set_col(t, co.maps[t] * a.one().coords());
  return out;
}

bool is_identity(const Matrix& m) { return m.is_square() && m == Matrix::identity(m.field(), m.rows()); }

void check_a_sample(const AlgebraPtr& a, const PsiMorphisms& psi, const ModuleRep& m, Rec& out) {
  const std::string& tag = m.tag();
  {
    ModuleRep r1 = restrict_along(psi.psi1, m);
    Coinduced co = coinduce(psi.psi1, r1);
    Matrix eta = eta_into_hom(co, m);
    ModuleMorphism mor(m, co.module, eta);
    out.push_back({"unit M -> psi1^! psi1_* M is an isomorphism", tag, mor.is_isomorphism(),
                   {{"dim M", ll(m.dim())}, {"dim psi1^! psi1_* M", ll(co.module.dim())}}});
    Matrix back = evaluate_at_one(*a, co, m.dim()) * eta;
    out.push_back({"triangle psi1_* -> psi1_* psi1^! psi1_* -> psi1_*", tag, is_identity(back), {}});
  }
  {
    ModuleRep r2 = restrict_along(psi.psi2, m);
    Induced ind = induce(psi.psi2, r2);
    Matrix eps = action_out_of_tensor(ind.tensor, m);
    ModuleMorphism mor(ind.module, m, eps);
    out.push_back({"counit psi2^* psi2_* M -> M is an isomorphism", tag, mor.is_isomorphism(),
                   {{"dim M", ll(m.dim())}, {"dim psi2^* psi2_* M", ll(ind.module.dim())}}});
    Matrix back = eps * unit_into_tensor(*a, ind.tensor, m.dim());
    out.push_back({"triangle psi2_* -> psi2_* psi2^* psi2_* -> psi2_*", tag, is_identity(back), {}});
  }
}

void check_b_sample(const AlgebraPtr& a, const Element& delta, const PsiMorphisms& psi, const ModuleRep& v, Rec& out) {
  const std::string& tag = v.tag();
  const Algebra& b = *psi.b;
  MuTransform mu = mu_transform(a, delta, v);
  out.push_back({"mu: psi2^* V -> psi1^! V is an isomorphism", tag, mu.is_isomorphism,
                 {{"dim psi2^* V", ll(mu.map.source().dim())}, {"dim psi1^! V", ll(mu.map.target().dim())}}});

  Induced ind = induce(psi.psi2, v);
  bool trivial_action = true;
  for (std::size_t i = 1; i < b.dim(); ++i) trivial_action = trivial_action && v.action(i).is_zero();
  out.push_back({"psi2^* V = 0 exactly when B+ acts by zero", tag, (ind.module.dim() == 0) == trivial_action,
                 {{"dim psi2^* V", ll(ind.module.dim())}, {"B+ acts by zero", trivial_action ? 1 : 0}}});

  {
    // psi2^* V -> psi2^* psi2_* psi2^* V -> psi2^* V
    const ModuleRep& w = ind.module;
    Matrix eta = unit_into_tensor(*a, ind.tensor, v.dim());  // V -> psi2_* W
    Induced ind2 = induce(psi.psi2, restrict_along(psi.psi2, w));
    const std::size_t vd = v.dim(), wd = w.dim();
    Matrix lifted(a->field(), ind2.tensor.dim(), ind.tensor.dim());
    for (std::size_t q = 0; q < ind.tensor.dim(); ++q) {
      std::size_t idx = ind.tensor.space.complement()[q];
      std::size_t ai = idx / vd, bi = idx % vd;
      Vector pure = zero_vector(a->field(), a->dim() * wd);
      for (std::size_t s = 0; s < wd; ++s) pure[ai * wd + s] = eta(s, bi);
      lifted.set_col(q, ind2.tensor.space.project(pure));
    }
    Matrix back = action_out_of_tensor(ind2.tensor, w) * lifted;
    out.push_back({"triangle psi2^* -> psi2^* psi2_* psi2^* -> psi2^*", tag, is_identity(back), {}});
  }
  {
    // psi1^! V -> psi1^! psi1_* psi1^! V -> psi1^! V
    Coinduced co = coinduce(psi.psi1, v);
    const ModuleRep& c = co.module;
    Coinduced co2 = coinduce(psi.psi1, restrict_along(psi.psi1, c));
    Matrix eta = eta_into_hom(co2, c);
    Matrix eps = evaluate_at_one(*a, co, v.dim());
    Matrix pushed(a->field(), co.maps.size(), co2.maps.size());
    for (std::size_t s = 0; s < co2.maps.size(); ++s) {
      auto coords = co.coordinates(eps * co2.maps[s]);
      if (!coords) throw VerificationFailure("psi1^! of the counit left the hom space");
      pushed.set_col(s, *coords);
    }
    out.push_back({"triangle psi1^! -> psi1^! psi1_* psi1^! -> psi1^!", tag, is_identity(pushed * eta), {}});
  }
}

}  // namespace

RecollementReport recollement_report(const AlgebraPtr& a, const Element& delta, const std::vector<ModuleRep>& samples) {
  a->require_associative_unital();
  PsiMorphisms psi = psi_morphisms(a, delta);
  RecollementReport rep;
  rep.well_tempered = is_well_tempered_criterion(*a, delta);

  std::vector<ModuleRep> a_samples, b_samples;
  ModuleRep reg = regular_module(a, Side::Left).tagged("A");
  a_samples.push_back(reg);
  if (const auto& lift = a->lift()) {
    for (std::size_t b = 0; b < lift->block_sizes.size(); ++b) {
      std::vector<Vector> span;
      for (std::size_t i = 0; i < a->dim(); ++i) span.push_back(a->multiply(a->basis(i), lift->unit(b, 0, 0)).coords());
      a_samples.push_back(submodule(reg, span).module.tagged("A e" + std::to_string(b)));
    }
    if (!lift->radical.empty()) {
      std::vector<Vector> rad;
      for (const auto& r : lift->radical) rad.push_back(r.coords());
      a_samples.push_back(quotient_module(reg, rad).module.tagged("A/R(A)"));
    }
  }
  b_samples.push_back(regular_module(psi.b, Side::Left).tagged("B"));
  b_samples.push_back(trivial_module(psi.b, Side::Left).tagged("k"));
  b_samples.push_back(restrict_along(psi.psi1, reg).tagged("psi1_* A"));
  b_samples.push_back(restrict_along(psi.psi2, reg).tagged("psi2_* A"));
  for (const auto& s : samples) {
    if (s.side() != Side::Left) throw DimensionMismatch("recollement samples must be left modules");
    if (same_algebra(*s.algebra(), *a))
      a_samples.push_back(ModuleRep(a, Side::Left, s.dim(), s.action(), s.tag()));
    else if (same_algebra(*s.algebra(), *psi.b))
      b_samples.push_back(ModuleRep(psi.b, Side::Left, s.dim(), s.action(), s.tag()));
    else
      throw DimensionMismatch("sample is neither an A-module nor a B-module");
  }
  for (const auto& m : a_samples) check_a_sample(a, psi, m, rep.checks);
  for (const auto& v : b_samples) check_b_sample(a, delta, psi, v, rep.checks);
  return rep;
}

OracleTrial oracle_trial(std::uint64_t seed, std::size_t max_dim, const FieldSpec& field) {
  const TestProfile profiles[] = {TestProfile::SplitSemisimple, TestProfile::SemisimplePlusNilpotent,
                                  TestProfile::TriangularLike};
  TestProfile profile = profiles[seed % 3];
  std::mt19937_64 rng(seed);
  Algebra drawn = random_test_algebra(seed, profile, field);
  for (std::uint64_t k = 1; drawn.dim() > max_dim; ++k) drawn = random_test_algebra(seed + k * 1000003, profile, field);
  AlgebraPtr a = share(std::move(drawn));
  Element delta = random_delta(*a, rng);
  AugmentationModules mods = augmentation_modules(a, delta);
  return {seed,
          profile,
          a,
          delta,
          is_well_tempered_criterion(*a, delta),
          is_projective(mods.b_plus_left),
          is_projective(mods.b_plus_right),
          ext1_trivial(a, delta)};
}

}  // namespace homotope
