#include "homotope/fiber.hpp"

#include "homotope/errors.hpp"
#include "homotope/linalg.hpp"

namespace homotope {

namespace {

Vector slice(const Vector& v, std::size_t start, std::size_t len) {
  return Vector(v.begin() + static_cast<long>(start), v.begin() + static_cast<long>(start + len));
}

FiberSetup build(const AlgebraPtr& a, std::vector<Element> ideal_in) {
  a->require_associative_unital();
  if (!a->is_commutative()) throw NotCommutative("fiber product needs a commutative algebra");
  const FieldSpec& f = a->field();
  const std::size_t d = a->dim();
  QuotientResult qr = quotient(a, ideal_in);

  std::vector<Vector> ivs;
  for (const auto& x : ideal_in) ivs.push_back(x.coords());
  std::vector<Vector> ib = span_basis(f, d, ivs);
  QuotientSpace qs(f, d, ib);
  std::vector<Element> ideal;
  for (const auto& v : ib) ideal.emplace_back(v);

  // B basis: (1, 1), then (i_t, 0)
  std::vector<Vector> bb;
  Vector u = a->one().coords();
  u.push_back(Scalar::one(f));
  bb.push_back(u);
  for (const auto& v : ib) {
    Vector w = v;
    w.push_back(Scalar::zero(f));
    bb.push_back(w);
  }
  const std::size_t db = bb.size();
  SpanSolver in_ideal(f, d, ib);
  std::vector<StructureConstant> sc;
  std::vector<std::string> labels{"1"};
  for (std::size_t t = 0; t < ib.size(); ++t) labels.push_back("i" + std::to_string(t + 1));
  for (std::size_t i = 0; i < db; ++i) sc.push_back({0, i, i, Scalar::one(f)});
  for (std::size_t s = 1; s < db; ++s) {
    sc.push_back({s, 0, s, Scalar::one(f)});
    for (std::size_t t = 1; t < db; ++t) {
      Vector p = a->multiply(Element(ib[s - 1]), Element(ib[t - 1])).coords();
      auto c = in_ideal.coordinates(p);
      if (!c) throw NotAnIdeal("ideal is not closed under multiplication");
      for (std::size_t l = 0; l < c->size(); ++l)
        if (!(*c)[l].is_zero()) sc.push_back({s, t, l + 1, (*c)[l]});
    }
  }
  Algebra balg(f, db, sc, labels, Element(unit_vector(f, db, 0)));
  balg.mark_augmented();
  AlgebraPtr b = share(std::move(balg));
  AlgebraPtr k = share(matrix_algebra(1, f));
  Matrix m1(f, d, db), m2(f, 1, db);
  for (std::size_t i = 0; i < db; ++i) {
    m1.set_col(i, slice(bb[i], 0, d));
    m2(0, i) = bb[i][d];
  }
  return FiberSetup{a,
                    std::move(ideal),
                    qr.algebra,
                    qr.projection,
                    qs.complement(),
                    b,
                    k,
                    AlgebraMorphism(b, a, std::move(m1), true),
                    AlgebraMorphism(b, k, std::move(m2), true),
                    std::move(bb)};
}

// A/I-module structure on C (x)_k N, index c * n + j.
Matrix c_on_tensor(const FiberSetup& s, std::size_t c, std::size_t n) {
  const Algebra& ca = *s.c;
  Matrix l = ca.mult_operator(ca.basis(c), Side::Left);
  Matrix out(ca.field(), ca.dim() * n, ca.dim() * n);
  for (std::size_t p = 0; p < ca.dim(); ++p)
    for (std::size_t q = 0; q < ca.dim(); ++q)
      for (std::size_t j = 0; j < n; ++j) out(p * n + j, q * n + j) = l(p, q);
  return out;
}

// action of the lift of c on M'/IM'
Matrix c_on_reduction(const FiberSetup& s, const ModuleRep& m, const QuotientSpace& red, std::size_t c) {
  const Matrix& act = m.action(s.c_lift[c]);
  Matrix out(m.field(), red.dim(), red.dim());
  for (std::size_t q = 0; q < red.dim(); ++q) out.set_col(q, red.project(act.col(red.complement()[q])));
  return out;
}

QuotientSpace ideal_reduction(const FiberSetup& s, const ModuleRep& m) {
  std::vector<Vector> span;
  for (const auto& i : s.ideal) {
    Matrix act = m.act(i);
    for (std::size_t c = 0; c < m.dim(); ++c) span.push_back(act.col(c));
  }
  return QuotientSpace(m.field(), m.dim(), span);
}

struct Unglued {
  GluingTriple triple;
  TensorProduct n_tensor;
  Induced m_induced;
};

Unglued unglue_full(const FiberSetup& s, const ModuleRep& l) {
  if (l.side() != Side::Left || !same_algebra(*l.algebra(), *s.b)) throw DimensionMismatch("unglue needs a left B-module");
  ModuleRep lb(s.b, Side::Left, l.dim(), l.action(), l.tag());
  const FieldSpec& f = l.field();
  TensorProduct tn = tensor_over_algebra(restrict_along(s.p2, regular_module(s.k, Side::Right)), lb);
  Induced ind = induce(s.p1, lb);
  QuotientSpace red = ideal_reduction(s, ind.module);
  const std::size_t n = tn.dim(), cd = s.c->dim();
  Matrix phi(f, red.dim(), cd * n);
  for (std::size_t c = 0; c < cd; ++c)
    for (std::size_t j = 0; j < n; ++j) {
      std::size_t ell = tn.space.complement()[j];
      phi.set_col(c * n + j, red.project(ind.tensor.project_pure(s.c_lift[c], ell)));
    }
  GluingTriple t = make_triple(s, n, ind.module, std::move(phi));
  return {std::move(t), std::move(tn), std::move(ind)};
}

}  // namespace

FiberSetup fiber_setup(const AlgebraPtr& a, const std::vector<Element>& ideal) { return build(a, ideal); }

FiberSetup fiber_setup(const AlgebraPtr& a, const Element& delta) {
  a->require_associative_unital();
  return build(a, principal_two_sided_ideal(*a, delta));
}

std::optional<Element> fiber_element(const FiberSetup& s, const Element& a, const Scalar& lambda) {
  s.a->check(a);
  Vector v = a.coords();
  v.push_back(lambda);
  SpanSolver solver(s.a->field(), s.a->dim() + 1, s.b_basis);
  auto c = solver.coordinates(v);
  if (!c) return std::nullopt;
  return Element(*c);
}

GluingTriple make_triple(const FiberSetup& s, std::size_t n, ModuleRep m, Matrix phi) {
  if (!same_algebra(*m.algebra(), *s.a) || m.side() != Side::Left) throw DimensionMismatch("M' must be a left A-module");
  QuotientSpace red = ideal_reduction(s, m);
  const std::size_t cd = s.c->dim();
  if (phi.rows() != red.dim() || phi.cols() != cd * n) throw DimensionMismatch("phi has the wrong size");
  if (!phi.is_square() || (phi.rows() > 0 && rank(phi) != phi.rows()))
    throw VerificationFailure("phi is not an isomorphism");
  for (std::size_t c = 0; c < cd; ++c)
    if (!(phi * c_on_tensor(s, c, n) == c_on_reduction(s, m, red, c) * phi))
      throw VerificationFailure("phi is not A/I-linear");
  return {n, std::move(m), std::move(red), std::move(phi)};
}

GluingTriple unglue(const FiberSetup& s, const ModuleRep& l) { return unglue_full(s, l).triple; }

Glued glue(const FiberSetup& s, const GluingTriple& t) {
  const FieldSpec& f = s.a->field();
  const std::size_t n = t.n, md = t.m.dim(), cd = s.c->dim();
  // (x, m) -> phi(1 (x) x) - [m]
  Matrix cond(f, t.reduction.dim(), n + md);
  const Vector& one = s.c->one().coords();
  for (std::size_t j = 0; j < n; ++j) {
    Vector col = zero_vector(f, t.reduction.dim());
    for (std::size_t c = 0; c < cd; ++c)
      if (!one[c].is_zero()) axpy(col, one[c], t.phi.col(c * n + j));
    cond.set_col(j, col);
  }
  for (std::size_t r = 0; r < md; ++r) {
    Vector col = t.reduction.project(unit_vector(f, md, r));
    for (auto& x : col) x = -x;
    cond.set_col(n + r, col);
  }
  std::vector<Vector> basis =
      cond.rows() == 0 ? std::vector<Vector>{} : kernel_basis(cond);
  if (cond.rows() == 0)
    for (std::size_t i = 0; i < n + md; ++i) basis.push_back(unit_vector(f, n + md, i));
  std::vector<Matrix> act;
  for (std::size_t i = 0; i < s.b->dim(); ++i) {
    Element bi = s.b->basis(i);
    Matrix scal = s.p2(bi)[0] * Matrix::identity(f, n);
    act.push_back(block_diagonal(f, {scal, t.m.act(s.p1(bi))}));
  }
  ModuleRep ambient(s.b, Side::Left, n + md, std::move(act), "N + M'");
  Submodule sub = submodule(ambient, basis);
  return {sub.module.tagged("glued"), std::move(sub.basis)};
}

Matrix glue_unit(const FiberSetup& s, const ModuleRep& l) {
  Unglued u = unglue_full(s, l);
  Glued g = glue(s, u.triple);
  const FieldSpec& f = l.field();
  const std::size_t n = u.triple.n, md = u.triple.m.dim();
  SpanSolver solver(f, n + md, g.basis);
  Matrix out(f, g.basis.size(), l.dim());
  const Vector& one = s.a->one().coords();
  for (std::size_t e = 0; e < l.dim(); ++e) {
    Vector x = u.n_tensor.project_pure(0, e);
    Vector pure = zero_vector(f, s.a->dim() * l.dim());
    for (std::size_t a = 0; a < s.a->dim(); ++a) pure[a * l.dim() + e] = one[a];
    Vector m = u.m_induced.tensor.space.project(pure);
    x.insert(x.end(), m.begin(), m.end());
    auto c = solver.coordinates(x);
    if (!c) throw VerificationFailure("unit map leaves the fiber product");
    out.set_col(e, *c);
  }
  return out;
}

std::vector<Vector> unit_kernel(const FiberSetup& s, const ModuleRep& l) {
  Matrix eta = glue_unit(s, l);
  if (eta.rows() == 0) {
    std::vector<Vector> all;
    for (std::size_t i = 0; i < l.dim(); ++i) all.push_back(unit_vector(l.field(), l.dim(), i));
    return all;
  }
  return kernel_basis(eta);
}

RoundTrip glue_round_trip(const FiberSetup& s, const GluingTriple& t) {
  const FieldSpec& f = s.a->field();
  Glued g = glue(s, t);
  Unglued u = unglue_full(s, g.module);
  const std::size_t n = t.n, ld = g.basis.size(), cd = s.c->dim();
  RoundTrip rt;

  Matrix an(f, n, u.triple.n);
  for (std::size_t q = 0; q < u.triple.n; ++q) an.set_col(q, slice(g.basis[u.n_tensor.space.complement()[q]], 0, n));
  rt.n_iso = an.is_square() && (n == 0 || rank(an) == n);

  const ModuleRep& mp = u.triple.m;
  Matrix am(f, t.m.dim(), mp.dim());
  for (std::size_t q = 0; q < mp.dim(); ++q) {
    std::size_t idx = u.m_induced.tensor.space.complement()[q];
    Vector mpart = slice(g.basis[idx % ld], n, t.m.dim());
    am.set_col(q, t.m.action(idx / ld) * mpart);
  }
  rt.m_iso = am.is_square() && (am.rows() == 0 || rank(am) == am.rows()) && intertwines(mp, t.m, am);

  // phi o (1 (x) a_N) = [a_M] o phi_L
  Matrix cn(f, cd * n, cd * u.triple.n);
  for (std::size_t c = 0; c < cd; ++c)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < u.triple.n; ++j) cn(c * n + i, c * u.triple.n + j) = an(i, j);
  Matrix red(f, t.reduction.dim(), u.triple.reduction.dim());
  for (std::size_t q = 0; q < u.triple.reduction.dim(); ++q)
    red.set_col(q, t.reduction.project(am.col(u.triple.reduction.complement()[q])));
  rt.compatible = t.phi * cn == red * u.triple.phi;
  return rt;
}

ModuleRep reduce_mod_ideal(const FiberSetup& s, const ModuleRep& w) {
  if (!same_algebra(*w.algebra(), *s.a) || w.side() != Side::Left) throw DimensionMismatch("W must be a left A-module");
  std::vector<Vector> span;
  for (const auto& i : s.ideal) {
    Matrix act = w.act(i);
    for (std::size_t c = 0; c < w.dim(); ++c) span.push_back(act.col(c));
  }
  QuotientModule q = quotient_module(w, span);
  std::vector<Matrix> act;
  for (std::size_t c = 0; c < s.c->dim(); ++c) act.push_back(q.module.action(s.c_lift[c]));
  return ModuleRep(s.c, Side::Left, q.module.dim(), std::move(act), w.tag() + " mod I");
}

bool in_glued_subcategory(const FiberSetup& s, const ModuleRep& w) {
  ModuleRep p = reduce_mod_ideal(s, w);
  if (!is_projective(p)) return false;
  const std::size_t dp = p.dim();
  return hom_basis(p, p).size() * s.c->dim() == dp * dp;
}

GluingTriple free_triple(const FiberSetup& s, std::size_t r, std::mt19937_64& rng) {
  const FieldSpec& f = s.a->field();
  Matrix g(f, r, r);
  do {
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < r; ++j) g(i, j) = Scalar(f, static_cast<long>(rng() % 5) - 2);
  } while (rank(g) != r);
  const std::size_t cd = s.c->dim();
  Matrix phi(f, cd * r, cd * r);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j)
      for (std::size_t c = 0; c < cd; ++c) phi(i * cd + c, c * r + j) = g(i, j);
  return make_triple(s, r, free_module(s.a, r), phi);
}

bool colon_equals_ideal(const FiberSetup& s, const Element& u) {
  const Algebra& a = *s.a;
  const FieldSpec& f = a.field();
  a.check(u);
  std::vector<Vector> iu, ideal;
  for (const auto& i : s.ideal) {
    iu.push_back(a.multiply(i, u).coords());
    ideal.push_back(i.coords());
  }
  Matrix lu = a.mult_operator(u, Side::Left);
  QuotientSpace q(f, a.dim(), iu);
  std::vector<Vector> colon;
  if (q.dim() == 0) {
    for (std::size_t c = 0; c < a.dim(); ++c) colon.push_back(unit_vector(f, a.dim(), c));
  } else {
    Matrix m(f, q.dim(), a.dim());
    for (std::size_t c = 0; c < a.dim(); ++c) m.set_col(c, q.project(lu.col(c)));
    colon = kernel_basis(m);
  }
  return same_subspace(f, a.dim(), colon, ideal);
}

ModuleRep cyclic_quotient(const FiberSetup& s, const Element& u) {
  s.b->check(u);
  ModuleRep reg = regular_module(s.b, Side::Left);
  std::vector<Vector> span;
  for (std::size_t i = 0; i < s.b->dim(); ++i) span.push_back(s.b->multiply(s.b->basis(i), u).coords());
  return quotient_module(reg, span).module.tagged("B/(u)");
}

}  // namespace homotope
