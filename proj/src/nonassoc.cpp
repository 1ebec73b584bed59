#include "homotope/nonassoc.hpp"

#include <random>

#include "homotope/errors.hpp"
#include "homotope/linalg.hpp"
#include "homotope/polynomial.hpp"

namespace homotope {

namespace {

Scalar random_scalar(const FieldSpec& f, std::mt19937_64& rng) {
  if (f.is_prime_field())
    return Scalar(f, mpz_class(static_cast<unsigned long>(rng() % f.characteristic())), mpz_class(1));
  return Scalar(f, static_cast<long>(rng() % 19) - 9);
}

Vector random_vector(const FieldSpec& f, std::size_t d, std::mt19937_64& rng) {
  Vector v;
  for (std::size_t i = 0; i < d; ++i) v.push_back(random_scalar(f, rng));
  return v;
}

Matrix must_invert(const Matrix& m, const char* what) {
  auto inv = invert(m);
  if (!inv) throw NotInvertible(std::string(what) + " is not invertible");
  return *inv;
}

bool invertible(const Matrix& m) { return m.rows() == 0 || rank(m) == m.rows(); }

std::vector<Matrix> operators(const MultiplicationTensor& m, EnvelopeSide side) {
  std::vector<Matrix> ops;
  for (std::size_t i = 0; i < m.dim(); ++i) {
    if (side != EnvelopeSide::Right) ops.push_back(m.mult_operator(m.basis(i), Side::Left));
    if (side != EnvelopeSide::Left) ops.push_back(m.mult_operator(m.basis(i), Side::Right));
  }
  return ops;
}

std::vector<Vector> spin(const FieldSpec& f, std::size_t d, const std::vector<Matrix>& gens, const Vector& w) {
  EchelonBasis s(f, d);
  std::vector<Vector> queue;
  if (s.insert(w)) queue.push_back(w);
  while (!queue.empty()) {
    Vector u = std::move(queue.back());
    queue.pop_back();
    for (const auto& g : gens) {
      Vector x = g * u;
      if (s.insert(x)) queue.push_back(std::move(x));
    }
  }
  return s.rows();
}

// eigenvectors and kernel vectors of x
std::vector<Vector> candidates_of(const Matrix& x) {
  const FieldSpec& f = x.field();
  const std::size_t d = x.rows();
  std::vector<Vector> out = kernel_basis(x);
  std::vector<Scalar> roots;
  try {
    roots = field_roots(characteristic_polynomial(x));
  } catch (const Error&) {
    return out;
  }
  for (const auto& r : roots) {
    if (r.is_zero()) continue;
    Matrix shifted = x;
    shifted.add_scaled(-r, Matrix::identity(f, d));
    for (auto& v : kernel_basis(shifted)) out.push_back(std::move(v));
  }
  return out;
}

}  // namespace

IsotopyTriple IsotopyTriple::identity(const FieldSpec& field, std::size_t d) {
  Matrix i = Matrix::identity(field, d);
  return {i, i, i};
}

IsotopyTriple compose(const IsotopyTriple& t, const IsotopyTriple& s) {
  return {t.g1 * s.g1, t.g2 * s.g2, t.g3 * s.g3};
}

MultiplicationTensor random_tensor(std::size_t d, const FieldSpec& field, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<StructureConstant> sc;
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      for (std::size_t l = 0; l < d; ++l) {
        Scalar c = random_scalar(field, rng);
        if (!c.is_zero()) sc.push_back({i, j, l, c});
      }
  return Algebra(field, d, sc);
}

MultiplicationTensor apply_isotopy(const MultiplicationTensor& m, const IsotopyTriple& t) {
  const FieldSpec& f = m.field();
  const std::size_t d = m.dim();
  for (const Matrix* g : {&t.g1, &t.g2, &t.g3}) {
    if (g->rows() != d || g->cols() != d) throw DimensionMismatch("isotopy matrix has the wrong size");
    if (!(g->field() == f)) throw FieldMismatch("isotopy matrix over another field");
  }
  if (!invertible(t.g1)) throw NotInvertible("g1 is not invertible");
  Matrix h2 = must_invert(t.g2, "g2"), h3 = must_invert(t.g3, "g3");
  std::vector<StructureConstant> sc;
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      Vector p = t.g1 * m.multiply(Element(h2.col(i)), Element(h3.col(j))).coords();
      for (std::size_t l = 0; l < d; ++l)
        if (!p[l].is_zero()) sc.push_back({i, j, l, p[l]});
    }
  return Algebra(f, d, sc, m.labels());
}

const char* to_string(BruckClass c) {
  switch (c) {
    case BruckClass::BothSides: return "both-sides";
    case BruckClass::LeftOnly: return "left-only";
    case BruckClass::RightOnly: return "right-only";
    case BruckClass::Neither: return "neither";
  }
  return "?";
}

InvertibilityReport invertibility_class(const MultiplicationTensor& m, std::size_t samples, std::uint64_t seed) {
  std::vector<Element> cand;
  for (std::size_t i = 0; i < m.dim(); ++i) cand.push_back(m.basis(i));
  if (auto u = find_unit(m)) cand.insert(cand.begin(), *u);
  std::mt19937_64 rng(seed);
  for (std::size_t s = 0; s < samples; ++s) cand.emplace_back(random_vector(m.field(), m.dim(), rng));
  InvertibilityReport r{BruckClass::Neither, std::nullopt, std::nullopt, 0};
  for (const auto& v : cand) {
    ++r.tried;
    if (!r.left_witness && invertible(m.mult_operator(v, Side::Left))) r.left_witness = v;
    if (!r.right_witness && invertible(m.mult_operator(v, Side::Right))) r.right_witness = v;
    if (r.left_witness && r.right_witness) break;
  }
  if (r.left_witness && r.right_witness) r.cls = BruckClass::BothSides;
  else if (r.left_witness) r.cls = BruckClass::LeftOnly;
  else if (r.right_witness) r.cls = BruckClass::RightOnly;
  return r;
}

MultiplicationTensor kaplansky_unitalize(const MultiplicationTensor& m, const Element& a, const Element& b) {
  Matrix rb = m.mult_operator(b, Side::Right), la = m.mult_operator(a, Side::Left);
  if (!invertible(rb)) throw NotInvertible("r_b is not invertible");
  if (!invertible(la)) throw NotInvertible("l_a is not invertible");
  Algebra iso = apply_isotopy(m, {Matrix::identity(m.field(), m.dim()), rb, la});
  return Algebra(m.field(), m.dim(), iso.structure_constants(), m.labels(), m.multiply(a, b));
}

std::vector<Matrix> operator_envelope(const FieldSpec& field, std::size_t d, const std::vector<Matrix>& generators) {
  EchelonBasis eb(field, d * d);
  std::vector<Matrix> queue;
  for (const auto& g : generators)
    if (eb.insert(g.entries())) queue.push_back(g);
  while (!queue.empty()) {
    Matrix x = std::move(queue.back());
    queue.pop_back();
    for (const auto& g : generators) {
      Matrix y = x * g;
      if (eb.insert(y.entries())) queue.push_back(std::move(y));
    }
  }
  std::vector<Matrix> out;
  for (const auto& r : eb.rows()) out.push_back(Matrix::from_entries(field, d, d, r));
  return out;
}

std::vector<Matrix> envelope(const MultiplicationTensor& m, EnvelopeSide side) {
  return operator_envelope(m.field(), m.dim(), operators(m, side));
}

const char* to_string(SimplicityKind k) {
  switch (k) {
    case SimplicityKind::Simple: return "simple";
    case SimplicityKind::NotSimple: return "not-simple";
    case SimplicityKind::Inconclusive: return "inconclusive";
  }
  return "?";
}

bool is_invariant_subspace(const FieldSpec& field, std::size_t d, const std::vector<Matrix>& generators,
                           const std::vector<Vector>& basis) {
  EchelonBasis s(field, d);
  s.insert_all(basis);
  for (const auto& g : generators)
    for (const auto& v : basis)
      if (!s.contains(g * v)) return false;
  return true;
}

SimplicityResult operator_simplicity(const FieldSpec& field, std::size_t d, const std::vector<Matrix>& generators) {
  std::vector<Matrix> env = operator_envelope(field, d, generators);
  SimplicityResult res{SimplicityKind::Inconclusive, {}, env.size()};
  if (d > 0 && env.size() == d * d) {
    res.kind = SimplicityKind::Simple;
    return res;
  }
  if (d <= 1) return res;
  std::vector<Matrix> transposed;
  for (const auto& g : generators) transposed.push_back(g.transpose());

  std::vector<Vector> cands;
  for (std::size_t k = 0; k < d; ++k) cands.push_back(unit_vector(field, d, k));
  std::vector<Vector> dual_cands = cands;
  for (const auto& x : env) {
    for (auto& v : candidates_of(x)) cands.push_back(std::move(v));
    for (auto& v : candidates_of(x.transpose())) dual_cands.push_back(std::move(v));
  }
  auto accept = [&](std::vector<Vector> w) {
    if (w.empty() || w.size() >= d || !is_invariant_subspace(field, d, generators, w)) return false;
    res.kind = SimplicityKind::NotSimple;
    res.witness = std::move(w);
    return true;
  };
  for (const auto& w : cands)
    if (accept(spin(field, d, generators, w))) return res;
  for (const auto& w : dual_cands) {
    std::vector<Vector> u = spin(field, d, transposed, w);
    if (u.empty() || u.size() >= d) continue;
    if (accept(kernel_basis(Matrix::from_row_vectors(field, d, u)))) return res;
  }
  return res;
}

SimplicityResult simplicity_check(const MultiplicationTensor& m, EnvelopeSide side) {
  return operator_simplicity(m.field(), m.dim(), operators(m, side));
}

std::vector<Matrix> matrix_square_roots(const Matrix& m) {
  const FieldSpec& f = m.field();
  if (!m.is_square()) throw DimensionMismatch("square roots need a square matrix");
  if (f.is_prime_field() && f.characteristic() == 2) throw UnsupportedCharacteristic("square roots in characteristic 2");
  const std::size_t d = m.rows();
  auto roots = split_roots(characteristic_polynomial(m));
  if (!roots) throw GenericityViolation("eigenvalues are not all in the field");
  std::vector<Scalar> sq;
  for (std::size_t i = 0; i < roots->size(); ++i) {
    const Scalar& mu = (*roots)[i];
    if (mu.is_zero()) throw GenericityViolation("zero eigenvalue");
    for (std::size_t j = 0; j < i; ++j)
      if ((*roots)[j] == mu) throw GenericityViolation("repeated eigenvalue " + mu.to_string());
    auto s = square_root(mu);
    if (!s) throw GenericityViolation("eigenvalue " + mu.to_string() + " is not a square");
    sq.push_back(*s);
  }
  std::vector<Vector> eig;
  for (const auto& mu : *roots) {
    Matrix shifted = m;
    shifted.add_scaled(-mu, Matrix::identity(f, d));
    eig.push_back(kernel_basis(shifted).front());
  }
  Matrix p = Matrix::from_columns(f, d, eig);
  Matrix pinv = must_invert(p, "eigenbasis");
  std::vector<Matrix> out;
  for (std::size_t mask = 0; mask < (std::size_t{1} << d); ++mask) {
    Matrix diag(f, d, d);
    for (std::size_t i = 0; i < d; ++i) diag(i, i) = (mask >> i) & 1 ? -sq[i] : sq[i];
    out.push_back(p * diag * pinv);
  }
  return out;
}

MultiplicationTensor homotope_map_right(const MultiplicationTensor& m, const Element& v) {
  return homotope_algebra(m, v, Side::Right);
}

std::vector<MultiplicationTensor> homotope_preimages(const MultiplicationTensor& m_prime, const Element& v) {
  m_prime.check(v);
  const FieldSpec& f = m_prime.field();
  const std::size_t d = m_prime.dim();
  if (v.is_zero()) throw GenericityViolation("v = 0");
  // basis with v first
  EchelonBasis span(f, d);
  std::vector<Vector> cols{v.coords()};
  span.insert(v.coords());
  for (std::size_t k = 0; k < d && cols.size() < d; ++k) {
    Vector e = unit_vector(f, d, k);
    if (span.insert(e)) cols.push_back(e);
  }
  Matrix p = Matrix::from_columns(f, d, cols);
  Matrix pinv = must_invert(p, "change of basis");
  Algebra mt = apply_isotopy(m_prime, {pinv, pinv, pinv});

  std::vector<Matrix> rp;
  for (std::size_t i = 0; i < d; ++i) rp.push_back(mt.mult_operator(mt.basis(i), Side::Right));
  if (!invertible(rp[0])) throw GenericityViolation("r'_v is singular");
  std::vector<MultiplicationTensor> out;
  for (const auto& r1 : matrix_square_roots(rp[0])) {
    Matrix r1inv = must_invert(r1, "square root");
    std::vector<StructureConstant> sc;
    for (std::size_t i = 0; i < d; ++i) {
      Matrix ri = i == 0 ? r1 : rp[i] * r1inv;
      for (std::size_t a = 0; a < d; ++a)
        for (std::size_t l = 0; l < d; ++l)
          if (!ri(l, a).is_zero()) sc.push_back({a, i, l, ri(l, a)});
    }
    Algebra m = apply_isotopy(Algebra(f, d, sc), {p, p, p});
    Algebra back = homotope_map_right(m, v);
    if (!same_algebra(back, m_prime)) throw VerificationFailure("preimage does not map back under R(v)");
    out.push_back(Algebra(f, d, m.structure_constants(), m_prime.labels()));
  }
  return out;
}

MultiplicationTensor constructed_generic_tensor(std::size_t d, const FieldSpec& field, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  auto random_invertible = [&] {
    for (;;) {
      Matrix m(field, d, d);
      for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) m(i, j) = Scalar(field, static_cast<long>(rng() % 7) - 3);
      if (invertible(m)) return m;
    }
  };
  Matrix p = random_invertible();
  Matrix dm(field, d, d);
  for (std::size_t i = 0; i < d; ++i) dm(i, i) = Scalar(field, static_cast<long>(2 + 3 * i));
  std::vector<Matrix> r{p * dm * must_invert(p, "P")};
  for (std::size_t i = 1; i < d; ++i) r.push_back(random_invertible());
  std::vector<StructureConstant> sc;
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t a = 0; a < d; ++a)
      for (std::size_t l = 0; l < d; ++l)
        if (!r[i](l, a).is_zero()) sc.push_back({a, i, l, r[i](l, a)});
  return Algebra(field, d, sc);
}

DensityReport genericity_density(std::size_t d, const FieldSpec& field, std::size_t samples, std::uint64_t seed) {
  std::size_t l = 0, r = 0, sl = 0, sr = 0;
  for (std::size_t s = 0; s < samples; ++s) {
    MultiplicationTensor m = random_tensor(d, field, seed + s);
    std::mt19937_64 rng((seed + s) ^ 0x9e3779b97f4a7c15ULL);
    Vector v;
    do v = random_vector(field, d, rng);
    while (d > 0 && is_zero(v));
    Element e(v);
    if (invertible(m.mult_operator(e, Side::Left))) ++l;
    if (invertible(m.mult_operator(e, Side::Right))) ++r;
    if (simplicity_check(m, EnvelopeSide::Left).kind == SimplicityKind::Simple) ++sl;
    if (simplicity_check(m, EnvelopeSide::Right).kind == SimplicityKind::Simple) ++sr;
  }
  auto frac = [&](std::size_t k) { return samples == 0 ? 0.0 : static_cast<double>(k) / static_cast<double>(samples); };
  return {samples, seed, frac(l), frac(r), frac(sl), frac(sr)};
}

}  // namespace homotope
