#include "homotope/structure.hpp"

#include <algorithm>
#include <functional>

#include "homotope/errors.hpp"
#include "homotope/linalg.hpp"

namespace homotope {

namespace {

std::vector<Vector> coords_of(const std::vector<Element>& xs) {
  std::vector<Vector> out;
  for (const auto& x : xs) out.push_back(x.coords());
  return out;
}

std::vector<Element> elements_of(const std::vector<Vector>& vs) {
  std::vector<Element> out;
  for (const auto& v : vs) out.emplace_back(v);
  return out;
}

// Products x*y for x in xs, y in ys, reduced to a basis.
std::vector<Element> product_space(const Algebra& a, const std::vector<Element>& xs, const std::vector<Element>& ys) {
  EchelonBasis e(a.field(), a.dim());
  for (const auto& x : xs)
    for (const auto& y : ys) e.insert(a.multiply(x, y).coords());
  return elements_of(e.rows());
}

void require_trace_characteristic(const FieldSpec& f, std::size_t dim) {
  if (f.is_prime_field() && f.characteristic() <= dim) {
    throw UnsupportedCharacteristic("trace-form radical needs p > " + std::to_string(dim) + ", got p = " +
                                    std::to_string(f.characteristic()));
  }
}

}  // namespace

Polynomial minimal_polynomial(const Algebra& a, const Element& x) {
  a.require_associative_unital();
  a.check(x);
  const std::size_t d = a.dim();
  const FieldSpec& f = a.field();
  EchelonBasis e(f, d + d + 1, d);
  Element power = a.one();
  for (std::size_t k = 0; k <= d; ++k) {
    Vector row = power.coords();
    row.resize(2 * d + 1, Scalar::zero(f));
    row[d + k] = Scalar::one(f);
    Vector reduced = e.reduce(row);
    if (std::all_of(reduced.begin(), reduced.begin() + static_cast<std::ptrdiff_t>(d),
                    [](const Scalar& s) { return s.is_zero(); })) {
      Vector coeffs(reduced.begin() + static_cast<std::ptrdiff_t>(d), reduced.end());
      return Polynomial(f, std::move(coeffs)).monic();
    }
    e.insert(std::move(row));
    power = a.multiply(power, x);
  }
  throw VerificationFailure("minimal polynomial of degree > dim");
}

std::vector<Element> jacobson_radical(const Algebra& a) {
  a.require_associative();
  if (!a.unit()) {
    Algebra u = adjoin_unit(a);
    require_trace_characteristic(a.field(), u.dim());
    std::vector<Element> out;
    for (const auto& r : jacobson_radical(u)) {
      if (!r[0].is_zero()) throw VerificationFailure("radical of the unitalization leaves the original algebra");
      out.emplace_back(Vector(r.coords().begin() + 1, r.coords().end()));
    }
    return out;
  }
  const std::size_t d = a.dim();
  const FieldSpec& f = a.field();
  require_trace_characteristic(f, d);
  // t_l = Tr(L_{e_l}) = sum_k c^k_{lk}
  Vector t = zero_vector(f, d);
  for (std::size_t l = 0; l < d; ++l)
    for (std::size_t k = 0; k < d; ++k)
      for (const auto& [m, c] : a.product(l, k))
        if (m == k) t[l] += c;
  Matrix gram(f, d, d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      for (const auto& [l, c] : a.product(i, j)) gram(j, i).add_product(c, t[l]);
  std::vector<Element> rad = elements_of(kernel_basis(gram));
  rad = elements_of(span_basis(f, d, coords_of(rad)));
  // sanity: R^(d+1) = 0
  std::vector<Element> power = rad;
  for (std::size_t k = 0; k <= d && !power.empty(); ++k) power = product_space(a, power, rad);
  if (!power.empty()) throw VerificationFailure("trace-form radical is not nilpotent");
  return rad;
}

SemisimpleQuotient semisimple_quotient(const AlgebraPtr& a) {
  auto rad = jacobson_radical(*a);
  auto q = quotient(a, rad);
  return {q.algebra, q.projection, rad};
}

BlockData wedderburn_blocks(const Algebra& s) {
  s.require_associative_unital();
  const std::size_t d = s.dim();
  const FieldSpec& f = s.field();
  // center: x e_j - e_j x = 0 for all j
  Matrix sys(f, d * d, d);
  for (std::size_t j = 0; j < d; ++j) {
    Matrix diff = s.mult_operator(s.basis(j), Side::Right) - s.mult_operator(s.basis(j), Side::Left);
    for (std::size_t r = 0; r < d; ++r)
      for (std::size_t c = 0; c < d; ++c) sys(j * d + r, c) = diff(r, c);
  }
  std::vector<Element> center = elements_of(kernel_basis(sys));

  std::vector<Element> idem{s.one()};
  for (const auto& z : center) {
    std::vector<Element> next;
    for (const auto& c : idem) {
      Element zc = s.multiply(z, c);
      Polynomial mp = minimal_polynomial(s, zc);
      auto roots = split_roots(mp);
      if (!roots) throw NotSplit("minimal polynomial " + mp.to_string() + " does not split over " + f.to_string());
      std::vector<Scalar> distinct;
      for (const auto& r : *roots) {
        if (std::find(distinct.begin(), distinct.end(), r) != distinct.end()) {
          throw VerificationFailure("central element with a repeated eigenvalue; algebra is not semisimple");
        }
        distinct.push_back(r);
      }
      // Lagrange idempotents of zc inside the corner c S c
      for (const auto& lam : distinct) {
        Element e = c;
        for (const auto& mu : distinct) {
          if (mu == lam) continue;
          Element shifted = zc - mu * c;
          e = (lam - mu).inverse() * s.multiply(e, shifted);
        }
        if (!e.is_zero()) next.push_back(e);
      }
    }
    idem = std::move(next);
  }
  if (idem.size() != center.size()) throw NotSplit("center does not split into primitive idempotents");

  BlockData out;
  for (const auto& c : idem) {
    std::size_t dim_block = rank(s.mult_operator(c, Side::Left));
    std::size_t n = 0;
    while ((n + 1) * (n + 1) <= dim_block) ++n;
    if (n * n != dim_block) throw NotSplit("block of dimension " + std::to_string(dim_block) + " is not a matrix algebra");
    out.idempotents.push_back(c);
    out.block_sizes.push_back(n);
  }
  return out;
}

std::vector<std::size_t> block_ranks(const AlgebraPtr& a, const Element& delta) {
  a->check(delta);
  auto sq = semisimple_quotient(a);
  const Algebra& s = *sq.algebra;
  BlockData blocks = wedderburn_blocks(s);
  Element bar = sq.projection(delta);
  std::vector<std::size_t> ranks;
  for (std::size_t i = 0; i < blocks.idempotents.size(); ++i) {
    std::size_t r = rank(s.mult_operator(s.multiply(bar, blocks.idempotents[i]), Side::Left));
    const std::size_t n = blocks.block_sizes[i];
    if (r % n != 0) throw VerificationFailure("block rank not divisible by the block size");
    ranks.push_back(r / n);
  }
  return ranks;
}

std::optional<Element> inverse_of(const Algebra& a, const Element& x) {
  a.require_associative_unital();
  a.check(x);
  auto y = solve(a.mult_operator(x, Side::Left), a.one().coords());
  if (!y) return std::nullopt;
  Element inv(*y);
  if (!(a.multiply(inv, x) == a.one())) return std::nullopt;
  return inv;
}

RankNormalForm rank_normal_form(const Matrix& x) {
  if (!x.is_square()) throw DimensionMismatch("rank normal form of a non-square matrix");
  const std::size_t n = x.rows();
  const FieldSpec& f = x.field();
  Matrix r = x, p = Matrix::identity(f, n);
  std::size_t row = 0;
  std::vector<std::size_t> pivots;
  auto swap_rows = [&](Matrix& m, std::size_t i, std::size_t j) {
    for (std::size_t c = 0; c < n; ++c) std::swap(m(i, c), m(j, c));
  };
  for (std::size_t col = 0; col < n && row < n; ++col) {
    std::size_t piv = n;
    for (std::size_t i = row; i < n; ++i)
      if (!r(i, col).is_zero()) {
        piv = i;
        break;
      }
    if (piv == n) continue;
    swap_rows(r, piv, row);
    swap_rows(p, piv, row);
    Scalar inv = r(row, col).inverse();
    for (std::size_t c = 0; c < n; ++c) {
      r(row, c) *= inv;
      p(row, c) *= inv;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == row || r(i, col).is_zero()) continue;
      Scalar factor = r(i, col);
      for (std::size_t c = 0; c < n; ++c) {
        r(i, c).sub_product(factor, r(row, c));
        p(i, c).sub_product(factor, p(row, c));
      }
    }
    pivots.push_back(col);
    ++row;
  }
  Matrix q(f, n, n);
  for (std::size_t k = 0; k < pivots.size(); ++k) q(pivots[k], k) = Scalar::one(f);
  auto ker = kernel_basis(r);
  for (std::size_t k = 0; k < ker.size(); ++k) q.set_col(pivots.size() + k, ker[k]);
  return {p, q, pivots.size()};
}

namespace {

struct LiftCoordinates {
  std::vector<Matrix> blocks;  // semisimple part, one n_b x n_b matrix per block
  Element semisimple, radical;
};

LiftCoordinates split_by_lift(const Algebra& a, const Element& x) {
  if (!a.lift()) throw MissingSplitting("operation needs a Wedderburn-Malcev lift");
  const WedderburnLift& L = *a.lift();
  std::vector<Vector> gens;
  for (const auto& block : L.units)
    for (const auto& u : block) gens.push_back(u.coords());
  for (const auto& r : L.radical) gens.push_back(r.coords());
  SpanSolver solver(a.field(), a.dim(), gens);
  auto c = solver.coordinates(x.coords());
  if (!c || solver.rank() != a.dim() || gens.size() != a.dim()) {
    throw VerificationFailure("Wedderburn lift does not give a basis of the algebra");
  }
  LiftCoordinates out{{}, a.zero(), a.zero()};
  std::size_t k = 0;
  for (std::size_t b = 0; b < L.block_sizes.size(); ++b) {
    const std::size_t n = L.block_sizes[b];
    Matrix m(a.field(), n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j, ++k) {
        m(i, j) = (*c)[k];
        out.semisimple += (*c)[k] * L.units[b][i * n + j];
      }
    out.blocks.push_back(std::move(m));
  }
  for (const auto& r : L.radical) out.radical += (*c)[k++] * r;
  return out;
}

Element from_blocks(const Algebra& a, const std::vector<Matrix>& blocks) {
  const WedderburnLift& L = *a.lift();
  Element e = a.zero();
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    const std::size_t n = L.block_sizes[b];
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (!blocks[b](i, j).is_zero()) e += blocks[b](i, j) * L.units[b][i * n + j];
  }
  return e;
}

Element must_invert(const Algebra& a, const Element& x, const char* what) {
  auto inv = inverse_of(a, x);
  if (!inv) throw VerificationFailure(std::string(what) + " is not invertible");
  return *inv;
}

}  // namespace

SuitableForm suitable_form(const Algebra& a, const Element& delta) {
  a.require_associative_unital();
  a.check(delta);
  LiftCoordinates parts = split_by_lift(a, delta);
  const WedderburnLift& L = *a.lift();
  std::vector<Matrix> p_blocks, q_blocks;
  SuitableForm out;
  Element s = a.zero();
  for (std::size_t b = 0; b < parts.blocks.size(); ++b) {
    RankNormalForm nf = rank_normal_form(parts.blocks[b]);
    p_blocks.push_back(nf.p);
    q_blocks.push_back(nf.q);
    std::vector<std::size_t> idx;
    for (std::size_t j = 0; j < nf.rank; ++j) {
      s += L.unit(b, j, j);
      idx.push_back(j + 1);
    }
    out.index_sets.push_back(std::move(idx));
  }
  // (i) h1 Delta h2 = s + r2
  Element h1 = from_blocks(a, p_blocks), h2 = from_blocks(a, q_blocks);
  Element x2 = a.multiply(a.multiply(h1, delta), h2);
  Element r2 = x2 - s;
  // (ii) x3 = x2 (1 + r2)^{-1} = s + r3
  Element w2 = must_invert(a, a.one() + r2, "1 + r2");
  Element one_minus_s = a.one() - s;
  Element r3 = a.multiply(a.multiply(one_minus_s, r2), w2);
  // (iii) (1 + r3)^{-1} x3 = s + r
  Element w3 = must_invert(a, a.one() + r3, "1 + r3");
  out.s = s;
  out.r = a.multiply(a.multiply(w3, r3), one_minus_s);
  out.u = a.multiply(w3, h1);
  out.v = a.multiply(h2, w2);

  if (!(a.multiply(s, s) == s) || !a.multiply(s, out.r).is_zero() || !a.multiply(out.r, s).is_zero() ||
      !(a.multiply(a.multiply(out.u, delta), out.v) == s + out.r)) {
    throw VerificationFailure("suitable form failed its identities");
  }
  return out;
}

RadicalComparison radical_compare(const Algebra& a, const Element& delta) {
  a.require_associative_unital();
  a.check(delta);
  Algebra b = augmented_homotope(a, delta);
  auto ra = jacobson_radical(a);
  auto rb = jacobson_radical(b);
  std::vector<Vector> embedded;
  for (const auto& r : ra) {
    Vector v{Scalar::zero(a.field())};
    v.insert(v.end(), r.coords().begin(), r.coords().end());
    embedded.push_back(std::move(v));
  }
  RadicalComparison out;
  out.dim_radical_a = ra.size();
  out.dim_radical_b = rb.size();
  out.contained = subspace_contains(a.field(), b.dim(), coords_of(rb), embedded);
  out.equal = out.contained && ra.size() == rb.size();
  out.delta_invertible = is_invertible(a, delta);
  return out;
}

std::vector<std::size_t> homotope_rep_dims(const AlgebraPtr& a, const Element& delta) {
  std::vector<std::size_t> dims{1};
  for (auto r : block_ranks(a, delta))
    if (r > 0) dims.push_back(r);
  std::sort(dims.rbegin(), dims.rend());
  return dims;
}

UnitFactorization unit_factor(const Algebra& a, const Element& u, FactorOrder order) {
  a.require_associative_unital();
  a.check(u);
  if (!is_invertible(a, u)) throw NotInvertible("unit_factor: element is not invertible");
  LiftCoordinates parts = split_by_lift(a, u);
  Element g = parts.semisimple;
  Element g_inv = must_invert(a, g, "semisimple part of a unit");
  Element unip = order == FactorOrder::SemisimpleFirst ? a.multiply(g_inv, u) : a.multiply(u, g_inv);
  Element n = unip - a.one();
  if (!split_by_lift(a, n).semisimple.is_zero()) throw VerificationFailure("unipotent factor leaves 1 + R(A)");
  Element back = order == FactorOrder::SemisimpleFirst ? a.multiply(g, unip) : a.multiply(unip, g);
  if (!(back == u)) throw VerificationFailure("unit factorization does not reproduce the input");
  return {g, unip, order};
}

}  // namespace homotope
