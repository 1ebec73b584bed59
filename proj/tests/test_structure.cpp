#include <algorithm>
#include <random>

#include "doctest.h"
#include "homotope/errors.hpp"
#include "homotope/linalg.hpp"
#include "homotope/structure.hpp"

using namespace homotope;

namespace {
const FieldSpec Q = FieldSpec::rationals();

Element lab(const Algebra& a, const char* name) { return a.basis(*a.index_of(name)); }

Algebra truncated(std::size_t n) {
  Vector c = zero_vector(Q, n + 1);
  c[n] = Scalar::one(Q);
  return polynomial_quotient(Polynomial(Q, c));
}

std::vector<std::size_t> sorted(std::vector<std::size_t> v) {
  std::sort(v.begin(), v.end());
  return v;
}

const TestProfile kProfiles[] = {TestProfile::SplitSemisimple, TestProfile::SemisimplePlusNilpotent,
                                 TestProfile::TriangularLike};
}  // namespace

TEST_CASE("jacobson radical examples") {
  CHECK(jacobson_radical(matrix_algebra(2, Q)).empty());
  Algebra t2 = upper_triangular(2, Q);
  auto r = jacobson_radical(t2);
  REQUIRE(r.size() == 1);
  CHECK(r[0] == lab(t2, "e12"));
  Algebra c = truncated(3);
  CHECK(same_subspace(Q, 3, {jacobson_radical(c)[0].coords(), jacobson_radical(c)[1].coords()},
                      {lab(c, "x").coords(), lab(c, "x^2").coords()}));
  CHECK_THROWS_AS(jacobson_radical(matrix_algebra(2, FieldSpec::prime(3))), UnsupportedCharacteristic);
  CHECK(jacobson_radical(matrix_algebra(2, FieldSpec::prime(5))).empty());
  // zero multiplication: everything is radical (non-unital path)
  CHECK(jacobson_radical(Algebra(Q, 2, {})).size() == 2);
}

TEST_CASE("semisimple quotient examples") {
  auto t2 = semisimple_quotient(share(upper_triangular(2, Q)));
  CHECK(t2.algebra->dim() == 2);
  CHECK(t2.algebra->is_commutative());
  CHECK(semisimple_quotient(share(matrix_algebra(2, Q))).algebra->dim() == 4);
  CHECK(semisimple_quotient(share(truncated(2))).algebra->dim() == 1);
}

TEST_CASE("wedderburn blocks examples") {
  Algebra k = matrix_algebra(1, Q);
  BlockData b = wedderburn_blocks(direct_sum(matrix_algebra(2, Q), k));
  CHECK(sorted(b.block_sizes) == std::vector<std::size_t>{1, 2});
  BlockData kkk = wedderburn_blocks(direct_sum(direct_sum(k, k), k));
  CHECK(kkk.block_sizes == std::vector<std::size_t>{1, 1, 1});
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) {
      Algebra s = direct_sum(direct_sum(k, k), k);
      Element p = s.multiply(kkk.idempotents[i], kkk.idempotents[j]);
      CHECK(p == (i == j ? kkk.idempotents[i] : s.zero()));
    }
  Algebra sqrt2 = polynomial_quotient(Polynomial(Q, {Scalar(Q, -2), Scalar(Q, 0), Scalar(Q, 1)}));
  CHECK_THROWS_AS(wedderburn_blocks(sqrt2), NotSplit);
  // x^2 - 2 splits over F_7 (3^2 = 2)
  FieldSpec f7 = FieldSpec::prime(7);
  Algebra split7 = polynomial_quotient(Polynomial(f7, {Scalar(f7, -2), Scalar(f7, 0), Scalar(f7, 1)}));
  CHECK(wedderburn_blocks(split7).block_sizes == std::vector<std::size_t>{1, 1});
}

TEST_CASE("block ranks examples") {
  AlgebraPtr m3 = share(matrix_algebra(3, Q));
  Element rank2 = lab(*m3, "e11") + lab(*m3, "e22") + lab(*m3, "e12");
  CHECK(block_ranks(m3, rank2) == std::vector<std::size_t>{2});
  AlgebraPtr m22 = share(direct_sum(matrix_algebra(2, Q), matrix_algebra(2, Q)));
  CHECK(sorted(block_ranks(m22, m22->basis(0))) == std::vector<std::size_t>{0, 1});
  CHECK(sorted(block_ranks(m22, m22->one())) == std::vector<std::size_t>{2, 2});
  CHECK(homotope_rep_dims(m3, rank2) == std::vector<std::size_t>{2, 1});
  CHECK(homotope_rep_dims(m22, m22->basis(0)) == std::vector<std::size_t>{1, 1});
  CHECK(homotope_rep_dims(m22, m22->one()) == std::vector<std::size_t>{2, 2, 1});
}

TEST_CASE("suitable form examples") {
  Algebra t2 = upper_triangular(2, Q);
  SuitableForm f = suitable_form(t2, lab(t2, "e11"));
  CHECK(f.s == lab(t2, "e11"));
  CHECK(f.r.is_zero());
  CHECK(f.u == t2.one());
  CHECK(f.v == t2.one());
  f = suitable_form(t2, lab(t2, "e11") + lab(t2, "e12"));
  CHECK(f.s == lab(t2, "e11"));
  CHECK(f.r.is_zero());
  CHECK(f.v == t2.one() - lab(t2, "e12"));
  f = suitable_form(t2, lab(t2, "e12"));
  CHECK(f.s.is_zero());
  CHECK(f.r == lab(t2, "e12"));
  CHECK_THROWS_AS(suitable_form(truncated(2), truncated(2).one()), MissingSplitting);
}

TEST_CASE("invertibility examples") {
  Algebra m2 = matrix_algebra(2, Q);
  CHECK(is_invertible(m2, m2.one()));
  CHECK_FALSE(is_invertible(m2, lab(m2, "e11")));
  Algebra t2 = upper_triangular(2, Q);
  auto inv = inverse_of(t2, t2.one() + lab(t2, "e12"));
  REQUIRE(inv);
  CHECK(*inv == t2.one() - lab(t2, "e12"));
  CHECK_THROWS_AS(inverse_of(Algebra(Q, 1, {}), Element(zero_vector(Q, 1))), NotUnital);
}

TEST_CASE("radical comparison examples") {
  Algebra t2 = upper_triangular(2, Q);
  RadicalComparison c = radical_compare(t2, t2.one() + lab(t2, "e12"));
  CHECK(c.contained);
  CHECK(c.equal);
  Algebra m2 = matrix_algebra(2, Q);
  c = radical_compare(m2, lab(m2, "e11"));
  CHECK(c.dim_radical_a == 0);
  CHECK(c.dim_radical_b == 3);
  Algebra d = truncated(2);
  c = radical_compare(d, lab(d, "x"));
  CHECK(c.contained);
  CHECK_FALSE(c.equal);
  CHECK(c.dim_radical_a == 1);
  CHECK(c.dim_radical_b == 2);
}

TEST_CASE("unit factorization examples") {
  Algebra t2 = upper_triangular(2, Q);
  UnitFactorization f = unit_factor(t2, t2.one());
  CHECK(f.semisimple_part == t2.one());
  CHECK(f.unipotent_part == t2.one());
  f = unit_factor(t2, t2.one() + lab(t2, "e12"));
  CHECK(f.semisimple_part == t2.one());
  CHECK(f.unipotent_part == t2.one() + lab(t2, "e12"));
  Element u = lab(t2, "e11") + Scalar(Q, 2) * lab(t2, "e22") + lab(t2, "e12");
  Scalar half = Scalar::parse(Q, "1/2");
  f = unit_factor(t2, u, FactorOrder::UnipotentFirst);
  CHECK(f.semisimple_part == lab(t2, "e11") + Scalar(Q, 2) * lab(t2, "e22"));
  CHECK(f.unipotent_part == t2.one() + half * lab(t2, "e12"));
  f = unit_factor(t2, u, FactorOrder::SemisimpleFirst);
  CHECK(f.unipotent_part == t2.one() + lab(t2, "e12"));
  CHECK_THROWS_AS(unit_factor(t2, lab(t2, "e11")), NotInvertible);
}

TEST_CASE("rank normal form") {
  std::mt19937_64 rng(4);
  for (int t = 0; t < 30; ++t) {
    std::size_t n = 1 + rng() % 4;
    Matrix x(Q, n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (rng() % 2) x(i, j) = Scalar(Q, static_cast<long>(rng() % 5) - 2);
    RankNormalForm nf = rank_normal_form(x);
    Matrix d(Q, n, n);
    for (std::size_t i = 0; i < nf.rank; ++i) d(i, i) = Scalar::one(Q);
    CHECK(nf.p * x * nf.q == d);
    CHECK(nf.rank == rank(x));
    CHECK(invert(nf.p));
    CHECK(invert(nf.q));
  }
}

TEST_CASE("structure properties on random instances") {
  std::mt19937_64 rng(2026);
  for (auto profile : kProfiles) {
    for (std::uint64_t seed = 0; seed < 12; ++seed) {
      AlgebraPtr a = share(random_test_algebra(seed, profile));
      CAPTURE(seed);
      CAPTURE(to_string(profile));
      auto rad = jacobson_radical(*a);
      CHECK(rad.size() == a->lift()->radical.size());
      CHECK(is_two_sided_ideal(*a, rad));
      auto sq = semisimple_quotient(a);
      CHECK(jacobson_radical(*sq.algebra).empty());
      BlockData blocks = wedderburn_blocks(*sq.algebra);
      CHECK(sorted(blocks.block_sizes) == sorted(a->lift()->block_sizes));

      Element delta = random_delta(*a, rng);
      SuitableForm f = suitable_form(*a, delta);
      CHECK(a->multiply(f.s, f.s) == f.s);
      CHECK(a->multiply(f.s, f.r).is_zero());
      CHECK(a->multiply(f.r, f.s).is_zero());
      CHECK(is_invertible(*a, f.u));
      CHECK(is_invertible(*a, f.v));
      CHECK(a->multiply(a->multiply(f.u, delta), f.v) == f.s + f.r);

      auto ranks = block_ranks(a, delta);
      bool all_positive = std::all_of(ranks.begin(), ranks.end(), [](std::size_t r) { return r > 0; });
      CHECK(is_well_tempered_criterion(*a, delta) == all_positive);

      // double-coset invariance
      Element c = random_element(*a, rng), d = random_element(*a, rng);
      if (is_invertible(*a, c) && is_invertible(*a, d)) {
        Element moved = a->multiply(a->multiply(c, delta), d);
        CHECK(is_well_tempered_criterion(*a, moved) == is_well_tempered_criterion(*a, delta));
        CHECK(block_ranks(a, moved) == ranks);
      }

      // dim B - dim R(B) = 1 + sum r_i^2 over I(Delta)
      RadicalComparison rc = radical_compare(*a, delta);
      std::size_t sum = 1;
      for (auto r : ranks) sum += r * r;
      CHECK(a->dim() + 1 - rc.dim_radical_b == sum);
      CHECK(rc.contained);
      CHECK(rc.equal == rc.delta_invertible);

      Element u = random_element(*a, rng);
      if (is_invertible(*a, u)) {
        for (auto order : {FactorOrder::SemisimpleFirst, FactorOrder::UnipotentFirst}) {
          UnitFactorization uf = unit_factor(*a, u, order);
          Element back = order == FactorOrder::SemisimpleFirst ? a->multiply(uf.semisimple_part, uf.unipotent_part)
                                                               : a->multiply(uf.unipotent_part, uf.semisimple_part);
          CHECK(back == u);
        }
      }
    }
  }
}

TEST_CASE("minimal polynomial") {
  Algebra m2 = matrix_algebra(2, Q);
  Polynomial mp = minimal_polynomial(m2, lab(m2, "e11"));
  CHECK(mp == Polynomial(Q, {Scalar(Q, 0), Scalar(Q, -1), Scalar(Q, 1)}));
  CHECK(minimal_polynomial(m2, m2.one()).degree() == 1);
}
