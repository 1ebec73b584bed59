#include <random>

#include "doctest.h"
#include "homotope/errors.hpp"
#include "homotope/linalg.hpp"
#include "homotope/polynomial.hpp"

using namespace homotope;

namespace {
const FieldSpec Q = FieldSpec::rationals();

Vector vec(const FieldSpec& f, std::initializer_list<long> xs) {
  Vector v;
  for (long x : xs) v.emplace_back(f, x);
  return v;
}

Matrix random_matrix(const FieldSpec& f, std::mt19937_64& rng, std::size_t r, std::size_t c, int sparsity) {
  Matrix m(f, r, c);
  std::uniform_int_distribution<long> val(-4, 4);
  std::uniform_int_distribution<int> keep(0, 9);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j)
      if (keep(rng) >= sparsity) m(i, j) = Scalar(f, val(rng));
  return m;
}
}  // namespace

TEST_CASE("scalar basics") {
  Scalar a = Scalar::parse(Q, "-7/2");
  CHECK(a.to_string() == "-7/2");
  CHECK(Scalar::parse(Q, "6/4").to_string() == "3/2");
  CHECK(Scalar::parse(Q, "4/-2").to_string() == "-2");
  FieldSpec f7 = FieldSpec::prime(7);
  CHECK(Scalar(f7, -1).residue() == 6);
  CHECK(Scalar::parse(f7, "1/2").residue() == 4);
  CHECK((Scalar(f7, 3) * Scalar(f7, 3).inverse()).is_one());
  CHECK_THROWS_AS(FieldSpec::prime(8), Error);
  CHECK_THROWS_AS(Scalar(Q, 1) + Scalar(f7, 1), FieldMismatch);
  CHECK_THROWS_AS(Scalar::zero(Q).inverse(), NotInvertible);
  CHECK(FieldSpec::parse("fp:101") == FieldSpec::prime(101));
  CHECK(FieldSpec::parse("rationals").is_rational());
}

TEST_CASE("rank examples") {
  CHECK(rank(Matrix::identity(Q, 3)) == 3);
  CHECK(rank(Matrix(Q, 2, 2)) == 0);
  CHECK(rank(Matrix::from_rows(Q, {{1, 2}, {2, 4}})) == 1);
}

TEST_CASE("solve examples") {
  auto x = solve(Matrix::identity(Q, 2), vec(Q, {3, 5}));
  REQUIRE(x);
  CHECK(*x == vec(Q, {3, 5}));
  x = solve(Matrix::from_rows(Q, {{1, 1}}), vec(Q, {2}));
  REQUIRE(x);
  CHECK(*x == vec(Q, {2, 0}));
  CHECK_FALSE(solve(Matrix::from_rows(Q, {{1}, {1}}), vec(Q, {1, 2})));
  CHECK_THROWS_AS(solve(Matrix::identity(Q, 2), vec(Q, {1})), DimensionMismatch);
}

TEST_CASE("kernel examples") {
  CHECK(kernel_basis(Matrix::identity(Q, 3)).empty());
  auto k = kernel_basis(Matrix(Q, 2, 2));
  REQUIRE(k.size() == 2);
  CHECK(k[0] == vec(Q, {1, 0}));
  CHECK(k[1] == vec(Q, {0, 1}));
  k = kernel_basis(Matrix::from_rows(Q, {{1, 2}, {2, 4}}));
  REQUIRE(k.size() == 1);
  CHECK(k[0] == vec(Q, {-2, 1}));
}

TEST_CASE("invert examples") {
  CHECK(*invert(Matrix::identity(Q, 4)) == Matrix::identity(Q, 4));
  Matrix swap = Matrix::from_rows(Q, {{0, 1}, {1, 0}});
  CHECK(*invert(swap) == swap);
  CHECK_FALSE(invert(Matrix::from_rows(Q, {{1, 1}, {1, 1}})));
  CHECK_THROWS_AS(invert(Matrix(Q, 2, 3)), DimensionMismatch);
}

TEST_CASE("linear algebra properties on random matrices") {
  std::mt19937_64 rng(20261016);
  for (const FieldSpec& f : {Q, FieldSpec::prime(101), FieldSpec::prime(2)}) {
    for (int t = 0; t < 60; ++t) {
      std::size_t r = 1 + rng() % 6, c = 1 + rng() % 6;
      Matrix m = random_matrix(f, rng, r, c, static_cast<int>(rng() % 8));
      CHECK(rank(m) == rank(m.transpose()));
      auto ker = kernel_basis(m);
      CHECK(ker.size() == c - rank(m));
      CHECK(span_dim(f, c, ker) == ker.size());
      for (const auto& v : ker) CHECK(is_zero(m * v));
      Vector b = m * random_matrix(f, rng, c, 1, 0).col(0);
      auto x = solve(m, b);
      REQUIRE(x);
      CHECK(m * *x == b);
      if (r == c) {
        auto inv = invert(m);
        CHECK(inv.has_value() == (rank(m) == r));
        if (inv) CHECK(m * *inv == Matrix::identity(f, r));
      }
    }
  }
}

TEST_CASE("span solver and quotient") {
  std::vector<Vector> gens{vec(Q, {1, 1, 0}), vec(Q, {0, 1, 1}), vec(Q, {1, 2, 1})};
  SpanSolver s(Q, 3, gens);
  CHECK(s.rank() == 2);
  auto c = s.coordinates(vec(Q, {2, 3, 1}));
  REQUIRE(c);
  Vector back = zero_vector(Q, 3);
  for (std::size_t i = 0; i < 3; ++i) axpy(back, (*c)[i], gens[i]);
  CHECK(back == vec(Q, {2, 3, 1}));
  CHECK_FALSE(s.contains(vec(Q, {1, 0, 0})));

  QuotientSpace qs(Q, 3, {vec(Q, {1, 1, 0})});
  CHECK(qs.dim() == 2);
  CHECK(is_zero(qs.project(vec(Q, {2, 2, 0}))));
  Vector w = vec(Q, {0, 5, 7});
  CHECK(qs.project(qs.lift(qs.project(w))) == qs.project(w));
}

TEST_CASE("intersection of subspaces") {
  auto i = intersect(Q, 3, {vec(Q, {1, 0, 0}), vec(Q, {0, 1, 0})}, {vec(Q, {1, 1, 1}), vec(Q, {0, 0, 1})});
  REQUIRE(i.size() == 1);
  CHECK(same_subspace(Q, 3, i, {vec(Q, {1, 1, 0})}));
}

TEST_CASE("polynomials") {
  Polynomial p(Q, vec(Q, {-2, 0, 1}));
  CHECK_FALSE(split_roots(p));
  CHECK(field_roots(p).empty());
  Polynomial q = Polynomial::linear(Scalar::parse(Q, "1/2")) * Polynomial::linear(Scalar(Q, -3)) *
                 Polynomial::linear(Scalar(Q, -3));
  auto roots = split_roots(q);
  REQUIRE(roots);
  CHECK(roots->size() == 3);
  CHECK(field_roots(q).size() == 2);
  auto d = divide(q, Polynomial::linear(Scalar(Q, -3)));
  CHECK(d.remainder.is_zero());
  CHECK(gcd(q, Polynomial::linear(Scalar(Q, -3)) * Polynomial::linear(Scalar(Q, 5))) ==
        Polynomial::linear(Scalar(Q, -3)));

  FieldSpec big = FieldSpec::prime(1000003);
  Polynomial r = Polynomial::linear(Scalar(big, 17)) * Polynomial::linear(Scalar(big, 999)) *
                 Polynomial(big, vec(big, {2, 0, 1}));
  auto rr = field_roots(r);
  CHECK(rr.size() == 2 + (square_root(Scalar(big, -2)) ? 2u : 0u));

  CHECK(*square_root(Scalar::parse(Q, "9/4")) == Scalar::parse(Q, "3/2"));
  CHECK_FALSE(square_root(Scalar(Q, 2)));
  FieldSpec f101 = FieldSpec::prime(101);
  for (long x = 1; x < 101; ++x) {
    auto s = square_root(Scalar(f101, x) * Scalar(f101, x));
    REQUIRE(s);
    CHECK(*s * *s == Scalar(f101, x) * Scalar(f101, x));
  }
}

TEST_CASE("determinant and characteristic polynomial") {
  Matrix m = Matrix::from_rows(Q, {{2, 1}, {1, 2}});
  CHECK(determinant(m) == Scalar(Q, 3));
  Polynomial cp = characteristic_polynomial(m);
  CHECK(cp == Polynomial(Q, vec(Q, {3, -4, 1})));
  auto roots = split_roots(cp);
  REQUIRE(roots);
  CHECK(roots->size() == 2);
}
