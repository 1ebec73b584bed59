#pragma once

#include <optional>
#include <string>
#include <vector>

#include "homotope/matrix.hpp"
#include "homotope/scalar.hpp"

namespace homotope {

/// Univariate polynomial, coefficients from degree 0 upward, no trailing zeros.
class Polynomial {
 public:
  explicit Polynomial(const FieldSpec& field) : field_(field) {}
  Polynomial(const FieldSpec& field, Vector coeffs);
  /// x - root
  static Polynomial linear(const Scalar& root);
  static Polynomial monomial(const FieldSpec& field, std::size_t degree);

  const FieldSpec& field() const { return field_; }
  const Vector& coeffs() const { return c_; }
  bool is_zero() const { return c_.empty(); }
  /// -1 for the zero polynomial.
  long degree() const { return static_cast<long>(c_.size()) - 1; }
  const Scalar& leading() const { return c_.back(); }
  Scalar coeff(std::size_t i) const { return i < c_.size() ? c_[i] : Scalar::zero(field_); }

  Scalar operator()(const Scalar& x) const;
  Polynomial monic() const;

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.field_ == b.field_ && a.c_ == b.c_; }

  std::string to_string() const;

 private:
  void trim();
  FieldSpec field_;
  Vector c_;
};

struct PolyDivision {
  Polynomial quotient;
  Polynomial remainder;
};

PolyDivision divide(const Polynomial& a, const Polynomial& b);
/// Monic gcd.
Polynomial gcd(Polynomial a, Polynomial b);

/// All roots with multiplicity when p splits into linear factors over its
/// field, nullopt otherwise. Over Q this is a rational-root search; over F_p
/// it isolates gcd(p, x^p - x) and splits it by random (x+a)^((p-1)/2) - 1
/// gcds with a fixed seed.
std::optional<std::vector<Scalar>> split_roots(const Polynomial& p);

/// Distinct roots in the base field (possibly not all of p's roots).
std::vector<Scalar> field_roots(const Polynomial& p);

/// Square root in the base field, if one exists.
std::optional<Scalar> square_root(const Scalar& x);

Scalar determinant(const Matrix& m);
/// det(xI - M), by evaluation at 0..n and interpolation. Needs |k| > n.
Polynomial characteristic_polynomial(const Matrix& m);

}  // namespace homotope
