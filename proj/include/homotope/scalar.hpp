#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

namespace homotope {

/// The base field: Q, or F_p for a prime p < 2^62.
class FieldSpec {
 public:
  FieldSpec() = default;

  static FieldSpec rationals() { return FieldSpec{}; }
  /// Throws Error when p is not prime or too large.
  static FieldSpec prime(std::uint64_t p);
  /// Accepts "rationals", "Q", "fp:<p>".
  static FieldSpec parse(std::string_view text);

  bool is_rational() const { return p_ == 0; }
  bool is_prime_field() const { return p_ != 0; }
  std::uint64_t characteristic() const { return p_; }
  std::string to_string() const;

  friend bool operator==(const FieldSpec&, const FieldSpec&) = default;

 private:
  friend class Scalar;
  std::uint64_t p_ = 0;
};

/// Exact field element. Rationals are kept canonical (lowest terms, positive
/// denominator) by GMP; residues live in [0, p).
class Scalar {
 public:
  /// Rational zero.
  Scalar() = default;
  Scalar(const FieldSpec& field, long value);
  Scalar(const FieldSpec& field, const mpz_class& num, const mpz_class& den);

  static Scalar zero(const FieldSpec& field) { return Scalar(field, 0); }
  static Scalar one(const FieldSpec& field) { return Scalar(field, 1); }
  static Scalar from_rational(const mpq_class& q);
  /// Decimal literal "n" or "n/d"; for F_p the fraction is reduced mod p.
  static Scalar parse(const FieldSpec& field, std::string_view text);

  FieldSpec field() const;
  bool is_zero() const { return p_ == 0 ? sgn(q_) == 0 : r_ == 0; }
  bool is_one() const;

  const mpq_class& rational() const { return q_; }
  std::uint64_t residue() const { return r_; }

  Scalar inverse() const;
  Scalar operator-() const;

  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);
  Scalar& operator/=(const Scalar& o);

  /// this += a * b, the inner kernel of elimination.
  void add_product(const Scalar& a, const Scalar& b);
  /// this -= a * b
  void sub_product(const Scalar& a, const Scalar& b);

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
  friend bool operator==(const Scalar& a, const Scalar& b);

  /// "num/den" (or "num") for rationals, the canonical residue for F_p.
  std::string to_string() const;

 private:
  void check_same(const Scalar& o) const;

  mpq_class q_;
  std::uint64_t r_ = 0;
  std::uint64_t p_ = 0;
};

std::ostream& operator<<(std::ostream& os, const Scalar& s);

using Vector = std::vector<Scalar>;

Vector zero_vector(const FieldSpec& field, std::size_t n);
Vector unit_vector(const FieldSpec& field, std::size_t n, std::size_t i);
bool is_zero(const Vector& v);
/// y += a * x
void axpy(Vector& y, const Scalar& a, const Vector& x);
Vector scaled(const Scalar& a, Vector x);
Vector operator+(Vector a, const Vector& b);
Vector operator-(Vector a, const Vector& b);

namespace detail {
std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p);
std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t p);
}  // namespace detail

}  // namespace homotope
