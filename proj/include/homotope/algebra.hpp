#pragma once

#include <atomic>
#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "homotope/matrix.hpp"
#include "homotope/polynomial.hpp"
#include "homotope/scalar.hpp"

namespace homotope {

enum class Side { Left, Right };

/// Coordinate vector in an algebra's basis. The owning algebra is implied by
/// context; every Algebra method checks length and field of what it receives.
class Element {
 public:
  Element() = default;
  explicit Element(Vector coords) : c_(std::move(coords)) {}

  const Vector& coords() const { return c_; }
  Vector& coords() { return c_; }
  std::size_t size() const { return c_.size(); }
  const Scalar& operator[](std::size_t i) const { return c_[i]; }
  Scalar& operator[](std::size_t i) { return c_[i]; }
  bool is_zero() const { return homotope::is_zero(c_); }

  Element& operator+=(const Element& o);
  Element& operator-=(const Element& o);
  friend Element operator+(Element a, const Element& b) { return a += b; }
  friend Element operator-(Element a, const Element& b) { return a -= b; }
  friend Element operator-(Element a);
  friend Element operator*(const Scalar& s, Element a);
  friend bool operator==(const Element& a, const Element& b) { return a.c_ == b.c_; }

 private:
  Vector c_;
};

/// c^l_{ij}: e_i e_j contributes c * e_l.
struct StructureConstant {
  std::size_t i, j, l;
  Scalar c;
};

/// Wedderburn-Malcev data carried by constructed algebras: a semisimple
/// subalgebra S = (+) M_{n_b}(k) given by matrix units, and a basis of R(A)
/// with A = S (+) R(A).
struct WedderburnLift {
  std::vector<std::size_t> block_sizes;
  /// units[b][i * n_b + j] is the matrix unit e_{ij} of block b.
  std::vector<std::vector<Element>> units;
  std::vector<Element> radical;

  const Element& unit(std::size_t b, std::size_t i, std::size_t j) const { return units[b][i * block_sizes[b] + j]; }
  /// Identity of block b, the sum of its diagonal units.
  Element block_identity(std::size_t b) const;
};

/// Finite-dimensional algebra given by sparse structure constants. Not
/// assumed associative or unital; callers that need either check for it.
class Algebra {
 public:
  Algebra(const FieldSpec& field, std::size_t dim, const std::vector<StructureConstant>& sc,
          std::vector<std::string> labels = {}, std::optional<Element> unit = std::nullopt);
  Algebra(const Algebra& o);
  Algebra& operator=(const Algebra& o);

  const FieldSpec& field() const { return field_; }
  std::size_t dim() const { return dim_; }
  const std::vector<std::string>& labels() const { return labels_; }
  /// Index of a basis label, or nullopt.
  std::optional<std::size_t> index_of(const std::string& label) const;

  /// Sparse row of the table: e_i e_j = sum c * e_l.
  const std::vector<std::pair<std::size_t, Scalar>>& product(std::size_t i, std::size_t j) const {
    return table_[i * dim_ + j];
  }
  std::vector<StructureConstant> structure_constants() const;

  Element zero() const { return Element(zero_vector(field_, dim_)); }
  Element basis(std::size_t i) const { return Element(unit_vector(field_, dim_, i)); }
  Element element(Vector coords) const;
  Element element(std::initializer_list<long> coords) const;
  const std::optional<Element>& unit() const { return unit_; }
  /// The unit; throws NotUnital when absent.
  const Element& one() const;

  /// Throws DimensionMismatch/FieldMismatch when x does not live in this algebra.
  void check(const Element& x) const;
  Element multiply(const Element& x, const Element& y) const;
  /// Matrix of x -> a x (Left) or x -> x a (Right).
  Matrix mult_operator(const Element& a, Side side) const;

  bool is_associative() const;
  bool is_commutative() const;
  /// Throws NotAssociative / NotUnital.
  void require_associative() const;
  void require_associative_unital() const;

  const std::optional<WedderburnLift>& lift() const { return lift_; }
  void set_lift(WedderburnLift lift);

  /// Coordinate 0 is an adjoined unit and coordinates 1..dim-1 span the
  /// augmentation ideal (adjoin_unit / augmented_homotope outputs).
  bool is_augmented() const { return augmented_; }
  void mark_augmented() { augmented_ = true; }

  std::string format(const Element& x) const;

 private:
  FieldSpec field_;
  std::size_t dim_;
  std::vector<std::string> labels_;
  std::vector<std::vector<std::pair<std::size_t, Scalar>>> table_;
  std::optional<Element> unit_;
  std::optional<WedderburnLift> lift_;
  bool augmented_ = false;
  // -1 unknown, 0 false, 1 true; written once.
  mutable std::atomic<int> assoc_{-1};
};

using AlgebraPtr = std::shared_ptr<const Algebra>;
inline AlgebraPtr share(Algebra a) { return std::make_shared<const Algebra>(std::move(a)); }

/// Linear map between algebras, verified multiplicative on construction.
class AlgebraMorphism {
 public:
  /// Throws VerificationFailure unless f(e_i e_j) = f(e_i) f(e_j) for all
  /// basis pairs (and f(1) = 1 when unital is requested).
  AlgebraMorphism(AlgebraPtr source, AlgebraPtr target, Matrix matrix, bool unital);
  static std::optional<AlgebraMorphism> try_make(AlgebraPtr source, AlgebraPtr target, Matrix matrix, bool unital);

  const AlgebraPtr& source() const { return source_; }
  const AlgebraPtr& target() const { return target_; }
  const Matrix& matrix() const { return m_; }
  bool unital() const { return unital_; }
  Element operator()(const Element& x) const;

 private:
  AlgebraMorphism() = default;
  static bool verify(const Algebra& s, const Algebra& t, const Matrix& m, bool unital);
  AlgebraPtr source_, target_;
  Matrix m_;
  bool unital_ = false;
};

// Builders.

/// M_n(k) on matrix units e_{ij} (index i*n + j), labels "e11", "e12", ...
Algebra matrix_algebra(std::size_t n, const FieldSpec& field);
/// Upper triangular n x n matrices, basis e_{ij} for i <= j in row order.
Algebra upper_triangular(std::size_t n, const FieldSpec& field);
/// k[x]/(f) on 1, x, ..., x^{deg f - 1}; f need not be monic.
Algebra polynomial_quotient(const Polynomial& f);
Algebra direct_sum(const Algebra& a, const Algebra& b);
Algebra opposite(const Algebra& a);
/// A (x)_k B on e_i (x) f_j (index i * dim B + j), labels "a.b".
Algebra tensor_product(const Algebra& a, const Algebra& b);
/// A with an external unit adjoined: basis {1} u basis(A).
Algebra adjoin_unit(const Algebra& a);

/// m(x, a y) (Left) or m(x a, y) (Right); no unit recorded.
Algebra homotope_algebra(const Algebra& a, const Element& x, Side side);
/// B = A_Delta with a unit adjoined. Requires A associative and unital.
Algebra augmented_homotope(const Algebra& a, const Element& delta);

std::optional<Element> find_unit(const Algebra& a);
/// Same field, dimension and structure constants.
bool same_algebra(const Algebra& a, const Algebra& b);

/// Smallest two-sided ideal containing the generators (no unit assumed).
std::vector<Element> ideal_closure(const Algebra& a, const std::vector<Element>& generators);
bool is_two_sided_ideal(const Algebra& a, const std::vector<Element>& basis);
/// Basis of A x A = span{e_i x e_j}. Requires A associative and unital.
std::vector<Element> principal_two_sided_ideal(const Algebra& a, const Element& x);
/// A Delta A = A.
bool is_well_tempered_criterion(const Algebra& a, const Element& delta);

struct QuotientResult {
  AlgebraPtr algebra;
  AlgebraMorphism projection;
};
/// A / I on the complement basis of I's echelon form. Throws NotAnIdeal.
QuotientResult quotient(const AlgebraPtr& a, const std::vector<Element>& ideal);

struct PsiMorphisms {
  AlgebraPtr b;
  AlgebraMorphism psi1;  ///< lambda + a -> lambda + a Delta
  AlgebraMorphism psi2;  ///< lambda + a -> lambda + Delta a
};
PsiMorphisms psi_morphisms(const AlgebraPtr& a, const Element& delta);

/// Basis of the image of a linear map given by its matrix.
std::vector<Element> image_basis(const Matrix& m);

/// The homotope facts for an ideal I and an element x: I stays an ideal of
/// both homotopes, A -> A/I is a morphism of homotopes, and the quotient of
/// the homotope has the structure constants of the homotope of the quotient.
struct HomotopeFunctoriality {
  bool ideal_left = false, ideal_right = false;
  bool projection_left = false, projection_right = false;
  bool quotient_left = false, quotient_right = false;
  bool all() const {
    return ideal_left && ideal_right && projection_left && projection_right && quotient_left && quotient_right;
  }
};
HomotopeFunctoriality homotope_functoriality(const AlgebraPtr& a, const std::vector<Element>& ideal, const Element& x);

enum class TestProfile { SplitSemisimple, SemisimplePlusNilpotent, TriangularLike };
const char* to_string(TestProfile p);

/// Deterministic associative unital algebra of dimension <= 8 carrying a
/// Wedderburn lift. A seeded change of basis hides the block shape for
/// roughly half the seeds.
Algebra random_test_algebra(std::uint64_t seed, TestProfile profile, const FieldSpec& field = FieldSpec::rationals());

/// Deterministic commutative unital algebra of dimension <= 6: direct sums
/// of k[x]/(f) with f split, or k[x, y]/(x^a, y^b).
Algebra random_commutative_algebra(std::uint64_t seed, const FieldSpec& field = FieldSpec::rationals());

/// Uniform-ish random element with integer coordinates in [-range, range]
/// (uniform residues when range is 0 over F_p).
Element random_element(const Algebra& a, std::mt19937_64& rng, long range = 3);
/// Random Delta for a lifted algebra, mixing generic elements, elements
/// missing whole blocks, radical elements and low-rank block elements so
/// that both outcomes of the well-tempered test occur often.
Element random_delta(const Algebra& a, std::mt19937_64& rng);

/// Parses "0,1,0,0", "1/2,0,..." or a basis label.
Element parse_element(const Algebra& a, const std::string& text);

}  // namespace homotope
