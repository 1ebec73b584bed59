#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "homotope/algebra.hpp"

namespace homotope {

/// A multiplication tensor is an Algebra with no associativity or unit
/// expectations.
using MultiplicationTensor = Algebra;

struct IsotopyTriple {
  Matrix g1, g2, g3;
  static IsotopyTriple identity(const FieldSpec& field, std::size_t d);
};
/// (t o s).g_k = t.g_k s.g_k, so apply(apply(m, s), t) = apply(m, t o s).
IsotopyTriple compose(const IsotopyTriple& t, const IsotopyTriple& s);

/// Uniform residues over F_p, integers in [-9, 9] over Q.
MultiplicationTensor random_tensor(std::size_t d, const FieldSpec& field, std::uint64_t seed);

/// m2(x, y) = g1 m1(g2^{-1} x, g3^{-1} y). Throws NotInvertible.
MultiplicationTensor apply_isotopy(const MultiplicationTensor& m, const IsotopyTriple& t);

/// Bruck's classes by which multiplication operators are invertible.
enum class BruckClass {
  BothSides = 1,  ///< some l_v and some r_w invertible
  LeftOnly = 2,   ///< some l_v invertible, no invertible r_w found
  RightOnly = 3,  ///< some r_w invertible, no invertible l_v found
  Neither = 4,
};
const char* to_string(BruckClass c);

struct InvertibilityReport {
  BruckClass cls;
  std::optional<Element> left_witness;   ///< v with l_v invertible
  std::optional<Element> right_witness;  ///< w with r_w invertible
  /// Elements tried: basis vectors, the unit if any, then random samples.
  /// A missing witness only means none was found among them.
  std::size_t tried;
};
InvertibilityReport invertibility_class(const MultiplicationTensor& m, std::size_t samples, std::uint64_t seed);

/// m'(x, y) = m(r_b^{-1} x, l_a^{-1} y), with unit m(a, b) recorded and
/// verified. Throws NotInvertible when r_b or l_a is singular.
MultiplicationTensor kaplansky_unitalize(const MultiplicationTensor& m, const Element& a, const Element& b);

enum class EnvelopeSide { Left, Right, Both };

/// Basis of the associative matrix algebra generated by the chosen
/// multiplication operators (no identity added).
std::vector<Matrix> envelope(const MultiplicationTensor& m, EnvelopeSide side);
std::vector<Matrix> operator_envelope(const FieldSpec& field, std::size_t d, const std::vector<Matrix>& generators);

enum class SimplicityKind { Simple, NotSimple, Inconclusive };
const char* to_string(SimplicityKind k);

struct SimplicityResult {
  SimplicityKind kind;
  /// Basis of a proper nonzero invariant subspace when NotSimple.
  std::vector<Vector> witness;
  std::size_t envelope_dim;
};
/// Burnside test first; otherwise spins kernels and eigenvectors of envelope
/// elements, under the operators and under their transposes.
SimplicityResult operator_simplicity(const FieldSpec& field, std::size_t d, const std::vector<Matrix>& generators);
SimplicityResult simplicity_check(const MultiplicationTensor& m, EnvelopeSide side);
/// True when the span of `basis` is closed under every generator.
bool is_invariant_subspace(const FieldSpec& field, std::size_t d, const std::vector<Matrix>& generators,
                           const std::vector<Vector>& basis);

/// All 2^d square roots of a matrix with d distinct nonzero square
/// eigenvalues in the field, by sign choices in the eigenbasis. Throws
/// GenericityViolation, or UnsupportedCharacteristic in characteristic 2.
std::vector<Matrix> matrix_square_roots(const Matrix& m);

/// The homotope map m -> R(v)m, (R(v)m)(x, y) = m(m(x, v), y).
MultiplicationTensor homotope_map_right(const MultiplicationTensor& m, const Element& v);
/// Every m with R(v)m = m', one per square root of r'_v. Throws
/// GenericityViolation when r'_v is singular or not generic.
std::vector<MultiplicationTensor> homotope_preimages(const MultiplicationTensor& m_prime, const Element& v);

/// Tensor whose r_{e_0} is P diag(2, 5, 8, ...) P^{-1} and whose other
/// right operators are random invertible matrices, so that R(e_0) has 2^d
/// preimages whenever the diagonal entries are distinct nonzero squares
/// (checked by the caller through homotope_preimages).
MultiplicationTensor constructed_generic_tensor(std::size_t d, const FieldSpec& field, std::uint64_t seed);

struct DensityReport {
  std::size_t samples;
  std::uint64_t seed;
  double frac_l_invertible, frac_r_invertible, frac_simple_left, frac_simple_right;
};
/// Sample s uses random_tensor(d, field, seed + s) and one random nonzero v.
DensityReport genericity_density(std::size_t d, const FieldSpec& field, std::size_t samples, std::uint64_t seed);

}  // namespace homotope
