#pragma once

#include <optional>
#include <vector>

#include "homotope/algebra.hpp"
#include "homotope/polynomial.hpp"

namespace homotope {

/// Block decomposition of a split semisimple algebra S.
struct BlockData {
  /// Central primitive idempotents c_i of S.
  std::vector<Element> idempotents;
  /// n_i with dim(S c_i) = n_i^2.
  std::vector<std::size_t> block_sizes;
};

/// Monic minimal polynomial of x in a unital associative algebra.
Polynomial minimal_polynomial(const Algebra& a, const Element& x);

/// Basis of R(A) via the trace form Tr(L_{xy}). Needs characteristic 0 or
/// p > dim (p > dim + 1 for non-unital inputs, which are unitalized first).
std::vector<Element> jacobson_radical(const Algebra& a);

struct SemisimpleQuotient {
  AlgebraPtr algebra;
  AlgebraMorphism projection;
  std::vector<Element> radical;
};
SemisimpleQuotient semisimple_quotient(const AlgebraPtr& a);

/// Splits the center of S by minimal polynomials of its basis elements.
/// Throws NotSplit when a minimal polynomial has roots outside the base field
/// or a block dimension is not a perfect square. Division-algebra blocks
/// with center k are not detected.
BlockData wedderburn_blocks(const Algebra& s);

/// rank_i(Delta) for each block of A/R(A), in wedderburn_blocks order.
std::vector<std::size_t> block_ranks(const AlgebraPtr& a, const Element& delta);

/// Delta ~ s + r with s^2 = s, sr = rs = 0 and u Delta v = s + r.
struct SuitableForm {
  Element s, r, u, v;
  /// Per lifted block, the indices j (1-based) with e^j_i a summand of s.
  std::vector<std::vector<std::size_t>> index_sets;
};
/// Follows the three-step reduction: blockwise rank normal form, right
/// translation by (1+r2)^{-1}, left translation by (1+r3)^{-1}. Needs the
/// algebra's Wedderburn lift (MissingSplitting otherwise).
SuitableForm suitable_form(const Algebra& a, const Element& delta);

/// Two-sided inverse when x is invertible. Throws NotUnital.
std::optional<Element> inverse_of(const Algebra& a, const Element& x);
inline bool is_invertible(const Algebra& a, const Element& x) { return inverse_of(a, x).has_value(); }

struct RadicalComparison {
  bool contained = false;  ///< R(A), embedded in B+, lies in R(B)
  bool equal = false;
  bool delta_invertible = false;
  std::size_t dim_radical_a = 0;
  std::size_t dim_radical_b = 0;
};
RadicalComparison radical_compare(const Algebra& a, const Element& delta);

/// Dimensions of the irreducible representations of B = A_Delta with a unit
/// adjoined: r_i for every block with r_i > 0, plus 1 for the augmentation.
/// Sorted in decreasing order.
std::vector<std::size_t> homotope_rep_dims(const AlgebraPtr& a, const Element& delta);

/// Which side the unipotent factor sits on.
enum class FactorOrder {
  SemisimpleFirst,  ///< u = g (1 + n)
  UnipotentFirst,   ///< u = (1 + n) g
};

struct UnitFactorization {
  Element semisimple_part;  ///< g, in the lifted complement S
  Element unipotent_part;   ///< 1 + n with n in R(A)
  FactorOrder order;
};
/// Needs the Wedderburn lift; throws NotInvertible when u is not a unit.
UnitFactorization unit_factor(const Algebra& a, const Element& u, FactorOrder order = FactorOrder::SemisimpleFirst);

/// P X Q = diag(I_r, 0) for square X; returns (P, Q, r).
struct RankNormalForm {
  Matrix p, q;
  std::size_t rank;
};
RankNormalForm rank_normal_form(const Matrix& x);

}  // namespace homotope
