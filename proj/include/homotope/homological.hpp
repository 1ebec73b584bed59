#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "homotope/algebra.hpp"
#include "homotope/linalg.hpp"

namespace homotope {

/// Finite-dimensional module: one dim x dim matrix per algebra basis element.
/// For a right module the matrix of e_i is m -> m e_i, so the action
/// reverses products: rho(e_j) rho(e_i) = rho(e_i e_j).
class ModuleRep {
 public:
  /// Verifies the action against the structure constants, and that the unit
  /// (if any) acts as the identity.
  ModuleRep(AlgebraPtr algebra, Side side, std::size_t dim, std::vector<Matrix> action, std::string tag = {});

  const AlgebraPtr& algebra() const { return algebra_; }
  const FieldSpec& field() const { return algebra_->field(); }
  Side side() const { return side_; }
  std::size_t dim() const { return dim_; }
  const std::vector<Matrix>& action() const { return action_; }
  const Matrix& action(std::size_t i) const { return action_[i]; }
  /// rho(x) = sum x_i rho(e_i)
  Matrix act(const Element& x) const;
  const std::string& tag() const { return tag_; }
  ModuleRep tagged(std::string tag) const;

 private:
  AlgebraPtr algebra_;
  Side side_;
  std::size_t dim_;
  std::vector<Matrix> action_;
  std::string tag_;
};

/// Linear map between modules over the same algebra and side, verified to
/// intertwine the actions.
class ModuleMorphism {
 public:
  ModuleMorphism(ModuleRep source, ModuleRep target, Matrix matrix);
  const ModuleRep& source() const { return source_; }
  const ModuleRep& target() const { return target_; }
  const Matrix& matrix() const { return m_; }
  bool is_isomorphism() const;

 private:
  ModuleRep source_, target_;
  Matrix m_;
};

bool intertwines(const ModuleRep& source, const ModuleRep& target, const Matrix& m);

ModuleRep regular_module(const AlgebraPtr& a, Side side);
/// Left module A^n.
ModuleRep free_module(const AlgebraPtr& a, std::size_t n);
/// The 1-dimensional module through the augmentation of an augmented algebra.
ModuleRep trivial_module(const AlgebraPtr& b, Side side);
ModuleRep zero_module(const AlgebraPtr& a, Side side);
ModuleRep direct_sum(const ModuleRep& m, const ModuleRep& n);
/// Restriction along f: action(e_i) = M.act(f(e_i)).
ModuleRep restrict_along(const AlgebraMorphism& f, const ModuleRep& m);
/// A right A-module as a left A^op-module with the same matrices.
ModuleRep to_left(const ModuleRep& m);
/// Submodule spanned by the given vectors, in the echelon basis of their
/// span. Throws VerificationFailure when the span is not invariant.
struct Submodule {
  ModuleRep module;
  std::vector<Vector> basis;
};
Submodule submodule(const ModuleRep& m, const std::vector<Vector>& span);
struct QuotientModule {
  ModuleRep module;
  QuotientSpace space;
};
QuotientModule quotient_module(const ModuleRep& m, const std::vector<Vector>& span);

/// Free cover X^g -> M of a left module over a unital algebra X.
struct Presentation {
  /// Generators chosen by a greedy sweep over the standard basis of M: e_k
  /// becomes a generator when it is not in the submodule generated so far.
  std::vector<Vector> generators;
  /// M.dim x (dim X * g); column (j, a) is rho(e_a) g_j, index j * dim X + a.
  Matrix cover;
  /// Basis of ker(cover), a submodule of X^g.
  std::vector<Vector> relations;
  /// Linear section: cover * section = I.
  Matrix section;
};
Presentation present(const ModuleRep& m);

/// Basis of Hom(M, N) as matrices N.dim x M.dim.
std::vector<Matrix> hom_basis(const ModuleRep& m, const ModuleRep& n);
std::vector<ModuleMorphism> hom_space(const ModuleRep& m, const ModuleRep& n);

/// M (x)_X N for M right and N left over the same algebra, as a quotient of
/// M (x)_k N; the pure tensor e_a (x) e_b has index a * N.dim + b.
struct TensorProduct {
  std::size_t left_dim, right_dim;
  QuotientSpace space;
  std::size_t dim() const { return space.dim(); }
  Vector project_pure(std::size_t a, std::size_t b) const;
};
TensorProduct tensor_over_algebra(const ModuleRep& m, const ModuleRep& n);

/// Decides whether the free cover splits, by one linear system.
bool is_projective(const ModuleRep& m);

struct AugmentationModules {
  PsiMorphisms psi;
  ModuleRep b_plus_left;   ///< A with b . a = psi1(b) a
  ModuleRep b_plus_right;  ///< A with a . b = a psi2(b)
  ModuleRep trivial;       ///< k through the augmentation
};
AugmentationModules augmentation_modules(const AlgebraPtr& a, const Element& delta);

/// dim Ext^1_B(k, k) = dim Hom_B(B+, k).
std::size_t ext1_trivial(const AlgebraPtr& a, const Element& delta);

/// dim Tor_i(M, V), i <= 2, from a free resolution of V of length i + 1.
std::size_t tor_low(const ModuleRep& m, const ModuleRep& v, int i);

/// f^*(V) = Y (x)_X V for f: X -> Y and a left X-module V.
struct Induced {
  ModuleRep module;
  TensorProduct tensor;
};
Induced induce(const AlgebraMorphism& f, const ModuleRep& v);

/// f^!(V) = Hom_X(Y, V) with Y a left X-module through f.
struct Coinduced {
  ModuleRep module;
  /// Basis maps, each V.dim x dim Y.
  std::vector<Matrix> maps;
  /// Coordinates of a map Y -> V (flattened row-major) in `maps`.
  std::optional<Vector> coordinates(const Matrix& phi) const;
  std::shared_ptr<const SpanSolver> solver;
};
Coinduced coinduce(const AlgebraMorphism& f, const ModuleRep& v);

/// mu_V: A (x)_B V -> Hom_B(A, V), a (x) v -> (a' -> rho(a' a) v), where the
/// tensor uses A as a right B-module through psi2 and the Hom uses A as a
/// left B-module through psi1. Both sides are A-modules and mu is A-linear.
struct MuTransform {
  ModuleMorphism map;
  bool is_isomorphism;
};
MuTransform mu_transform(const AlgebraPtr& a, const Element& delta, const ModuleRep& v);

struct IdentityCheck {
  std::string name;
  std::string sample;
  bool passed;
  std::vector<std::pair<std::string, long long>> data;
};

struct RecollementReport {
  bool well_tempered;
  std::vector<IdentityCheck> checks;
  bool all_passed() const;
};

/// Checks the recollement identities on built-in samples (regular A, its
/// projective left ideals and top when a lift is present, regular B, the
/// trivial module, psi1_*A, psi2_*A) plus the given samples, each of which is
/// matched to A or B by structure.
RecollementReport recollement_report(const AlgebraPtr& a, const Element& delta,
                                     const std::vector<ModuleRep>& samples = {});

/// One seeded (A, Delta) with the well-tempered criterion compared against
/// projectivity of B+ on both sides. A comes from random_test_algebra with
/// profile seed % 3, re-drawn until dim A <= max_dim.
struct OracleTrial {
  std::uint64_t seed;
  TestProfile profile;
  AlgebraPtr a;
  Element delta;
  bool criterion;
  bool projective_left, projective_right;
  std::size_t ext1;
  bool agree() const { return criterion == (projective_left && projective_right); }
};
OracleTrial oracle_trial(std::uint64_t seed, std::size_t max_dim = 8, const FieldSpec& field = FieldSpec::rationals());

}  // namespace homotope
