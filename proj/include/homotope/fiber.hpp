#pragma once

#include <random>
#include <vector>

#include "homotope/algebra.hpp"
#include "homotope/homological.hpp"

namespace homotope {

/// B = A x_{A/I} k for a commutative unital A and an ideal I, realized inside
/// A (+) k as {(a, lambda) : a + I = lambda 1 + I}.
struct FiberSetup {
  AlgebraPtr a;
  std::vector<Element> ideal;
  AlgebraPtr c;            ///< A/I on the complement basis of I
  AlgebraMorphism to_c;    ///< A -> A/I
  std::vector<std::size_t> c_lift;  ///< A-index lifting each basis element of A/I
  AlgebraPtr b;
  AlgebraPtr k;            ///< the base field as a 1-dimensional algebra
  AlgebraMorphism p1;      ///< B -> A
  AlgebraMorphism p2;      ///< B -> k
  /// Basis of B as vectors in A (+) k (last coordinate lambda).
  std::vector<Vector> b_basis;
};

/// Throws NotCommutative, NotUnital or NotAnIdeal.
FiberSetup fiber_setup(const AlgebraPtr& a, const std::vector<Element>& ideal);
/// I = (Delta).
FiberSetup fiber_setup(const AlgebraPtr& a, const Element& delta);

/// (a, lambda) in B coordinates, or nullopt when it is not in the fiber product.
std::optional<Element> fiber_element(const FiberSetup& s, const Element& a, const Scalar& lambda);

/// (N, M', phi) with N a vector space, M' an A-module and
/// phi: A/I (x)_k N -> M'/IM' an isomorphism of A/I-modules. The basis of
/// A/I (x) N is indexed c * dim N + j.
struct GluingTriple {
  std::size_t n;
  ModuleRep m;
  QuotientSpace reduction;  ///< M' -> M'/IM'
  Matrix phi;
};

/// Verifies that phi is an A/I-linear isomorphism (VerificationFailure).
GluingTriple make_triple(const FiberSetup& s, std::size_t n, ModuleRep m, Matrix phi);

/// (k (x)_B L, A (x)_B L, canonical identification).
GluingTriple unglue(const FiberSetup& s, const ModuleRep& l);

struct Glued {
  ModuleRep module;          ///< left B-module
  std::vector<Vector> basis; ///< inside N (+) M'
};
/// N x_phi M' = {(x, m) : phi(1 (x) x) = m + IM'}.
Glued glue(const FiberSetup& s, const GluingTriple& t);

/// Matrix of L -> glue(unglue(L)), l -> ([l], [1 (x) l]).
Matrix glue_unit(const FiberSetup& s, const ModuleRep& l);
/// Basis of the kernel of glue_unit.
std::vector<Vector> unit_kernel(const FiberSetup& s, const ModuleRep& l);

/// Compares unglue(glue(T)) with T through the canonical maps.
struct RoundTrip {
  bool n_iso = false;
  bool m_iso = false;
  bool compatible = false;
  bool ok() const { return n_iso && m_iso && compatible; }
};
RoundTrip glue_round_trip(const FiberSetup& s, const GluingTriple& t);

/// W/IW as a module over A/I.
ModuleRep reduce_mod_ideal(const FiberSetup& s, const ModuleRep& w);
/// A/I (x)_A W is free over A/I: projective with every local summand
/// occurring equally often, tested by dim End(P) * dim A/I = (dim P)^2.
bool in_glued_subcategory(const FiberSetup& s, const ModuleRep& w);

/// (A^r, k^r, phi) with phi the identity twisted by a random invertible
/// integer r x r matrix.
GluingTriple free_triple(const FiberSetup& s, std::size_t r, std::mt19937_64& rng);
/// (Iu : u) = I, the hypothesis under which B/(u) has a unit kernel of
/// dimension dim(A/I) - 1.
bool colon_equals_ideal(const FiberSetup& s, const Element& u);
/// B/(u) for u given in B coordinates.
ModuleRep cyclic_quotient(const FiberSetup& s, const Element& u);

}  // namespace homotope
