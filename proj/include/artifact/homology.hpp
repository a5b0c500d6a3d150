#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "artifact/catalog.hpp"
#include "artifact/matfac.hpp"
#include "artifact/ring.hpp"

// Dimension computation for Hom, stable Hom and Ext^1 between the MCM
// modules presented by matrix factorizations, via flattened 2-periodic
// linear systems over truncated rings.
//
// The stabilization scheme used everywhere ("persistence"): solve the linear
// system over the ambient truncation S/m^{T+delta}, project the solution
// space down to level T, and count classes that survive; repeat for
// increasing T until two consecutive levels agree (Stable) or the dimension
// keeps strictly growing (Growing). The guard band delta = maxdeg + 1
// absorbs top-degree artifacts of the truncation.
namespace artifact::homology {

struct DimReport {
  std::vector<std::pair<int, int>> trace;  // (truncation order T, dimension)
  std::string verdict;                     // Stable(d) | Growing | Undetermined

  bool is_stable() const { return verdict.rfind("Stable", 0) == 0; }
  bool is_growing() const { return verdict == "Growing"; }

  // The stabilized dimension; throws unless the verdict is Stable(d).
  int value() const;

  nlohmann::json to_json() const;
};

// Level function: dimension at read level `lo` with persistence from `hi`.
using LevelFn = std::function<int(const Ring& lo, const Ring& hi)>;

// Ladder driver: evaluates fn at T = Tmin, Tmin+1, ... (at most `steps`
// levels) and classifies the trace. Stable needs two consecutive equal
// values; Growing needs every increment strict and at least three of them.
DimReport dim_ladder(const LevelFn& fn, int nvars, const Poly& f, int Tmin, int steps,
                     int delta, bool modded);

// A^T (x) I_k as a polynomial matrix: block (i,j) = A(j,i) * I_k,
// A is a x b -> result (b*k) x (a*k). Flattening vec(X A) for X with k rows.
PolyMat kron_AT_I(const PolyMat& A, int k);

// I_k (x) B: block diagonal with k copies of B. Flattening vec(B X).
PolyMat kron_I_B(int k, const PolyMat& B);

PolyMat poly_hstack(const PolyMat& A, const PolyMat& B);
PolyMat poly_vstack(const PolyMat& A, const PolyMat& B);

// Symbolic (L, H) for morphism pairs M -> N. Unknowns (alpha, beta), each
// n x m (n = size N, m = size M), stacked as (vec alpha; vec beta) in
// column-major vec order. ker L = morphism pairs; col span of H = null-
// homotopic pairs (alpha, beta) = (phi_N gamma + delta psi_M,
// gamma phi_M + psi_N delta).
std::pair<PolyMat, PolyMat> shom_systems(const MatFac& M, const MatFac& N);

// Flattened coordinates of an explicit pair in the (vec alpha; vec beta)
// layout of shom_systems, and the inverse reading of a solution vector.
linalg::FVec pair_to_vec(const MatFac& M, const MatFac& N, const Ring& ring, const MorPair& h);
MorPair vec_to_pair(const MatFac& M, const MatFac& N, const Ring& ring, const linalg::FVec& v);

// (projected persistent kernel columns, homotopy columns at the read level):
// the two subspaces whose quotient is the stable hom space.
std::pair<linalg::FMat, linalg::FMat> stable_classes(const MatFac& M, const MatFac& N,
                                                     const Ring& lo, const Ring& hi);

// Kernel basis of the flattened pair system over the given ring: columns are
// the (vec alpha; vec beta) coordinates of all morphism pairs M -> N at that
// truncation. Over an ambient ring these are genuine pairs mod m^T.
linalg::FMat morphism_space(const MatFac& M, const MatFac& N, const Ring& ring);

int stable_hom_at(const MatFac& M, const MatFac& N, const Ring& lo, const Ring& hi);
int ext1_at(const MatFac& M, const MatFac& N, const Ring& lo, const Ring& hi);

// dim_k Hom_{A(T)}(coker M, coker N): the full (unstable) module Hom.
int hom_module_dim(const MatFac& M, const MatFac& N, const Ring& ring);

// Morphisms modulo homotopy, stabilized over the truncation ladder. The
// systems are solved over ambient truncations S/m^T: solving them over
// A(T) itself would fold Hom(M, N) and Hom(M, N[1]) together (the kernel
// of the modded pair system picks up f-proportional cross terms).
DimReport stable_hom_dim(const MatFac& M, const MatFac& N, int steps = 6);

// dim Ext^1(coker M, coker N) = ker(psi_M^T) / im(phi_M^T) on (coker N)^m,
// computed over A(T) with the same persistence guard.
DimReport ext1_dim(const MatFac& M, const MatFac& N, int steps = 6);

// Multiplicity of U as a stable direct summand of X, via decomposition over
// the given catalog followed by isomorphism matching. U must be recognized
// by the catalog; a free (stably zero) U has multiplicity 0 by convention.
int mu_multiplicity(const MatFac& U, const MatFac& X, const std::vector<catalog::Entry>& cat,
                    std::uint64_t seed = 3);

// Both sides of the AR defect equality for the sequence 0 -> Z -> Y -> X -> 0:
// lhs = dim Hom(U,X) + dim Hom(U,Z) - dim Hom(U,Y),
// rhs = mu(U, X) + mu(U, X[-1]).
// Throws when one of the stable dimensions fails to resolve.
std::pair<int, int> ar_defect(const MatFac& U, const catalog::SequenceData& seq,
                              const std::vector<catalog::Entry>& cat, int steps = 6);

}  // namespace artifact::homology
