#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "artifact/catalog.hpp"
#include "artifact/linalg.hpp"
#include "artifact/matfac.hpp"

// Stable reduction, isomorphism search, and Krull-Schmidt decomposition of
// matrix factorizations over the truncated local ring. The decomposition
// strategy: strip constant-unit pivots (trivial and free summands), then
// peel catalog members off by hunting for an exact idempotent in the
// endomorphism ring, conjugating it to constant block-diagonal form, and
// cutting; all polynomial arithmetic runs mod m^T for a working truncation T.
namespace artifact::decomp {

// Constant terms of a polynomial matrix, as an F_p matrix.
linalg::FMat const_part(const PolyMat& A);

// Inverse of a square F_p matrix, or nullopt when singular.
std::optional<linalg::FMat> fp_inverse(const linalg::FMat& C, std::int64_t p = fp::prime);

// Constant-polynomial promotion of an F_p matrix.
PolyMat fp_to_poly(const linalg::FMat& C);

// Truncated inverse of a unit polynomial (nonzero constant term): the
// Neumann series of 1 - a/a(0), so a * poly_inverse(a, T) = 1 mod m^T.
Poly poly_inverse(const Poly& a, int T);

// Truncated inverse of a polynomial matrix with invertible constant part;
// A * poly_mat_inv(A, T) = I mod m^T. Throws std::invalid_argument when the
// constant part is singular.
PolyMat poly_mat_inv(const PolyMat& A, int T);

// Strip constant-unit pivots by mirrored row/column operations: a unit in
// phi cuts a trivial (1, f) block (zero object), a unit in psi cuts an
// (f, 1) block (free summand). Pivot clearing uses the truncated inverse of
// the full pivot entry, so the cut is exact mod m^T. The counted variant
// also reports how many free summands were stripped. T < 0 picks
// 2*max(1, maxdeg) + 4.
MatFac mf_reduce(const MatFac& M, int T = -1);
std::pair<MatFac, int> mf_reduce_counted(const MatFac& M, int T = -1);

// Search for an isomorphism M ~ N: a morphism pair whose two constant parts
// are both invertible over F_p (units of the local ring are detected by
// their residue). Draws `tries` generic elements of the morphism space over
// A(T); T < 0 picks 2*max(1, maxdeg) + 2. A failed search within the budget
// reads as "no isomorphism found", which the callers treat as non-isomorphic.
std::optional<MorPair> mf_iso_pair(const MatFac& M, const MatFac& N, std::uint64_t seed = 1,
                                   int tries = 24, int T = -1);
bool mf_iso(const MatFac& M, const MatFac& N, std::uint64_t seed = 1, int tries = 24, int T = -1);

// Split M along an exact idempotent pair e (defined mod m^T): conjugate the
// residue idempotents to diag(1..1, 0..0), correct by P = E e' + (I-E)(I-e')
// so the idempotent becomes exactly constant, and cut the two diagonal
// blocks. nullopt when the residues are not idempotent, not of equal rank,
// trivial, or the off-diagonal blocks fail to vanish.
std::optional<std::pair<MatFac, MatFac>> split_by_idempotent(const MatFac& M, const MorPair& e,
                                                             int T);

// Try to split a copy of U off M: draw r: M -> U and s: U -> M generically,
// require theta = r o s invertible, and split along the exact idempotent
// s o theta^{-1} o r. Solved over the ambient ring S/m^T so the idempotent
// identities hold mod m^T on the nose. Returns the complement on success.
std::optional<MatFac> try_split_off(const MatFac& M, const MatFac& U, std::uint64_t seed,
                                    int tries = 24, int T = -1);

struct DecompResult {
  std::map<std::string, int> counts;  // catalog label -> multiplicity
  int free_rank = 0;                  // stripped free summands
  std::vector<MatFac> blocks;         // identified blocks, in peel order
  std::vector<MatFac> residual;       // unidentified leftovers (never dropped)

  bool complete() const { return residual.empty(); }
  nlohmann::json to_json() const;
};

// Catalog-directed peeling: reduce, then repeatedly match the working
// factorization against the catalog (same size: isomorphism test; smaller:
// split search). Anything left when no entry matches is surfaced in
// `residual`. T < 0 picks max(1, maxdeg over M and the catalog) + 6.
DecompResult mf_decompose(const MatFac& M, const std::vector<catalog::Entry>& cat,
                          std::uint64_t seed = 3, int T = -1);

// Basis change by constant invertible matrices: (Q0^{-1} phi Q1, Q1^{-1} psi Q0).
// Exact (no truncation); preserves the isomorphism class.
MatFac mf_conjugate(const MatFac& M, const linalg::FMat& Q0, const linalg::FMat& Q1);

// Random invertible constant matrix over F_p, deterministic in the seed.
linalg::FMat random_invertible(int n, std::uint64_t seed);

}  // namespace artifact::decomp
