#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "artifact/poly.hpp"
#include "artifact/ring.hpp"

// Matrix factorizations (phi, psi) of a polynomial f: square matrices over S
// with phi*psi = psi*phi = f*I exactly. Coker(phi) is the presented MCM
// module over S/(f); the single-matrix convention is recovered as psi = -phi.
namespace artifact {

struct MatFac {
  int nvars = 0;
  Poly f;
  PolyMat phi, psi;
  std::string label;

  Eigen::Index size() const { return phi.rows(); }
};

// Morphism pair (alpha, beta): M -> N with alpha*phi_M = phi_N*beta and
// beta*psi_M = psi_N*alpha (exactly over S for the hand-built catalog maps;
// modulo the working truncation for solved ones).
struct MorPair {
  PolyMat alpha, beta;
};

// Validates and assembles; throws std::invalid_argument naming the first
// offending entry position when one of the products deviates from f*I.
MatFac mf_validate(int nvars, const Poly& f, const PolyMat& phi, const PolyMat& psi,
                   const std::string& label = "");

// Re-checks an already-assembled factorization (same throw behaviour).
void mf_validate(const MatFac& M);

// Syzygy shift: swap the factors. Involution; on the catalog entries the
// shift is isomorphic to the module itself (self-syzygy).
MatFac mf_shift(const MatFac& M);

MatFac mf_direct_sum(const MatFac& M, const MatFac& N);

// Mapping cone of (alpha, beta): M -> N over the same (S, f):
// Phi = ((phi_N, -alpha), (0, psi_M)), Psi = ((psi_N, beta), (0, phi_M)).
MatFac mf_cone(const MatFac& M, const MatFac& N, const MorPair& m);

// Knoerrer sharp (S, f) -> (S[z], f + z^2), block layout
// Phi = Psi = ((z*I, phi), (psi, -z*I)); realizes A = F o Omega on objects.
MatFac mf_knorrer_sharp(const MatFac& M);

// sigma: z -> -z on a sharp-form ambient (f must contain the z^2 term and z
// must be the last variable); involution.
MatFac mf_sigma_twist(const MatFac& M);

// Presentation of Coker(phi) over A(T): the flattened presentation matrix.
// Columns span the relation module; the cokernel of this F_p-matrix is the
// underlying vector space of the module at truncation T.
linalg::FMat mf_cokernel(const MatFac& M, int T);

bool pair_is_morphism(const MatFac& M, const MatFac& N, const MorPair& h, int T = -1);
MorPair pair_compose(const MorPair& h2, const MorPair& h1);

nlohmann::json mf_to_json(const MatFac& M);
MatFac mf_from_json(const nlohmann::json& j);

}  // namespace artifact
