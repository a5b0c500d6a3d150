#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <unordered_map>
#include <vector>

#include <nlohmann/json.hpp>

#include "artifact/linalg.hpp"
#include "artifact/poly.hpp"

// Truncated quotient rings. A Ring models A(T) = S/((f) + m^T) as a finite
// F_p-vector space: a monomial basis (graded order, prefix-nested across T)
// plus a normal-form table obtained by row-reducing the relation rows
// { u*f : u monomial, u*f meets degrees < T }. With f = 0 the quotient is the
// ambient truncation S/m^T used by the persistence computations.
namespace artifact {

class Ring {
 public:
  // A(T) = S/((f)+m^T). Rejects p=2 (process field is odd), f with a unit
  // constant term (the quotient would collapse) and T=0 (empty basis).
  Ring(int nvars, const Poly& f, std::int64_t p, int T);

  static Ring ambient(int nvars, int T, std::int64_t p = fp::prime) {
    return Ring(nvars, Poly(), p, T);
  }

  int nvars() const { return nv_; }
  int trunc() const { return T_; }
  std::int64_t p() const { return p_; }
  const Poly& modulus() const { return f_; }
  int dim() const { return D_; }
  const std::vector<Mono>& basis() const { return basis_; }

  // Coordinates of the normal form of poly on the monomial basis.
  linalg::FVec nf(const Poly& poly) const;

  // D x D matrix of multiplication by poly acting on the basis (column j =
  // nf(poly * basis_j)); cached per polynomial.
  const linalg::FMat& flatten(const Poly& poly) const;

  // Blockwise flatten of an r x c polynomial matrix into (r*D) x (c*D).
  linalg::FMat flatten(const PolyMat& M) const;

  nlohmann::json descriptor() const;

 private:
  int nv_;
  Poly f_;
  std::int64_t p_;
  int T_;
  std::vector<Mono> mons_;                      // all monomials of degree < T
  std::unordered_map<std::uint32_t, int> midx_;
  std::vector<Mono> basis_;
  int D_ = 0;
  // nf_rows_[i] = normal form of mons_[i] as sparse basis coordinates
  std::vector<std::vector<std::pair<int, double>>> nf_rows_;
  mutable std::map<std::string, linalg::FMat> flat_cache_;
};

// Spec-facing constructor; `vars` fixes the number of variables (names are
// positional x, y, z, w).
Ring make_ring(const std::vector<std::string>& vars, const Poly& f, std::int64_t p, int T);

Poly poly_from_json(const nlohmann::json& j);
nlohmann::json poly_to_json(const Poly& f, int nvars);

// Row indices that read A(T_hi)^k coordinates down to A(T_lo)^k coordinates;
// asserts the low basis is a prefix of the high one (graded nesting).
std::vector<int> proj_rows(const Ring& hi, const Ring& lo, int k);

}  // namespace artifact
