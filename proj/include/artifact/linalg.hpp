#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "artifact/fp.hpp"

// Dense linear algebra over F_p. Matrices are stored as float64 with entries
// reduced into [0, p); elimination runs panel-blocked so the trailing update
// is a single GEMM per panel, which stays exact because
// PANEL * (p-1)^2 < 2^53. This is the one numeric kernel everything else
// (flattened morphism systems, persistence projections, rank counts) sits on.
namespace artifact::linalg {

using FMat = Eigen::MatrixXd;
using FVec = Eigen::VectorXd;

constexpr int kPanel = 160;

struct EchelonResult {
  int rank = 0;
  std::vector<int> pivots;  // pivot column per echelon row
  FMat reduced;             // echelon rows in place (RREF rows when reduced=true)
};

EchelonResult echelon(FMat A, std::int64_t p = fp::prime, bool reduced = false);

int rank(const FMat& A, std::int64_t p = fp::prime);

// Columns spanning ker(A); assembled per connected component of the
// bipartite nonzero pattern, which keeps block-diagonal systems cheap.
FMat kernel_basis(const FMat& A, std::int64_t p = fp::prime);

inline int kernel_dim(const FMat& A, std::int64_t p = fp::prime) {
  return int(A.cols()) - rank(A, p);
}

// One solution of A x = b with free variables pinned to zero, or nullopt.
std::optional<FVec> solve(const FMat& A, const FVec& b, std::int64_t p = fp::prime);

// Connected components of the bipartite graph rows <-> columns on the
// nonzero pattern; zero rows/columns come out as singletons.
std::vector<std::pair<std::vector<int>, std::vector<int>>> components(const FMat& A);

inline FMat hstack(const FMat& A, const FMat& B) {
  assert(A.rows() == B.rows());
  FMat R(A.rows(), A.cols() + B.cols());
  R << A, B;
  return R;
}

inline FMat vstack(const FMat& A, const FMat& B) {
  assert(A.cols() == B.cols());
  FMat R(A.rows() + B.rows(), A.cols());
  R << A, B;
  return R;
}

inline FMat mod_p(FMat A, std::int64_t p = fp::prime) {
  double dp = double(p);
  for (Eigen::Index j = 0; j < A.cols(); ++j)
    for (Eigen::Index i = 0; i < A.rows(); ++i) {
      double v = std::fmod(A(i, j), dp);
      A(i, j) = v < 0 ? v + dp : v;
    }
  return A;
}

// Product reduced mod p, split so every accumulation stays below 2^53.
FMat matmul_mod(const FMat& A, const FMat& B, std::int64_t p = fp::prime);

// Random combination of the columns of K with coefficients in [1, p); the
// workhorse for drawing generic elements of a solution space. nullopt when
// K has no columns. Deterministic in the seed.
std::optional<FVec> generic_combo(const FMat& K, std::uint64_t seed,
                                  std::int64_t p = fp::prime);

}  // namespace artifact::linalg
