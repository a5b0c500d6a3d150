#include "artifact/linalg.hpp"

#include <cassert>
#include <cmath>
#include <numeric>
#include <random>

namespace artifact::linalg {

namespace {

void fmod_block(Eigen::Ref<FMat> A, double p) {
  for (Eigen::Index j = 0; j < A.cols(); ++j)
    for (Eigen::Index i = 0; i < A.rows(); ++i) {
      double v = std::fmod(A(i, j), p);
      A(i, j) = v < 0 ? v + p : v;
    }
}

}  // namespace

EchelonResult echelon(FMat A, std::int64_t pi, bool reduced) {
  const double p = double(pi);
  fmod_block(A, p);
  const Eigen::Index r = A.rows(), c = A.cols();
  std::vector<int> piv;
  Eigen::Index f = 0;
  Eigen::Index col = 0;
  while (col < c && f < r) {
    const Eigen::Index hi = std::min(col + Eigen::Index(kPanel), c);
    const Eigen::Index f0 = f;
    std::vector<double> invs;
    // factor the panel columns [col, hi) with updates confined to the panel
    for (Eigen::Index j = col; j < hi; ++j) {
      Eigen::Index pr = -1;
      for (Eigen::Index i = f; i < r; ++i)
        if (A(i, j) != 0.0) { pr = i; break; }
      if (pr < 0) continue;
      if (pr != f) A.row(f).swap(A.row(pr));
      const double inv = double(fp::inverse(std::int64_t(A(f, j)), pi));
      invs.push_back(inv);
      {
        auto row = A.block(f, j, 1, hi - j);
        row *= inv;
        fmod_block(row, p);
      }
      if (f + 1 < r) {
        auto m = A.block(f + 1, j, r - f - 1, 1);
        if (m.cwiseAbs().sum() != 0.0 && j + 1 < hi) {
          auto blk = A.block(f + 1, j + 1, r - f - 1, hi - j - 1);
          blk.noalias() -= m * A.block(f, j + 1, 1, hi - j - 1);
          fmod_block(blk, p);
        }
      }
      piv.push_back(int(j));
      ++f;
    }
    const Eigen::Index npv = f - f0;
    if (npv > 0 && hi < c) {
      // replay the panel's row operations on the pivot rows' trailing columns
      for (Eigen::Index k = 0; k < npv; ++k) {
        const Eigen::Index rowk = f0 + k;
        auto tail = A.block(rowk, hi, 1, c - hi);
        tail *= invs[size_t(k)];
        fmod_block(tail, p);
        if (k + 1 < npv) {
          auto m = A.block(rowk + 1, piv[size_t(piv.size() - npv + k)], f - rowk - 1, 1);
          if (m.cwiseAbs().sum() != 0.0) {
            auto blk = A.block(rowk + 1, hi, f - rowk - 1, c - hi);
            blk.noalias() -= m * A.block(rowk, hi, 1, c - hi);
            fmod_block(blk, p);
          }
        }
      }
      // one GEMM for everything below the panel
      if (f < r) {
        FMat L(r - f, npv);
        for (Eigen::Index k = 0; k < npv; ++k)
          L.col(k) = A.block(f, piv[size_t(piv.size() - npv + k)], r - f, 1);
        if (L.cwiseAbs().sum() != 0.0) {
          auto blk = A.block(f, hi, r - f, c - hi);
          blk.noalias() -= L * A.block(f0, hi, npv, c - hi);
          fmod_block(blk, p);
        }
      }
    }
    // clear multiplier storage strictly below each panel pivot
    for (Eigen::Index k = 0; k < npv; ++k) {
      const Eigen::Index pc = piv[size_t(piv.size() - npv + k)];
      if (f0 + k + 1 < r) A.block(f0 + k + 1, pc, r - f0 - k - 1, 1).setZero();
    }
    col = hi;
  }
  const int rank = int(f);
  if (reduced && rank > 0) {
    // backward pass, panel by panel, GEMM for the far block
    Eigen::Index k1 = rank;
    while (k1 > 0) {
      const Eigen::Index k0 = std::max(Eigen::Index(0), k1 - Eigen::Index(kPanel));
      for (Eigen::Index k = k1 - 1; k > k0; --k) {
        const Eigen::Index pc = piv[size_t(k)];
        // materialize the multipliers: they live in the first column of blk
        FMat m = A.block(k0, pc, k - k0, 1);
        if (m.cwiseAbs().sum() != 0.0) {
          auto blk = A.block(k0, pc, k - k0, c - pc);
          blk.noalias() -= m * A.block(k, pc, 1, c - pc);
          fmod_block(blk, p);
        }
      }
      if (k0 > 0) {
        const Eigen::Index w = k1 - k0;
        FMat L(k0, w);
        for (Eigen::Index k = 0; k < w; ++k) L.col(k) = A.block(0, piv[size_t(k0 + k)], k0, 1);
        if (L.cwiseAbs().sum() != 0.0) {
          const Eigen::Index start = piv[size_t(k0)];
          auto blk = A.block(0, start, k0, c - start);
          blk.noalias() -= L * A.block(k0, start, w, c - start);
          fmod_block(blk, p);
        }
      }
      k1 = k0;
    }
  }
  return {rank, std::move(piv), std::move(A)};
}

std::vector<std::pair<std::vector<int>, std::vector<int>>> components(const FMat& A) {
  const int r = int(A.rows()), c = int(A.cols());
  std::vector<int> parent(size_t(r + c));
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    int root = x;
    while (parent[size_t(root)] != root) root = parent[size_t(root)];
    while (parent[size_t(x)] != root) {
      int nx = parent[size_t(x)];
      parent[size_t(x)] = root;
      x = nx;
    }
    return root;
  };
  for (int j = 0; j < c; ++j)
    for (int i = 0; i < r; ++i)
      if (A(i, j) != 0.0) {
        int ri = find(i), rj = find(r + j);
        if (ri != rj) parent[size_t(ri)] = rj;
      }
  std::vector<std::pair<std::vector<int>, std::vector<int>>> groups;
  std::vector<int> slot(size_t(r + c), -1);
  for (int i = 0; i < r; ++i) {
    int g = find(i);
    if (slot[size_t(g)] < 0) {
      slot[size_t(g)] = int(groups.size());
      groups.emplace_back();
    }
    groups[size_t(slot[size_t(g)])].first.push_back(i);
  }
  for (int j = 0; j < c; ++j) {
    int g = find(r + j);
    if (slot[size_t(g)] < 0) {
      slot[size_t(g)] = int(groups.size());
      groups.emplace_back();
    }
    groups[size_t(slot[size_t(g)])].second.push_back(j);
  }
  return groups;
}

int rank(const FMat& A, std::int64_t p) {
  if (A.size() == 0) return 0;
  int total = 0;
  for (const auto& [rows, cols] : components(A)) {
    if (rows.empty() || cols.empty()) continue;
    FMat sub(rows.size(), cols.size());
    for (size_t j = 0; j < cols.size(); ++j)
      for (size_t i = 0; i < rows.size(); ++i) sub(Eigen::Index(i), Eigen::Index(j)) = A(rows[i], cols[j]);
    total += echelon(std::move(sub), p).rank;
  }
  return total;
}

namespace {

FMat kernel_basis_dense(const FMat& A, std::int64_t p) {
  const Eigen::Index cols = A.cols();
  if (A.rows() == 0) return FMat::Identity(cols, cols);
  auto [rank, piv, R] = echelon(A, p, /*reduced=*/true);
  std::vector<char> is_piv(size_t(cols), 0);
  for (int pc : piv) is_piv[size_t(pc)] = 1;
  std::vector<int> free;
  for (int j = 0; j < cols; ++j)
    if (!is_piv[size_t(j)]) free.push_back(j);
  FMat K = FMat::Zero(cols, Eigen::Index(free.size()));
  for (size_t j = 0; j < free.size(); ++j) K(free[j], Eigen::Index(j)) = 1.0;
  const double dp = double(p);
  for (int i = 0; i < rank; ++i)
    for (size_t j = 0; j < free.size(); ++j) {
      double v = R(i, free[j]);
      if (v != 0.0) K(piv[size_t(i)], Eigen::Index(j)) = dp - v;
    }
  return K;
}

}  // namespace

FMat kernel_basis(const FMat& A, std::int64_t p) {
  const Eigen::Index cols = A.cols();
  if (A.size() == 0) return FMat::Identity(cols, cols);
  std::vector<FMat> blocks;
  std::vector<std::vector<int>> block_cols;
  Eigen::Index width = 0;
  for (const auto& [rows, cidx] : components(A)) {
    if (cidx.empty()) continue;
    FMat Kc;
    if (rows.empty()) {
      Kc = FMat::Identity(Eigen::Index(cidx.size()), Eigen::Index(cidx.size()));
    } else {
      FMat sub(rows.size(), cidx.size());
      for (size_t j = 0; j < cidx.size(); ++j)
        for (size_t i = 0; i < rows.size(); ++i)
          sub(Eigen::Index(i), Eigen::Index(j)) = A(rows[i], cidx[j]);
      Kc = kernel_basis_dense(sub, p);
    }
    if (Kc.cols() > 0) {
      width += Kc.cols();
      blocks.push_back(std::move(Kc));
      block_cols.push_back(cidx);
    }
  }
  FMat K = FMat::Zero(cols, width);
  Eigen::Index at = 0;
  for (size_t b = 0; b < blocks.size(); ++b) {
    const auto& cidx = block_cols[b];
    for (Eigen::Index j = 0; j < blocks[b].cols(); ++j)
      for (size_t i = 0; i < cidx.size(); ++i) K(cidx[i], at + j) = blocks[b](Eigen::Index(i), j);
    at += blocks[b].cols();
  }
  return K;
}

std::optional<FVec> solve(const FMat& A, const FVec& b, std::int64_t p) {
  assert(A.rows() == b.size());
  auto [rank, piv, R] = echelon(hstack(A, b), p, /*reduced=*/true);
  // inconsistent iff some pivot lands in the appended column
  for (int pc : piv)
    if (pc == int(A.cols())) return std::nullopt;
  FVec x = FVec::Zero(A.cols());
  for (int i = 0; i < rank; ++i) x(piv[size_t(i)]) = R(i, A.cols());
  return x;
}

std::optional<FVec> generic_combo(const FMat& K, std::uint64_t seed, std::int64_t p) {
  if (K.cols() == 0) return std::nullopt;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::int64_t> coef(1, p - 1);
  FMat w(K.cols(), 1);
  for (Eigen::Index i = 0; i < K.cols(); ++i) w(i, 0) = double(coef(rng));
  return FVec(matmul_mod(K, w, p).col(0));
}

FMat matmul_mod(const FMat& A, const FMat& B, std::int64_t p) {
  assert(A.cols() == B.rows());
  FMat C = FMat::Zero(A.rows(), B.cols());
  const double dp = double(p);
  for (Eigen::Index k0 = 0; k0 < A.cols(); k0 += kPanel) {
    const Eigen::Index k1 = std::min(A.cols(), k0 + Eigen::Index(kPanel));
    C.noalias() += A.middleCols(k0, k1 - k0) * B.middleRows(k0, k1 - k0);
    fmod_block(C, dp);
  }
  return C;
}

}  // namespace artifact::linalg
