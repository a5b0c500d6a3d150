#include "artifact/decomp.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

#include "artifact/homology.hpp"

namespace artifact::decomp {

linalg::FMat const_part(const PolyMat& A) {
  linalg::FMat C = linalg::FMat::Zero(A.rows(), A.cols());
  for (Eigen::Index j = 0; j < A.cols(); ++j)
    for (Eigen::Index i = 0; i < A.rows(); ++i) C(i, j) = double(A(i, j).constant_term());
  return C;
}

std::optional<linalg::FMat> fp_inverse(const linalg::FMat& C, std::int64_t p) {
  const Eigen::Index n = C.rows();
  if (n != C.cols()) return std::nullopt;
  auto [rank, piv, R] = linalg::echelon(linalg::hstack(C, linalg::FMat::Identity(n, n)), p,
                                        /*reduced=*/true);
  if (rank < int(n)) return std::nullopt;
  for (Eigen::Index j = 0; j < n; ++j)
    if (piv[size_t(j)] != int(j)) return std::nullopt;
  return linalg::FMat(R.block(0, n, n, n));
}

PolyMat fp_to_poly(const linalg::FMat& C) {
  PolyMat A = poly_zero(C.rows(), C.cols());
  for (Eigen::Index j = 0; j < C.cols(); ++j)
    for (Eigen::Index i = 0; i < C.rows(); ++i) {
      const auto c = std::int64_t(C(i, j));
      if (c % fp::prime) A(i, j) = Poly(c);
    }
  return A;
}

Poly poly_inverse(const Poly& a, int T) {
  const std::int64_t c0 = a.constant_term();
  if (c0 == 0) throw std::invalid_argument("poly_inverse: constant term is zero");
  const std::int64_t c0i = fp::inverse(c0);
  const Poly nm = Poly(1) - a.scaled(c0i).truncated(T);  // in the maximal ideal
  Poly acc(1), term(1);
  for (int k = 0; k < T; ++k) {
    term = term.mul_trunc(nm, T);
    if (term.is_zero()) break;
    acc += term;
  }
  return acc.scaled(c0i);
}

PolyMat poly_mat_inv(const PolyMat& A, int T) {
  const Eigen::Index n = A.rows();
  auto C0i = fp_inverse(const_part(A));
  if (!C0i) throw std::invalid_argument("poly_mat_inv: constant part is singular");
  const PolyMat C0ip = fp_to_poly(*C0i);
  const PolyMat Nm = poly_identity(n) - mul_trunc(C0ip, A, T);
  PolyMat acc = poly_identity(n), term = poly_identity(n);
  for (int k = 0; k < T; ++k) {
    term = mul_trunc(term, Nm, T);
    bool zero = true;
    for (Eigen::Index j = 0; j < n && zero; ++j)
      for (Eigen::Index i = 0; i < n && zero; ++i)
        if (!term(i, j).is_zero()) zero = false;
    if (zero) break;
    acc = acc + term;
  }
  return mul_trunc(acc, C0ip, T);
}

namespace {

PolyMat drop_row_col(const PolyMat& A, Eigen::Index ri, Eigen::Index cj) {
  PolyMat R = poly_zero(A.rows() - 1, A.cols() - 1);
  for (Eigen::Index i = 0, r = 0; i < A.rows(); ++i) {
    if (i == ri) continue;
    for (Eigen::Index j = 0, c = 0; j < A.cols(); ++j) {
      if (j == cj) continue;
      R(r, c++) = A(i, j);
    }
    ++r;
  }
  return R;
}

}  // namespace

std::pair<MatFac, int> mf_reduce_counted(const MatFac& M, int T) {
  if (T < 0) T = 2 * std::max({1, max_degree(M.phi), max_degree(M.psi)}) + 4;
  PolyMat phi = M.phi, psi = M.psi;
  int free_rank = 0;
  bool changed = true;
  while (changed && phi.rows() > 0) {
    changed = false;
    const Eigen::Index n = phi.rows();
    for (int which = 0; which < 2 && !changed; ++which) {
      PolyMat& mat = which ? psi : phi;
      PolyMat& other = which ? phi : psi;
      for (Eigen::Index i = 0; i < n && !changed; ++i)
        for (Eigen::Index j = 0; j < n && !changed; ++j) {
          if (mat(i, j).constant_term() == 0) continue;
          // unit pivot at (i, j): clear its column and row, then cut.
          // fac uses the truncated inverse of the full entry, so the
          // cleared positions vanish mod m^T, not just their residues.
          const Poly ainv = poly_inverse(mat(i, j), T);
          for (Eigen::Index r = 0; r < n; ++r) {
            if (r == i || mat(r, j).is_zero()) continue;
            const Poly fac = -(mat(r, j).mul_trunc(ainv, T));
            for (Eigen::Index cc = 0; cc < n; ++cc)
              mat(r, cc) += fac.mul_trunc(mat(i, cc), T);
            for (Eigen::Index cc = 0; cc < n; ++cc)
              other(cc, i) += (-fac).mul_trunc(other(cc, r), T);
          }
          for (Eigen::Index c = 0; c < n; ++c) {
            if (c == j || mat(i, c).is_zero()) continue;
            const Poly fac = -(mat(i, c).mul_trunc(ainv, T));
            for (Eigen::Index rr = 0; rr < n; ++rr)
              mat(rr, c) += fac.mul_trunc(mat(rr, j), T);
            for (Eigen::Index rr = 0; rr < n; ++rr)
              other(j, rr) += (-fac).mul_trunc(other(c, rr), T);
          }
          PolyMat mat2 = drop_row_col(mat, i, j);
          PolyMat oth2 = drop_row_col(other, j, i);
          if (which) {
            ++free_rank;  // unit in psi: an (f, 1) block = free summand
            psi = std::move(mat2);
            phi = std::move(oth2);
          } else {
            phi = std::move(mat2);
            psi = std::move(oth2);
          }
          changed = true;
        }
    }
  }
  return {MatFac{M.nvars, M.f, std::move(phi), std::move(psi), M.label + "'"}, free_rank};
}

MatFac mf_reduce(const MatFac& M, int T) { return mf_reduce_counted(M, T).first; }

std::optional<MorPair> mf_iso_pair(const MatFac& M, const MatFac& N, std::uint64_t seed,
                                   int tries, int T) {
  if (M.size() != N.size() || M.nvars != N.nvars || !(M.f == N.f)) return std::nullopt;
  if (T < 0)
    T = 2 * std::max({1, max_degree(M.phi), max_degree(M.psi), max_degree(N.phi),
                      max_degree(N.psi)}) +
        2;
  Ring ring(M.nvars, M.f, fp::prime, T);
  const linalg::FMat K = homology::morphism_space(M, N, ring);
  if (K.cols() == 0) return std::nullopt;
  for (int t = 0; t < tries; ++t) {
    const auto v = linalg::generic_combo(K, seed + std::uint64_t(t));
    const MorPair h = homology::vec_to_pair(M, N, ring, *v);
    if (fp_inverse(const_part(h.alpha)) && fp_inverse(const_part(h.beta))) return h;
  }
  return std::nullopt;
}

bool mf_iso(const MatFac& M, const MatFac& N, std::uint64_t seed, int tries, int T) {
  return mf_iso_pair(M, N, seed, tries, T).has_value();
}

namespace {

// Q with Q^{-1} C Q = diag(1..1, 0..0) for an idempotent residue C: image
// columns first, kernel columns after.
std::optional<linalg::FMat> diag_idem(const linalg::FMat& C) {
  const Eigen::Index n = C.rows();
  auto ech = linalg::echelon(C, fp::prime);
  linalg::FMat img(n, ech.rank);
  for (int k = 0; k < ech.rank; ++k) img.col(k) = C.col(ech.pivots[size_t(k)]);
  const linalg::FMat Kc = linalg::kernel_basis(C);
  if (ech.rank + Kc.cols() != n) return std::nullopt;
  linalg::FMat Q = ech.rank ? linalg::hstack(img, Kc) : Kc;
  if (!fp_inverse(Q)) return std::nullopt;
  return Q;
}

bool poly_block_is_zero(const PolyMat& A, Eigen::Index r0, Eigen::Index r1, Eigen::Index c0,
                        Eigen::Index c1) {
  for (Eigen::Index i = r0; i < r1; ++i)
    for (Eigen::Index j = c0; j < c1; ++j)
      if (!A(i, j).is_zero()) return false;
  return true;
}

}  // namespace

std::optional<std::pair<MatFac, MatFac>> split_by_idempotent(const MatFac& M, const MorPair& e,
                                                             int T) {
  const Eigen::Index n = M.size();
  const linalg::FMat c0a = const_part(e.alpha), c0b = const_part(e.beta);
  if (linalg::mod_p(linalg::matmul_mod(c0a, c0a) - c0a).cwiseAbs().sum() != 0.0)
    return std::nullopt;
  if (linalg::mod_p(linalg::matmul_mod(c0b, c0b) - c0b).cwiseAbs().sum() != 0.0)
    return std::nullopt;
  const auto Qa = diag_idem(c0a), Qb = diag_idem(c0b);
  if (!Qa || !Qb) return std::nullopt;
  const Eigen::Index ra = linalg::rank(c0a), rb = linalg::rank(c0b);
  if (ra != rb || ra == 0 || ra == n) return std::nullopt;
  const PolyMat Pa = fp_to_poly(*Qa), Pai = fp_to_poly(*fp_inverse(*Qa));
  const PolyMat Pb = fp_to_poly(*Qb), Pbi = fp_to_poly(*fp_inverse(*Qb));
  const PolyMat ea2 = mul_trunc(mul_trunc(Pai, e.alpha, T), Pa, T);
  const PolyMat eb2 = mul_trunc(mul_trunc(Pbi, e.beta, T), Pb, T);
  PolyMat E = poly_zero(n, n);
  for (Eigen::Index i = 0; i < ra; ++i) E(i, i) = Poly(1);
  const PolyMat Id = poly_identity(n);
  // P = E e' + (I - E)(I - e') is congruent to I mod m and satisfies
  // P e' = E P; conjugating by P^{-1} makes the idempotent exactly E.
  const PolyMat Pa2 = PolyMat(E * ea2) + PolyMat(PolyMat(Id - E) * PolyMat(Id - ea2));
  const PolyMat Pb2 = PolyMat(E * eb2) + PolyMat(PolyMat(Id - E) * PolyMat(Id - eb2));
  const PolyMat Pa2i = poly_mat_inv(Pa2, T);
  const PolyMat Pb2i = poly_mat_inv(Pb2, T);
  const PolyMat phi1 = mul_trunc(mul_trunc(Pai, M.phi, T), Pb, T);
  const PolyMat psi1 = mul_trunc(mul_trunc(Pbi, M.psi, T), Pa, T);
  const PolyMat phi2 = mul_trunc(mul_trunc(Pa2, phi1, T), Pb2i, T);
  const PolyMat psi2 = mul_trunc(mul_trunc(Pb2, psi1, T), Pa2i, T);
  if (!poly_block_is_zero(phi2, 0, ra, ra, n) || !poly_block_is_zero(phi2, ra, n, 0, ra) ||
      !poly_block_is_zero(psi2, 0, ra, ra, n) || !poly_block_is_zero(psi2, ra, n, 0, ra))
    return std::nullopt;
  MatFac A{M.nvars, M.f, PolyMat(phi2.topLeftCorner(ra, ra)),
           PolyMat(psi2.topLeftCorner(ra, ra)), M.label + ".a"};
  MatFac B{M.nvars, M.f, PolyMat(phi2.bottomRightCorner(n - ra, n - ra)),
           PolyMat(psi2.bottomRightCorner(n - ra, n - ra)), M.label + ".b"};
  return std::pair{std::move(A), std::move(B)};
}

std::optional<MatFac> try_split_off(const MatFac& M, const MatFac& U, std::uint64_t seed,
                                    int tries, int T) {
  if (T < 0)
    T = 2 * std::max({1, max_degree(M.phi), max_degree(M.psi), max_degree(U.phi),
                      max_degree(U.psi)}) +
        4;
  // ambient ring: solved pairs satisfy the intertwining relations mod m^T
  // exactly (no mod-f garbage), so the idempotent identities below hold
  // mod m^T and truncated-at-T storage makes the off-blocks literally zero.
  Ring ring(M.nvars, Poly(), fp::prime, T);
  const linalg::FMat Kr = homology::morphism_space(M, U, ring);
  const linalg::FMat Ks = homology::morphism_space(U, M, ring);
  if (Kr.cols() == 0 || Ks.cols() == 0) return std::nullopt;
  for (int t = 0; t < tries; ++t) {
    const auto vr = linalg::generic_combo(Kr, seed + 1000 + std::uint64_t(t));
    const auto vs = linalg::generic_combo(Ks, seed + 5000 + std::uint64_t(t));
    const MorPair r = homology::vec_to_pair(M, U, ring, *vr);
    const MorPair s = homology::vec_to_pair(U, M, ring, *vs);
    const PolyMat tha = mul_trunc(r.alpha, s.alpha, T);  // theta: U -> U
    const PolyMat thb = mul_trunc(r.beta, s.beta, T);
    if (!fp_inverse(const_part(tha)) || !fp_inverse(const_part(thb))) continue;
    // e = s o theta^{-1} o r : M -> M, exact idempotent pair mod m^T
    const MorPair e{mul_trunc(mul_trunc(s.alpha, poly_mat_inv(tha, T), T), r.alpha, T),
                    mul_trunc(mul_trunc(s.beta, poly_mat_inv(thb, T), T), r.beta, T)};
    auto blocks = split_by_idempotent(M, e, T);
    if (!blocks) continue;
    if (blocks->first.size() == U.size() && mf_iso(blocks->first, U, seed, 24, T - 2))
      return std::move(blocks->second);
  }
  return std::nullopt;
}

nlohmann::json DecompResult::to_json() const {
  nlohmann::json c = nlohmann::json::object();
  for (const auto& [label, count] : counts) c[label] = count;
  nlohmann::json res = nlohmann::json::array();
  for (const MatFac& r : residual) res.push_back({{"size", r.size()}, {"label", r.label}});
  return {{"counts", c}, {"free", free_rank}, {"residual", res}, {"complete", complete()}};
}

DecompResult mf_decompose(const MatFac& M, const std::vector<catalog::Entry>& cat,
                          std::uint64_t seed, int T) {
  if (T < 0) {
    int md = std::max({1, max_degree(M.phi), max_degree(M.psi)});
    for (const auto& e : cat)
      md = std::max({md, max_degree(e.mf.phi), max_degree(e.mf.psi)});
    T = md + 6;
  }
  DecompResult out;
  auto [work, free_rank] = mf_reduce_counted(M, T);
  out.free_rank = free_rank;
  bool alive = work.size() > 0;
  for (int guard = 0; alive && guard < 40; ++guard) {
    bool matched = false;
    for (const catalog::Entry& e : cat) {
      if (e.mf.size() > work.size()) continue;
      if (e.mf.size() == work.size()) {
        if (mf_iso(work, e.mf, seed, 24, T - 2)) {
          ++out.counts[e.label];
          out.blocks.push_back(e.mf);
          alive = false;
          matched = true;
          break;
        }
        continue;
      }
      auto piece = try_split_off(work, e.mf, seed, 24, T);
      if (piece) {
        ++out.counts[e.label];
        out.blocks.push_back(e.mf);
        work = std::move(*piece);
        matched = true;
        break;
      }
    }
    if (!matched) {
      out.residual.push_back(work);
      alive = false;
    }
  }
  return out;
}

MatFac mf_conjugate(const MatFac& M, const linalg::FMat& Q0, const linalg::FMat& Q1) {
  const auto Q0i = fp_inverse(Q0), Q1i = fp_inverse(Q1);
  if (!Q0i || !Q1i) throw std::invalid_argument("mf_conjugate: singular basis change");
  const PolyMat phi = fp_to_poly(*Q0i) * M.phi * fp_to_poly(Q1);
  const PolyMat psi = fp_to_poly(*Q1i) * M.psi * fp_to_poly(Q0);
  return mf_validate(M.nvars, M.f, phi, psi, M.label + "~");
}

linalg::FMat random_invertible(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::int64_t> coef(0, fp::prime - 1);
  for (;;) {
    linalg::FMat Q(n, n);
    for (Eigen::Index j = 0; j < n; ++j)
      for (Eigen::Index i = 0; i < n; ++i) Q(i, j) = double(coef(rng));
    if (fp_inverse(Q)) return Q;
  }
}

}  // namespace artifact::decomp
