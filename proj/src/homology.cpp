#include "artifact/homology.hpp"

#include <algorithm>
#include <stdexcept>

#include "artifact/decomp.hpp"

namespace artifact::homology {

int DimReport::value() const {
  if (!is_stable()) throw std::runtime_error("DimReport: verdict is " + verdict + ", not Stable");
  return trace.back().second;
}

nlohmann::json DimReport::to_json() const {
  nlohmann::json pairs = nlohmann::json::array();
  for (const auto& [T, d] : trace) pairs.push_back({T, d});
  return {{"pairs", pairs}, {"verdict", verdict}};
}

DimReport dim_ladder(const LevelFn& fn, int nvars, const Poly& f, int Tmin, int steps,
                     int delta, bool modded) {
  const Poly fmod = modded ? f : Poly();
  DimReport rep;
  for (int T = Tmin; T < Tmin + steps; ++T) {
    Ring lo(nvars, fmod, fp::prime, T);
    Ring hi(nvars, fmod, fp::prime, T + delta);
    const int d = fn(lo, hi);
    rep.trace.emplace_back(T, d);
    const auto k = rep.trace.size();
    if (k >= 2 && rep.trace[k - 1].second == rep.trace[k - 2].second) {
      rep.verdict = "Stable(" + std::to_string(d) + ")";
      return rep;
    }
  }
  int incs = 0;
  bool strict_all = true;
  for (size_t i = 1; i < rep.trace.size(); ++i) {
    if (rep.trace[i].second > rep.trace[i - 1].second)
      ++incs;
    else
      strict_all = false;
  }
  rep.verdict = (strict_all && incs >= 3) ? "Growing" : "Undetermined";
  return rep;
}

PolyMat kron_AT_I(const PolyMat& A, int k) {
  const Eigen::Index a = A.rows(), b = A.cols();
  PolyMat Z = poly_zero(b * k, a * k);
  for (Eigen::Index i = 0; i < b; ++i)
    for (Eigen::Index j = 0; j < a; ++j) {
      const Poly& e = A(j, i);
      if (e.is_zero()) continue;
      for (int t = 0; t < k; ++t) Z(i * k + t, j * k + t) = e;
    }
  return Z;
}

PolyMat kron_I_B(int k, const PolyMat& B) {
  const Eigen::Index r = B.rows(), c = B.cols();
  PolyMat Z = poly_zero(k * r, k * c);
  for (int t = 0; t < k; ++t) Z.block(t * r, t * c, r, c) = B;
  return Z;
}

PolyMat poly_hstack(const PolyMat& A, const PolyMat& B) {
  assert(A.rows() == B.rows());
  PolyMat R(A.rows(), A.cols() + B.cols());
  R.leftCols(A.cols()) = A;
  R.rightCols(B.cols()) = B;
  return R;
}

PolyMat poly_vstack(const PolyMat& A, const PolyMat& B) {
  assert(A.cols() == B.cols());
  PolyMat R(A.rows() + B.rows(), A.cols());
  R.topRows(A.rows()) = A;
  R.bottomRows(B.rows()) = B;
  return R;
}

std::pair<PolyMat, PolyMat> shom_systems(const MatFac& M, const MatFac& N) {
  const int m = int(M.size()), n = int(N.size());
  PolyMat A11 = kron_AT_I(M.phi, n);        // vec(alpha phi_M)
  PolyMat A12 = -kron_I_B(m, N.phi);        // -vec(phi_N beta)
  PolyMat A21 = -kron_I_B(m, N.psi);        // -vec(psi_N alpha)
  PolyMat A22 = kron_AT_I(M.psi, n);        // vec(beta psi_M)
  PolyMat L = poly_vstack(poly_hstack(A11, A12), poly_hstack(A21, A22));
  PolyMat H11 = kron_I_B(m, N.phi);         // vec(phi_N gamma)
  PolyMat H12 = kron_AT_I(M.psi, n);        // vec(delta psi_M)
  PolyMat H21 = kron_AT_I(M.phi, n);        // vec(gamma phi_M)
  PolyMat H22 = kron_I_B(m, N.psi);         // vec(psi_N delta)
  PolyMat H = poly_vstack(poly_hstack(H11, H12), poly_hstack(H21, H22));
  return {std::move(L), std::move(H)};
}

linalg::FVec pair_to_vec(const MatFac& M, const MatFac& N, const Ring& ring, const MorPair& h) {
  const int m = int(M.size()), n = int(N.size()), D = ring.dim();
  linalg::FVec v = linalg::FVec::Zero(2 * n * m * D);
  for (int t = 0; t < 2; ++t) {
    const PolyMat& mat = t == 0 ? h.alpha : h.beta;
    for (int j = 0; j < m; ++j)
      for (int i = 0; i < n; ++i)
        v.segment((t * n * m + (j * n + i)) * D, D) = ring.nf(mat(i, j));
  }
  return v;
}

MorPair vec_to_pair(const MatFac& M, const MatFac& N, const Ring& ring, const linalg::FVec& v) {
  const int m = int(M.size()), n = int(N.size()), D = ring.dim();
  auto block = [&](int off, int i, int j) {
    Poly out;
    for (int b = 0; b < D; ++b) {
      const auto c = std::int64_t(v(off + (j * n + i) * D + b));
      if (c % fp::prime)
        out += Poly::monomial(ring.basis()[size_t(b)], c);
    }
    return out;
  };
  MorPair h{poly_zero(n, m), poly_zero(n, m)};
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < m; ++j) {
      h.alpha(i, j) = block(0, i, j);
      h.beta(i, j) = block(n * m * D, i, j);
    }
  return h;
}

std::pair<linalg::FMat, linalg::FMat> stable_classes(const MatFac& M, const MatFac& N,
                                                     const Ring& lo, const Ring& hi) {
  const int m = int(M.size()), n = int(N.size());
  auto [L, H] = shom_systems(M, N);
  linalg::FMat K = linalg::kernel_basis(hi.flatten(L));
  const std::vector<int> idx = proj_rows(hi, lo, 2 * n * m);
  linalg::FMat PK = K(idx, Eigen::all);
  return {std::move(PK), lo.flatten(H)};
}

linalg::FMat morphism_space(const MatFac& M, const MatFac& N, const Ring& ring) {
  auto [L, H] = shom_systems(M, N);
  (void)H;
  return linalg::kernel_basis(ring.flatten(L));
}

int stable_hom_at(const MatFac& M, const MatFac& N, const Ring& lo, const Ring& hi) {
  auto [PK, Hlo] = stable_classes(M, N, lo, hi);
  return linalg::rank(linalg::hstack(PK, Hlo)) - linalg::rank(Hlo);
}

int ext1_at(const MatFac& M, const MatFac& N, const Ring& lo, const Ring& hi) {
  const int m = int(M.size()), n = int(N.size());
  PolyMat psiT = kron_AT_I(M.psi, n);
  PolyMat phiT = kron_AT_I(M.phi, n);
  PolyMat Wm = kron_I_B(m, N.phi);
  linalg::FMat Ahi = linalg::hstack(hi.flatten(psiT), hi.flatten(Wm));
  linalg::FMat K = linalg::kernel_basis(Ahi).topRows(n * m * hi.dim());  // v-part of (v; w)
  linalg::FMat PK = K(proj_rows(hi, lo, n * m), Eigen::all);
  linalg::FMat B = linalg::hstack(lo.flatten(phiT), lo.flatten(Wm));
  return linalg::rank(linalg::hstack(PK, B)) - linalg::rank(B);
}

int hom_module_dim(const MatFac& M, const MatFac& N, const Ring& ring) {
  const int m = int(M.size()), n = int(N.size());
  linalg::FMat phiT = ring.flatten(kron_AT_I(M.phi, n));
  linalg::FMat W = ring.flatten(kron_I_B(m, N.phi));
  return n * m * ring.dim() - linalg::rank(linalg::hstack(phiT, W));
}

namespace {

int presentation_maxdeg(std::initializer_list<const PolyMat*> mats) {
  int d = 1;
  for (const PolyMat* A : mats) d = std::max(d, max_degree(*A));
  return d;
}

}  // namespace

DimReport stable_hom_dim(const MatFac& M, const MatFac& N, int steps) {
  if (M.nvars != N.nvars || !(M.f == N.f))
    throw std::invalid_argument("stable_hom_dim: ambient mismatch");
  const int md = presentation_maxdeg({&M.phi, &M.psi, &N.phi, &N.psi});
  const int Tmin = 2 * md + 2;
  return dim_ladder([&](const Ring& lo, const Ring& hi) { return stable_hom_at(M, N, lo, hi); },
                    M.nvars, M.f, Tmin, steps, md + 1, /*modded=*/false);
}

DimReport ext1_dim(const MatFac& M, const MatFac& N, int steps) {
  if (M.nvars != N.nvars || !(M.f == N.f))
    throw std::invalid_argument("ext1_dim: ambient mismatch");
  const int md = presentation_maxdeg({&M.phi, &M.psi, &N.phi, &N.psi});
  const int Tmin = 2 * md + 2;
  return dim_ladder([&](const Ring& lo, const Ring& hi) { return ext1_at(M, N, lo, hi); },
                    M.nvars, M.f, Tmin, steps, md + 1, /*modded=*/true);
}

int mu_multiplicity(const MatFac& U, const MatFac& X, const std::vector<catalog::Entry>& cat,
                    std::uint64_t seed) {
  if (decomp::mf_reduce(U).size() == 0) return 0;  // stably zero: never a summand
  decomp::DecompResult res = decomp::mf_decompose(X, cat, seed);
  if (!res.residual.empty())
    throw std::runtime_error("mu_multiplicity: decomposition left unidentified blocks");
  int total = 0;
  for (const auto& [label, count] : res.counts) {
    for (const catalog::Entry& e : cat) {
      if (e.label != label) continue;
      if (decomp::mf_iso(e.mf, U)) total += count;
      break;
    }
  }
  return total;
}

std::pair<int, int> ar_defect(const MatFac& U, const catalog::SequenceData& seq,
                              const std::vector<catalog::Entry>& cat, int steps) {
  const int dX = stable_hom_dim(U, seq.X, steps).value();
  const int dZ = stable_hom_dim(U, seq.Z, steps).value();
  const int dY = stable_hom_dim(U, seq.Y, steps).value();
  const int lhs = dX + dZ - dY;
  const int rhs = mu_multiplicity(U, seq.X, cat) + mu_multiplicity(U, mf_shift(seq.X), cat);
  return {lhs, rhs};
}

}  // namespace artifact::homology
