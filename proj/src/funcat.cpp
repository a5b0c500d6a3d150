#include "artifact/funcat.hpp"

#include <algorithm>
#include <stdexcept>

#include "artifact/decomp.hpp"

namespace artifact::funcat {

namespace {

int presentation_maxdeg(std::initializer_list<const PolyMat*> mats) {
  int d = 1;
  for (const PolyMat* A : mats) d = std::max(d, max_degree(*A));
  return d;
}

MatFac free_marker_of(const MatFac& X) {
  PolyMat phi = poly_zero(1, 1), psi = poly_zero(1, 1);
  phi(0, 0) = X.f;
  psi(0, 0) = Poly(1);
  return MatFac{X.nvars, X.f, std::move(phi), std::move(psi), "R"};
}

}  // namespace

Window window_for(const std::string& ring_id, int nmax) {
  Window W;
  W.ring_id = ring_id;
  if (ring_id == "ainf1") {
    W.entries.push_back({"R", 0, catalog::ainf_free(), false});
    for (auto& e : catalog::ainf_window(nmax)) W.entries.push_back(std::move(e));
  } else if (ring_id == "dinf2") {
    W.entries.push_back({"R#", 0, catalog::dinf2_free(), false});
    for (auto& e : catalog::dinf2_window(nmax)) W.entries.push_back(std::move(e));
  } else {
    throw std::invalid_argument("window_for: unknown ring id " + ring_id);
  }
  return W;
}

void window_validate(const Window& W, std::uint64_t seed) {
  for (size_t i = 0; i < W.entries.size(); ++i)
    for (size_t j = i + 1; j < W.entries.size(); ++j)
      if (decomp::mf_iso(W.entries[i].mf, W.entries[j].mf, seed))
        throw std::runtime_error("window_validate: entries " + W.entries[i].label + " and " +
                                 W.entries[j].label + " are isomorphic");
}

FpFunctor functor_from(const MatFac& Y, const MatFac& X, const MorPair& m,
                       const std::string& label) {
  if (Y.nvars != X.nvars || !(Y.f == X.f))
    throw std::invalid_argument("functor_from: ambient mismatch");
  return FpFunctor{label, Y, X, m};
}

FpFunctor hom_functor(const MatFac& X, const std::string& label) {
  const MatFac R = free_marker_of(X);
  MorPair zero{poly_zero(X.size(), 1), poly_zero(X.size(), 1)};
  return FpFunctor{label, R, X, std::move(zero)};
}

FpFunctor h_functor(int n) {
  const catalog::SequenceData s = catalog::ainf_lemma_sequence(n);
  return FpFunctor{"H" + std::to_string(n), s.Y, s.X, s.h};
}

FpFunctor h_prime_functor() {
  return FpFunctor{"H1'", catalog::ainf_I(), catalog::ainf_In(1), catalog::ainf_iota()};
}

FpFunctor g_functor() {
  const catalog::SequenceData s = catalog::dinf2_theorem_sequence();
  return FpFunctor{"G1", s.Y, s.X, s.h};
}

linalg::FMat post_compose_mat(const MatFac& U, const MatFac& Y, const MatFac& X,
                              const MorPair& h, const Ring& ring) {
  const int m = int(U.size());
  PolyMat top = homology::kron_I_B(m, h.alpha);  // vec(alpha_h . alpha)
  PolyMat bot = homology::kron_I_B(m, h.beta);   // vec(beta_h . beta)
  PolyMat block = poly_zero(top.rows() + bot.rows(), top.cols() + bot.cols());
  block.topLeftCorner(top.rows(), top.cols()) = top;
  block.bottomRightCorner(bot.rows(), bot.cols()) = bot;
  (void)Y;
  (void)X;
  return ring.flatten(block);
}

int functor_dim_at(const MatFac& U, const MatFac& Y, const MatFac& X, const MorPair& h,
                   const Ring& lo, const Ring& hi) {
  const int m = int(U.size()), nX = int(X.size());
  auto [LX, HX] = homology::shom_systems(U, X);
  const linalg::FMat KX = linalg::kernel_basis(hi.flatten(LX));
  const std::vector<int> idx = proj_rows(hi, lo, 2 * nX * m);
  const linalg::FMat PKX = KX(idx, Eigen::all);
  const linalg::FMat HXlo = lo.flatten(HX);
  auto [LY, HY] = homology::shom_systems(U, Y);
  (void)HY;
  const linalg::FMat KY = linalg::kernel_basis(hi.flatten(LY));
  const linalg::FMat Chi = post_compose_mat(U, Y, X, h, hi);
  const linalg::FMat img = linalg::matmul_mod(Chi, KY);
  const linalg::FMat Pimg = img(idx, Eigen::all);
  return linalg::rank(linalg::hstack(PKX, HXlo)) - linalg::rank(linalg::hstack(Pimg, HXlo));
}

homology::DimReport functor_report(const MatFac& U, const MatFac& Y, const MatFac& X,
                                   const MorPair& h, int steps) {
  const int md = presentation_maxdeg(
      {&U.phi, &U.psi, &Y.phi, &Y.psi, &X.phi, &X.psi, &h.alpha, &h.beta});
  const int Tmin = 2 * md + 2;
  return homology::dim_ladder(
      [&](const Ring& lo, const Ring& hi) { return functor_dim_at(U, Y, X, h, lo, hi); },
      U.nvars, U.f, Tmin, steps, md + 1, /*modded=*/false);
}

homology::DimReport eval_report(const FpFunctor& F, const MatFac& U, int steps) {
  return functor_report(U, F.Y, F.X, F.m, steps);
}

int eval_dim(const FpFunctor& F, const MatFac& U, int steps) {
  return eval_report(F, U, steps).value();
}

std::vector<homology::DimReport> dim_reports(const FpFunctor& F, const Window& W, int steps) {
  std::vector<homology::DimReport> out;
  out.reserve(W.entries.size());
  for (const catalog::Entry& e : W.entries) out.push_back(eval_report(F, e.mf, steps));
  return out;
}

std::vector<int> dim_vector(const FpFunctor& F, const Window& W, int steps) {
  std::vector<int> out;
  out.reserve(W.entries.size());
  for (const catalog::Entry& e : W.entries) out.push_back(eval_dim(F, e.mf, steps));
  return out;
}

bool exact_surj_at(const MatFac& Y, const MatFac& X, const PolyMat& h_alpha, const Ring& ring) {
  (void)Y;
  const linalg::FMat hh = ring.flatten(h_alpha);
  const linalg::FMat WX = ring.flatten(X.phi);
  return linalg::rank(linalg::hstack(hh, WX)) == int(X.size()) * ring.dim();
}

int exact_mid_defect_at(const MatFac& Z, const MatFac& Y, const MatFac& X,
                        const PolyMat& g_alpha, const PolyMat& h_alpha, const Ring& ring) {
  (void)Z;
  const int D = ring.dim();
  const linalg::FMat hh = ring.flatten(h_alpha);
  const linalg::FMat gg = ring.flatten(g_alpha);
  const linalg::FMat WX = ring.flatten(X.phi);
  const linalg::FMat WY = ring.flatten(Y.phi);
  const int ker_h = int(Y.size()) * D + linalg::rank(WX) - linalg::rank(linalg::hstack(hh, WX));
  const int im_g = linalg::rank(linalg::hstack(gg, WY));
  return ker_h - im_g;
}

int exact_inj_defect_at(const MatFac& Z, const MatFac& Y, const PolyMat& g_alpha, const Ring& lo,
                        const Ring& hi) {
  const linalg::FMat gg = hi.flatten(g_alpha);
  const linalg::FMat WYh = hi.flatten(Y.phi);
  const linalg::FMat K =
      linalg::kernel_basis(linalg::hstack(gg, WYh)).topRows(Eigen::Index(Z.size()) * hi.dim());
  const linalg::FMat PK = K(proj_rows(hi, lo, int(Z.size())), Eigen::all);
  const linalg::FMat WZ = lo.flatten(Z.phi);
  return linalg::rank(linalg::hstack(PK, WZ)) - linalg::rank(WZ);
}

bool ExactnessReport::ok() const {
  if (!first_map_morphism || !surjective) return false;
  for (int d : mid_defects)
    if (d != 0) return false;
  return injectivity.verdict == "Stable(0)";
}

nlohmann::json ExactnessReport::to_json() const {
  return {{"first_map_morphism", first_map_morphism},
          {"surjective", surjective},
          {"mid_defects", mid_defects},
          {"injectivity", injectivity.to_json()},
          {"solved", solved},
          {"ok", ok()}};
}

namespace {

ExactnessReport run_exactness(const MatFac& Z, const MatFac& Y, const MatFac& X, const MorPair& g,
                              const MorPair& h, int Tmin, int steps, int delta) {
  ExactnessReport rep;
  rep.surjective = true;
  for (int T = Tmin; T < Tmin + steps; ++T) {
    Ring ring(Z.nvars, Z.f, fp::prime, T);
    if (!exact_surj_at(Y, X, h.alpha, ring)) rep.surjective = false;
    rep.mid_defects.push_back(exact_mid_defect_at(Z, Y, X, g.alpha, h.alpha, ring));
  }
  rep.injectivity = homology::dim_ladder(
      [&](const Ring& lo, const Ring& hi) { return exact_inj_defect_at(Z, Y, g.alpha, lo, hi); },
      Z.nvars, Z.f, Tmin, steps, delta, /*modded=*/false);
  return rep;
}

}  // namespace

ExactnessReport exactness_check(const MatFac& Z, const MatFac& Y, const MatFac& X,
                                const MorPair& g, const MorPair& h, int steps) {
  const int md = presentation_maxdeg(
      {&Z.phi, &Z.psi, &Y.phi, &Y.psi, &X.phi, &X.psi, &g.alpha, &h.alpha});
  ExactnessReport rep = run_exactness(Z, Y, X, g, h, 2 * md + 2, steps, md + 1);
  rep.first_map_morphism = pair_is_morphism(Z, Y, g);
  return rep;
}

ExactnessReport exactness_check(const catalog::SequenceData& seq, int steps) {
  return exactness_check(seq.Z, seq.Y, seq.X, seq.g, seq.h, steps);
}

linalg::FMat solve_first_map(const MatFac& Z, const MatFac& Y, const MatFac& X, const MorPair& h,
                             const Ring& ring) {
  using homology::kron_AT_I;
  using homology::kron_I_B;
  using homology::poly_hstack;
  using homology::poly_vstack;
  const int nX = int(X.size()), nY = int(Y.size()), nZ = int(Z.size());
  const PolyMat A11 = kron_AT_I(Z.phi, nY);
  const PolyMat A12 = -kron_I_B(nZ, Y.phi);
  const PolyMat A21 = -kron_I_B(nZ, Y.psi);
  const PolyMat A22 = kron_AT_I(Z.psi, nY);
  const PolyMat B1 = kron_I_B(nZ, h.alpha);
  const PolyMat B3 = -kron_I_B(nZ, X.phi);
  const PolyMat zc = poly_zero(A11.rows(), nX * nZ);
  const PolyMat z12 = poly_zero(B1.rows(), nY * nZ);
  const PolyMat rows =
      poly_vstack(poly_vstack(poly_hstack(poly_hstack(A11, A12), zc),
                              poly_hstack(poly_hstack(A21, A22), zc)),
                  poly_hstack(poly_hstack(B1, z12), B3));
  return linalg::kernel_basis(ring.flatten(rows));
}

ExactnessReport exactness_check_solved(const MatFac& Z, const MatFac& Y, const MatFac& X,
                                       const MorPair& h, int steps, std::uint64_t seed) {
  const int md = presentation_maxdeg(
      {&Z.phi, &Z.psi, &Y.phi, &Y.psi, &X.phi, &X.psi, &h.alpha, &h.beta});
  const int Tmin = 2 * md + 2, delta = md + 1;
  const int T_top = Tmin + steps - 1 + delta;
  Ring top(Z.nvars, Poly(), fp::prime, T_top);  // ambient: relations mod m^T_top
  const linalg::FMat K = solve_first_map(Z, Y, X, h, top);
  ExactnessReport rep;
  rep.solved = true;
  if (K.cols() == 0) return rep;  // no candidate first map at all
  const auto v = linalg::generic_combo(K, seed);
  const int nY = int(Y.size()), nZ = int(Z.size());
  const MorPair g =
      homology::vec_to_pair(Z, Y, top, linalg::FVec(v->head(2 * nY * nZ * top.dim())));
  rep = run_exactness(Z, Y, X, g, h, Tmin, steps, delta);
  rep.solved = true;
  rep.first_map_morphism = pair_is_morphism(Z, Y, g, T_top);
  return rep;
}

bool section_solvable(const MatFac& X, const MatFac& Y, const MorPair& h, const Ring& ring) {
  using homology::kron_AT_I;
  using homology::kron_I_B;
  using homology::poly_hstack;
  using homology::poly_vstack;
  const int nX = int(X.size()), nY = int(Y.size());
  const PolyMat A11 = kron_AT_I(X.phi, nY);
  const PolyMat A12 = -kron_I_B(nX, Y.phi);
  const PolyMat A21 = -kron_I_B(nX, Y.psi);
  const PolyMat A22 = kron_AT_I(X.psi, nY);
  const PolyMat B1 = kron_I_B(nX, h.alpha);
  const PolyMat B3 = -kron_I_B(nX, X.phi);
  const PolyMat zc = poly_zero(A11.rows(), nX * nX);
  const PolyMat z12 = poly_zero(B1.rows(), nX * nY);
  const PolyMat rows =
      poly_vstack(poly_vstack(poly_hstack(poly_hstack(A11, A12), zc),
                              poly_hstack(poly_hstack(A21, A22), zc)),
                  poly_hstack(poly_hstack(B1, z12), B3));
  const linalg::FMat A = ring.flatten(rows);
  // rhs: vec(I_{nX}) in the composite block, zeros elsewhere
  linalg::FMat b = linalg::FMat::Zero(A.rows(), 1);
  const int off = 2 * nY * nX * ring.dim();
  for (int i = 0; i < nX; ++i) b(off + (i * nX + i) * ring.dim(), 0) = 1.0;
  return linalg::rank(A) == linalg::rank(linalg::hstack(A, b));
}

nlohmann::json ArReport::to_json() const {
  nlohmann::json cok = nlohmann::json::object();
  for (size_t i = 0; i < window_labels.size(); ++i)
    cok[window_labels[i]] = cokernel[i].to_json();
  return {{"n", n},
          {"exact", exact.to_json()},
          {"section_at", section_at},
          {"split", split},
          {"cokernel", cok},
          {"almost_split", almost_split},
          {"ok", ok()}};
}

ArReport ar_verify(int n, const Window& W, int steps) {
  if (W.ring_id != "ainf1")
    throw std::invalid_argument("ar_verify: AR sequences are set up over the ainf1 ring");
  const catalog::SequenceData s = catalog::ainf_ar_sequence(n);
  ArReport rep;
  rep.n = n;
  rep.exact = exactness_check(s, steps);
  const int T0 = 2 * presentation_maxdeg({&s.Y.phi, &s.X.phi, &s.h.alpha}) + 2;
  for (int T : {T0, T0 + 1}) {
    Ring ring(s.X.nvars, s.X.f, fp::prime, T);
    rep.section_at.push_back(section_solvable(s.X, s.Y, s.h, ring));
  }
  rep.split = std::any_of(rep.section_at.begin(), rep.section_at.end(), [](bool b) { return b; });
  const std::string self = "I" + std::to_string(n);
  rep.almost_split = true;
  for (const catalog::Entry& e : W.entries) {
    rep.window_labels.push_back(e.label);
    rep.cokernel.push_back(functor_report(e.mf, s.Y, s.X, s.h, steps));
    const homology::DimReport& r = rep.cokernel.back();
    const int want = e.label == self ? 1 : 0;
    if (!r.is_stable() || r.trace.back().second != want) rep.almost_split = false;
  }
  return rep;
}

}  // namespace artifact::funcat
