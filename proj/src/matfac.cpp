#include "artifact/matfac.hpp"

#include <stdexcept>

namespace artifact {

MatFac mf_validate(int nvars, const Poly& f, const PolyMat& phi, const PolyMat& psi,
                   const std::string& label) {
  if (phi.rows() != phi.cols() || psi.rows() != psi.cols() || phi.rows() != psi.rows())
    throw std::invalid_argument("mf_validate: factors must be square of equal size");
  const Eigen::Index n = phi.rows();
  const PolyMat fid = scaled_identity(n, f);
  for (auto prod : {std::pair{PolyMat(phi * psi), "phi*psi"}, {PolyMat(psi * phi), "psi*phi"}}) {
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = 0; j < n; ++j)
        if (!(prod.first(i, j) == fid(i, j)))
          throw std::invalid_argument(std::string("mf_validate: ") + prod.second + " differs from f*I at entry (" +
                                      std::to_string(i) + "," + std::to_string(j) + ")" +
                                      (label.empty() ? "" : " of " + label));
  }
  return MatFac{nvars, f, phi, psi, label};
}

void mf_validate(const MatFac& M) {
  mf_validate(M.nvars, M.f, M.phi, M.psi, M.label);
}

MatFac mf_shift(const MatFac& M) {
  return MatFac{M.nvars, M.f, M.psi, M.phi, M.label + "[1]"};
}

MatFac mf_direct_sum(const MatFac& M, const MatFac& N) {
  if (M.nvars != N.nvars || !(M.f == N.f))
    throw std::invalid_argument("mf_direct_sum: ambient mismatch");
  const Eigen::Index n = M.size(), m = N.size();
  PolyMat phi = poly_zero(n + m, n + m), psi = poly_zero(n + m, n + m);
  phi.topLeftCorner(n, n) = M.phi;
  phi.bottomRightCorner(m, m) = N.phi;
  psi.topLeftCorner(n, n) = M.psi;
  psi.bottomRightCorner(m, m) = N.psi;
  return MatFac{M.nvars, M.f, phi, psi, M.label + "+" + N.label};
}

MatFac mf_cone(const MatFac& M, const MatFac& N, const MorPair& m) {
  if (M.nvars != N.nvars || !(M.f == N.f))
    throw std::invalid_argument("mf_cone: ambient mismatch");
  if (!pair_is_morphism(M, N, m)) throw std::invalid_argument("mf_cone: not a morphism pair");
  const Eigen::Index nN = N.size(), nM = M.size();
  PolyMat phi = poly_zero(nN + nM, nN + nM), psi = poly_zero(nN + nM, nN + nM);
  phi.topLeftCorner(nN, nN) = N.phi;
  for (Eigen::Index i = 0; i < nN; ++i)
    for (Eigen::Index j = 0; j < nM; ++j) phi(i, nN + j) = -m.alpha(i, j);
  phi.bottomRightCorner(nM, nM) = M.psi;
  psi.topLeftCorner(nN, nN) = N.psi;
  psi.block(0, nN, nN, nM) = m.beta;
  psi.bottomRightCorner(nM, nM) = M.phi;
  return mf_validate(M.nvars, M.f, phi, psi, "cone(" + M.label + "->" + N.label + ")");
}

MatFac mf_knorrer_sharp(const MatFac& M) {
  const int nv = M.nvars + 1;
  if (nv > kMaxVars) throw std::invalid_argument("mf_knorrer_sharp: variable limit");
  const Eigen::Index n = M.size();
  // the new variable z goes into the slot right after the existing ones
  Mono zm;
  zm.e[size_t(M.nvars)] = 1;
  const Poly z = Poly::monomial(zm);
  Mono z2m;
  z2m.e[size_t(M.nvars)] = 2;
  const Poly f_sharp = M.f + Poly::monomial(z2m);
  PolyMat Phi = poly_zero(2 * n, 2 * n);
  Phi.topLeftCorner(n, n) = scaled_identity(n, z);
  Phi.topRightCorner(n, n) = M.phi;
  Phi.bottomLeftCorner(n, n) = M.psi;
  Phi.bottomRightCorner(n, n) = scaled_identity(n, -z);
  return mf_validate(nv, f_sharp, Phi, Phi, "sharp(" + M.label + ")");
}

MatFac mf_sigma_twist(const MatFac& M) {
  // sharp-form ambient: f = g + z^2 with z the last variable
  Mono z2m;
  z2m.e[size_t(M.nvars - 1)] = 2;
  bool has_z2 = false;
  for (const auto& t : M.f.terms())
    if (t.m == z2m && t.c == 1) has_z2 = true;
  if (!has_z2)
    throw std::invalid_argument("mf_sigma_twist: ambient polynomial is not of sharp form f + z^2");
  if (M.nvars != 3)
    throw std::invalid_argument("mf_sigma_twist: expects a three-variable sharp ambient");
  return MatFac{M.nvars, M.f, twist_z(M.phi), twist_z(M.psi), "sigma(" + M.label + ")"};
}

linalg::FMat mf_cokernel(const MatFac& M, int T) {
  Ring ring(M.nvars, M.f, fp::prime, T);
  return ring.flatten(M.phi);
}

bool pair_is_morphism(const MatFac& M, const MatFac& N, const MorPair& h, int T) {
  PolyMat c1 = h.alpha * M.phi - N.phi * h.beta;
  PolyMat c2 = h.beta * M.psi - N.psi * h.alpha;
  if (T >= 0) {
    c1 = mat_trunc(c1, T);
    c2 = mat_trunc(c2, T);
  }
  for (const PolyMat* c : {&c1, &c2})
    for (Eigen::Index i = 0; i < c->rows(); ++i)
      for (Eigen::Index j = 0; j < c->cols(); ++j)
        if (!(*c)(i, j).is_zero()) return false;
  return true;
}

MorPair pair_compose(const MorPair& h2, const MorPair& h1) {
  return MorPair{h2.alpha * h1.alpha, h2.beta * h1.beta};
}

nlohmann::json mf_to_json(const MatFac& M) {
  auto mat = [&](const PolyMat& A) {
    nlohmann::json entries = nlohmann::json::array();
    for (Eigen::Index i = 0; i < A.rows(); ++i)
      for (Eigen::Index j = 0; j < A.cols(); ++j)
        if (!A(i, j).is_zero())
          entries.push_back({{"row", i}, {"col", j}, {"poly", poly_to_json(A(i, j), M.nvars)}});
    return entries;
  };
  return {{"ambient", {{"nvars", M.nvars}, {"f", poly_to_json(M.f, M.nvars)}}},
          {"size", M.size()},
          {"phi", mat(M.phi)},
          {"psi", mat(M.psi)},
          {"label", M.label}};
}

MatFac mf_from_json(const nlohmann::json& j) {
  const int nvars = j.at("ambient").at("nvars").get<int>();
  const Poly f = poly_from_json(j.at("ambient").at("f"));
  const Eigen::Index n = j.at("size").get<Eigen::Index>();
  PolyMat phi = poly_zero(n, n), psi = poly_zero(n, n);
  for (auto [dst, key] : {std::pair{&phi, "phi"}, {&psi, "psi"}})
    for (const auto& e : j.at(key))
      (*dst)(e.at("row").get<Eigen::Index>(), e.at("col").get<Eigen::Index>()) =
          poly_from_json(e.at("poly"));
  return mf_validate(nvars, f, phi, psi, j.value("label", ""));
}

}  // namespace artifact
