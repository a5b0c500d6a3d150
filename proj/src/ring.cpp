#include "artifact/ring.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace artifact {

namespace {

// All monomials of total degree < T in nv variables, graded order.
std::vector<Mono> monomials_below(int nv, int T) {
  std::vector<Mono> out;
  Mono m;
  // enumerate exponent tuples with nested loops over a fixed-width array
  std::vector<int> e(size_t(nv), 0);
  while (true) {
    int deg = 0;
    for (int v = 0; v < nv; ++v) deg += e[size_t(v)];
    if (deg < T) {
      Mono mo;
      for (int v = 0; v < nv; ++v) mo.e[size_t(v)] = std::uint8_t(e[size_t(v)]);
      out.push_back(mo);
    }
    int v = 0;
    while (v < nv) {
      if (++e[size_t(v)] < T) break;
      e[size_t(v)] = 0;
      ++v;
    }
    if (v == nv) break;
  }
  std::sort(out.begin(), out.end(), mono_less);
  return out;
}

std::string poly_cache_key(const Poly& poly) {
  std::ostringstream os;
  for (const auto& t : poly.terms()) os << t.m.key() << ':' << t.c << ';';
  return os.str();
}

}  // namespace

Ring::Ring(int nvars, const Poly& f, std::int64_t p, int T) : nv_(nvars), f_(f), p_(p), T_(T) {
  if (nvars < 1 || nvars > kMaxVars) throw std::invalid_argument("ring: 1..4 variables supported");
  if (p != fp::prime)
    throw std::invalid_argument("ring: field characteristic differs from the process field");
  if (p == 2) throw std::invalid_argument("ring: characteristic 2 not supported");
  if (T <= 0) throw std::invalid_argument("ring: truncation order must be positive");
  if (f.constant_term() != 0)
    throw std::invalid_argument("ring: modulus has a unit constant term, quotient collapses");

  mons_ = monomials_below(nv_, T_);
  const int M = int(mons_.size());
  midx_.reserve(size_t(M) * 2);
  for (int i = 0; i < M; ++i) midx_[mons_[size_t(i)].key()] = i;

  // relation rows u*f over the monomials, eliminated greatest-first so that
  // pivots sit on graded-largest monomials and the basis is prefix-nested
  std::vector<linalg::FVec> rows;
  if (!f_.is_zero()) {
    int mindeg = T_;
    for (const auto& t : f_.terms()) mindeg = std::min(mindeg, t.m.deg());
    for (const auto& u : mons_) {
      if (u.deg() + mindeg >= T_) continue;
      linalg::FVec r = linalg::FVec::Zero(M);
      bool live = false;
      for (const auto& t : f_.terms()) {
        Mono m = mono_mul(t.m, u);
        auto it = midx_.find(m.key());
        if (it != midx_.end()) {
          r(it->second) = fp::normalize(std::int64_t(r(it->second)) + t.c, p_);
          live = true;
        }
      }
      if (live && r.cwiseAbs().sum() != 0.0) rows.push_back(std::move(r));
    }
  }

  std::vector<char> is_pivot(size_t(M), 0);
  nf_rows_.assign(size_t(M), {});
  if (!rows.empty()) {
    // eliminate in graded-descending column order (degree first, then
    // exponent tuple, both descending) so pivots land on the largest
    // monomials and the surviving basis is nested across truncation levels
    std::vector<int> perm(static_cast<size_t>(M));
    for (int i = 0; i < M; ++i) perm[size_t(i)] = i;
    std::sort(perm.begin(), perm.end(), [&](int a, int b) {
      const Mono &ma = mons_[size_t(a)], &mb = mons_[size_t(b)];
      if (ma.deg() != mb.deg()) return ma.deg() > mb.deg();
      return ma.key() > mb.key();
    });
    linalg::FMat A(Eigen::Index(rows.size()), M);
    for (size_t i = 0; i < rows.size(); ++i)
      for (int j = 0; j < M; ++j) A(Eigen::Index(i), j) = rows[i](perm[size_t(j)]);
    auto [rank, piv, R] = linalg::echelon(std::move(A), p_, /*reduced=*/true);
    for (int k = 0; k < rank; ++k) is_pivot[size_t(perm[size_t(piv[size_t(k)])])] = 1;
    for (int i = 0; i < M; ++i)
      if (!is_pivot[size_t(i)]) basis_.push_back(mons_[size_t(i)]);
    D_ = int(basis_.size());
    std::vector<int> basis_pos(size_t(M), -1);
    for (int i = 0, b = 0; i < M; ++i)
      if (!is_pivot[size_t(i)]) basis_pos[size_t(i)] = b++;
    for (int i = 0; i < M; ++i)
      if (!is_pivot[size_t(i)]) nf_rows_[size_t(i)] = {{basis_pos[size_t(i)], 1.0}};
    for (int k = 0; k < rank; ++k) {
      const int i = perm[size_t(piv[size_t(k)])];  // original index of the pivot monomial
      auto& row = nf_rows_[size_t(i)];
      for (int j = 0; j < M; ++j) {
        if (j == piv[size_t(k)]) continue;
        double v = R(k, j);
        if (v == 0.0) continue;
        const int orig = perm[size_t(j)];
        // RREF leaves support only on non-pivot (basis) columns
        row.emplace_back(basis_pos[size_t(orig)], double(p_) - v);
      }
      std::sort(row.begin(), row.end());
    }
  } else {
    basis_ = mons_;
    D_ = M;
    for (int i = 0; i < M; ++i) nf_rows_[size_t(i)] = {{i, 1.0}};
  }
}

linalg::FVec Ring::nf(const Poly& poly) const {
  linalg::FVec out = linalg::FVec::Zero(D_);
  for (const auto& t : poly.terms()) {
    auto it = midx_.find(t.m.key());
    if (it == midx_.end()) continue;  // degree >= T dies
    for (const auto& [b, v] : nf_rows_[size_t(it->second)])
      out(b) = fp::normalize(std::int64_t(out(b)) + std::int64_t(v) * t.c, p_);
  }
  return out;
}

const linalg::FMat& Ring::flatten(const Poly& poly) const {
  const std::string key = poly_cache_key(poly);
  auto it = flat_cache_.find(key);
  if (it != flat_cache_.end()) return it->second;
  linalg::FMat A = linalg::FMat::Zero(D_, D_);
  for (int j = 0; j < D_; ++j) {
    for (const auto& t : poly.terms()) {
      Mono m = mono_mul(t.m, basis_[size_t(j)]);
      auto mi = midx_.find(m.key());
      if (mi == midx_.end()) continue;
      for (const auto& [b, v] : nf_rows_[size_t(mi->second)])
        A(b, j) = fp::normalize(std::int64_t(A(b, j)) + std::int64_t(v) * t.c, p_);
    }
  }
  return flat_cache_.emplace(key, std::move(A)).first->second;
}

linalg::FMat Ring::flatten(const PolyMat& M) const {
  linalg::FMat F = linalg::FMat::Zero(M.rows() * D_, M.cols() * D_);
  for (Eigen::Index i = 0; i < M.rows(); ++i)
    for (Eigen::Index j = 0; j < M.cols(); ++j)
      if (!M(i, j).is_zero()) F.block(i * D_, j * D_, D_, D_) = flatten(M(i, j));
  return F;
}

nlohmann::json Ring::descriptor() const {
  static const char* names[] = {"x", "y", "z", "w"};
  nlohmann::json vars = nlohmann::json::array();
  for (int v = 0; v < nv_; ++v) vars.push_back(names[v]);
  return {{"vars", vars}, {"f", poly_to_json(f_, nv_)}, {"p", p_}, {"T", T_}};
}

Ring make_ring(const std::vector<std::string>& vars, const Poly& f, std::int64_t p, int T) {
  return Ring(int(vars.size()), f, p, T);
}

nlohmann::json poly_to_json(const Poly& f, int nvars) {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& t : f.terms()) {
    nlohmann::json e = nlohmann::json::array();
    for (int v = 0; v < nvars; ++v) e.push_back(int(t.m.e[size_t(v)]));
    terms.push_back({{"exp", e}, {"c", t.c}});
  }
  return terms;
}

Poly poly_from_json(const nlohmann::json& j) {
  Poly out;
  for (const auto& term : j) {
    Mono m;
    const auto& e = term.at("exp");
    for (size_t v = 0; v < e.size() && v < size_t(kMaxVars); ++v)
      m.e[v] = std::uint8_t(e[v].get<int>());
    out += Poly::monomial(m, term.at("c").get<std::int64_t>());
  }
  return out;
}

std::vector<int> proj_rows(const Ring& hi, const Ring& lo, int k) {
  std::vector<int> keep;
  for (int i = 0; i < hi.dim(); ++i)
    if (hi.basis()[size_t(i)].deg() < lo.trunc()) keep.push_back(i);
  if (int(keep.size()) != lo.dim())
    throw std::logic_error("proj_rows: basis not nested across truncation levels");
  for (size_t i = 0; i < keep.size(); ++i)
    if (!(hi.basis()[size_t(keep[i])] == lo.basis()[i]))
      throw std::logic_error("proj_rows: basis not nested across truncation levels");
  std::vector<int> idx;
  idx.reserve(size_t(k) * keep.size());
  for (int b = 0; b < k; ++b)
    for (int i : keep) idx.push_back(b * hi.dim() + i);
  return idx;
}

}  // namespace artifact
