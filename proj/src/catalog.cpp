#include "artifact/catalog.hpp"

#include <stdexcept>

namespace artifact::catalog {

namespace {

// Monomial as a ring element, in the (ex, ey, ez) exponent notation.
Poly pmono(int ex, int ey = 0, int ez = 0) {
  return Poly::monomial(mono_of(ex, ey, ez));
}

PolyMat pm(std::initializer_list<std::initializer_list<Poly>> rows) {
  const Eigen::Index r = static_cast<Eigen::Index>(rows.size());
  const Eigen::Index c = static_cast<Eigen::Index>(rows.begin()->size());
  PolyMat A = poly_zero(r, c);
  Eigen::Index i = 0;
  for (const auto& row : rows) {
    if (static_cast<Eigen::Index>(row.size()) != c)
      throw std::invalid_argument("pm: ragged rows");
    Eigen::Index j = 0;
    for (const auto& e : row) A(i, j++) = e;
    ++i;
  }
  return A;
}

}  // namespace

Poly ainf_f() { return pmono(2, 0); }  // x^2

MatFac ainf_I() {
  MatFac M{2, ainf_f(), pm({{px()}}), pm({{px()}}), "I"};
  mf_validate(M);
  return M;
}

MatFac ainf_In(int n) {
  if (n < 1) throw std::invalid_argument("ainf_In: need n >= 1 (I_0 is the free module)");
  const Poly x = px(), yn = pmono(0, n), o;
  MatFac M{2, ainf_f(), pm({{x, yn}, {o, x}}), pm({{x, -yn}, {o, x}}),
           "I" + std::to_string(n)};
  mf_validate(M);
  return M;
}

MatFac ainf_free() {
  MatFac M{2, ainf_f(), pm({{ainf_f()}}), pm({{pconst(1)}}), "R"};
  mf_validate(M);
  return M;
}

Poly dinf1_f() { return pmono(2, 1); }  // x^2 y

MatFac dinf1(Dinf1Kind kind, int n) {
  const Poly x = px(), y = py(), x2 = pmono(2, 0), xy = pmono(1, 1);
  const Poly f = dinf1_f(), o;
  MatFac M;
  switch (kind) {
    case Dinf1Kind::Rx:
      M = {2, f, pm({{x}}), pm({{xy}}), "R/(x)"};
      break;
    case Dinf1Kind::Rxy:
      M = {2, f, pm({{xy}}), pm({{x}}), "R/(xy)"};
      break;
    case Dinf1Kind::Rx2:
      M = {2, f, pm({{x2}}), pm({{y}}), "R/(x2)"};
      break;
    case Dinf1Kind::Ry:
      M = {2, f, pm({{y}}), pm({{x2}}), "R/(y)"};
      break;
    default: {
      if (n < 1) throw std::invalid_argument("dinf1: parametrized kinds need n >= 1");
      const Poly yn = pmono(0, n), yn1 = pmono(0, n + 1);
      const std::string tag = std::to_string(n);
      // psi = y*phi works for the M family: phi * (y phi) = y phi^2.
      const PolyMat mp = pm({{x, yn}, {o, -x}});
      const PolyMat mq = pm({{xy, yn1}, {o, -xy}});
      const PolyMat np = pm({{xy, yn}, {o, -x}});
      const PolyMat nq = pm({{x, yn}, {o, -xy}});
      switch (kind) {
        case Dinf1Kind::Mplus:  M = {2, f, mp, mq, "M" + tag + "+"}; break;
        case Dinf1Kind::Mminus: M = {2, f, mq, mp, "M" + tag + "-"}; break;
        case Dinf1Kind::Nplus:  M = {2, f, np, nq, "N" + tag + "+"}; break;
        case Dinf1Kind::Nminus: M = {2, f, nq, np, "N" + tag + "-"}; break;
        default: throw std::invalid_argument("dinf1: unknown kind");
      }
      break;
    }
  }
  mf_validate(M);
  return M;
}

MatFac dinf1_free() {
  MatFac M{2, dinf1_f(), pm({{dinf1_f()}}), pm({{pconst(1)}}), "R"};
  mf_validate(M);
  return M;
}

Poly dinf2_f() { return pmono(2, 1) + pmono(0, 0, 2); }  // x^2 y + z^2

MatFac dinf2_I() {
  const Poly z = pz(), xy = pmono(1, 1), x = px();
  MatFac M{3, dinf2_f(), pm({{z, -xy}, {x, z}}), pm({{z, xy}, {-x, z}}), "I"};
  mf_validate(M);
  return M;
}

MatFac dinf2_M(int n) {
  if (n < 0) throw std::invalid_argument("dinf2_M: need n >= 0");
  const Poly f = dinf2_f(), z = pz(), x = px(), y = py(), o;
  if (n == 0) {
    const Poly x2 = pmono(2, 0);
    MatFac M{3, f, pm({{z, -y}, {x2, z}}), pm({{z, y}, {-x2, z}}), "M0"};
    mf_validate(M);
    return M;
  }
  const Poly xy = pmono(1, 1), yn = pmono(0, n), yn1 = pmono(0, n + 1);
  // Stabilized form of ((x, y^n),(0, -x)), ((xy, y^{n+1}),(0, -xy)):
  // Phi = Psi = ((zI, phi0),(psi0, -zI)).  The determinant condition forces
  // -z in the lower-right block.
  const PolyMat P = pm({{z, o, x, yn},
                        {o, z, o, -x},
                        {xy, yn1, -z, o},
                        {o, -xy, o, -z}});
  MatFac M{3, f, P, P, "M" + std::to_string(n)};
  mf_validate(M);
  return M;
}

MatFac dinf2_N(int n) {
  if (n < 1) throw std::invalid_argument("dinf2_N: need n >= 1");
  const Poly f = dinf2_f(), z = pz(), x = px(), o;
  const Poly xy = pmono(1, 1), yn = pmono(0, n);
  const PolyMat P = pm({{z, o, xy, yn},
                        {o, z, o, -x},
                        {x, yn, -z, o},
                        {o, -xy, o, -z}});
  MatFac M{3, f, P, P, "N" + std::to_string(n)};
  mf_validate(M);
  return M;
}

MatFac dinf2_L(int n) {
  if (n < 1) throw std::invalid_argument("dinf2_L: need n >= 1");
  MatFac M = (n % 2 == 1) ? dinf2_M((n - 1) / 2) : dinf2_N(n / 2);
  M.label = "L" + std::to_string(n);
  return M;
}

MatFac dinf2_free() {
  MatFac M{3, dinf2_f(), pm({{dinf2_f()}}), pm({{pconst(1)}}), "R#"};
  mf_validate(M);
  return M;
}

Poly node_f() { return pmono(2, 0) - pmono(0, 2); }  // x^2 - y^2

std::vector<Entry> finite_sample() {
  const Poly f = node_f(), x = px(), y = py();
  MatFac plus{2, f, pm({{x - y}}), pm({{x + y}}), "N+"};
  MatFac minus{2, f, pm({{x + y}}), pm({{x - y}}), "N-"};
  mf_validate(plus);
  mf_validate(minus);
  return {{"N+", 0, plus, false}, {"N-", 0, minus, false}};
}

std::vector<Entry> ainf_window(int nmax) {
  std::vector<Entry> out;
  out.push_back({"I", 0, ainf_I(), true});
  for (int k = 1; k <= nmax; ++k) out.push_back({"I" + std::to_string(k), k, ainf_In(k), true});
  return out;
}

std::vector<Entry> dinf2_window(int nmax) {
  std::vector<Entry> out;
  out.push_back({"I", 0, dinf2_I(), false});
  for (int k = 1; k <= nmax; ++k) out.push_back({"L" + std::to_string(k), k, dinf2_L(k), true});
  return out;
}

SequenceData ainf_lemma_sequence(int n) {
  if (n < 1) throw std::invalid_argument("ainf_lemma_sequence: need n >= 1");
  // Generators of I_n = coker((x, y^n),(0, x)) are (x, -y^n); g is
  // (x/y^n, incl), h is (y^n, -x) on ideal elements.
  const Poly x = px(), yn = pmono(0, n), one = pconst(1), o;
  SequenceData s;
  s.Z = ainf_In(n);
  s.Y = mf_direct_sum(ainf_I(), ainf_free());
  s.X = ainf_I();
  s.g = {pm({{o, -one}, {x, -yn}}), pm({{o, -one}, {one, o}})};
  s.h = {pm({{yn, -one}}), pm({{yn, -x}})};
  return s;
}

SequenceData ainf_ar_sequence(int n) {
  if (n < 1) throw std::invalid_argument("ainf_ar_sequence: need n >= 1");
  const Poly x = px(), y = py(), one = pconst(1), o;
  SequenceData s;
  s.Z = s.X = ainf_In(n);
  if (n == 1) {
    s.Y = mf_direct_sum(ainf_In(2), ainf_free());
    s.g = {pm({{y, o}, {o, one}, {-x, y}}), pm({{y, o}, {o, one}, {-one, o}})};
    s.h = {pm({{one, o, o}, {o, y, -one}}), pm({{one, o, y}, {o, y, -x}})};
    return s;
  }
  s.Y = mf_direct_sum(ainf_In(n + 1), ainf_In(n - 1));
  const PolyMat ag = pm({{y, o}, {o, one}, {-one, o}, {o, -y}});
  const PolyMat ah = pm({{one, o, y, o}, {o, y, o, one}});
  s.g = {ag, ag};
  s.h = {ah, ah};
  return s;
}

SequenceData dinf2_theorem_sequence() {
  const Poly x = px(), y = py(), z = pz(), one = pconst(1), o;
  SequenceData s;
  s.Z = dinf2_L(1);
  s.Y = mf_direct_sum(dinf2_I(), dinf2_free());
  s.X = dinf2_I();
  s.g = {pm({{x, o}, {o, one}, {-z, -y}}), pm({{x, o}, {o, one}, {-one, o}})};
  s.h = {pm({{o, -y, -one}, {one, o, o}}), pm({{o, -y, -z}, {one, o, x}})};
  return s;
}

MorPair ainf_iota() {
  const Poly one = pconst(1), o;
  return {pm({{one}, {o}}), pm({{one}, {o}})};
}

MorPair ainf_yn_endo(int n) {
  const Poly yn = pmono(0, n);
  return {pm({{yn}}), pm({{yn}})};
}

MorPair dinf2_yn_endo(int n) {
  const Poly yn = pmono(0, n), o;
  return {pm({{yn, o}, {o, yn}}), pm({{yn, o}, {o, yn}})};
}

MorPair dinf2_zx_endo(int n) {
  // (z/x) y^n as an endo pair of I:  phi (z/x y^n) = (z/x y^n) phi holds
  // because z^2 = -x^2 y on the hypersurface.
  const Poly o;
  const PolyMat a = pm({{o, -pmono(0, n + 1)}, {pmono(0, n), o}});
  return {a, a};
}

MatFac ainf_cone_yn(int n) {
  MatFac C = mf_cone(ainf_I(), ainf_I(), ainf_yn_endo(n));
  C.label = "cone(y^" + std::to_string(n) + ")";
  return C;
}

MatFac ainf_cone_multi(const std::vector<int>& es) {
  if (es.empty()) throw std::invalid_argument("ainf_cone_multi: need at least one exponent");
  MatFac src = ainf_I();
  for (std::size_t k = 1; k < es.size(); ++k) src = mf_direct_sum(src, ainf_I());
  PolyMat a = poly_zero(1, static_cast<Eigen::Index>(es.size()));
  for (std::size_t k = 0; k < es.size(); ++k) a(0, static_cast<Eigen::Index>(k)) = pmono(0, es[k]);
  MatFac C = mf_cone(src, ainf_I(), {a, a});
  C.label = "cone(multi)";
  return C;
}

nlohmann::json dump(const std::string& ring_id, int max_n) {
  nlohmann::json out = nlohmann::json::array();
  auto add = [&out](const MatFac& M) { out.push_back(mf_to_json(M)); };
  if (ring_id == "ainf1") {
    add(ainf_free());
    for (const Entry& e : ainf_window(max_n)) add(e.mf);
  } else if (ring_id == "dinf1") {
    add(dinf1_free());
    for (Dinf1Kind k : {Dinf1Kind::Rx, Dinf1Kind::Rxy, Dinf1Kind::Rx2, Dinf1Kind::Ry})
      add(dinf1(k));
    for (int n = 1; n <= max_n; ++n)
      for (Dinf1Kind k : {Dinf1Kind::Mplus, Dinf1Kind::Mminus, Dinf1Kind::Nplus,
                          Dinf1Kind::Nminus})
        add(dinf1(k, n));
  } else if (ring_id == "dinf2") {
    add(dinf2_free());
    for (const Entry& e : dinf2_window(max_n)) add(e.mf);
  } else if (ring_id == "finite_sample") {
    for (const Entry& e : finite_sample()) add(e.mf);
  } else {
    throw std::invalid_argument("catalog::dump: unknown ring id '" + ring_id + "'");
  }
  return out;
}

}  // namespace artifact::catalog
