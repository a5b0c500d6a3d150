#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "artifact/fp.hpp"

// Sparse multivariate polynomials over F_p in up to four variables
// (x, y, z, w), kept as term vectors sorted in graded order (degree
// ascending, exponent tuple descending within a degree: 1, x, y, x^2, xy,
// y^2, ...). Poly is registered as an Eigen scalar so presentation matrices
// are ordinary Eigen dense matrices and the matrix-factorization identities
// read as one-line expressions.
namespace artifact {

constexpr int kMaxVars = 4;

struct Mono {
  std::array<std::uint8_t, kMaxVars> e{0, 0, 0, 0};

  int deg() const { return int(e[0]) + e[1] + e[2] + e[3]; }
  bool operator==(const Mono&) const = default;
  std::uint32_t key() const {
    return (std::uint32_t(e[0]) << 24) | (std::uint32_t(e[1]) << 16) |
           (std::uint32_t(e[2]) << 8) | e[3];
  }
};

// Graded order: degree first, then exponent tuple descending (x before y).
inline bool mono_less(const Mono& a, const Mono& b) {
  int da = a.deg(), db = b.deg();
  if (da != db) return da < db;
  return a.key() > b.key();
}

inline Mono mono_mul(const Mono& a, const Mono& b) {
  Mono r;
  for (int i = 0; i < kMaxVars; ++i) r.e[i] = std::uint8_t(a.e[i] + b.e[i]);
  return r;
}

struct Term {
  Mono m;
  std::int64_t c = 0;  // in [1, p)
};

class Poly {
 public:
  Poly() = default;
  explicit Poly(std::int64_t c) {
    c = fp::normalize(c);
    if (c) t_.push_back({Mono{}, c});
  }

  static Poly monomial(const Mono& m, std::int64_t c = 1) {
    Poly r;
    c = fp::normalize(c);
    if (c) r.t_.push_back({m, c});
    return r;
  }

  const std::vector<Term>& terms() const { return t_; }
  bool is_zero() const { return t_.empty(); }

  int degree() const {  // max total degree; -1 for the zero polynomial
    return t_.empty() ? -1 : t_.back().m.deg();
  }

  std::int64_t constant_term() const {
    return (!t_.empty() && t_.front().m.deg() == 0) ? t_.front().c : 0;
  }

  bool operator==(const Poly& o) const {
    if (t_.size() != o.t_.size()) return false;
    for (size_t i = 0; i < t_.size(); ++i)
      if (!(t_[i].m == o.t_[i].m) || t_[i].c != o.t_[i].c) return false;
    return true;
  }

  Poly operator+(const Poly& o) const {
    Poly r;
    r.t_.reserve(t_.size() + o.t_.size());
    size_t i = 0, j = 0;
    while (i < t_.size() || j < o.t_.size()) {
      if (j == o.t_.size() || (i < t_.size() && mono_less(t_[i].m, o.t_[j].m))) {
        r.t_.push_back(t_[i++]);
      } else if (i == t_.size() || mono_less(o.t_[j].m, t_[i].m)) {
        r.t_.push_back(o.t_[j++]);
      } else {
        std::int64_t c = fp::normalize(t_[i].c + o.t_[j].c);
        if (c) r.t_.push_back({t_[i].m, c});
        ++i, ++j;
      }
    }
    return r;
  }

  Poly operator-() const {
    Poly r = *this;
    for (auto& tm : r.t_) tm.c = fp::prime - tm.c;
    return r;
  }

  Poly operator-(const Poly& o) const { return *this + (-o); }

  Poly operator*(const Poly& o) const { return mul_impl(o, -1); }

  Poly& operator+=(const Poly& o) { return *this = *this + o; }
  Poly& operator-=(const Poly& o) { return *this = *this - o; }
  Poly& operator*=(const Poly& o) { return *this = *this * o; }

  Poly scaled(std::int64_t s) const {
    s = fp::normalize(s);
    Poly r;
    if (!s) return r;
    r.t_.reserve(t_.size());
    for (const auto& tm : t_) {
      std::int64_t c = fp::mul(tm.c, s);
      if (c) r.t_.push_back({tm.m, c});
    }
    return r;
  }

  // Truncation below total degree T: the image in S/m^T.
  Poly truncated(int T) const {
    Poly r;
    for (const auto& tm : t_)
      if (tm.m.deg() < T) r.t_.push_back(tm);
    return r;
  }

  // Product with all terms of degree >= T dropped during accumulation;
  // the workhorse for Neumann inverses and idempotent conjugation.
  Poly mul_trunc(const Poly& o, int T) const { return mul_impl(o, T); }

  // z -> -z (z is the third variable): negate terms with odd z-exponent.
  Poly twist_z() const {
    Poly r = *this;
    for (auto& tm : r.t_)
      if (tm.m.e[2] & 1) tm.c = fp::prime - tm.c;
    return r;
  }

  // Append one variable slot (entries over S seen in S[z]); exponents shift
  // is a no-op with fixed-width exponent storage, provided for clarity.
  Poly lifted() const { return *this; }

  std::string str(int nvars = kMaxVars) const;

 private:
  Poly mul_impl(const Poly& o, int T) const {
    std::vector<Term> acc;
    acc.reserve(t_.size() * o.t_.size());
    for (const auto& a : t_) {
      if (T >= 0 && a.m.deg() >= T) continue;
      for (const auto& b : o.t_) {
        if (T >= 0 && a.m.deg() + b.m.deg() >= T) continue;
        acc.push_back({mono_mul(a.m, b.m), fp::mul(a.c, b.c)});
      }
    }
    std::sort(acc.begin(), acc.end(),
              [](const Term& a, const Term& b) { return mono_less(a.m, b.m); });
    Poly r;
    r.t_.reserve(acc.size());
    for (const auto& tm : acc) {
      if (!r.t_.empty() && r.t_.back().m == tm.m) {
        r.t_.back().c = fp::normalize(r.t_.back().c + tm.c);
      } else {
        r.t_.push_back(tm);
      }
    }
    std::erase_if(r.t_, [](const Term& tm) { return tm.c == 0; });
    return r;
  }

  std::vector<Term> t_;
};

inline Poly operator*(std::int64_t s, const Poly& a) { return a.scaled(s); }

// Convenience constructors mirroring the paper's notation.
inline Mono mono_of(int ex, int ey = 0, int ez = 0, int ew = 0) {
  Mono m;
  m.e = {std::uint8_t(ex), std::uint8_t(ey), std::uint8_t(ez), std::uint8_t(ew)};
  return m;
}
inline Poly px(int e = 1) { return Poly::monomial(mono_of(e)); }
inline Poly py(int e = 1) { return Poly::monomial(mono_of(0, e)); }
inline Poly pz(int e = 1) { return Poly::monomial(mono_of(0, 0, e)); }
inline Poly pconst(std::int64_t c) { return Poly(c); }

inline std::string Poly::str(int nvars) const {
  if (t_.empty()) return "0";
  static const char* names[] = {"x", "y", "z", "w"};
  std::string out;
  for (const auto& tm : t_) {
    if (!out.empty()) out += " + ";
    std::string mon;
    for (int i = 0; i < nvars; ++i) {
      if (!tm.m.e[i]) continue;
      mon += names[i];
      if (tm.m.e[i] > 1) mon += "^" + std::to_string(int(tm.m.e[i]));
    }
    if (mon.empty()) {
      out += std::to_string(tm.c);
    } else {
      if (tm.c != 1) out += std::to_string(tm.c) + "*";
      out += mon;
    }
  }
  return out;
}

}  // namespace artifact

// Scalar traits must be visible before any Matrix<Poly> is instantiated.
namespace Eigen {
template <>
struct NumTraits<artifact::Poly> {
  using Real = artifact::Poly;
  using NonInteger = artifact::Poly;
  using Literal = artifact::Poly;
  using Nested = artifact::Poly;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 8,
    AddCost = 16,
    MulCost = 64,
  };
  static artifact::Poly epsilon() { return artifact::Poly(); }
  static artifact::Poly dummy_precision() { return artifact::Poly(); }
  static int digits10() { return 0; }
};
}  // namespace Eigen

namespace artifact {

using PolyMat = Eigen::Matrix<Poly, Eigen::Dynamic, Eigen::Dynamic>;

inline PolyMat poly_identity(Eigen::Index n) {
  PolyMat I(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) I(i, j) = (i == j) ? Poly(1) : Poly();
  return I;
}

inline PolyMat poly_zero(Eigen::Index r, Eigen::Index c) {
  PolyMat Z(r, c);
  for (Eigen::Index i = 0; i < r; ++i)
    for (Eigen::Index j = 0; j < c; ++j) Z(i, j) = Poly();
  return Z;
}

inline PolyMat scaled_identity(Eigen::Index n, const Poly& s) {
  PolyMat I = poly_zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) I(i, i) = s;
  return I;
}

// Entrywise product truncation and truncated matrix product.
inline PolyMat mat_trunc(const PolyMat& A, int T) {
  PolyMat R(A.rows(), A.cols());
  for (Eigen::Index i = 0; i < A.rows(); ++i)
    for (Eigen::Index j = 0; j < A.cols(); ++j) R(i, j) = A(i, j).truncated(T);
  return R;
}

inline PolyMat mul_trunc(const PolyMat& A, const PolyMat& B, int T) {
  assert(A.cols() == B.rows());
  PolyMat C = poly_zero(A.rows(), B.cols());
  for (Eigen::Index i = 0; i < A.rows(); ++i)
    for (Eigen::Index k = 0; k < A.cols(); ++k) {
      if (A(i, k).is_zero()) continue;
      for (Eigen::Index j = 0; j < B.cols(); ++j)
        if (!B(k, j).is_zero()) C(i, j) += A(i, k).mul_trunc(B(k, j), T);
    }
  return C;
}

inline int max_degree(const PolyMat& A) {
  int d = 0;
  for (Eigen::Index i = 0; i < A.rows(); ++i)
    for (Eigen::Index j = 0; j < A.cols(); ++j) d = std::max(d, A(i, j).degree());
  return d;
}

inline PolyMat twist_z(const PolyMat& A) {
  PolyMat R(A.rows(), A.cols());
  for (Eigen::Index i = 0; i < A.rows(); ++i)
    for (Eigen::Index j = 0; j < A.cols(); ++j) R(i, j) = A(i, j).twist_z();
  return R;
}

}  // namespace artifact
