#pragma once

#include <cassert>
#include <cstdint>
#include <stdexcept>

// Prime-field scalar helpers. All coefficient arithmetic in the artifact is
// carried out in F_p for one process-wide prime, fixed before any ring or
// factorization is built (see cli --field-char). The default 32003 keeps
// panel-blocked float64 products exact: 160 * p^2 < 2^53.
namespace artifact::fp {

inline std::int64_t prime = 32003;

inline std::int64_t normalize(std::int64_t a, std::int64_t p = prime) {
  a %= p;
  return a < 0 ? a + p : a;
}

inline std::int64_t mul(std::int64_t a, std::int64_t b, std::int64_t p = prime) {
  return normalize(a % p * (b % p), p);
}

inline std::int64_t pow_mod(std::int64_t a, std::int64_t e, std::int64_t p = prime) {
  std::int64_t r = 1;
  a = normalize(a, p);
  for (; e > 0; e >>= 1) {
    if (e & 1) r = r * a % p;
    a = a * a % p;
  }
  return r;
}

// Fermat inverse; p is prime throughout the artifact.
inline std::int64_t inverse(std::int64_t a, std::int64_t p = prime) {
  a = normalize(a, p);
  if (a == 0) throw std::domain_error("fp::inverse: zero element");
  return pow_mod(a, p - 2, p);
}

// The field must be odd (quadratic forms x^2 +- y^2, z -> -z twists and the
// unit 2 in the Grothendieck relations all degenerate in characteristic 2).
inline void set_prime(std::int64_t p) {
  if (p == 2) throw std::invalid_argument("field characteristic 2 is not supported");
  if (p < 3) throw std::invalid_argument("field characteristic must be an odd prime");
  prime = p;
}

}  // namespace artifact::fp
