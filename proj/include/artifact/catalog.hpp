#pragma once

#include <string>
#include <vector>

#include "artifact/matfac.hpp"

// Authoritative constructors for the indecomposable MCM modules over the
// four rings in play: k[x,y]/(x^2) and k[x,y]/(x^2 y) in dimension one,
// k[x,y,z]/(x^2 y + z^2) in dimension two, and the finite-type node
// k[x,y]/(x^2 - y^2), plus the explicit short exact sequences and
// distinguished morphisms the verification suites exercise.
namespace artifact::catalog {

struct Entry {
  std::string label;
  int n = 0;  // parameter (0 for unparametrized kinds)
  MatFac mf;
  bool self_syzygy = true;
};

// --- k[x,y]/(x^2): I = coker(x), I_n = coker((x, y^n),(0, x)) -------------
Poly ainf_f();
MatFac ainf_I();
MatFac ainf_In(int n);  // rejects n = 0: that is the free module
MatFac ainf_free();

// --- k[x,y]/(x^2 y): R/(x), R/(xy), R/(x^2), R/(y), M_n^{+-}, N_n^{+-} ----
enum class Dinf1Kind { Rx, Rxy, Rx2, Ry, Mplus, Mminus, Nplus, Nminus };
Poly dinf1_f();
MatFac dinf1(Dinf1Kind kind, int n = 0);
MatFac dinf1_free();

// --- k[x,y,z]/(x^2 y + z^2): I (2x2), M_n, N_n (4x4), L_n reindexing ------
Poly dinf2_f();
MatFac dinf2_I();
MatFac dinf2_M(int n);  // n >= 0 (M_0 = coker((z, -y),(x^2, z)))
MatFac dinf2_N(int n);  // n >= 1
MatFac dinf2_L(int n);  // L_n = M_{(n-1)/2} (n odd), N_{n/2} (n even)
MatFac dinf2_free();

// --- the node x^2 - y^2: complete finite catalog ---------------------------
Poly node_f();
std::vector<Entry> finite_sample();

// Labelled windows used by the verification suites.
std::vector<Entry> ainf_window(int nmax);   // I, I_1..I_nmax
std::vector<Entry> dinf2_window(int nmax);  // I, L_1..L_nmax

// --- distinguished short exact sequences and morphisms ---------------------
struct SequenceData {
  MatFac Z, Y, X;
  MorPair g, h;  // 0 -> Z --g--> Y --h--> X -> 0
};

// 0 -> I_n -> I + R -> I -> 0 over x^2 with h = (y^n, -x).
SequenceData ainf_lemma_sequence(int n);

// AR sequence 0 -> I_n -> I_{n+1} + I_{n-1} -> I_n -> 0 (I_0 = R).
SequenceData ainf_ar_sequence(int n);

// 0 -> L_1 -> I + R# -> I -> 0 over x^2 y + z^2.
SequenceData dinf2_theorem_sequence();

// iota: I -> I_1, the inclusion (x) into (x, y).
MorPair ainf_iota();

// endomorphism pairs of I: y^n over x^2; y^n and (z/x) y^n over x^2 y + z^2
MorPair ainf_yn_endo(int n);
MorPair dinf2_yn_endo(int n);
MorPair dinf2_zx_endo(int n);

MatFac ainf_cone_yn(int n);                          // cone(y^n : I -> I)
MatFac ainf_cone_multi(const std::vector<int>& es);  // cone((y^{n_1}..y^{n_l}): I^l -> I)

nlohmann::json dump(const std::string& ring_id, int max_n);

}  // namespace artifact::catalog
