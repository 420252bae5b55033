#pragma once

#include "susyphoton/mcs.hpp"

namespace susyphoton {

// Two-component state of the SUSY oscillator: upper = bosonic part paired
// with the excited fermion sector, lower = bosonic part of the other sector.
// In the spinor expansion sum a_n (|n>,0) + sum c_n (0,|n-1>), the lower
// FockVector index k holds the coefficient c_{k+1}.
struct SpinorState {
  FockVector upper;
  FockVector lower;

  double norm2() const { return upper.norm2() + lower.norm2(); }
  double norm() const { return std::sqrt(norm2()); }
};

SpinorState spinor_scale(const SpinorState& s, cplx a);
SpinorState spinor_add(const SpinorState& a, const SpinorState& b);
SpinorState spinor_normalized(const SpinorState& s);
cplx spinor_inner(const SpinorState& a, const SpinorState& b);

// general first-order SUSY annihilation matrix ((k1 a, k2), (k3 a^2, k4 a))
struct SaoParams {
  cplx k1, k2, k3, k4;
};

// Multiphoton supercoherent-state member.  a_j and c_mj are the two free
// amplitudes of the coefficient recursion; k2 is kept real (the general
// complex parameters only enter sao_apply).
struct SusySpec {
  int m = 1;
  int j = 0;
  cplx z{0.0, 0.0};
  double k2 = 0.0;
  cplx a_j{1.0, 0.0};
  cplx c_mj{1.0, 0.0};
};

// amplitudes of the reduced two-term assembly; defined only for z != 0
struct TildeAmps {
  cplx a_tilde;
  cplx c_tilde;
};

// anchor index of the lower ladder: m for j = 0, else j
int susy_anchor(int m, int j);

// H = omega diag(a†a, a a†)
SpinorState susy_hamiltonian_apply(const SpinorState& s, double omega = 1.0);

SpinorState sao_apply(const SaoParams& p, const SpinorState& s);

// m-th power of the special case (k1, k2, 0, k4=k1=1):
// ((a^m, m k2 a^{m-1}), (0, a^m))
SpinorState sao_power_apply(double k2, int m, const SpinorState& s);

// Canonical construction from the coefficient recursion with alpha = z^m
// (regular at z = 0), normalized after assembly.
SpinorState build_supercoherent(const SusySpec& spec, const TruncationPolicy& pol = {});

// Alternative eigenstate family: chi1 (u_j, 0) + chi2 (1/sqrt(2)) *
// (k2 conj(z) u_s - k2 u_s', u_j) built from unnormalized series states,
// s = next residue after j; normalized on return.
SpinorState build_supercoherent_alt(const SusySpec& spec, cplx chi1, cplx chi2,
                                    const TruncationPolicy& pol = {});

// Unnormalized derivative d/dz of the series state, equal to a† applied to
// the series state one anchor below; both forms evaluated and compared.
FockVector derivative_state(int m, int j, cplx z, const TruncationPolicy& pol = {});

// a_tilde = sqrt(j!) z^{-j} a_j + j k2 z^{-1} c_tilde,
// c_tilde = sqrt((anchor-1)!) z^{-(anchor-1)} c_mj
TildeAmps tilde_amplitudes(const SusySpec& spec);

// Ladder-sum moments of the unnormalized two-term assembly.  All entries are
// numerators against norm2 except norm2 itself.  Requires z != 0.
struct SusyClosedMoments {
  double norm2;        // <Z|Z> unnormalized
  double nbar_num;     // <a†a>
  double n2_num;       // <a†^2 a^2>
  double h_num;        // <H>/omega
  double s_mean_num[2];  // <s>, k = 0 (q) and 1 (p)
  double s2_num[2];      // <s^2>
};
SusyClosedMoments susy_closed_moments(const SusySpec& spec);

// 1 / norm of the unnormalized assembly; closed form cross-checked against
// the direct norm (1e-10 relative) whenever z != 0
double susy_normalization(const SusySpec& spec, const TruncationPolicy& pol = {});

// variance of s (k = 0 -> q, k = 1 -> p); closed form validated against the
// spinor moment oracle within 1e-8 relative for z != 0
double s_variance_susy(const SusySpec& spec, int k, const TruncationPolicy& pol = {});

// uncertainty product from the two variances
HurResult hur_susy(const SusySpec& spec, const TruncationPolicy& pol = {});

// Mandel Q with the bosonic number operator acting on both components.
// Undefined (throws) when the mean photon number vanishes.
double mandel_q_susy(const SusySpec& spec, const TruncationPolicy& pol = {});

// First coupling value in [lo, hi] where Q crosses zero (unit amplitudes):
// 0.05-step scan for a sign change, then bisection to 1e-6.  Throws
// "no Poissonian crossing in range" when the scan finds none.
double mandel_root_k2(int m, int j, cplx z, double lo = -5.0, double hi = 5.0,
                      const TruncationPolicy& pol = {});

}  // namespace susyphoton
