#pragma once

#include "susyphoton/fock.hpp"

namespace susyphoton {

// Multiphoton coherent state |z; m, j>: the eigenstate of a^m with
// eigenvalue z^m supported on the Fock ladder {m n + j}.
struct McsSpec {
  int m = 1;
  int j = 0;
  cplx z{0.0, 0.0};
};

struct McsState {
  McsSpec spec;
  FockVector vector;        // normalized
  double norm_const = 1.0;  // 1 / norm of the unnormalized power series
};

// one plain coherent state in the circle decomposition
struct ScsComponent {
  cplx label;   // coherent amplitude
  cplx weight;  // superposition coefficient
};

struct SMoments {
  double mean;    // <s>
  double second;  // <s^2>
};

struct HurResult {
  double sigma_q;
  double sigma_p;
  double product;
};

int residue_prev(int m, int r);  // (r - 1) mod m
int residue_next(int m, int r);  // (r + 1) mod m

// Sum over the index ladder K = m n + r (n >= 0) of x^K / K!.  All terms
// positive, so the series value is uniformly accurate; this is the canonical
// evaluation everywhere.
double ladder_sum(int m, int r, double x);

// Hyperbolic/trigonometric closed forms, m <= 3 only.  These cancel
// catastrophically as x -> 0 (all significant digits lost near x ~ 1e-8 for
// the r=2 branch), so cross-checks against the series are made at x >= 0.25.
double ladder_sum_closed(int m, int r, double x);

// normalization constant 1/sqrt(ladder_sum(m, j, x)) with the m <= 3 closed
// form cross-checked against the series when x >= 0.25
double normalization(int m, int j, double x);

// unnormalized power-series vector, coefficients z^K / sqrt(K!) on the
// ladder K ≡ r (mod m); squared norm tends to ladder_sum(m, r, |z|^2)
FockVector mcs_series(int m, int r, cplx z, int dim);

McsState build_mcs(const McsSpec& spec, const TruncationPolicy& pol = {});

// Decomposition into m plain coherent states with labels z e^{2πik/m} and
// weights (e^{x/2}/(m sqrt(ladder_sum))) e^{-2πikj/m}.  Degenerate (throws)
// at z = 0 with j > 0.
std::vector<ScsComponent> scs_decomposition(const McsSpec& spec);

// quadrature moments; k = 0 means s = q = (a + a†)/√2, k = 1 means
// s = p = (a - a†)/(√2 i)
SMoments s_moments(const McsSpec& spec, int k);

// Heisenberg uncertainty product from the closed-form moments
HurResult hur(const McsSpec& spec);

// Mandel Q.  Canonical value comes from truncated-space moments and is
// cross-checked against the ladder-ratio closed form (z != 0).  Undefined
// for the vacuum member (z = 0, j = 0).
double mandel_q(const McsSpec& spec, const TruncationPolicy& pol = {});

// closed-form geometric phase over one period 2π/m of the free evolution:
// (2π/m)(<N> - j)
double geometric_phase_scalar(const McsSpec& spec);

}  // namespace susyphoton
