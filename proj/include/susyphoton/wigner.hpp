#pragma once

#include "susyphoton/susy.hpp"

namespace susyphoton {

// pair of coherent-state labels entering a Gaussian cross-Wigner kernel
struct GaussianPairKernel {
  cplx alpha;  // bra label
  cplx beta;   // ket label
};

// cross-Wigner of two normalized coherent states; real and positive on the
// diagonal beta == alpha, peak value 1/pi
cplx w_pair(const GaussianPairKernel& k, double q, double p);

// kernel for the pair (a†|alpha>, a†|beta>)
cplx w_pair_deriv(const GaussianPairKernel& k, double q, double p);

// kernels with a† on one side only: variant I has it in the bra,
// variant II in the ket; W^II(beta, alpha) = conj(W^I(alpha, beta))
enum class CrossVariant { I, II };
cplx w_pair_cross(const GaussianPairKernel& k, double q, double p, CrossVariant variant);

struct WignerGridSpec {
  double q_min = -8.0, q_max = 8.0;
  double p_min = -8.0, p_max = 8.0;
  int nq = 257, np = 257;
};

// cell-centered uniform grid of Wigner values, row-major over q then p
struct WignerGrid {
  double q_min = 0.0, q_max = 0.0, p_min = 0.0, p_max = 0.0;
  int nq = 0, np = 0;
  std::vector<double> values;
  double cell_area = 0.0;

  double dq() const { return (q_max - q_min) / nq; }
  double dp() const { return (p_max - p_min) / np; }
  double q_at(int iq) const { return q_min + (iq + 0.5) * dq(); }
  double p_at(int ip) const { return p_min + (ip + 0.5) * dp(); }
  double at(int iq, int ip) const { return values[(size_t)iq * np + ip]; }
  double& at(int iq, int ip) { return values[(size_t)iq * np + ip]; }
  double integral() const;
  double norm_residual() const { return std::abs(integral() - 1.0); }
};

// Closed-form grids assembled from the circle decomposition (kernel double
// sums); states too close to the degenerate corner fall back to the
// quadrature engine.  Throws when the grid misses significant support
// (normalization residual > 1e-3).
WignerGrid wigner_scalar_mcs(const McsSpec& spec, const WignerGridSpec& g = {},
                             const TruncationPolicy& pol = {});
WignerGrid wigner_susy(const SusySpec& spec, const WignerGridSpec& g = {},
                       const TruncationPolicy& pol = {});

// defining integral evaluated with Hermite functions and Gauss-Hermite
// quadrature (node count 2N+24); dimensions above 128 are rejected
cplx wigner_quadrature_cross(const FockVector& bra, const FockVector& ket, double q, double p);
double wigner_quadrature_oracle(const FockVector& v, double q, double p);
double wigner_quadrature_oracle(const SpinorState& s, double q, double p);

struct Negativity {
  double min_value;
  double negative_volume;  // sum over negative cells of |value| * cell_area
};
Negativity negativity(const WignerGrid& g);

// integral of one q-row over p; equals |psi(q)|^2 for pure scalar states
double wigner_marginal_q(const WignerGrid& g, int iq);

// position wavefunction via the stable Hermite-function recurrence
cplx position_wavefunction(const FockVector& v, double u);

// worker cap honoring SUSYPHOTON_THREADS
int thread_limit();

}  // namespace susyphoton
