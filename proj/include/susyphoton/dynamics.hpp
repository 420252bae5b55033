#pragma once

#include "susyphoton/mcs.hpp"
#include "susyphoton/susy.hpp"

namespace susyphoton {

// free oscillator evolution e^{-iHt} with H = N + 1/2 (units of the quantum)
FockVector evolve_scalar(const FockVector& v, double t);

// graded-oscillator evolution: upper slot n acquires e^{-i omega n t}, lower
// slot k (one quantum above its index) acquires e^{-i omega (k+1) t}
SpinorState evolve_susy(const SpinorState& s, double t, double omega = 1.0);

// <H> on an arbitrary (not necessarily normalized) state
double mean_energy(const FockVector& v);
double mean_energy(const SpinorState& s, double omega = 1.0);

struct LoopReport {
  double period;
  double total_phase;      // arg<psi(0)|psi(period)>, principal in (-2pi, 0]
  double fidelity;         // |<psi(0)|psi(period)>|
  double geometric_phase;  // total phase with the dynamical part removed
  double spectral_offset;  // half-quantum share of the total phase
};

// Evolve a freshly built state through one closure period 2pi/m (scaled by
// 1/omega in the graded case) and report the phase bookkeeping.  Throws if
// the overlap magnitude drops below 1 - 1e-6.
LoopReport loop_check(const McsSpec& spec, const TruncationPolicy& pol = {});
LoopReport loop_check(const SusySpec& spec, double omega = 1.0,
                      const TruncationPolicy& pol = {});

// closed-form geometric phase -2pi j/m + (2pi/m) <H>/omega; independent of
// omega (the scalar counterpart is geometric_phase_scalar)
double geometric_phase_susy(const SusySpec& spec, const TruncationPolicy& pol = {});

// defense-in-depth evaluation: measured total phase plus a trapezoid
// integral of the instantaneous mean energy over `steps` snapshots
double geometric_phase_discretized(const McsSpec& spec, int steps,
                                   const TruncationPolicy& pol = {});
double geometric_phase_discretized(const SusySpec& spec, double omega, int steps,
                                   const TruncationPolicy& pol = {});

}  // namespace susyphoton
