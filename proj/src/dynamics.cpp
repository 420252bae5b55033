#include "susyphoton/dynamics.hpp"

#include <numbers>

namespace susyphoton {

namespace {

constexpr double kPi = std::numbers::pi;

// Map arg() output into the principal window (-2pi, 0].  A hair above zero
// is rounding noise on a true phase of zero (the spectra produce no total
// phase in (0, pi/3)), not a wrap onto -2pi.
double principal_phase(cplx overlap) {
  const double raw = std::arg(overlap);
  if (raw > 1e-9) return raw - 2.0 * kPi;
  return std::min(raw, 0.0);
}

cplx phase_factor(double angle) { return std::exp(cplx(0.0, -angle)); }

}  // namespace

FockVector evolve_scalar(const FockVector& v, double t) {
  FockVector out = v;
  for (int n = 0; n < out.dim(); ++n) out.c[n] *= phase_factor((n + 0.5) * t);
  return out;
}

SpinorState evolve_susy(const SpinorState& s, double t, double omega) {
  SpinorState out = s;
  for (int n = 0; n < out.upper.dim(); ++n) out.upper.c[n] *= phase_factor(omega * n * t);
  for (int k = 0; k < out.lower.dim(); ++k) out.lower.c[k] *= phase_factor(omega * (k + 1) * t);
  return out;
}

double mean_energy(const FockVector& v) {
  double num = 0.0, den = 0.0;
  for (int n = 0; n < v.dim(); ++n) {
    const double w = std::norm(v.c[n]);
    num += (n + 0.5) * w;
    den += w;
  }
  if (den <= 0.0) throw std::invalid_argument("mean_energy: zero state");
  return num / den;
}

double mean_energy(const SpinorState& s, double omega) {
  double num = 0.0, den = 0.0;
  for (int n = 0; n < s.upper.dim(); ++n) {
    const double w = std::norm(s.upper.c[n]);
    num += n * w;
    den += w;
  }
  for (int k = 0; k < s.lower.dim(); ++k) {
    const double w = std::norm(s.lower.c[k]);
    num += (k + 1) * w;
    den += w;
  }
  if (den <= 0.0) throw std::invalid_argument("mean_energy: zero state");
  return omega * num / den;
}

namespace {

LoopReport assemble_report(cplx overlap, double period, double dynamical, double offset) {
  LoopReport r;
  r.period = period;
  r.fidelity = std::abs(overlap);
  if (r.fidelity < 1.0 - 1e-6) {
    throw std::runtime_error("loop_check: state is not cyclic at the expected period");
  }
  r.total_phase = principal_phase(overlap);
  r.geometric_phase = r.total_phase + dynamical;
  r.spectral_offset = offset;
  return r;
}

}  // namespace

LoopReport loop_check(const McsSpec& spec, const TruncationPolicy& pol) {
  const FockVector v = build_mcs(spec, pol).vector;
  const double tau = 2.0 * kPi / spec.m;
  const cplx overlap = inner(v, evolve_scalar(v, tau));
  return assemble_report(overlap, tau, tau * mean_energy(v), -kPi / spec.m);
}

LoopReport loop_check(const SusySpec& spec, double omega, const TruncationPolicy& pol) {
  if (!(omega > 0.0)) throw std::invalid_argument("loop_check: omega must be positive");
  const SpinorState s = build_supercoherent(spec, pol);
  const double tau = 2.0 * kPi / (omega * spec.m);
  const cplx overlap = spinor_inner(s, evolve_susy(s, tau, omega));
  return assemble_report(overlap, tau, tau * mean_energy(s, omega), 0.0);
}

double geometric_phase_susy(const SusySpec& spec, const TruncationPolicy& pol) {
  const double base = -2.0 * kPi * spec.j / spec.m;
  if (spec.z != cplx(0.0, 0.0)) {
    const SusyClosedMoments mo = susy_closed_moments(spec);
    return base + (2.0 * kPi / spec.m) * (mo.h_num / mo.norm2);
  }
  // degenerate corner: the closed numerators are singular, measure instead
  const SpinorState s = build_supercoherent(spec, pol);
  return base + (2.0 * kPi / spec.m) * mean_energy(s, 1.0);
}

namespace {

template <class State, class Evolver, class Energy>
double discretized_phase(const State& st, double tau, int steps, Evolver&& evolve,
                         Energy&& energy, cplx overlap) {
  double acc = 0.5 * (energy(st) + energy(evolve(st, tau)));
  for (int i = 1; i < steps; ++i) acc += energy(evolve(st, tau * i / steps));
  const double dynamical = acc * tau / steps;
  return principal_phase(overlap) + dynamical;
}

}  // namespace

double geometric_phase_discretized(const McsSpec& spec, int steps, const TruncationPolicy& pol) {
  if (steps < 1) throw std::invalid_argument("geometric_phase_discretized: steps must be >= 1");
  const FockVector v = build_mcs(spec, pol).vector;
  const double tau = 2.0 * kPi / spec.m;
  return discretized_phase(
      v, tau, steps, [](const FockVector& s, double t) { return evolve_scalar(s, t); },
      [](const FockVector& s) { return mean_energy(s); }, inner(v, evolve_scalar(v, tau)));
}

double geometric_phase_discretized(const SusySpec& spec, double omega, int steps,
                                   const TruncationPolicy& pol) {
  if (steps < 1) throw std::invalid_argument("geometric_phase_discretized: steps must be >= 1");
  if (!(omega > 0.0)) throw std::invalid_argument("geometric_phase_discretized: omega must be positive");
  const SpinorState s = build_supercoherent(spec, pol);
  const double tau = 2.0 * kPi / (omega * spec.m);
  return discretized_phase(
      s, tau, steps, [omega](const SpinorState& st, double t) { return evolve_susy(st, t, omega); },
      [omega](const SpinorState& st) { return mean_energy(st, omega); },
      spinor_inner(s, evolve_susy(s, tau, omega)));
}

}  // namespace susyphoton
