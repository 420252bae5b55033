#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numbers>
#include <random>

#include "susyphoton/dynamics.hpp"
#include "test_util.hpp"

using namespace susyphoton;

namespace {

constexpr double kPi = std::numbers::pi;

double diff_norm(const FockVector& a, const FockVector& b) {
  REQUIRE(a.dim() == b.dim());
  double s = 0.0;
  for (int n = 0; n < a.dim(); ++n) s += std::norm(a.c[n] - b.c[n]);
  return std::sqrt(s);
}

double spinor_diff_norm(const SpinorState& a, const SpinorState& b) {
  return std::sqrt(std::pow(diff_norm(a.upper, b.upper), 2) +
                   std::pow(diff_norm(a.lower, b.lower), 2));
}

SusySpec unit_spec(int m, int j, cplx z, double k2) {
  return {m, j, z, k2, cplx(1.0, 0.0), cplx(1.0, 0.0)};
}

}  // namespace

TEST_CASE("evolution is unitary and composes additively") {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> amp(-1.0, 1.0);
  FockVector v(24);
  for (auto& c : v.c) c = cplx(amp(rng), amp(rng));
  const double n0 = v.norm2();
  const FockVector once = evolve_scalar(v, 0.7);
  CHECK(std::abs(once.norm2() - n0) <= 1e-14 * n0);
  const FockVector split = evolve_scalar(evolve_scalar(v, 0.37), 1.91);
  const FockVector joined = evolve_scalar(v, 0.37 + 1.91);
  CHECK(diff_norm(split, joined) <= 1e-12);

  const SpinorState s = build_supercoherent(unit_spec(2, 1, cplx(1.0, 0.5), 0.8));
  CHECK(std::abs(evolve_susy(s, 1.3, 1.7).norm2() - s.norm2()) <= 1e-14);
  const SpinorState sp = evolve_susy(evolve_susy(s, 0.4, 1.7), 0.9, 1.7);
  CHECK(spinor_diff_norm(sp, evolve_susy(s, 1.3, 1.7)) <= 1e-12);
  // scaling omega is the same as scaling time
  CHECK(spinor_diff_norm(evolve_susy(s, 0.65, 2.0), evolve_susy(s, 1.3, 1.0)) <= 1e-12);
}

TEST_CASE("full oscillator period flips the global sign") {
  const FockVector v = testutil::coherent(cplx(1.1, -0.4), 48);
  const FockVector full = evolve_scalar(v, 2.0 * kPi);
  CHECK(diff_norm(full, scale(v, -1.0)) <= 1e-12);
}

TEST_CASE("coherent states rotate rigidly in phase space") {
  const cplx alpha{1.3, 0.6};
  const double t = 0.83;
  const FockVector evolved = evolve_scalar(testutil::coherent(alpha, 64), t);
  const FockVector rotated =
      scale(testutil::coherent(alpha * std::exp(cplx(0.0, -t)), 64), std::exp(cplx(0.0, -t / 2.0)));
  CHECK(diff_norm(evolved, rotated) <= 1e-12);
}

TEST_CASE("graded evolution applies the sector spectrum") {
  // upper slot n and lower slot n-1 share the energy omega*n
  SpinorState s;
  s.upper = basis_state(3, 8);
  s.lower = basis_state(2, 8);
  const double omega = 1.4, t = 0.9;
  const SpinorState e = evolve_susy(s, t, omega);
  CHECK(std::abs(e.upper.c[3] - std::exp(cplx(0.0, -3.0 * omega * t))) <= 1e-15);
  CHECK(std::abs(e.lower.c[2] - std::exp(cplx(0.0, -3.0 * omega * t))) <= 1e-15);

  // the generator of the evolution is the graded Hamiltonian
  const SpinorState z = build_supercoherent(unit_spec(3, 1, cplx(1.0, 1.0), 0.7));
  const double h = 1e-7;
  const SpinorState fd = spinor_add(evolve_susy(z, h, omega), spinor_scale(z, -1.0));
  const SpinorState gen = spinor_scale(susy_hamiltonian_apply(z, omega), cplx(0.0, -h));
  CHECK(spinor_diff_norm(fd, gen) <= 1e-5 * h / 1e-7);
}

TEST_CASE("mean energy: anchors and normalization independence") {
  CHECK(mean_energy(basis_state(0, 4)) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(mean_energy(testutil::coherent(cplx(2.0, 0.0), 64)) == doctest::Approx(4.5).epsilon(1e-12));
  FockVector v = testutil::coherent(cplx(1.0, 0.0), 48);
  CHECK(mean_energy(scale(v, 3.7)) == doctest::Approx(mean_energy(v)).epsilon(1e-14));
  SpinorState s;
  s.upper = basis_state(2, 6);
  s.lower = basis_state(1, 6);
  CHECK(mean_energy(s, 2.0) == doctest::Approx(2.0 * 2.0).epsilon(1e-15));
  CHECK_THROWS_AS((void)mean_energy(FockVector(5)), std::invalid_argument);
}

TEST_CASE("scalar loops: perfect fidelity and the ladder phase") {
  for (int m = 1; m <= 3; ++m) {
    for (int j = 0; j < m; ++j) {
      for (cplx z : testutil::z_sweep()) {
        const McsSpec spec{m, j, z};
        const LoopReport r = loop_check(spec);
        CHECK(r.period == doctest::Approx(2.0 * kPi / m).epsilon(1e-15));
        CHECK(r.fidelity >= 1.0 - 1e-10);
        CHECK(r.total_phase == doctest::Approx(-2.0 * kPi * (j + 0.5) / m).epsilon(1e-10));
        CHECK(r.spectral_offset == doctest::Approx(-kPi / m).epsilon(1e-15));
        CHECK(r.total_phase - r.spectral_offset ==
              doctest::Approx(-2.0 * kPi * j / m).epsilon(1e-10));
        CHECK(std::abs(r.geometric_phase - geometric_phase_scalar(spec)) <= 1e-8);
      }
      // the stationary corner acquires no geometric phase
      const LoopReport still = loop_check(McsSpec{m, j, 0.0});
      CHECK(std::abs(still.geometric_phase) <= 1e-12);
    }
  }
}

TEST_CASE("graded loops: sector phase, omega independence, closed form") {
  const double k2s[] = {-2.0, 0.0, 1.0};
  for (int m = 1; m <= 3; ++m) {
    for (int j = 0; j < m; ++j) {
      for (cplx z : {cplx(0.8, 0.0), cplx(0.0, 1.5), cplx(1.2, -2.1)}) {
        for (double k2 : k2s) {
          const SusySpec spec = unit_spec(m, j, z, k2);
          const LoopReport r = loop_check(spec);
          CHECK(r.fidelity >= 1.0 - 1e-10);
          CHECK(r.total_phase == doctest::Approx(-2.0 * kPi * j / m).epsilon(1e-10));
          CHECK(r.spectral_offset == 0.0);
          CHECK(std::abs(r.geometric_phase - geometric_phase_susy(spec)) <= 1e-8);

          const LoopReport r2 = loop_check(spec, 2.3);
          CHECK(r2.period == doctest::Approx(2.0 * kPi / (2.3 * m)).epsilon(1e-14));
          CHECK(std::abs(r2.geometric_phase - r.geometric_phase) <= 1e-10);
          CHECK(r2.total_phase == doctest::Approx(r.total_phase).epsilon(1e-10));
        }
      }
    }
  }
  CHECK_THROWS_AS((void)loop_check(unit_spec(2, 0, cplx(1.0, 0.0), 0.0), -1.0),
                  std::invalid_argument);
}

TEST_CASE("bare doublet at the degenerate corner has zero geometric phase") {
  const SusySpec spec{2, 1, cplx(0.0, 0.0), 1.0, cplx(1.0, 0.0), cplx(0.0, 0.0)};
  CHECK(std::abs(geometric_phase_susy(spec)) <= 1e-12);
  const LoopReport r = loop_check(spec);
  CHECK(std::abs(r.geometric_phase) <= 1e-10);
}

TEST_CASE("single-ladder geometric phase grows like the mean occupation") {
  // scalar: beta = 2 pi |z|^2; graded uncoupled: beta = 2 pi (|z|^2 + 1/2)
  for (double r : {0.5, 1.0, 1.8}) {
    const McsSpec sc{1, 0, cplx(r, 0.0)};
    CHECK(loop_check(sc).geometric_phase == doctest::Approx(2.0 * kPi * r * r).epsilon(1e-9));
    const SusySpec su = unit_spec(1, 0, cplx(r, 0.0), 0.0);
    CHECK(geometric_phase_susy(su) ==
          doctest::Approx(2.0 * kPi * (r * r + 0.5)).epsilon(1e-12));
  }
  // monotone in the intensity
  double last = -1.0;
  for (double x : {0.25, 0.5, 1.0, 2.0, 4.0, 9.0}) {
    const double beta = geometric_phase_susy(unit_spec(1, 0, std::sqrt(x), 0.0));
    CHECK(beta > last);
    last = beta;
  }
}

TEST_CASE("uncoupled states minimize the geometric phase over the coupling") {
  for (int m = 1; m <= 3; ++m) {
    for (int j = 0; j < m; ++j) {
      for (double r : {0.5, 1.5, 3.0}) {
        for (cplx dir : {cplx(1.0, 0.0), cplx(0.0, 1.0)}) {
          const cplx z = r * dir;
          const double base = geometric_phase_susy(unit_spec(m, j, z, 0.0));
          for (double k2 : {-4.0, 2.0}) {
            CHECK(base <= geometric_phase_susy(unit_spec(m, j, z, k2)) + 1e-9);
          }
        }
      }
    }
  }
}

TEST_CASE("discretized loop integral agrees with the closed forms") {
  const McsSpec sc{2, 1, cplx(1.3, 0.2)};
  CHECK(std::abs(geometric_phase_discretized(sc, 200) - geometric_phase_scalar(sc)) <= 1e-8);
  const SusySpec su = unit_spec(3, 1, cplx(1.0, 1.0), 0.7);
  CHECK(std::abs(geometric_phase_discretized(su, 1.0, 200) - geometric_phase_susy(su)) <= 1e-8);
  CHECK(std::abs(geometric_phase_discretized(su, 2.5, 200) - geometric_phase_susy(su)) <= 1e-8);
  CHECK_THROWS_AS((void)geometric_phase_discretized(sc, 0), std::invalid_argument);
}
