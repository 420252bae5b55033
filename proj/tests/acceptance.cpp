// Acceptance gate: eleven end-to-end criteria covering uncertainty limits,
// photon statistics, Wigner grids, cyclic phases, algebra closure, and the
// self-verification command.  Each criterion prints one [PASS]/[FAIL] line
// with the measured figure against its pinned tolerance and its runtime
// budget; the process exits with the number of failures.  The CLI binary
// path arrives as the first program argument (used by the final criterion).
#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "susyphoton/dynamics.hpp"
#include "susyphoton/fock.hpp"
#include "susyphoton/mcs.hpp"
#include "susyphoton/susy.hpp"
#include "susyphoton/verify.hpp"
#include "susyphoton/wigner.hpp"

namespace {

using namespace susyphoton;

constexpr double kPi = 3.14159265358979323846;

// reference Poissonian couplings: (m, j, |z|) -> k2 with Q(k2) = 0,
// unit amplitudes, bracketed within +-0.25 of the quoted value
struct RootRef {
  int m, j;
  double abs_z, k2;
};
const std::vector<RootRef> kRootRefs = {
    {1, 0, 1.0, 1.6},      {1, 0, 2.0, 0.97561},   {1, 0, 3.0, 0.66298},
    {2, 0, 1.0, 1.598698}, {2, 0, 2.0, 1.604011},  {2, 0, 3.0, 1.43425},
    {2, 1, 1.0, 2.586},    {2, 1, 2.0, 0.951075},  {2, 1, 3.0, 0.48326},
    {3, 0, 1.0, -0.351633}, {3, 0, 2.0, 0.6805165}, {3, 0, 3.0, 1.386432},
    {3, 1, 1.0, -2.94005}, {3, 1, 2.0, 0.111063},  {3, 1, 3.0, 0.48317},
    {3, 2, 1.0, -2.116},   {3, 2, 2.0, -0.419157}, {3, 2, 3.0, -0.206622}};

const std::vector<cplx> kSweepZ = []() {
  std::vector<cplx> out;
  const cplx i{0.0, 1.0};
  for (double r : {0.25, 0.5, 1.0, 2.0, 3.0}) {
    out.push_back(r);
    out.push_back(r * i);
    out.push_back(r * std::polar(1.0, 0.25 * kPi));
  }
  return out;
}();

cplx ipow(cplx z, int m) {
  cplx out = 1.0;
  for (int i = 0; i < m; ++i) out *= z;
  return out;
}

double rel_err(double got, double want) {
  return std::abs(got - want) / std::max(1.0, std::abs(want));
}

struct Outcome {
  bool passed = false;
  std::string detail;
};

std::string g_cli;  // path to the susyphoton binary

// ---- criteria ------------------------------------------------------------

Outcome fock_floor() {
  double worst = 0.0;
  for (int m = 1; m <= 3; ++m)
    for (int j = 0; j < m; ++j)
      worst = std::max(worst,
                       std::abs(hur({m, j, cplx(1e-4, 0.0)}).product - (j + 0.5)));
  char buf[96];
  std::snprintf(buf, sizeof(buf), "worst |product - (j+1/2)| = %.2e vs 1e-6", worst);
  return {worst <= 1e-6, buf};
}

Outcome minimal_products() {
  std::mt19937 rng(20260819);
  std::uniform_real_distribution<double> radius(0.0, 3.0), angle(0.0, 2.0 * kPi);
  double worst = 0.0;
  for (int i = 0; i < 20; ++i) {
    const cplx z = std::polar(radius(rng), angle(rng));
    worst = std::max(worst, std::abs(hur({1, 0, z}).product - 0.5));
    worst = std::max(
        worst, std::abs(hur_susy({1, 0, z, 0.0, 1.0, 1.0}).product - 0.5));
  }
  char buf[96];
  std::snprintf(buf, sizeof(buf), "worst |product - 1/2| = %.2e vs 1e-10", worst);
  return {worst <= 1e-10, buf};
}

Outcome strong_coupling_ceiling() {
  double peak = 0.0;
  for (int i = 0; i <= 120; ++i)
    for (int k = 0; k <= 120; ++k) {
      const cplx z(-3.0 + 0.05 * i, -3.0 + 0.05 * k);
      peak = std::max(peak, hur_susy({1, 0, z, 50.0, 1.0, 1.0}).product);
    }
  char buf[96];
  std::snprintf(buf, sizeof(buf), "max product = %.6f, needs [1.4, 1.6]", peak);
  return {peak >= 1.4 && peak <= 1.6, buf};
}

Outcome poissonian_roots() {
  double worst = 0.0;
  for (const auto& r : kRootRefs) {
    const double root =
        mandel_root_k2(r.m, r.j, cplx(r.abs_z, 0.0), r.k2 - 0.25, r.k2 + 0.25);
    worst = std::max(worst, std::abs(root - r.k2));
  }
  char buf[96];
  std::snprintf(buf, sizeof(buf), "worst |root - reference| = %.2e vs 1e-3 (18 roots)",
                worst);
  return {worst <= 1e-3, buf};
}

Outcome mandel_decay() {
  const cplx z(std::sqrt(5.0), 0.0);
  const double q_even = std::abs(mandel_q({2, 0, z}));
  const double q_odd = std::abs(mandel_q({2, 1, z}));
  const double worst = std::max(q_even, q_odd);
  char buf[96];
  std::snprintf(buf, sizeof(buf), "|Q| at |z|^2 = 5: %.2e vs 1e-3", worst);
  return {worst < 1e-3, buf};
}

Outcome eigen_residuals() {
  double worst = 0.0;
  for (int m = 1; m <= 3; ++m)
    for (int j = 0; j < m; ++j)
      for (double r : {0.5, 1.0, 2.0, 3.0})
        for (cplx dir : {cplx(1.0, 0.0), cplx(0.0, 1.0)})
          for (double k2 : {-2.0, 0.0, 1.0}) {
            const SusySpec spec{m, j, r * dir, k2, 1.0, 1.0};
            const cplx ev = ipow(spec.z, m);
            for (const SpinorState& st :
                 {build_supercoherent(spec), build_supercoherent_alt(spec, 1.0, 1.0)}) {
              const SpinorState res =
                  spinor_add(sao_power_apply(k2, m, st), spinor_scale(st, -ev));
              worst = std::max(worst, res.norm());
            }
          }
  char buf[96];
  std::snprintf(buf, sizeof(buf), "worst ||A^m Z - z^m Z|| = %.2e vs 1e-10", worst);
  return {worst <= 1e-10, buf};
}

Outcome closed_vs_oracle() {
  double worst = 0.0;
  for (const TruncationPolicy pol : {TruncationPolicy{16, 1e-10}, TruncationPolicy{32, 1e-10}}) {
    for (int m = 1; m <= 3; ++m)
      for (int j = 0; j < m; ++j)
        for (cplx z : kSweepZ) {
          // scalar: closed normalization and quadrature moments
          const double x = std::norm(z);
          const McsState st = build_mcs({m, j, z}, pol);
          const FockVector series = mcs_series(m, j, z, st.vector.dim());
          worst = std::max(worst,
                           rel_err(normalization(m, j, x), 1.0 / series.norm()));
          const cplx a1 = moment(st.vector, 0, 1);
          const double nbar = moment(st.vector, 1, 1).real();
          const cplx a2 = moment(st.vector, 0, 2);
          for (int k : {0, 1}) {
            const SMoments sm = s_moments({m, j, z}, k);
            const double mean_o =
                std::sqrt(2.0) * (k == 0 ? a1.real() : a1.imag());
            const double sec_o = nbar + 0.5 + (k == 0 ? 1.0 : -1.0) * a2.real();
            worst = std::max(worst, rel_err(sm.mean, mean_o));
            worst = std::max(worst, rel_err(sm.second, sec_o));
          }
          // graded: closed statistics against the elementary-ladder oracle
          for (double k2 : {0.0, 1.5}) {
            const SusySpec sp{m, j, z, k2, 1.0, 1.0};
            const SpinorState sc = build_supercoherent(sp, pol);
            const FockVector au = annihilate(sc.upper), al = annihilate(sc.lower);
            const cplx sa1 = inner(sc.upper, au) + inner(sc.lower, al);
            const cplx sa2 = inner(sc.upper, power_annihilate(sc.upper, 2)) +
                             inner(sc.lower, power_annihilate(sc.lower, 2));
            const double snbar = au.norm2() + al.norm2();
            const double sn2 = power_annihilate(sc.upper, 2).norm2() +
                               power_annihilate(sc.lower, 2).norm2();
            for (int k : {0, 1}) {
              const double mean_o =
                  std::sqrt(2.0) * (k == 0 ? sa1.real() : sa1.imag());
              const double sec_o =
                  snbar + 0.5 + (k == 0 ? 1.0 : -1.0) * sa2.real();
              const double var_o = sec_o - mean_o * mean_o;
              worst = std::max(worst, rel_err(s_variance_susy(sp, k, pol), var_o));
            }
            const double q_o = (sn2 + snbar - snbar * snbar) / snbar - 1.0;
            worst = std::max(worst, rel_err(mandel_q_susy(sp, pol), q_o));
          }
        }
  }
  char buf[96];
  std::snprintf(buf, sizeof(buf),
                "worst closed/oracle rel. err. = %.2e vs 1e-8 (two truncations)", worst);
  return {worst <= 1e-8, buf};
}

Outcome wigner_engine() {
  // kernel spot checks against the defining integral
  double kernel_err = 0.0;
  {
    const int dim = 48;
    const GaussianPairKernel pairs[] = {{cplx(0.8, 0.0), cplx(0.8, 0.0)},
                                        {cplx(1.2, 0.4), cplx(-0.3, 0.9)},
                                        {cplx(0.0, 0.5), cplx(1.0, 0.0)}};
    const double pts[][2] = {{0.0, 0.0}, {1.0, -0.5}, {-1.5, 0.7}, {0.3, 2.0}};
    for (const auto& k : pairs) {
      FockVector bra(dim), ket(dim);
      cplx tb = std::exp(-0.5 * std::norm(k.alpha)), tk = std::exp(-0.5 * std::norm(k.beta));
      for (int n = 0; n < dim; ++n) {
        bra.c[n] = tb;
        ket.c[n] = tk;
        tb *= k.alpha / std::sqrt((double)(n + 1));
        tk *= k.beta / std::sqrt((double)(n + 1));
      }
      const FockVector dbra = create(bra), dket = create(ket);
      for (const auto& qp : pts) {
        const double q = qp[0], p = qp[1];
        kernel_err = std::max(
            kernel_err, std::abs(wigner_quadrature_cross(bra, ket, q, p) - w_pair(k, q, p)));
        kernel_err = std::max(kernel_err,
                              std::abs(wigner_quadrature_cross(dbra, ket, q, p) -
                                       w_pair_cross(k, q, p, CrossVariant::I)));
        kernel_err = std::max(kernel_err,
                              std::abs(wigner_quadrature_cross(bra, dket, q, p) -
                                       w_pair_cross(k, q, p, CrossVariant::II)));
        kernel_err = std::max(kernel_err, std::abs(wigner_quadrature_cross(dbra, dket, q, p) -
                                                   w_pair_deriv(k, q, p)));
      }
    }
  }

  // 257x257 grid suite: interference negativity for the two-ladder cats and
  // for the referenced graded parameter sets that admit it; positivity for
  // the states that cannot turn negative; normalization throughout.
  //
  // For m = 1 with unit amplitudes the full Wigner function divided by the
  // underlying Gaussian kernel is |k2*w - 1|^2 + (1 - k2^2) with
  // w = sqrt(2)(q + ip) - z, by completing the square on the three kernel
  // terms.  It is therefore non-negative whenever |k2| <= 1 and dips below
  // zero only for |k2| > 1.  Two of the referenced graded states
  // (m=1, |z|=2, k2~0.976 and m=1, |z|=3, k2~0.663) fall in the positive
  // regime; the independent phase-space quadrature oracle confirms strictly
  // positive minima for both.  They are asserted positive here, alongside
  // the decoupled k2 = 0 doublet.
  double norm_resid = 0.0;
  auto track = [&norm_resid](const WignerGrid& g) {
    norm_resid = std::max(norm_resid, g.norm_residual());
    return negativity(g).min_value;
  };
  double cat_min = -1.0;  // least-negative minimum across both cats
  cat_min = std::max(track(wigner_scalar_mcs({2, 0, cplx(2.5, 0.0)})),
                     track(wigner_scalar_mcs({2, 1, cplx(2.5, 0.0)})));
  double root_min = -1.0;   // least-negative minimum across the |k2| > 1-regime states
  double pos_floor = 0.0;   // most-negative minimum across the positive-regime states
  int n_negative = 0, n_positive = 0;
  for (const auto& r : kRootRefs) {
    const double k2 =
        mandel_root_k2(r.m, r.j, cplx(r.abs_z, 0.0), r.k2 - 0.25, r.k2 + 0.25);
    const double mn = track(wigner_susy({r.m, r.j, cplx(r.abs_z, 0.0), k2, 1.0, 1.0}));
    if (r.m == 1 && std::abs(k2) <= 1.0) {
      pos_floor = std::min(pos_floor, mn);
      ++n_positive;
    } else {
      root_min = std::max(root_min, mn);
      ++n_negative;
    }
  }
  const double doublet_min = track(wigner_susy({1, 0, cplx(1.5, 0.0), 0.0, 1.0, 1.0}));
  pos_floor = std::min(pos_floor, doublet_min);

  const bool pass = kernel_err <= 1e-8 && norm_resid <= 1e-6 && cat_min < -1e-3 &&
                    root_min < -1e-3 && pos_floor >= -1e-9 && n_negative == 16 &&
                    n_positive == 2;
  char buf[224];
  std::snprintf(buf, sizeof(buf),
                "kernels %.1e vs 1e-8; norm %.1e vs 1e-6; cat min %.1e and graded min "
                "%.1e (%d states) vs < -1e-3; positive-regime floor %.1e (%d states "
                "+ doublet) vs >= -1e-9",
                kernel_err, norm_resid, cat_min, root_min, n_negative, pos_floor,
                n_positive);
  return {pass, buf};
}

Outcome cyclic_phases() {
  double infidelity = 0.0, phase_err = 0.0, beta_err = 0.0, slack = 0.0;
  for (int m = 1; m <= 3; ++m)
    for (int j = 0; j < m; ++j)
      for (cplx z : {cplx(0.5, 0.0), cplx(0.0, 1.5), cplx(2.0, 0.0)}) {
        const McsSpec sc{m, j, z};
        const LoopReport lr = loop_check(sc);
        infidelity = std::max(infidelity, 1.0 - lr.fidelity);
        beta_err = std::max(
            beta_err, std::abs(lr.geometric_phase - geometric_phase_scalar(sc)));
        for (double k2 : {0.0, 1.2})
          for (double omega : {1.0, 2.3}) {
            const SusySpec sp{m, j, z, k2, 1.0, 1.0};
            const LoopReport g = loop_check(sp, omega);
            infidelity = std::max(infidelity, 1.0 - g.fidelity);
            const double want = j == 0 ? 0.0 : -2.0 * kPi * j / m;
            phase_err = std::max(phase_err, std::abs(g.total_phase - want));
            beta_err = std::max(
                beta_err, std::abs(g.geometric_phase - geometric_phase_susy(sp)));
          }
      }
  // the free coupling's zero setting minimizes the geometric phase
  for (int m = 1; m <= 3; ++m)
    for (int j = 0; j < m; ++j)
      for (double r : {0.5, 1.5, 3.0})
        for (cplx dir : {cplx(1.0, 0.0), cplx(0.0, 1.0)}) {
          const double base = geometric_phase_susy({m, j, r * dir, 0.0, 1.0, 1.0});
          for (double k2 : {-4.0, -1.0, 2.0})
            slack = std::max(
                slack, base - geometric_phase_susy({m, j, r * dir, k2, 1.0, 1.0}));
        }
  const bool pass = infidelity <= 1e-10 && phase_err <= 1e-10 && beta_err <= 1e-8 &&
                    slack <= 1e-9;
  char buf[160];
  std::snprintf(buf, sizeof(buf),
                "infidelity %.1e vs 1e-10; phase %.1e vs 1e-10; beta %.1e vs 1e-8; "
                "minimality slack %.1e vs 1e-9",
                infidelity, phase_err, beta_err, slack);
  return {pass, buf};
}

Outcome algebra_structure() {
  double residual = 0.0;
  for (int m = 1; m <= 3; ++m) residual = std::max(residual, check_pha(m, 64));

  // each residue-class subspace is orthogonal to the others and closed
  // under the m-th ladder powers
  bool structure = true;
  const int dim = 64;
  for (int m = 1; m <= 3 && structure; ++m)
    for (int j = 0; j < m && structure; ++j)
      for (int n = 0; n < 4 && structure; ++n) {
        const FockVector v = basis_state(m * n + j, dim);
        for (int jj = 0; jj < m; ++jj)
          for (int nn = 0; nn < 4; ++nn)
            if (jj != j && std::abs(inner(v, basis_state(m * nn + jj, dim))) != 0.0)
              structure = false;
        for (const FockVector& w : {power_annihilate(v, m), power_create(v, m)})
          for (int s = 0; s < dim; ++s)
            if (std::abs(w.c[(size_t)s]) > 0.0 && (s - j) % m != 0) structure = false;
      }
  char buf[128];
  std::snprintf(buf, sizeof(buf),
                "closure residual %.2e vs 1e-9; subspace structure %s", residual,
                structure ? "intact" : "broken");
  return {residual <= 1e-9 && structure, buf};
}

Outcome self_verification() {
  namespace fs = std::filesystem;
  const fs::path report =
      fs::temp_directory_path() /
      ("susyphoton-acceptance-" + std::to_string(::getpid()) + ".json");
  const std::string cmd =
      "\"" + g_cli + "\" verify full --out \"" + report.string() + "\" 2> /dev/null";
  const int status = std::system(cmd.c_str());
  const int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  bool all = false;
  size_t n_checks = 0;
  std::ifstream f(report);
  if (f) {
    try {
      nlohmann::json doc = nlohmann::json::parse(f);
      all = doc.value("all_passed", false);
      n_checks = doc["checks"].size();
    } catch (...) {
    }
  }
  fs::remove(report);
  char buf[96];
  std::snprintf(buf, sizeof(buf), "exit %d, %zu checks, all_passed=%s", code, n_checks,
                all ? "true" : "false");
  return {code == 0 && all, buf};
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::fprintf(stderr, "usage: acceptance <susyphoton-binary>\n");
    return 1;
  }
  g_cli = argv[1];

  struct Criterion {
    const char* what;
    double budget_s;
    Outcome (*run)();
  };
  const Criterion criteria[] = {
      {"uncertainty product reaches the number-state floor j+1/2 as z -> 0", 1.0,
       fock_floor},
      {"single-ladder families stay at the minimal product 1/2", 1.0, minimal_products},
      {"strong-coupling uncertainty ceiling near 1.5 on the label grid", 30.0,
       strong_coupling_ceiling},
      {"Poissonian couplings match the 18 reference roots", 60.0, poissonian_roots},
      {"even/odd Mandel Q decays to zero by |z|^2 = 5", 1.0, mandel_decay},
      {"supercoherent eigen-residuals across both construction families", 10.0,
       eigen_residuals},
      {"closed-form statistics equal the truncated-space oracle at two truncations",
       120.0, closed_vs_oracle},
      {"Wigner engine: kernels, normalization, negativity, positivity", 180.0,
       wigner_engine},
      {"cyclic loops: fidelity, graded total phase, geometric-phase closed forms",
       60.0, cyclic_phases},
      {"polynomial algebra closure and ladder-subspace structure", 5.0,
       algebra_structure},
      {"self-verification command passes end-to-end", 600.0, self_verification},
  };

  int failures = 0;
  for (size_t i = 0; i < sizeof(criteria) / sizeof(criteria[0]); ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    const Outcome out = criteria[i].run();
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_budget = secs < criteria[i].budget_s;
    const bool ok = out.passed && in_budget;
    std::printf("[%s] %2zu. %s (%s; %.2f s of %.0f s budget)\n", ok ? "PASS" : "FAIL",
                i + 1, criteria[i].what, out.detail.c_str(), secs,
                criteria[i].budget_s);
    if (!ok) ++failures;
  }
  if (failures) std::printf("%d criterion(s) failed\n", failures);
  return failures;
}
