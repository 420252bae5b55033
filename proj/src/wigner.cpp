#include "susyphoton/wigner.hpp"

#include <cstdlib>
#include <map>
#include <mutex>
#include <numbers>
#include <thread>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace susyphoton {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kSqrt2 = std::numbers::sqrt2;
constexpr double kPiQuarterInv = 0.7511255444649425;  // pi^{-1/4}

// shared factors of the four Gaussian pair kernels
struct PairEval {
  cplx w;   // plain kernel value
  cplx dq;  // q offset from the pair midpoint
  cplx dp;  // p offset
};

PairEval eval_pair(cplx alpha, cplx beta, double q, double p) {
  const cplx ac = std::conj(alpha);
  const cplx dq = q - (beta + ac) / kSqrt2;
  const cplx dp = p - (beta - ac) / (kSqrt2 * cplx(0.0, 1.0));
  const cplx expo =
      -dq * dq - dp * dp + ac * beta - 0.5 * (std::norm(alpha) + std::norm(beta));
  return {std::exp(expo) / kPi, dq, dp};
}

cplx cross_i(const PairEval& e, cplx beta, double q, double p) {
  return kSqrt2 * (cplx(q, p) - beta / kSqrt2) * e.w;
}

cplx cross_ii(const PairEval& e, cplx alpha, double q, double p) {
  return kSqrt2 * (cplx(q, -p) - std::conj(alpha) / kSqrt2) * e.w;
}

cplx deriv_pair(const PairEval& e, double q, double p) {
  const cplx qq = q + e.dq;
  const cplx pp = p + e.dp;
  return (0.5 * (qq * qq + pp * pp) - 1.0) * e.w;
}

// ---------------------------------------------------------------------------
// Gauss-Hermite rules.  Newton iteration runs on the normalized Hermite
// functions (polynomials carrying their Gaussian half-weight), which keeps
// every intermediate O(1) and yields the total weights w * e^{y^2} directly.

struct GhRule {
  std::vector<double> y;
  std::vector<double> w;
};

GhRule make_gh_rule(int n) {
  GhRule r;
  r.y.assign(n, 0.0);
  r.w.assign(n, 0.0);
  const int half = (n + 1) / 2;
  double z = 0.0;
  for (int i = 0; i < half; ++i) {
    // seed estimates for the i-th largest root
    if (i == 0) {
      z = std::sqrt(2.0 * n + 1.0) - 1.85575 * std::pow(2.0 * n + 1.0, -0.16667);
    } else if (i == 1) {
      z -= 1.14 * std::pow((double)n, 0.426) / z;
    } else if (i == 2) {
      z = 1.86 * z - 0.86 * r.y[0];
    } else if (i == 3) {
      z = 1.91 * z - 0.91 * r.y[1];
    } else {
      z = 2.0 * z - r.y[i - 2];
    }
    double pp = 0.0;
    for (int it = 0;; ++it) {
      if (it >= 64) throw std::runtime_error("gauss_hermite: Newton iteration failed to converge");
      double p1 = kPiQuarterInv * std::exp(-0.5 * z * z);
      double p2 = 0.0;
      for (int k = 0; k < n; ++k) {
        const double p3 = p2;
        p2 = p1;
        p1 = z * std::sqrt(2.0 / (k + 1)) * p2 - std::sqrt((double)k / (k + 1)) * p3;
      }
      pp = std::sqrt(2.0 * n) * p2;
      const double step = p1 / pp;
      z -= step;
      if (std::abs(step) <= 1e-14 * std::max(1.0, std::abs(z))) break;
    }
    r.y[i] = z;
    r.y[n - 1 - i] = -z;
    r.w[i] = 2.0 / (pp * pp);
    r.w[n - 1 - i] = r.w[i];
  }
  return r;
}

const GhRule& gh_rule(int n) {
  static std::mutex mu;
  static std::map<int, GhRule> cache;
  const std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, make_gh_rule(n)).first;
  return it->second;
}

int quadrature_nodes(int dim) {
  if (dim > 128) {
    throw std::invalid_argument(
        "wigner quadrature: dimension exceeds the stability bound (128)");
  }
  return 2 * dim + 24;
}

WignerGrid make_grid(const WignerGridSpec& g) {
  if (g.nq < 2 || g.np < 2) throw std::invalid_argument("wigner grid: need at least 2x2 cells");
  if (!(g.q_max > g.q_min) || !(g.p_max > g.p_min)) {
    throw std::invalid_argument("wigner grid: empty axis range");
  }
  WignerGrid out;
  out.q_min = g.q_min;
  out.q_max = g.q_max;
  out.p_min = g.p_min;
  out.p_max = g.p_max;
  out.nq = g.nq;
  out.np = g.np;
  out.values.assign((size_t)g.nq * g.np, 0.0);
  out.cell_area = out.dq() * out.dp();
  return out;
}

void check_residual(const WignerGrid& grid) {
  const double resid = grid.norm_residual();
  if (resid > 1e-3) {
    throw std::runtime_error(
        "wigner grid: normalization residual " + std::to_string(resid) +
        " -- grid too small for the state's support, enlarge the q/p window");
  }
}

// row-parallel fill; fill_row(iq) must be pure and write only its own row
template <class F>
void fill_rows(const WignerGrid& grid, F&& fill_row) {
#ifdef _OPENMP
#pragma omp parallel for schedule(static) num_threads(thread_limit())
#endif
  for (int iq = 0; iq < grid.nq; ++iq) fill_row(iq);
}

// quadrature-based fill for an arbitrary pair of physical components; per
// row the wavefunction is evaluated once per node and reused for every p
void fill_grid_quadrature(WignerGrid& grid, const std::vector<FockVector>& comps) {
  int dim = 0;
  for (const auto& v : comps) dim = std::max(dim, v.dim());
  const GhRule& rule = gh_rule(quadrature_nodes(dim));
  const size_t nn = rule.y.size();
  fill_rows(grid, [&](int iq) {
    const double q = grid.q_at(iq);
    std::vector<cplx> left(nn * comps.size()), right(nn * comps.size());
    for (size_t ci = 0; ci < comps.size(); ++ci) {
      for (size_t i = 0; i < nn; ++i) {
        left[ci * nn + i] = std::conj(position_wavefunction(comps[ci], q + rule.y[i]));
        right[ci * nn + i] = position_wavefunction(comps[ci], q - rule.y[i]);
      }
    }
    for (int ip = 0; ip < grid.np; ++ip) {
      const double p = grid.p_at(ip);
      cplx acc = 0.0;
      for (size_t i = 0; i < nn; ++i) {
        const cplx phase = std::exp(cplx(0.0, 2.0 * p * rule.y[i]));
        cplx pair = 0.0;
        for (size_t ci = 0; ci < comps.size(); ++ci) {
          pair += left[ci * nn + i] * right[ci * nn + i];
        }
        acc += rule.w[i] * phase * pair;
      }
      grid.at(iq, ip) = acc.real() / kPi;
    }
  });
}

// below this |z|^2 the circle-decomposition weights for j > 0 grow like
// x^{-j} and the kernel sum cancels catastrophically; use quadrature instead
constexpr double kClosedFormFloor = 1e-2;

void check_imag_residue(double max_imag) {
  if (max_imag > 1e-12) {
    throw std::runtime_error("wigner grid: kernel sum left imaginary residue " +
                             std::to_string(max_imag));
  }
}

}  // namespace

cplx w_pair(const GaussianPairKernel& k, double q, double p) {
  return eval_pair(k.alpha, k.beta, q, p).w;
}

cplx w_pair_deriv(const GaussianPairKernel& k, double q, double p) {
  return deriv_pair(eval_pair(k.alpha, k.beta, q, p), q, p);
}

cplx w_pair_cross(const GaussianPairKernel& k, double q, double p, CrossVariant variant) {
  const PairEval e = eval_pair(k.alpha, k.beta, q, p);
  return variant == CrossVariant::I ? cross_i(e, k.beta, q, p) : cross_ii(e, k.alpha, q, p);
}

double WignerGrid::integral() const {
  double s = 0.0;
  for (double v : values) s += v;
  return s * cell_area;
}

cplx position_wavefunction(const FockVector& v, double u) {
  if (v.dim() == 0) return 0.0;
  double prev = 0.0;
  double cur = kPiQuarterInv * std::exp(-0.5 * u * u);
  cplx acc = v.c[0] * cur;
  for (int n = 1; n < v.dim(); ++n) {
    const double next = u * std::sqrt(2.0 / n) * cur - std::sqrt((n - 1.0) / n) * prev;
    prev = cur;
    cur = next;
    acc += v.c[n] * cur;
  }
  return acc;
}

cplx wigner_quadrature_cross(const FockVector& bra, const FockVector& ket, double q, double p) {
  const GhRule& rule = gh_rule(quadrature_nodes(std::max(bra.dim(), ket.dim())));
  cplx acc = 0.0;
  for (size_t i = 0; i < rule.y.size(); ++i) {
    const double y = rule.y[i];
    acc += rule.w[i] * std::conj(position_wavefunction(bra, q + y)) *
           position_wavefunction(ket, q - y) * std::exp(cplx(0.0, 2.0 * p * y));
  }
  return acc / kPi;
}

double wigner_quadrature_oracle(const FockVector& v, double q, double p) {
  return wigner_quadrature_cross(v, v, q, p).real();
}

double wigner_quadrature_oracle(const SpinorState& s, double q, double p) {
  return wigner_quadrature_cross(s.upper, s.upper, q, p).real() +
         wigner_quadrature_cross(s.lower, s.lower, q, p).real();
}

int thread_limit() {
  int hw = 0;
#ifdef _OPENMP
  hw = omp_get_max_threads();
#else
  hw = (int)std::thread::hardware_concurrency();
#endif
  if (hw < 1) hw = 1;
  if (const char* env = std::getenv("SUSYPHOTON_THREADS"); env && *env) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end && *end == '\0' && v >= 1 && v <= 256) return (int)v;
  }
  return hw;
}

WignerGrid wigner_scalar_mcs(const McsSpec& spec, const WignerGridSpec& g,
                             const TruncationPolicy& pol) {
  WignerGrid grid = make_grid(g);
  const double x = std::norm(spec.z);
  if (spec.j > 0 && x < kClosedFormFloor) {
    fill_grid_quadrature(grid, {build_mcs(spec, pol).vector});
    check_residual(grid);
    return grid;
  }
  const std::vector<ScsComponent> comps = scs_decomposition(spec);
  const int m = (int)comps.size();
  double max_imag = 0.0;
#ifdef _OPENMP
#pragma omp parallel for schedule(static) num_threads(thread_limit()) reduction(max : max_imag)
#endif
  for (int iq = 0; iq < grid.nq; ++iq) {
    const double q = grid.q_at(iq);
    for (int ip = 0; ip < grid.np; ++ip) {
      const double p = grid.p_at(ip);
      cplx acc = 0.0;
      for (int k = 0; k < m; ++k) {
        for (int l = 0; l < m; ++l) {
          acc += std::conj(comps[k].weight) * comps[l].weight *
                 eval_pair(comps[k].label, comps[l].label, q, p).w;
        }
      }
      max_imag = std::max(max_imag, std::abs(acc.imag()));
      grid.at(iq, ip) = acc.real();
    }
  }
  check_imag_residue(max_imag);
  check_residual(grid);
  return grid;
}

WignerGrid wigner_susy(const SusySpec& spec, const WignerGridSpec& g,
                       const TruncationPolicy& pol) {
  WignerGrid grid = make_grid(g);
  const double x = std::norm(spec.z);
  if (x < kClosedFormFloor) {
    const SpinorState s = build_supercoherent(spec, pol);
    fill_grid_quadrature(grid, {s.upper, s.lower});
    check_residual(grid);
    return grid;
  }

  // circle decomposition of both components: the upper is a superposition
  // of plain coherent pieces (amplitudes A_k) and raised ones (B_k), the
  // lower carries plain pieces C_k; everything is scaled by 1/sqrt(<Z|Z>)
  // up front so the kernel sums stay O(1)
  const TildeAmps t = tilde_amplitudes(spec);
  const SusyClosedMoments mo = susy_closed_moments(spec);
  const int m = spec.m;
  const int prev = residue_prev(m, susy_anchor(m, spec.j));
  const double scale = std::exp(x / 2.0) / (m * std::sqrt(mo.norm2));
  std::vector<cplx> lam(m), ca(m), cb(m), cc(m);
  for (int k = 0; k < m; ++k) {
    const cplx turn = std::exp(cplx(0.0, 2.0 * kPi * k / m));
    lam[k] = spec.z * turn;
    const cplx ph_j = std::exp(cplx(0.0, -2.0 * kPi * k * spec.j / m));
    const cplx ph_p = std::exp(cplx(0.0, -2.0 * kPi * k * prev / m));
    ca[k] = t.a_tilde * scale * ph_j;
    cb[k] = -spec.k2 * t.c_tilde * scale * ph_p;
    cc[k] = t.c_tilde * scale * ph_p;
  }

  double max_imag = 0.0;
#ifdef _OPENMP
#pragma omp parallel for schedule(static) num_threads(thread_limit()) reduction(max : max_imag)
#endif
  for (int iq = 0; iq < grid.nq; ++iq) {
    const double q = grid.q_at(iq);
    for (int ip = 0; ip < grid.np; ++ip) {
      const double p = grid.p_at(ip);
      cplx acc = 0.0;
      for (int k = 0; k < m; ++k) {
        for (int l = 0; l < m; ++l) {
          const PairEval e = eval_pair(lam[k], lam[l], q, p);
          acc += (std::conj(ca[k]) * ca[l] + std::conj(cc[k]) * cc[l]) * e.w;
          acc += std::conj(ca[k]) * cb[l] * cross_ii(e, lam[k], q, p);
          acc += std::conj(cb[k]) * ca[l] * cross_i(e, lam[l], q, p);
          acc += std::conj(cb[k]) * cb[l] * deriv_pair(e, q, p);
        }
      }
      max_imag = std::max(max_imag, std::abs(acc.imag()));
      grid.at(iq, ip) = acc.real();
    }
  }
  check_imag_residue(max_imag);
  check_residual(grid);
  return grid;
}

Negativity negativity(const WignerGrid& g) {
  Negativity out{0.0, 0.0};
  if (g.values.empty()) return out;
  out.min_value = g.values[0];
  for (double v : g.values) {
    out.min_value = std::min(out.min_value, v);
    if (v < 0.0) out.negative_volume += -v * g.cell_area;
  }
  return out;
}

double wigner_marginal_q(const WignerGrid& g, int iq) {
  if (iq < 0 || iq >= g.nq) throw std::invalid_argument("wigner_marginal_q: row out of range");
  double s = 0.0;
  for (int ip = 0; ip < g.np; ++ip) s += g.at(iq, ip);
  return s * g.dp();
}

}  // namespace susyphoton
