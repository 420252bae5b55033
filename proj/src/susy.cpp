#include "susyphoton/susy.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace susyphoton {

namespace {

constexpr double kSqrt2 = std::numbers::sqrt2;

// integer power by repeated multiplication; std::pow(complex, int) goes
// through exp/log and produces NaN at the origin
cplx ipow(cplx b, int e) {
  cplx r = 1.0;
  for (int i = 0; i < e; ++i) r *= b;
  return r;
}

void validate_labels(int m, int j) {
  if (m < 1) throw std::invalid_argument("susy: need m >= 1");
  if (j < 0 || j >= m) throw std::invalid_argument("susy: need 0 <= j < m");
}

void validate_susy(const SusySpec& s) {
  validate_labels(s.m, s.j);
  if (s.a_j == cplx{0.0, 0.0} && s.c_mj == cplx{0.0, 0.0})
    throw std::invalid_argument("susy: amplitudes a_j and c_mj cannot both vanish");
}

// product of the m integers following idx, i.e. (idx+1)(idx+2)...(idx+m)
double rung_factor(int idx, int m) {
  double f = 1.0;
  for (int i = idx + 1; i <= idx + m; ++i) f *= (double)i;
  return f;
}

// Unnormalized spinor straight from the coefficient recursion with
// alpha = z^m.  Regular at z = 0: the j = 0 coupling term carries
// alpha^{n-1}, so its n = 1 contribution survives the limit.
SpinorState raw_spinor(const SusySpec& spec, int dim) {
  const int m = spec.m, j = spec.j;
  const int mj = susy_anchor(m, j);
  const cplx alpha = ipow(spec.z, m);
  SpinorState out{FockVector(dim), FockVector(dim)};

  // lower ladder: coefficient c_{mn+mj} at Fock index mn+mj-1,
  // c_{mn+mj} = sqrt((mj-1)!/(mn+mj-1)!) alpha^n c_mj
  cplx t = spec.c_mj;
  for (int idx = mj - 1; idx < dim; idx += m) {
    out.lower.c[idx] = t;
    t *= alpha / std::sqrt(rung_factor(idx, m));
  }

  // upper ladder, free part: sqrt(j!/(mn+j)!) alpha^n a_j
  t = spec.a_j;
  for (int idx = j; idx < dim; idx += m) {
    out.upper.c[idx] += t;
    t *= alpha / std::sqrt(rung_factor(idx, m));
  }

  // upper ladder, coupling part for n >= 1:
  // -sqrt((mj-1)!/(mn+j)!) (m n) k2 alpha^{n - [j==0]} c_mj
  if (spec.k2 != 0.0 && spec.c_mj != cplx{0.0, 0.0}) {
    const int delta = (j == 0) ? 1 : 0;
    t = std::exp(0.5 * (log_factorial(mj - 1) - log_factorial(m + j))) *
        ipow(alpha, 1 - delta) * spec.k2 * spec.c_mj;
    int n = 1;
    for (int idx = m + j; idx < dim; idx += m, ++n) {
      out.upper.c[idx] -= (double)(m * n) * t;
      t *= alpha / std::sqrt(rung_factor(idx, m));
    }
  }
  return out;
}

}  // namespace

int susy_anchor(int m, int j) {
  validate_labels(m, j);
  return j == 0 ? m : j;
}

SpinorState spinor_scale(const SpinorState& s, cplx a) {
  return {scale(s.upper, a), scale(s.lower, a)};
}

SpinorState spinor_add(const SpinorState& a, const SpinorState& b) {
  return {add(a.upper, b.upper), add(a.lower, b.lower)};
}

SpinorState spinor_normalized(const SpinorState& s) {
  const double n = s.norm();
  if (n <= 0.0) throw std::invalid_argument("spinor_normalized: zero spinor");
  return spinor_scale(s, 1.0 / n);
}

cplx spinor_inner(const SpinorState& a, const SpinorState& b) {
  return inner(a.upper, b.upper) + inner(a.lower, b.lower);
}

SpinorState susy_hamiltonian_apply(const SpinorState& s, double omega) {
  SpinorState out{FockVector(s.upper.dim()), FockVector(s.lower.dim())};
  out.upper.trunc_loss = s.upper.trunc_loss;
  out.lower.trunc_loss = s.lower.trunc_loss;
  for (int n = 0; n < s.upper.dim(); ++n) out.upper.c[n] = omega * (double)n * s.upper.c[n];
  for (int k = 0; k < s.lower.dim(); ++k) out.lower.c[k] = omega * (double)(k + 1) * s.lower.c[k];
  return out;
}

SpinorState sao_apply(const SaoParams& p, const SpinorState& s) {
  return {add(scale(annihilate(s.upper), p.k1), scale(s.lower, p.k2)),
          add(scale(power_annihilate(s.upper, 2), p.k3), scale(annihilate(s.lower), p.k4))};
}

SpinorState sao_power_apply(double k2, int m, const SpinorState& s) {
  if (m < 1) throw std::invalid_argument("sao_power_apply: need m >= 1");
  return {add(power_annihilate(s.upper, m),
              scale(power_annihilate(s.lower, m - 1), (double)m * k2)),
          power_annihilate(s.lower, m)};
}

SpinorState build_supercoherent(const SusySpec& spec, const TruncationPolicy& pol) {
  validate_susy(spec);
  const int dim = pol.dimension(std::abs(spec.z), spec.m);
  const SpinorState zu = raw_spinor(spec, dim);
  const double n2 = zu.norm2();
  if (n2 <= 0.0) throw std::runtime_error("build_supercoherent: assembled state vanished");
  if (spec.z != cplx{0.0, 0.0}) {
    const double exact = susy_closed_moments(spec).norm2;
    const double tail = std::max(0.0, 1.0 - n2 / exact);
    if (tail > pol.tail_tol)
      throw std::runtime_error("build_supercoherent: truncated tail mass " +
                               std::to_string(tail) +
                               " exceeds tolerance; increase the truncation base");
  }
  return spinor_scale(zu, 1.0 / std::sqrt(n2));
}

SpinorState build_supercoherent_alt(const SusySpec& spec, cplx chi1, cplx chi2,
                                    const TruncationPolicy& pol) {
  validate_labels(spec.m, spec.j);
  if (chi1 == cplx{0.0, 0.0} && chi2 == cplx{0.0, 0.0})
    throw std::invalid_argument("build_supercoherent_alt: chi1 and chi2 cannot both vanish");
  const int dim = pol.dimension(std::abs(spec.z), spec.m);
  const int sj = residue_next(spec.m, spec.j);
  const FockVector uj = mcs_series(spec.m, spec.j, spec.z, dim);
  const SpinorState fam_f{uj, FockVector(dim)};
  // (1/sqrt2) (k2 conj(z) u_s - k2 u_s', u_j); the derivative term makes the
  // extra m z^{m-1} piece of a^m u_s' cancel the coupling channel exactly
  const FockVector us = mcs_series(spec.m, sj, spec.z, dim);
  const FockVector dus = derivative_state(spec.m, sj, spec.z, pol);
  const SpinorState fam_s{
      scale(add(scale(us, spec.k2 * std::conj(spec.z)), scale(dus, -spec.k2)), 1.0 / kSqrt2),
      scale(uj, 1.0 / kSqrt2)};
  return spinor_normalized(spinor_add(spinor_scale(fam_f, chi1), spinor_scale(fam_s, chi2)));
}

FockVector derivative_state(int m, int j, cplx z, const TruncationPolicy& pol) {
  validate_labels(m, j);
  const int dim = pol.dimension(std::abs(z), m);
  // term-by-term derivative: K z^{K-1} / sqrt(K!) on the ladder K ≡ j
  FockVector d(dim);
  cplx w = 1.0;  // z^{K-1} / sqrt(K!) at K = 1
  for (int K = 1; K < dim; ++K) {
    if (K % m == j) d.c[K] = (double)K * w;
    w *= z / std::sqrt((double)(K + 1));
  }
  // same vector as a† on the series anchored one step below
  const FockVector alt = create(mcs_series(m, susy_anchor(m, j) - 1, z, dim));
  const double resid = add(d, scale(alt, -1.0)).norm();
  if (resid > 1e-11 * std::max(1.0, d.norm()))
    throw std::runtime_error("derivative_state: dual forms disagree");
  return d;
}

TildeAmps tilde_amplitudes(const SusySpec& spec) {
  validate_susy(spec);
  if (spec.z == cplx{0.0, 0.0})
    throw std::invalid_argument("tilde_amplitudes: undefined at z = 0");
  const int mj = susy_anchor(spec.m, spec.j);
  const cplx zinv = 1.0 / spec.z;
  const cplx c_t = std::exp(0.5 * log_factorial(mj - 1)) * ipow(zinv, mj - 1) * spec.c_mj;
  const cplx a_t = std::exp(0.5 * log_factorial(spec.j)) * ipow(zinv, spec.j) * spec.a_j +
                   (double)spec.j * spec.k2 * zinv * c_t;
  return {a_t, c_t};
}

SusyClosedMoments susy_closed_moments(const SusySpec& spec) {
  validate_susy(spec);
  if (spec.z == cplx{0.0, 0.0})
    throw std::invalid_argument("susy_closed_moments: requires z != 0");
  const int m = spec.m;
  const double x = std::norm(spec.z);
  const double k2 = spec.k2;
  const TildeAmps t = tilde_amplitudes(spec);
  const double A = std::norm(t.a_tilde);
  const double C = std::norm(t.c_tilde);
  const int rP = residue_prev(m, spec.j);
  const int rPP = residue_prev(m, rP);
  const int rP3 = residue_prev(m, rPP);
  const int rP4 = residue_prev(m, rP3);
  const double Xj = ladder_sum(m, spec.j, x);
  const double XP = ladder_sum(m, rP, x);
  const double XPP = ladder_sum(m, rPP, x);
  const double XP3 = ladder_sum(m, rP3, x);
  const double XP4 = ladder_sum(m, rP4, x);
  const cplx ac = std::conj(t.a_tilde) * t.c_tilde;
  const double rc = (ac * std::conj(spec.z)).real();
  const double rcz = (ac * spec.z).real();
  const double rz3 = (ac * ipow(std::conj(spec.z), 3)).real();

  SusyClosedMoments out{};
  out.norm2 = A * Xj + C * XP + C * k2 * k2 * (x * XPP + XP) - 2.0 * k2 * XP * rc;
  out.nbar_num = A * x * XP + C * x * XPP +
                 C * k2 * k2 * (x * x * XP3 + 3.0 * x * XPP + XP) -
                 2.0 * k2 * (x * XPP + XP) * rc;
  out.n2_num = A * x * x * XPP + C * x * x * XP3 +
               C * k2 * k2 * (x * x * x * XP4 + 5.0 * x * x * XP3 + 4.0 * x * XPP) -
               2.0 * k2 * (x * x * XP3 + 2.0 * x * XPP) * rc;
  out.h_num = out.nbar_num + C * XP;
  for (int k = 0; k < 2; ++k) {
    const double sgn = (k == 0) ? 1.0 : -1.0;
    double s2 = A * (x * XP + 0.5 * Xj) + C * (x * XPP + 0.5 * XP) +
                C * k2 * k2 * (x * x * XP3 + 3.5 * x * XPP + 1.5 * XP) -
                k2 * (2.0 * x * XPP + 3.0 * XP) * rc;
    if (m <= 2) {
      // both components are a^2 eigenstates only when m divides 2
      const double re_z2 = (spec.z * spec.z).real();
      s2 += sgn * (re_z2 * (A * Xj + C * XP + C * k2 * k2 * (x * XPP + 3.0 * XP)) -
                   k2 * (x * XP + 2.0 * Xj) * rcz - k2 * XP * rz3);
    }
    out.s2_num[k] = s2;
    double sm = 0.0;
    if (m == 1) {
      // <a> couples neighbouring rungs, so only the gapless family has it
      const cplx zz = spec.z;
      const cplx B =
          (A + C) * (zz + sgn * std::conj(zz)) +
          C * k2 * k2 * (x + 2.0) * (zz + sgn * std::conj(zz)) -
          k2 * (ac * (x + 1.0 + sgn * std::conj(zz) * std::conj(zz)) +
                std::conj(ac) * (zz * zz + sgn * (x + 1.0)));
      sm = Xj * ((k == 0) ? B.real() : B.imag()) / kSqrt2;
    }
    out.s_mean_num[k] = sm;
  }
  return out;
}

double susy_normalization(const SusySpec& spec, const TruncationPolicy& pol) {
  validate_susy(spec);
  const int dim = pol.dimension(std::abs(spec.z), spec.m);
  const double direct = 1.0 / raw_spinor(spec, dim).norm();
  if (spec.z == cplx{0.0, 0.0}) return direct;
  const double closed = 1.0 / std::sqrt(susy_closed_moments(spec).norm2);
  if (std::abs(closed - direct) > 1e-10 * closed)
    throw std::runtime_error("susy_normalization: closed form disagrees with direct norm");
  return closed;
}

namespace {

struct OracleMoments {
  double nbar, n2;
  cplx a1, a2;
};

OracleMoments oracle_moments(const SpinorState& st) {
  const FockVector au = annihilate(st.upper);
  const FockVector al = annihilate(st.lower);
  const FockVector aau = annihilate(au);
  const FockVector aal = annihilate(al);
  OracleMoments o{};
  o.nbar = au.norm2() + al.norm2();
  o.n2 = aau.norm2() + aal.norm2();
  o.a1 = inner(st.upper, au) + inner(st.lower, al);
  o.a2 = inner(st.upper, aau) + inner(st.lower, aal);
  return o;
}

}  // namespace

double s_variance_susy(const SusySpec& spec, int k, const TruncationPolicy& pol) {
  if (k != 0 && k != 1) throw std::invalid_argument("s_variance_susy: k must be 0 or 1");
  const SpinorState st = build_supercoherent(spec, pol);
  const OracleMoments o = oracle_moments(st);
  const double sgn = (k == 0) ? 1.0 : -1.0;
  const double mean_o = kSqrt2 * (k == 0 ? o.a1.real() : o.a1.imag());
  const double sec_o = o.nbar + 0.5 + sgn * o.a2.real();
  const double var_o = sec_o - mean_o * mean_o;
  if (spec.z == cplx{0.0, 0.0}) return var_o;
  const SusyClosedMoments cm = susy_closed_moments(spec);
  const double mean_c = cm.s_mean_num[k] / cm.norm2;
  const double sec_c = cm.s2_num[k] / cm.norm2;
  const double var_c = sec_c - mean_c * mean_c;
  if (std::abs(var_c - var_o) > 1e-8 * std::max(1.0, std::abs(var_o)))
    throw std::runtime_error("s_variance_susy: closed form disagrees with moment oracle");
  return var_c;
}

HurResult hur_susy(const SusySpec& spec, const TruncationPolicy& pol) {
  const double vq = std::max(0.0, s_variance_susy(spec, 0, pol));
  const double vp = std::max(0.0, s_variance_susy(spec, 1, pol));
  return {std::sqrt(vq), std::sqrt(vp), std::sqrt(vq * vp)};
}

double mandel_q_susy(const SusySpec& spec, const TruncationPolicy& pol) {
  const SpinorState st = build_supercoherent(spec, pol);
  const OracleMoments o = oracle_moments(st);
  if (o.nbar <= 1e-12)
    throw std::invalid_argument("mandel_q_susy: undefined at zero mean photon number");
  const double q_o = (o.n2 - o.nbar * o.nbar) / o.nbar;
  if (spec.z == cplx{0.0, 0.0}) return q_o;
  const SusyClosedMoments cm = susy_closed_moments(spec);
  const double q_c = cm.n2_num / cm.nbar_num - cm.nbar_num / cm.norm2;
  if (std::abs(q_c - q_o) > 1e-8 * std::max(1.0, std::abs(q_o)))
    throw std::runtime_error("mandel_q_susy: closed form disagrees with moment oracle");
  return q_c;
}

double mandel_root_k2(int m, int j, cplx z, double lo, double hi, const TruncationPolicy& pol) {
  if (!(hi > lo)) throw std::invalid_argument("mandel_root_k2: empty scan interval");
  SusySpec spec{m, j, z, 0.0, cplx{1.0, 0.0}, cplx{1.0, 0.0}};
  const auto q_at = [&](double k2) {
    spec.k2 = k2;
    return mandel_q_susy(spec, pol);
  };
  constexpr double kStep = 0.05;
  double a = lo;
  double qa = q_at(a);
  while (a < hi) {
    const double b = std::min(a + kStep, hi);
    const double qb = q_at(b);
    if (qa == 0.0) return a;
    if (qa * qb <= 0.0) {
      double x0 = a, x1 = b, sign_left = qa;
      while (x1 - x0 > 1e-6) {
        const double mid = 0.5 * (x0 + x1);
        const double qm = q_at(mid);
        if (sign_left * qm <= 0.0) {
          x1 = mid;
        } else {
          x0 = mid;
          sign_left = qm;
        }
      }
      return 0.5 * (x0 + x1);
    }
    a = b;
    qa = qb;
  }
  throw std::runtime_error("no Poissonian crossing in range");
}

}  // namespace susyphoton
