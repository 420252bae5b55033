#include "susyphoton/mcs.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace susyphoton {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kSqrt2 = std::numbers::sqrt2;

void validate_spec(int m, int j) {
  if (m < 1) throw std::invalid_argument("mcs: need m >= 1");
  if (j < 0 || j >= m) throw std::invalid_argument("mcs: need 0 <= j < m");
}

}  // namespace

int residue_prev(int m, int r) { return (r - 1 + m) % m; }
int residue_next(int m, int r) { return (r + 1) % m; }

double ladder_sum(int m, int r, double x) {
  validate_spec(m, r);
  if (x < 0.0) throw std::invalid_argument("ladder_sum: negative x");
  if (x == 0.0) return r == 0 ? 1.0 : 0.0;
  double t = std::exp((double)r * std::log(x) - log_factorial(r));
  double s = t;
  const double xm = std::pow(x, m);
  int K = r;
  for (int it = 0; it < 200000; ++it) {
    double f = 1.0;
    for (int i = 1; i <= m; ++i) f *= (double)(K + i);
    t *= xm / f;
    K += m;
    s += t;
    if (t <= s * 1e-18 && (double)K > x) return s;
  }
  throw std::runtime_error("ladder_sum: series did not converge");
}

double ladder_sum_closed(int m, int r, double x) {
  validate_spec(m, r);
  if (x < 0.0) throw std::invalid_argument("ladder_sum_closed: negative x");
  switch (m) {
    case 1:
      return std::exp(x);
    case 2:
      return r == 0 ? std::cosh(x) : std::sinh(x);
    case 3: {
      const double e = std::exp(x);
      const double f = 2.0 * std::exp(-0.5 * x);
      const double arg = 0.5 * std::sqrt(3.0) * x;
      if (r == 0) return (e + f * std::cos(arg)) / 3.0;
      if (r == 1) return (e - f * std::sin(kPi / 6.0 - arg)) / 3.0;
      return (e - f * std::sin(kPi / 6.0 + arg)) / 3.0;
    }
    default:
      throw std::invalid_argument("ladder_sum_closed: no closed form for m > 3");
  }
}

double normalization(int m, int j, double x) {
  validate_spec(m, j);
  if (x < 0.0) throw std::invalid_argument("normalization: negative x");
  const double series = ladder_sum(m, j, x);
  if (series == 0.0)
    throw std::invalid_argument("normalization: degenerate at x = 0 for j > 0");
  if (m <= 3 && x >= 0.25) {
    const double closed = ladder_sum_closed(m, j, x);
    if (std::abs(closed - series) > 1e-12 * series)
      throw std::runtime_error("normalization: closed form disagrees with series");
  }
  return 1.0 / std::sqrt(series);
}

FockVector mcs_series(int m, int r, cplx z, int dim) {
  validate_spec(m, r);
  if (dim <= r) throw std::invalid_argument("mcs_series: dimension below the anchor index");
  FockVector u(dim);
  cplx t = 1.0;  // z^K / sqrt(K!)
  for (int K = 0; K < dim; ++K) {
    if (K % m == r) u.c[K] = t;
    t *= z / std::sqrt((double)(K + 1));
  }
  return u;
}

McsState build_mcs(const McsSpec& spec, const TruncationPolicy& pol) {
  validate_spec(spec.m, spec.j);
  const double x = std::norm(spec.z);
  const int dim = pol.dimension(std::abs(spec.z), spec.m);
  if (x == 0.0) {
    // limit state of the family at z = 0 is |j>, with unnormalized series
    // coefficient 1/sqrt(j!)
    FockVector u(dim);
    u.c[spec.j] = 1.0;
    double jfac = 1.0;
    for (int i = 2; i <= spec.j; ++i) jfac *= (double)i;
    return {spec, u, std::sqrt(jfac)};
  }
  FockVector u = mcs_series(spec.m, spec.j, spec.z, dim);
  const double ladder = ladder_sum(spec.m, spec.j, x);
  const double tail = std::max(0.0, 1.0 - u.norm2() / ladder);
  if (tail > pol.tail_tol)
    throw std::runtime_error(
        "build_mcs: truncated tail mass " + std::to_string(tail) +
        " exceeds tolerance; increase the truncation base");
  return {spec, normalized(u), 1.0 / std::sqrt(ladder)};
}

std::vector<ScsComponent> scs_decomposition(const McsSpec& spec) {
  validate_spec(spec.m, spec.j);
  const double x = std::norm(spec.z);
  if (x == 0.0 && spec.j > 0)
    throw std::invalid_argument(
        "scs_decomposition: degenerate at z = 0 for j > 0");
  const double pref = std::exp(0.5 * x) / ((double)spec.m * std::sqrt(ladder_sum(spec.m, spec.j, x)));
  std::vector<ScsComponent> out;
  out.reserve(spec.m);
  for (int k = 0; k < spec.m; ++k) {
    const double ang = 2.0 * kPi * (double)k / (double)spec.m;
    const cplx omega = std::polar(1.0, ang);
    const cplx phase = std::polar(1.0, -ang * (double)spec.j);
    out.push_back({spec.z * omega, pref * phase});
  }
  return out;
}

SMoments s_moments(const McsSpec& spec, int k) {
  validate_spec(spec.m, spec.j);
  if (k != 0 && k != 1) throw std::invalid_argument("s_moments: k must be 0 or 1");
  const double x = std::norm(spec.z);
  double mean = 0.0;
  if (spec.m == 1) mean = kSqrt2 * (k == 0 ? spec.z.real() : spec.z.imag());
  double nbar;
  if (x == 0.0) {
    nbar = (double)spec.j;
  } else {
    nbar = x * ladder_sum(spec.m, residue_prev(spec.m, spec.j), x) /
           ladder_sum(spec.m, spec.j, x);
  }
  // <a^2> = z^2 exactly when the state is an a^2 eigenstate, i.e. m | 2
  double a2 = 0.0;
  if (spec.m <= 2) a2 = spec.z.real() * spec.z.real() - spec.z.imag() * spec.z.imag();
  const double sgn = (k == 0) ? 1.0 : -1.0;
  return {mean, nbar + 0.5 + sgn * a2};
}

HurResult hur(const McsSpec& spec) {
  const SMoments q = s_moments(spec, 0);
  const SMoments p = s_moments(spec, 1);
  const double vq = std::max(0.0, q.second - q.mean * q.mean);
  const double vp = std::max(0.0, p.second - p.mean * p.mean);
  return {std::sqrt(vq), std::sqrt(vp), std::sqrt(vq * vp)};
}

double mandel_q(const McsSpec& spec, const TruncationPolicy& pol) {
  validate_spec(spec.m, spec.j);
  const double x = std::norm(spec.z);
  if (x == 0.0 && spec.j == 0)
    throw std::invalid_argument("mandel_q: undefined for the vacuum member");
  const McsState st = build_mcs(spec, pol);
  const double nbar = moment(st.vector, 1, 1).real();
  const double n2 = moment(st.vector, 2, 2).real();
  const double q = (n2 - nbar * nbar) / nbar;
  if (x > 0.0) {
    const int p1 = residue_prev(spec.m, spec.j);
    const int p2 = residue_prev(spec.m, p1);
    const double xj = ladder_sum(spec.m, spec.j, x);
    const double xp = ladder_sum(spec.m, p1, x);
    const double xpp = ladder_sum(spec.m, p2, x);
    const double closed = x * (xpp / xp - xp / xj);
    if (std::abs(closed - q) > 1e-9 * std::max(1.0, std::abs(q)))
      throw std::runtime_error("mandel_q: closed form disagrees with moment oracle");
  }
  return q;
}

double geometric_phase_scalar(const McsSpec& spec) {
  validate_spec(spec.m, spec.j);
  const double x = std::norm(spec.z);
  if (x == 0.0) return 0.0;
  const double nbar = x * ladder_sum(spec.m, residue_prev(spec.m, spec.j), x) /
                      ladder_sum(spec.m, spec.j, x);
  return (2.0 * kPi / (double)spec.m) * (nbar - (double)spec.j);
}

}  // namespace susyphoton
