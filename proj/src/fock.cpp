#include "susyphoton/fock.hpp"

#include <algorithm>
#include <array>

namespace susyphoton {

double log_factorial(int n) {
  if (n < 0) throw std::invalid_argument("log_factorial: negative argument");
  static const std::array<double, 151> table = [] {
    std::array<double, 151> t{};
    long double acc = 0.0L;
    t[0] = 0.0;
    for (int k = 1; k <= 150; ++k) {
      acc += std::log((long double)k);
      t[k] = (double)acc;
    }
    return t;
  }();
  if (n <= 150) return table[n];
  return std::lgamma((double)n + 1.0);
}

int TruncationPolicy::dimension(double abs_z, int m) const {
  const double x = abs_z * abs_z;
  const int n = (int)std::ceil(x + 10.0 * std::sqrt(x + 1.0)) + base + m;
  // floor so that pathological base overrides still yield a usable space;
  // the builders' tail checks catch the resulting truncation error
  return std::max(n, m + 4);
}

double FockVector::norm2() const {
  double s = 0.0;
  for (const cplx& a : c) s += std::norm(a);
  return s;
}

double FockVector::tail_mass(int guard) const {
  const int start = std::max(0, dim() - guard);
  double s = 0.0;
  for (int n = start; n < dim(); ++n) s += std::norm(c[n]);
  return s;
}

FockVector basis_state(int n, int dim) {
  if (n < 0 || n >= dim) throw std::invalid_argument("basis_state: index out of range");
  FockVector v(dim);
  v.c[n] = 1.0;
  return v;
}

FockVector scale(const FockVector& v, cplx s) {
  FockVector out = v;
  for (cplx& a : out.c) a *= s;
  return out;
}

FockVector add(const FockVector& a, const FockVector& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("add: dimension mismatch");
  FockVector out = a;
  for (int n = 0; n < b.dim(); ++n) out.c[n] += b.c[n];
  out.trunc_loss = a.trunc_loss + b.trunc_loss;
  return out;
}

FockVector normalized(const FockVector& v) {
  const double nrm = v.norm();
  if (nrm <= 0.0) throw std::invalid_argument("normalized: zero vector");
  return scale(v, 1.0 / nrm);
}

FockVector annihilate(const FockVector& v) {
  FockVector out(v.dim());
  out.trunc_loss = v.trunc_loss;
  for (int n = 1; n < v.dim(); ++n) out.c[n - 1] = std::sqrt((double)n) * v.c[n];
  return out;
}

FockVector create(const FockVector& v) {
  FockVector out(v.dim());
  out.trunc_loss = v.trunc_loss;
  const int N = v.dim();
  for (int n = 0; n + 1 < N; ++n) out.c[n + 1] = std::sqrt((double)(n + 1)) * v.c[n];
  if (N > 0) out.trunc_loss += (double)N * std::norm(v.c[N - 1]);
  return out;
}

FockVector power_annihilate(const FockVector& v, int p) {
  if (p < 0) throw std::invalid_argument("power_annihilate: negative power");
  FockVector out = v;
  for (int i = 0; i < p; ++i) out = annihilate(out);
  return out;
}

FockVector power_create(const FockVector& v, int p) {
  if (p < 0) throw std::invalid_argument("power_create: negative power");
  FockVector out = v;
  for (int i = 0; i < p; ++i) out = create(out);
  return out;
}

cplx inner(const FockVector& a, const FockVector& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("inner: dimension mismatch");
  cplx s = 0.0;
  for (int n = 0; n < a.dim(); ++n) s += std::conj(a.c[n]) * b.c[n];
  return s;
}

cplx moment(const FockVector& v, int p, int q) {
  if (p < 0 || q < 0) throw std::invalid_argument("moment: negative operator power");
  if (std::abs(v.norm() - 1.0) > 1e-10)
    throw std::invalid_argument("moment: state is not normalized");
  return inner(power_annihilate(v, p), power_annihilate(v, q));
}

double check_pha(int m, int N) {
  if (m < 1) throw std::invalid_argument("check_pha: need m >= 1");
  if (N <= 2 * m) throw std::invalid_argument("check_pha: need N > 2m");
  double worst = 0.0;
  for (int n = 0; n <= N - 1 - 2 * m; ++n) {
    const FockVector e = basis_state(n, N);
    const FockVector lhs = add(power_annihilate(power_create(e, m), m),
                               scale(power_create(power_annihilate(e, m), m), -1.0));
    // eigenvalues of N_m(H+m) and N_m(H) on |n>
    double up = 1.0, down = 1.0;
    for (int i = 0; i < m; ++i) {
      up *= (double)(n + m - i);
      down *= (double)(n - i);
    }
    const double r = add(lhs, scale(e, -(up - down))).norm();
    worst = std::max(worst, r);
  }
  return worst;
}

}  // namespace susyphoton
