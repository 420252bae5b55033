#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

namespace susyphoton {

using cplx = std::complex<double>;

// log(n!) -- exact accumulation for small n, lgamma above
double log_factorial(int n);

// Truncated Fock-space sizing.  dimension() keeps the tail mass of every
// state family used here far below tail_tol over the working range; callers
// that override base downward are caught by the builders' tail checks.
struct TruncationPolicy {
  int base = 16;
  double tail_tol = 1e-10;
  int dimension(double abs_z, int m) const;
};

// Complex amplitudes over {|0>, ..., |dim-1>}.  Operations are pure
// functions; the one piece of bookkeeping is trunc_loss, the probability
// mass a raising operator pushed past the top slot (carried forward,
// never silently dropped).
struct FockVector {
  std::vector<cplx> c;
  double trunc_loss = 0.0;

  FockVector() = default;
  explicit FockVector(int dim) : c(dim, cplx{0.0, 0.0}) {}

  int dim() const { return (int)c.size(); }
  double norm2() const;
  double norm() const { return std::sqrt(norm2()); }
  // squared mass in the top `guard` slots; tail-health diagnostic
  double tail_mass(int guard) const;
};

FockVector basis_state(int n, int dim);
FockVector scale(const FockVector& v, cplx s);
FockVector add(const FockVector& a, const FockVector& b);
FockVector normalized(const FockVector& v);

// a |n> = sqrt(n) |n-1>
FockVector annihilate(const FockVector& v);
// a† |n> = sqrt(n+1) |n+1>; amplitude pushed past the top slot is recorded
// in the result's trunc_loss
FockVector create(const FockVector& v);
FockVector power_annihilate(const FockVector& v, int p);  // a^p
FockVector power_create(const FockVector& v, int p);      // a†^p

cplx inner(const FockVector& a, const FockVector& b);  // <a|b>

// <a†^p a^q> on a normalized state (|norm - 1| <= 1e-10 enforced)
cplx moment(const FockVector& v, int p, int q);

// Polynomial-Heisenberg-algebra closure for A = a^m with H = a†a + 1/2:
// max residual of [A, A†] = N_m(H + m) - N_m(H) over |n>, n <= N-1-2m,
// where N_m(H) = prod_{i<m} (H - i - 1/2).  Requires N > 2m.
double check_pha(int m, int N);

}  // namespace susyphoton
