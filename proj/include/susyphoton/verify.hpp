#pragma once

#include <string>
#include <vector>

namespace susyphoton {

// One self-check: `measured` is the worst value the check observed (a
// residual, a relative error, or a signed Wigner minimum) and the check
// passes iff measured <= tolerance.  A check that throws is recorded as
// failed with the exception text in `note`.
struct CheckResult {
  std::string name;
  double measured = 0.0;
  double tolerance = 0.0;
  bool passed = false;
  double seconds = 0.0;
  std::string note;
};

struct VerifyReport {
  bool full = false;
  std::vector<CheckResult> checks;

  bool all_passed() const;
  double total_seconds() const;
};

// Run the built-in cross-validation suite.  The quick tier re-derives the
// core identities (algebra closure, ladder partition, eigen-residuals,
// closed-form moments against truncated-space oracles, kernel/quadrature
// agreement, loop phases); the full tier adds the slower sweeps (root
// spot-checks, discretized phases, truncation doubling, Wigner negativity
// and marginals).
VerifyReport run_verify(bool full);

}  // namespace susyphoton
