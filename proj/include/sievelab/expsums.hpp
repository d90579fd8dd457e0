#pragma once

#include <vector>

#include "sievelab/arith.hpp"

namespace sievelab {

struct KloostermanValue {
  double value = 0;          // real part (the sum is real)
  double imag_residual = 0;  // numerically ~0; kept as a sanity signal
};

/// S(a, b; q) = sum over x mod q, (x,q)=1 of e((a x + b xbar)/q).
KloostermanValue kloosterman(long long a, long long b, long long q);

/// Ramanujan sum c_q(b) = sum_{d | (q,b)} d mu(q/d), exact.
long long ramanujan(long long q, long long b);

/// c_q(b) by the direct exponential sum (float), for cross-checks.
double ramanujan_direct(long long q, long long b);

struct WeilReport {
  long long q_limit = 0;
  long long pairs_checked = 0;
  long long violations = 0;
  double max_ratio = 0;  // max |S| / (tau(q) sqrt(q) gcd(a,b,q)^(1/2))
  long long max_ratio_q = 0, max_ratio_a = 0, max_ratio_b = 0;
};

/// Exhaustive |S(a,b;q)| <= tau(q) sqrt(q) gcd(a,b,q)^(1/2) scan over all
/// 1 <= a, b <= q <= q_limit; OpenMP over q, S(a,b)=S(b,a) halves the work.
WeilReport weil_check(long long q_limit, int workers = 0);

/// Serial reference implementation kept for testing and benchmarking.
WeilReport weil_check_serial(long long q_limit);

struct ResidualReport {
  double lhs = 0;
  double rhs = 0;
  double residual = 0;
  double envelope = 0;  // informational comparison scale, 0 if unused
};

/// Both sides of the completion formula
/// sum_{m = a mod q} psi0(m/M)
///   = (M/q) psi0_hat(0) + (M/q) sum_{1<=|h|<=H} psi0_hat(hM/q) e(ah/q).
ResidualReport poisson_check(long long M, long long q, long long a,
                             long long H);

/// sum_{(m,q)=1} psi0(m/M) against (phi(q)/q) M psi0_hat(0); the envelope is
/// the generous 50 tau(q) (log M)^2 comparison scale.
ResidualReport coprime_sum_check(long long M, long long q);

}  // namespace sievelab
