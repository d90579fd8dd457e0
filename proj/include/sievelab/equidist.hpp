#pragma once

#include <string>
#include <utility>
#include <vector>

#include "sievelab/arith.hpp"
#include "sievelab/dplus.hpp"
#include "sievelab/rational.hpp"

namespace sievelab {

struct ReportRow {
  long long q = 0;
  long long count = 0;       // raw count at the reported residue
  long long main_num = 0;    // expected main term, exact rational
  long long main_den = 1;
  double discrepancy = 0;    // count - main term (sup-|.| for sup mode)
  Rat weight = Rat(1);
};

/// Per-modulus discrepancy table. Aggregates are folded from the rows in
/// ascending-q order, so reports are deterministic for fixed params.
struct DiscrepancyReport {
  std::vector<std::pair<std::string, std::string>> params;
  std::vector<ReportRow> rows;
  double signed_sum = 0;  // sum of weight * discrepancy
  double abs_sum = 0;     // sum of |weight * discrepancy|
  double max_row = 0;
  long long max_row_q = 0;

  void fold();  // recompute aggregates from rows
};

/// Number of primes p < x with p = a mod q (strict "less than x").
long long pi_ap(long long x, long long q, long long a);
long long pi_ap(const std::vector<uint32_t>& primes, long long x, long long q,
                long long a);

/// sum_{q <= q_max} sup over (a,q)=1 of |pi(x;q,a) - pi(x)/phi(q)|, one row
/// per q; the row keeps the count at the sup-attaining residue (smallest such
/// a on ties).
DiscrepancyReport bv_table(long long x, long long q_max, int workers = 0);

/// sum over the support of weights of lambda_q (pi(x;q,a) - pi(x)/phi(q));
/// rows with gcd(q, a) > 1 are skipped.
DiscrepancyReport weighted_prime_discrepancy(const WeightSequence& weights,
                                             long long x, long long a);

/// Bilinear discrepancy of alpha (*) beta in the progression a mod q:
/// sum_{n ~ N} alpha_n sum_{m ~ M} beta_m (1_{nm=a(q)} - 1_{(nm,q)=1}/phi(q)),
/// exact rational, residue-bucketed. alpha[i] is the weight of n = N+1+i.
Rat delta_q(long long q, long long a, long long N,
            const std::vector<Rat>& alpha, long long M,
            const std::vector<Rat>& beta);

struct FundamentalCheck {
  long long lhs = 0;        // #{n <= t : n = b mod q, P^-(n) >= z}
  long long total = 0;      // #{n <= t : P^-(n) >= z}
  Rat rhs;                  // total / phi(q)
  double deviation = 0;     // |lhs - rhs|
  double normalized = 0;    // deviation / (t/q)
};
FundamentalCheck fundamental_lemma_check(long long q, long long b, long long t,
                                         long long z);

struct KReport {
  double value = 0;      // |K|
  double reference = 0;  // x / (q x^eps), informational
};

/// Smoothed double-divisor discrepancy with psi1 = psi2 = psi0:
/// K = |sum_m alpha_m sum_{n1,n2} psi0(n1/N1) psi0(n2/N2)
///        (1_{m n1 n2 = a (q)} - 1_{(m n1 n2, q)=1}/phi(q))|,
/// m over (M, 2M] with weight alpha[m - M - 1]. Plain deterministic triple
/// loop (it doubles as its own verification arithmetic path).
KReport double_divisor_experiment(long long q, long long a, long long M,
                                  long long N1, long long N2,
                                  const std::vector<double>& alpha,
                                  double x_scale = 0, double eps = 0);

struct SWProbe {
  Rat deviation;         // |restricted sum - main term|, exact
  double envelope = 0;   // N tau(d) / (log N)^A, informational
};

/// Left side of the small-moduli equidistribution condition for the supplied
/// sequence: |sum_{n=a(q),(n,d)=1} alpha_n - (1/phi(q)) sum_{(n,dq)=1}
/// alpha_n| over n in (N, 2N].
SWProbe siegel_walfisz_probe(const std::vector<Rat>& alpha, long long N,
                             long long d, long long q, long long a, double A);

}  // namespace sievelab
