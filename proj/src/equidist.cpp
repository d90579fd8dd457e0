#include "sievelab/equidist.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>

#include "sievelab/primes.hpp"
#include "sievelab/psi0.hpp"

namespace sievelab {

void DiscrepancyReport::fold() {
  signed_sum = 0;
  abs_sum = 0;
  max_row = 0;
  max_row_q = 0;
  for (const ReportRow& r : rows) {
    double wd = r.weight.to_double() * r.discrepancy;
    signed_sum += wd;
    abs_sum += std::abs(wd);
    if (std::abs(wd) > std::abs(max_row)) {
      max_row = wd;
      max_row_q = r.q;
    }
  }
}

long long pi_ap(const std::vector<uint32_t>& primes, long long x, long long q,
                long long a) {
  if (q < 1) throw domain_error("pi_ap: q must be >= 1");
  long long r = ((a % q) + q) % q;
  long long count = 0;
  for (uint32_t p : primes) {
    if (p >= x) break;
    if (p % q == (uint64_t)r) ++count;
  }
  return count;
}

long long pi_ap(long long x, long long q, long long a) {
  if (x < 2) return 0;
  if (x > 100000000) throw resource_error("pi_ap: x <= 10^8");
  return pi_ap(prime_table((uint64_t)x), x, q, a);
}

DiscrepancyReport bv_table(long long x, long long q_max, int workers) {
  if (x < 2 || x > 10000000)
    throw resource_error("bv_table: need 2 <= x <= 10^7");
  if (q_max < 1) throw domain_error("bv_table: q_max must be >= 1");
  std::vector<uint32_t> primes = prime_table((uint64_t)x, workers);
  long long pi_x = 0;
  for (uint32_t p : primes)
    if (p < x) ++pi_x;

  DiscrepancyReport rep;
  rep.params = {{"x", std::to_string(x)}, {"qmax", std::to_string(q_max)}};
  rep.rows.resize(q_max);
  int nthreads = workers > 0 ? workers : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic) num_threads(nthreads)
  for (long long q = 1; q <= q_max; ++q) {
    std::vector<long long> cnt(q, 0);
    for (uint32_t p : primes) {
      if (p >= x) break;
      ++cnt[p % q];
    }
    // sup over (a,q)=1 of |cnt[a] - pi(x)/phi(q)|, exact comparison via
    // |cnt*phi - pi| cross-multiplication; smallest attaining a wins ties.
    long long phi = euler_phi(q);
    long long best_a = -1;
    long long best_num = -1;  // |cnt*phi - pi_x|
    for (long long a = q == 1 ? 0 : 1; a < std::max<long long>(q, 1); ++a) {
      if (q > 1 && gcd_ll(a, q) != 1) continue;
      long long num = std::llabs(cnt[q == 1 ? 0 : a] * phi - pi_x);
      if (num > best_num) {
        best_num = num;
        best_a = q == 1 ? 0 : a;
      }
    }
    ReportRow row;
    row.q = q;
    row.count = cnt[best_a];
    row.main_num = pi_x;
    row.main_den = phi;
    row.discrepancy = (double)best_num / phi;
    row.weight = Rat(1);
    rep.rows[q - 1] = row;
  }
  rep.fold();
  return rep;
}

DiscrepancyReport weighted_prime_discrepancy(const WeightSequence& weights,
                                             long long x, long long a) {
  if (x < 2 || x > 100000000)
    throw resource_error("weighted_prime_discrepancy: need 2 <= x <= 10^8");
  std::vector<uint32_t> primes = prime_table((uint64_t)x);
  long long pi_x = 0;
  for (uint32_t p : primes)
    if (p < x) ++pi_x;
  DiscrepancyReport rep;
  rep.params = {{"x", std::to_string(x)}, {"a", std::to_string(a)}};
  for (const auto& [q, w] : weights.entries) {
    if (w == Rat(0)) continue;
    if (gcd_ll(((a % q) + q) % q, q) != 1 && q != 1) continue;
    long long cnt = pi_ap(primes, x, q, a);
    long long phi = euler_phi(q);
    ReportRow row;
    row.q = q;
    row.count = cnt;
    row.main_num = pi_x;
    row.main_den = phi;
    row.discrepancy = (double)cnt - (double)pi_x / phi;
    row.weight = w;
    rep.rows.push_back(row);
  }
  rep.fold();
  return rep;
}

Rat delta_q(long long q, long long a, long long N,
            const std::vector<Rat>& alpha, long long M,
            const std::vector<Rat>& beta) {
  if (q < 1) throw domain_error("delta_q: q must be >= 1");
  if ((long long)alpha.size() != N || (long long)beta.size() != M)
    throw domain_error("delta_q: alpha/beta must cover (N,2N] and (M,2M]");
  if ((__int128)N * M > 1000000000)
    throw resource_error("delta_q: N*M exceeds the enumeration budget");
  // Residue buckets of beta, plus the coprime total.
  std::vector<Rat> bucket(q, Rat(0));
  Rat coprime_total(0);
  for (long long i = 0; i < M; ++i) {
    long long m = M + 1 + i;
    bucket[m % q] += beta[i];
    if (gcd_ll(m, q) == 1) coprime_total += beta[i];
  }
  long long phi = euler_phi(q);
  // For each residue u of n: sum of buckets r with u*r = a (mod q).
  std::vector<Rat> inner(q, Rat(0));
  long long ar = ((a % q) + q) % q;
  for (long long u = 0; u < q; ++u) {
    for (long long r = 0; r < q; ++r) {
      if ((u * r) % q == ar) inner[u] += bucket[r];
    }
  }
  Rat main_per_n = coprime_total / Rat(phi);
  Rat total(0);
  for (long long i = 0; i < N; ++i) {
    long long n = N + 1 + i;
    if (alpha[i] == Rat(0)) continue;
    Rat term = inner[n % q];
    if (gcd_ll(n, q) == 1) term -= main_per_n;
    total += alpha[i] * term;
  }
  return total;
}

FundamentalCheck fundamental_lemma_check(long long q, long long b, long long t,
                                         long long z) {
  if (q < 1 || t < 1 || z < 2)
    throw domain_error("fundamental_lemma_check: need q, t >= 1 and z >= 2");
  if (gcd_ll(((b % q) + q) % q, q) != 1)
    throw domain_error("fundamental_lemma_check: need (b, q) = 1");
  if (t > 100000000)
    throw resource_error("fundamental_lemma_check: t <= 10^8");
  std::vector<bool> keep(t + 1, true);
  keep[0] = false;
  for (uint32_t p : prime_table((uint64_t)std::max<long long>(z, 2))) {
    if (p >= z) break;  // sieve out p < z, keeping P^-(n) >= z (and n = 1)
    for (long long m = p; m <= t; m += p) keep[m] = false;
  }
  FundamentalCheck out;
  long long br = ((b % q) + q) % q;
  for (long long n = 1; n <= t; ++n) {
    if (!keep[n]) continue;
    ++out.total;
    if (n % q == br) ++out.lhs;
  }
  out.rhs = Rat(out.total, euler_phi(q));
  out.deviation = std::abs((double)out.lhs - out.rhs.to_double());
  out.normalized = out.deviation / ((double)t / q);
  return out;
}

KReport double_divisor_experiment(long long q, long long a, long long M,
                                  long long N1, long long N2,
                                  const std::vector<double>& alpha,
                                  double x_scale, double eps) {
  if (q < 1 || M < 1 || N1 < 1 || N2 < 1)
    throw domain_error("double_divisor_experiment: positive parameters only");
  if (gcd_ll(((a % q) + q) % q, q) != 1 && q != 1)
    throw domain_error("double_divisor_experiment: need (a, q) = 1");
  if ((long long)alpha.size() != M)
    throw domain_error("double_divisor_experiment: alpha must cover (M,2M]");
  long long lo1 = (N1 + 1) / 2, hi1 = (5 * N1) / 2;
  long long lo2 = (N2 + 1) / 2, hi2 = (5 * N2) / 2;
  if ((__int128)M * (hi1 - lo1 + 1) * (hi2 - lo2 + 1) > 100000000)
    throw resource_error("double_divisor_experiment: budget exceeded");
  double inv_phi = 1.0 / euler_phi(q);
  long long ar = ((a % q) + q) % q;
  double sum = 0;
  for (long long i = 0; i < M; ++i) {
    long long m = M + 1 + i;
    if (alpha[i] == 0) continue;
    for (long long n1 = lo1; n1 <= hi1; ++n1) {
      double w1 = psi0_eval((double)n1 / N1);
      if (w1 == 0) continue;
      for (long long n2 = lo2; n2 <= hi2; ++n2) {
        double w2 = psi0_eval((double)n2 / N2);
        if (w2 == 0) continue;
        long long prod = ((m % q) * (n1 % q)) % q;
        prod = (prod * (n2 % q)) % q;
        double ind = 0;
        if (prod == ar) ind += 1;
        if (gcd_ll(prod, q) == 1) ind -= inv_phi;
        if (ind != 0) sum += alpha[i] * w1 * w2 * ind;
      }
    }
  }
  KReport rep;
  rep.value = std::abs(sum);
  if (x_scale > 0)
    rep.reference = x_scale / ((double)q * std::pow(x_scale, eps));
  return rep;
}

SWProbe siegel_walfisz_probe(const std::vector<Rat>& alpha, long long N,
                             long long d, long long q, long long a, double A) {
  if (q < 1 || d < 1 || N < 1)
    throw domain_error("siegel_walfisz_probe: positive parameters only");
  if (gcd_ll(((a % q) + q) % q, q) != 1 && q != 1)
    throw domain_error("siegel_walfisz_probe: need (a, q) = 1");
  if ((long long)alpha.size() != N)
    throw domain_error("siegel_walfisz_probe: alpha must cover (N,2N]");
  long long ar = ((a % q) + q) % q;
  Rat restricted(0), main(0);
  for (long long i = 0; i < N; ++i) {
    long long n = N + 1 + i;
    if (alpha[i] == Rat(0)) continue;
    if (n % q == ar && gcd_ll(n, d) == 1) restricted += alpha[i];
    if (gcd_ll(n, d * q) == 1) main += alpha[i];
  }
  Rat dev = restricted - main / Rat(euler_phi(q));
  if (dev < Rat(0)) dev = -dev;
  SWProbe out;
  out.deviation = dev;
  double logN = std::log((double)std::max<long long>(N, 2));
  out.envelope = (double)N * tau_k(d, 2) / std::pow(logN, A);
  return out;
}

}  // namespace sievelab
