#include "sievelab/expsums.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <complex>

#include "sievelab/psi0.hpp"

namespace sievelab {

namespace {

constexpr double kPi = 3.14159265358979323846264338327950288;

// Units mod q paired with their inverses.
struct UnitTable {
  std::vector<long long> x, xinv;
  explicit UnitTable(long long q) {
    for (long long v = 0; v < q; ++v) {
      if (gcd_ll(v, q) == 1) {
        x.push_back(v);
        xinv.push_back(q == 1 ? 0 : inverse_mod(v, q));
      }
    }
  }
};

// One full a-row of the Weil scan for modulus q, writing |S| extremes into
// the report. Uses a shared cosine table and O(1) index updates in b.
void weil_scan_q(long long q, WeilReport& rep) {
  std::vector<double> cos_tab(q);
  for (long long r = 0; r < q; ++r) cos_tab[r] = std::cos(2 * kPi * r / q);
  UnitTable units(q);
  size_t phi = units.x.size();
  double sqrt_q = std::sqrt((double)q);
  long long tau_q = tau_k(q, 2);
  std::vector<long long> idx(phi);
  for (long long a = 1; a <= q; ++a) {
    // idx_i = (a x_i + b xbar_i) mod q at b = a; then += xbar_i per b step.
    for (size_t i = 0; i < phi; ++i)
      idx[i] = (units.x[i] * (a % q) + units.xinv[i] * (a % q)) % q;
    for (long long b = a; b <= q; ++b) {
      double s = 0;
      for (size_t i = 0; i < phi; ++i) s += cos_tab[idx[i]];
      long long g = gcd_ll(gcd_ll(a, b), q);
      double bound = tau_q * sqrt_q * std::sqrt((double)g);
      double ratio = std::abs(s) / bound;
      rep.pairs_checked += (b == a) ? 1 : 2;  // symmetry S(a,b) = S(b,a)
      if (std::abs(s) > bound + 1e-6) rep.violations += (b == a) ? 1 : 2;
      if (ratio > rep.max_ratio) {
        rep.max_ratio = ratio;
        rep.max_ratio_q = q;
        rep.max_ratio_a = a;
        rep.max_ratio_b = b;
      }
      if (b < q) {
        for (size_t i = 0; i < phi; ++i) {
          idx[i] += units.xinv[i];
          if (idx[i] >= q) idx[i] -= q;
        }
      }
    }
  }
}

void merge_weil(WeilReport& into, const WeilReport& part) {
  into.pairs_checked += part.pairs_checked;
  into.violations += part.violations;
  if (part.max_ratio > into.max_ratio) {
    into.max_ratio = part.max_ratio;
    into.max_ratio_q = part.max_ratio_q;
    into.max_ratio_a = part.max_ratio_a;
    into.max_ratio_b = part.max_ratio_b;
  }
}

}  // namespace

KloostermanValue kloosterman(long long a, long long b, long long q) {
  if (q < 1) throw domain_error("kloosterman: q must be >= 1");
  if (q > 100000)
    throw resource_error("kloosterman: direct evaluation needs q <= 10^5");
  KloostermanValue out;
  double re = 0, im = 0, c_re = 0, c_im = 0;  // Kahan-compensated
  for (long long x = 0; x < q; ++x) {
    if (gcd_ll(x, q) != 1) continue;
    long long xi = q == 1 ? 0 : inverse_mod(x, q);
    long long r = (((a % q) * x + (b % q) * xi) % q + q) % q;
    double ang = 2 * kPi * r / q;
    double tre = std::cos(ang) - c_re;
    double sre = re + tre;
    c_re = (sre - re) - tre;
    re = sre;
    double tim = std::sin(ang) - c_im;
    double sim = im + tim;
    c_im = (sim - im) - tim;
    im = sim;
  }
  if (q == 1) re = 1;  // the single empty-modulus term e(0)
  out.value = re;
  out.imag_residual = im;
  return out;
}

long long ramanujan(long long q, long long b) {
  if (q < 1) throw domain_error("ramanujan: q must be >= 1");
  long long g = b == 0 ? q : gcd_ll(((b % q) + q) % q, q);
  if (g == 0) g = q;
  long long sum = 0;
  for (long long d = 1; d * d <= g; ++d) {
    if (g % d != 0) continue;
    sum += d * mobius(q / d);
    if (d != g / d) sum += (g / d) * mobius(q / (g / d));
  }
  return sum;
}

double ramanujan_direct(long long q, long long b) {
  double s = 0;
  for (long long x = 0; x < q; ++x) {
    if (gcd_ll(x, q) != 1) continue;
    s += std::cos(2 * kPi * ((((b % q) * x) % q + q) % q) / q);
  }
  if (q == 1) s = 1;
  return s;
}

WeilReport weil_check(long long q_limit, int workers) {
  if (q_limit < 1 || q_limit > 2000)
    throw domain_error("weil_check: need 1 <= q_limit <= 2000");
  int nthreads = workers > 0 ? workers : omp_get_max_threads();
  std::vector<WeilReport> parts(q_limit + 1);
  // descending q: the expensive moduli are handed out first
#pragma omp parallel for schedule(dynamic) num_threads(nthreads)
  for (long long i = 0; i < q_limit; ++i)
    weil_scan_q(q_limit - i, parts[q_limit - i]);
  WeilReport rep;
  rep.q_limit = q_limit;
  for (long long q = 1; q <= q_limit; ++q) merge_weil(rep, parts[q]);
  return rep;
}

WeilReport weil_check_serial(long long q_limit) {
  if (q_limit < 1 || q_limit > 2000)
    throw domain_error("weil_check: need 1 <= q_limit <= 2000");
  WeilReport rep;
  rep.q_limit = q_limit;
  for (long long q = 1; q <= q_limit; ++q) {
    WeilReport part;
    weil_scan_q(q, part);
    merge_weil(rep, part);
  }
  return rep;
}

ResidualReport poisson_check(long long M, long long q, long long a,
                             long long H) {
  if (q < 1 || M < 1 || q > 100000 || M > 100000)
    throw domain_error("poisson_check: need 1 <= q, M <= 10^5");
  ResidualReport rep;
  // Left side: psi0 is supported on [1/2, 5/2], so m in [M/2, 5M/2].
  double lhs = 0;
  long long start = ((a % q) + q) % q;
  if (start == 0) start = q;
  for (long long m = start; m <= (5 * M) / 2 + q; m += q)
    lhs += psi0_eval((double)m / M);
  rep.lhs = lhs;
  std::complex<double> rhs = psi0_fourier(0) * ((double)M / q);
  int tiny_run = 0;
  for (long long h = 1; h <= H; ++h) {
    std::complex<double> f = psi0_fourier((double)h * M / q);
    double ang = 2 * kPi * ((((a % q) * (h % q)) % q + q) % q) / q;
    std::complex<double> e_pos(std::cos(ang), std::sin(ang));
    // h and -h: conj(f) * conj(e_pos) is the -h term.
    rhs += ((double)M / q) * (f * e_pos + std::conj(f * e_pos));
    if (std::abs(f) * M / q < 1e-14) {
      if (++tiny_run >= 20) break;  // transform decayed below noise
    } else {
      tiny_run = 0;
    }
  }
  rep.rhs = rhs.real();
  rep.residual = std::abs(lhs - rhs.real()) + std::abs(rhs.imag());
  return rep;
}

ResidualReport coprime_sum_check(long long M, long long q) {
  if (q < 1 || M < 1 || q > 100000 || M > 100000)
    throw domain_error("coprime_sum_check: need 1 <= q, M <= 10^5");
  ResidualReport rep;
  double lhs = 0;
  for (long long m = 1; m <= (5 * M) / 2 + 1; ++m) {
    if (gcd_ll(m, q) != 1) continue;
    lhs += psi0_eval((double)m / M);
  }
  rep.lhs = lhs;
  rep.rhs = ((double)euler_phi(q) / q) * M * psi0_fourier(0).real();
  rep.residual = std::abs(rep.lhs - rep.rhs);
  double lm = std::log((double)std::max<long long>(M, 2));
  rep.envelope = 50.0 * tau_k(q, 2) * lm * lm;
  return rep;
}

}  // namespace sievelab
