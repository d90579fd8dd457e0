#include "sievelab/arith.hpp"

#include <algorithm>
#include <cmath>

namespace sievelab {

long long gcd_ll(long long a, long long b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b) {
    long long t = a % b;
    a = b;
    b = t;
  }
  return a;
}

static long long mulmod(long long a, long long b, long long m) {
  return (long long)((__int128)a * b % m);
}

long long power_mod(long long base, long long exp, long long mod) {
  base %= mod;
  if (base < 0) base += mod;
  long long r = 1 % mod;
  while (exp > 0) {
    if (exp & 1) r = mulmod(r, base, mod);
    base = mulmod(base, base, mod);
    exp >>= 1;
  }
  return r;
}

long long inverse_mod(long long n, long long q) {
  long long x0 = 1, x1 = 0, y0 = ((n % q) + q) % q, y1 = q;
  while (y1 > 0) {
    long long k = y0 / y1;
    std::swap(x0 -= k * x1, x1);
    std::swap(y0 -= k * y1, y1);
  }
  if (y0 != 1) throw domain_error("inverse_mod: arguments not coprime");
  return ((x0 % q) + q) % q;
}

bool is_prime(long long n) {
  if (n < 2) return false;
  for (long long p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (n % p == 0) return n == p;
  }
  // Deterministic Miller-Rabin for 64-bit with the standard 12-base set.
  long long d = n - 1;
  int s = 0;
  while ((d & 1) == 0) { d >>= 1; ++s; }
  for (long long a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    long long x = power_mod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 0; i < s - 1; ++i) {
      x = mulmod(x, x, n);
      if (x == n - 1) { composite = false; break; }
    }
    if (composite) return false;
  }
  return true;
}

static long long pollard_rho(long long n) {
  if (n % 2 == 0) return 2;
  for (long long c = 1;; ++c) {
    long long x = 2, y = 2, d = 1;
    while (d == 1) {
      x = (mulmod(x, x, n) + c) % n;
      y = (mulmod(y, y, n) + c) % n;
      y = (mulmod(y, y, n) + c) % n;
      d = gcd_ll(x - y, n);
    }
    if (d != n) return d;
  }
}

static void factor_rec(long long n, std::vector<long long>& out) {
  if (n == 1) return;
  if (is_prime(n)) {
    out.push_back(n);
    return;
  }
  long long d = pollard_rho(n);
  factor_rec(d, out);
  factor_rec(n / d, out);
}

FactoredInteger factorize(long long n) {
  if (n <= 0) throw domain_error("factorize: n must be positive");
  FactoredInteger f;
  f.value = n;
  long long m = n;
  std::vector<long long> primes;
  for (long long p = 2; p < 1000000 && p * p <= m; p += (p == 2 ? 1 : 2)) {
    while (m % p == 0) {
      primes.push_back(p);
      m /= p;
    }
  }
  if (m > 1) {
    if (m < 1000000LL * 1000000LL || is_prime(m)) {
      // Either below trial-division-squared range (hence prime) or prime.
      if (is_prime(m)) {
        primes.push_back(m);
      } else {
        factor_rec(m, primes);
      }
    } else {
      factor_rec(m, primes);
    }
  }
  std::sort(primes.begin(), primes.end(), std::greater<>());
  f.flattened = primes;
  for (long long p : primes) {
    if (!f.factors.empty() && f.factors.back().first == p) {
      ++f.factors.back().second;
    } else {
      f.factors.emplace_back(p, 1);
    }
  }
  return f;
}

int mobius(long long n) {
  FactoredInteger f = factorize(n);
  for (auto& [p, e] : f.factors) {
    if (e > 1) return 0;
  }
  return (f.factors.size() % 2 == 0) ? 1 : -1;
}

long long euler_phi(long long n) {
  FactoredInteger f = factorize(n);
  long long r = 1;
  for (auto& [p, e] : f.factors) {
    long long pk = p;
    for (int i = 1; i < e; ++i) pk *= p;
    r *= pk - pk / p;
  }
  return r;
}

long long tau_k(long long n, int k) {
  if (n < 1 || k < 1) throw domain_error("tau_k: need n >= 1 and k >= 1");
  // tau_k(p^e) = C(e + k - 1, k - 1); multiplicative.
  FactoredInteger f = factorize(n);
  long long r = 1;
  for (auto& [p, e] : f.factors) {
    long long binom = 1;
    for (int i = 1; i <= e; ++i) binom = binom * (k - 1 + i) / i;
    r *= binom;
  }
  return r;
}

double VonMangoldtValue::to_double() const {
  return coeff == 0 ? 0.0 : coeff * std::log((double)prime);
}

VonMangoldtValue von_mangoldt(long long n) {
  if (n < 1) throw domain_error("von_mangoldt: n must be positive");
  if (n == 1) return {};
  FactoredInteger f = factorize(n);
  if (f.factors.size() != 1) return {};
  return {1, f.factors[0].first};
}

std::pair<long long, long long> p_extremes(long long n) {
  if (n == 1) return {kPMinusInfinity, 1};
  FactoredInteger f = factorize(n);
  return {f.flattened.back(), f.flattened.front()};
}

long long squarefull_part(long long n) {
  FactoredInteger f = factorize(n);
  long long r = 1;
  for (auto& [p, e] : f.factors) {
    if (e >= 2) {
      for (int i = 0; i < e; ++i) r *= p;
    }
  }
  return r;
}

long long smooth_part(long long n, long long z) {
  if (z < 2) throw domain_error("smooth_part: need z >= 2");
  FactoredInteger f = factorize(n);
  long long r = 1;
  for (auto& [p, e] : f.factors) {
    if (p <= z) {
      for (int i = 0; i < e; ++i) r *= p;
    }
  }
  return r;
}

LogVal LogVal::log_of(long long n) {
  LogVal v;
  FactoredInteger f = factorize(n);
  for (auto& [p, e] : f.factors) v.add_term(p, e);
  return v;
}

void GlobalParams::validate() const {
  if (x < 3) throw domain_error("params: x must be >= 3");
  if (a == 0) throw domain_error("params: a must be nonzero");
  if (epsilon <= Rat(0)) throw domain_error("params: epsilon must be positive");
  if (delta <= Rat(0) || delta >= Rat(1, 1000))
    throw domain_error("params: need 0 < delta < 1/1000");
  long long z = z0(), y = y0();
  if (!(2 <= z && z <= y && y <= x))
    throw domain_error("params: need 2 <= z0 <= y0 <= x");
}

long long GlobalParams::z0() const {
  if (z0_override) return *z0_override;
  double lx = std::log((double)x);
  double ll = std::log(lx);
  long long v = (long long)std::llround(std::exp(lx / (ll * ll * ll)));
  return std::max<long long>(2, v);
}

long long GlobalParams::y0() const {
  if (y0_override) return *y0_override;
  double lx = std::log((double)x);
  double ll = std::log(lx);
  long long v = (long long)std::llround(std::exp(lx / ll));
  return std::max<long long>(2, std::max(v, z0()));
}

}  // namespace sievelab
