#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <utility>
#include <vector>

#include "sievelab/errors.hpp"
#include "sievelab/logval.hpp"
#include "sievelab/rational.hpp"

namespace sievelab {

/// An integer together with its full prime factorization.
/// `factors` lists (prime, multiplicity) with primes strictly decreasing;
/// `flattened` lists primes with repetition, non-increasing (p1 >= p2 >= ...).
struct FactoredInteger {
  long long value = 1;
  std::vector<std::pair<long long, int>> factors;
  std::vector<long long> flattened;
};

/// Sentinel for P^-(1): ordered above every integer, so conditions like
/// P^-(n) >= z hold vacuously at n = 1.
inline constexpr long long kPMinusInfinity =
    std::numeric_limits<long long>::max();

/// Trial division below 10^6, deterministic Miller-Rabin + Pollard rho above.
FactoredInteger factorize(long long n);

int mobius(long long n);
long long euler_phi(long long n);
long long tau_k(long long n, int k);

/// Lambda(n) as (coefficient, prime): n = p^k gives (1, p) i.e. log p;
/// otherwise coefficient 0. Float view is coeff * log(prime).
struct VonMangoldtValue {
  int coeff = 0;
  long long prime = 0;
  LogVal symbolic() const {
    LogVal v;
    if (coeff != 0) v.add_term(prime, coeff);
    return v;
  }
  double to_double() const;
};
VonMangoldtValue von_mangoldt(long long n);

/// (P^-(n), P^+(n)); for n = 1 returns (kPMinusInfinity, 1).
std::pair<long long, long long> p_extremes(long long n);

/// sq(n) = prod over p with p^2 | n of p^{nu_p(n)}.
long long squarefull_part(long long n);

/// sm(n; z) = prod over p <= z of p^{nu_p(n)}.
long long smooth_part(long long n, long long z);

long long gcd_ll(long long a, long long b);
long long power_mod(long long base, long long exp, long long mod);
long long inverse_mod(long long n, long long q);
bool is_prime(long long n);

/// Global experiment parameters; z0/y0 default to the asymptotic bookkeeping
/// values round(x^{1/(log log x)^3}) and round(x^{1/log log x}).
struct GlobalParams {
  long long x = 0;
  long long a = 1;
  Rat epsilon{1, 100};
  Rat delta{1, 2000};
  std::optional<long long> z0_override;
  std::optional<long long> y0_override;

  void validate() const;
  long long z0() const;
  long long y0() const;
};

}  // namespace sievelab
