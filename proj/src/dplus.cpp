#include "sievelab/dplus.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <array>
#include <numeric>

#include "sievelab/primes.hpp"

namespace sievelab {

namespace {

// prod <= D, both sides exact.
bool prod_le(__int128 prod, const Rat& D) {
  return prod * D.den() <= (__int128)D.num();
}

FactoredInteger from_spf(long long n, const std::vector<uint32_t>& spf) {
  FactoredInteger f;
  f.value = n;
  long long m = n;
  while (m > 1) {
    long long p = spf[m];
    while (m % p == 0) {
      f.flattened.push_back(p);
      m /= p;
    }
  }
  std::sort(f.flattened.begin(), f.flattened.end(), std::greater<>());
  for (long long p : f.flattened) {
    if (!f.factors.empty() && f.factors.back().first == p) {
      ++f.factors.back().second;
    } else {
      f.factors.emplace_back(p, 1);
    }
  }
  return f;
}

}  // namespace

bool is_in_Dplus(const FactoredInteger& d, const Rat& D) {
  if (D < Rat(1)) throw domain_error("is_in_Dplus: need D >= 1");
  const auto& p = d.flattened;
  __int128 prefix = 1;
  for (size_t j = 0; 2 * j + 1 <= p.size(); ++j) {
    // prefix = p1...p_{2j}; growth past D already fails (cube factor >= 8).
    if (!prod_le(prefix, D)) return false;
    __int128 t = prefix;
    for (int rep = 0; rep < 3; ++rep) {
      t *= p[2 * j];
      if (!prod_le(t, D)) return false;
    }
    if (2 * j + 2 <= p.size()) {
      prefix *= p[2 * j];
      prefix *= p[2 * j + 1];
    }
  }
  return true;
}

int lambda_plus(const FactoredInteger& d, const Rat& D) {
  if (!is_in_Dplus(d, D)) return 0;
  for (auto& [p, e] : d.factors) {
    if (e > 1) return 0;
  }
  return (d.factors.size() % 2 == 0) ? 1 : -1;
}

std::vector<FactoredInteger> enumerate_Dplus(const Rat& D, long long limit) {
  if (limit > 1000000)
    throw resource_error("enumerate_Dplus: exhaustive mode needs limit <= 1e6");
  std::vector<uint32_t> spf = spf_table((uint32_t)std::max<long long>(limit, 2));
  std::vector<FactoredInteger> out;
  for (long long n = 1; n <= limit; ++n) {
    FactoredInteger f = n == 1 ? FactoredInteger{} : from_spf(n, spf);
    if (is_in_Dplus(f, D)) out.push_back(std::move(f));
  }
  return out;
}

WeightSequence lambda_plus_sequence(const Rat& D, long long limit) {
  WeightSequence seq;
  seq.level = D;
  seq.squarefree_only = true;
  for (const auto& d : enumerate_Dplus(D, limit)) {
    int w = lambda_plus(d, D);
    if (w != 0) seq.entries[d.value] = Rat(w);
  }
  return seq;
}

namespace {

// Capacity-ratio comparison D_i/c_i, exact. Returns true if bin L has
// strictly larger remaining ratio than bin R.
bool ratio_greater(const Rat& capL, __int128 cL, const Rat& capR, __int128 cR) {
  // capL/cL > capR/cR  <=>  capL.num*capR.den*cR > capR.num*capL.den*cL.
  // Contents stay <= the level (<= 2^62), dens are small, so 128 bits hold.
  unsigned __int128 a = (unsigned __int128)((__int128)capL.num() * capR.den()) *
                        (unsigned __int128)cR;
  unsigned __int128 b = (unsigned __int128)((__int128)capR.num() * capL.den()) *
                        (unsigned __int128)cL;
  return a > b;
}

}  // namespace

std::pair<long long, long long> split_two(const FactoredInteger& d,
                                          const Rat& D, const Rat& D1,
                                          const Rat& D2) {
  if (D1 < Rat(1) || D2 < Rat(1))
    throw domain_error("split_two: need D1, D2 >= 1");
  if (!(D1 * D2 == D)) throw domain_error("split_two: need D1*D2 = D");
  if (!is_in_Dplus(d, D))
    throw domain_error("split_two: d not in the support set of level D");
  __int128 c1 = 1, c2 = 1;
  for (long long p : d.flattened) {
    bool fit1 = prod_le(c1 * p, D1);
    bool fit2 = prod_le(c2 * p, D2);
    if (fit1 && fit2) {
      // Tie-break: larger remaining capacity ratio, then lower index.
      if (ratio_greater(D2, c2, D1, c1)) fit1 = false;
    }
    if (fit1) {
      c1 *= p;
    } else if (fit2) {
      c2 *= p;
    } else {
      throw invariant_error("split_two: greedy failed on a valid input");
    }
  }
  return {(long long)c1, (long long)c2};
}

namespace {

void mpz_set_ll(mpz_class& z, long long v) { z = (long) v; }

// v <= D^t with t = tn/td in [0, 1]: v^td * D.den^tn <= D.num^tn.
bool pow_le(__int128 v, const Rat& D, const Rat& t) {
  mpz_class lhs, rhs, base;
  mpz_set_ll(base, (long long)v);
  mpz_pow_ui(lhs.get_mpz_t(), base.get_mpz_t(), (unsigned long)t.den());
  mpz_set_ll(base, D.den());
  mpz_pow_ui(base.get_mpz_t(), base.get_mpz_t(), (unsigned long)t.num());
  lhs *= base;
  mpz_set_ll(base, D.num());
  mpz_pow_ui(rhs.get_mpz_t(), base.get_mpz_t(), (unsigned long)t.num());
  return lhs <= rhs;
}

// D^t1/c1 > D^t2/c2, exact: cross-powers to the common denominator.
bool ratio_greater_pow(const Rat& D, const Rat& t1, __int128 c1, const Rat& t2,
                       __int128 c2) {
  long long L = std::lcm(t1.den(), t2.den());
  unsigned long a1 = (unsigned long)(t1.num() * (L / t1.den()));
  unsigned long a2 = (unsigned long)(t2.num() * (L / t2.den()));
  mpz_class lhs, rhs, tmp;
  // D^t1 c2 > D^t2 c1  <=>  Dn^a1 Dd^a2 c2^L > Dn^a2 Dd^a1 c1^L.
  mpz_set_ll(tmp, D.num());
  mpz_pow_ui(lhs.get_mpz_t(), tmp.get_mpz_t(), a1);
  mpz_pow_ui(rhs.get_mpz_t(), tmp.get_mpz_t(), a2);
  mpz_set_ll(tmp, D.den());
  mpz_pow_ui(tmp.get_mpz_t(), tmp.get_mpz_t(), a2);
  lhs *= tmp;
  mpz_set_ll(tmp, D.den());
  mpz_pow_ui(tmp.get_mpz_t(), tmp.get_mpz_t(), a1);
  rhs *= tmp;
  mpz_set_ll(tmp, (long long)c2);
  mpz_pow_ui(tmp.get_mpz_t(), tmp.get_mpz_t(), (unsigned long)L);
  lhs *= tmp;
  mpz_set_ll(tmp, (long long)c1);
  mpz_pow_ui(tmp.get_mpz_t(), tmp.get_mpz_t(), (unsigned long)L);
  rhs *= tmp;
  return lhs > rhs;
}

}  // namespace

std::pair<long long, long long> split_two_exp(const FactoredInteger& d,
                                              const Rat& D, const Rat& t) {
  if (t < Rat(0) || t > Rat(1))
    throw domain_error("split_two_exp: need 0 <= t <= 1");
  if (!is_in_Dplus(d, D))
    throw domain_error("split_two_exp: d not in the support set of level D");
  Rat t2 = Rat(1) - t;
  __int128 c1 = 1, c2 = 1;
  for (long long p : d.flattened) {
    bool fit1 = pow_le(c1 * p, D, t);
    bool fit2 = pow_le(c2 * p, D, t2);
    if (fit1 && fit2 && ratio_greater_pow(D, t2, c2, t, c1)) fit1 = false;
    if (fit1) {
      c1 *= p;
    } else if (fit2) {
      c2 *= p;
    } else {
      throw invariant_error("split_two_exp: greedy failed on a valid input");
    }
  }
  return {(long long)c1, (long long)c2};
}

namespace {

bool greedy_split3(const FactoredInteger& d, const Rat& Q1, const Rat& Q2,
                   const Rat& Q3, std::array<long long, 3>* out) {
  const Rat caps[3] = {Q1, Q2, Q3};
  __int128 c[3] = {1, 1, 1};
  for (long long p : d.flattened) {
    int best = -1;
    for (int i = 0; i < 3; ++i) {
      if (!prod_le(c[i] * p, caps[i])) continue;
      if (best < 0 || ratio_greater(caps[i], c[i], caps[best], c[best]))
        best = i;
    }
    if (best < 0) return false;
    c[best] *= p;
  }
  *out = {(long long)c[0], (long long)c[1], (long long)c[2]};
  return true;
}

bool exhaustive_split3(long long q, const Rat& Q1, const Rat& Q2,
                       const Rat& Q3) {
  std::vector<long long> divs;
  for (long long i = 1; i * i <= q; ++i) {
    if (q % i == 0) {
      divs.push_back(i);
      if (i != q / i) divs.push_back(q / i);
    }
  }
  for (long long d1 : divs) {
    if (!prod_le(d1, Q1)) continue;
    long long rest = q / d1;
    for (long long d2 : divs) {
      if (rest % d2 != 0) continue;
      if (!prod_le(d2, Q2)) continue;
      if (prod_le(rest / d2, Q3)) return true;
    }
  }
  return false;
}

}  // namespace

TriplyWellFactorableReport verify_triply_well_factorable(
    const WeightSequence& seq, const Rat& Q1, const Rat& Q2, const Rat& Q3,
    long long test_limit) {
  if (!(Q1 * Q2 * Q3 == seq.level))
    throw domain_error("verify_triply_well_factorable: need Q1*Q2*Q3 = level");
  TriplyWellFactorableReport rep;
  for (auto& [q, w] : seq.entries) {
    if (q > test_limit) break;
    if (w == Rat(0)) continue;
    ++rep.checked;
    std::array<long long, 3> parts;
    if (greedy_split3(factorize(q), Q1, Q2, Q3, &parts)) continue;
    if (!exhaustive_split3(q, Q1, Q2, Q3)) rep.failures.push_back(q);
  }
  return rep;
}

}  // namespace sievelab
