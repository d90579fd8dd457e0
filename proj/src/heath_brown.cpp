#include "sievelab/heath_brown.hpp"

#include <omp.h>

#include <algorithm>
#include <map>

namespace sievelab {

namespace {

// m <= c * x^(1/k), exact: (m * c_den)^k <= c_num^k * x.
bool below_cutoff(long long m, long long x, int k, const Rat& c) {
  unsigned __int128 lhs = 1, rhs = 1;
  for (int i = 0; i < k; ++i) {
    lhs *= (unsigned __int128)m * c.den();
    rhs *= (unsigned long long)c.num();
  }
  // lhs <= 2^(4*27) and rhs*x <= 2^(4*2+40) at the documented limits.
  return lhs <= rhs * (unsigned __int128)x;
}

std::vector<long long> divisors_of(long long n) {
  std::vector<long long> divs;
  for (long long i = 1; i * i <= n; ++i) {
    if (n % i == 0) {
      divs.push_back(i);
      if (i != n / i) divs.push_back(n / i);
    }
  }
  std::sort(divs.begin(), divs.end());
  return divs;
}

long long binom(int k, int j) {
  long long r = 1;
  for (int i = 1; i <= j; ++i) r = r * (k - j + i) / i;
  return r;
}

// Enumerate ordered tuples (t_1, ..., t_len) of divisors with product m,
// filtered by `pred`, invoking `emit` on each.
template <typename Pred, typename Emit>
void enumerate_tuples(long long m, int len, const Pred& pred, const Emit& emit,
                      std::vector<long long>& stack) {
  if (len == 1) {
    if (pred(m)) {
      stack.push_back(m);
      emit(stack);
      stack.pop_back();
    }
    return;
  }
  for (long long t : divisors_of(m)) {
    if (!pred(t)) continue;
    stack.push_back(t);
    enumerate_tuples(m / t, len - 1, pred, emit, stack);
    stack.pop_back();
  }
}

}  // namespace

std::vector<HBTerm> heath_brown_terms(long long n, int k, long long x,
                                      const Rat& cutoff_multiplier) {
  if (n < 1 || x < 1 || n > 2 * x)
    throw domain_error("heath_brown_terms: need 1 <= n <= 2x");
  if (k < 1 || k > 4) throw domain_error("heath_brown_terms: need 1 <= k <= 4");
  if (n > 100000)
    throw resource_error("heath_brown_terms: enumeration needs n <= 10^5");
  std::vector<HBTerm> terms;
  auto any = [](long long) { return true; };
  for (int j = 1; j <= k; ++j) {
    long long coeff = (j % 2 == 1 ? 1 : -1) * binom(k, j);
    std::vector<long long> mstack, nstack;
    auto m_ok = [&](long long m) {
      return mobius(m) != 0 && below_cutoff(m, x, k, cutoff_multiplier);
    };
    enumerate_tuples(
        n, j, m_ok,
        [&](const std::vector<long long>& ms) {
          long long mprod = 1;
          int mu_prod = 1;
          for (long long m : ms) {
            mprod *= m;
            mu_prod *= mobius(m);
          }
          enumerate_tuples(
              n / mprod, j, any,
              [&](const std::vector<long long>& ns) {
                HBTerm t;
                t.j = j;
                t.sign_coefficient = coeff;
                t.m_tuple = ms;
                t.n_tuple = ns;
                t.mu_product = mu_prod;
                terms.push_back(std::move(t));
                if (terms.size() > 2000000)
                  throw resource_error(
                      "heath_brown_terms: term list too large");
              },
              nstack);
        },
        mstack);
  }
  return terms;
}

namespace {

// Sum over all tuples for one n, grouped by the m-product: far cheaper than
// the full term list and exactly equal to its total.
LogVal hb_sum_grouped(long long n, int k, long long x, const Rat& c) {
  std::vector<long long> divs = divisors_of(n);
  size_t nd = divs.size();
  std::map<long long, size_t> idx;
  for (size_t i = 0; i < nd; ++i) idx[divs[i]] = i;

  // mu restricted to the cutoff, as a coefficient vector over divisors.
  std::vector<long long> mu_z(nd, 0);
  for (size_t i = 0; i < nd; ++i) {
    if (below_cutoff(divs[i], x, k, c)) mu_z[i] = mobius(divs[i]);
  }

  // L_j(r) = sum over e | r of tau_{j-1}(r/e) * log e
  //        = sum over ordered (n_1, ..., n_j) with product r of log n_1.
  auto L = [&](long long r, int j) {
    if (j == 1) return LogVal::log_of(r);
    LogVal v;
    for (long long e : divisors_of(r)) {
      long long w = tau_k(r / e, j - 1);
      if (w != 0) v.scaled_add(w, LogVal::log_of(e));
    }
    return v;
  };

  LogVal total;
  std::vector<long long> conv = mu_z;  // j-fold Dirichlet power of mu_z
  for (int j = 1; j <= k; ++j) {
    if (j > 1) {
      std::vector<long long> next(nd, 0);
      for (size_t i = 0; i < nd; ++i) {
        if (conv[i] == 0) continue;
        for (size_t l = 0; l < nd; ++l) {
          if (mu_z[l] == 0) continue;
          long long prod = divs[i] * divs[l];
          if (prod > n || n % prod != 0) continue;
          next[idx[prod]] += conv[i] * mu_z[l];
        }
      }
      conv = std::move(next);
    }
    long long coeff = (j % 2 == 1 ? 1 : -1) * binom(k, j);
    for (size_t i = 0; i < nd; ++i) {
      if (conv[i] == 0) continue;
      total.scaled_add(coeff * conv[i], L(n / divs[i], j));
    }
  }
  return total;
}

}  // namespace

LogVal heath_brown_sum(long long n, int k, long long x,
                       const Rat& cutoff_multiplier) {
  if (n < 1 || x < 1 || n > 2 * x)
    throw domain_error("heath_brown_sum: need 1 <= n <= 2x");
  if (k < 1 || k > 4) throw domain_error("heath_brown_sum: need 1 <= k <= 4");
  return hb_sum_grouped(n, k, x, cutoff_multiplier);
}

HBVerifyReport verify_heath_brown(long long limit, int k,
                                  const Rat& cutoff_multiplier, int workers) {
  if (limit > 100000)
    throw resource_error("verify_heath_brown: limit <= 10^5");
  HBVerifyReport rep;
  rep.checked = limit;
  int nthreads = workers > 0 ? workers : omp_get_max_threads();
  std::vector<std::vector<long long>> local((size_t)nthreads);
#pragma omp parallel num_threads(nthreads)
  {
    int tid = omp_get_thread_num();
#pragma omp for schedule(dynamic, 64)
    for (long long n = 1; n <= limit; ++n) {
      LogVal sum = hb_sum_grouped(n, k, n, cutoff_multiplier);
      if (!(sum == von_mangoldt(n).symbolic())) local[tid].push_back(n);
    }
  }
  for (auto& v : local)
    rep.mismatches.insert(rep.mismatches.end(), v.begin(), v.end());
  std::sort(rep.mismatches.begin(), rep.mismatches.end());
  return rep;
}

}  // namespace sievelab
