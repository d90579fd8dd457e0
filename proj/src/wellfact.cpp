#include "sievelab/wellfact.hpp"

#include <gmp.h>

#include <algorithm>
#include <map>
#include <set>

#include "sievelab/primes.hpp"

namespace sievelab {

namespace {

// D^(k*eta) <= p, exact:  D.num^(k*en) <= p^(ed) * D.den^(k*en)
// with eta = en/ed (en, ed > 0).
bool box_bound_le(const Rat& D, long long k, const Rat& eta, long long p) {
  unsigned long en = (unsigned long)(k * eta.num());
  unsigned long ed = (unsigned long)eta.den();
  mpz_t lhs, rhs, tmp;
  mpz_inits(lhs, rhs, tmp, nullptr);
  mpz_ui_pow_ui(lhs, (unsigned long)D.num(), en);
  mpz_ui_pow_ui(rhs, (unsigned long)p, ed);
  mpz_ui_pow_ui(tmp, (unsigned long)D.den(), en);
  mpz_mul(rhs, rhs, tmp);
  bool le = mpz_cmp(lhs, rhs) <= 0;
  mpz_clears(lhs, rhs, tmp, nullptr);
  return le;
}

bool squarefree(const FactoredInteger& d) {
  for (auto& [p, e] : d.factors) {
    if (e > 1) return false;
  }
  return true;
}

std::vector<int> box_shape(const FactoredInteger& d, const Rat& D,
                           const Rat& eta) {
  std::vector<int> shape;
  shape.reserve(d.flattened.size());
  for (long long p : d.flattened) shape.push_back(eta_box_index(p, D, eta));
  std::sort(shape.begin(), shape.end(), std::greater<>());
  return shape;
}

bool shape_admissible(const std::vector<int>& shape, const Rat& eta) {
  const Rat cap = Rat(1) / (Rat(1) + eta);
  Rat prefix(0);
  for (size_t j = 0; 2 * j + 1 <= shape.size(); ++j) {
    Rat w = Rat(shape[2 * j] + 1) * eta;
    if (prefix + Rat(3) * w > cap) return false;
    if (2 * j + 2 <= shape.size()) {
      prefix += w;
      prefix += Rat(shape[2 * j + 1] + 1) * eta;
    }
  }
  return true;
}

// Greedy box-atomic split of a shape into two sides with exponent caps
// t and 1-t, using the upper box weights. The admissibility condition is a
// support-set condition on the weight vector at level 1/(1+eta) < 1, so the
// classical greedy argument guarantees success.
std::vector<int> split_shape(const std::vector<int>& shape, const Rat& t,
                             const Rat& eta) {
  Rat c1(0), c2(0);
  const Rat cap1 = t, cap2 = Rat(1) - t;
  std::vector<int> side;  // 0 or 1 per position
  for (int k : shape) {
    Rat w = Rat(k + 1) * eta;
    bool fit1 = c1 + w <= cap1;
    bool fit2 = c2 + w <= cap2;
    if (fit1 && fit2 && cap2 - c2 > cap1 - c1) fit1 = false;
    if (fit1) {
      c1 += w;
      side.push_back(0);
    } else if (fit2) {
      c2 += w;
      side.push_back(1);
    } else {
      throw invariant_error("decompose_tilde_lambda: shape split failed");
    }
  }
  return side;
}

}  // namespace

int eta_box_index(long long p, const Rat& D, const Rat& eta) {
  if (p < 1) throw domain_error("eta_box_index: p must be positive");
  int k = 0;
  while (box_bound_le(D, k + 1, eta, p)) ++k;
  return k;
}

int tilde_lambda(const FactoredInteger& d, const Rat& D, const Rat& eta) {
  if (eta <= Rat(0) || eta > Rat(1, 10))
    throw domain_error("tilde_lambda: need 0 < eta <= 1/10");
  if (!squarefree(d)) return 0;
  std::vector<int> shape = box_shape(d, D, eta);
  if (!shape_admissible(shape, eta)) return 0;
  return shape.size() % 2 == 0 ? 1 : -1;
}

std::vector<FactorPair> decompose_tilde_lambda(const Rat& D, const Rat& t,
                                               const Rat& eta,
                                               long long support_limit) {
  if (eta <= Rat(0) || eta > Rat(1, 10))
    throw domain_error("decompose_tilde_lambda: need 0 < eta <= 1/10");
  if (t < Rat(0) || t > Rat(1))
    throw domain_error("decompose_tilde_lambda: need 0 <= t <= 1");
  if (support_limit > 1000000)
    throw resource_error("decompose_tilde_lambda: support limit <= 1e6");

  std::vector<uint32_t> spf =
      spf_table((uint32_t)std::max<long long>(support_limit, 2));

  // Pass 1: shapes present in the support, and every squarefree n's shape.
  std::map<std::vector<int>, FactorPair> by_shape;
  std::vector<std::pair<long long, std::vector<int>>> square_free;  // n, shape
  for (long long n = 1; n <= support_limit; ++n) {
    FactoredInteger f;
    f.value = n;
    long long m = n;
    bool sf = true;
    while (m > 1) {
      long long p = spf[m];
      int e = 0;
      while (m % p == 0) {
        m /= p;
        ++e;
      }
      if (e > 1) {
        sf = false;
        break;
      }
      f.flattened.push_back(p);
    }
    if (!sf) continue;
    std::sort(f.flattened.begin(), f.flattened.end(), std::greater<>());
    std::vector<int> shape = box_shape(f, D, eta);
    if (shape_admissible(shape, eta)) {
      auto it = by_shape.find(shape);
      if (it == by_shape.end()) {
        FactorPair pair;
        pair.shape = shape;
        std::vector<int> side = split_shape(shape, t, eta);
        for (size_t i = 0; i < shape.size(); ++i) {
          if (side[i] == 0) pair.side1.push_back(shape[i]);
        }
        by_shape.emplace(shape, std::move(pair));
      }
    }
    square_free.emplace_back(n, std::move(shape));
  }

  // Pass 2: fill component supports. alpha holds the side-1 box multiset,
  // beta the complement; the split is box-atomic, so a target d has exactly
  // one contributing factorization and the signs multiply to (-1)^r.
  std::vector<FactorPair> pairs;
  for (auto& [shape, pair] : by_shape) {
    std::vector<int> side2;
    {
      // complement multiset
      std::multiset<int> s1(pair.side1.begin(), pair.side1.end());
      for (int k : shape) {
        auto it = s1.find(k);
        if (it != s1.end()) {
          s1.erase(it);
        } else {
          side2.push_back(k);
        }
      }
      std::sort(side2.begin(), side2.end(), std::greater<>());
    }
    std::vector<int> side1 = pair.side1;
    std::sort(side1.begin(), side1.end(), std::greater<>());
    for (auto& [n, nshape] : square_free) {
      int sign = nshape.size() % 2 == 0 ? 1 : -1;
      if (nshape == side1) pair.alpha.entries[n] = sign;
      if (nshape == side2) pair.beta.entries[n] = sign;
    }
    pairs.push_back(std::move(pair));
  }
  return pairs;
}

long long convolve_pairs_at(const std::vector<FactorPair>& pairs, long long d) {
  long long total = 0;
  for (const auto& pair : pairs) {
    for (auto& [n, an] : pair.alpha.entries) {
      if (n > d) break;
      if (d % n != 0) continue;
      total += (long long)an * pair.beta.at(d / n);
    }
  }
  return total;
}

}  // namespace sievelab
