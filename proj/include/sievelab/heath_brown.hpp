#pragma once

#include <vector>

#include "sievelab/arith.hpp"
#include "sievelab/logval.hpp"
#include "sievelab/rational.hpp"

namespace sievelab {

/// One term of the truncated identity for Lambda(n):
/// sign_coefficient * mu(m_1)...mu(m_j) * log n_1 over tuples with
/// n_1...n_j * m_1...m_j = n and every m_i <= cutoff * x^(1/k).
struct HBTerm {
  int j = 0;
  long long sign_coefficient = 0;  // (-1)^(j-1) * C(k, j)
  std::vector<long long> n_tuple;
  std::vector<long long> m_tuple;
  int mu_product = 0;
  LogVal value() const {
    LogVal v;
    if (mu_product != 0)
      v.scaled_add(sign_coefficient * mu_product, LogVal::log_of(n_tuple[0]));
    return v;
  }
};

/// Complete enumeration of the terms for one n. The cutoff multiplier
/// defaults to 2 (each m_i <= 2 x^(1/k), compared exactly); smaller values
/// are negative controls that break the identity.
std::vector<HBTerm> heath_brown_terms(long long n, int k, long long x,
                                      const Rat& cutoff_multiplier = Rat(2));

/// Sum of the terms in exact symbolic log arithmetic.
LogVal heath_brown_sum(long long n, int k, long long x,
                       const Rat& cutoff_multiplier = Rat(2));

struct HBVerifyReport {
  long long checked = 0;
  std::vector<long long> mismatches;  // n where the sum != Lambda(n)
};

/// Verifies sum-of-terms == Lambda(n) for every n <= limit with x = n
/// (per-n cutoff), sharded over workers with a deterministic merge.
HBVerifyReport verify_heath_brown(long long limit, int k,
                                  const Rat& cutoff_multiplier = Rat(2),
                                  int workers = 0);

}  // namespace sievelab
