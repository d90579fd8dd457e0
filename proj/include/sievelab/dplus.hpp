#pragma once

#include <map>
#include <vector>

#include "sievelab/arith.hpp"
#include "sievelab/rational.hpp"

namespace sievelab {

/// Sparse weight sequence q -> lambda_q with declared level and support
/// metadata.
struct WeightSequence {
  Rat level;
  std::map<long long, Rat> entries;
  bool coprime_to_a = false;
  long long a = 0;
  bool squarefree_only = false;
};

/// Membership in the linear-sieve support set: with flattened primes
/// p1 >= ... >= pr, every prefix product p1...p_{2j} * p_{2j+1}^3 <= D.
/// d = 1 is a member.
bool is_in_Dplus(const FactoredInteger& d, const Rat& D);

/// mu(d) on the support set, 0 otherwise.
int lambda_plus(const FactoredInteger& d, const Rat& D);

/// Exhaustive enumeration of members with value <= limit, sorted.
std::vector<FactoredInteger> enumerate_Dplus(const Rat& D, long long limit);

/// lambda+ weights as a sparse sequence on squarefree support points <= limit.
WeightSequence lambda_plus_sequence(const Rat& D, long long limit);

/// Greedy two-way split: d = d1*d2 with d1 <= D1, d2 <= D2, for d in the
/// support set and D1*D2 = D. Greedy failure is a bug trap (invariant_error).
std::pair<long long, long long> split_two(const FactoredInteger& d,
                                          const Rat& D, const Rat& D1,
                                          const Rat& D2);

/// split_two with caps D1 = D^t, D2 = D^(1-t) given by the exponent t, so
/// grids like t = 3/10 stay exact (cap tests are big-integer power
/// comparisons).
std::pair<long long, long long> split_two_exp(const FactoredInteger& d,
                                              const Rat& D, const Rat& t);

struct TriplyWellFactorableReport {
  std::vector<long long> failures;  // support points with no divisor triple
  long long checked = 0;
};

/// Per-element three-way splits of the support points of `seq` (values up to
/// test_limit) into caps Q1, Q2, Q3 with Q1*Q2*Q3 = seq.level. Points where
/// the greedy split fails are re-checked exhaustively over divisor triples, so
/// the failure list contains exactly the points where no split exists.
TriplyWellFactorableReport verify_triply_well_factorable(
    const WeightSequence& seq, const Rat& Q1, const Rat& Q2, const Rat& Q3,
    long long test_limit);

}  // namespace sievelab
