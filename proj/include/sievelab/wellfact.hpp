#pragma once

#include <map>
#include <vector>

#include "sievelab/arith.hpp"
#include "sievelab/rational.hpp"

namespace sievelab {

/// {0, +1, -1}-valued sparse sequence used as a decomposition component.
struct SparseSeq {
  std::map<long long, int> entries;
  int at(long long n) const {
    auto it = entries.find(n);
    return it == entries.end() ? 0 : it->second;
  }
};

/// One convolution pair of the eta-adic decomposition, together with the
/// box shape it covers (box indices, non-increasing) and the side-1 subset.
struct FactorPair {
  SparseSeq alpha;  // supported on n <= D^t
  SparseSeq beta;   // supported on m <= D^(1-t)
  std::vector<int> shape;
  std::vector<int> side1;
};

/// Box index of a prime p: the largest k >= 0 with D^(k*eta) <= p.
int eta_box_index(long long p, const Rat& D, const Rat& eta);

/// The smoothed variant of the upper-bound weights: squarefree d with box
/// indices k1 >= ... >= kr whose upper box bounds w_i = (k_i+1)*eta satisfy
/// w_1+...+w_{2j} + 3*w_{2j+1} <= 1/(1+eta) for all 0 <= j < r/2 get value
/// (-1)^r; everything else gets 0. The margin 1/(1+eta) absorbs the box
/// width, so members always lie in the level-D support set.
int tilde_lambda(const FactoredInteger& d, const Rat& D, const Rat& eta);

/// Decomposition of the smoothed weights for the split D = D^t * D^(1-t):
/// one pair per box shape, components with entries in {0, +1, -1}, such that
/// sum over pairs of (alpha (*) beta)_d equals tilde_lambda(d) for every
/// d <= support_limit. The split is given as the exponent t of D1 = D^t so
/// that comparisons stay exact for levels like D^(1/2).
std::vector<FactorPair> decompose_tilde_lambda(const Rat& D, const Rat& t,
                                               const Rat& eta,
                                               long long support_limit);

/// Direct convolution oracle: sum over pairs of sum_{d = n*m} alpha_n beta_m.
long long convolve_pairs_at(const std::vector<FactorPair>& pairs, long long d);

}  // namespace sievelab
