#pragma once

#include <array>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "sievelab/arith.hpp"
#include "sievelab/rational.hpp"

namespace sievelab {

/// A divisor in log-x space: exact rational exponents for the named large
/// primes (non-increasing, each > 0) plus one infinitely divisible small-mass
/// reservoir. All values are exponents of x.
struct ExponentTuple {
  std::vector<Rat> nu;
  Rat mass;

  Rat total() const {
    Rat t = mass;
    for (const Rat& v : nu) t += v;
    return t;
  }
  void validate() const;
};

/// One inequality lhs <= rhs (or <) with
///   lhs = n_pow * log_x N + sum_i d_pow[i] * log_x d_i
///   rhs = rhs_const + rhs_eps * epsilon + rhs_delta * delta   (in log-x units)
struct Inequality {
  std::string label;
  int n_pow = 0;
  std::array<int, 3> d_pow{0, 0, 0};
  Rat rhs_const;
  Rat rhs_eps;
  Rat rhs_delta;
  bool strict = false;

  Rat rhs_exp(const Rat& epsilon, const Rat& delta) const {
    return rhs_const + rhs_eps * epsilon + rhs_delta * delta;
  }
};

struct ConstraintSet {
  std::string name;
  std::vector<Inequality> ineqs;

  static ConstraintSet prop91();
  static ConstraintSet mainprop();
};

struct IneqEval {
  std::string label;
  bool pass = false;
  double margin_log_x = 0;         // rhs - lhs, informational float view
  std::optional<Rat> exact_margin;  // exponent mode only
};

struct CheckRecord {
  bool all_pass = false;
  std::vector<IneqEval> rows;
};

enum class CaseTag { c1, c2, c3, c4, c4b };
std::string case_name(CaseTag c);

/// Factorization d = d1*d2*d3 in exponent space.
struct TripleExp {
  std::array<Rat, 3> e;
  CaseTag case_used = CaseTag::c4;
};

/// Factorization in integer space.
struct TripleInt {
  std::array<long long, 3> d{1, 1, 1};
  CaseTag case_used = CaseTag::c4;
};

/// Exponent of the level D = x^(7/12 - 50*delta).
Rat d_exponent(const Rat& delta);

/// Support-set membership in exponent space: prefix conditions
/// nu_1+...+nu_{2j} + 3*nu_{2j+1} <= d_exp and total mass <= d_exp.
bool exponent_in_Dplus(const ExponentTuple& d, const Rat& d_exp);

/// Membership of an integer d against the level x^rho (exact big-integer
/// powering).
bool is_in_Dplus_x(const FactoredInteger& d, long long x, const Rat& rho);

/// The case-analysis factorization, exponent mode. Preconditions: delta in
/// (0, 1/1000), n_exp in [2*delta, 1/3 + delta/2], d in the exponent-space
/// support set at level d_exponent(delta). A greedy failure under valid
/// hypotheses is a bug trap (invariant_error).
TripleExp propose_triple_exp(const ExponentTuple& d, const Rat& n_exp,
                             const Rat& delta);

/// Same algorithm on true integers; x and delta come from params.
TripleInt propose_triple_int(const FactoredInteger& d, long long N,
                             const GlobalParams& params);

/// Exact evaluation of a constraint set, exponent mode.
CheckRecord check_constraints_exp(const std::array<Rat, 3>& e,
                                  const Rat& n_exp, const Rat& epsilon,
                                  const Rat& delta, const ConstraintSet& set);

/// Exact evaluation in integer mode: each comparison d-monomial vs x^rho is
/// decided by exact big-integer powering.
CheckRecord check_constraints_int(const std::array<long long, 3>& d,
                                  long long N, const GlobalParams& params,
                                  const ConstraintSet& set);

/// Brute-force feasibility, exponent mode: all 3^r assignments of the named
/// exponents, with the divisible small mass split by an exact rational
/// feasibility step (2-variable vertex enumeration; strict inequalities go
/// through a max-slack lift). At most 12 named exponents.
std::optional<TripleExp> oracle_feasible_exp(const ExponentTuple& d,
                                             const Rat& n_exp,
                                             const Rat& epsilon,
                                             const Rat& delta,
                                             const ConstraintSet& set);

/// Brute-force feasibility, integer mode: exhaustive scan over ordered
/// divisor triples of d. Requires tau_3(d) <= 10^7.
std::optional<TripleInt> oracle_feasible_int(long long d, long long N,
                                             const GlobalParams& params,
                                             const ConstraintSet& set);

struct ExtremalReport {
  Rat d_exp;
  ExponentTuple tuple;
  bool member = false;    // tuple satisfies the support-set inequalities
  bool feasible = false;  // some split passes the constraint set
};

/// The extremal configuration nu_1 = nu_2 = (2/7) d_exp,
/// nu_3 = nu_4 = (1/7) d_exp, mass = d_exp/7 at d_exp = 7/12 + delta_prime,
/// N = x^(1/3), checked against the exact feasibility oracle.
ExtremalReport extremal_witness(const Rat& delta_prime);

/// Random support-set-admissible exponent tuple with at most max_named named
/// exponents (exponent denominators on a fixed grid so Rat arithmetic stays
/// in range).
ExponentTuple random_admissible_tuple(std::mt19937_64& rng, const Rat& d_exp,
                                      int max_named);

}  // namespace sievelab
